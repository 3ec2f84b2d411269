/**
 * @file report.hpp
 * @brief Comparison tables against a baseline candidate and deterministic
 *        SVG scatter plots with the wrap-line overlaid.
 */

#ifndef MODSEL_REPORT_HPP
#define MODSEL_REPORT_HPP

#include <modsel/amis.hpp>
#include <modsel/core.hpp>
#include <modsel/ingest.hpp>
#include <modsel/pareto.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace modsel::report {

/// Relative deltas of one selected candidate against the baseline, each a
/// signed percent of the baseline's dataset-weighted mean.
struct ComparisonRow {
    CandidateId candidate;
    double delta_avg3 = 0.0;                // mean of MSPD, MSSD, VSD
    std::optional<double> delta_add;        // needs ADD data everywhere
    std::optional<double> delta_avg4;       // mean of all four metrics
    double delta_time = 0.0;
};

/// One row per selected candidate, in selection order. The avg3 and time
/// columns are always present (VSD data required); the ADD columns appear
/// when every involved record carries an ADD value.
std::vector<ComparisonRow> comparison_table(const amis::SelectionResult& selection,
                                            const ingest::TradeoffMatrix& matrix,
                                            const CandidateId& baseline,
                                            const std::map<std::string, double>& dataset_weights);

/// Two-decimal fixed-point with an explicit sign: "+25.14", "-35.71".
std::string format_delta(double value);

std::string comparison_text(const std::vector<ComparisonRow>& rows);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

struct SvgOptions {
    int width = 720;
    int height = 480;
    std::string accuracy_label = "accuracy (%)";
};

/// Standalone SVG 1.1 document: one marker per point, a polyline through
/// the frontier, highlighted candidates drawn distinct, labeled axes.
/// Axis ranges are padded 5% beyond the data extrema. Output bytes are
/// deterministic for identical inputs.
std::string scatter_svg(const std::vector<pareto::LabeledPoint>& points,
                        const pareto::Frontier& frontier,
                        const std::vector<CandidateId>& highlighted, const SvgOptions& options);

}  // namespace modsel::report

#endif  // MODSEL_REPORT_HPP
