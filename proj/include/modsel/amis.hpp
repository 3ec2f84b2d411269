/**
 * @file amis.hpp
 * @brief Adaptive Margin-Dependent Iterative Selection.
 *
 * Per dataset, candidates are scored by their signed vertical residual
 * against the dataset's fitted trade-off line, min-max normalized to
 * [0, 100], combined across datasets as a weighted mean, and converted to
 * rank points. That ranking is repeated over a sweep of slope adjustment
 * factors; a factor's points are skipped when its ordered top-N list is
 * identical to the previous factor's. The candidate with the highest
 * accumulated points is selected, removed from the pool, and the whole
 * procedure repeats on the remainder until the requested count is reached.
 */

#ifndef MODSEL_AMIS_HPP
#define MODSEL_AMIS_HPP

#include <modsel/core.hpp>
#include <modsel/ingest.hpp>
#include <modsel/regression.hpp>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace modsel::amis {

enum class FactorSpacing { Geometric, Linear };

std::string to_string(FactorSpacing spacing);
FactorSpacing factor_spacing_from_string(const std::string& text);

struct AmisConfig {
    int factor_count = 100;
    double factor_min = 0.001;
    double factor_max = 3.0;
    FactorSpacing spacing = FactorSpacing::Geometric;
    std::vector<double> rank_points_schedule = {10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
    int stability_window = 10;
    std::map<std::string, double> dataset_weights;  // empty = uniform
    int selection_count = 5;

    /// Throws ValidationError when any invariant is violated.
    void validate() const;
};

/// Strictly increasing factor sequence of length factor_count with
/// first = factor_min and last = factor_max (a single-entry grid is just
/// {factor_min}). Geometric spacing by default: the range spans several
/// decades and a linear grid would starve the flat-slope end.
std::vector<double> factor_grid(const AmisConfig& config);

/// Min-max normalization of residuals onto [0, 100]. A degenerate input
/// (all residuals equal) maps every score to the neutral 50.
std::vector<double> normalize_scores(std::span<const double> residuals);

/// Weighted mean of per-dataset scores: sum(w*s) / sum(w). Both maps must
/// share the same key set and the weights must sum to a positive value.
double weighted_score(const std::map<std::string, double>& scores,
                      const std::map<std::string, double>& weights);

/// One candidate's final score plus the attributes its tie rules need.
struct CandidateScore {
    CandidateId candidate;
    double score = 0.0;
    double mean_time_ms = 0.0;
};

/// Awards schedule[i] points to the i-th candidate by descending score
/// (0 beyond the schedule). Ties break by ascending mean inference time,
/// then lexicographic model_id. The result is aligned with the input.
std::vector<double> rank_points(std::span<const CandidateScore> scores,
                                std::span<const double> schedule);

/// Full per-factor pipeline over a matrix: residuals against each dataset's
/// adjusted line, per-dataset normalization, weighted combination, rank
/// points. Result is aligned with matrix.candidates().
std::vector<double> score_at_factor(const ingest::TradeoffMatrix& matrix,
                                    const std::map<std::string, regression::SlopeModel>& fitted,
                                    double factor, const AmisConfig& config);

struct FactorDiagnostic {
    double factor = 0.0;
    bool contributed = false;               // false when the skip rule fired
    std::vector<double> points;             // points this factor would award
};

struct SweepResult {
    std::vector<double> totals;             // accumulated points per candidate
    std::vector<FactorDiagnostic> factors;  // ascending factor order
};

/// Sweeps the factor grid in ascending order, accumulating each factor's
/// rank points unless the ordered top-stability_window list is identical to
/// the immediately preceding factor's. The first factor always accumulates.
SweepResult factor_sweep(const ingest::TradeoffMatrix& matrix,
                         const std::map<std::string, regression::SlopeModel>& fitted,
                         const AmisConfig& config);

struct RoundDiagnostics {
    std::vector<CandidateId> pool;                       // remaining candidates
    std::map<std::string, regression::SlopeModel> fits;  // refit on the pool
    std::vector<double> accumulated_points;              // aligned with pool
    std::vector<double> contributing_factors;            // non-skipped factors
    std::vector<FactorDiagnostic> factor_details;        // full sweep trace
    CandidateId selected;
};

struct SelectionResult {
    std::vector<CandidateId> selected;  // selection order
    std::vector<RoundDiagnostics> rounds;
    AmisConfig config;
};

/// Iterative selection: each round refits the per-dataset lines on the
/// remaining pool, runs the factor sweep, and extracts the candidate with
/// the maximal accumulated points (ties: ascending mean time, then
/// model_id), until selection_count candidates are chosen.
SelectionResult select(const ingest::TradeoffMatrix& matrix, const AmisConfig& config);

/// Deployment-time query: among `selected`, the candidate with the highest
/// weighted-mean accuracy whose weighted-mean time is within the budget.
/// Throws NoFeasibleModelError when nothing fits the budget.
CandidateId best_within_budget(const ingest::TradeoffMatrix& matrix,
                               const std::vector<CandidateId>& selected, double budget_ms,
                               const std::map<std::string, double>& dataset_weights);

}  // namespace modsel::amis

#endif  // MODSEL_AMIS_HPP
