/**
 * @file ingest.hpp
 * @brief Benchmark-table parsing and trade-off matrix assembly.
 */

#ifndef MODSEL_INGEST_HPP
#define MODSEL_INGEST_HPP

#include <modsel/core.hpp>

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace modsel::ingest {

/// Which value becomes the accuracy coordinate of a trade-off point.
/// MeanOfListed averages whichever of {mspd, mssd, vsd, add} a record carries.
enum class AccuracyMetric { AR, MSPD, MSSD, VSD, ADD, MeanOfListed };

std::string to_string(AccuracyMetric metric);
AccuracyMetric accuracy_metric_from_string(const std::string& text);

/// Validated candidate x dataset grid of trade-off points. The grid is
/// complete by construction; candidate and dataset orders are the orders of
/// first appearance in the input records.
class TradeoffMatrix {
public:
    TradeoffMatrix(std::vector<CandidateId> candidates, std::vector<std::string> datasets,
                   std::vector<BenchmarkRecord> cells, AccuracyMetric metric);

    const std::vector<CandidateId>& candidates() const { return candidates_; }
    const std::vector<std::string>& datasets() const { return datasets_; }
    AccuracyMetric accuracy_metric() const { return metric_; }

    std::size_t candidate_count() const { return candidates_.size(); }
    std::size_t dataset_count() const { return datasets_.size(); }

    const BenchmarkRecord& record(std::size_t candidate, std::size_t dataset) const;
    const TradeoffPoint& point(std::size_t candidate, std::size_t dataset) const;

    /// Index of a candidate by identity key; throws Error when absent.
    std::size_t candidate_index(const CandidateId& id) const;
    bool has_candidate(const CandidateId& id) const;

private:
    std::vector<CandidateId> candidates_;
    std::vector<std::string> datasets_;
    std::vector<BenchmarkRecord> cells_;   // row-major candidate x dataset
    std::vector<TradeoffPoint> points_;
    AccuracyMetric metric_;
};

/// CSV schema: header `model_id,dataset_id,time_ms,mspd,mssd,vsd,add,refined`;
/// vsd and add may be empty; refined is true/false/empty (empty = false).
/// Every row is validated; errors carry the 1-based data row index.
std::vector<BenchmarkRecord> parse_benchmark_table(std::istream& in);

/// Inverse of parse_benchmark_table; parse(write(records)) == records.
std::string write_benchmark_table(const std::vector<BenchmarkRecord>& records);

/// Assembles the complete candidate x dataset grid. Duplicate cells and
/// missing cells are hard errors (every missing pair is listed).
TradeoffMatrix build_matrix(const std::vector<BenchmarkRecord>& records, AccuracyMetric metric);

/// Candidate-pool sidecar: maps model_id -> backbone / head_config /
/// numeric_code. CSV columns: `model_id,backbone,head_config,numeric_code`.
struct PoolEntry {
    std::string backbone;
    HeadConfig head_config = HeadConfig::C0;
    int numeric_code = 0;
};

std::map<std::string, PoolEntry> parse_candidate_pool(std::istream& in);

/// Fills candidate metadata from a pool map. Unmapped model_ids keep
/// synthesized defaults. Uniqueness of numeric_code and of the
/// (backbone, head_config, refined) triple is enforced at matrix build.
void apply_candidate_pool(std::vector<BenchmarkRecord>& records,
                          const std::map<std::string, PoolEntry>& pool);

}  // namespace modsel::ingest

#endif  // MODSEL_INGEST_HPP
