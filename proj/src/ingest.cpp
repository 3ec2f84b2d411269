/**
 * @file ingest.cpp
 * @brief CSV ingestion and trade-off matrix construction.
 */

#include <modsel/ingest.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>
#include <tuple>

namespace modsel::ingest {

namespace {

constexpr const char* kHeader = "model_id,dataset_id,time_ms,mspd,mssd,vsd,add,refined";
constexpr const char* kPoolHeader = "model_id,backbone,head_config,numeric_code";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_double(const std::string& text, int row, const char* column) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(row, column, "cannot parse '" + text + "' as a number");
    }
    return value;
}

std::string format_double(double value) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

bool parse_refined(const std::string& text, int row) {
    if (text.empty() || text == "false") return false;
    if (text == "true") return true;
    throw ParseError(row, "refined", "expected true, false or empty, got '" + text + "'");
}

double cell_accuracy(const BenchmarkRecord& record, AccuracyMetric metric) {
    switch (metric) {
        case AccuracyMetric::AR:
            if (!record.vsd) {
                throw ValidationError("vsd", "required for the AR metric but absent for " +
                                                   record.candidate.label() + " on " +
                                                   record.dataset);
            }
            return aggregate_ar(record.mspd, record.mssd, *record.vsd);
        case AccuracyMetric::MSPD:
            return record.mspd;
        case AccuracyMetric::MSSD:
            return record.mssd;
        case AccuracyMetric::VSD:
            if (!record.vsd) {
                throw ValidationError("vsd", "absent for " + record.candidate.label() +
                                                   " on " + record.dataset);
            }
            return *record.vsd;
        case AccuracyMetric::ADD:
            if (!record.add) {
                throw ValidationError("add", "absent for " + record.candidate.label() +
                                                   " on " + record.dataset);
            }
            return *record.add;
        case AccuracyMetric::MeanOfListed: {
            double sum = record.mspd + record.mssd;
            int count = 2;
            if (record.vsd) {
                sum += *record.vsd;
                ++count;
            }
            if (record.add) {
                sum += *record.add;
                ++count;
            }
            return sum / count;
        }
    }
    throw Error("unknown accuracy metric");
}

}  // namespace

std::string to_string(AccuracyMetric metric) {
    switch (metric) {
        case AccuracyMetric::AR: return "ar";
        case AccuracyMetric::MSPD: return "mspd";
        case AccuracyMetric::MSSD: return "mssd";
        case AccuracyMetric::VSD: return "vsd";
        case AccuracyMetric::ADD: return "add";
        case AccuracyMetric::MeanOfListed: return "mean_of_listed";
    }
    return "ar";
}

AccuracyMetric accuracy_metric_from_string(const std::string& text) {
    if (text == "ar") return AccuracyMetric::AR;
    if (text == "mspd") return AccuracyMetric::MSPD;
    if (text == "mssd") return AccuracyMetric::MSSD;
    if (text == "vsd") return AccuracyMetric::VSD;
    if (text == "add") return AccuracyMetric::ADD;
    if (text == "mean_of_listed") return AccuracyMetric::MeanOfListed;
    throw ValidationError("metric", "unknown accuracy metric '" + text +
                                          "' (expected ar|mspd|mssd|vsd|add|mean_of_listed)");
}

TradeoffMatrix::TradeoffMatrix(std::vector<CandidateId> candidates,
                               std::vector<std::string> datasets,
                               std::vector<BenchmarkRecord> cells, AccuracyMetric metric)
    : candidates_(std::move(candidates)),
      datasets_(std::move(datasets)),
      cells_(std::move(cells)),
      metric_(metric) {
    points_.reserve(cells_.size());
    for (const auto& record : cells_) {
        points_.push_back({record.time_ms, cell_accuracy(record, metric_)});
    }
}

const BenchmarkRecord& TradeoffMatrix::record(std::size_t candidate, std::size_t dataset) const {
    return cells_.at(candidate * datasets_.size() + dataset);
}

const TradeoffPoint& TradeoffMatrix::point(std::size_t candidate, std::size_t dataset) const {
    return points_.at(candidate * datasets_.size() + dataset);
}

std::size_t TradeoffMatrix::candidate_index(const CandidateId& id) const {
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
        if (candidates_[i] == id) return i;
    }
    throw Error("candidate '" + id.label() + "' not present in the matrix");
}

bool TradeoffMatrix::has_candidate(const CandidateId& id) const {
    return std::any_of(candidates_.begin(), candidates_.end(),
                       [&](const CandidateId& c) { return c == id; });
}

std::vector<BenchmarkRecord> parse_benchmark_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(0, "", "empty input, expected header '" + std::string(kHeader) + "'");
    }
    if (strip_cr(line) != kHeader) {
        throw ParseError(0, "", "malformed header, expected '" + std::string(kHeader) + "'");
    }

    std::vector<BenchmarkRecord> records;
    int row = 0;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        ++row;
        auto fields = split_csv_line(line);
        if (fields.size() != 8) {
            throw ParseError(row, "",
                             "expected 8 columns, got " + std::to_string(fields.size()));
        }
        RawRecord raw;
        raw.model_id = fields[0];
        raw.dataset = fields[1];
        if (!fields[2].empty()) raw.time_ms = parse_double(fields[2], row, "time_ms");
        if (!fields[3].empty()) raw.mspd = parse_double(fields[3], row, "mspd");
        if (!fields[4].empty()) raw.mssd = parse_double(fields[4], row, "mssd");
        if (!fields[5].empty()) raw.vsd = parse_double(fields[5], row, "vsd");
        if (!fields[6].empty()) raw.add = parse_double(fields[6], row, "add");
        raw.refined = parse_refined(fields[7], row);
        try {
            records.push_back(validate_record(raw));
        } catch (const ValidationError& e) {
            std::ostringstream msg;
            msg << "invalid record:";
            for (const auto& issue : e.issues()) {
                msg << " [" << issue.field << ": " << issue.message << "]";
            }
            throw ParseError(row, e.issues().empty() ? "" : e.issues().front().field, msg.str());
        }
    }
    return records;
}

std::string write_benchmark_table(const std::vector<BenchmarkRecord>& records) {
    std::ostringstream out;
    out << kHeader << "\n";
    for (const auto& r : records) {
        out << r.candidate.model_id << ',' << r.dataset << ',' << format_double(r.time_ms) << ','
            << format_double(r.mspd) << ',' << format_double(r.mssd) << ','
            << (r.vsd ? format_double(*r.vsd) : "") << ','
            << (r.add ? format_double(*r.add) : "") << ','
            << (r.candidate.refined ? "true" : "false") << "\n";
    }
    return out.str();
}

TradeoffMatrix build_matrix(const std::vector<BenchmarkRecord>& records, AccuracyMetric metric) {
    if (records.empty()) {
        throw ValidationError("records", "cannot build a matrix from zero records");
    }

    using Key = std::pair<std::string, bool>;  // (model_id, refined)
    std::vector<CandidateId> candidates;
    std::map<Key, std::size_t> candidate_index;
    std::vector<std::string> datasets;
    std::map<std::string, std::size_t> dataset_index;

    for (const auto& r : records) {
        Key key{r.candidate.model_id, r.candidate.refined};
        if (candidate_index.emplace(key, candidates.size()).second) {
            candidates.push_back(r.candidate);
        }
        if (dataset_index.emplace(r.dataset, datasets.size()).second) {
            datasets.push_back(r.dataset);
        }
    }

    const std::size_t nc = candidates.size();
    const std::size_t nd = datasets.size();
    std::vector<BenchmarkRecord> cells(nc * nd);
    std::vector<char> filled(nc * nd, 0);

    for (const auto& r : records) {
        std::size_t c = candidate_index.at({r.candidate.model_id, r.candidate.refined});
        std::size_t d = dataset_index.at(r.dataset);
        std::size_t at = c * nd + d;
        if (filled[at]) {
            throw ValidationError("records", "duplicate cell for (" + r.candidate.label() +
                                                   ", " + r.dataset + ")");
        }
        if (r.candidate.backbone != candidates[c].backbone ||
            r.candidate.head_config != candidates[c].head_config ||
            r.candidate.numeric_code != candidates[c].numeric_code) {
            throw ValidationError("records", "inconsistent metadata for " + r.candidate.label());
        }
        cells[at] = r;
        filled[at] = 1;
    }

    std::vector<std::string> missing;
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t d = 0; d < nd; ++d) {
            if (!filled[c * nd + d]) {
                missing.push_back("(" + candidates[c].label() + ", " + datasets[d] + ")");
            }
        }
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "incomplete grid, missing " << missing.size() << " cell(s):";
        for (const auto& m : missing) msg << " " << m;
        throw ValidationError("records", msg.str());
    }

    // Assign numeric codes by first appearance where the pool left them unset,
    // then enforce the pool-wide uniqueness invariants.
    int next_code = 1;
    std::set<int> used_codes;
    for (const auto& c : candidates) {
        if (c.numeric_code > 0) used_codes.insert(c.numeric_code);
        next_code = std::max(next_code, c.numeric_code + 1);
    }
    for (auto& c : candidates) {
        if (c.numeric_code <= 0) {
            while (used_codes.count(next_code)) ++next_code;
            c.numeric_code = next_code;
            used_codes.insert(next_code);
        }
    }

    std::set<int> codes;
    std::set<std::tuple<std::string, HeadConfig, bool>> triples;
    for (const auto& c : candidates) {
        if (!codes.insert(c.numeric_code).second) {
            throw ValidationError("numeric_code", "duplicate code " +
                                                        std::to_string(c.numeric_code));
        }
        if (!triples.insert({c.backbone, c.head_config, c.refined}).second) {
            throw ValidationError("candidate", "duplicate (backbone, head_config, refined) "
                                                 "triple for " + c.label());
        }
    }

    // Propagate the final metadata into the stored cells.
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t d = 0; d < nd; ++d) {
            cells[c * nd + d].candidate = candidates[c];
        }
    }

    return TradeoffMatrix(std::move(candidates), std::move(datasets), std::move(cells), metric);
}

std::map<std::string, PoolEntry> parse_candidate_pool(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != kPoolHeader) {
        throw ParseError(0, "", "malformed pool header, expected '" + std::string(kPoolHeader) +
                                    "'");
    }
    std::map<std::string, PoolEntry> pool;
    int row = 0;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        ++row;
        auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw ParseError(row, "", "expected 4 columns, got " + std::to_string(fields.size()));
        }
        if (fields[0].empty()) throw ParseError(row, "model_id", "missing model_id");
        PoolEntry entry;
        entry.backbone = fields[1];
        try {
            entry.head_config = head_config_from_string(fields[2]);
        } catch (const ValidationError&) {
            throw ParseError(row, "head_config", "unknown head_config '" + fields[2] + "'");
        }
        double code = parse_double(fields[3], row, "numeric_code");
        if (code < 1.0 || code != std::floor(code)) {
            throw ParseError(row, "numeric_code", "must be a positive integer");
        }
        entry.numeric_code = static_cast<int>(code);
        if (!pool.emplace(fields[0], entry).second) {
            throw ParseError(row, "model_id", "duplicate pool entry '" + fields[0] + "'");
        }
    }
    return pool;
}

void apply_candidate_pool(std::vector<BenchmarkRecord>& records,
                          const std::map<std::string, PoolEntry>& pool) {
    for (auto& r : records) {
        auto it = pool.find(r.candidate.model_id);
        if (it == pool.end()) continue;
        r.candidate.backbone = it->second.backbone;
        r.candidate.head_config = it->second.head_config;
        // Refined variants are distinct candidates: give them a distinct code
        // in a disjoint range (Table-2 style codes cover the unrefined pool).
        r.candidate.numeric_code =
            r.candidate.refined ? it->second.numeric_code + 1000 : it->second.numeric_code;
    }
}

}  // namespace modsel::ingest
