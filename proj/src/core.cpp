/**
 * @file core.cpp
 * @brief Implementation of shared domain types and metric arithmetic.
 */

#include <modsel/core.hpp>

#include <cmath>
#include <sstream>

namespace modsel {

namespace {

std::string join_issues(const std::vector<FieldIssue>& issues) {
    std::ostringstream out;
    out << "validation failed:";
    for (const auto& issue : issues) {
        out << " [" << issue.field << ": " << issue.message << "]";
    }
    return out.str();
}

void check_percent(std::vector<FieldIssue>& issues, const char* field, double value) {
    if (!std::isfinite(value)) {
        issues.push_back({field, "must be finite"});
    } else if (value < 0.0 || value > 100.0) {
        issues.push_back({field, "must lie in [0, 100]"});
    }
}

}  // namespace

ValidationError::ValidationError(std::vector<FieldIssue> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

ValidationError::ValidationError(std::string field, std::string message)
    : ValidationError(std::vector<FieldIssue>{{std::move(field), std::move(message)}}) {}

ParseError::ParseError(int row, std::string column, const std::string& message)
    : Error("row " + std::to_string(row) + (column.empty() ? "" : ", column " + column) + ": " +
            message),
      row_(row),
      column_(std::move(column)) {}

std::string to_string(HeadConfig config) {
    switch (config) {
        case HeadConfig::F0: return "F0";
        case HeadConfig::F2: return "F2";
        case HeadConfig::E0: return "E0";
        case HeadConfig::C0: return "C0";
    }
    return "C0";
}

HeadConfig head_config_from_string(const std::string& text) {
    if (text == "F0") return HeadConfig::F0;
    if (text == "F2") return HeadConfig::F2;
    if (text == "E0") return HeadConfig::E0;
    if (text == "C0") return HeadConfig::C0;
    throw ValidationError("head_config", "unknown value '" + text + "' (expected F0|F2|E0|C0)");
}

std::string CandidateId::label() const {
    return refined ? model_id + " (ref)" : model_id;
}

bool candidate_less(const CandidateId& a, const CandidateId& b) {
    if (a.model_id != b.model_id) return a.model_id < b.model_id;
    return a.refined < b.refined;
}

double aggregate_ar(double mspd, double mssd, double vsd) {
    std::vector<FieldIssue> issues;
    check_percent(issues, "mspd", mspd);
    check_percent(issues, "mssd", mssd);
    check_percent(issues, "vsd", vsd);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return (mspd + mssd + vsd) / 3.0;
}

double relative_delta(double baseline, double value) {
    if (!std::isfinite(baseline) || !std::isfinite(value)) {
        throw ArithmeticError("relative_delta: inputs must be finite");
    }
    if (baseline == 0.0) {
        throw ArithmeticError("relative_delta: baseline must be non-zero");
    }
    return 100.0 * (value - baseline) / baseline;
}

BenchmarkRecord validate_record(const RawRecord& raw) {
    std::vector<FieldIssue> issues;

    if (raw.model_id.empty()) issues.push_back({"model_id", "missing required field"});
    if (raw.dataset.empty()) issues.push_back({"dataset_id", "missing required field"});

    if (!raw.time_ms) {
        issues.push_back({"time_ms", "missing required field"});
    } else if (!std::isfinite(*raw.time_ms)) {
        issues.push_back({"time_ms", "must be finite"});
    } else if (*raw.time_ms <= 0.0) {
        issues.push_back({"time_ms", "must be strictly positive"});
    }

    if (!raw.mspd) {
        issues.push_back({"mspd", "missing required field"});
    } else {
        check_percent(issues, "mspd", *raw.mspd);
    }
    if (!raw.mssd) {
        issues.push_back({"mssd", "missing required field"});
    } else {
        check_percent(issues, "mssd", *raw.mssd);
    }
    if (raw.vsd) check_percent(issues, "vsd", *raw.vsd);
    if (raw.add) check_percent(issues, "add", *raw.add);

    if (!issues.empty()) throw ValidationError(std::move(issues));

    BenchmarkRecord record;
    record.candidate.model_id = raw.model_id;
    record.candidate.refined = raw.refined;
    record.candidate.backbone = raw.model_id;
    record.dataset = raw.dataset;
    record.time_ms = *raw.time_ms;
    record.mspd = *raw.mspd;
    record.mssd = *raw.mssd;
    record.vsd = raw.vsd;
    record.add = raw.add;
    return record;
}

}  // namespace modsel
