/**
 * @file core.hpp
 * @brief Shared domain types, metric aggregation and relative-delta arithmetic.
 */

#ifndef MODSEL_CORE_HPP
#define MODSEL_CORE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modsel {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base class for every error this toolkit raises on bad input or bad state.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One violated field inside a ValidationError.
struct FieldIssue {
    std::string field;
    std::string message;
};

/// Raised when input data violates a domain invariant. Collects every
/// violated field, not just the first one.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<FieldIssue> issues);
    ValidationError(std::string field, std::string message);
    const std::vector<FieldIssue>& issues() const { return issues_; }

private:
    std::vector<FieldIssue> issues_;
};

/// Raised on malformed input files; carries the 1-based data row index
/// (0 for header problems) and the offending column where known.
class ParseError : public Error {
public:
    ParseError(int row, std::string column, const std::string& message);
    int row() const { return row_; }
    const std::string& column() const { return column_; }

private:
    int row_;
    std::string column_;
};

class ArithmeticError : public Error {
public:
    using Error::Error;
};

class DegenerateFitError : public Error {
public:
    using Error::Error;
};

class NoFeasibleModelError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Geo-head configuration variants a candidate can carry.
enum class HeadConfig { F0, F2, E0, C0 };

std::string to_string(HeadConfig config);
HeadConfig head_config_from_string(const std::string& text);

/// Identity of one candidate model. The (model_id, refined) pair is the
/// identity key; a model with and without the refinement step counts as two
/// distinct candidates. backbone / head_config / numeric_code are metadata
/// filled from a candidate-pool sidecar or synthesized on matrix build.
struct CandidateId {
    std::string model_id;
    bool refined = false;
    std::string backbone;
    HeadConfig head_config = HeadConfig::C0;
    int numeric_code = 0;

    /// Human-readable label, e.g. "gdrnpp_a0" or "gdrnpp_a0 (ref)".
    std::string label() const;

    friend bool operator==(const CandidateId& a, const CandidateId& b) {
        return a.model_id == b.model_id && a.refined == b.refined;
    }
    friend bool operator!=(const CandidateId& a, const CandidateId& b) { return !(a == b); }
};

/// Deterministic candidate ordering: model_id lexicographic, then
/// unrefined before refined. Used by every tie rule in the toolkit.
bool candidate_less(const CandidateId& a, const CandidateId& b);

/// One measurement of one candidate on one dataset. mspd/mssd are required;
/// vsd and add are optional because not every benchmark table reports them.
struct BenchmarkRecord {
    CandidateId candidate;
    std::string dataset;
    double time_ms = 0.0;
    double mspd = 0.0;
    double mssd = 0.0;
    std::optional<double> vsd;
    std::optional<double> add;
};

/// A point in the 2-D trade-off space the selection operates in.
struct TradeoffPoint {
    double time_ms = 0.0;
    double accuracy = 0.0;  // percent in [0, 100]
};

/// Unvalidated record fields as read from an input row. Absent optionals
/// mean the field was missing or empty in the input.
struct RawRecord {
    std::string model_id;
    std::string dataset;
    std::optional<double> time_ms;
    std::optional<double> mspd;
    std::optional<double> mssd;
    std::optional<double> vsd;
    std::optional<double> add;
    bool refined = false;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Arithmetic mean of the three recall percentages (the benchmark's AR
/// headline score). All inputs must be finite percentages in [0, 100].
double aggregate_ar(double mspd, double mssd, double vsd);

/// Signed percent change of `value` relative to `baseline`:
/// 100 * (value - baseline) / baseline. No sign flip for any column.
double relative_delta(double baseline, double value);

/// Checks every BenchmarkRecord invariant and returns the validated record,
/// or throws a ValidationError naming each violated field individually.
BenchmarkRecord validate_record(const RawRecord& raw);

}  // namespace modsel

#endif  // MODSEL_CORE_HPP
