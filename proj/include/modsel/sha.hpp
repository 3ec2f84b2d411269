/**
 * @file sha.hpp
 * @brief Successive-halving scheduler with a pluggable evaluator.
 */

#ifndef MODSEL_SHA_HPP
#define MODSEL_SHA_HPP

#include <modsel/core.hpp>

#include <functional>
#include <span>
#include <vector>

namespace modsel::sha {

struct Rung {
    int budget_epochs = 0;
    int survivors = 0;
};

/// Budgets strictly increase, survivor counts strictly decrease, the last
/// rung keeps exactly one candidate. Default: (5,5) (10,3) (15,1).
struct RungPlan {
    std::vector<Rung> rungs = {{5, 5}, {10, 3}, {15, 1}};

    void validate() const;
};

/// Deterministic scoring contract: (candidate, total budget in epochs) ->
/// score in [0, 100]. Identical arguments must return identical scores.
using Evaluator = std::function<double(const CandidateId&, int)>;

struct RungLogEntry {
    int rung = 0;
    int budget_epochs = 0;
    CandidateId candidate;
    double score = 0.0;
    bool kept = false;
};

struct ShaResult {
    CandidateId survivor;
    std::vector<RungLogEntry> log;  // candidate-list order within each rung
};

/// Runs the plan: at each rung every current candidate is evaluated at the
/// rung budget and the top `survivors` by score are kept (ties break by
/// lexicographic model_id). Scores outside [0, 100] are an error naming the
/// candidate and rung.
ShaResult run_sha(std::span<const CandidateId> candidates, const Evaluator& evaluator,
                  const RungPlan& plan);

/// Saturating synthetic learning curve standing in for real training:
/// score(budget) = clamp(asymptote * (1 - exp(-rate * budget)) + offset).
struct CurveParams {
    double asymptote = 0.0;  // in [0, 100]
    double rate = 0.0;       // > 0
    double offset = 0.0;     // >= 0
};

double curve_score(const CurveParams& params, int budget_epochs);

/// Wraps one curve as an Evaluator (the score ignores the candidate).
Evaluator synthetic_curve(const CurveParams& params);

}  // namespace modsel::sha

#endif  // MODSEL_SHA_HPP
