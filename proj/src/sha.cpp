/**
 * @file sha.cpp
 * @brief Successive halving over a rung plan.
 */

#include <modsel/sha.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace modsel::sha {

void RungPlan::validate() const {
    if (rungs.empty()) throw ValidationError("rungs", "plan must have at least one rung");
    for (std::size_t i = 0; i < rungs.size(); ++i) {
        if (rungs[i].budget_epochs < 1) {
            throw ValidationError("rungs", "budgets must be positive");
        }
        if (rungs[i].survivors < 1) {
            throw ValidationError("rungs", "survivor counts must be positive");
        }
        if (i > 0) {
            if (rungs[i].budget_epochs <= rungs[i - 1].budget_epochs) {
                throw ValidationError("rungs", "budgets must strictly increase");
            }
            if (rungs[i].survivors >= rungs[i - 1].survivors) {
                throw ValidationError("rungs", "survivor counts must strictly decrease");
            }
        }
    }
    if (rungs.back().survivors != 1) {
        throw ValidationError("rungs", "the last rung must keep exactly one candidate");
    }
}

ShaResult run_sha(std::span<const CandidateId> candidates, const Evaluator& evaluator,
                  const RungPlan& plan) {
    plan.validate();
    if (candidates.empty()) {
        throw ValidationError("candidates", "must be non-empty");
    }
    if (static_cast<int>(candidates.size()) < plan.rungs.front().survivors) {
        throw ValidationError("candidates",
                                "need at least " + std::to_string(plan.rungs.front().survivors) +
                                    " candidates for the first rung, got " +
                                    std::to_string(candidates.size()));
    }

    ShaResult result;
    std::vector<CandidateId> current(candidates.begin(), candidates.end());

    for (std::size_t r = 0; r < plan.rungs.size(); ++r) {
        const Rung& rung = plan.rungs[r];
        std::vector<double> scores(current.size());
        for (std::size_t i = 0; i < current.size(); ++i) {
            const double score = evaluator(current[i], rung.budget_epochs);
            if (!std::isfinite(score) || score < 0.0 || score > 100.0) {
                throw Error("evaluator returned " + std::to_string(score) + " for '" +
                            current[i].label() + "' at rung " + std::to_string(r) +
                            ", scores must lie in [0, 100]");
            }
            scores[i] = score;
        }

        std::vector<std::size_t> order(current.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (scores[a] != scores[b]) return scores[a] > scores[b];
            return candidate_less(current[a], current[b]);
        });

        const std::size_t keep = std::min(static_cast<std::size_t>(rung.survivors),
                                          current.size());
        std::vector<char> kept(current.size(), 0);
        for (std::size_t rank = 0; rank < keep; ++rank) kept[order[rank]] = 1;

        for (std::size_t i = 0; i < current.size(); ++i) {
            result.log.push_back({static_cast<int>(r), rung.budget_epochs, current[i], scores[i],
                                  kept[i] != 0});
        }

        std::vector<CandidateId> next;
        next.reserve(keep);
        for (std::size_t i = 0; i < current.size(); ++i) {
            if (kept[i]) next.push_back(current[i]);
        }
        current = std::move(next);
    }

    result.survivor = current.front();
    return result;
}

double curve_score(const CurveParams& params, int budget_epochs) {
    if (!std::isfinite(params.asymptote) || params.asymptote < 0.0 || params.asymptote > 100.0) {
        throw ValidationError("asymptote", "must lie in [0, 100]");
    }
    if (!std::isfinite(params.rate) || params.rate <= 0.0) {
        throw ValidationError("rate", "must be > 0");
    }
    if (!std::isfinite(params.offset) || params.offset < 0.0) {
        throw ValidationError("offset", "must be >= 0");
    }
    const double raw =
        params.asymptote * (1.0 - std::exp(-params.rate * budget_epochs)) + params.offset;
    return std::clamp(raw, 0.0, 100.0);
}

Evaluator synthetic_curve(const CurveParams& params) {
    curve_score(params, 1);  // validate once up front
    return [params](const CandidateId&, int budget_epochs) {
        return curve_score(params, budget_epochs);
    };
}

}  // namespace modsel::sha
