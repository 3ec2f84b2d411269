/**
 * @file pareto.cpp
 * @brief Sort-then-scan frontier extraction, O(n log n).
 */

#include <modsel/pareto.hpp>

#include <algorithm>
#include <cmath>

namespace modsel::pareto {

bool dominates(const TradeoffPoint& p, const TradeoffPoint& q) {
    if (p.time_ms > q.time_ms || p.accuracy < q.accuracy) return false;
    return p.time_ms < q.time_ms || p.accuracy > q.accuracy;
}

Frontier wrap_line(const std::vector<LabeledPoint>& points) {
    if (points.empty()) {
        throw ValidationError("points", "wrap_line requires a non-empty point set");
    }
    for (const auto& lp : points) {
        if (!std::isfinite(lp.point.time_ms) || !std::isfinite(lp.point.accuracy) ||
            lp.point.time_ms <= 0.0) {
            throw ValidationError("points", "non-finite or non-positive time for " +
                                                  lp.candidate.label());
        }
    }

    std::vector<LabeledPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(), [](const LabeledPoint& a, const LabeledPoint& b) {
        if (a.point.time_ms != b.point.time_ms) return a.point.time_ms < b.point.time_ms;
        if (a.point.accuracy != b.point.accuracy) return a.point.accuracy > b.point.accuracy;
        return candidate_less(a.candidate, b.candidate);
    });

    // Single pass with a running accuracy maximum. A point survives only if
    // it strictly improves accuracy over everything faster; that drops
    // dominated points, equal-time losers and exact duplicates in one rule.
    Frontier frontier;
    double best_accuracy = -1.0;
    for (const auto& lp : sorted) {
        if (lp.point.accuracy > best_accuracy) {
            frontier.points.push_back(lp);
            best_accuracy = lp.point.accuracy;
        }
    }
    return frontier;
}

}  // namespace modsel::pareto
