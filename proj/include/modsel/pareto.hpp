/**
 * @file pareto.hpp
 * @brief Wrap-line (Pareto frontier) computation over time/accuracy points.
 */

#ifndef MODSEL_PARETO_HPP
#define MODSEL_PARETO_HPP

#include <modsel/core.hpp>

#include <vector>

namespace modsel::pareto {

struct LabeledPoint {
    CandidateId candidate;
    TradeoffPoint point;
};

/// The wrap-line: points not dominated by any faster-and-more-accurate
/// alternative, sorted by ascending time. Along the list both time and
/// accuracy are strictly increasing.
struct Frontier {
    std::vector<LabeledPoint> points;
};

/// Weak dominance: p is at most as slow and at least as accurate as q,
/// and differs from q in at least one coordinate.
bool dominates(const TradeoffPoint& p, const TradeoffPoint& q);

/// Computes the frontier of the input set. Equal-time ties keep only the
/// most accurate point; exact (time, accuracy) duplicates keep the
/// lexicographically smallest model_id.
Frontier wrap_line(const std::vector<LabeledPoint>& points);

}  // namespace modsel::pareto

#endif  // MODSEL_PARETO_HPP
