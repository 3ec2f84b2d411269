/**
 * @file cluster.cpp
 * @brief Deterministic Lloyd iterations with quantile seeding.
 */

#include <modsel/cluster.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace modsel::cluster {

namespace {

constexpr int kMaxIterations = 100;

double quantile_of_sorted(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

std::vector<int> assign_nearest(const std::vector<double>& values,
                                const std::vector<double>& centers) {
    std::vector<int> assign(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        int best = 0;
        double best_distance = std::abs(values[i] - centers[0]);
        for (int j = 1; j < static_cast<int>(centers.size()); ++j) {
            const double distance = std::abs(values[i] - centers[j]);
            if (distance < best_distance) {  // ties keep the lower index
                best = j;
                best_distance = distance;
            }
        }
        assign[i] = best;
    }
    return assign;
}

// Re-seats any empty cluster on the point farthest from its current center
// (smallest index on ties) so every cluster stays non-empty.
void fix_empty_clusters(const std::vector<double>& values, std::vector<int>& assign,
                        std::vector<double>& centers) {
    const int k = static_cast<int>(centers.size());
    for (int j = 0; j < k; ++j) {
        if (std::find(assign.begin(), assign.end(), j) != assign.end()) continue;
        std::size_t farthest = 0;
        double farthest_distance = -1.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double distance = std::abs(values[i] - centers[assign[i]]);
            if (distance > farthest_distance) {
                farthest = i;
                farthest_distance = distance;
            }
        }
        assign[farthest] = j;
        centers[j] = values[farthest];
    }
}

}  // namespace

double wcss(std::span<const double> values, const std::vector<int>& assignments,
            const std::vector<double>& centers) {
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - centers[static_cast<std::size_t>(assignments[i])];
        total += d * d;
    }
    return total;
}

Clustering kmeans_1d(std::span<const double> values, int k) {
    if (k < 1) throw ValidationError("k", "must be >= 1");
    if (values.empty()) throw ValidationError("values", "must be non-empty");
    for (double v : values) {
        if (!std::isfinite(v)) throw ValidationError("values", "must be finite");
    }
    std::set<double> distinct(values.begin(), values.end());
    if (static_cast<int>(distinct.size()) < k) {
        throw ValidationError("k", "needs at least k distinct values, got " +
                                         std::to_string(distinct.size()) + " distinct for k = " +
                                         std::to_string(k));
    }

    // Work on the sorted copy; map assignments back to input order at the end.
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> sorted(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = values[order[i]];

    std::vector<double> centers(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        centers[static_cast<std::size_t>(j)] =
            quantile_of_sorted(sorted, (2.0 * j + 1.0) / (2.0 * k));
    }

    Clustering result;
    std::vector<int> assign;
    bool converged = false;
    for (int iteration = 0; iteration < kMaxIterations; ++iteration) {
        std::vector<int> next = assign_nearest(sorted, centers);
        fix_empty_clusters(sorted, next, centers);
        if (!assign.empty() && next == assign) {
            converged = true;
            break;
        }
        assign = std::move(next);
        for (int j = 0; j < k; ++j) {
            double sum = 0.0;
            int count = 0;
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                if (assign[i] == j) {
                    sum += sorted[i];
                    ++count;
                }
            }
            centers[static_cast<std::size_t>(j)] = sum / count;
        }
        result.iteration_wcss.push_back(wcss(sorted, assign, centers));
    }
    if (!converged) {
        // Iteration cap reached: one more assignment pass so the output
        // satisfies the nearest-center invariant.
        assign = assign_nearest(sorted, centers);
        fix_empty_clusters(sorted, assign, centers);
    }

    // Relabel clusters so centers come out strictly ascending.
    std::vector<int> relabel(static_cast<std::size_t>(k));
    std::vector<int> by_center(static_cast<std::size_t>(k));
    std::iota(by_center.begin(), by_center.end(), 0);
    std::sort(by_center.begin(), by_center.end(), [&](int a, int b) {
        return centers[static_cast<std::size_t>(a)] < centers[static_cast<std::size_t>(b)];
    });
    std::vector<double> sorted_centers(static_cast<std::size_t>(k));
    for (int rank = 0; rank < k; ++rank) {
        relabel[static_cast<std::size_t>(by_center[static_cast<std::size_t>(rank)])] = rank;
        sorted_centers[static_cast<std::size_t>(rank)] =
            centers[static_cast<std::size_t>(by_center[static_cast<std::size_t>(rank)])];
    }

    result.centers = std::move(sorted_centers);
    result.assignments.assign(values.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        result.assignments[order[i]] = relabel[static_cast<std::size_t>(assign[i])];
    }
    return result;
}

}  // namespace modsel::cluster
