/**
 * @file cluster.hpp
 * @brief 1-D k-means grouping of candidates by inference time.
 */

#ifndef MODSEL_CLUSTER_HPP
#define MODSEL_CLUSTER_HPP

#include <modsel/core.hpp>

#include <span>
#include <vector>

namespace modsel::cluster {

struct Clustering {
    std::vector<int> assignments;        // cluster index per input value
    std::vector<double> centers;         // strictly ascending
    std::vector<double> iteration_wcss;  // within-cluster sum of squares trace
};

/// Lloyd iterations to an assignment fixpoint (or 100 iterations), seeded
/// deterministically at the (2i+1)/(2k) quantiles of the sorted values.
/// Requires at least k distinct values. No randomness anywhere.
Clustering kmeans_1d(std::span<const double> values, int k);

/// Within-cluster sum of squares of an assignment against given centers.
double wcss(std::span<const double> values, const std::vector<int>& assignments,
            const std::vector<double>& centers);

}  // namespace modsel::cluster

#endif  // MODSEL_CLUSTER_HPP
