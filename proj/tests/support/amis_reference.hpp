/**
 * @file amis_reference.hpp
 * @brief Independent, unoptimized reference implementation of the iterative
 *        margin-dependent selection, used only as a test oracle.
 *
 * Deliberately shares no code or types with the library: plain string-keyed
 * maps, naive loops, and the textbook formulas. Keep it simple and slow.
 */

#ifndef MODSEL_TESTS_AMIS_REFERENCE_HPP
#define MODSEL_TESTS_AMIS_REFERENCE_HPP

#include <map>
#include <string>
#include <vector>

namespace amisref {

struct RefConfig {
    int factor_count = 100;
    double factor_min = 0.001;
    double factor_max = 3.0;
    bool geometric = true;
    std::vector<double> schedule = {10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
    int window = 10;
    std::map<std::string, double> weights;  // empty = uniform
    int k = 1;
};

struct RefPool {
    std::vector<std::string> labels;
    std::vector<std::string> datasets;
    // measurements[label][dataset] = {time, accuracy}
    std::map<std::string, std::map<std::string, std::pair<double, double>>> measurements;
};

/// Ordered list of the k selected labels.
std::vector<std::string> reference_select(const RefPool& pool, const RefConfig& config);

}  // namespace amisref

#endif  // MODSEL_TESTS_AMIS_REFERENCE_HPP
