/**
 * @file config.hpp
 * @brief Run configuration: a key/value text file with dotted nesting.
 */

#ifndef MODSEL_CONFIG_HPP
#define MODSEL_CONFIG_HPP

#include <modsel/amis.hpp>
#include <modsel/ingest.hpp>
#include <modsel/sha.hpp>

#include <iosfwd>
#include <string>

namespace modsel::config {

/// Everything a reproducible run needs. Command-line flags override any
/// value loaded from the config file.
struct RunConfig {
    amis::AmisConfig amis;
    sha::RungPlan rung_plan;
    int cluster_k = 3;
    ingest::AccuracyMetric metric = ingest::AccuracyMetric::AR;
    std::string baseline_model;
    bool baseline_refined = false;

    void validate() const;
};

/// Parses `key = value` lines ('#' starts a comment, blank lines ignored).
/// Dotted keys express nesting, e.g. `amis.factor_count = 100` or
/// `weight.lmo = 2`. Unknown keys are an error. See example_config() for
/// the full schema.
RunConfig load_config(std::istream& in);

/// A fully commented example covering every key and its default.
std::string example_config();

}  // namespace modsel::config

#endif  // MODSEL_CONFIG_HPP
