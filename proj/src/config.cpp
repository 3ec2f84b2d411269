/**
 * @file config.cpp
 * @brief Key/value run-configuration parser.
 */

#include <modsel/config.hpp>

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>
#include <vector>

namespace modsel::config {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t");
    return text.substr(begin, end - begin + 1);
}

double to_number(const std::string& value, const std::string& key) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end) {
        throw ValidationError(key, "cannot parse '" + value + "' as a number");
    }
    return out;
}

int to_int(const std::string& value, const std::string& key) {
    const double number = to_number(value, key);
    if (number != std::floor(number)) {
        throw ValidationError(key, "expected an integer, got '" + value + "'");
    }
    return static_cast<int>(number);
}

bool to_bool(const std::string& value, const std::string& key) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ValidationError(key, "expected true or false, got '" + value + "'");
}

std::vector<std::string> split(const std::string& text, char separator) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == separator) {
            parts.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(trim(current));
    return parts;
}

std::vector<double> to_number_list(const std::string& value, const std::string& key) {
    std::vector<double> numbers;
    for (const auto& part : split(value, ',')) {
        numbers.push_back(to_number(part, key));
    }
    return numbers;
}

sha::RungPlan parse_plan(const std::string& value) {
    sha::RungPlan plan;
    plan.rungs.clear();
    for (const auto& part : split(value, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) {
            throw ValidationError("sha.plan",
                                    "expected budget:survivors pairs, got '" + part + "'");
        }
        sha::Rung rung;
        rung.budget_epochs = to_int(trim(part.substr(0, colon)), "sha.plan");
        rung.survivors = to_int(trim(part.substr(colon + 1)), "sha.plan");
        plan.rungs.push_back(rung);
    }
    plan.validate();
    return plan;
}

void apply_key(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "metric") {
        config.metric = ingest::accuracy_metric_from_string(value);
    } else if (key == "amis.factor_count") {
        config.amis.factor_count = to_int(value, key);
    } else if (key == "amis.factor_min") {
        config.amis.factor_min = to_number(value, key);
    } else if (key == "amis.factor_max") {
        config.amis.factor_max = to_number(value, key);
    } else if (key == "amis.factor_spacing") {
        config.amis.spacing = amis::factor_spacing_from_string(value);
    } else if (key == "amis.rank_points") {
        config.amis.rank_points_schedule = to_number_list(value, key);
    } else if (key == "amis.stability_window") {
        config.amis.stability_window = to_int(value, key);
    } else if (key == "amis.selection_count") {
        config.amis.selection_count = to_int(value, key);
    } else if (key.rfind("weight.", 0) == 0) {
        const std::string dataset = key.substr(7);
        if (dataset.empty()) throw ValidationError(key, "weight key needs a dataset id");
        config.amis.dataset_weights[dataset] = to_number(value, key);
    } else if (key == "cluster.k") {
        config.cluster_k = to_int(value, key);
    } else if (key == "sha.plan") {
        config.rung_plan = parse_plan(value);
    } else if (key == "baseline.model") {
        config.baseline_model = value;
    } else if (key == "baseline.refined") {
        config.baseline_refined = to_bool(value, key);
    } else {
        throw ValidationError(key, "unknown configuration key");
    }
}

}  // namespace

void RunConfig::validate() const {
    amis.validate();
    rung_plan.validate();
    if (cluster_k < 1) throw ValidationError("cluster.k", "must be >= 1");
}

RunConfig load_config(std::istream& in) {
    RunConfig config;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto equals = line.find('=');
        if (equals == std::string::npos) {
            throw ParseError(row, "", "expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, equals));
        const std::string value = trim(line.substr(equals + 1));
        if (key.empty()) throw ParseError(row, "", "missing key before '='");
        try {
            apply_key(config, key, value);
        } catch (const ValidationError& e) {
            throw ParseError(row, key, e.what());
        }
    }
    config.validate();
    return config;
}

std::string example_config() {
    return R"(# Run configuration. Every key is optional; the values below are the
# defaults. Command-line flags override anything set here.

# accuracy metric driving selection: ar | mspd | mssd | vsd | add | mean_of_listed
metric = ar

# slope-adjustment sweep
amis.factor_count = 100
amis.factor_min = 0.001
amis.factor_max = 3
amis.factor_spacing = geometric      # geometric | linear
amis.rank_points = 10,9,8,7,6,5,4,3,2,1
amis.stability_window = 10           # ordered top-N compared between factors
amis.selection_count = 5             # how many models to select

# per-dataset weights (default: uniform). One line per dataset.
# weight.lmo = 1
# weight.ycbv = 2

# candidate grouping
cluster.k = 3

# successive-halving rung plan: budget_epochs:survivors, ...
sha.plan = 5:5,10:3,15:1

# baseline candidate for comparison reports
# baseline.model = gdrnpp_a0
# baseline.refined = false
)";
}

}  // namespace modsel::config
