#include <modsel/config.hpp>

#include <doctest.h>

#include <sstream>

using namespace modsel;
using namespace modsel::config;

TEST_CASE("load_config: empty input gives defaults") {
    std::istringstream in("");
    const RunConfig config = load_config(in);
    CHECK(config.amis.factor_count == 100);
    CHECK(config.amis.factor_min == 0.001);
    CHECK(config.amis.factor_max == 3.0);
    CHECK(config.amis.spacing == amis::FactorSpacing::Geometric);
    CHECK(config.amis.stability_window == 10);
    CHECK(config.amis.selection_count == 5);
    CHECK(config.amis.rank_points_schedule == std::vector<double>{10, 9, 8, 7, 6, 5, 4, 3, 2, 1});
    CHECK(config.cluster_k == 3);
    CHECK(config.metric == ingest::AccuracyMetric::AR);
    REQUIRE(config.rung_plan.rungs.size() == 3);
    CHECK(config.rung_plan.rungs[0].budget_epochs == 5);
    CHECK(config.rung_plan.rungs[0].survivors == 5);
    CHECK(config.rung_plan.rungs[2].survivors == 1);
}

TEST_CASE("load_config: the documented example parses to the defaults") {
    std::istringstream in(example_config());
    const RunConfig config = load_config(in);
    CHECK(config.amis.factor_count == 100);
    CHECK(config.amis.spacing == amis::FactorSpacing::Geometric);
    CHECK(config.amis.selection_count == 5);
    CHECK(config.cluster_k == 3);
    CHECK(config.rung_plan.rungs.size() == 3);
}

TEST_CASE("load_config: every key applies") {
    std::istringstream in(
        "metric = mssd\n"
        "amis.factor_count = 25          # sweep length\n"
        "amis.factor_min = 0.01\n"
        "amis.factor_max = 2\n"
        "amis.factor_spacing = linear\n"
        "amis.rank_points = 5,3,1\n"
        "amis.stability_window = 4\n"
        "amis.selection_count = 2\n"
        "weight.lmo = 1\n"
        "weight.ycbv = 2.5\n"
        "cluster.k = 4\n"
        "sha.plan = 2:4,6:2,9:1\n"
        "baseline.model = gdrnpp_a0\n"
        "baseline.refined = true\n");
    const RunConfig config = load_config(in);
    CHECK(config.metric == ingest::AccuracyMetric::MSSD);
    CHECK(config.amis.factor_count == 25);
    CHECK(config.amis.factor_min == 0.01);
    CHECK(config.amis.factor_max == 2.0);
    CHECK(config.amis.spacing == amis::FactorSpacing::Linear);
    CHECK(config.amis.rank_points_schedule == std::vector<double>{5, 3, 1});
    CHECK(config.amis.stability_window == 4);
    CHECK(config.amis.selection_count == 2);
    CHECK(config.amis.dataset_weights.at("lmo") == 1.0);
    CHECK(config.amis.dataset_weights.at("ycbv") == 2.5);
    CHECK(config.cluster_k == 4);
    REQUIRE(config.rung_plan.rungs.size() == 3);
    CHECK(config.rung_plan.rungs[1].budget_epochs == 6);
    CHECK(config.baseline_model == "gdrnpp_a0");
    CHECK(config.baseline_refined);
}

TEST_CASE("load_config: errors carry the line") {
    std::istringstream unknown("nonsense.key = 1\n");
    try {
        load_config(unknown);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 1);
        CHECK(std::string(e.what()).find("unknown configuration key") != std::string::npos);
    }

    std::istringstream no_equals("metric ar\n");
    CHECK_THROWS_AS(load_config(no_equals), ParseError);

    std::istringstream bad_number("\n\namis.factor_count = many\n");
    try {
        load_config(bad_number);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 3);
    }

    std::istringstream bad_plan("sha.plan = 5:5,4:3,15:1\n");
    CHECK_THROWS_AS(load_config(bad_plan), ParseError);

    std::istringstream invalid_amis("amis.factor_min = 7\n");  // above factor_max
    CHECK_THROWS_AS(load_config(invalid_amis), ValidationError);
}
