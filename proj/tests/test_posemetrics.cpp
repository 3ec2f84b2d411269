#include <modsel/posemetrics.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace modsel;
using namespace modsel::pose;

namespace {

Eigen::Matrix3d rotation_z(double angle) {
    return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

Pose random_pose(std::mt19937& rng, double translation_scale = 0.5) {
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::Vector3d axis(unit(rng), unit(rng), unit(rng));
    if (axis.norm() < 1e-6) axis = Eigen::Vector3d::UnitX();
    axis.normalize();
    Pose p;
    p.rotation = Eigen::AngleAxisd(angle(rng), axis).toRotationMatrix();
    p.translation = Eigen::Vector3d(unit(rng), unit(rng), unit(rng)) * translation_scale;
    return p;
}

VertexSet random_vertices(std::mt19937& rng, int n, double scale = 0.05) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    VertexSet set;
    for (int i = 0; i < n; ++i) {
        set.points.emplace_back(unit(rng) * scale, unit(rng) * scale, unit(rng) * scale);
    }
    return set;
}

VertexSet cube_vertices() {
    VertexSet set;
    for (double x : {-0.05, 0.05}) {
        for (double y : {-0.05, 0.05}) {
            for (double z : {-0.05, 0.05}) set.points.emplace_back(x, y, z);
        }
    }
    return set;
}

}  // namespace

TEST_CASE("add_metric: identity and pure translation") {
    const VertexSet model = cube_vertices();
    CHECK(add_metric(Pose::identity(), Pose::identity(), model) == 0.0);

    Pose shifted;
    shifted.translation = Eigen::Vector3d(0, 0, 0.05);
    CHECK(add_metric(shifted, Pose::identity(), model) == doctest::Approx(0.05).epsilon(1e-12));
    // pure translation: ADD equals the translation norm for any vertex set
    Pose diagonal;
    diagonal.translation = Eigen::Vector3d(0.03, -0.04, 0.12);
    CHECK(add_metric(diagonal, Pose::identity(), model) ==
          doctest::Approx(diagonal.translation.norm()).epsilon(1e-12));
}

TEST_CASE("add_metric: matches a direct per-point oracle") {
    std::mt19937 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const Pose estimated = random_pose(rng);
        const Pose truth = random_pose(rng);
        const VertexSet model = random_vertices(rng, 11);
        double expected = 0.0;
        for (const auto& x : model.points) {
            const Eigen::Vector3d a = estimated.rotation * x + estimated.translation;
            const Eigen::Vector3d b = truth.rotation * x + truth.translation;
            expected += std::sqrt((a.x() - b.x()) * (a.x() - b.x()) +
                                  (a.y() - b.y()) * (a.y() - b.y()) +
                                  (a.z() - b.z()) * (a.z() - b.z()));
        }
        expected /= static_cast<double>(model.points.size());
        CHECK(add_metric(estimated, truth, model) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("mssd: identity, symmetry absorption, oracle") {
    const VertexSet model = cube_vertices();
    const SymmetrySet identity_only = SymmetrySet::identity_only();
    CHECK(mssd(Pose::identity(), Pose::identity(), model, identity_only) == 0.0);

    SUBCASE("a 180-degree symmetric estimate is absorbed") {
        SymmetrySet symmetries = SymmetrySet::identity_only();
        Pose half_turn;
        half_turn.rotation = rotation_z(M_PI);
        symmetries.transforms.push_back(half_turn);

        std::mt19937 rng(73);
        const Pose truth = random_pose(rng);
        const Pose estimated = truth.compose(half_turn);
        CHECK(mssd(estimated, truth, model, symmetries) ==
              doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
        // without the symmetry the same estimate is far off
        CHECK(mssd(estimated, truth, model, identity_only) > 0.01);
    }

    SUBCASE("two-symmetry random case equals the double-loop oracle") {
        std::mt19937 rng(79);
        SymmetrySet symmetries = SymmetrySet::identity_only();
        Pose half_turn;
        half_turn.rotation = rotation_z(M_PI);
        symmetries.transforms.push_back(half_turn);
        for (int trial = 0; trial < 20; ++trial) {
            const Pose estimated = random_pose(rng);
            const Pose truth = random_pose(rng);
            const VertexSet vertices = random_vertices(rng, 9);
            double best = std::numeric_limits<double>::infinity();
            for (const auto& sym : symmetries.transforms) {
                double worst = 0.0;
                for (const auto& x : vertices.points) {
                    const Eigen::Vector3d a = estimated.rotation * x + estimated.translation;
                    const Eigen::Vector3d b =
                        truth.rotation * (sym.rotation * x + sym.translation) + truth.translation;
                    worst = std::max(worst, (a - b).norm());
                }
                best = std::min(best, worst);
            }
            CHECK(mssd(estimated, truth, vertices, symmetries) ==
                  doctest::Approx(best).epsilon(1e-12));
        }
    }
}

TEST_CASE("rigid invariance: left-composing both poses changes nothing") {
    std::mt19937 rng(83);
    const VertexSet model = random_vertices(rng, 8);
    SymmetrySet symmetries = SymmetrySet::identity_only();
    Pose quarter;
    quarter.rotation = rotation_z(M_PI / 2.0);
    symmetries.transforms.push_back(quarter);
    for (int trial = 0; trial < 20; ++trial) {
        const Pose estimated = random_pose(rng);
        const Pose truth = random_pose(rng);
        const Pose rigid = random_pose(rng, 2.0);
        const double add_before = add_metric(estimated, truth, model);
        const double add_after = add_metric(rigid.compose(estimated), rigid.compose(truth), model);
        CHECK(add_after == doctest::Approx(add_before).epsilon(1e-9));
        const double mssd_before = mssd(estimated, truth, model, symmetries);
        const double mssd_after =
            mssd(rigid.compose(estimated), rigid.compose(truth), model, symmetries);
        CHECK(mssd_after == doctest::Approx(mssd_before).epsilon(1e-9));
    }
}

TEST_CASE("mspd: pinhole arithmetic") {
    VertexSet single;
    single.points.emplace_back(0, 0, 1);
    Intrinsics camera{500, 500, 0, 0};
    Pose estimated;
    estimated.translation = Eigen::Vector3d(0.01, 0, 0);
    CHECK(mspd(estimated, Pose::identity(), single, SymmetrySet::identity_only(), camera) ==
          doctest::Approx(5.0).epsilon(1e-12));
    CHECK(mspd(Pose::identity(), Pose::identity(), single, SymmetrySet::identity_only(),
               camera) == 0.0);
}

TEST_CASE("mspd: doubling the focal lengths doubles the result exactly") {
    std::mt19937 rng(89);
    for (int trial = 0; trial < 20; ++trial) {
        // small object, depth carried by the pose translation so every
        // rotated point stays in front of the camera
        VertexSet model = random_vertices(rng, 7);
        Pose estimated = random_pose(rng, 0.05);
        Pose truth = random_pose(rng, 0.05);
        estimated.translation.z() = std::abs(estimated.translation.z()) + 1.0;
        truth.translation.z() = std::abs(truth.translation.z()) + 1.0;
        const Intrinsics camera{400, 600, 0, 0};
        const Intrinsics doubled{800, 1200, 0, 0};
        const SymmetrySet identity_only = SymmetrySet::identity_only();
        const double base = mspd(estimated, truth, model, identity_only, camera);
        const double twice = mspd(estimated, truth, model, identity_only, doubled);
        CHECK(twice == 2.0 * base);  // exact: power-of-two scaling
    }
}

TEST_CASE("mspd: non-positive depth names the offending point") {
    VertexSet model;
    model.points.emplace_back(0, 0, 1);
    model.points.emplace_back(0, 0, -2);  // behind the camera under identity
    const Intrinsics camera{500, 500, 320, 240};
    try {
        mspd(Pose::identity(), Pose::identity(), model, SymmetrySet::identity_only(), camera);
        FAIL("expected Error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("point 1") != std::string::npos);
    }
}

TEST_CASE("symmetry supersets never increase mssd or mspd") {
    std::mt19937 rng(97);
    const Intrinsics camera{500, 500, 320, 240};
    for (int trial = 0; trial < 25; ++trial) {
        VertexSet model = random_vertices(rng, 6);
        Pose estimated = random_pose(rng, 0.1);
        Pose truth = random_pose(rng, 0.1);
        estimated.translation.z() = std::abs(estimated.translation.z()) + 1.5;
        truth.translation.z() = std::abs(truth.translation.z()) + 1.5;

        SymmetrySet small = SymmetrySet::identity_only();
        SymmetrySet large = small;
        Pose half_turn;
        half_turn.rotation = rotation_z(M_PI);
        large.transforms.push_back(half_turn);
        Pose quarter;
        quarter.rotation = rotation_z(M_PI / 2.0);
        large.transforms.push_back(quarter);

        CHECK(mssd(estimated, truth, model, large) <= mssd(estimated, truth, model, small));
        CHECK(mspd(estimated, truth, model, large, camera) <=
              mspd(estimated, truth, model, small, camera));
    }
}

TEST_CASE("recall: counting examples and monotonicity") {
    CHECK(recall(std::vector<double>{0, 0, 0}, std::vector<double>{0.1, 5.0}) == 100.0);
    CHECK(recall(std::vector<double>{1, 3}, std::vector<double>{2}) == 50.0);
    CHECK(recall(std::vector<double>{1, 2, 3}, std::vector<double>{1.5, 2.5, 3.5}) ==
          doctest::Approx(100.0 * (1.0 / 3 + 2.0 / 3 + 1.0) / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(recall(std::vector<double>{}, std::vector<double>{1.0}), ValidationError);
    CHECK_THROWS_AS(recall(std::vector<double>{1.0}, std::vector<double>{}), ValidationError);

    // raising any threshold never lowers recall
    const std::vector<double> errors = {0.5, 1.5, 2.5, 3.5};
    double previous = 0.0;
    for (double threshold : {0.1, 1.0, 2.0, 3.0, 4.0}) {
        const double value = recall(errors, std::vector<double>{threshold});
        CHECK(value >= previous);
        previous = value;
    }
}

TEST_CASE("pose validation catches bad rotations") {
    Pose bad;
    bad.rotation(0, 0) = 2.0;
    CHECK_THROWS_AS(bad.validate("pose"), ValidationError);

    Pose reflection = Pose::identity();
    reflection.rotation(2, 2) = -1.0;
    reflection.rotation(1, 1) = 1.0;  // det = -1, orthonormal
    CHECK_THROWS_AS(reflection.validate("pose"), ValidationError);
}

TEST_CASE("symmetry sets must contain the identity") {
    SymmetrySet no_identity;
    Pose half_turn;
    half_turn.rotation = rotation_z(M_PI);
    no_identity.transforms.push_back(half_turn);
    CHECK_THROWS_AS(no_identity.validate(), ValidationError);
    CHECK_NOTHROW(SymmetrySet::identity_only().validate());
}

TEST_CASE("VertexSet: plain-text loader") {
    std::istringstream in(
        "# object corners\n"
        "0.1 0.2 0.3\n"
        "\n"
        "-0.1 -0.2 -0.3  # trailing comment\n");
    const VertexSet set = VertexSet::from_stream(in);
    REQUIRE(set.points.size() == 2);
    CHECK(set.points[1].y() == -0.2);

    std::istringstream bad("0.1 0.2\n");
    CHECK_THROWS_AS(VertexSet::from_stream(bad), ParseError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(VertexSet::from_stream(empty), ValidationError);
}
