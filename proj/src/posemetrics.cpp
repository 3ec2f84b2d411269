/**
 * @file posemetrics.cpp
 * @brief Implementation of the pose error metrics.
 */

#include <modsel/posemetrics.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

namespace modsel::pose {

namespace {

constexpr double kRotationTolerance = 1e-6;

Eigen::Vector2d project(const Eigen::Vector3d& p, const Intrinsics& cam, std::size_t point_index,
                        const char* pose_name) {
    if (!(p.z() > 0.0)) {
        throw Error("projection domain error: point " + std::to_string(point_index) +
                    " has non-positive depth under the " + pose_name + " pose");
    }
    return {cam.fx * p.x() / p.z() + cam.cx, cam.fy * p.y() / p.z() + cam.cy};
}

}  // namespace

Pose Pose::compose(const Pose& other) const {
    Pose out;
    out.rotation = rotation * other.rotation;
    out.translation = rotation * other.translation + translation;
    return out;
}

void Pose::validate(const char* name) const {
    if (!rotation.allFinite() || !translation.allFinite()) {
        throw ValidationError(name, "pose entries must be finite");
    }
    const Eigen::Matrix3d gram = rotation.transpose() * rotation;
    if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > kRotationTolerance) {
        throw ValidationError(name, "rotation is not orthonormal within 1e-6");
    }
    if (std::abs(rotation.determinant() - 1.0) > kRotationTolerance) {
        throw ValidationError(name, "rotation determinant is not +1 within 1e-6");
    }
}

void VertexSet::validate() const {
    if (points.empty()) throw ValidationError("vertices", "must be non-empty");
    for (const auto& p : points) {
        if (!p.allFinite()) throw ValidationError("vertices", "coordinates must be finite");
    }
}

VertexSet VertexSet::from_stream(std::istream& in) {
    VertexSet set;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double x, y, z;
        if (!(fields >> x)) continue;  // blank or comment-only line
        if (!(fields >> y >> z)) {
            throw ParseError(row, "", "expected three coordinates per line");
        }
        std::string trailing;
        if (fields >> trailing) {
            throw ParseError(row, "", "unexpected trailing token '" + trailing + "'");
        }
        set.points.emplace_back(x, y, z);
    }
    set.validate();
    return set;
}

SymmetrySet SymmetrySet::identity_only() {
    SymmetrySet set;
    set.transforms.push_back(Pose::identity());
    return set;
}

void SymmetrySet::validate() const {
    if (transforms.empty()) {
        throw ValidationError("symmetries", "must contain at least the identity");
    }
    bool has_identity = false;
    for (const auto& s : transforms) {
        s.validate("symmetry");
        if ((s.rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <=
                kRotationTolerance &&
            s.translation.cwiseAbs().maxCoeff() <= kRotationTolerance) {
            has_identity = true;
        }
    }
    if (!has_identity) {
        throw ValidationError("symmetries", "the identity transform must be present");
    }
}

double add_metric(const Pose& estimated, const Pose& truth, const VertexSet& model) {
    estimated.validate("estimated");
    truth.validate("truth");
    model.validate();
    double sum = 0.0;
    for (const auto& x : model.points) {
        sum += (estimated.apply(x) - truth.apply(x)).norm();
    }
    return sum / static_cast<double>(model.points.size());
}

double mssd(const Pose& estimated, const Pose& truth, const VertexSet& model,
            const SymmetrySet& symmetries) {
    estimated.validate("estimated");
    truth.validate("truth");
    model.validate();
    symmetries.validate();

    double best = std::numeric_limits<double>::infinity();
    for (const auto& sym : symmetries.transforms) {
        const Pose truth_sym = truth.compose(sym);
        double worst = 0.0;
        for (const auto& x : model.points) {
            worst = std::max(worst, (estimated.apply(x) - truth_sym.apply(x)).norm());
        }
        best = std::min(best, worst);
    }
    return best;
}

double mspd(const Pose& estimated, const Pose& truth, const VertexSet& model,
            const SymmetrySet& symmetries, const Intrinsics& camera) {
    estimated.validate("estimated");
    truth.validate("truth");
    model.validate();
    symmetries.validate();
    camera.validate();

    double best = std::numeric_limits<double>::infinity();
    for (const auto& sym : symmetries.transforms) {
        const Pose truth_sym = truth.compose(sym);
        double worst = 0.0;
        for (std::size_t i = 0; i < model.points.size(); ++i) {
            const Eigen::Vector2d estimated_px =
                project(estimated.apply(model.points[i]), camera, i, "estimated");
            const Eigen::Vector2d truth_px =
                project(truth_sym.apply(model.points[i]), camera, i, "truth");
            worst = std::max(worst, (estimated_px - truth_px).norm());
        }
        best = std::min(best, worst);
    }
    return best;
}

void Intrinsics::validate() const {
    if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy) ||
        !std::isfinite(cx) || !std::isfinite(cy)) {
        throw ValidationError("intrinsics", "fx and fy must be positive and all finite");
    }
}

double recall(std::span<const double> errors, std::span<const double> thresholds) {
    if (errors.empty()) throw ValidationError("errors", "must be non-empty");
    if (thresholds.empty()) throw ValidationError("thresholds", "must be non-empty");
    for (double e : errors) {
        if (!std::isfinite(e) || e < 0.0) {
            throw ValidationError("errors", "must be non-negative and finite");
        }
    }
    double total = 0.0;
    for (double threshold : thresholds) {
        if (!(threshold > 0.0) || !std::isfinite(threshold)) {
            throw ValidationError("thresholds", "must be positive and finite");
        }
        std::size_t below = 0;
        for (double e : errors) {
            if (e < threshold) ++below;
        }
        total += static_cast<double>(below) / static_cast<double>(errors.size());
    }
    return 100.0 * total / static_cast<double>(thresholds.size());
}

}  // namespace modsel::pose
