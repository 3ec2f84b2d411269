/**
 * @file posemetrics.hpp
 * @brief Symmetry-aware 6D pose error metrics (ADD, MSSD, MSPD) and
 *        threshold-recall aggregation.
 *
 * MSSD/MSPD take the worst (maximum) per-point distance minimized over the
 * object's discrete symmetry transforms; ADD is the mean point distance.
 * VSD needs depth rendering and is accepted as input data only, never
 * computed here.
 */

#ifndef MODSEL_POSEMETRICS_HPP
#define MODSEL_POSEMETRICS_HPP

#include <modsel/core.hpp>

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <vector>

namespace modsel::pose {

/// Rigid transform: proper rotation plus translation in meters.
struct Pose {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    static Pose identity() { return {}; }

    /// Applies the transform to a point.
    Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }

    /// this ∘ other: apply `other` first, then this transform.
    Pose compose(const Pose& other) const;

    /// Checks R^T R = I and det(R) = 1 within 1e-6.
    void validate(const char* name) const;
};

/// 3-D object model points, meters.
struct VertexSet {
    std::vector<Eigen::Vector3d> points;

    void validate() const;

    /// Plain-text loader: one "x y z" triple per line, '#' comments allowed.
    static VertexSet from_stream(std::istream& in);
};

/// Discrete object symmetries. Must contain the identity transform.
struct SymmetrySet {
    std::vector<Pose> transforms;

    static SymmetrySet identity_only();
    void validate() const;
};

/// Pinhole camera intrinsics, pixels.
struct Intrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;

    void validate() const;
};

/// Mean distance of transformed model points between the two poses, meters.
double add_metric(const Pose& estimated, const Pose& truth, const VertexSet& model);

/// Maximum symmetry-aware surface distance, meters: the worst per-point
/// 3-D error, minimized over truth-composed symmetry transforms.
double mssd(const Pose& estimated, const Pose& truth, const VertexSet& model,
            const SymmetrySet& symmetries);

/// Maximum symmetry-aware projection distance, pixels. Every transformed
/// point must have positive depth under both poses.
double mspd(const Pose& estimated, const Pose& truth, const VertexSet& model,
            const SymmetrySet& symmetries, const Intrinsics& camera);

/// Mean over thresholds of the fraction of errors strictly below each
/// threshold, as a percentage.
double recall(std::span<const double> errors, std::span<const double> thresholds);

}  // namespace modsel::pose

#endif  // MODSEL_POSEMETRICS_HPP
