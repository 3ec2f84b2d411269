/**
 * @file regression.hpp
 * @brief Least-squares line fitting in (time, accuracy) space, slope
 *        adjustment around the centroid, and vertical residuals.
 */

#ifndef MODSEL_REGRESSION_HPP
#define MODSEL_REGRESSION_HPP

#include <modsel/core.hpp>

#include <span>

namespace modsel::regression {

/// A fitted line. The line always passes through the sample centroid.
struct SlopeModel {
    double slope = 0.0;          // accuracy percent per millisecond
    double intercept = 0.0;      // percent
    double centroid_time = 0.0;  // mean time_ms
    double centroid_accuracy = 0.0;
};

/// Ordinary least squares of accuracy on time. Requires at least two points
/// with at least two distinct time values, otherwise DegenerateFitError.
SlopeModel fit_line(std::span<const TradeoffPoint> points);

/// Multiplies the slope by `factor` (> 0) and pivots the line at the
/// centroid, so factor 1 is the identity and the mean residual stays zero.
SlopeModel adjusted_line(const SlopeModel& model, double factor);

/// Signed vertical offset of a point above (+) or below (-) the line:
/// accuracy - (intercept + slope * time). Evaluated through the centroid,
/// which is the same quantity for any model satisfying the centroid
/// invariant but numerically stable for times far from zero.
double residual(const SlopeModel& model, const TradeoffPoint& point);

}  // namespace modsel::regression

#endif  // MODSEL_REGRESSION_HPP
