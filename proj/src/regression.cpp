/**
 * @file regression.cpp
 * @brief Centered two-pass OLS and centroid-pivoted slope adjustment.
 */

#include <modsel/regression.hpp>

#include <cmath>

namespace modsel::regression {

SlopeModel fit_line(std::span<const TradeoffPoint> points) {
    if (points.size() < 2) {
        throw DegenerateFitError("fit_line requires at least 2 points, got " +
                                 std::to_string(points.size()));
    }
    double time_sum = 0.0;
    double accuracy_sum = 0.0;
    for (const auto& p : points) {
        if (!std::isfinite(p.time_ms) || !std::isfinite(p.accuracy)) {
            throw ValidationError("points", "non-finite trade-off point");
        }
        time_sum += p.time_ms;
        accuracy_sum += p.accuracy;
    }
    const double n = static_cast<double>(points.size());
    const double time_mean = time_sum / n;
    const double accuracy_mean = accuracy_sum / n;

    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& p : points) {
        const double dt = p.time_ms - time_mean;
        sxx += dt * dt;
        sxy += dt * (p.accuracy - accuracy_mean);
    }
    if (sxx == 0.0) {
        throw DegenerateFitError("fit_line: all time values identical, no trade-off to fit");
    }

    SlopeModel model;
    model.slope = sxy / sxx;
    model.centroid_time = time_mean;
    model.centroid_accuracy = accuracy_mean;
    model.intercept = accuracy_mean - model.slope * time_mean;
    return model;
}

SlopeModel adjusted_line(const SlopeModel& model, double factor) {
    if (!std::isfinite(factor) || factor <= 0.0) {
        throw Error("adjusted_line: factor must be a positive finite number");
    }
    SlopeModel adjusted = model;
    adjusted.slope = factor * model.slope;
    adjusted.intercept = model.centroid_accuracy - adjusted.slope * model.centroid_time;
    return adjusted;
}

double residual(const SlopeModel& model, const TradeoffPoint& point) {
    // Evaluated through the centroid rather than the intercept: identical in
    // exact arithmetic (the line passes through the centroid), but avoids the
    // cancellation the intercept form suffers when times sit far from zero.
    return point.accuracy -
           (model.centroid_accuracy + model.slope * (point.time_ms - model.centroid_time));
}

}  // namespace modsel::regression
