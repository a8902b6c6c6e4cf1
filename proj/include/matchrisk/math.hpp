// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Dense>

namespace matchrisk {

inline double sigmoid(double x) {
    // Stable in both tails.
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

/// log(1 + exp(x)) without overflow for large |x|.
inline double log1pexp(double x) {
    if (x > 35.0) return x;
    if (x < -35.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

/// Cosine similarity between two same-length vectors. For non-negative
/// inputs the result lies in [0, 1]. Two all-zero vectors count as
/// maximally alike; a zero vector against a non-zero one scores 0.
template <typename DerivedA, typename DerivedB>
double cosine_similarity(const Eigen::MatrixBase<DerivedA>& a,
                         const Eigen::MatrixBase<DerivedB>& b) {
    const double na = a.template cast<double>().norm();
    const double nb = b.template cast<double>().norm();
    if (na == 0.0 && nb == 0.0) return 1.0;
    if (na == 0.0 || nb == 0.0) return 0.0;
    return a.template cast<double>().dot(b.template cast<double>()) / (na * nb);
}

/// Population (not sample) variance of a vector expression.
template <typename Derived>
double population_variance(const Eigen::MatrixBase<Derived>& v) {
    if (v.size() == 0) return 0.0;
    const double mean = v.template cast<double>().mean();
    return (v.template cast<double>().array() - mean).square().sum() /
           static_cast<double>(v.size());
}

/// Least-squares slope of y against x. Used on log-log data for runtime
/// scaling fits. Returns {slope, intercept}.
template <typename DerivedX, typename DerivedY>
std::pair<double, double> least_squares_fit(const Eigen::MatrixBase<DerivedX>& x,
                                            const Eigen::MatrixBase<DerivedY>& y) {
    const auto xd = x.template cast<double>().eval();
    const auto yd = y.template cast<double>().eval();
    const double n = static_cast<double>(xd.size());
    const double mx = xd.mean();
    const double my = yd.mean();
    const double sxx = (xd.array() - mx).square().sum();
    const double sxy = ((xd.array() - mx) * (yd.array() - my)).sum();
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    (void)n;
    return {slope, my - slope * mx};
}

/// Great-circle distance between two (lat, lon) points in degrees, in km.
inline double haversine_km(double lat_a, double lon_a, double lat_b, double lon_b) {
    constexpr double kEarthRadiusKm = 6371.0;
    constexpr double kDegToRad = M_PI / 180.0;
    const double phi_a = lat_a * kDegToRad;
    const double phi_b = lat_b * kDegToRad;
    const double dphi = (lat_b - lat_a) * kDegToRad;
    const double dlambda = (lon_b - lon_a) * kDegToRad;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = s1 * s1 + std::cos(phi_a) * std::cos(phi_b) * s2 * s2;
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

}  // namespace matchrisk
