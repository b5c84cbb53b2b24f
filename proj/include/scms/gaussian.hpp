#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace scms {

// Gaussian tail probability Q(x) = P(N(0,1) > x) = erfc(x/sqrt(2))/2.
inline double q_function(double x) {
    return 0.5 * std::erfc(x * 0.7071067811865475244);
}

inline double normal_pdf(double x) {
    return 0.39894228040143267794 * std::exp(-0.5 * x * x);  // 1/sqrt(2*pi)
}

namespace detail {

// Acklam's rational approximation to the standard normal quantile.
// Relative error < 1.15e-9 over (0,1); refined below to machine precision.
inline double acklam_probit(double p) {
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace detail

// Inverse of q_function on (0,1).  Acklam's approximation followed by two
// Halley refinement steps against erfc-based Q; absolute error near machine eps.
inline double q_inverse(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("q_inverse: p must be in (0,1)");
    double z = -detail::acklam_probit(p);
    for (int k = 0; k < 2; ++k) {
        const double pdf = normal_pdf(z);
        if (pdf == 0.0) break;  // |z| ~ 38+, approximation already at tail limit
        const double u = (q_function(z) - p) / pdf;  // Newton step (note dQ/dz = -pdf)
        z = z + u / (1.0 - 0.5 * u * z);             // Halley correction
    }
    return z;
}

}  // namespace scms
