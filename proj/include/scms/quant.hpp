#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scms {

// Uniform fixed-point quantizer: saturate to [lo, hi - step], then round to
// the nearest multiple of step (ties away from zero).  Messages (gamma, alpha,
// beta) and the a-posteriori sum use separate ranges.
struct QuantSpec {
    double step = 0.25;
    double msg_lo = -8.0, msg_hi = 8.0;   // channel + extrinsic messages
    double app_lo = -32.0, app_hi = 32.0; // a-posteriori LLR

    // 6-bit messages / 8-bit a-posteriori at step 0.25.
    static QuantSpec fig4() { return QuantSpec{}; }

    double quantize(double x, double lo, double hi) const {
        const double clamped = std::clamp(x, lo, hi - step);
        return std::round(clamped / step) * step;
    }
    double quantize_msg(double x) const { return quantize(x, msg_lo, msg_hi); }
    double quantize_app(double x) const { return quantize(x, app_lo, app_hi); }

    void validate() const {
        if (!(step > 0.0)) throw std::invalid_argument("quant: step must be positive");
        if (!(msg_lo < msg_hi) || !(app_lo < app_hi))
            throw std::invalid_argument("quant: empty range");
        if (msg_hi - msg_lo < step || app_hi - app_lo < step)
            throw std::invalid_argument("quant: range narrower than one step");
    }
};

}  // namespace scms
