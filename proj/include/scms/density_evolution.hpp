#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "scms/degree_distribution.hpp"
#include "scms/gaussian.hpp"

namespace scms {

// Gaussian-approximation density evolution for min-sum style decoding on the
// BiAWGN channel, all-zero codeword, BPSK.  Variable-to-check messages are
// modeled as a three-way mixture: erased (exactly zero, probability E),
// negative (probability P), else positive; unerased check-to-variable
// messages as consistent Gaussians N(m, 2m).

// The scalar recurrence is often written in a compact closed form that drops
// the square on the check quantile (and folds m0/2 into "1/sigma^2").  The
// step-by-step derivation (m_beta = 2 Qinv(R)^2, error = Q(sqrt(m/2))) is the
// internally consistent reading and the canonical one here; Literal evaluates
// the compact form as printed, for documentation and comparison only.
enum class DisplayForm { Corrected, Literal };

struct DeParams {
    DegreeDistribution dist;
    double sigma = 0.8;
    // Fit the check Gaussian to Pr(beta < 0 | unerased) instead of the
    // unconditional Pr(beta < 0).  Off by default; documented alternative.
    bool condition_on_unerased = false;
    DisplayForm form = DisplayForm::Corrected;

    double m0() const { return 2.0 / (sigma * sigma); }
};

struct DeState {
    double p = 0.0;  // Pr(message negative)
    double e = 0.0;  // Pr(message erased)
    double pe() const { return p + e; }
};

struct CheckState {
    double r = 0.0;       // Pr(check-to-variable message negative)
    double f = 0.0;       // Pr(check-to-variable message erased)
    double mean_beta = 0.0;
};

// Probability a check output is erased: any erased input erases the product.
inline double erasure_step(double e, const DegreeDistribution& dist) {
    return 1.0 - dist.rho_eval(1.0 - e);
}

// Probability a check output is negative: all inputs unerased with an odd
// number of negatives, via the parity generating-function trick.
inline double negative_step(double p, double e, const DegreeDistribution& dist) {
    return 0.5 * (dist.rho_eval(1.0 - e) - dist.rho_eval(1.0 - e - 2.0 * p));
}

// Mean of the consistent Gaussian N(m, 2m) fitted to tail probability r,
// i.e. Q(sqrt(m/2)) = r.  r = 0 gives +inf (error-free messages); r > 1/2
// extends with a negative mean (majority-misleading messages) so the map
// stays defined on the whole probability domain.
inline double mean_from_check_negative(double r) {
    if (r <= 0.0) return std::numeric_limits<double>::infinity();
    if (r >= 1.0) return -std::numeric_limits<double>::infinity();
    if (r == 0.5) return 0.0;
    if (r < 0.5) {
        const double z = q_inverse(r);
        return 2.0 * z * z;
    }
    const double z = q_inverse(1.0 - r);
    return -2.0 * z * z;
}

// Contract-checked front end: check negative probabilities live in [0, 1/2]
// (parity of i.i.d. signs cannot exceed one half), so anything else is a
// caller bug rather than a state the recurrence can reach from valid input.
inline double mean_from_r(double r) {
    if (r < 0.0 || r > 0.5)
        throw std::domain_error("mean_from_r: r must lie in [0, 1/2], got " + std::to_string(r));
    return mean_from_check_negative(r);
}

// Tail probability of N(m, 2|m|) evaluated at zero; handles +-inf means.
inline double gaussian_error_from_mean(double m) {
    if (std::isinf(m)) return m > 0.0 ? 0.0 : 1.0;
    if (m == 0.0) return 0.5;
    const double t = std::sqrt(0.5 * std::fabs(m));
    return m > 0.0 ? q_function(t) : 1.0 - q_function(t);
}

// Error probability of a degree-i variable's extrinsic sum: channel mean m0
// plus (i-1) check contributions, each unerased with probability u and of
// mean m_beta when present.
inline double variable_error_prob(int degree, double m0, double unerased_prob, double mean_beta) {
    const double contrib = (degree - 1) * unerased_prob;
    const double mean = contrib == 0.0 ? m0 : m0 + contrib * mean_beta;
    return gaussian_error_from_mean(mean);
}

// Compact-display reading of the same quantity: the check quantile enters
// unsquared, the channel as m0/2 = 1/sigma^2.  Where the printed expression
// leaves the real line (negative radicand) it is clamped to Q(0) = 1/2.
// Kept only so the two readings can be compared; never used by default.
inline double variable_error_prob_literal(int degree, double m0, double unerased_prob,
                                          double mean_beta) {
    const double contrib = (degree - 1) * unerased_prob;
    if (contrib == 0.0) return gaussian_error_from_mean(m0);
    if (std::isinf(mean_beta)) return mean_beta > 0.0 ? 0.0 : 0.5;
    const double z = (mean_beta < 0.0 ? -1.0 : 1.0) * std::sqrt(0.5 * std::fabs(mean_beta));
    const double radicand = 0.5 * m0 + contrib * z;
    if (radicand <= 0.0) return 0.5;
    return q_function(std::sqrt(radicand));
}

inline CheckState check_state(const DeState& s, const DeParams& params) {
    CheckState c;
    c.f = erasure_step(s.e, params.dist);
    c.r = negative_step(s.p, s.e, params.dist);
    double fit = c.r;
    if (params.condition_on_unerased) {
        const double u = 1.0 - c.f;
        fit = u > 0.0 ? c.r / u : 0.0;
    }
    c.mean_beta = mean_from_check_negative(fit);
    return c;
}

// One self-corrected min-sum iteration (check pass + variable pass with the
// sign-flip erasure rule under the independence assumption):
//   q    = sum_i lambda_i q_i
//   P'   = (P + E) q                 (new negative: flip onto prior non-positive)
//   E'   = P + (1 - E - 2P) q        (erasure: fresh sign disagrees with prior sign)
inline DeState de_step(const DeState& s, const DeParams& params, CheckState* check_out = nullptr) {
    const CheckState c = check_state(s, params);
    if (check_out) *check_out = c;
    const double unerased = 1.0 - c.f;
    const double m0 = params.m0();
    double q = 0.0;
    const auto& lam = params.dist.lambda_coeffs();
    const bool literal = params.form == DisplayForm::Literal;
    for (std::size_t i = 2; i < lam.size(); ++i)
        if (lam[i] != 0.0)
            q += lam[i] * (literal ? variable_error_prob_literal(static_cast<int>(i), m0, unerased,
                                                                 c.mean_beta)
                                   : variable_error_prob(static_cast<int>(i), m0, unerased,
                                                         c.mean_beta));
    DeState out;
    out.p = (s.p + s.e) * q;
    out.e = s.p + (1.0 - s.e - 2.0 * s.p) * q;
    return out;
}

// One plain min-sum iteration (no erasures): the scalar recurrence
//   x' = sum_i lambda_i Q( sqrt( (m0 + (i-1) m) / 2 ) ),
//   m  = 2 Qinv(R)^2,  R = (1 - rho(1-2x)) / 2.
// Computed standalone so it cross-checks the mixture step at E = 0.
inline double de_step_ms(double x, const DeParams& params, CheckState* check_out = nullptr) {
    const double r = 0.5 * (1.0 - params.dist.rho_eval(1.0 - 2.0 * x));
    const double m = mean_from_check_negative(r);
    if (check_out) {
        check_out->r = r;
        check_out->f = 0.0;
        check_out->mean_beta = m;
    }
    const double m0 = params.m0();
    double out = 0.0;
    const auto& lam = params.dist.lambda_coeffs();
    const bool literal = params.form == DisplayForm::Literal;
    for (std::size_t i = 2; i < lam.size(); ++i) {
        if (lam[i] == 0.0) continue;
        out += lam[i] * (literal ? variable_error_prob_literal(static_cast<int>(i), m0, 1.0, m)
                                 : gaussian_error_from_mean(m0 + static_cast<double>(i - 1) * m));
    }
    return out;
}

enum class Recurrence { MinSum, SelfCorrected };

inline Recurrence parse_recurrence(const std::string& s) {
    if (s == "ms" || s == "theorem1" || s == "minsum") return Recurrence::MinSum;
    if (s == "scms" || s == "theorem2" || s == "self-corrected") return Recurrence::SelfCorrected;
    throw std::invalid_argument("recurrence: expected ms|scms, got '" + s + "'");
}

struct TrajectoryRow {
    int iteration;
    double p, e, pe;
    double r, f, mean_beta;
};

struct DeOptions {
    int iter_cap = 10000;
    double conv_tol = 1e-9;
};

// Full trajectory from the channel initialization P0 = Q(1/sigma), E0 = 0.
// Stops when pe < conv_tol or the iteration cap is reached.
inline std::vector<TrajectoryRow> de_trajectory(const DeParams& params, Recurrence rec,
                                                const DeOptions& opts = {}) {
    std::vector<TrajectoryRow> rows;
    DeState s{q_function(1.0 / params.sigma), 0.0};
    double x = s.p;
    rows.push_back({0, rec == Recurrence::MinSum ? x : s.p, rec == Recurrence::MinSum ? 0.0 : s.e,
                    rec == Recurrence::MinSum ? x : s.pe(), 0.0, 0.0, 0.0});
    for (int it = 1; it <= opts.iter_cap; ++it) {
        CheckState c;
        double pe;
        if (rec == Recurrence::MinSum) {
            x = de_step_ms(x, params, &c);
            pe = x;
            rows.push_back({it, x, 0.0, pe, c.r, c.f, c.mean_beta});
        } else {
            s = de_step(s, params, &c);
            pe = s.pe();
            rows.push_back({it, s.p, s.e, pe, c.r, c.f, c.mean_beta});
        }
        if (pe < opts.conv_tol) break;
    }
    return rows;
}

inline bool de_converges(const DeParams& params, Recurrence rec, const DeOptions& opts = {}) {
    DeState s{q_function(1.0 / params.sigma), 0.0};
    double x = s.p;
    for (int it = 1; it <= opts.iter_cap; ++it) {
        double pe;
        if (rec == Recurrence::MinSum) {
            x = de_step_ms(x, params);
            pe = x;
        } else {
            s = de_step(s, params);
            pe = s.pe();
        }
        if (pe < opts.conv_tol) return true;
    }
    return false;
}

struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ThresholdOptions {
    double sigma_lo = 0.3;
    double sigma_hi = 1.5;
    double tol = 1e-3;      // bisection width on sigma
    DeOptions de;
    bool condition_on_unerased = false;
    DisplayForm form = DisplayForm::Corrected;
};

// Largest sigma (to within tol) at which the recurrence drives the error
// probability to zero.  Throws BracketError when [sigma_lo, sigma_hi] does not
// bracket a threshold -- notably the self-corrected recurrence converges for
// every sigma (erasures starve the negative mass: P' <= (P+E)/2 once q < 1/2),
// so it admits no finite threshold and the search reports that honestly.
inline double threshold_search(const DegreeDistribution& dist, Recurrence rec,
                               const ThresholdOptions& opts = {}) {
    if (dist.min_var_degree() < 2)
        throw std::invalid_argument("threshold: degree-1 variables unsupported");
    if (!(opts.sigma_lo > 0.0) || !(opts.sigma_lo < opts.sigma_hi))
        throw std::invalid_argument("threshold: bad sigma range");
    auto conv = [&](double sigma) {
        DeParams p{dist, sigma, opts.condition_on_unerased, opts.form};
        return de_converges(p, rec, opts.de);
    };
    if (!conv(opts.sigma_lo))
        throw BracketError("threshold: no convergence at sigma_lo=" +
                           std::to_string(opts.sigma_lo) + "; threshold below search range");
    if (conv(opts.sigma_hi)) {
        std::string msg = "threshold: recurrence still converges at sigma_hi=" +
                          std::to_string(opts.sigma_hi) + "; no threshold bracket in range";
        if (rec == Recurrence::SelfCorrected)
            msg += " (the self-corrected recurrence converges for every sigma: erasures starve "
                   "the negative mass, P' <= (P+E)/2 whenever q < 1/2)";
        throw BracketError(msg);
    }
    double lo = opts.sigma_lo, hi = opts.sigma_hi;
    while (hi - lo > opts.tol) {
        const double mid = 0.5 * (lo + hi);
        if (conv(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace scms
