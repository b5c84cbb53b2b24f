#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scms/quant.hpp"
#include "scms/tanner_graph.hpp"

namespace scms {

enum class Variant { SumProduct, MinSum, NormalizedMinSum, OffsetMinSum, SelfCorrectedMinSum };

enum class TraceLevel { None, Stats, Full };

// Zero is sign-compatible with everything; where a concrete sign is needed it
// counts as positive.
inline int sgn(double x) { return x < 0.0 ? -1 : 1; }

struct DecoderConfig {
    Variant variant = Variant::SelfCorrectedMinSum;
    double param = 0.0;  // NMS scale factor / OMS offset
    int max_iter = 200;
    bool early_stop = true;
    double llr_cap = 30.0;  // sum-product magnitude cap
    std::optional<QuantSpec> quant;
    TraceLevel trace = TraceLevel::None;

    void validate() const {
        if (max_iter < 1) throw std::invalid_argument("decoder: max_iter must be >= 1");
        if (!(llr_cap > 0.0)) throw std::invalid_argument("decoder: llr_cap must be positive");
        if (variant == Variant::NormalizedMinSum && !(param > 0.0))
            throw std::invalid_argument("decoder: nms scale must be positive");
        if (variant == Variant::OffsetMinSum && !(param >= 0.0))
            throw std::invalid_argument("decoder: oms offset must be >= 0");
        if (quant) quant->validate();
    }
};

// "sp" | "ms" | "scms" | "nms:0.8" | "oms:0.3"
inline std::pair<Variant, double> parse_decoder_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const bool has_param = colon != std::string::npos;
    double param = 0.0;
    if (has_param) param = std::stod(spec.substr(colon + 1));
    if (name == "sp") {
        if (has_param) throw std::invalid_argument("decoder spec: sp takes no parameter");
        return {Variant::SumProduct, 0.0};
    }
    if (name == "ms") {
        if (has_param) throw std::invalid_argument("decoder spec: ms takes no parameter");
        return {Variant::MinSum, 0.0};
    }
    if (name == "scms") {
        if (has_param) throw std::invalid_argument("decoder spec: scms takes no parameter");
        return {Variant::SelfCorrectedMinSum, 0.0};
    }
    if (name == "nms") {
        if (!has_param) throw std::invalid_argument("decoder spec: nms needs a scale, e.g. nms:0.8");
        return {Variant::NormalizedMinSum, param};
    }
    if (name == "oms") {
        if (!has_param)
            throw std::invalid_argument("decoder spec: oms needs an offset, e.g. oms:0.3");
        return {Variant::OffsetMinSum, param};
    }
    throw std::invalid_argument("decoder spec: unknown decoder '" + name + "'");
}

inline std::string decoder_spec_string(Variant v, double param) {
    switch (v) {
        case Variant::SumProduct: return "sp";
        case Variant::MinSum: return "ms";
        case Variant::SelfCorrectedMinSum: return "scms";
        case Variant::NormalizedMinSum: {
            std::string s = std::to_string(param);
            while (s.size() > 1 && s.back() == '0') s.pop_back();
            if (!s.empty() && s.back() == '.') s.pop_back();
            return "nms:" + s;
        }
        case Variant::OffsetMinSum: {
            std::string s = std::to_string(param);
            while (s.size() > 1 && s.back() == '0') s.pop_back();
            if (!s.empty() && s.back() == '.') s.pop_back();
            return "oms:" + s;
        }
    }
    return "?";
}

// ---- reference message-update rules (the definitions; the engine below must
// ---- agree with these exactly) ----

// Min-sum check rule over the extrinsic inputs (target edge already excluded):
// sign product times minimum magnitude.
inline double check_update_ms(std::span<const double> incoming) {
    if (incoming.empty()) throw std::invalid_argument("check_update_ms: empty input");
    int sign = 1;
    double mag = std::numeric_limits<double>::infinity();
    for (double a : incoming) {
        sign *= sgn(a);
        const double m = std::fabs(a);
        if (m < mag) mag = m;
    }
    return sign * mag;
}

// Sum-product check rule 2*atanh(prod tanh(a/2)), output clamped to
// [-llr_cap, llr_cap] so a degenerate product of +-1 stays finite.
inline double check_update_sp(std::span<const double> incoming, double llr_cap = 30.0) {
    if (incoming.empty()) throw std::invalid_argument("check_update_sp: empty input");
    double prod = 1.0;
    for (double a : incoming) prod *= std::tanh(0.5 * a);
    double beta;
    if (prod >= 1.0)
        beta = llr_cap;
    else if (prod <= -1.0)
        beta = -llr_cap;
    else
        beta = 2.0 * std::atanh(prod);
    if (beta > llr_cap) beta = llr_cap;
    if (beta < -llr_cap) beta = -llr_cap;
    return beta;
}

// NMS scales the min-sum output, OMS shrinks its magnitude toward zero;
// other variants pass through.
inline double apply_correction(double beta, Variant v, double param) {
    switch (v) {
        case Variant::NormalizedMinSum: return param * beta;
        case Variant::OffsetMinSum: {
            const double m = std::fabs(beta) - param;
            return m > 0.0 ? sgn(beta) * m : 0.0;
        }
        default: return beta;
    }
}

struct VariableUpdate {
    double app;                     // gamma~: channel plus all incoming betas
    std::vector<double> alpha_tmp;  // per-edge extrinsic sums, input order
};

// Variable rule: a-posteriori = gamma + sum of all incoming betas; extrinsic
// for edge i excludes beta_i.  Sums run left-to-right in input order.
inline VariableUpdate variable_update(double gamma, std::span<const double> incoming_beta) {
    VariableUpdate out;
    out.app = gamma;
    for (double b : incoming_beta) out.app += b;
    out.alpha_tmp.resize(incoming_beta.size());
    for (std::size_t i = 0; i < incoming_beta.size(); ++i) {
        double t = gamma;
        for (std::size_t j = 0; j < incoming_beta.size(); ++j)
            if (j != i) t += incoming_beta[j];
        out.alpha_tmp[i] = t;
    }
    return out;
}

// Self-correction: erase (output zero) when the new extrinsic disagrees in
// sign with the previously sent message; a zero on either side is compatible
// with anything, so erased edges always recover on the next consistent value.
inline double scms_filter(double alpha_tmp, double alpha_prev) {
    if (alpha_prev != 0.0 && alpha_tmp != 0.0 && sgn(alpha_tmp) != sgn(alpha_prev)) return 0.0;
    return alpha_tmp;
}

struct IterationStats {
    double sign_change_fraction = 0.0;
    double erasure_fraction = 0.0;
};

struct DecodeResult {
    std::vector<std::uint8_t> bits;
    std::vector<double> app;
    int iterations = 0;
    bool converged = false;
    std::vector<IterationStats> iter_stats;            // Stats and Full traces
    std::vector<std::vector<double>> alpha_trace;      // Full trace: per iteration, per edge
    std::vector<std::vector<double>> beta_trace;
    std::vector<double> gamma_used;                    // Full trace: post-quantization channel LLRs
};

// Flooding-schedule decoder over a Tanner graph.  One iteration = check pass
// (beta from the previous alphas) then variable pass (alpha, app); messages
// live on edges in the graph's variable-major edge layout.
class Decoder {
public:
    Decoder(const TannerGraph& graph, DecoderConfig cfg) : g_(graph), cfg_(cfg) {
        cfg_.validate();
        for (int m = 0; m < g_.num_checks(); ++m)
            if (g_.chk_degree(m) < 2)
                throw std::invalid_argument("decoder: check " + std::to_string(m) +
                                            " has degree < 2 (no extrinsic information)");
        alpha_.resize(g_.edge_count());
        beta_.resize(g_.edge_count());
        gamma_.resize(g_.num_variables());
        last_sign_.resize(g_.edge_count());
        tanh_buf_.resize(g_.max_chk_degree());
        bits_buf_.resize(g_.num_variables());
    }

    const DecoderConfig& config() const { return cfg_; }

    DecodeResult decode(std::span<const double> channel_llr) {
        if (static_cast<int>(channel_llr.size()) != g_.num_variables())
            throw std::invalid_argument("decoder: LLR vector length mismatch");
        const bool quantized = cfg_.quant.has_value();
        const int ne = g_.edge_count();

        for (int n = 0; n < g_.num_variables(); ++n)
            gamma_[n] = quantized ? cfg_.quant->quantize_msg(channel_llr[n]) : channel_llr[n];
        for (int e = 0; e < ne; ++e) {
            alpha_[e] = gamma_[g_.edge_variable(e)];
            last_sign_[e] = static_cast<std::int8_t>(sgn(alpha_[e]));
        }

        DecodeResult res;
        res.app.resize(g_.num_variables());
        res.bits.resize(g_.num_variables());
        if (cfg_.trace == TraceLevel::Full) res.gamma_used = gamma_;

        const bool track_stats = cfg_.trace != TraceLevel::None;
        int it = 0;
        bool ok = false;
        while (it < cfg_.max_iter) {
            ++it;
            check_pass();
            const IterationStats st = variable_pass(res.app, track_stats);
            if (track_stats) res.iter_stats.push_back(st);
            if (cfg_.trace == TraceLevel::Full) {
                res.alpha_trace.push_back(alpha_);
                res.beta_trace.push_back(beta_);
            }
            for (int n = 0; n < g_.num_variables(); ++n)
                bits_buf_[n] = res.app[n] < 0.0 ? 1 : 0;
            ok = g_.syndrome_ok(bits_buf_);
            if (ok && cfg_.early_stop) break;
        }
        res.iterations = it;
        res.converged = ok;
        res.bits = bits_buf_;
        return res;
    }

private:
    void check_pass() {
        const bool sp = cfg_.variant == Variant::SumProduct;
        const bool quantized = cfg_.quant.has_value();
        for (int m = 0; m < g_.num_checks(); ++m) {
            const auto edges = g_.chk_edges(m);
            const int d = static_cast<int>(edges.size());
            if (sp) {
                // forward/backward tanh products for one-pass extrinsics
                double fwd = 1.0;
                for (int k = 0; k < d; ++k) {
                    tanh_buf_[k] = fwd;  // product of tanh over inputs before k
                    fwd *= std::tanh(0.5 * alpha_[edges[k]]);
                }
                double bwd = 1.0;
                for (int k = d - 1; k >= 0; --k) {
                    const double prod = tanh_buf_[k] * bwd;
                    bwd *= std::tanh(0.5 * alpha_[edges[k]]);
                    double b;
                    if (prod >= 1.0)
                        b = cfg_.llr_cap;
                    else if (prod <= -1.0)
                        b = -cfg_.llr_cap;
                    else
                        b = 2.0 * std::atanh(prod);
                    if (b > cfg_.llr_cap) b = cfg_.llr_cap;
                    if (b < -cfg_.llr_cap) b = -cfg_.llr_cap;
                    beta_[edges[k]] = quantized ? cfg_.quant->quantize_msg(b) : b;
                }
            } else {
                double min1 = std::numeric_limits<double>::infinity();
                double min2 = std::numeric_limits<double>::infinity();
                int argmin = -1, sign = 1;
                for (int k = 0; k < d; ++k) {
                    const double a = alpha_[edges[k]];
                    sign *= sgn(a);
                    const double mag = std::fabs(a);
                    if (mag < min1) {
                        min2 = min1;
                        min1 = mag;
                        argmin = k;
                    } else if (mag < min2) {
                        min2 = mag;
                    }
                }
                for (int k = 0; k < d; ++k) {
                    const double a = alpha_[edges[k]];
                    const double mag = (k == argmin) ? min2 : min1;
                    double b = (sign * sgn(a)) * mag;
                    b = apply_correction(b, cfg_.variant, cfg_.param);
                    beta_[edges[k]] = quantized ? cfg_.quant->quantize_msg(b) : b;
                }
            }
        }
    }

    IterationStats variable_pass(std::vector<double>& app, bool track_stats) {
        const bool scms = cfg_.variant == Variant::SelfCorrectedMinSum;
        const bool quantized = cfg_.quant.has_value();
        long changes = 0, erasures = 0;
        for (int n = 0; n < g_.num_variables(); ++n) {
            const auto edges = g_.var_edges(n);
            const int d = static_cast<int>(edges.size());
            const double gamma = gamma_[n];

            double sum = gamma;
            for (int k = 0; k < d; ++k) sum += beta_[edges[k]];
            app[n] = quantized ? cfg_.quant->quantize_app(sum) : sum;

            for (int i = 0; i < d; ++i) {
                // direct extrinsic sum in adjacency order (not app - beta):
                // keeps the update bit-exact under message erasure
                double t = gamma;
                for (int j = 0; j < d; ++j)
                    if (j != i) t += beta_[edges[j]];
                if (quantized) t = cfg_.quant->quantize_msg(t);

                const int e = edges[i];
                const double prev = alpha_[e];
                const double fresh = scms ? scms_filter(t, prev) : t;
                if (track_stats) {
                    if (fresh == 0.0) {
                        ++erasures;
                        if (prev != 0.0) ++changes;
                    } else {
                        if (sgn(fresh) != last_sign_[e]) ++changes;
                        last_sign_[e] = static_cast<std::int8_t>(sgn(fresh));
                    }
                }
                alpha_[e] = fresh;
            }
        }
        IterationStats st;
        if (track_stats) {
            st.sign_change_fraction = static_cast<double>(changes) / g_.edge_count();
            st.erasure_fraction = static_cast<double>(erasures) / g_.edge_count();
        }
        return st;
    }

    const TannerGraph& g_;
    DecoderConfig cfg_;
    std::vector<double> alpha_, beta_, gamma_;
    std::vector<std::int8_t> last_sign_;
    std::vector<double> tanh_buf_;
    std::vector<std::uint8_t> bits_buf_;
};

}  // namespace scms
