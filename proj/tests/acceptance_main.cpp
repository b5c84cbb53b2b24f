// End-to-end acceptance gate for the toolkit.  Each numbered criterion prints
// exactly one PASS/FAIL line with the measured evidence; the process exits
// nonzero if any criterion fails.  Everything runs single-process from fixed
// seeds, so a rerun reproduces the same numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "scms/channel.hpp"
#include "scms/computation_tree.hpp"
#include "scms/csv.hpp"
#include "scms/decoder.hpp"
#include "scms/degree_distribution.hpp"
#include "scms/density_evolution.hpp"
#include "scms/graph_sample.hpp"
#include "scms/monte_carlo.hpp"
#include "scms/quant.hpp"
#include "scms/rng.hpp"
#include "scms/tanner_graph.hpp"

using namespace scms;

namespace {

// ------------------------------------------------------------------ gate

struct Gate {
    int failures = 0;
    void report(int index, const char* name, bool ok, const std::string& detail) {
        std::printf("%s: criterion %d (%s) — %s\n", ok ? "PASS" : "FAIL", index, name,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Shared desk-scale benchmark: rate-1/2 irregular ensemble, N=2000.
// lambda = 0.5 x^2 + 0.5 x^3, rho = 0.125 x^5 + 0.875 x^6 (edge perspective);
// the design rate is exactly 1/2 and the sampled instance keeps it.
const char* kBenchEnsemble = "3:0.5,4:0.5|6:0.125,7:0.875";

TannerGraph bench_code() {
    return sample_irregular(DegreeDistribution::parse(kBenchEnsemble), 2000, 1);
}

DecoderConfig make_cfg(Variant v, int max_iter, double param = 0.0) {
    DecoderConfig cfg;
    cfg.variant = v;
    cfg.param = param;
    cfg.max_iter = max_iter;
    return cfg;
}

// ------------------------------------------------- independent DE oracle
//
// A deliberately separate implementation of the plain min-sum scalar
// recurrence and its threshold: tail probabilities via erfc, the normal
// quantile via plain bisection, densities tracked with explicit
// degree/fraction pair lists.  Shares no code with the library.

namespace oracle {

double q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double q_inv(double p) {  // p in (0, 1/2]; q is strictly decreasing on [0, inf)
    double lo = 0.0, hi = 40.0;
    for (int i = 0; i < 120; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (q(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

using Side = std::vector<std::pair<int, double>>;  // (degree, edge fraction)

bool converges(const Side& lambda, const Side& rho, double sigma, int cap, double tol) {
    double x = q(1.0 / sigma);
    for (int it = 0; it < cap; ++it) {
        double rho_at = 0.0;  // rho(1 - 2x)
        for (const auto& [j, f] : rho) rho_at += f * std::pow(1.0 - 2.0 * x, j - 1);
        const double r = 0.5 * (1.0 - rho_at);
        double m;  // check-message mean, 2 * quantile^2
        if (r <= 0.0) {
            m = std::numeric_limits<double>::infinity();
        } else {
            const double z = q_inv(r);
            m = 2.0 * z * z;
        }
        double next = 0.0;
        for (const auto& [i, f] : lambda) {
            const double mean = 2.0 / (sigma * sigma) + (i - 1) * m;
            next += f * (std::isinf(mean) ? 0.0 : q(std::sqrt(0.5 * mean)));
        }
        x = next;
        if (x < tol) return true;
    }
    return false;
}

double threshold(const Side& lambda, const Side& rho, double lo, double hi, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (converges(lambda, rho, mid, 10000, 1e-9))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace oracle

// ------------------------------------------------------------ criteria

// 1. On random computation trees, the self-corrected decoder's root output
//    equals plain min-sum run on the erasure-pruned sub-tree, bit for bit.
void criterion_tree(Gate& gate) {
    const auto t0 = std::chrono::steady_clock::now();
    const long trials = 1000;
    Rng rng(1);
    long matches = 0;
    for (long t = 0; t < trials; ++t) {
        const ComputationTree tree = random_tree(4, 60, 2.0, rng);
        const TreeDecode sc = tree_decode(tree, Variant::SelfCorrectedMinSum);
        const ComputationTree pruned = prune_erased(tree, sc);
        const TreeDecode ms = tree_decode(pruned, Variant::MinSum, tree.depth);
        if (ms.root_value == sc.root_value) ++matches;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    gate.report(1, "tree equivalence", matches == trials && secs < 10.0,
                std::to_string(matches) + "/" + std::to_string(trials) +
                    " exact root matches in " + fmt(secs) + " s");
}

// 2. BER ordering at 2.0 dB on the N=2000 benchmark code, >=100 frame errors
//    per decoder: sum-product <= self-corrected < plain min-sum, with the
//    self-corrected/sum-product ratio bounded by 3.
void criterion_ordering(Gate& gate) {
    const TannerGraph g = bench_code();
    const StopRule stop{100, 200000};
    const double ebno = 2.0;
    const SimRecord sp = run_monte_carlo(g, make_cfg(Variant::SumProduct, 200), ebno, 42, stop);
    const SimRecord sc =
        run_monte_carlo(g, make_cfg(Variant::SelfCorrectedMinSum, 200), ebno, 42, stop);
    const SimRecord ms = run_monte_carlo(g, make_cfg(Variant::MinSum, 200), ebno, 42, stop);
    const bool enough =
        sp.frame_errors >= 100 && sc.frame_errors >= 100 && ms.frame_errors >= 100;
    const bool order = sp.ber() <= sc.ber() && sc.ber() < ms.ber();
    const bool ratio = sp.ber() > 0.0 && sc.ber() / sp.ber() <= 3.0;
    gate.report(2, "decoder ordering", enough && order && ratio,
                "ber sp=" + fmt(sp.ber()) + " scms=" + fmt(sc.ber()) + " ms=" + fmt(ms.ber()) +
                    ", scms/sp=" + (sp.ber() > 0.0 ? fmt(sc.ber() / sp.ber()) : "inf") +
                    ", frame errors " + std::to_string(sp.frame_errors) + "/" +
                    std::to_string(sc.frame_errors) + "/" + std::to_string(ms.frame_errors));
}

// 3. Sign-change dynamics at 1.0 dB over failed frames: the min-sum fraction
//    grows from iteration 1 to 5 while the self-corrected fraction shrinks;
//    with identical seeds the two decoders' iteration-1 fractions are equal
//    exactly (averaged over all frames, where the populations coincide).
void criterion_sign_dynamics(Gate& gate) {
    const TannerGraph g = bench_code();
    const double ebno = 1.0;
    const long frames = 150;
    const IterStatsSeries ms_failed = sign_change_stats(
        g, make_cfg(Variant::MinSum, 12), ebno, frames, FrameSelector::Failed, 7);
    const IterStatsSeries sc_failed = sign_change_stats(
        g, make_cfg(Variant::SelfCorrectedMinSum, 12), ebno, frames, FrameSelector::Failed, 7);
    const IterStatsSeries ms_all = sign_change_stats(
        g, make_cfg(Variant::MinSum, 1), ebno, frames, FrameSelector::All, 7);
    const IterStatsSeries sc_all = sign_change_stats(
        g, make_cfg(Variant::SelfCorrectedMinSum, 1), ebno, frames, FrameSelector::All, 7);
    const bool ms_grows = ms_failed.sign_change_fraction[4] > ms_failed.sign_change_fraction[0];
    const bool sc_shrinks = sc_failed.sign_change_fraction[4] < sc_failed.sign_change_fraction[0];
    const bool equal_first = ms_all.sign_change_fraction[0] == sc_all.sign_change_fraction[0];
    gate.report(3, "sign-change dynamics", ms_grows && sc_shrinks && equal_first,
                "failed-frame fractions iter1->5: ms " + fmt(ms_failed.sign_change_fraction[0]) +
                    "->" + fmt(ms_failed.sign_change_fraction[4]) + ", scms " +
                    fmt(sc_failed.sign_change_fraction[0]) + "->" +
                    fmt(sc_failed.sign_change_fraction[4]) + "; iter-1 equal over all frames: " +
                    (equal_first ? "yes" : "no"));
}

// 4. Check-message Gaussianity at 1.5 dB, iteration 20: unerased
//    self-corrected messages satisfy variance ~= 2 * mean within 30%; plain
//    min-sum messages from the same frames do not.  A long (3,6) code is used
//    so each frame's messages concentrate around the density-evolution limit:
//    at this noise level iteration 20 sits mid-transient (mean ~ 5), where the
//    consistency ratio is a sharp test.  Short codes mix frames at different
//    transient stages and the pooled variance reflects that mixing instead of
//    the per-frame message density.
void criterion_gaussianity(Gate& gate) {
    const TannerGraph g = sample_irregular(DegreeDistribution::regular(3, 6), 100000, 1);
    HistogramOptions opts;
    opts.frames = 2;
    opts.iteration = 20;
    opts.kind = MessageKind::Check;
    opts.seed = 3;
    opts.unerased_only = true;
    const MessageHistogram sc =
        message_histogram(g, make_cfg(Variant::SelfCorrectedMinSum, 20), 1.5, opts);
    opts.unerased_only = false;  // min-sum produces no zeros
    const MessageHistogram ms = message_histogram(g, make_cfg(Variant::MinSum, 20), 1.5, opts);
    const double rsc = sc.variance / (2.0 * sc.mean);
    const double rms = ms.variance / (2.0 * ms.mean);
    const bool sc_ok = sc.samples >= 100000 && rsc >= 0.7 && rsc <= 1.3;
    const bool ms_bad = ms.samples >= 100000 && (rms < 0.7 || rms > 1.3);
    gate.report(4, "check-message Gaussianity", sc_ok && ms_bad,
                "variance/(2*mean): scms " + fmt(rsc) + " (" + std::to_string(sc.samples) +
                    " unerased samples), ms " + fmt(rms) + " (" + std::to_string(ms.samples) +
                    " samples)");
}

// 5. Density evolution: the mixture step satisfies P' + E' = P + (1-P) q on a
//    100x100 state grid, (0,0) stays fixed, the scalar recurrence matches the
//    mixture at E=0, and the (3,6) min-sum threshold is bisection-stable and
//    agrees with the independent oracle above.
void criterion_density_evolution(Gate& gate) {
    const DegreeDistribution d36 = DegreeDistribution::regular(3, 6);
    const DegreeDistribution dirr = DegreeDistribution::parse(kBenchEnsemble);
    const DeParams p36{d36, 0.85};
    const DeParams pirr{dirr, 0.85};

    double worst_identity = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double p = 0.5 * i / 99.0;
        for (int j = 0; j < 100; ++j) {
            const double e = (1.0 - 2.0 * p) * j / 99.0;
            const DeState s{p, e};
            for (const DeParams* par : {&p36, &pirr}) {
                CheckState c;
                const DeState out = de_step(s, *par, &c);
                const double unerased = 1.0 - c.f;
                double qsum = 0.0;
                const auto& lam = par->dist.lambda_coeffs();
                for (std::size_t deg = 2; deg < lam.size(); ++deg)
                    if (lam[deg] != 0.0)
                        qsum += lam[deg] * variable_error_prob(static_cast<int>(deg), par->m0(),
                                                               unerased, c.mean_beta);
                const double gap = std::fabs((out.p + out.e) - (s.p + (1.0 - s.p) * qsum));
                if (gap > worst_identity) worst_identity = gap;
            }
        }
    }

    const DeState zero = de_step(DeState{0.0, 0.0}, p36);
    const bool fixed_point = zero.p == 0.0 && zero.e == 0.0;

    double worst_scalar = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = 0.5 * i / 99.0;
        for (const DeParams* par : {&p36, &pirr}) {
            CheckState c;
            (void)de_step(DeState{x, 0.0}, *par, &c);
            double qsum = 0.0;
            const auto& lam = par->dist.lambda_coeffs();
            for (std::size_t deg = 2; deg < lam.size(); ++deg)
                if (lam[deg] != 0.0)
                    qsum += lam[deg] * variable_error_prob(static_cast<int>(deg), par->m0(), 1.0,
                                                           c.mean_beta);
            const double gap = std::fabs(de_step_ms(x, *par) - qsum);
            if (gap > worst_scalar) worst_scalar = gap;
        }
    }

    auto search = [&d36](double lo, double hi) {
        ThresholdOptions o;
        o.sigma_lo = lo;
        o.sigma_hi = hi;
        return threshold_search(d36, Recurrence::MinSum, o);
    };
    const double thr_a = search(0.3, 1.5);
    const double thr_b = search(0.5, 1.2);
    const double thr_c = search(0.7, 1.0);
    const double restart_spread =
        std::max({thr_a, thr_b, thr_c}) - std::min({thr_a, thr_b, thr_c});
    const double thr_oracle =
        oracle::threshold({{3, 1.0}}, {{6, 1.0}}, 0.3, 1.5, 1e-3);
    const double oracle_gap = std::fabs(thr_a - thr_oracle);

    const bool ok = worst_identity <= 1e-12 && fixed_point && worst_scalar <= 1e-12 &&
                    restart_spread <= 1.0001e-3 && oracle_gap <= 1.0001e-3;
    gate.report(5, "density evolution", ok,
                "identity gap " + fmt(worst_identity) + ", (0,0) fixed: " +
                    (fixed_point ? "yes" : "no") + ", scalar gap " + fmt(worst_scalar) +
                    ", threshold " + fmt(thr_a) + " (restart spread " + fmt(restart_spread) +
                    ", oracle gap " + fmt(oracle_gap) + ")");
}

// 6. Scaling all channel LLRs by c in {0.5, 2, 10} changes nothing observable
//    for min-sum and self-corrected decoding (bits, iteration counts, erasure
//    patterns); sum-product output does change on at least one frame.
void criterion_scale_equivariance(Gate& gate) {
    const TannerGraph g = sample_irregular(DegreeDistribution::regular(3, 6), 504, 3);
    const double sigma = ebno_to_sigma(1.0, 0.5);
    const int frames = 100;
    const std::vector<double> scales{0.5, 2.0, 10.0};

    bool invariant_ok = true;
    bool sp_changed = false;
    std::string first_break;

    std::vector<double> gamma(g.num_variables()), scaled(g.num_variables());
    for (const Variant v :
         {Variant::MinSum, Variant::SelfCorrectedMinSum, Variant::SumProduct}) {
        DecoderConfig cfg = make_cfg(v, 30);
        cfg.trace = TraceLevel::Full;
        Decoder dec(g, cfg);
        for (int f = 0; f < frames; ++f) {
            all_zero_llrs(g.num_variables(), ChannelSpec{sigma}, 5, f, gamma);
            const DecodeResult base = dec.decode(gamma);
            for (double c : scales) {
                for (int i = 0; i < g.num_variables(); ++i) scaled[i] = c * gamma[i];
                const DecodeResult got = dec.decode(scaled);
                bool same = got.bits == base.bits && got.iterations == base.iterations;
                if (same && v == Variant::SelfCorrectedMinSum) {
                    for (std::size_t it = 0; same && it < base.alpha_trace.size(); ++it)
                        for (std::size_t e = 0; e < base.alpha_trace[it].size(); ++e)
                            if ((base.alpha_trace[it][e] == 0.0) !=
                                (got.alpha_trace[it][e] == 0.0)) {
                                same = false;
                                break;
                            }
                }
                if (v == Variant::SumProduct) {
                    if (!same) sp_changed = true;
                } else if (!same) {
                    invariant_ok = false;
                    if (first_break.empty())
                        first_break = std::string(" first break: ") +
                                      decoder_spec_string(v, 0.0) + " frame " +
                                      std::to_string(f) + " c=" + fmt(c);
                }
            }
        }
    }
    gate.report(6, "scale equivariance", invariant_ok && sp_changed,
                std::string("ms/scms invariant over 100 frames x {0.5,2,10}: ") +
                    (invariant_ok ? "yes" : "no") + "; sp output changed: " +
                    (sp_changed ? "yes" : "no") + first_break);
}

// 7. Fixed-point sanity: with the 0.25-step quantizer (messages [-8,8),
//    a-posteriori [-32,32)) and 30 iterations, self-corrected BER stays
//    within a factor of 2 of the floating-point decoder at the operating
//    point where the float BER sits near 1e-3.
void criterion_fixed_point(Gate& gate) {
    const TannerGraph g = bench_code();
    const double ebno = 2.0;  // float BER ~= 7e-4 on this code at 30 iterations
    const StopRule stop{100, 200000};
    const SimRecord flo =
        run_monte_carlo(g, make_cfg(Variant::SelfCorrectedMinSum, 30), ebno, 11, stop);
    DecoderConfig qcfg = make_cfg(Variant::SelfCorrectedMinSum, 30);
    qcfg.quant = QuantSpec::fig4();
    const SimRecord fix = run_monte_carlo(g, qcfg, ebno, 11, stop);
    const double ratio = flo.ber() > 0.0 ? fix.ber() / flo.ber() : 0.0;
    const bool anchored = flo.ber() >= 2e-4 && flo.ber() <= 5e-3;
    const bool close = flo.ber() > 0.0 && ratio >= 0.5 && ratio <= 2.0;
    const bool enough = flo.frame_errors >= 100 && fix.frame_errors >= 100;
    gate.report(7, "fixed-point sanity", anchored && close && enough,
                "at " + fmt(ebno) + " dB: float ber=" + fmt(flo.ber()) + ", quantized ber=" +
                    fmt(fix.ber()) + ", ratio=" + fmt(ratio) + " (frame errors " +
                    std::to_string(flo.frame_errors) + "/" + std::to_string(fix.frame_errors) +
                    ")");
}

// 8. Determinism: the Monte Carlo harness produces identical records and
//    byte-identical CSV text for any worker count and across reruns.
void criterion_determinism(Gate& gate) {
    const TannerGraph g = bench_code();
    const StopRule stop{1000000000, 96};
    auto csv_for = [&](int workers) {
        CsvWriter w;
        w.header({"ebno_db", "frames", "bit_errors", "frame_errors", "ber", "fer", "avg_iters"});
        for (double eb : {1.5, 2.0}) {
            const SimRecord r =
                run_monte_carlo(g, make_cfg(Variant::SelfCorrectedMinSum, 50), eb, 9, stop,
                                workers);
            w.row({fmt_double(eb), fmt_long(r.frames), fmt_long(r.bit_errors),
                   fmt_long(r.frame_errors), fmt_double(r.ber()), fmt_double(r.fer()),
                   fmt_double(r.avg_iterations)});
        }
        return w.str();
    };
    const std::string w1 = csv_for(1);
    const std::string w4 = csv_for(4);
    const std::string w7 = csv_for(7);
    const std::string w4b = csv_for(4);
    const bool ok = w1 == w4 && w4 == w7 && w4 == w4b;
    gate.report(8, "worker-count determinism", ok,
                ok ? "identical CSV bytes for workers 1/4/7 and rerun"
                   : "CSV bytes differ between worker counts");
}

}  // namespace

int main() {
    Gate gate;
    criterion_tree(gate);
    criterion_ordering(gate);
    criterion_sign_dynamics(gate);
    criterion_gaussianity(gate);
    criterion_density_evolution(gate);
    criterion_scale_equivariance(gate);
    criterion_fixed_point(gate);
    criterion_determinism(gate);
    std::printf("%d/8 criteria passed\n", 8 - gate.failures);
    return gate.failures == 0 ? 0 : 1;
}
