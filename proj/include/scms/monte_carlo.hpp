#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "scms/channel.hpp"
#include "scms/decoder.hpp"
#include "scms/tanner_graph.hpp"

namespace scms {

struct StopRule {
    long min_frame_errors = 100;
    long max_frames = 1000000;
};

struct SimRecord {
    double ebno_db = 0.0;
    long frames = 0;
    long bit_errors = 0;    // over information positions (first n-m variables)
    long frame_errors = 0;  // any wrong bit in the block
    double avg_iterations = 0.0;
    std::uint64_t seed = 0;

    long info_bits = 0;  // per frame
    double ber() const { return frames ? static_cast<double>(bit_errors) / (frames * info_bits) : 0.0; }
    double fer() const { return frames ? static_cast<double>(frame_errors) / frames : 0.0; }
};

// All-zero-codeword Monte Carlo at one operating point.  Frames are decoded in
// fixed-size batches; the stop rule is evaluated only at batch boundaries and
// frame llrs depend only on (seed, frame index), so results are identical for
// any worker count.  Each worker owns a decoder; slots aggregate in frame
// order.
inline SimRecord run_monte_carlo(const TannerGraph& g, const DecoderConfig& cfg, double ebno_db,
                                 std::uint64_t seed, const StopRule& stop, int workers = 1,
                                 Modulation modulation = Modulation::Bpsk) {
    if (stop.min_frame_errors < 1 && stop.max_frames < 1)
        throw std::invalid_argument("monte carlo: vacuous stop rule");
    const int n = g.num_variables();
    const long info_bits = n - g.num_checks() > 0 ? n - g.num_checks() : n;
    const double rate = static_cast<double>(n - g.num_checks()) / n;
    if (!(rate > 0.0)) throw std::invalid_argument("monte carlo: code rate <= 0");
    const ChannelSpec spec{ebno_to_sigma(ebno_db, rate), modulation};

    constexpr long kBatch = 32;  // fixed: part of the reproducible stream layout
    if (workers < 1) workers = 1;

    struct Slot {
        long bit_errors = 0;
        int frame_error = 0;
        int iterations = 0;
    };

    SimRecord rec;
    rec.ebno_db = ebno_db;
    rec.seed = seed;
    rec.info_bits = info_bits;
    long total_iters = 0;

    std::vector<Slot> slots(kBatch);
    long next_frame = 0;
    while (true) {
        if (stop.max_frames >= 1 && next_frame >= stop.max_frames) break;
        if (stop.min_frame_errors >= 1 && rec.frame_errors >= stop.min_frame_errors) break;
        long batch = kBatch;
        if (stop.max_frames >= 1 && next_frame + batch > stop.max_frames)
            batch = stop.max_frames - next_frame;

        std::atomic<long> cursor{0};
        auto work = [&](int /*worker id*/) {
            Decoder dec(g, cfg);
            std::vector<double> gamma(n);
            for (;;) {
                const long slot = cursor.fetch_add(1);
                if (slot >= batch) break;
                const long frame = next_frame + slot;
                all_zero_llrs(n, spec, seed, static_cast<std::uint64_t>(frame), gamma);
                const DecodeResult res = dec.decode(gamma);
                Slot s;
                for (long i = 0; i < info_bits; ++i) s.bit_errors += res.bits[i];
                for (int i = 0; i < n; ++i)
                    if (res.bits[i]) {
                        s.frame_error = 1;
                        break;
                    }
                s.iterations = res.iterations;
                slots[slot] = s;
            }
        };
        const int nw = static_cast<int>(workers > batch ? batch : workers);
        if (nw <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(nw);
            for (int w = 0; w < nw; ++w) pool.emplace_back(work, w);
            for (auto& th : pool) th.join();
        }
        for (long slot = 0; slot < batch; ++slot) {
            rec.frames += 1;
            rec.bit_errors += slots[slot].bit_errors;
            rec.frame_errors += slots[slot].frame_error;
            total_iters += slots[slot].iterations;
        }
        next_frame += batch;
    }
    rec.avg_iterations = rec.frames ? static_cast<double>(total_iters) / rec.frames : 0.0;
    return rec;
}

enum class FrameSelector { All, Failed, Successful };

inline FrameSelector parse_frame_selector(const std::string& s) {
    if (s == "all") return FrameSelector::All;
    if (s == "failed") return FrameSelector::Failed;
    if (s == "successful") return FrameSelector::Successful;
    throw std::invalid_argument("selector: expected all|failed|successful, got '" + s + "'");
}

// How frames combine: PerFrame averages each frame's fraction (every selected
// frame weighs equally); Pooled divides total changes by total messages.  The
// two coincide here because all frames share one edge count, but both are kept
// as the natural readings of an averaged percentage-per-iteration curve.
enum class Pooling { PerFrame, Pooled };

struct IterStatsSeries {
    std::vector<double> sign_change_fraction;  // averaged per iteration
    std::vector<double> erasure_fraction;
    long frames_selected = 0;
    long frames_total = 0;
};

// Per-iteration sign-change and erasure fractions, averaged over frames that
// match the selector.  Frames always run the full iteration budget (early
// stopping off) so every iteration has the same sample count; classification
// uses the final syndrome state.
inline IterStatsSeries sign_change_stats(const TannerGraph& g, DecoderConfig cfg, double ebno_db,
                                         long frames, FrameSelector selector, std::uint64_t seed,
                                         Modulation modulation = Modulation::Bpsk,
                                         Pooling pooling = Pooling::PerFrame) {
    cfg.early_stop = false;
    if (cfg.trace == TraceLevel::None) cfg.trace = TraceLevel::Stats;
    const int n = g.num_variables();
    const double rate = static_cast<double>(n - g.num_checks()) / n;
    if (!(rate > 0.0)) throw std::invalid_argument("sign stats: code rate <= 0");
    const ChannelSpec spec{ebno_to_sigma(ebno_db, rate), modulation};

    IterStatsSeries out;
    out.sign_change_fraction.assign(cfg.max_iter, 0.0);
    out.erasure_fraction.assign(cfg.max_iter, 0.0);
    Decoder dec(g, cfg);
    std::vector<double> gamma(n);
    for (long f = 0; f < frames; ++f) {
        all_zero_llrs(n, spec, seed, static_cast<std::uint64_t>(f), gamma);
        const DecodeResult res = dec.decode(gamma);
        ++out.frames_total;
        const bool take = selector == FrameSelector::All ||
                          (selector == FrameSelector::Failed && !res.converged) ||
                          (selector == FrameSelector::Successful && res.converged);
        if (!take) continue;
        ++out.frames_selected;
        for (int it = 0; it < cfg.max_iter; ++it) {
            out.sign_change_fraction[it] += res.iter_stats[it].sign_change_fraction;
            out.erasure_fraction[it] += res.iter_stats[it].erasure_fraction;
        }
    }
    if (out.frames_selected == 0)
        throw std::runtime_error("sign stats: no frames match selector (" +
                                 std::to_string(out.frames_total) + " frames run)");
    // PerFrame and Pooled normalize identically for a fixed code: every frame
    // contributes the same number of messages per iteration.
    (void)pooling;
    for (int it = 0; it < cfg.max_iter; ++it) {
        out.sign_change_fraction[it] /= out.frames_selected;
        out.erasure_fraction[it] /= out.frames_selected;
    }
    return out;
}

enum class MessageKind { Check, Variable };

inline MessageKind parse_message_kind(const std::string& s) {
    if (s == "check") return MessageKind::Check;
    if (s == "variable") return MessageKind::Variable;
    throw std::invalid_argument("message kind: expected check|variable, got '" + s + "'");
}

struct HistogramOptions {
    long frames = 100;
    int iteration = 1;       // 1-based; iteration 0 = channel LLRs (variable kind only)
    MessageKind kind = MessageKind::Check;
    bool unerased_only = false;
    int bins = 80;
    std::uint64_t seed = 0;
};

struct MessageHistogram {
    std::vector<double> bin_lo, bin_hi;
    std::vector<long> counts;
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance
    long samples = 0;
};

// Pooled empirical distribution of messages at one iteration across frames.
// Only frames still decoding at that iteration contribute: a frame whose
// syndrome check passes earlier stops exchanging messages, so it has nothing
// to pool.  (Pooling saturated post-convergence messages would swamp the
// statistics of the frames the iteration actually matters for.)
inline MessageHistogram message_histogram(const TannerGraph& g, DecoderConfig cfg, double ebno_db,
                                          const HistogramOptions& opts,
                                          Modulation modulation = Modulation::Bpsk) {
    if (opts.iteration < 0) throw std::invalid_argument("histogram: negative iteration");
    if (opts.iteration == 0 && opts.kind == MessageKind::Check)
        throw std::invalid_argument("histogram: iteration 0 has no check messages");
    if (opts.bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
    cfg.early_stop = true;
    cfg.trace = TraceLevel::Full;
    cfg.max_iter = opts.iteration > 0 ? opts.iteration : 1;
    const int n = g.num_variables();
    const double rate = static_cast<double>(n - g.num_checks()) / n;
    if (!(rate > 0.0)) throw std::invalid_argument("histogram: code rate <= 0");
    const ChannelSpec spec{ebno_to_sigma(ebno_db, rate), modulation};

    std::vector<double> values;
    Decoder dec(g, cfg);
    std::vector<double> gamma(n);
    for (long f = 0; f < opts.frames; ++f) {
        all_zero_llrs(n, spec, opts.seed, static_cast<std::uint64_t>(f), gamma);
        if (opts.iteration == 0) {
            const DecodeResult res = dec.decode(gamma);  // just for quantized gamma
            for (double v : res.gamma_used)
                if (!opts.unerased_only || v != 0.0) values.push_back(v);
            continue;
        }
        const DecodeResult res = dec.decode(gamma);
        if (res.iterations < opts.iteration) continue;  // converged before the sampling point
        const auto& trace = opts.kind == MessageKind::Check ? res.beta_trace : res.alpha_trace;
        const auto& msgs = trace[opts.iteration - 1];
        for (double v : msgs)
            if (!opts.unerased_only || v != 0.0) values.push_back(v);
    }

    MessageHistogram h;
    h.samples = static_cast<long>(values.size());
    if (values.empty()) return h;
    double lo = values[0], hi = values[0], sum = 0.0;
    for (double v : values) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
        sum += v;
    }
    h.mean = sum / h.samples;
    double ss = 0.0;
    for (double v : values) ss += (v - h.mean) * (v - h.mean);
    h.variance = h.samples > 1 ? ss / (h.samples - 1) : 0.0;

    if (hi == lo) hi = lo + 1.0;  // single-point distribution: one wide bin
    const double width = (hi - lo) / opts.bins;
    h.bin_lo.resize(opts.bins);
    h.bin_hi.resize(opts.bins);
    h.counts.assign(opts.bins, 0);
    for (int b = 0; b < opts.bins; ++b) {
        h.bin_lo[b] = lo + b * width;
        h.bin_hi[b] = lo + (b + 1) * width;
    }
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        if (b >= opts.bins) b = opts.bins - 1;
        if (b < 0) b = 0;
        ++h.counts[b];
    }
    return h;
}

}  // namespace scms
