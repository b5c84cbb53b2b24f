#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "scms/csv.hpp"
#include "scms/graph_sample.hpp"
#include "scms/monte_carlo.hpp"

using namespace scms;

namespace {

TannerGraph bench_code() {
    return sample_irregular(DegreeDistribution::regular(3, 6), 96, 1);
}

DecoderConfig scms_cfg(int max_iter = 50) {
    DecoderConfig cfg;
    cfg.variant = Variant::SelfCorrectedMinSum;
    cfg.max_iter = max_iter;
    return cfg;
}

}  // namespace

TEST_CASE("monte carlo results are worker-count independent", "[mc]") {
    const TannerGraph g = bench_code();
    StopRule stop;
    stop.min_frame_errors = 10000;  // effectively: run max_frames
    stop.max_frames = 320;
    const SimRecord a = run_monte_carlo(g, scms_cfg(), 1.5, 9, stop, 1);
    const SimRecord b = run_monte_carlo(g, scms_cfg(), 1.5, 9, stop, 4);
    const SimRecord c = run_monte_carlo(g, scms_cfg(), 1.5, 9, stop, 7);
    CHECK(a.frames == b.frames);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.frame_errors == b.frame_errors);
    CHECK(a.avg_iterations == b.avg_iterations);
    CHECK(a.bit_errors == c.bit_errors);
    CHECK(a.frame_errors == c.frame_errors);
    CHECK(a.avg_iterations == c.avg_iterations);
}

TEST_CASE("monte carlo honors the frame cap exactly", "[mc]") {
    const TannerGraph g = bench_code();
    StopRule stop;
    stop.min_frame_errors = 1000000;
    stop.max_frames = 50;  // not a batch multiple
    const SimRecord rec = run_monte_carlo(g, scms_cfg(), 2.0, 3, stop);
    CHECK(rec.frames == 50);
    CHECK(rec.info_bits == 48);
}

TEST_CASE("monte carlo stops on frame errors at batch boundaries", "[mc]") {
    const TannerGraph g = bench_code();
    StopRule stop;
    stop.min_frame_errors = 5;
    stop.max_frames = 100000;
    const SimRecord rec = run_monte_carlo(g, scms_cfg(30), 0.0, 3, stop);
    CHECK(rec.frame_errors >= 5);
    CHECK(rec.frames % 32 == 0);  // whole batches only
    CHECK(rec.fer() <= 1.0);
    CHECK(rec.ber() <= 1.0);
    // any erroneous info bit implies an erroneous frame
    CHECK(rec.fer() >= rec.ber());
}

TEST_CASE("noiseless operating point decodes everything first try", "[mc]") {
    const TannerGraph g = bench_code();
    StopRule stop;
    stop.min_frame_errors = 100;
    stop.max_frames = 100;
    const SimRecord rec = run_monte_carlo(g, scms_cfg(), 20.0, 0, stop);
    CHECK(rec.frames == 100);
    CHECK(rec.bit_errors == 0);
    CHECK(rec.frame_errors == 0);
    CHECK(rec.avg_iterations == 1.0);
}

TEST_CASE("monte carlo rejects a vacuous stop rule", "[mc]") {
    const TannerGraph g = bench_code();
    StopRule stop;
    stop.min_frame_errors = 0;
    stop.max_frames = 0;
    CHECK_THROWS_AS(run_monte_carlo(g, scms_cfg(), 2.0, 0, stop), std::invalid_argument);
}

TEST_CASE("sign-change statistics: selectors partition the frames", "[stats]") {
    const TannerGraph g = bench_code();
    const DecoderConfig cfg = scms_cfg(20);
    const IterStatsSeries all = sign_change_stats(g, cfg, 1.2, 200, FrameSelector::All, 5);
    CHECK(all.frames_total == 200);
    CHECK(all.frames_selected == 200);

    long failed = 0, successful = 0;
    try {
        failed = sign_change_stats(g, cfg, 1.2, 200, FrameSelector::Failed, 5).frames_selected;
    } catch (const std::runtime_error&) {
    }
    try {
        successful =
            sign_change_stats(g, cfg, 1.2, 200, FrameSelector::Successful, 5).frames_selected;
    } catch (const std::runtime_error&) {
    }
    CHECK(failed + successful == 200);

    for (double f : all.sign_change_fraction) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("sign-change statistics: noiseless frames never flip", "[stats]") {
    const TannerGraph g = bench_code();
    const IterStatsSeries st =
        sign_change_stats(g, scms_cfg(10), 20.0, 20, FrameSelector::All, 0);
    for (double f : st.sign_change_fraction) CHECK(f == 0.0);
    for (double f : st.erasure_fraction) CHECK(f == 0.0);
}

TEST_CASE("sign-change statistics: successful frames settle to zero", "[stats]") {
    const TannerGraph g = bench_code();
    const IterStatsSeries st =
        sign_change_stats(g, scms_cfg(30), 4.0, 100, FrameSelector::Successful, 2);
    CHECK(st.frames_selected > 0);
    CHECK(st.sign_change_fraction.back() == 0.0);
    CHECK(st.erasure_fraction.back() == 0.0);
}

TEST_CASE("sign-change statistics: empty selection is an error", "[stats]") {
    const TannerGraph g = bench_code();
    CHECK_THROWS_AS(sign_change_stats(g, scms_cfg(10), 20.0, 20, FrameSelector::Failed, 0),
                    std::runtime_error);
}

TEST_CASE("first-iteration statistics agree between plain and self-corrected", "[stats]") {
    const TannerGraph g = bench_code();
    DecoderConfig ms = scms_cfg(15);
    ms.variant = Variant::MinSum;
    const IterStatsSeries a = sign_change_stats(g, ms, 1.0, 150, FrameSelector::All, 11);
    const IterStatsSeries b = sign_change_stats(g, scms_cfg(15), 1.0, 150, FrameSelector::All, 11);
    CHECK(a.sign_change_fraction[0] == b.sign_change_fraction[0]);
    for (double e : a.erasure_fraction) CHECK(e == 0.0);  // plain min-sum never erases
    // the self-corrected decoder does erase under noise
    double peak = 0.0;
    for (double e : b.erasure_fraction) peak = std::max(peak, e);
    CHECK(peak > 0.0);
}

TEST_CASE("histogram of channel llrs is consistent-Gaussian", "[hist]") {
    const TannerGraph g = sample_irregular(DegreeDistribution::regular(3, 6), 1002, 6);
    HistogramOptions opts;
    opts.frames = 1000;  // 1002000 samples
    opts.iteration = 0;
    opts.kind = MessageKind::Variable;
    opts.seed = 13;
    const MessageHistogram h = message_histogram(g, scms_cfg(1), 0.0, opts);  // sigma = 1
    CHECK(h.samples == 1002000);
    long total = 0;
    for (long c : h.counts) total += c;
    CHECK(total == h.samples);
    CHECK(h.mean == Catch::Approx(2.0).margin(0.02));
    CHECK(h.variance / (2.0 * h.mean) == Catch::Approx(1.0).margin(0.02));
}

TEST_CASE("unerased histogram drops exactly the zero messages", "[hist]") {
    const TannerGraph g = bench_code();
    HistogramOptions opts;
    opts.frames = 50;
    opts.iteration = 5;
    opts.kind = MessageKind::Check;
    opts.seed = 4;
    const MessageHistogram all = message_histogram(g, scms_cfg(5), 1.5, opts);
    opts.unerased_only = true;
    const MessageHistogram unerased = message_histogram(g, scms_cfg(5), 1.5, opts);
    // Frames that converge before iteration 5 exchange no messages there, so
    // the pool is a whole number of edge sets from the still-active frames.
    CHECK(all.samples % g.edge_count() == 0);
    CHECK(all.samples > 0);
    CHECK(all.samples <= 50L * g.edge_count());
    CHECK(unerased.samples < all.samples);  // erasures exist at this noise level
    CHECK(unerased.samples > 0);
    long total = 0;
    for (long c : unerased.counts) total += c;
    CHECK(total == unerased.samples);
}

TEST_CASE("histogram option validation and empty population", "[hist]") {
    const TannerGraph g = bench_code();
    HistogramOptions opts;
    opts.iteration = 0;
    opts.kind = MessageKind::Check;
    CHECK_THROWS_AS(message_histogram(g, scms_cfg(5), 1.5, opts), std::invalid_argument);
    opts = {};
    opts.bins = 0;
    CHECK_THROWS_AS(message_histogram(g, scms_cfg(5), 1.5, opts), std::invalid_argument);
    opts = {};
    opts.frames = 0;  // nothing sampled: explicit empty result
    const MessageHistogram h = message_histogram(g, scms_cfg(5), 1.5, opts);
    CHECK(h.samples == 0);
    CHECK(h.counts.empty());
}

TEST_CASE("parser helpers for harness enums", "[stats]") {
    CHECK(parse_frame_selector("all") == FrameSelector::All);
    CHECK(parse_frame_selector("failed") == FrameSelector::Failed);
    CHECK(parse_frame_selector("successful") == FrameSelector::Successful);
    CHECK_THROWS_AS(parse_frame_selector("bad"), std::invalid_argument);
    CHECK(parse_message_kind("check") == MessageKind::Check);
    CHECK(parse_message_kind("variable") == MessageKind::Variable);
    CHECK_THROWS_AS(parse_message_kind("app"), std::invalid_argument);
}

TEST_CASE("csv formatting is shortest-round-trip and stable", "[csv]") {
    CHECK(fmt_double(0.1) == "0.1");
    CHECK(fmt_double(2.0) == "2");
    CHECK(fmt_double(-0.25) == "-0.25");
    const double third = 1.0 / 3.0;
    double back = 0.0;
    std::sscanf(fmt_double(third).c_str(), "%lf", &back);
    CHECK(back == third);
    CHECK(fmt_long(-42) == "-42");
}

TEST_CASE("csv writer layout", "[csv]") {
    CsvWriter w;
    w.comment("config: demo");
    w.header({"a", "b"});
    w.row({"1", "2"});
    w.row({"3", "4"});
    CHECK(w.str() == "# config: demo\na,b\n1,2\n3,4\n");
    CHECK_THROWS_AS(w.row({"only-one"}), std::invalid_argument);
}
