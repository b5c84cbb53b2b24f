// scms — command-line front end for the LDPC decoding toolkit.
//
// Subcommands:
//   sim        BER/FER Monte Carlo over an Eb/N0 grid
//   signstats  per-iteration sign-change / erasure fractions
//   hist       empirical message distribution at one iteration
//   threshold  density-evolution threshold search for an ensemble
//   detraj     density-evolution trajectory at a fixed sigma
//   treecheck  computation-tree equivalence check (self-corrected vs pruned)
//
// Every CSV starts with a "# config: ..." comment echoing the resolved
// options, so an output file identifies the run that produced it.  Outputs
// are deterministic functions of the options and seed; the worker count
// never affects file contents.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scms/alist.hpp"
#include "scms/channel.hpp"
#include "scms/computation_tree.hpp"
#include "scms/csv.hpp"
#include "scms/decoder.hpp"
#include "scms/degree_distribution.hpp"
#include "scms/density_evolution.hpp"
#include "scms/graph_sample.hpp"
#include "scms/monte_carlo.hpp"
#include "scms/qc.hpp"
#include "scms/quant.hpp"
#include "scms/rng.hpp"
#include "scms/tanner_graph.hpp"

namespace {

using namespace scms;

std::string no_commas(std::string s) {
    for (char& c : s)
        if (c == ',') c = ';';
    return s;
}

// Eb/N0 grid "start:step:stop" (inclusive) or a single value.
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::size_t from = 0;
    while (true) {
        const auto colon = spec.find(':', from);
        parts.push_back(spec.substr(from, colon - from));
        if (colon == std::string::npos) break;
        from = colon + 1;
    }
    auto num = [](const std::string& s) {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("ebno: bad number '" + s + "'");
        return v;
    };
    if (parts.size() == 1) return {num(parts[0])};
    if (parts.size() != 3)
        throw std::invalid_argument("ebno: expected 'value' or 'start:step:stop', got '" + spec +
                                    "'");
    const double start = num(parts[0]), step = num(parts[1]), stop = num(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("ebno: step must be positive");
    if (stop < start) throw std::invalid_argument("ebno: stop below start");
    std::vector<double> grid;
    const long count = static_cast<long>((stop - start) / step + 1e-9) + 1;
    for (long k = 0; k < count; ++k) grid.push_back(start + k * step);
    return grid;
}

std::optional<QuantSpec> parse_quant(const std::string& s) {
    if (s == "float") return std::nullopt;
    if (s == "fig4") return QuantSpec::fig4();
    throw std::invalid_argument("quant: expected float|fig4, got '" + s + "'");
}

// Exactly one of (alist file | qc file | sampled ensemble).
struct CodeSource {
    std::string alist, qc, ensemble;
    int n = 0;
    std::uint64_t code_seed = 0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--alist", alist, "parity-check matrix, alist format");
        cmd->add_option("--qc", qc, "quasi-cyclic base matrix file");
        cmd->add_option("--ensemble", ensemble,
                        "degree distribution: 'dv,dc' or 'deg:frac,...|deg:frac,...'");
        cmd->add_option("--n", n, "code length for --ensemble");
        cmd->add_option("--code-seed", code_seed, "graph sampling seed (default 0)");
    }

    TannerGraph build() const {
        const int sources = !alist.empty() + !qc.empty() + !ensemble.empty();
        if (sources != 1)
            throw std::invalid_argument(
                "exactly one code source required: --alist, --qc, or --ensemble");
        if (!alist.empty()) return load_alist_file(alist);
        if (!qc.empty()) return expand_qc(load_qc_file(qc));
        if (n < 1) throw std::invalid_argument("--ensemble needs --n >= 1");
        return sample_irregular(DegreeDistribution::parse(ensemble), n, code_seed);
    }

    std::string echo() const {
        if (!alist.empty()) return "--alist " + alist;
        if (!qc.empty()) return "--qc " + qc;
        return "--ensemble " + ensemble + " --n " + std::to_string(n) + " --code-seed " +
               std::to_string(code_seed);
    }

    // comma-free so it can sit in a CSV cell
    std::string describe() const {
        if (!alist.empty()) return "alist=" + no_commas(alist);
        if (!qc.empty()) return "qc=" + no_commas(qc);
        return "ensemble=" + no_commas(ensemble) + ";n=" + std::to_string(n) +
               ";seed=" + std::to_string(code_seed);
    }
};

int resolve_max_iter(int requested, const std::optional<QuantSpec>& quant) {
    if (requested > 0) return requested;
    return quant ? 30 : 200;  // fixed-point runs default to a short budget
}

// ---------------------------------------------------------------- sim

struct SimArgs {
    CodeSource code;
    std::string decoder = "scms", ebno, quant = "float", out = "sim.csv";
    std::uint64_t seed = 0;
    int max_iter = -1, workers = 1;
    long min_fe = 100, max_frames = 1000000;
};

void run_sim(const SimArgs& a) {
    const TannerGraph g = a.code.build();
    const auto [variant, param] = parse_decoder_spec(a.decoder);
    const std::optional<QuantSpec> quant = parse_quant(a.quant);
    DecoderConfig cfg;
    cfg.variant = variant;
    cfg.param = param;
    cfg.quant = quant;
    cfg.max_iter = resolve_max_iter(a.max_iter, quant);
    const StopRule stop{a.min_fe, a.max_frames};
    const std::vector<double> grid = parse_grid(a.ebno);

    CsvWriter w;
    w.comment("config: sim " + a.code.echo() + " --decoder " + a.decoder + " --ebno " + a.ebno +
              " --seed " + std::to_string(a.seed) + " --max-iter " + std::to_string(cfg.max_iter) +
              " --quant " + a.quant + " --min-fe " + std::to_string(a.min_fe) + " --max-frames " +
              std::to_string(a.max_frames));
    w.header({"ebno_db", "frames", "bit_errors", "frame_errors", "ber", "fer", "avg_iters",
              "decoder", "code", "seed"});
    for (double eb : grid) {
        const SimRecord r = run_monte_carlo(g, cfg, eb, a.seed, stop, a.workers);
        w.row({fmt_double(eb), fmt_long(r.frames), fmt_long(r.bit_errors),
               fmt_long(r.frame_errors), fmt_double(r.ber()), fmt_double(r.fer()),
               fmt_double(r.avg_iterations), decoder_spec_string(variant, param),
               a.code.describe(), std::to_string(a.seed)});
        std::printf("ebno=%g dB: frames=%ld bit_errors=%ld frame_errors=%ld ber=%.3g fer=%.3g "
                    "avg_iters=%.2f\n",
                    eb, r.frames, r.bit_errors, r.frame_errors, r.ber(), r.fer(),
                    r.avg_iterations);
    }
    w.write_file(a.out);
    std::printf("wrote %s\n", a.out.c_str());
}

// ---------------------------------------------------------------- signstats

struct SignStatsArgs {
    CodeSource code;
    std::string decoder = "scms", quant = "float", selector = "all", pooling = "per-frame",
                out = "signstats.csv";
    double ebno = 1.0;
    std::uint64_t seed = 0;
    int max_iter = -1;
    long frames = 1000;
};

void run_signstats(const SignStatsArgs& a) {
    const TannerGraph g = a.code.build();
    const auto [variant, param] = parse_decoder_spec(a.decoder);
    const std::optional<QuantSpec> quant = parse_quant(a.quant);
    DecoderConfig cfg;
    cfg.variant = variant;
    cfg.param = param;
    cfg.quant = quant;
    cfg.max_iter = resolve_max_iter(a.max_iter, quant);
    cfg.trace = TraceLevel::Stats;
    const FrameSelector sel = parse_frame_selector(a.selector);
    Pooling pool;
    if (a.pooling == "per-frame")
        pool = Pooling::PerFrame;
    else if (a.pooling == "pooled")
        pool = Pooling::Pooled;
    else
        throw std::invalid_argument("pooling: expected per-frame|pooled, got '" + a.pooling + "'");

    const IterStatsSeries st = sign_change_stats(g, cfg, a.ebno, a.frames, sel, a.seed,
                                                 Modulation::Bpsk, pool);

    CsvWriter w;
    w.comment("config: signstats " + a.code.echo() + " --decoder " + a.decoder + " --ebno " +
              fmt_double(a.ebno) + " --seed " + std::to_string(a.seed) + " --max-iter " +
              std::to_string(cfg.max_iter) + " --quant " + a.quant + " --frames " +
              std::to_string(a.frames) + " --selector " + a.selector + " --pooling " + a.pooling);
    w.comment("frames_selected: " + std::to_string(st.frames_selected) + " of " +
              std::to_string(st.frames_total));
    w.header({"iteration", "sign_change_fraction", "erasure_fraction"});
    for (std::size_t i = 0; i < st.sign_change_fraction.size(); ++i)
        w.row({fmt_long(static_cast<long>(i) + 1), fmt_double(st.sign_change_fraction[i]),
               fmt_double(st.erasure_fraction[i])});
    w.write_file(a.out);
    std::printf("selected %ld/%ld frames; sign-change fraction iter1=%.4g final=%.4g\n",
                st.frames_selected, st.frames_total, st.sign_change_fraction.front(),
                st.sign_change_fraction.back());
    std::printf("wrote %s\n", a.out.c_str());
}

// ---------------------------------------------------------------- hist

struct HistArgs {
    CodeSource code;
    std::string decoder = "scms", quant = "float", kind = "check", out = "hist.csv";
    double ebno = 1.5;
    std::uint64_t seed = 0;
    int iteration = 1, bins = 80;
    long frames = 100;
    bool include_zeros = false, unerased_only = false;
};

void run_hist(const HistArgs& a) {
    const TannerGraph g = a.code.build();
    const auto [variant, param] = parse_decoder_spec(a.decoder);
    const std::optional<QuantSpec> quant = parse_quant(a.quant);
    DecoderConfig cfg;
    cfg.variant = variant;
    cfg.param = param;
    cfg.quant = quant;
    if (a.include_zeros && a.unerased_only)
        throw std::invalid_argument("choose at most one of --include-zeros / --unerased-only");
    // Self-corrected messages are histogrammed over the unerased population
    // unless zeros are explicitly requested; other decoders produce no zeros.
    const bool unerased = a.unerased_only ||
                          (variant == Variant::SelfCorrectedMinSum && !a.include_zeros);

    HistogramOptions opts;
    opts.frames = a.frames;
    opts.iteration = a.iteration;
    opts.kind = parse_message_kind(a.kind);
    opts.unerased_only = unerased;
    opts.bins = a.bins;
    opts.seed = a.seed;
    const MessageHistogram h = message_histogram(g, cfg, a.ebno, opts);

    CsvWriter w;
    w.comment("config: hist " + a.code.echo() + " --decoder " + a.decoder + " --ebno " +
              fmt_double(a.ebno) + " --seed " + std::to_string(a.seed) + " --iteration " +
              std::to_string(a.iteration) + " --kind " + a.kind + " --frames " +
              std::to_string(a.frames) + " --bins " + std::to_string(a.bins) + " --quant " +
              a.quant + " --population " + (unerased ? "unerased" : "all"));
    w.comment("samples: " + std::to_string(h.samples));
    w.comment("mean: " + fmt_double(h.mean));
    w.comment("variance: " + fmt_double(h.variance));
    w.header({"bin_lo", "bin_hi", "count"});
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        w.row({fmt_double(h.bin_lo[b]), fmt_double(h.bin_hi[b]), fmt_long(h.counts[b])});
    w.write_file(a.out);
    if (h.samples > 0 && h.mean != 0.0)
        std::printf("samples=%ld mean=%.4g variance=%.4g variance/(2*mean)=%.4f\n", h.samples,
                    h.mean, h.variance, h.variance / (2.0 * h.mean));
    else
        std::printf("samples=%ld (empty population)\n", h.samples);
    std::printf("wrote %s\n", a.out.c_str());
}

// ---------------------------------------------------------------- threshold / detraj

struct DeArgs {
    std::string ensemble, recurrence = "ms", out;
    double sigma = 0.0;  // detraj only
    double tol = 1e-3, sigma_lo = 0.3, sigma_hi = 1.5;
    int iter_cap = 10000;
    double conv_tol = 1e-9;
    bool condition_unerased = false, literal_display = false;
};

void write_trajectory(CsvWriter& w, const std::vector<TrajectoryRow>& rows) {
    w.header({"iteration", "P", "E", "Pe", "R", "F", "m_beta"});
    for (const TrajectoryRow& r : rows)
        w.row({fmt_long(r.iteration), fmt_double(r.p), fmt_double(r.e), fmt_double(r.pe),
               fmt_double(r.r), fmt_double(r.f), fmt_double(r.mean_beta)});
}

void run_threshold(const DeArgs& a) {
    const DegreeDistribution dist = DegreeDistribution::parse(a.ensemble);
    const Recurrence rec = parse_recurrence(a.recurrence);
    ThresholdOptions opts;
    opts.sigma_lo = a.sigma_lo;
    opts.sigma_hi = a.sigma_hi;
    opts.tol = a.tol;
    opts.de = DeOptions{a.iter_cap, a.conv_tol};
    opts.condition_on_unerased = a.condition_unerased;
    opts.form = a.literal_display ? DisplayForm::Literal : DisplayForm::Corrected;

    bool found = true;
    std::string note;
    double sigma_star = a.sigma_hi;
    try {
        sigma_star = threshold_search(dist, rec, opts);
    } catch (const BracketError& e) {
        found = false;
        note = e.what();
    }
    // trajectory at the threshold when found, else at the top of the range
    DeParams p{dist, sigma_star, opts.condition_on_unerased, opts.form};
    const std::vector<TrajectoryRow> rows = de_trajectory(p, rec, opts.de);

    const std::string out = a.out.empty() ? "threshold.csv" : a.out;
    CsvWriter w;
    w.comment("config: threshold --ensemble " + a.ensemble + " --recurrence " + a.recurrence +
              " --tol " + fmt_double(a.tol) + " --sigma-lo " + fmt_double(a.sigma_lo) +
              " --sigma-hi " + fmt_double(a.sigma_hi) + " --iter-cap " +
              std::to_string(a.iter_cap) + " --conv-tol " + fmt_double(a.conv_tol) +
              " --display " + (a.literal_display ? "literal" : "corrected") +
              (a.condition_unerased ? " --condition-unerased" : ""));
    if (found)
        w.comment("sigma_star: " + fmt_double(sigma_star));
    else
        w.comment("no threshold: " + note);
    w.comment("trajectory at sigma = " + fmt_double(sigma_star));
    write_trajectory(w, rows);
    w.write_file(out);
    if (found)
        std::printf("sigma* = %s (ensemble %s, recurrence %s)\n", fmt_double(sigma_star).c_str(),
                    a.ensemble.c_str(), a.recurrence.c_str());
    else
        std::printf("%s\n", note.c_str());
    std::printf("wrote %s\n", out.c_str());
}

void run_detraj(const DeArgs& a) {
    const DegreeDistribution dist = DegreeDistribution::parse(a.ensemble);
    const Recurrence rec = parse_recurrence(a.recurrence);
    if (!(a.sigma > 0.0)) throw std::invalid_argument("detraj: --sigma must be positive");
    DeParams p{dist, a.sigma, a.condition_unerased,
               a.literal_display ? DisplayForm::Literal : DisplayForm::Corrected};
    const DeOptions opts{a.iter_cap, a.conv_tol};
    const std::vector<TrajectoryRow> rows = de_trajectory(p, rec, opts);

    const std::string out = a.out.empty() ? "detraj.csv" : a.out;
    CsvWriter w;
    w.comment("config: detraj --ensemble " + a.ensemble + " --recurrence " + a.recurrence +
              " --sigma " + fmt_double(a.sigma) + " --iter-cap " + std::to_string(a.iter_cap) +
              " --conv-tol " + fmt_double(a.conv_tol) + " --display " +
              (a.literal_display ? "literal" : "corrected") +
              (a.condition_unerased ? " --condition-unerased" : ""));
    write_trajectory(w, rows);
    w.write_file(out);
    const TrajectoryRow& last = rows.back();
    std::printf("sigma=%s: Pe=%.6g after %d iterations (%s)\n", fmt_double(a.sigma).c_str(),
                last.pe, last.iteration,
                last.pe < a.conv_tol ? "converged" : "not converged");
    std::printf("wrote %s\n", out.c_str());
}

// ---------------------------------------------------------------- treecheck

struct TreeArgs {
    int depth = 4, max_nodes = 60;
    long trials = 1000;
    std::uint64_t seed = 0;
    double mean_llr = 2.0;
    std::string out;
};

void run_treecheck(const TreeArgs& a) {
    if (a.trials < 1) throw std::invalid_argument("treecheck: --trials must be >= 1");
    Rng rng(a.seed);
    long matches = 0;
    CsvWriter w;
    w.comment("config: treecheck --depth " + std::to_string(a.depth) + " --max-nodes " +
              std::to_string(a.max_nodes) + " --trials " + std::to_string(a.trials) + " --seed " +
              std::to_string(a.seed) + " --mean-llr " + fmt_double(a.mean_llr));
    w.header({"trial", "nodes", "depth", "root_self_corrected", "root_ms_pruned", "match"});
    for (long t = 0; t < a.trials; ++t) {
        const ComputationTree tree = random_tree(a.depth, a.max_nodes, a.mean_llr, rng);
        const TreeDecode sc = tree_decode(tree, Variant::SelfCorrectedMinSum);
        const ComputationTree pruned = prune_erased(tree, sc);
        const TreeDecode ms = tree_decode(pruned, Variant::MinSum, tree.depth);
        const bool match = ms.root_value == sc.root_value;  // bit-exact, no tolerance
        matches += match;
        w.row({fmt_long(t), fmt_long(static_cast<long>(tree.size())),
               fmt_long(tree.depth), fmt_double(sc.root_value), fmt_double(ms.root_value),
               fmt_long(match)});
    }
    std::printf("%ld/%ld exact matches\n", matches, a.trials);
    if (!a.out.empty()) {
        w.write_file(a.out);
        std::printf("wrote %s\n", a.out.c_str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LDPC iterative-decoding toolkit: min-sum family decoders, "
                 "self-correction diagnostics, and density evolution"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI file with one [subcommand] section of key=value options; "
                   "the section selects the subcommand");

    SimArgs sim;
    auto* c_sim = app.add_subcommand("sim", "BER/FER Monte Carlo over an Eb/N0 grid");
    sim.code.add_flags(c_sim);
    c_sim->add_option("--decoder", sim.decoder, "sp|ms|scms|nms:scale|oms:offset");
    c_sim->add_option("--ebno", sim.ebno, "Eb/N0 grid in dB: start:step:stop or one value")
        ->required();
    c_sim->add_option("--seed", sim.seed, "channel noise seed");
    c_sim->add_option("--max-iter", sim.max_iter, "iteration budget (default 200, 30 quantized)");
    c_sim->add_option("--quant", sim.quant, "float | fig4 (step 0.25, msg [-8,8), app [-32,32))");
    c_sim->add_option("--min-fe", sim.min_fe, "stop after this many frame errors");
    c_sim->add_option("--max-frames", sim.max_frames, "hard frame cap per grid point");
    c_sim->add_option("--workers", sim.workers, "worker threads (never changes results)");
    c_sim->add_option("-o,--output", sim.out, "output CSV path");
    c_sim->callback([&sim] { run_sim(sim); });

    SignStatsArgs ss;
    auto* c_ss = app.add_subcommand("signstats", "sign-change / erasure fractions per iteration");
    ss.code.add_flags(c_ss);
    c_ss->add_option("--decoder", ss.decoder, "sp|ms|scms|nms:scale|oms:offset");
    c_ss->add_option("--ebno", ss.ebno, "Eb/N0 in dB")->required();
    c_ss->add_option("--seed", ss.seed, "channel noise seed");
    c_ss->add_option("--max-iter", ss.max_iter, "iteration budget (default 200, 30 quantized)");
    c_ss->add_option("--quant", ss.quant, "float | fig4");
    c_ss->add_option("--frames", ss.frames, "frames to average over");
    c_ss->add_option("--selector", ss.selector, "all|failed|successful");
    c_ss->add_option("--pooling", ss.pooling, "per-frame|pooled");
    c_ss->add_option("-o,--output", ss.out, "output CSV path");
    c_ss->callback([&ss] { run_signstats(ss); });

    HistArgs hist;
    auto* c_hist = app.add_subcommand("hist", "message histogram at one iteration");
    hist.code.add_flags(c_hist);
    c_hist->add_option("--decoder", hist.decoder, "sp|ms|scms|nms:scale|oms:offset");
    c_hist->add_option("--ebno", hist.ebno, "Eb/N0 in dB")->required();
    c_hist->add_option("--seed", hist.seed, "channel noise seed");
    c_hist->add_option("--iteration", hist.iteration,
                       "iteration to sample (0 = channel LLRs, variable kind only)");
    c_hist->add_option("--kind", hist.kind, "check|variable");
    c_hist->add_option("--frames", hist.frames, "frames to pool");
    c_hist->add_option("--bins", hist.bins, "histogram bins");
    c_hist->add_option("--quant", hist.quant, "float | fig4");
    c_hist->add_flag("--include-zeros", hist.include_zeros,
                     "keep erased (zero) messages in the population");
    c_hist->add_flag("--unerased-only", hist.unerased_only,
                     "drop zero messages even for non-self-corrected decoders");
    c_hist->add_option("-o,--output", hist.out, "output CSV path");
    c_hist->callback([&hist] { run_hist(hist); });

    DeArgs thr;
    auto* c_thr = app.add_subcommand("threshold", "density-evolution threshold search");
    c_thr->add_option("--ensemble", thr.ensemble, "'dv,dc' or 'lambda|rho' spec")->required();
    c_thr->add_option("--recurrence", thr.recurrence,
                      "ms|theorem1 (plain min-sum) or scms|theorem2 (self-corrected)");
    c_thr->add_option("--tol", thr.tol, "bisection width on sigma");
    c_thr->add_option("--sigma-lo", thr.sigma_lo, "search bracket, lower");
    c_thr->add_option("--sigma-hi", thr.sigma_hi, "search bracket, upper");
    c_thr->add_option("--iter-cap", thr.iter_cap, "recurrence iteration cap");
    c_thr->add_option("--conv-tol", thr.conv_tol, "error probability counted as converged");
    c_thr->add_flag("--condition-unerased", thr.condition_unerased,
                    "fit the check Gaussian to the unerased population");
    c_thr->add_flag("--literal-display", thr.literal_display,
                    "evaluate the compact-display recurrence (unsquared check quantile)");
    c_thr->add_option("-o,--output", thr.out, "output CSV path (default threshold.csv)");
    c_thr->callback([&thr] { run_threshold(thr); });

    DeArgs traj;
    auto* c_traj = app.add_subcommand("detraj", "density-evolution trajectory at fixed sigma");
    c_traj->add_option("--ensemble", traj.ensemble, "'dv,dc' or 'lambda|rho' spec")->required();
    c_traj->add_option("--recurrence", traj.recurrence, "ms|theorem1 or scms|theorem2");
    c_traj->add_option("--sigma", traj.sigma, "channel noise deviation")->required();
    c_traj->add_option("--iter-cap", traj.iter_cap, "recurrence iteration cap");
    c_traj->add_option("--conv-tol", traj.conv_tol, "error probability counted as converged");
    c_traj->add_flag("--condition-unerased", traj.condition_unerased,
                     "fit the check Gaussian to the unerased population");
    c_traj->add_flag("--literal-display", traj.literal_display,
                     "evaluate the compact-display recurrence (unsquared check quantile)");
    c_traj->add_option("-o,--output", traj.out, "output CSV path (default detraj.csv)");
    c_traj->callback([&traj] { run_detraj(traj); });

    TreeArgs tree;
    auto* c_tree = app.add_subcommand(
        "treecheck", "verify self-corrected output = min-sum on the pruned computation tree");
    c_tree->add_option("--depth", tree.depth, "maximum tree depth");
    c_tree->add_option("--max-nodes", tree.max_nodes, "node budget per tree");
    c_tree->add_option("--trials", tree.trials, "number of random trees");
    c_tree->add_option("--seed", tree.seed, "tree and leaf-LLR seed");
    c_tree->add_option("--mean-llr", tree.mean_llr,
                       "leaf LLR mean (variance is twice the mean)");
    c_tree->add_option("-o,--output", tree.out, "optional per-trial CSV");
    c_tree->callback([&tree] { run_treecheck(tree); });

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->configurable();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
