#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scms/degree_distribution.hpp"
#include "scms/rng.hpp"
#include "scms/tanner_graph.hpp"

namespace scms {

struct SampleStats {
    std::vector<long> var_node_counts;   // index = degree
    std::vector<long> chk_node_counts;
    long parallel_edge_swaps = 0;
    long four_cycle_swaps = 0;
    long residual_four_cycles = 0;      // unordered variable pairs still sharing >= 2 checks
};

struct SampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Largest-remainder apportionment of `total` items to weights w (sum ~ 1).
inline std::vector<long> largest_remainder(const std::vector<double>& w, long total) {
    const std::size_t k = w.size();
    std::vector<long> out(k, 0);
    std::vector<std::pair<double, std::size_t>> rem;
    long assigned = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double exact = w[i] * static_cast<double>(total);
        out[i] = static_cast<long>(std::floor(exact));
        assigned += out[i];
        rem.emplace_back(exact - std::floor(exact), i);
    }
    // stable order: larger remainder first, ties by lower index
    std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });
    for (long r = total - assigned, i = 0; r > 0; --r, ++i) out[rem[i % k].second] += 1;
    return out;
}

}  // namespace detail

// Sample a Tanner graph from an edge-perspective ensemble via the
// configuration model: node counts by largest-remainder rounding, a uniform
// random stub pairing, then local swaps removing parallel edges (mandatory)
// and 4-cycles (best effort, bounded).  Deterministic given (dist, n, seed).
inline TannerGraph sample_irregular(const DegreeDistribution& dist, int n, std::uint64_t seed,
                                    SampleStats* stats = nullptr) {
    if (n < 1) throw SampleError("sample: n must be positive");
    if (dist.min_var_degree() < 2)
        throw SampleError("sample: variable degrees below 2 are not supported");

    // node fractions from edge fractions
    const int dv_max = dist.max_var_degree(), dc_max = dist.max_chk_degree();
    std::vector<double> vw(dv_max + 1, 0.0);
    for (int d = 1; d <= dv_max; ++d)
        if (dist.lambda(d) > 0.0) vw[d] = (dist.lambda(d) / d) / dist.lambda_inv_moment();
    std::vector<long> vcount = detail::largest_remainder(vw, n);

    long e_total = 0;
    for (int d = 1; d <= dv_max; ++d) e_total += d * vcount[d];
    if (e_total <= 0) throw SampleError("sample: empty edge set");

    const double m_exact = static_cast<double>(e_total) * dist.rho_inv_moment();
    const long m = std::llround(m_exact);
    if (m < 1) throw SampleError("sample: check count rounds to zero");
    std::vector<double> cw(dc_max + 1, 0.0);
    for (int d = 1; d <= dc_max; ++d)
        if (dist.rho(d) > 0.0) cw[d] = (dist.rho(d) / d) / dist.rho_inv_moment();
    std::vector<long> ccount = detail::largest_remainder(cw, m);

    // Repair the check-side stub sum.  Legal moves: retype one check j1 -> j2
    // (sum += j2-j1), add one check of degree j (sum += j), drop one (sum -= j).
    // Greedy largest step that does not overshoot; failure means the degree
    // sequence is infeasible at this block length.
    long deficit = e_total;
    for (int d = 1; d <= dc_max; ++d) deficit -= d * ccount[d];
    std::vector<int> support;
    for (int d = 1; d <= dc_max; ++d)
        if (dist.rho(d) > 0.0) support.push_back(d);
    for (int guard = 0; deficit != 0 && guard < 4096; ++guard) {
        long best_step = 0;
        int best_from = -1, best_to = -1;  // -1 side means add/remove
        auto consider = [&](long step, int from, int to) {
            if (step == 0) return;
            if ((deficit > 0) != (step > 0)) return;
            if (std::labs(step) > std::labs(deficit)) return;
            if (std::labs(step) > std::labs(best_step)) {
                best_step = step;
                best_from = from;
                best_to = to;
            }
        };
        long total_checks = 0;
        for (int d = 1; d <= dc_max; ++d) total_checks += ccount[d];
        for (int j1 : support) {
            if (ccount[j1] > 0) {
                for (int j2 : support)
                    if (j2 != j1) consider(j2 - j1, j1, j2);
                if (total_checks > 1) consider(-j1, j1, -1);  // drop one check
            }
            consider(j1, -1, j1);  // add one check
        }
        if (best_step == 0) break;
        if (best_from >= 0) ccount[best_from] -= 1;
        if (best_to >= 0) ccount[best_to] += 1;
        deficit -= best_step;
    }
    if (deficit != 0)
        throw SampleError("sample: check degree sequence infeasible at this length (residual " +
                          std::to_string(deficit) + " stubs)");

    // stubs
    std::vector<int> var_of_stub, chk_of_stub;
    var_of_stub.reserve(e_total);
    chk_of_stub.reserve(e_total);
    {
        int node = 0;
        for (int d = 1; d <= dv_max; ++d)
            for (long c = 0; c < vcount[d]; ++c, ++node)
                for (int k = 0; k < d; ++k) var_of_stub.push_back(node);
        node = 0;
        for (int d = 1; d <= dc_max; ++d)
            for (long c = 0; c < ccount[d]; ++c, ++node)
                for (int k = 0; k < d; ++k) chk_of_stub.push_back(node);
    }
    if (var_of_stub.size() != chk_of_stub.size())
        throw SampleError("sample: stub sets unbalanced");  // unreachable after repair

    Rng rng(seed);
    shuffle(chk_of_stub.data(), chk_of_stub.size(), rng);

    const long num_vars = var_of_stub.back() + 1;
    long num_chks = 0;
    for (int d = 1; d <= dc_max; ++d) num_chks += ccount[d];

    // Pair stub k: edge (var_of_stub[k], chk_of_stub[k]).  Membership test via
    // per-variable sorted-ish small vectors (degrees are tiny).
    auto has_edge = [&](const std::vector<std::vector<int>>& adj, int v, int c) {
        for (int x : adj[v])
            if (x == c) return true;
        return false;
    };
    std::vector<std::vector<int>> var_adj(num_vars);
    long parallel_swaps = 0;
    {
        // place greedily; collect conflicting stubs for repair
        std::vector<long> conflicts;
        for (long k = 0; k < e_total; ++k) {
            const int v = var_of_stub[k], c = chk_of_stub[k];
            if (has_edge(var_adj, v, c))
                conflicts.push_back(k);
            else
                var_adj[v].push_back(c);
        }
        const long budget = 200 * (static_cast<long>(conflicts.size()) + 1);
        long attempts = 0;
        while (!conflicts.empty()) {
            if (++attempts > budget)
                throw SampleError("sample: could not remove parallel edges (try another seed)");
            const long k = conflicts.back();
            const long r = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(e_total)));
            const int kv = var_of_stub[k], kc = chk_of_stub[k];
            const int rv = var_of_stub[r], rc = chk_of_stub[r];
            if (r == k || kc == rc) continue;
            // swapping check assignments of stubs k and r yields (kv,rc),(rv,kc)
            if (has_edge(var_adj, kv, rc) || has_edge(var_adj, rv, kc)) continue;
            // r's current edge must exist as placed (i.e. r not itself a conflict)
            bool r_conflict = false;
            for (long q : conflicts)
                if (q == r) {
                    r_conflict = true;
                    break;
                }
            if (r_conflict) continue;
            // remove (rv, rc), add the two new edges
            auto& ra = var_adj[rv];
            for (std::size_t i = 0; i < ra.size(); ++i)
                if (ra[i] == rc) {
                    ra.erase(ra.begin() + i);
                    break;
                }
            std::swap(chk_of_stub[k], chk_of_stub[r]);
            var_adj[kv].push_back(chk_of_stub[k]);
            var_adj[rv].push_back(chk_of_stub[r]);
            conflicts.pop_back();
            ++parallel_swaps;
        }
    }

    // Bounded 4-cycle reduction: a 4-cycle is an unordered variable pair
    // sharing two checks.  Swap one offending stub with a random partner when
    // that breaks the cycle without creating a parallel edge.
    long cycle_swaps = 0;
    long residual = 0;
    {
        // rebuild stub arrays to match var_adj (stub order no longer matters)
        var_of_stub.clear();
        chk_of_stub.clear();
        for (long v = 0; v < num_vars; ++v)
            for (int c : var_adj[v]) {
                var_of_stub.push_back(static_cast<int>(v));
                chk_of_stub.push_back(c);
            }

        auto count_and_fix = [&](bool fix) {
            // map check -> incident stub ids
            std::vector<std::vector<long>> by_chk(num_chks);
            for (long k = 0; k < e_total; ++k) by_chk[chk_of_stub[k]].push_back(k);
            std::map<std::pair<int, int>, std::vector<long>> pair_stubs;
            for (long c = 0; c < num_chks; ++c) {
                const auto& stubs = by_chk[c];
                for (std::size_t i = 0; i < stubs.size(); ++i)
                    for (std::size_t j = i + 1; j < stubs.size(); ++j) {
                        int a = var_of_stub[stubs[i]], b = var_of_stub[stubs[j]];
                        if (a == b) continue;  // parallel edges already removed
                        if (a > b) std::swap(a, b);
                        auto& lst = pair_stubs[{a, b}];
                        lst.push_back(stubs[i]);
                    }
            }
            long found = 0;
            for (auto& [key, lst] : pair_stubs) {
                // lst holds one stub per shared check; >= 2 means a 4-cycle
                if (lst.size() < 2) continue;
                ++found;
                if (!fix) continue;
                for (int tries = 0; tries < 32; ++tries) {
                    const long k = lst[0];
                    const long r =
                        static_cast<long>(rng.next_below(static_cast<std::uint64_t>(e_total)));
                    const int kv = var_of_stub[k], kc = chk_of_stub[k];
                    const int rv = var_of_stub[r], rc = chk_of_stub[r];
                    if (r == k || kc == rc || kv == rv) continue;
                    if (has_edge(var_adj, kv, rc) || has_edge(var_adj, rv, kc)) continue;
                    auto replace = [&](int v, int from, int to) {
                        for (auto& x : var_adj[v])
                            if (x == from) {
                                x = to;
                                return;
                            }
                    };
                    replace(kv, kc, rc);
                    replace(rv, rc, kc);
                    std::swap(chk_of_stub[k], chk_of_stub[r]);
                    ++cycle_swaps;
                    break;
                }
            }
            return found;
        };
        for (int pass = 0; pass < 8; ++pass)
            if (count_and_fix(true) == 0) break;
        residual = count_and_fix(false);
    }

    if (stats) {
        stats->var_node_counts = vcount;
        stats->chk_node_counts = ccount;
        stats->parallel_edge_swaps = parallel_swaps;
        stats->four_cycle_swaps = cycle_swaps;
        stats->residual_four_cycles = residual;
    }

    try {
        return TannerGraph::from_adjacency(var_adj, static_cast<int>(num_chks));
    } catch (const std::invalid_argument& e) {
        throw SampleError(std::string("sample: ") + e.what());
    }
}

}  // namespace scms
