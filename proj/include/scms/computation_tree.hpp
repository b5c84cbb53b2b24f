#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "scms/decoder.hpp"
#include "scms/rng.hpp"
#include "scms/tanner_graph.hpp"

namespace scms {

// Node of an unrolled decoding (computation) tree.  Variable and check layers
// alternate; `depth` counts variable layers from the root (checks carry the
// depth of their parent variable).  `parent_pos` records where the parent sits
// in the origin node's neighbor list so the sum order of the original graph
// can be reproduced exactly; synthetic trees use 0 (parent listed first).
struct TreeNode {
    bool is_check = false;
    int origin = -1;   // graph node id; -1 for synthetic trees
    int parent = -1;   // tree node index
    int parent_pos = 0;
    int depth = 0;
    double llr = 0.0;  // variable nodes only
    std::vector<int> children;
};

struct ComputationTree {
    std::vector<TreeNode> nodes;  // node 0 is the root variable
    int depth = 0;                // max variable depth = decode iteration count

    int size() const { return static_cast<int>(nodes.size()); }
};

// Unroll `depth` variable layers of the graph around root_var.  Each node
// instance copies its origin's channel LLR; `excluded_check` (optional, -1 for
// none) drops one check at the root, giving the tree of an extrinsic message
// instead of the a-posteriori tree.
inline ComputationTree unroll_tree(const TannerGraph& g, std::span<const double> gamma,
                                   int root_var, int depth, int excluded_check = -1) {
    if (root_var < 0 || root_var >= g.num_variables())
        throw std::invalid_argument("unroll: root out of range");
    if (depth < 0) throw std::invalid_argument("unroll: negative depth");
    ComputationTree t;
    t.depth = depth;
    t.nodes.push_back({false, root_var, -1, 0, 0, gamma[root_var], {}});

    // expand variable node `v` by appending its origin's checks minus the one
    // it was reached through
    struct Pending {
        int node;
        int skip_check;  // origin check to exclude
    };
    std::vector<Pending> frontier{{0, excluded_check}};
    while (!frontier.empty()) {
        std::vector<Pending> next;
        for (const auto [vnode, skip] : frontier) {
            const int n = t.nodes[vnode].origin;
            const int d = t.nodes[vnode].depth;
            if (d == depth) continue;  // leaf layer
            const auto checks = g.var_checks(n);
            for (int m : checks) {
                if (m == skip) continue;
                const int cnode = t.size();
                int ppos = 0;
                {
                    const auto vars = g.chk_vars(m);
                    for (std::size_t k = 0; k < vars.size(); ++k)
                        if (vars[k] == n) {
                            ppos = static_cast<int>(k);
                            break;
                        }
                }
                t.nodes.push_back({true, m, vnode, ppos, d, 0.0, {}});
                t.nodes[vnode].children.push_back(cnode);
                for (int w : g.chk_vars(m)) {
                    if (w == n) continue;
                    const int wnode = t.size();
                    int wpos = 0;
                    {
                        const auto cs = g.var_checks(w);
                        for (std::size_t k = 0; k < cs.size(); ++k)
                            if (cs[k] == m) {
                                wpos = static_cast<int>(k);
                                break;
                            }
                    }
                    t.nodes.push_back({false, w, cnode, wpos, d + 1, gamma[w], {}});
                    t.nodes[cnode].children.push_back(wnode);
                    next.push_back({wnode, m});
                }
            }
        }
        frontier = std::move(next);
    }
    return t;
}

// Random synthetic tree: depths and branching vary per node, bounded by
// max_depth and max_nodes.  LLRs are consistent-Gaussian N(mean, 2*mean).
inline ComputationTree random_tree(int max_depth, int max_nodes, double mean_llr, Rng& rng) {
    if (max_nodes < 1) throw std::invalid_argument("random_tree: empty budget");
    ComputationTree t;
    auto draw_llr = [&]() { return mean_llr + std::sqrt(2.0 * mean_llr) * rng.next_normal(); };
    t.nodes.push_back({false, -1, -1, 0, 0, draw_llr(), {}});
    std::vector<int> frontier{0};
    int budget = max_nodes - 1;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int vnode : frontier) {
            const int d = t.nodes[vnode].depth;
            if (d >= max_depth) continue;
            const int n_checks = static_cast<int>(rng.next_below(4));  // 0..3 child checks
            for (int c = 0; c < n_checks && budget >= 2; ++c) {
                const int cnode = t.size();
                t.nodes.push_back({true, -1, vnode, 0, d, 0.0, {}});
                t.nodes[vnode].children.push_back(cnode);
                --budget;
                const int n_vars = 1 + static_cast<int>(rng.next_below(3));  // 1..3 child vars
                for (int w = 0; w < n_vars && budget >= 1; ++w) {
                    const int wnode = t.size();
                    t.nodes.push_back({false, -1, cnode, 0, d + 1, draw_llr(), {}});
                    t.nodes[cnode].children.push_back(wnode);
                    --budget;
                    next.push_back(wnode);
                    if (t.nodes[wnode].depth > t.depth) t.depth = t.nodes[wnode].depth;
                }
            }
        }
        frontier = std::move(next);
    }
    // a check must keep at least one child variable (degree >= 2 in the graph);
    // budget exhaustion can leave one dangling at the very end
    for (int i = t.size() - 1; i >= 0; --i) {
        if (t.nodes[i].is_check && t.nodes[i].children.empty()) {
            auto& pc = t.nodes[t.nodes[i].parent].children;
            for (std::size_t k = 0; k < pc.size(); ++k)
                if (pc[k] == i) {
                    pc.erase(pc.begin() + k);
                    break;
                }
            // node i stays allocated but unreferenced; harmless for conversion
            t.nodes[i].parent = -1;
        }
    }
    return t;
}

struct TreeGraph {
    TannerGraph graph;
    std::vector<double> llr;        // per graph variable
    std::vector<int> var_index;     // tree node -> graph variable id (-1 for checks)
    std::vector<int> chk_index;     // tree node -> graph check id (-1 for variables)
};

// Convert to a Tanner graph whose neighbor orders reproduce each origin's
// adjacency order (parent re-inserted at parent_pos), so flooding decode on
// the tree graph is arithmetic-identical to the unrolled computation.
inline TreeGraph tree_to_graph(const ComputationTree& t) {
    TreeGraph out;
    out.var_index.assign(t.size(), -1);
    out.chk_index.assign(t.size(), -1);
    int nv = 0, nc = 0;
    for (int i = 0; i < t.size(); ++i) {
        if (i > 0 && t.nodes[i].parent < 0) continue;  // detached (pruned dangling check)
        if (t.nodes[i].is_check)
            out.chk_index[i] = nc++;
        else
            out.var_index[i] = nv++;
    }
    if (nc == 0) throw std::invalid_argument("tree_to_graph: tree has no checks");

    std::vector<std::vector<int>> var_adj(nv), chk_adj(nc);
    out.llr.resize(nv);
    for (int i = 0; i < t.size(); ++i) {
        if (i > 0 && t.nodes[i].parent < 0) continue;
        const auto& node = t.nodes[i];
        // neighbor list: children with parent inserted at parent_pos
        std::vector<int> nbrs;
        nbrs.reserve(node.children.size() + 1);
        for (int c : node.children) nbrs.push_back(c);
        if (node.parent >= 0) {
            const int pos = node.parent_pos <= static_cast<int>(nbrs.size())
                                ? node.parent_pos
                                : static_cast<int>(nbrs.size());
            nbrs.insert(nbrs.begin() + pos, node.parent);
        }
        if (node.is_check) {
            auto& adj = chk_adj[out.chk_index[i]];
            for (int nb : nbrs) adj.push_back(out.var_index[nb]);
        } else {
            out.llr[out.var_index[i]] = node.llr;
            auto& adj = var_adj[out.var_index[i]];
            for (int nb : nbrs) adj.push_back(out.chk_index[nb]);
        }
    }
    out.graph = TannerGraph::from_both(var_adj, chk_adj);
    return out;
}

struct TreeDecode {
    double root_value = 0.0;
    bool trivial = false;  // tree had no checks; root_value is just the root LLR
    DecodeResult result;
    TreeGraph tg;
};

// Decode the tree for `iterations` flooding iterations (default: tree depth)
// with a full message trace; root_value is the root's final a-posteriori LLR.
inline TreeDecode tree_decode(const ComputationTree& t, Variant variant, int iterations = -1) {
    TreeDecode out;
    const int iters = iterations >= 0 ? iterations : t.depth;
    bool any_check = false;
    for (int i = 0; i < t.size(); ++i)
        if (t.nodes[i].is_check && (i == 0 || t.nodes[i].parent >= 0)) any_check = true;
    if (!any_check || iters == 0) {
        out.trivial = true;
        out.root_value = t.nodes.empty() ? 0.0 : t.nodes[0].llr;
        return out;
    }
    out.tg = tree_to_graph(t);
    DecoderConfig cfg;
    cfg.variant = variant;
    cfg.max_iter = iters;
    cfg.early_stop = false;
    cfg.trace = TraceLevel::Full;
    Decoder dec(out.tg.graph, cfg);
    out.result = dec.decode(out.tg.llr);
    out.root_value = out.result.app[0];  // root is variable 0 by construction
    return out;
}

// Prune subtrees that contributed nothing to the root under self-corrected
// min-sum: a child check whose upward message at its relevant time
// (iteration L - depth) is exactly zero is dropped with its whole subtree.
// Min-sum on the pruned tree then reproduces the self-corrected root value
// bit-exactly; parent positions are re-indexed against surviving siblings so
// every surviving sum keeps its original order.
inline ComputationTree prune_erased(const ComputationTree& t, const TreeDecode& scms) {
    const int L = t.depth;
    std::vector<char> keep(t.size(), 0);
    keep[0] = 1;
    if (!scms.trivial) {
        std::vector<int> stack{0};
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            const int d = t.nodes[v].depth;
            for (int c : t.nodes[v].children) {
                const int tt = L - d;  // relevant iteration of the upward beta
                if (tt < 1 || tt > static_cast<int>(scms.result.beta_trace.size())) continue;
                const int edge = scms.tg.graph.edge_between(scms.tg.var_index[v],
                                                            scms.tg.chk_index[c]);
                if (edge < 0) continue;
                if (scms.result.beta_trace[tt - 1][edge] == 0.0) continue;
                keep[c] = 1;
                for (int w : t.nodes[c].children) {
                    keep[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }

    std::vector<int> remap(t.size(), -1);
    ComputationTree out;
    for (int i = 0; i < t.size(); ++i) {
        if (!keep[i]) continue;
        remap[i] = out.size();
        TreeNode node = t.nodes[i];
        node.children.clear();
        out.nodes.push_back(node);
    }
    out.depth = 0;
    for (int i = 0; i < t.size(); ++i) {
        if (!keep[i]) continue;
        const auto& src = t.nodes[i];
        auto& dst = out.nodes[remap[i]];
        dst.parent = src.parent >= 0 ? remap[src.parent] : -1;
        int removed_before_parent = 0;
        for (std::size_t k = 0; k < src.children.size(); ++k) {
            const int child = src.children[k];
            if (keep[child])
                dst.children.push_back(remap[child]);
            else if (static_cast<int>(k) < src.parent_pos)
                ++removed_before_parent;
        }
        dst.parent_pos = src.parent_pos - removed_before_parent;
        if (!dst.is_check && dst.depth > out.depth) out.depth = dst.depth;
    }
    return out;
}

}  // namespace scms
