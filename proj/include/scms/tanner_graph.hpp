#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scms/degree_distribution.hpp"

namespace scms {

// Bipartite Tanner graph in CSR form.  Edges are numbered variable-major:
// edge ids of variable n are contiguous, ordered as its neighbor list.  Each
// check also knows its incident edge ids, ordered as the check's neighbor
// list, so message passing can walk either side without lookups.
class TannerGraph {
public:
    TannerGraph() = default;

    // var_adj[n] lists the checks of variable n (order preserved).  The check
    // side neighbor order is derived by ascending variable index.
    static TannerGraph from_adjacency(const std::vector<std::vector<int>>& var_adj, int num_checks) {
        std::vector<std::vector<int>> chk_adj(num_checks);
        for (std::size_t n = 0; n < var_adj.size(); ++n)
            for (int m : var_adj[n]) {
                if (m < 0 || m >= num_checks)
                    throw std::invalid_argument("tanner graph: check index " + std::to_string(m) +
                                                " out of range");
                chk_adj[m].push_back(static_cast<int>(n));
            }
        return from_both(var_adj, chk_adj);
    }

    // Both neighbor orders given explicitly (e.g. from a file); validated to be
    // consistent as sets, with no parallel edges.
    static TannerGraph from_both(const std::vector<std::vector<int>>& var_adj,
                                 const std::vector<std::vector<int>>& chk_adj) {
        TannerGraph g;
        g.build(var_adj, chk_adj);
        return g;
    }

    int num_variables() const { return static_cast<int>(var_offset_.size()) - 1; }
    int num_checks() const { return static_cast<int>(chk_offset_.size()) - 1; }
    int edge_count() const { return static_cast<int>(edge_var_.size()); }

    int var_degree(int n) const { return var_offset_[n + 1] - var_offset_[n]; }
    int chk_degree(int m) const { return chk_offset_[m + 1] - chk_offset_[m]; }
    int max_var_degree() const { return max_var_degree_; }
    int max_chk_degree() const { return max_chk_degree_; }

    std::span<const int> var_checks(int n) const {
        return {var_nbr_.data() + var_offset_[n], static_cast<std::size_t>(var_degree(n))};
    }
    std::span<const int> chk_vars(int m) const {
        return {chk_nbr_.data() + chk_offset_[m], static_cast<std::size_t>(chk_degree(m))};
    }
    // Edge ids incident to variable n, parallel to var_checks(n).
    std::span<const int> var_edges(int n) const {
        return {var_edge_.data() + var_offset_[n], static_cast<std::size_t>(var_degree(n))};
    }
    // Edge ids incident to check m, parallel to chk_vars(m).
    std::span<const int> chk_edges(int m) const {
        return {chk_edge_.data() + chk_offset_[m], static_cast<std::size_t>(chk_degree(m))};
    }

    int edge_variable(int e) const { return edge_var_[e]; }
    int edge_check(int e) const { return edge_chk_[e]; }

    // Edge id joining variable n and check m; -1 if absent.
    int edge_between(int n, int m) const {
        const auto checks = var_checks(n);
        const auto edges = var_edges(n);
        for (std::size_t k = 0; k < checks.size(); ++k)
            if (checks[k] == m) return edges[k];
        return -1;
    }

    // True iff every check has even parity under `bits` (0/1 per variable).
    bool syndrome_ok(std::span<const std::uint8_t> bits) const {
        for (int m = 0; m < num_checks(); ++m) {
            unsigned parity = 0;
            for (int n : chk_vars(m)) parity ^= bits[n];
            if (parity) return false;
        }
        return true;
    }

    // Empirical edge-perspective degree distribution of this graph.
    DegreeDistribution degree_distributions() const {
        const double e = edge_count();
        std::vector<std::pair<int, double>> lam, rho;
        std::vector<long> vcount(max_var_degree_ + 1, 0), ccount(max_chk_degree_ + 1, 0);
        for (int n = 0; n < num_variables(); ++n) ++vcount[var_degree(n)];
        for (int m = 0; m < num_checks(); ++m) ++ccount[chk_degree(m)];
        for (std::size_t d = 1; d < vcount.size(); ++d)
            if (vcount[d]) lam.emplace_back(static_cast<int>(d), d * vcount[d] / e);
        for (std::size_t d = 1; d < ccount.size(); ++d)
            if (ccount[d]) rho.emplace_back(static_cast<int>(d), d * ccount[d] / e);
        return DegreeDistribution::from_pairs(lam, rho);
    }

private:
    void build(const std::vector<std::vector<int>>& var_adj,
               const std::vector<std::vector<int>>& chk_adj) {
        const int nv = static_cast<int>(var_adj.size());
        const int nc = static_cast<int>(chk_adj.size());
        if (nv == 0 || nc == 0) throw std::invalid_argument("tanner graph: empty side");

        var_offset_.assign(nv + 1, 0);
        for (int n = 0; n < nv; ++n) {
            if (var_adj[n].empty())
                throw std::invalid_argument("tanner graph: variable " + std::to_string(n) +
                                            " has degree 0");
            var_offset_[n + 1] = var_offset_[n] + static_cast<int>(var_adj[n].size());
        }
        const int ne = var_offset_[nv];

        var_nbr_.resize(ne);
        var_edge_.resize(ne);
        edge_var_.resize(ne);
        edge_chk_.resize(ne);
        std::vector<int> chk_deg(nc, 0);
        int e = 0;
        for (int n = 0; n < nv; ++n) {
            for (std::size_t k = 0; k < var_adj[n].size(); ++k) {
                const int m = var_adj[n][k];
                if (m < 0 || m >= nc)
                    throw std::invalid_argument("tanner graph: check index " + std::to_string(m) +
                                                " out of range");
                for (std::size_t j = 0; j < k; ++j)
                    if (var_adj[n][j] == m)
                        throw std::invalid_argument("tanner graph: parallel edge at variable " +
                                                    std::to_string(n) + ", check " +
                                                    std::to_string(m));
                var_nbr_[e] = m;
                var_edge_[e] = e;
                edge_var_[e] = n;
                edge_chk_[e] = m;
                ++chk_deg[m];
                ++e;
            }
        }

        chk_offset_.assign(nc + 1, 0);
        for (int m = 0; m < nc; ++m) {
            if (chk_adj[m].empty())
                throw std::invalid_argument("tanner graph: check " + std::to_string(m) +
                                            " has degree 0");
            if (static_cast<int>(chk_adj[m].size()) != chk_deg[m])
                throw std::invalid_argument("tanner graph: check " + std::to_string(m) +
                                            " degree mismatch between adjacency lists");
            chk_offset_[m + 1] = chk_offset_[m] + chk_deg[m];
        }

        chk_nbr_.resize(ne);
        chk_edge_.resize(ne);
        for (int m = 0; m < nc; ++m) {
            int pos = chk_offset_[m];
            for (std::size_t k = 0; k < chk_adj[m].size(); ++k)
                for (std::size_t j = 0; j < k; ++j)
                    if (chk_adj[m][j] == chk_adj[m][k])
                        throw std::invalid_argument("tanner graph: parallel edge at check " +
                                                    std::to_string(m));
            for (int n : chk_adj[m]) {
                if (n < 0 || n >= nv)
                    throw std::invalid_argument("tanner graph: variable index " +
                                                std::to_string(n) + " out of range");
                // locate the edge (n,m) in the variable-major layout
                int eid = -1;
                for (int k = var_offset_[n]; k < var_offset_[n + 1]; ++k)
                    if (var_nbr_[k] == m) {
                        eid = k;
                        break;
                    }
                if (eid < 0)
                    throw std::invalid_argument(
                        "tanner graph: adjacency lists disagree on edge (v" + std::to_string(n) +
                        ", c" + std::to_string(m) + ")");
                chk_nbr_[pos] = n;
                chk_edge_[pos] = eid;
                ++pos;
            }
        }

        max_var_degree_ = 0;
        for (int n = 0; n < nv; ++n)
            if (var_degree(n) > max_var_degree_) max_var_degree_ = var_degree(n);
        max_chk_degree_ = 0;
        for (int m = 0; m < nc; ++m)
            if (chk_degree(m) > max_chk_degree_) max_chk_degree_ = chk_degree(m);
    }

    std::vector<int> var_offset_, var_nbr_, var_edge_;
    std::vector<int> chk_offset_, chk_nbr_, chk_edge_;
    std::vector<int> edge_var_, edge_chk_;
    int max_var_degree_ = 0, max_chk_degree_ = 0;
};

}  // namespace scms
