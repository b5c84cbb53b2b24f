#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scms/tanner_graph.hpp"

namespace scms {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Whitespace tokenizer that remembers line numbers for error messages.
class IntLexer {
public:
    explicit IntLexer(const std::string& text) : text_(text) {}

    bool eof() {
        skip_ws();
        return pos_ >= text_.size();
    }

    int line() const { return line_; }

    long next(const char* what) {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("alist line " + std::to_string(line_) +
                             ": unexpected end of input, expected " + what);
        const std::size_t start = pos_;
        if (text_[pos_] == '-' || text_[pos_] == '+') ++pos_;
        bool digits = false;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
            digits = true;
        }
        const bool clean_end =
            pos_ >= text_.size() || std::isspace(static_cast<unsigned char>(text_[pos_]));
        if (!digits || !clean_end)
            throw ParseError("alist line " + std::to_string(line_) + ": expected " + what +
                             ", got '" + snippet(start) + "'");
        return std::stol(text_.substr(start, pos_ - start));
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }
    std::string snippet(std::size_t start) const {
        std::size_t end = start;
        while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) &&
               end - start < 16)
            ++end;
        return text_.substr(start, end - start);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

}  // namespace detail

// MacKay alist format.  Neighbor rows may be zero-padded to the max degree
// (canonical) or unpadded; 0 entries are padding and ignored.  Indices are
// 1-based in the file.
inline TannerGraph load_alist(const std::string& text) {
    constexpr long kNone = -1;
    detail::IntLexer lex(text);
    auto expect_in = [&lex](long v, long lo, long hi, const char* what) {
        if (v < lo || v > hi)
            throw ParseError("alist line " + std::to_string(lex.line()) + ": " + what + " " +
                             std::to_string(v) + " out of range [" + std::to_string(lo) + "," +
                             std::to_string(hi) + "]");
        return static_cast<int>(v);
    };

    const int n = expect_in(lex.next("variable count"), 1, 100000000, "variable count");
    const int m = expect_in(lex.next("check count"), 1, 100000000, "check count");
    const int dv_max = expect_in(lex.next("max variable degree"), 1, m, "max variable degree");
    const int dc_max = expect_in(lex.next("max check degree"), 1, n, "max check degree");

    std::vector<int> vdeg(n), cdeg(m);
    for (int i = 0; i < n; ++i)
        vdeg[i] = expect_in(lex.next("variable degree"), 1, dv_max, "variable degree");
    for (int j = 0; j < m; ++j)
        cdeg[j] = expect_in(lex.next("check degree"), 1, dc_max, "check degree");

    std::vector<std::vector<int>> var_adj(n), chk_adj(m);
    long pending = kNone;
    auto next_entry = [&](const char* what) {
        if (pending != kNone) {
            const long v = pending;
            pending = kNone;
            return v;
        }
        return lex.next(what);
    };
    // Read one side's neighbor rows: degree-many nonzero entries per row, then
    // either zero padding up to pad_to or immediately the next row.
    auto read_side = [&](std::vector<std::vector<int>>& adj, const std::vector<int>& deg,
                         int pad_to, int index_limit, const char* what) {
        for (std::size_t r = 0; r < adj.size(); ++r) {
            adj[r].reserve(deg[r]);
            for (int k = 0; k < deg[r]; ++k) {
                const long v = next_entry(what);
                if (v < 1 || v > index_limit)
                    throw ParseError("alist line " + std::to_string(lex.line()) + ": " + what +
                                     " " + std::to_string(v) + " out of range [1," +
                                     std::to_string(index_limit) + "]");
                adj[r].push_back(static_cast<int>(v) - 1);
            }
            for (int k = deg[r]; k < pad_to && !lex.eof(); ++k) {
                const long v = lex.next(what);
                if (v != 0) {
                    pending = v;  // row was unpadded; v belongs to the next row
                    break;
                }
            }
        }
    };
    read_side(var_adj, vdeg, dv_max, m, "check index");
    read_side(chk_adj, cdeg, dc_max, n, "variable index");
    if (pending != kNone || !lex.eof())
        throw ParseError("alist line " + std::to_string(lex.line()) + ": trailing data after graph");

    try {
        return TannerGraph::from_both(var_adj, chk_adj);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("alist: ") + e.what());
    }
}

inline TannerGraph load_alist_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("alist: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_alist(buf.str());
}

// Canonical (zero-padded) alist serialization, 1-based indices.
inline std::string save_alist(const TannerGraph& g) {
    std::ostringstream os;
    os << g.num_variables() << " " << g.num_checks() << "\n";
    os << g.max_var_degree() << " " << g.max_chk_degree() << "\n";
    auto emit_row = [&os](auto&& value, int count) {
        for (int k = 0; k < count; ++k) os << value(k) << (k + 1 < count ? " " : "\n");
    };
    emit_row([&g](int n) { return g.var_degree(n); }, g.num_variables());
    emit_row([&g](int m) { return g.chk_degree(m); }, g.num_checks());
    for (int n = 0; n < g.num_variables(); ++n) {
        const auto nbrs = g.var_checks(n);
        emit_row([&nbrs](int k) { return k < static_cast<int>(nbrs.size()) ? nbrs[k] + 1 : 0; },
                 g.max_var_degree());
    }
    for (int m = 0; m < g.num_checks(); ++m) {
        const auto nbrs = g.chk_vars(m);
        emit_row([&nbrs](int k) { return k < static_cast<int>(nbrs.size()) ? nbrs[k] + 1 : 0; },
                 g.max_chk_degree());
    }
    return os.str();
}

}  // namespace scms
