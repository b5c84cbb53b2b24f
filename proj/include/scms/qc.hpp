#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scms/alist.hpp"
#include "scms/tanner_graph.hpp"

namespace scms {

// Quasi-cyclic base matrix: entries are circulant shifts, -1 for an all-zero
// block.  Entry s >= 0 expands to the z x z matrix with row r holding a one at
// column (r + s) mod z.
struct QcBaseMatrix {
    int rows = 0;   // check blocks
    int cols = 0;   // variable blocks
    int z = 0;      // lifting factor
    std::vector<int> shifts;  // row-major rows*cols, -1 or [0, z)

    int shift(int r, int c) const { return shifts[static_cast<std::size_t>(r) * cols + c]; }
};

// Text format: header "rows cols z", then rows lines of cols shift entries.
inline QcBaseMatrix load_qc(const std::string& text) {
    detail::IntLexer lex(text);
    QcBaseMatrix b;
    auto head = [&lex](const char* what) {
        const long v = lex.next(what);
        if (v < 1 || v > 1000000)
            throw ParseError("qc line " + std::to_string(lex.line()) + ": " + what + " " +
                             std::to_string(v) + " out of range");
        return static_cast<int>(v);
    };
    b.rows = head("row count");
    b.cols = head("column count");
    b.z = head("lifting factor");
    b.shifts.reserve(static_cast<std::size_t>(b.rows) * b.cols);
    for (int i = 0; i < b.rows * b.cols; ++i) {
        const long s = lex.next("shift entry");
        if (s < -1 || s >= b.z)
            throw ParseError("qc line " + std::to_string(lex.line()) + ": shift " +
                             std::to_string(s) + " out of range [-1," + std::to_string(b.z - 1) +
                             "]");
        b.shifts.push_back(static_cast<int>(s));
    }
    if (!lex.eof())
        throw ParseError("qc line " + std::to_string(lex.line()) + ": trailing data after matrix");
    return b;
}

inline QcBaseMatrix load_qc_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("qc: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_qc(buf.str());
}

inline std::string save_qc(const QcBaseMatrix& b) {
    std::ostringstream os;
    os << b.rows << " " << b.cols << " " << b.z << "\n";
    for (int r = 0; r < b.rows; ++r)
        for (int c = 0; c < b.cols; ++c) os << b.shift(r, c) << (c + 1 < b.cols ? " " : "\n");
    return os.str();
}

// Expand to the lifted Tanner graph: variable C*z+t, check R*z+r, connected
// when shift(R,C) = s >= 0 and t = (r + s) mod z.
inline TannerGraph expand_qc(const QcBaseMatrix& b) {
    if (b.rows < 1 || b.cols < 1 || b.z < 1 ||
        b.shifts.size() != static_cast<std::size_t>(b.rows) * b.cols)
        throw std::invalid_argument("qc: malformed base matrix");
    const int nv = b.cols * b.z;
    std::vector<std::vector<int>> var_adj(nv);
    for (int cb = 0; cb < b.cols; ++cb)
        for (int t = 0; t < b.z; ++t) {
            auto& adj = var_adj[cb * b.z + t];
            for (int rb = 0; rb < b.rows; ++rb) {
                const int s = b.shift(rb, cb);
                if (s < 0) continue;
                // column t is hit by block row r with (r + s) mod z == t
                const int r = ((t - s) % b.z + b.z) % b.z;
                adj.push_back(rb * b.z + r);
            }
        }
    return TannerGraph::from_adjacency(var_adj, b.rows * b.z);
}

}  // namespace scms
