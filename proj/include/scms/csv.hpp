#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace scms {

// Deterministic numeric formatting for CSV output: shortest round-trip-exact
// decimal via %.17g tightening, so identical doubles always print identically.
inline std::string fmt_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_long(long v) { return std::to_string(v); }

// Minimal CSV assembly: comment header lines ('# ...'), one column header
// line, then rows.
class CsvWriter {
public:
    void comment(const std::string& line) { comments_.push_back(line); }
    void header(const std::vector<std::string>& cols) { cols_ = cols; }
    void row(const std::vector<std::string>& cells) {
        if (cells.size() != cols_.size())
            throw std::invalid_argument("csv: row width mismatch");
        rows_.push_back(cells);
    }

    std::string str() const {
        std::string out;
        for (const auto& c : comments_) out += "# " + c + "\n";
        out += join(cols_);
        for (const auto& r : rows_) out += join(r);
        return out;
    }

    void write_file(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
        f << str();
        if (!f) throw std::runtime_error("csv: write failed for '" + path + "'");
    }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ",";
            line += cells[i];
        }
        line += "\n";
        return line;
    }

    std::vector<std::string> comments_;
    std::vector<std::string> cols_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace scms
