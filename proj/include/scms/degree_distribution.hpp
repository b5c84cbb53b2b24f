#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scms {

// Edge-perspective degree distribution pair (lambda for variables, rho for
// checks): lambda[i] is the fraction of edges attached to degree-i variable
// nodes, so lambda(x) = sum_i lambda[i] x^(i-1), and likewise for rho.
class DegreeDistribution {
public:
    DegreeDistribution() = default;

    // pairs of (degree, edge fraction); fractions must sum to 1 per side.
    static DegreeDistribution from_pairs(const std::vector<std::pair<int, double>>& lambda,
                                         const std::vector<std::pair<int, double>>& rho) {
        DegreeDistribution d;
        d.lambda_ = build_side(lambda, "lambda");
        d.rho_ = build_side(rho, "rho");
        return d;
    }

    static DegreeDistribution regular(int dv, int dc) {
        return from_pairs({{dv, 1.0}}, {{dc, 1.0}});
    }

    // "3,6" for a regular pair, or "2:0.3,3:0.3,8:0.4|6:0.3,7:0.7" for
    // irregular lambda|rho with degree:fraction terms; a bare degree stands
    // for fraction 1 (so "2:0.5,3:0.5|6" has all check edges on degree 6).
    static DegreeDistribution parse(const std::string& text);

    double lambda(int degree) const { return coeff(lambda_, degree); }
    double rho(int degree) const { return coeff(rho_, degree); }
    int max_var_degree() const { return static_cast<int>(lambda_.size()) - 1; }
    int max_chk_degree() const { return static_cast<int>(rho_.size()) - 1; }
    int min_var_degree() const { return min_degree(lambda_); }
    int min_chk_degree() const { return min_degree(rho_); }

    double lambda_eval(double x) const { return poly_eval(lambda_, x); }
    double rho_eval(double x) const { return poly_eval(rho_, x); }

    // sum_i lambda_i / i = (avg variable degree)^-1 up to the edge count factor.
    double lambda_inv_moment() const { return inv_moment(lambda_); }
    double rho_inv_moment() const { return inv_moment(rho_); }

    // Design rate 1 - (sum rho_j/j)/(sum lambda_i/i).
    double rate() const { return 1.0 - rho_inv_moment() / lambda_inv_moment(); }

    const std::vector<double>& lambda_coeffs() const { return lambda_; }
    const std::vector<double>& rho_coeffs() const { return rho_; }

    bool close_to(const DegreeDistribution& other, double tol) const {
        return side_close(lambda_, other.lambda_, tol) && side_close(rho_, other.rho_, tol);
    }

    std::string to_string() const;

private:
    static std::vector<double> build_side(const std::vector<std::pair<int, double>>& terms,
                                          const char* side) {
        if (terms.empty()) throw std::invalid_argument(std::string(side) + ": no terms");
        std::vector<double> v;
        double total = 0.0;
        for (auto [deg, frac] : terms) {
            if (deg < 1) throw std::invalid_argument(std::string(side) + ": degree must be >= 1");
            if (!(frac >= 0.0) || frac > 1.0)
                throw std::invalid_argument(std::string(side) + ": fraction outside [0,1]");
            if (static_cast<std::size_t>(deg) >= v.size()) v.resize(deg + 1, 0.0);
            v[deg] += frac;
            total += frac;
        }
        if (std::fabs(total - 1.0) > 1e-9)
            throw std::invalid_argument(std::string(side) + ": fractions sum to " +
                                        std::to_string(total) + ", expected 1");
        return v;
    }

    static double coeff(const std::vector<double>& v, int degree) {
        if (degree < 1 || static_cast<std::size_t>(degree) >= v.size()) return 0.0;
        return v[degree];
    }

    static int min_degree(const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] > 0.0) return static_cast<int>(i);
        return 0;
    }

    static double poly_eval(const std::vector<double>& v, double x) {
        double acc = 0.0, xp = 1.0;
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (v[i] != 0.0) acc += v[i] * xp;
            xp *= x;
        }
        return acc;
    }

    static double inv_moment(const std::vector<double>& v) {
        double acc = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] != 0.0) acc += v[i] / static_cast<double>(i);
        return acc;
    }

    static bool side_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
        const std::size_t n = a.size() > b.size() ? a.size() : b.size();
        for (std::size_t i = 1; i < n; ++i) {
            const double va = i < a.size() ? a[i] : 0.0;
            const double vb = i < b.size() ? b[i] : 0.0;
            if (std::fabs(va - vb) > tol) return false;
        }
        return true;
    }

    std::vector<double> lambda_;  // index = degree
    std::vector<double> rho_;
};

inline DegreeDistribution DegreeDistribution::parse(const std::string& text) {
    auto strict_int = [](const std::string& s, const char* what) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != s.size())
            throw std::invalid_argument(std::string(what) + ": bad integer '" + s + "'");
        return v;
    };
    auto strict_double = [](const std::string& s, const char* what) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != s.size())
            throw std::invalid_argument(std::string(what) + ": bad number '" + s + "'");
        return v;
    };
    const auto bar = text.find('|');
    auto parse_side = [&](const std::string& s, const char* side) {
        std::vector<std::pair<int, double>> terms;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos)
                terms.emplace_back(strict_int(tok, side), 1.0);  // bare degree
            else
                terms.emplace_back(strict_int(tok.substr(0, colon), side),
                                   strict_double(tok.substr(colon + 1), side));
        }
        if (terms.empty()) throw std::invalid_argument(std::string(side) + ": empty spec");
        return terms;
    };
    if (bar == std::string::npos) {
        // regular "dv,dc"
        const auto comma = text.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("ensemble spec: expected 'dv,dc' or 'lambda|rho'");
        const int dv = strict_int(text.substr(0, comma), "ensemble spec");
        const int dc = strict_int(text.substr(comma + 1), "ensemble spec");
        return regular(dv, dc);
    }
    return from_pairs(parse_side(text.substr(0, bar), "lambda"),
                      parse_side(text.substr(bar + 1), "rho"));
}

inline std::string DegreeDistribution::to_string() const {
    std::ostringstream os;
    auto emit = [&os](const std::vector<double>& v) {
        bool first = true;
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (v[i] == 0.0) continue;
            if (!first) os << ",";
            os << i << ":" << v[i];
            first = false;
        }
    };
    emit(lambda_);
    os << "|";
    emit(rho_);
    return os.str();
}

}  // namespace scms
