#pragma once

// polynomial automorphisms g1, g2, g3 of C^7 = (x, theta) preserving f

#include <array>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pvi/cubic.hpp"

namespace pvi {

struct AmbientPoint {
    Triple x{};
    ThetaVector theta;
};

inline double dist(const AmbientPoint& a, const AmbientPoint& b) {
    return std::max(dist(a.x, b.x), dist(a.theta, b.theta));
}

struct Letter {
    int gen = 1;   // 1..3
    int sign = 1;  // +1 or -1
    bool operator==(const Letter&) const = default;
};

namespace detail {
inline std::vector<Letter> parse_letters(std::string_view s, const char* what) {
    std::vector<Letter> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) {
        int sign = 1;
        size_t pos = 0;
        if (tok[0] == '-') { sign = -1; pos = 1; }
        if (tok.size() != pos + 1 || tok[pos] < '1' || tok[pos] > '3')
            throw Error(ErrorKind::Parse, std::string(what) + " letter must be one of 1 2 3 -1 -2 -3, got '" + tok + "'");
        out.push_back({tok[pos] - '0', sign});
    }
    return out;
}
inline std::string format_letters(const std::vector<Letter>& w) {
    std::string s;
    for (auto& l : w) {
        if (!s.empty()) s += ' ';
        if (l.sign < 0) s += '-';
        s += char('0' + l.gen);
    }
    return s;
}
inline std::vector<Letter> inverse_letters(const std::vector<Letter>& w) {
    std::vector<Letter> r(w.rbegin(), w.rend());
    for (auto& l : r) l.sign = -l.sign;
    return r;
}
}  // namespace detail

// "1 2 -1" = g1 g2 g1^-1, applied left to right
struct ModularWord {
    std::vector<Letter> letters;
    static ModularWord parse(std::string_view s) { return {detail::parse_letters(s, "modular")}; }
    std::string str() const { return detail::format_letters(letters); }
    ModularWord inverse() const { return {detail::inverse_letters(letters)}; }
    ModularWord operator*(const ModularWord& o) const {
        ModularWord r = *this;
        r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
        return r;
    }
};

struct BraidWord {
    std::vector<Letter> letters;
    static BraidWord parse(std::string_view s) { return {detail::parse_letters(s, "braid")}; }
    std::string str() const { return detail::format_letters(letters); }
};

namespace detail {
// (i, j, k) cyclic from i, 0-based
inline std::array<int, 3> cyc(int gen) {
    if (gen < 1 || gen > 3) throw Error(ErrorKind::Precondition, "generator index must be 1..3");
    int i = gen - 1;
    return {i, (i + 1) % 3, (i + 2) % 3};
}
}  // namespace detail

inline AmbientPoint apply_generator(int gen, const AmbientPoint& p) {
    auto [i, j, k] = detail::cyc(gen);
    AmbientPoint r = p;
    r.x[i] = p.theta[j] - p.x[j] - p.x[k] * p.x[i];
    r.x[j] = p.x[i];
    r.theta[i] = p.theta[j];
    r.theta[j] = p.theta[i];
    return r;
}

inline AmbientPoint apply_inverse(int gen, const AmbientPoint& p) {
    auto [i, j, k] = detail::cyc(gen);
    AmbientPoint r = p;
    r.theta[i] = p.theta[j];
    r.theta[j] = p.theta[i];
    r.x[i] = p.x[j];
    r.x[j] = p.theta[i] - p.x[i] - p.x[k] * p.x[j];
    return r;
}

// dx'/dx of g_gen at fixed theta
inline Eigen::Matrix3cd generator_jacobian(int gen, const Triple& x) {
    auto [i, j, k] = detail::cyc(gen);
    Eigen::Matrix3cd J = Eigen::Matrix3cd::Zero();
    J(i, i) = -x[k];
    J(i, j) = -1.0;
    J(i, k) = -x[i];
    J(j, i) = 1.0;
    J(k, k) = 1.0;
    return J;
}

inline AmbientPoint apply_word(const ModularWord& w, AmbientPoint p, double escape_bound = 1e100) {
    for (size_t n = 0; n < w.letters.size(); ++n) {
        const auto& l = w.letters[n];
        p = l.sign > 0 ? apply_generator(l.gen, p) : apply_inverse(l.gen, p);
        double m = max_abs(p.x);
        if (!(m <= escape_bound))
            throw Error(ErrorKind::OrbitEscape, "coordinate magnitude exceeded bound at letter " + std::to_string(n));
    }
    return p;
}

// image in S3 as p[0..2]: position of index m goes to p[m]
inline std::array<int, 3> perm_image(const ModularWord& w) {
    std::array<int, 3> p{0, 1, 2};
    for (auto& l : w.letters) {
        auto c = detail::cyc(l.gen);
        int a = c[0], b = c[1];
        for (int& v : p) {
            if (v == a) v = b;
            else if (v == b) v = a;
        }
    }
    return p;
}

inline bool is_level2(const ModularWord& w) {
    auto p = perm_image(w);
    return p[0] == 0 && p[1] == 1 && p[2] == 2;
}

enum class Orientation { Forward, Inverse };

inline ModularWord braid_to_modular(const BraidWord& b, Orientation o = Orientation::Forward) {
    ModularWord w;
    for (auto l : b.letters) {
        if (o == Orientation::Inverse) l.sign = -l.sign;
        w.letters.push_back(l);
    }
    return w;
}

inline bool fixed_point_check(const ModularWord& w, const AmbientPoint& p, double tol) {
    if (!is_level2(w)) throw Error(ErrorKind::NotLevel2, "word permutes theta: " + w.str());
    AmbientPoint q = apply_word(w, p);
    for (int i = 0; i < 3; ++i)
        if (!(std::abs(q.x[i] - p.x[i]) <= tol)) return false;
    return true;
}

struct OrbitStep {
    AmbientPoint point;
    double residual = 0.0;
};

inline std::vector<OrbitStep> orbit(const AmbientPoint& p, const ModularWord& w, int n,
                                    double escape_bound = 1e100) {
    if (n < 0) throw Error(ErrorKind::Precondition, "iteration count must be >= 0");
    if (!is_level2(w)) throw Error(ErrorKind::NotLevel2, "orbit word must fix theta: " + w.str());
    std::vector<OrbitStep> out;
    out.reserve(n + 1);
    AmbientPoint cur = p;
    out.push_back({cur, std::abs(eval_f(cur.x, cur.theta))});
    for (int s = 0; s < n; ++s) {
        cur = apply_word(w, cur, escape_bound);
        out.push_back({cur, std::abs(eval_f(cur.x, cur.theta))});
    }
    return out;
}

}  // namespace pvi
