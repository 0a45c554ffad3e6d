#pragma once

// Parameter spaces: exponents kappa, local traces a, cubic coefficients theta,
// and the affine Weyl group W(D4^(1)) acting on kappa.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "pvi/types.hpp"

namespace pvi {

// 2 k0 + k1 + k2 + k3 + k4 = 1
class ExponentVector {
public:
    ExponentVector() : k_{0.5, 0.0, 0.0, 0.0, 0.0} {}

    static ExponentVector from_free(cplx k1, cplx k2, cplx k3, cplx k4) {
        return ExponentVector({(1.0 - k1 - k2 - k3 - k4) / 2.0, k1, k2, k3, k4});
    }

    // floating input; rejects a violated relation instead of silently fixing it
    static ExponentVector from_components(const std::array<cplx, 5>& k, double tol = 1e-12) {
        double scale = 1.0;
        for (auto& v : k) scale = std::max(scale, std::abs(v));
        cplx d = 2.0 * k[0] + k[1] + k[2] + k[3] + k[4] - 1.0;
        if (std::abs(d) > tol * scale)
            throw Error(ErrorKind::Precondition,
                        "kappa violates 2k0+k1+k2+k3+k4=1 (defect " + std::to_string(std::abs(d)) + ")");
        return ExponentVector(k);
    }

    const cplx& operator[](int i) const { return k_[i]; }
    const std::array<cplx, 5>& values() const { return k_; }
    cplx affine_defect() const { return 2.0 * k_[0] + k_[1] + k_[2] + k_[3] + k_[4] - 1.0; }

private:
    explicit ExponentVector(const std::array<cplx, 5>& k) : k_(k) {}
    friend ExponentVector weyl_reflect(int i, const ExponentVector& k);

    std::array<cplx, 5> k_;
};

// a[0..3] = a1..a4
struct TraceData {
    std::array<cplx, 4> a{};
    cplx& operator[](int i) { return a[i]; }
    const cplx& operator[](int i) const { return a[i]; }
};

// th[0..3] = theta1..theta4
struct ThetaVector {
    std::array<cplx, 4> th{};
    cplx& operator[](int i) { return th[i]; }
    const cplx& operator[](int i) const { return th[i]; }
};

inline double dist(const ThetaVector& a, const ThetaVector& b) {
    double d = 0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// node 0 is the centre of D4^(1)
inline constexpr std::array<std::array<int, 5>, 5> kCartan{{
    {2, -1, -1, -1, -1},
    {-1, 2, 0, 0, 0},
    {-1, 0, 2, 0, 0},
    {-1, 0, 0, 2, 0},
    {-1, 0, 0, 0, 2},
}};

struct WeylWord {
    std::vector<int> letters;

    // "0121", whitespace ignored
    static WeylWord parse(std::string_view s) {
        WeylWord w;
        for (char c : s) {
            if (c == ' ' || c == '\t' || c == ',') continue;
            if (c < '0' || c > '4')
                throw Error(ErrorKind::Parse, std::string("reflection index must be 0..4, got '") + c + "'");
            w.letters.push_back(c - '0');
        }
        return w;
    }

    std::string str() const {
        std::string s;
        for (int l : letters) s += char('0' + l);
        return s;
    }
};

inline ExponentVector weyl_reflect(int i, const ExponentVector& k) {
    if (i < 0 || i > 4) throw Error(ErrorKind::Precondition, "reflection index must be 0..4");
    std::array<cplx, 5> out = k.values();
    for (int j = 0; j < 5; ++j) out[j] = k[j] - k[i] * double(kCartan[i][j]);
    return ExponentVector(out);
}

inline ExponentVector weyl_apply(const WeylWord& w, ExponentVector k) {
    for (int l : w.letters) k = weyl_reflect(l, k);
    return k;
}

inline TraceData kappa_to_a(const ExponentVector& k) {
    TraceData t;
    for (int i = 1; i <= 3; ++i) t[i - 1] = 2.0 * std::cos(kPi * k[i]);
    t[3] = -2.0 * std::cos(kPi * k[4]);
    return t;
}

inline ThetaVector theta_from_a(const TraceData& a) {
    ThetaVector th;
    th[0] = a[0] * a[3] + a[1] * a[2];
    th[1] = a[1] * a[3] + a[2] * a[0];
    th[2] = a[2] * a[3] + a[0] * a[1];
    th[3] = a[0] * a[1] * a[2] * a[3] + a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3] - 4.0;
    return th;
}

inline ThetaVector rh_param(const ExponentVector& k) { return theta_from_a(kappa_to_a(k)); }

enum class DynkinType { Empty, A1, A1x2, A1x3, A1x4, A2, A3, D4 };

struct StratumLabel {
    DynkinType type = DynkinType::Empty;
    int index_set_size = 0;

    bool operator==(const StratumLabel&) const = default;
};

inline const char* to_string(DynkinType t) {
    switch (t) {
        case DynkinType::Empty: return "smooth";
        case DynkinType::A1: return "A1";
        case DynkinType::A1x2: return "A1x2";
        case DynkinType::A1x3: return "A1x3";
        case DynkinType::A1x4: return "A1x4";
        case DynkinType::A2: return "A2";
        case DynkinType::A3: return "A3";
        case DynkinType::D4: return "D4";
    }
    return "?";
}

}  // namespace pvi
