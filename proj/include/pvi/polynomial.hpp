#pragma once

// dense univariate polynomials, coefficient c[k] of z^k

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "pvi/types.hpp"

namespace pvi {

template <class S>
struct Polynomial;

template <class T>
inline constexpr bool is_polynomial_v = false;
template <class S>
inline constexpr bool is_polynomial_v<Polynomial<S>> = true;

template <class X>
concept PolyScalar = !is_polynomial_v<X>;

template <class S>
struct Polynomial {
    std::vector<S> c;

    Polynomial() : c{S(0.0)} {}
    Polynomial(S constant) : c{constant} {}
    Polynomial(std::initializer_list<S> coeffs) : c(coeffs) {
        if (c.empty()) c.push_back(S(0.0));
    }
    explicit Polynomial(std::vector<S> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) c.push_back(S(0.0));
    }

    static Polynomial monomial(int k) {
        Polynomial r;
        r.c.assign(k + 1, S(0.0));
        r.c[k] = S(1.0);
        return r;
    }

    // storage size minus one; may carry exact-zero leading terms until trimmed
    int storage_degree() const { return int(c.size()) - 1; }

    const S& operator[](int k) const { return c[k]; }
    S coeff(int k) const { return k < int(c.size()) ? c[k] : S(0.0); }

    template <class Z>
    Z operator()(const Z& z) const {
        Z r = Z(c.back());
        for (int k = int(c.size()) - 2; k >= 0; --k) r = r * z + c[k];
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), S(0.0));
        for (size_t k = 0; k < o.c.size(); ++k) c[k] = c[k] + o.c[k];
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), S(0.0));
        for (size_t k = 0; k < o.c.size(); ++k) c[k] = c[k] - o.c[k];
        return *this;
    }
    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
};

template <class S>
Polynomial<S> operator+(Polynomial<S> a, const Polynomial<S>& b) { return a += b; }
template <class S>
Polynomial<S> operator-(Polynomial<S> a, const Polynomial<S>& b) { return a -= b; }

template <class S>
Polynomial<S> operator*(const Polynomial<S>& a, const Polynomial<S>& b) {
    std::vector<S> r(a.c.size() + b.c.size() - 1, S(0.0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
    return Polynomial<S>(std::move(r));
}

// scalar ops; X is S or anything S multiplies with (cplx, double)
template <class S, PolyScalar X>
Polynomial<S> operator*(Polynomial<S> a, const X& s) {
    for (auto& v : a.c) v = v * s;
    return a;
}
template <class S, PolyScalar X>
Polynomial<S> operator*(const X& s, Polynomial<S> a) {
    for (auto& v : a.c) v = v * s;
    return a;
}
template <class S, PolyScalar X>
Polynomial<S> operator/(Polynomial<S> a, const X& s) {
    for (auto& v : a.c) v = v / s;
    return a;
}
template <class S, PolyScalar X>
Polynomial<S> operator+(Polynomial<S> a, const X& s) {
    a.c[0] = a.c[0] + s;
    return a;
}
template <class S, PolyScalar X>
Polynomial<S> operator+(const X& s, Polynomial<S> a) {
    a.c[0] = a.c[0] + s;
    return a;
}
template <class S, PolyScalar X>
Polynomial<S> operator-(Polynomial<S> a, const X& s) {
    a.c[0] = a.c[0] - s;
    return a;
}
template <class S, PolyScalar X>
Polynomial<S> operator-(const X& s, const Polynomial<S>& a) {
    return -a + s;
}

// degree ignoring exactly-zero leading coefficients
inline int exact_degree(const Polynomial<cplx>& p) {
    int d = p.storage_degree();
    while (d > 0 && p.c[d] == cplx(0.0)) --d;
    return d;
}

// roots via companion-matrix eigenvalues; leading coefficient must be nonzero
inline std::vector<cplx> roots(const Polynomial<cplx>& p) {
    int n = exact_degree(p);
    if (n < 1) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.c[i] / p.c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return r;
}

}  // namespace pvi
