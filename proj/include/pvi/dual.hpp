#pragma once

// forward-mode dual numbers over complex scalars: v + d*eps, eps^2 = 0

#include "pvi/types.hpp"

namespace pvi {

struct Dual {
    cplx v{}, d{};

    Dual() = default;
    Dual(cplx value, cplx deriv = 0.0) : v(value), d(deriv) {}
    Dual(double value) : v(value), d(0.0) {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    Dual& operator/=(const Dual& o) {
        d = (d * o.v - v * o.d) / (o.v * o.v);
        v /= o.v;
        return *this;
    }
    Dual operator-() const { return {-v, -d}; }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator+(Dual a, cplx b) { a.v += b; return a; }
inline Dual operator+(cplx b, Dual a) { a.v += b; return a; }
inline Dual operator-(Dual a, cplx b) { a.v -= b; return a; }
inline Dual operator-(cplx b, const Dual& a) { return {b - a.v, -a.d}; }
inline Dual operator*(const Dual& a, cplx b) { return {a.v * b, a.d * b}; }
inline Dual operator*(cplx b, const Dual& a) { return {a.v * b, a.d * b}; }
inline Dual operator/(const Dual& a, cplx b) { return {a.v / b, a.d / b}; }
inline Dual operator*(const Dual& a, double b) { return {a.v * b, a.d * b}; }
inline Dual operator*(double b, const Dual& a) { return {a.v * b, a.d * b}; }

}  // namespace pvi
