#pragma once

// 113-bit complex arithmetic for monodromy work. Traces of long loop products
// reach 1e4..1e7 for ordinary (q, p), and the cubic relation then cancels
// terms of size |x|^3, which double precision cannot resolve.

#include <array>
#include <complex>

#include <boost/multiprecision/complex128.hpp>

#include "pvi/types.hpp"

namespace pvi {

using qreal = boost::multiprecision::float128;
using qcplx = boost::multiprecision::complex128;

inline qcplx to_q(cplx z) { return qcplx(qreal(z.real()), qreal(z.imag())); }
inline cplx to_d(const qcplx& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }
inline double qabs(const qcplx& z) { return static_cast<double>(abs(z)); }

inline const qreal& qpi() {
    static const qreal v = acos(qreal(-1));
    return v;
}

struct Mat2q {
    qcplx a{1}, b{0}, c{0}, d{1};  // [[a, b], [c, d]]

    static Mat2q identity() { return {}; }
    Mat2q operator*(const Mat2q& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2q operator*(const qcplx& s) const { return {a * s, b * s, c * s, d * s}; }
    Mat2q operator-(const Mat2q& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    qcplx trace() const { return a + d; }
    qcplx det() const { return a * d - b * c; }
    Mat2q inverse() const {
        qcplx D = det();
        return {d / D, -b / D, -c / D, a / D};
    }
    double norm() const {
        qreal s = norm2(a) + norm2(b) + norm2(c) + norm2(d);
        return static_cast<double>(sqrt(s));
    }

private:
    static qreal norm2(const qcplx& z) { return z.real() * z.real() + z.imag() * z.imag(); }
};

using TripleQ = std::array<qcplx, 3>;

}  // namespace pvi
