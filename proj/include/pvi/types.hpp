#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace pvi {

using cplx = std::complex<double>;
using Triple = std::array<cplx, 3>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorKind {
    Parse,
    Precondition,
    Unclassifiable,
    NoConvergence,
    SingularPoint,
    PoleClearance,
    StepUnderflow,
    LoopGeometry,
    BlowUp,
    NotLevel2,
    OrbitEscape,
    PoleOfTransformation,
    NotOnRiccatiLocus,
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Precondition: return "precondition violated";
        case ErrorKind::Unclassifiable: return "unclassifiable";
        case ErrorKind::NoConvergence: return "no convergence";
        case ErrorKind::SingularPoint: return "singular point";
        case ErrorKind::PoleClearance: return "pole clearance violated";
        case ErrorKind::StepUnderflow: return "step underflow";
        case ErrorKind::LoopGeometry: return "loop geometry";
        case ErrorKind::BlowUp: return "blow-up near pole";
        case ErrorKind::NotLevel2: return "not level-2";
        case ErrorKind::OrbitEscape: return "orbit escape";
        case ErrorKind::PoleOfTransformation: return "pole of transformation";
        case ErrorKind::NotOnRiccatiLocus: return "not on Riccati locus";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline double max_abs(const Triple& x) {
    return std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
}

inline double dist(const Triple& a, const Triple& b) {
    return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

}  // namespace pvi
