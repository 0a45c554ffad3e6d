#pragma once

// JSON <-> library types. Complex numbers travel as [re, im]; a bare number is read as real.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pvi/hamiltonian.hpp"
#include "pvi/modular.hpp"
#include "pvi/param.hpp"

namespace pvi::io {

using nlohmann::json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

template <size_t N>
json to_json(const std::array<cplx, N>& v) {
    json a = json::array();
    for (auto& z : v) a.push_back(to_json(z));
    return a;
}

inline cplx get_cplx(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw Error(ErrorKind::Parse, what + ": expected a number or [re, im]");
}

template <size_t N>
std::array<cplx, N> get_array(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != N)
        throw Error(ErrorKind::Parse, what + ": expected an array of " + std::to_string(N) + " entries");
    std::array<cplx, N> out;
    for (size_t i = 0; i < N; ++i) out[i] = get_cplx(j[i], what + "[" + std::to_string(i) + "]");
    return out;
}

inline const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

// five components k0..k4 (relation checked), or four free ones k1..k4
inline ExponentVector get_kappa(const json& j) {
    if (j.is_array() && j.size() == 4) {
        auto f = get_array<4>(j, "kappa");
        return ExponentVector::from_free(f[0], f[1], f[2], f[3]);
    }
    return ExponentVector::from_components(get_array<5>(j, "kappa"));
}

inline json to_json(const ExponentVector& k) { return to_json(k.values()); }
inline json to_json(const ThetaVector& th) { return to_json(th.th); }
inline json to_json(const TraceData& a) { return to_json(a.a); }

inline PhasePoint get_phase_point(const json& j) {
    PhasePoint pt;
    pt.q = get_cplx(need(j, "q"), "q");
    pt.p = get_cplx(need(j, "p"), "p");
    if (j.contains("t")) pt.t = get_array<3>(j["t"], "t");
    pt.kappa = get_kappa(need(j, "kappa"));
    return pt;
}

inline json to_json(const PhasePoint& pt) {
    return {{"q", to_json(pt.q)}, {"p", to_json(pt.p)}, {"t", to_json(pt.t)}, {"kappa", to_json(pt.kappa)}};
}

// theta given directly, or derived from kappa
inline ThetaVector get_theta(const json& j) {
    if (j.contains("theta")) return {get_array<4>(j["theta"], "theta")};
    return rh_param(get_kappa(need(j, "kappa")));
}

// inline JSON if it starts with '{', otherwise a file path
inline json load(const std::string& arg) {
    std::string text;
    size_t first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw Error(ErrorKind::Parse, "cannot open input " + arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

}  // namespace pvi::io
