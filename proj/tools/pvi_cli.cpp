// pvi_cli: classify | rh | orbit | flow | monodromy | backlund | selftest
//
// exit codes: 0 all checks within tolerance, 1 a check failed, 2 usage or parse error,
// 10 + ErrorKind for errors raised by the library

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json_io.hpp"
#include "pvi/backlund.hpp"
#include "pvi/flow.hpp"
#include "pvi/fuchsian.hpp"
#include "pvi/stratum.hpp"

using namespace pvi;
using io::json;
using io::to_json;

namespace {

struct RunConfig {
    std::string command;
    std::string input;
    std::string out;
    double tol = -1;  // < 0: per-command default
    uint64_t seed = 1;
    long max_steps = 2'000'000;
    std::string orientation = "fwd";

    double tol_or(double d) const { return tol > 0 ? tol : d; }
};

int log_level() {
    const char* v = std::getenv("PVI_LOG");
    return v ? std::atoi(v) : 0;
}

template <class... A>
void log(int level, const char* f, A... a) {
    if (log_level() < level) return;
    std::fprintf(stderr, "[pvi] ");
    if constexpr (sizeof...(A) == 0)
        std::fputs(f, stderr);
    else
        std::fprintf(stderr, f, a...);
    std::fprintf(stderr, "\n");
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::Parse, "cannot write " + cfg.out);
    f << text;
    log(1, "wrote %s", cfg.out.c_str());
}

std::string num(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

std::string csv_cplx(cplx z) { return num(z.real()) + "," + num(z.imag()); }

std::string short_cplx(cplx z) {
    char b[64];
    if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z)))
        std::snprintf(b, sizeof b, "%.6g", z.real() == 0 ? 0.0 : z.real());
    else
        std::snprintf(b, sizeof b, "%.6g%+.6gi", z.real(), z.imag());
    return b;
}

json check(double value, double tol) { return {{"value", value}, {"tol", tol}, {"ok", value <= tol}}; }

bool all_ok(const json& checks) {
    for (auto& [k, v] : checks.items())
        if (!v["ok"].get<bool>()) return false;
    return true;
}

FlowOptions flow_options(const RunConfig& cfg) {
    FlowOptions o;
    o.max_steps = cfg.max_steps;
    return o;
}

Orientation orientation(const RunConfig& cfg) {
    if (cfg.orientation == "fwd") return Orientation::Forward;
    if (cfg.orientation == "inv") return Orientation::Inverse;
    throw Error(ErrorKind::Parse, "orientation must be fwd or inv");
}

// ---------------------------------------------------------------- classify

int cmd_classify(const RunConfig& cfg) {
    json in = io::load(cfg.input);
    const double tol = cfg.tol_or(1e-8);
    json out;
    ThetaVector th;
    bool wall;
    std::string summary;
    if (in.contains("theta")) {
        th = io::get_theta(in);
        out["theta"] = to_json(th);
    } else {
        ExponentVector k = io::get_kappa(io::need(in, "kappa"));
        TraceData a = kappa_to_a(k);
        th = theta_from_a(a);
        out["kappa"] = to_json(k);
        out["a"] = to_json(a);
        out["theta"] = to_json(th);
        out["delta_lift"] = to_json(discriminant_lift(a));
        out["delta_normalized"] = normalized_discriminant(a);
    }
    SingularPointReport rep = singular_points(th, tol);
    StratumLabel lab = label_from_points(rep);
    wall = !rep.points.empty();
    if (out.contains("delta_normalized") && on_wall(io::get_kappa(in["kappa"]), tol) != wall)
        log(1, "wall test and singular points disagree");
    out["wall"] = wall;
    out["stratum"] = to_string(lab.type);
    json pts = json::array();
    for (auto& p : rep.points)
        pts.push_back({{"point", to_json(p.x)}, {"type", to_string(p.type)}, {"milnor", p.milnor},
                       {"residual", p.residual}});
    out["singular_points"] = pts;

    if (!wall) {
        summary = "SMOOTH; \xce\x94 \xe2\x89\xa0 0";
    } else {
        summary = std::string("WALL; type ") + to_string(lab.type);
        for (auto& p : rep.points)
            summary += "; singular point (" + short_cplx(p.x[0]) + "," + short_cplx(p.x[1]) + "," +
                       short_cplx(p.x[2]) + ")";
    }
    out["summary"] = summary;
    std::fprintf(stderr, "%s\n", summary.c_str());
    emit(cfg, out.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- rh

json mat_json(const Mat2q& m) {
    return json::array({to_json(to_d(m.a)), to_json(to_d(m.b)), to_json(to_d(m.c)), to_json(to_d(m.d))});
}

int cmd_rh(const RunConfig& cfg) {
    json in = io::load(cfg.input);
    PhasePoint pt = io::get_phase_point(in);
    std::optional<cplx> b;
    if (in.contains("basepoint")) b = io::get_cplx(in["basepoint"], "basepoint");
    const double tol = cfg.tol_or(1e-8);
    log(1, "rh: q=%s p=%s", short_cplx(pt.q).c_str(), short_cplx(pt.p).c_str());
    RhReport r = rh_evaluate(pt, b);
    double scale = std::max(1.0, std::pow(max_abs(r.x), 3));
    json out;
    out["input"] = to_json(pt);
    out["basepoint"] = to_json(r.rep.basepoint);
    out["x"] = to_json(r.x);
    out["a"] = to_json(r.a_exact);
    out["a_numeric"] = to_json(r.a_numeric);
    out["theta"] = to_json(r.theta);
    json M = json::array();
    for (auto& m : r.rep.M) M.push_back(mat_json(m));
    out["monodromy"] = M;
    out["fricke_residual"] = r.fricke_residual;
    out["apparency"] = r.apparency;
    json checks;
    checks["fricke_relative"] = check(r.fricke_residual / scale, tol);
    checks["trace_error"] = check(r.trace_error, tol);
    checks["det_error"] = check(r.det_error, tol);
    checks["product_defect"] = check(r.product_defect, std::sqrt(tol));
    checks["apparency"] = check(r.apparency, tol);
    out["checks"] = checks;
    out["ok"] = all_ok(checks);
    emit(cfg, out.dump(2) + "\n");
    return out["ok"].get<bool>() ? 0 : 1;
}

// ---------------------------------------------------------------- orbit

int cmd_orbit(const RunConfig& cfg) {
    json in = io::load(cfg.input);
    AmbientPoint p0{io::get_array<3>(io::need(in, "x"), "x"), io::get_theta(in)};
    ModularWord w = ModularWord::parse(in.value("word", std::string()));
    int n = in.value("n", 0);
    const double tol = cfg.tol_or(1e-8);
    auto steps = orbit(p0, w, n);
    const cplx f0 = eval_f(p0.x, p0.theta);
    std::string s = "step,x1_re,x1_im,x2_re,x2_im,x3_re,x3_im,f_residual\n";
    bool ok = true;
    for (size_t k = 0; k < steps.size(); ++k) {
        auto& st = steps[k];
        s += std::to_string(k);
        for (auto& z : st.point.x) s += "," + csv_cplx(z);
        s += "," + num(st.residual) + "\n";
        // f is conserved along the orbit
        double sc = std::max({1.0, std::abs(f0), std::pow(max_abs(st.point.x), 3)});
        ok = ok && std::abs(eval_f(st.point.x, st.point.theta) - f0) / sc <= tol;
    }
    emit(cfg, s);
    log(1, "orbit: %zu rows, residual check %s", steps.size(), ok ? "ok" : "FAILED");
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- flow

TimePath get_path(const json& in, const PhasePoint& pt) {
    TimePath path;
    path.vertices.push_back(pt.t);
    if (in.contains("to")) {
        path.vertices.push_back(io::get_array<3>(in["to"], "to"));
    } else {
        const json& v = io::need(in, "path");
        if (!v.is_array()) throw Error(ErrorKind::Parse, "path: expected an array of time triples");
        for (auto& t : v) path.vertices.push_back(io::get_array<3>(t, "path vertex"));
    }
    return path;
}

bool pvi_applicable(const Trajectory& tr) {
    for (auto& s : tr.samples)
        if (std::abs(s.t[0]) > 1e-12 || std::abs(s.t[1] - 1.0) > 1e-12 || s.dt_ds[0] != cplx(0) ||
            s.dt_ds[1] != cplx(0) || s.dt_ds[2] == cplx(0))
            return false;
    return true;
}

int cmd_flow(const RunConfig& cfg) {
    json in = io::load(cfg.input);
    PhasePoint pt = io::get_phase_point(in);
    TimePath path = get_path(in, pt);
    const double tol = cfg.tol_or(1e-6);
    Trajectory tr = integrate(pt, path, flow_options(cfg));
    std::vector<double> res;
    if (pvi_applicable(tr)) res = pvi_residual(tr);
    std::string s = "s,t3_re,t3_im,q_re,q_im,p_re,p_im,H1_re,H1_im,H2_re,H2_im,H3_re,H3_im,pvi_residual\n";
    double max_p = 0, max_res = 0;
    for (size_t k = 0; k < tr.samples.size(); ++k) {
        PhasePoint x = tr.at(k);
        s += num(tr.samples[k].s) + "," + csv_cplx(x.t[2]) + "," + csv_cplx(x.q) + "," + csv_cplx(x.p);
        for (int i = 1; i <= 3; ++i) s += "," + csv_cplx(hamiltonian(i, x));
        s += "," + (res.empty() ? std::string() : num(res[k])) + "\n";
        max_p = std::max(max_p, std::abs(x.p));
        if (!res.empty()) max_res = std::max(max_res, res[k]);
    }
    emit(cfg, s);
    bool ok = res.empty() || max_res <= tol;
    // on the Riccati locus p must stay put
    if (std::abs(pt.kappa[0]) == 0 && pt.p == cplx(0)) ok = ok && max_p <= 1e-8;
    log(1, "flow: %zu samples, max |p| %.3g, max pvi residual %s", tr.samples.size(), max_p,
        res.empty() ? "n/a" : num(max_res).c_str());
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- monodromy

int cmd_monodromy(const RunConfig& cfg) {
    json in = io::load(cfg.input);
    PhasePoint pt = io::get_phase_point(in);
    BraidWord braid = BraidWord::parse(in.value("braid", std::string("1 1")));
    Orientation o = orientation(cfg);
    const double tol = cfg.tol_or(1e-4);
    PhasePoint ret = nonlinear_monodromy(pt, braid, BraidRealization::HalfTwists, flow_options(cfg));
    SurfacePoint start = rh_point(pt), image = rh_point(ret);
    ModularWord w = braid_to_modular(braid, o);
    AmbientPoint modular = apply_word(w, AmbientPoint{start.x, start.theta});
    double dev = dist(image.x, modular.x);
    json out;
    out["input"] = to_json(pt);
    out["braid"] = braid.str();
    out["orientation"] = cfg.orientation;
    out["modular_word"] = w.str();
    out["return_point"] = to_json(ret);
    out["rh_start"] = to_json(start.x);
    out["rh_return"] = to_json(image.x);
    out["modular_image"] = to_json(modular.x);
    out["deviation"] = dev;
    out["tol"] = tol;
    out["ok"] = dev <= tol;
    emit(cfg, out.dump(2) + "\n");
    return dev <= tol ? 0 : 1;
}

// ---------------------------------------------------------------- backlund

int cmd_backlund(const RunConfig& cfg) {
    json in = io::load(cfg.input);
    PhasePoint pt = io::get_phase_point(in);
    BacklundWord w = BacklundWord::parse(in.value("word", std::string()));
    const double tol = cfg.tol_or(1e-12);
    PhasePoint img = apply_word(w, pt);
    ThetaVector th0 = rh_param(pt.kappa), th1 = rh_param(img.kappa);
    double sc = 1.0;
    for (auto& v : th0.th) sc = std::max(sc, std::abs(v));
    json out;
    out["input"] = to_json(pt);
    out["word"] = w.str();
    out["image"] = to_json(img);
    out["theta"] = to_json(th0);
    json checks;
    checks["theta_invariance"] = check(dist(th0, th1) / sc, tol);
    if (in.value("check_rh", false)) {
        Triple x0 = rh_point(pt).x, x1 = rh_point(img).x;
        out["rh_point"] = to_json(x0);
        out["rh_point_image"] = to_json(x1);
        checks["rh_invariance"] = check(dist(x0, x1) / std::max(1.0, max_abs(x0)), 1e-5);
    }
    out["checks"] = checks;
    out["ok"] = all_ok(checks);
    emit(cfg, out.dump(2) + "\n");
    return out["ok"].get<bool>() ? 0 : 1;
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(const RunConfig& cfg) {
    std::mt19937_64 eng(cfg.seed);
    auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng); };
    auto c = [&] { return cplx(uni(-1, 1), uni(-1, 1)); };
    std::ostringstream rep;
    int failed = 0;
    auto line = [&](bool ok, const char* name, double v, double tol) {
        char b[160];
        std::snprintf(b, sizeof b, "%s %-28s %.3e (tol %.0e)\n", ok ? "PASS" : "FAIL", name, v, tol);
        rep << b;
        failed += !ok;
    };

    // modular generators preserve f
    double fr = 0;
    for (int n = 0; n < 200; ++n) {
        AmbientPoint p{{c(), c(), c()}, {{c(), c(), c(), c()}}};
        cplx f0 = eval_f(p.x, p.theta);
        for (int g = 1; g <= 3; ++g) {
            AmbientPoint q = apply_generator(g, p);
            cplx f1 = eval_f(q.x, q.theta);
            fr = std::max(fr, std::abs(f1 - f0) / std::max(1.0, std::abs(f0)));
        }
    }
    line(fr <= 1e-12, "Fricke invariance", fr, 1e-12);

    // s_i^2 = id
    double inv = 0;
    for (int n = 0; n < 50; ++n) {
        PhasePoint pt;
        pt.kappa = ExponentVector::from_free(uni(-0.9, 0.9), uni(-0.9, 0.9), uni(-0.9, 0.9), uni(-0.9, 0.9));
        pt.q = cplx(uni(3, 4), uni(-1, 1));
        pt.p = cplx(uni(0.5, 1), uni(-1, 1));
        for (int i = 0; i <= 4; ++i) inv = std::max(inv, phase_distance(apply_word(BacklundWord{{i, i}}, pt), pt));
    }
    line(inv <= 1e-10, "Backlund involutions", inv, 1e-10);

    // the D4 point
    auto d4 = singular_points(rh_param(ExponentVector::from_components({0, 0, 0, 0, 1})));
    double d4dev = d4.points.size() == 1 && d4.points[0].type == AdeType::D4
                       ? dist(d4.points[0].x, Triple{2.0, 2.0, 2.0})
                       : INFINITY;
    line(d4dev <= 1e-8, "D4 singular point", d4dev, 1e-8);

    // one Riemann-Hilbert evaluation
    PhasePoint pt;
    pt.kappa = ExponentVector::from_free(uni(-0.9, 0.9), uni(-0.9, 0.9), uni(-0.9, 0.9), uni(-0.9, 0.9));
    pt.q = cplx(uni(0.3, 0.7), uni(0.3, 0.7));
    pt.p = c();
    RhReport r = rh_evaluate(pt);
    double fres = r.fricke_residual / std::max(1.0, std::pow(max_abs(r.x), 3));
    line(fres <= 1e-10, "RH Fricke residual", fres, 1e-10);

    // isomonodromy over a short segment
    double drift = INFINITY;
    try {
        PhasePoint end = integrate(pt, TimePath::segment(pt.t, {0.0, 1.0, cplx(2.1, 0.1)}), flow_options(cfg)).end();
        drift = dist(rh_point(end).x, r.x) / std::max(1.0, max_abs(r.x));
    } catch (const Error& e) {
        log(1, "isomonodromy draw failed: %s", e.what());
    }
    line(drift <= 1e-6, "isomonodromy drift", drift, 1e-6);

    rep << (failed ? "selftest FAILED\n" : "selftest passed\n");
    emit(cfg, rep.str());
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Painleve VI toolkit"};
    app.require_subcommand(1, 1);
    RunConfig cfg;
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--tol", cfg.tol, "tolerance for the command's checks")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for randomized batteries");
    app.add_option("--max-steps", cfg.max_steps, "integrator step budget")->check(CLI::PositiveNumber);
    app.add_option("--orientation", cfg.orientation, "braid to modular convention")
        ->check(CLI::IsMember({"fwd", "inv"}));

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&);
        bool needs_input;
    };
    const Sub subs[] = {
        {"classify", "wall status, stratum and singular points for kappa or theta", cmd_classify, true},
        {"rh", "Riemann-Hilbert image of a phase point", cmd_rh, true},
        {"orbit", "modular orbit as CSV", cmd_orbit, true},
        {"flow", "trajectory of the Hamiltonian flow as CSV", cmd_flow, true},
        {"monodromy", "return map of a pure braid against the modular action", cmd_monodromy, true},
        {"backlund", "apply a Backlund word", cmd_backlund, true},
        {"selftest", "seeded battery", cmd_selftest, false},
    };
    for (auto& s : subs) {
        auto* sc = app.add_subcommand(s.name, s.help);
        sc->fallthrough();
        if (s.needs_input) sc->add_option("--input,input", cfg.input, "JSON file or inline JSON")->required();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    for (auto& s : subs) {
        if (!app.got_subcommand(s.name)) continue;
        cfg.command = s.name;
        try {
            return s.run(cfg);
        } catch (const Error& e) {
            std::fprintf(stderr, "pvi_cli %s: %s\n", s.name, e.what());
            return e.kind() == ErrorKind::Parse ? 2 : 10 + int(e.kind());
        } catch (const nlohmann::json::exception& e) {
            std::fprintf(stderr, "pvi_cli %s: parse error: %s\n", s.name, e.what());
            return 2;
        }
    }
    return 2;
}
