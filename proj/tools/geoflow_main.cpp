// geoflow: radial curvature flows on equidistant tubes in hyperbolic space.
//
// Subcommands: simulate, classify, lifetime, area-law, envelope, sweep.
// All outputs embed a metadata block (tool version, parameter echo, the
// numeric constants in force) so results are reproducible byte-for-byte
// apart from the timestamp line.

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geoflow/classify.hpp"
#include "geoflow/constants.hpp"
#include "geoflow/errors.hpp"
#include "geoflow/gb2d.hpp"
#include "geoflow/radial_flow.hpp"
#include "geoflow/symfun.hpp"
#include "geoflow/tube.hpp"

using json = nlohmann::ordered_json;
using namespace geoflow;

namespace {

constexpr const char* kToolName = "geoflow";
constexpr const char* kToolVersion = "0.1.0";

// Direction note attached to every lifetime-classification output.  Some
// write-ups state the finite/infinite inequality with the opposite
// orientation; the exponent rule below is the one validated by quadrature.
constexpr const char* kDirectionNote =
    "lifetime direction: the flow runs forever exactly when the small-radius "
    "exponent e of the speed (h ~ (coth r)^e) satisfies e <= -1, equivalently "
    "|m-(n-k)| > |l-(n-k)|; derivations sometimes quote this inequality with "
    "the opposite orientation, so the exponent and an independent quadrature "
    "cross-check are both reported";

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t seed_from_env() {
    const char* s = std::getenv("GEOFLOW_SEED");
    if (!s || !*s) return kDefaultSeed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0')
        throw DomainError("GEOFLOW_SEED must be a nonnegative integer, got '" + std::string(s) +
                          "'");
    return static_cast<std::uint64_t>(v);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Shortest decimal form that round-trips to the same double; header lines
// use this for readability while data rows keep the fixed 17-digit form.
std::string fmt_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

json constants_block() {
    json c;
    c["rel_tol"] = kDefaultRelTol;
    c["abs_tol"] = kDefaultAbsTol;
    c["r_floor"] = kRFloor;
    c["r_max"] = kRMax;
    c["speed_blowup_guard"] = kSpeedBlowup;
    c["extinction_refine_tol"] = kExtinctionRefineTol;
    c["quad_outer_abs_tol"] = kQuadAbsTol;
    c["quad_delta_max"] = kQuadDeltaMax;
    c["quad_panel_cutoff"] = kPanelCutoff;
    c["quad_panel_run"] = kPanelNonDecreaseRun;
    c["blowup_threshold_H"] = kBlowupThresholdH;
    c["envelope_eps"] = kEnvelopeEps;
    return c;
}

json tool_block() {
    json t;
    t["name"] = kToolName;
    t["version"] = kToolVersion;
    return t;
}

const char* termination_name(TerminationKind k) {
    switch (k) {
        case TerminationKind::ReachedTMax: return "reached_t_max";
        case TerminationKind::Extinction: return "extinction";
        case TerminationKind::Error: return "error";
    }
    return "?";
}

const char* parabolicity_name(Parabolicity p) {
    switch (p) {
        case Parabolicity::Parabolic: return "parabolic";
        case Parabolicity::BackwardsParabolic: return "backwards-parabolic";
        case Parabolicity::FirstOrder: return "first-order";
        case Parabolicity::Indefinite: return "indefinite";
    }
    return "?";
}

json termination_block(const Termination& term) {
    json t;
    t["kind"] = termination_name(term.kind);
    if (term.t_ext) t["t_ext"] = *term.t_ext;
    t["message"] = term.message;
    return t;
}

// ------------------------------------------------------------------ simulate

struct SimulateArgs {
    int n = 2;
    int k = 1;
    double r0 = 0.5;
    std::string speed = "harmonic";
    double t_max = 10.0;
    double out_step = 0.1;
    std::string format = "csv";
    std::string plot_path;
};

void write_csv(std::ostream& os, const SimulateArgs& a, std::uint64_t seed,
               const Trajectory& traj, const char* parabolicity) {
    os << "# " << kToolName << ' ' << kToolVersion << "\n";
    os << "# timestamp: " << iso_timestamp() << "\n";
    os << "# command: simulate\n";
    os << "# n=" << a.n << " k=" << a.k << " r0=" << fmt_shortest(a.r0) << " speed=\"" << a.speed
       << "\" t_max=" << fmt_shortest(a.t_max) << " out_step=" << fmt_shortest(a.out_step)
       << " format=" << a.format << " seed=" << seed << "\n";
    os << "# rel_tol=" << fmt_shortest(kDefaultRelTol) << " abs_tol=" << fmt_shortest(kDefaultAbsTol)
       << " r_floor=" << fmt_shortest(kRFloor) << " r_max=" << fmt_shortest(kRMax)
       << " speed_blowup_guard=" << fmt_shortest(kSpeedBlowup) << "\n";
    os << "# parabolicity: " << parabolicity << "\n";
    os << "# termination: " << termination_name(traj.termination.kind);
    if (traj.termination.t_ext) os << " t_ext=" << fmt17(*traj.termination.t_ext);
    if (!traj.termination.message.empty()) os << " (" << traj.termination.message << ")";
    os << "\n";
    os << "t,r,F,H,K,area_factor,conserved\n";
    for (const FlowSample& s : traj.samples) {
        os << fmt17(s.t) << ',' << fmt17(s.state.r) << ',' << fmt17(s.state.F) << ','
           << fmt17(s.state.H) << ',' << fmt17(s.state.K) << ',' << fmt17(s.state.area_factor)
           << ',' << fmt17(s.conserved) << "\n";
    }
}

json trajectory_json(const SimulateArgs& a, std::uint64_t seed, const Trajectory& traj,
                     const char* parabolicity) {
    json out;
    out["tool"] = tool_block();
    out["timestamp"] = iso_timestamp();
    out["command"] = "simulate";
    json params;
    params["n"] = a.n;
    params["k"] = a.k;
    params["r0"] = a.r0;
    params["speed"] = a.speed;
    params["t_max"] = a.t_max;
    params["out_step"] = a.out_step;
    params["format"] = a.format;
    params["seed"] = seed;
    out["params"] = params;
    out["constants"] = constants_block();
    out["parabolicity"] = parabolicity;
    out["termination"] = termination_block(traj.termination);
    json samples = json::array();
    for (const FlowSample& s : traj.samples) {
        json row;
        row["t"] = s.t;
        row["r"] = s.state.r;
        row["F"] = s.state.F;
        row["H"] = s.state.H;
        row["K"] = s.state.K;
        row["area_factor"] = s.state.area_factor;
        row["conserved"] = s.conserved;
        samples.push_back(std::move(row));
    }
    out["samples"] = std::move(samples);
    return out;
}

// Minimal static line chart of r(t) and F(t); a convenience view only.
void write_svg(const std::string& path, const Trajectory& traj) {
    if (traj.samples.empty()) throw ComputeError("no samples to plot");
    const int W = 640, H = 400, ML = 56, MR = 16, MT = 24, MB = 40;
    double tmax = traj.samples.back().t;
    if (tmax <= 0.0) tmax = 1.0;
    double ymax = 0.0;
    for (const FlowSample& s : traj.samples) {
        ymax = std::max(ymax, s.state.r);
        ymax = std::max(ymax, s.state.F);
    }
    if (ymax <= 0.0) ymax = 1.0;
    const auto X = [&](double t) { return ML + (W - ML - MR) * (t / tmax); };
    const auto Y = [&](double v) { return H - MB - (H - MT - MB) * (v / ymax); };
    const auto polyline = [&](auto field) {
        std::ostringstream pts;
        for (const FlowSample& s : traj.samples)
            pts << X(s.t) << ',' << Y(field(s)) << ' ';
        return pts.str();
    };
    std::ofstream os(path);
    if (!os) throw ComputeError("cannot open plot file: " + path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
       << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
       << "<line x1=\"" << ML << "\" y1=\"" << (H - MB) << "\" x2=\"" << (W - MR) << "\" y2=\""
       << (H - MB) << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << (H - MB)
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << (W / 2) << "\" y=\"" << (H - 8) << "\" font-size=\"12\" "
          "text-anchor=\"middle\">t</text>\n"
       << "<text x=\"14\" y=\"" << (H / 2) << "\" font-size=\"12\" text-anchor=\"middle\" "
          "transform=\"rotate(-90 14 " << (H / 2) << ")\">r, F</text>\n"
       << "<text x=\"" << (ML + 4) << "\" y=\"" << (MT - 6) << "\" font-size=\"11\">r(t) blue, "
          "F(t) red; y-max=" << fmt17(ymax) << ", t-max=" << fmt17(tmax) << "</text>\n"
       << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\""
       << polyline([](const FlowSample& s) { return s.state.r; }) << "\"/>\n"
       << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\""
       << polyline([](const FlowSample& s) { return s.state.F; }) << "\"/>\n"
       << "</svg>\n";
}

int run_simulate(const SimulateArgs& a) {
    const std::uint64_t seed = seed_from_env();
    const SpeedExpr speed = parse_speed(a.speed);
    const ParabolicityReport par =
        check_parabolic(speed, a.n, 100, seed);
    FlowProblem problem{TubeConfig{a.n, a.k}, a.r0, speed};
    const Trajectory traj = integrate(problem, a.t_max, a.out_step);
    if (a.format == "csv") {
        write_csv(std::cout, a, seed, traj, parabolicity_name(par.verdict));
    } else {
        std::cout << trajectory_json(a, seed, traj, parabolicity_name(par.verdict)).dump(2)
                  << "\n";
    }
    if (!a.plot_path.empty()) write_svg(a.plot_path, traj);
    return traj.termination.kind == TerminationKind::Error ? 1 : 0;
}

// ------------------------------------------------- classify / lifetime / sweep

json classification_json(const LifetimeClassification& c) {
    json r;
    r["verdict"] = to_string(c.verdict);
    r["exponent"] = c.exponent;
    if (c.verdict == LifetimeVerdict::Finite) r["t0"] = c.t0;
    if (c.verdict == LifetimeVerdict::Degenerate) r["reason"] = c.reason;
    r["panels"] = c.panels;
    if (c.agreement) {
        json a;
        a["exact_exponent"] = c.agreement->exact_exponent;
        a["numeric_exponent"] = c.agreement->numeric_exponent;
        a["exponent_verdict"] = to_string(c.agreement->exponent_verdict);
        a["quadrature_verdict"] = to_string(c.agreement->quadrature_verdict);
        a["agree"] = c.agreement->agree;
        r["agreement"] = a;
    }
    return r;
}

int run_classify(int n, int k, int m, int l, double r0) {
    const std::uint64_t seed = seed_from_env();
    const LifetimeClassification c = classify_lifetime(n, k, m, l, r0);
    json out;
    out["tool"] = tool_block();
    out["timestamp"] = iso_timestamp();
    out["command"] = "classify";
    json params;
    params["n"] = n;
    params["k"] = k;
    params["m"] = m;
    params["l"] = l;
    params["r0"] = r0;
    params["seed"] = seed;
    out["params"] = params;
    out["constants"] = constants_block();
    out["note"] = kDirectionNote;
    out["result"] = classification_json(c);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_lifetime(int n, int k, const std::string& speed_text, double r0) {
    const std::uint64_t seed = seed_from_env();
    const SpeedExpr speed = parse_speed(speed_text);
    const ParabolicityReport par = check_parabolic(speed, n, 100, seed);
    FlowProblem problem{TubeConfig{n, k}, r0, speed};
    const LifetimeClassification c = lifetime_quadrature(problem);
    const double num_exp = numeric_exponent(problem.cfg, problem.speed);
    json out;
    out["tool"] = tool_block();
    out["timestamp"] = iso_timestamp();
    out["command"] = "lifetime";
    json params;
    params["n"] = n;
    params["k"] = k;
    params["speed"] = speed_text;
    params["r0"] = r0;
    params["seed"] = seed;
    out["params"] = params;
    out["constants"] = constants_block();
    out["parabolicity"] = parabolicity_name(par.verdict);
    out["note"] = kDirectionNote;
    json r = classification_json(c);
    r["numeric_exponent"] = num_exp;
    out["result"] = std::move(r);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_sweep(int n_max, double r0, const std::string& output) {
    const std::uint64_t seed = seed_from_env();
    if (n_max < 1 || n_max > 6) throw DomainError("sweep requires 1 <= n_max <= 6");
    json records = json::array();
    bool all_agree = true;
    for (int n = 1; n <= n_max; ++n)
        for (int k = 0; k <= n; ++k)
            for (int m = 0; m <= n; ++m)
                for (int l = 0; l <= n; ++l) {
                    const LifetimeClassification c = classify_lifetime(n, k, m, l, r0);
                    json rec;
                    rec["n"] = n;
                    rec["k"] = k;
                    rec["m"] = m;
                    rec["l"] = l;
                    rec["exponent"] = static_cast<int>(c.exponent);
                    rec["verdict"] = to_string(c.verdict);
                    if (c.verdict == LifetimeVerdict::Finite) rec["t0"] = c.t0;
                    rec["agreement"] = c.agreement && c.agreement->agree;
                    all_agree = all_agree && c.agreement && c.agreement->agree;
                    records.push_back(std::move(rec));
                }
    json out;
    out["tool"] = tool_block();
    out["timestamp"] = iso_timestamp();
    out["command"] = "sweep";
    json params;
    params["n_max"] = n_max;
    params["r0"] = r0;
    params["output"] = output;
    params["seed"] = seed;
    out["params"] = params;
    out["constants"] = constants_block();
    out["note"] = kDirectionNote;
    out["records"] = std::move(records);
    std::ofstream os(output);
    if (!os) throw ComputeError("cannot open output file: " + output);
    os << out.dump(2) << "\n";
    std::cout << "wrote " << out["records"].size() << " records to " << output
              << "; all agreement flags true: " << (all_agree ? "yes" : "no") << "\n";
    return 0;
}

// ------------------------------------------------------- area-law / envelope

int run_area_law(int genus, double v0, const std::vector<double>& t_opt) {
    const SurfaceCase sc = classify_surface(genus, v0);
    json out;
    out["tool"] = tool_block();
    out["timestamp"] = iso_timestamp();
    out["command"] = "area-law";
    json params;
    params["genus"] = genus;
    params["v0"] = v0;
    if (!t_opt.empty()) params["t"] = t_opt.front();
    out["params"] = params;
    out["constants"] = constants_block();
    json r;
    r["case"] = to_string(sc.which);
    r["c0"] = sc.c0;
    r["limit_area"] = sc.limit_area;
    if (sc.extinction_time) r["extinction"] = *sc.extinction_time;
    r["nonexistent_under_F_half"] = sc.nonexistence_flag;
    if (!t_opt.empty()) {
        r["t"] = t_opt.front();
        r["area"] = area_law(sc, t_opt.front());
    }
    out["result"] = std::move(r);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_envelope(int n, int k, double r0, double t_max) {
    const SpeedExpr speed = parse_speed("harmonic");
    FlowProblem problem{TubeConfig{n, k}, r0, speed};
    const Trajectory traj = integrate(problem, t_max, 0.1);
    const EnvelopeReport rep = check_envelopes(traj);
    json out;
    out["tool"] = tool_block();
    out["timestamp"] = iso_timestamp();
    out["command"] = "envelope";
    json params;
    params["n"] = n;
    params["k"] = k;
    params["r0"] = r0;
    params["t_max"] = t_max;
    out["params"] = params;
    out["constants"] = constants_block();
    json r;
    r["ok"] = rep.ok;
    r["f0"] = rep.f0;
    r["h0"] = rep.h0;
    r["f_final"] = rep.f_final;
    r["samples"] = rep.samples;
    json viols = json::array();
    for (const EnvelopeViolation& v : rep.violations) {
        json vj;
        vj["t"] = v.t;
        vj["bound"] = v.bound;
        vj["value"] = v.value;
        vj["limit"] = v.limit;
        viols.push_back(std::move(vj));
    }
    r["violations"] = std::move(viols);
    out["result"] = std::move(r);
    std::cout << out.dump(2) << "\n";
    return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial curvature flows on equidistant tubes in hyperbolic space"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "integrate a radial flow and emit samples");
    simulate->add_option("--n", sim.n, "hypersurface dimension")->capture_default_str();
    simulate->add_option("--k", sim.k, "core dimension")->capture_default_str();
    simulate->add_option("--r0", sim.r0, "initial tube radius")->capture_default_str();
    simulate->add_option("--speed", sim.speed, "speed expression")->capture_default_str();
    simulate->add_option("--t-max", sim.t_max, "time horizon")->capture_default_str();
    simulate->add_option("--out-step", sim.out_step, "output grid step")->capture_default_str();
    simulate->add_option("--format", sim.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    simulate->add_option("--plot", sim.plot_path, "write an SVG chart to this path");

    int cn = 2, ck = 1, cm = 0, cl_ = 0;
    double cr0 = 0.5;
    CLI::App* classify = app.add_subcommand("classify", "finite/infinite lifetime for S_m/S_l");
    classify->add_option("--n", cn, "hypersurface dimension")->capture_default_str();
    classify->add_option("--k", ck, "core dimension")->capture_default_str();
    classify->add_option("--m", cm, "numerator index")->required();
    classify->add_option("--l", cl_, "denominator index")->required();
    classify->add_option("--r0", cr0, "initial tube radius")->capture_default_str();

    int ln = 2, lk = 1;
    double lr0 = 0.5;
    std::string lspeed = "harmonic";
    CLI::App* lifetime = app.add_subcommand("lifetime", "lifetime quadrature for a parsed speed");
    lifetime->add_option("--n", ln, "hypersurface dimension")->capture_default_str();
    lifetime->add_option("--k", lk, "core dimension")->capture_default_str();
    lifetime->add_option("--speed", lspeed, "speed expression")->capture_default_str();
    lifetime->add_option("--r0", lr0, "initial tube radius")->capture_default_str();

    int genus = 0;
    double v0 = 1.0;
    std::vector<double> area_t;
    CLI::App* area = app.add_subcommand("area-law", "Gauss-Bonnet area law by genus");
    area->add_option("--genus", genus, "surface genus")->required();
    area->add_option("--v0", v0, "initial area")->required();
    area->add_option("--t", area_t, "evaluate the area at this time")->expected(0, 1);

    int en = 2, ek = 1;
    double er0 = 0.5, et_max = 10.0;
    CLI::App* envelope = app.add_subcommand("envelope", "envelope containment along a flow");
    envelope->add_option("--n", en, "hypersurface dimension")->capture_default_str();
    envelope->add_option("--k", ek, "core dimension")->capture_default_str();
    envelope->add_option("--r0", er0, "initial tube radius")->capture_default_str();
    envelope->add_option("--t-max", et_max, "time horizon")->capture_default_str();

    int n_max = 2;
    double sr0 = 0.5;
    std::string sweep_out;
    CLI::App* sweep = app.add_subcommand("sweep", "exhaustive S_m/S_l lifetime atlas");
    sweep->add_option("--n-max", n_max, "largest dimension")->capture_default_str();
    sweep->add_option("--r0", sr0, "initial tube radius")->capture_default_str();
    sweep->add_option("--output", sweep_out, "output JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return 2;
    }

    try {
        if (*simulate) return run_simulate(sim);
        if (*classify) return run_classify(cn, ck, cm, cl_, cr0);
        if (*lifetime) return run_lifetime(ln, lk, lspeed, lr0);
        if (*area) return run_area_law(genus, v0, area_t);
        if (*envelope) return run_envelope(en, ek, er0, et_max);
        if (*sweep) return run_sweep(n_max, sr0, sweep_out);
    } catch (const ParseError& e) {
        std::cerr << "error (speed expression): " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error (arguments): " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error (computation): " << e.what() << "\n";
        return 1;
    }
    return 2;
}
