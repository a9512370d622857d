// radshock — traveling-wave shock profiles for a radiating gamma-law gas.
//
// Subcommands:
//   profile    build, verify, and serialize one shock profile
//   sweep      tabulate summaries over amplitude and/or gamma lists
//   baby       the scalar radiating-Burgers pipeline (f == 1 oracle)
//   verify     recompute all residual gates from a profile file alone
//   expansion  near-corner expansion coefficients w_k, b_k
//
// Exit codes: 0 success, 2 validation refusal (gamma/discriminant/Lax/usage),
// 3 numerical failure or failed verification gate, 4 I/O.

#include <CLI11.hpp>
#include <json.hpp>

#include "radshock/baby_model.hpp"
#include "radshock/gas_rh.hpp"
#include "radshock/profile_core.hpp"
#include "radshock/profile_glue.hpp"
#include "radshock/profile_io.hpp"
#include "radshock/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>
#include <vector>

using json = nlohmann::ordered_json;
using namespace radshock;

namespace {

struct RunConfig {
    GasState left{1.0, 0.0, 1.0};
    GasConstants consts{1.4, 1.0};
    std::vector<double> a_list{1e-3};
    std::vector<double> gamma_list; // empty: use consts.gamma
    int expansion_order = 3;
    IntegrateOptions integ;
    GlueOptions glue_opts;
    double edge_tol = 1e-10;
    double ode_dxi_factor = 0.015; // * a/|w0|, grid for the ODE residual
    double resample_dxi = 0.0;     // uniform output grid; 0 = native grid
    double tol_scale = 1.0;
    std::string out_dir = "out";
    std::string format = "csv";
    bool full_sweep = false;
};

void apply_tol_scale(RunConfig& c) {
    const double s = c.tol_scale;
    if (s == 1.0) return;
    if (!(s > 0.0)) throw validation_error("config: tol_scale must be > 0");
    c.integ.rtol *= s;
    c.integ.atol *= s;
    c.integ.xi_quad_tol *= s * s; // scales the eta step cap by s
    c.integ.terminal_tol_factor *= s;
    c.integ.thin_min_dxi_factor *= s;
    c.ode_dxi_factor *= s;
}

void check_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw validation_error(std::string("config: ") + name + " must be finite");
}

RunConfig load_config(const std::string& path) {
    RunConfig c;
    if (path.empty()) return c;
    std::ifstream is(path);
    if (!is) throw io_error("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("config parse error: ") + e.what());
    }
    if (j.contains("left_state")) {
        auto& ls = j["left_state"];
        c.left.rho = ls.value("rho", c.left.rho);
        c.left.u = ls.value("u", c.left.u);
        c.left.e = ls.value("e", c.left.e);
    }
    c.consts.gamma = j.value("gamma", c.consts.gamma);
    c.consts.R = j.value("R", c.consts.R);
    if (j.contains("a")) {
        c.a_list.clear();
        if (j["a"].is_array())
            for (auto& v : j["a"]) c.a_list.push_back(v.get<double>());
        else
            c.a_list.push_back(j["a"].get<double>());
    }
    if (j.contains("gamma_list"))
        for (auto& v : j["gamma_list"]) c.gamma_list.push_back(v.get<double>());
    c.expansion_order = j.value("expansion_order", c.expansion_order);
    if (j.contains("integrator")) {
        auto& ji = j["integrator"];
        c.integ.rtol = ji.value("rtol", c.integ.rtol);
        c.integ.atol = ji.value("atol", c.integ.atol);
        c.integ.xi_quad_tol = ji.value("xi_quad_tol", c.integ.xi_quad_tol);
        c.integ.terminal_tol_factor =
            ji.value("terminal_tol_factor", c.integ.terminal_tol_factor);
        c.integ.start_offset_factor =
            ji.value("start_offset_factor", c.integ.start_offset_factor);
        c.integ.thin_min_dxi_factor =
            ji.value("thin_min_dxi_factor", c.integ.thin_min_dxi_factor);
    }
    if (j.contains("grid")) {
        auto& jg = j["grid"];
        c.edge_tol = jg.value("edge_tol", c.edge_tol);
        c.ode_dxi_factor = jg.value("ode_dxi_factor", c.ode_dxi_factor);
        c.resample_dxi = jg.value("resample_dxi", c.resample_dxi);
    }
    c.glue_opts.match_tol = j.value("glue_match_tol", c.glue_opts.match_tol);
    c.tol_scale = j.value("tol_scale", c.tol_scale);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.format = j.value("format", c.format);
    return c;
}

void validate_config(const RunConfig& c) {
    check_finite(c.left.rho, "left_state.rho");
    check_finite(c.left.u, "left_state.u");
    check_finite(c.left.e, "left_state.e");
    check_finite(c.consts.gamma, "gamma");
    check_finite(c.consts.R, "R");
    if (c.a_list.empty())
        throw validation_error("config: amplitude list must not be empty");
    for (double a : c.a_list) {
        check_finite(a, "a");
        if (!(a > 0.0)) throw validation_error("config: amplitudes must be > 0");
    }
    for (double g : c.gamma_list) check_finite(g, "gamma_list entry");
    if (c.expansion_order < 0)
        throw validation_error("config: expansion_order must be >= 0");
    if (c.format != "csv" && c.format != "json")
        throw validation_error("config: format must be csv or json");
}

json state_json(const GasState& s) {
    return json{{"rho", s.rho}, {"u", s.u}, {"e", s.e}};
}

// full pipeline for one (gamma, a); everything the summary needs
struct PipelineResult {
    ShockData shock;
    ReducedSystem sys;
    EquilibriumReport eq;
    Trajectory flat, sharp;
    Profile profile;
    ExpansionCoeffs coeffs;
    ExpansionFit fit;
    ResidualReport integral, ode;
    QCrossCheck qcross;
    double n_field = 0.0, n_field_ratio = 0.0;
    double tail_state = 0.0, tail_q = 0.0;
    int reg_order = 0;
    json gates;
    bool all_gates = false;
};

PipelineResult run_pipeline(const RunConfig& cfg, const GasConstants& k, double a) {
    GammaCondition gc = gamma_condition(k);
    if (!gc.ok) {
        std::ostringstream os;
        os << "gamma = " << k.gamma << " outside (1, " << gc.threshold
           << "): no smooth-profile theory at this adiabatic index";
        throw validation_error(os.str());
    }

    PipelineResult r;
    r.shock = shock_from_amplitude(cfg.left, k, a);
    r.sys = build_reduced(r.shock, k);
    r.eq = equilibria(r.sys);
    r.flat = integrate_manifold(r.sys, r.eq, ManifoldSide::flat, cfg.integ);
    r.sharp = integrate_manifold(r.sys, r.eq, ManifoldSide::sharp, cfg.integ);
    r.profile = glue(r.flat, r.sharp, r.sys, r.eq, cfg.glue_opts);
    reconstruct(r.profile, r.shock, k);

    ConvolutionOptions copts{cfg.edge_tol};
    r.integral = integral_residual(r.profile, copts);
    r.qcross = q_crosscheck(r.profile, copts);

    const double h_ode = cfg.ode_dxi_factor * (a / std::abs(r.eq.w0));
    Profile uni = resample_uniform(r.profile, h_ode);
    r.ode = ode_residual(uni);
    r.n_field = n_field_residual(uni);
    const double nf2 = n_field_residual(resample_uniform(r.profile, 0.5 * h_ode));
    r.n_field_ratio = nf2 > 0.0 ? r.n_field / nf2 : 4.0;

    const Profile& p = r.profile;
    double ts = 0.0;
    ts = std::max(ts, std::abs(p.rho.front() - r.shock.left.rho));
    ts = std::max(ts, std::abs(p.u.front() - r.shock.left.u));
    ts = std::max(ts, std::abs(p.e.front() - r.shock.left.e));
    ts = std::max(ts, std::abs(p.rho.back() - r.shock.right.rho));
    ts = std::max(ts, std::abs(p.u.back() - r.shock.right.u));
    ts = std::max(ts, std::abs(p.e.back() - r.shock.right.e));
    r.tail_state = ts;
    r.tail_q = std::max(std::abs(p.q.front()), std::abs(p.q.back()));

    int order = cfg.expansion_order;
    for (;;) {
        try {
            r.coeffs = expansion_coeffs(r.sys, order);
            break;
        } catch (const expansion_unavailable& e) {
            if (e.max_order < 1) throw;
            order = e.max_order;
        }
    }
    r.fit = expansion_fit(r.profile, r.coeffs);
    r.reg_order = regularity_order(r.sys);

    const bool g_int = r.integral.max_scaled <= 1e-5;
    const bool g_ode = r.ode.max_scaled <= 1e-4;
    const bool g_q = r.qcross.rel <= 1e-6;
    const bool g_n = r.n_field_ratio >= 2.0 || r.n_field <= 1e-12;
    const bool g_tail = r.tail_state <= 1e-6 && r.tail_q <= 1e-8;
    const bool g_glue = r.profile.glue_report.matched;
    const bool g_slope =
        std::abs(r.flat.terminal_slope - r.coeffs.w[1]) <=
            1e-4 * std::max(std::abs(r.coeffs.w[1]), std::abs(r.eq.w0)) &&
        std::abs(r.sharp.terminal_slope - r.coeffs.w[1]) <=
            1e-4 * std::max(std::abs(r.coeffs.w[1]), std::abs(r.eq.w0));
    r.gates = json{{"integral_residual", g_int}, {"ode_residual", g_ode},
                   {"q_crosscheck", g_q},        {"n_field", g_n},
                   {"tails", g_tail},            {"glue", g_glue},
                   {"tangency_slope", g_slope}};
    r.all_gates = g_int && g_ode && g_q && g_n && g_tail && g_glue && g_slope;
    return r;
}

json summary_json(const RunConfig& cfg, const GasConstants& k,
                  const PipelineResult& r) {
    NullclineData nc = nullclines(r.sys);
    json s;
    s["input"] = {{"left_state", state_json(cfg.left)},
                  {"gamma", k.gamma},
                  {"R", k.R},
                  {"a", r.sys.a}};
    LaxReport lax = lax_check(r.shock, k);
    s["shock"] = {{"sigma", r.shock.sigma},
                  {"j", r.shock.j},
                  {"C1", r.shock.C1},
                  {"C2", r.shock.C2},
                  {"v_minus", r.shock.v_minus},
                  {"v_plus", r.shock.v_plus},
                  {"a", r.shock.a},
                  {"right_state", state_json(r.shock.right)},
                  {"rh_residual", rh_residual(r.shock, k)},
                  {"lax_margins",
                   {{"subsonic_right", lax.margin_subsonic_right},
                    {"supersonic_right", lax.margin_supersonic_right},
                    {"supersonic_left", lax.margin_supersonic_left}}}};
    s["system"] = {{"f_coeffs", r.sys.f_coeffs},
                   {"f0", r.sys.f0()},
                   {"fprime0", r.sys.f_coeffs[1]},
                   {"discriminant", r.sys.f0() * r.sys.f0() - 2.0 * r.sys.a * r.sys.a}};
    s["equilibria"] = {{"w0", r.eq.w0},
                       {"mu1", r.eq.mu1},
                       {"mu2", r.eq.mu2},
                       {"nu1", r.eq.nu1},
                       {"nu2", r.eq.nu2},
                       {"lambda1", r.eq.lambda1},
                       {"lambda2", r.eq.lambda2},
                       {"b0", r.eq.b0},
                       {"vbar", nc.vbar()},
                       {"vbar_degenerate", nc.vbar_degenerate()}};
    auto traj = [](const Trajectory& t) {
        return json{{"steps", t.step_count},
                    {"samples", t.samples.size()},
                    {"terminal_error", t.terminal_error},
                    {"terminal_slope", t.terminal_slope},
                    {"xi_total", t.xi_total},
                    {"start_offset", t.start_offset},
                    {"w_min_count", t.w_min_count},
                    {"xi_quad_refinement_gap", t.xi_quad_refinement_gap},
                    {"ell1_estimate", t.ell1_estimate}};
    };
    s["trajectories"] = {{"flat", traj(r.flat)}, {"sharp", traj(r.sharp)}};
    s["glue"] = {{"wprime_minus", r.profile.glue_report.wprime_minus},
                 {"wprime_plus", r.profile.glue_report.wprime_plus},
                 {"wprime_target", r.profile.glue_report.wprime_target},
                 {"mismatch", r.profile.glue_report.mismatch}};
    s["residuals"] = {{"integral_scaled", r.integral.max_scaled},
                      {"ode_scaled", r.ode.max_scaled},
                      {"q_crosscheck_rel", r.qcross.rel},
                      {"n_field", r.n_field},
                      {"n_field_refinement_ratio", r.n_field_ratio},
                      {"tail_state", r.tail_state},
                      {"tail_q", r.tail_q}};
    s["expansion"] = {{"order", r.coeffs.order},
                      {"w", r.coeffs.w},
                      {"b", r.coeffs.b},
                      {"w1_fit", r.fit.w1_fit},
                      {"w2_fit", r.fit.w2_fit}};
    s["regularity_order"] = r.reg_order;
    GammaCondition gc = gamma_condition(k);
    s["gamma_condition"] = {{"ok", gc.ok}, {"margin", gc.margin}};
    ValidityReport vr = check_hypotheses(r.sys);
    json hyp = json::array();
    for (auto& c : vr.checks)
        hyp.push_back({{"name", c.name}, {"ok", c.ok}, {"margin", c.margin}});
    s["hypotheses"] = hyp;
    s["gates"] = r.gates;
    s["all_gates"] = r.all_gates;
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    os << text;
    if (!os) throw io_error("write failed: " + path);
}

void write_profile_output(const Profile& p, const RunConfig& cfg,
                          const std::string& stem) {
    std::filesystem::create_directories(cfg.out_dir);
    const Profile* out = &p;
    Profile resampled;
    if (cfg.resample_dxi > 0.0) {
        resampled = resample_uniform(p, cfg.resample_dxi);
        if (!resampled.sys.is_gas) {
            const double a = resampled.sys.a;
            resampled.q.resize(resampled.size());
            for (std::size_t i = 0; i < resampled.size(); ++i)
                resampled.q[i] = 0.5 * (a - resampled.v_hat[i]) *
                                 (a + resampled.v_hat[i]);
        }
        out = &resampled;
    }
    if (cfg.format == "csv") {
        write_profile_csv_file(*out, cfg.out_dir + "/" + stem + ".csv");
    } else {
        json j;
        j["kind"] = out->sys.is_gas ? "gas" : "baby";
        j["a"] = out->sys.a;
        j["f_coeffs"] = out->sys.f_coeffs;
        if (out->sys.is_gas) {
            j["gamma"] = out->sys.gamma;
            j["R"] = out->sys.R;
            j["j"] = out->sys.j;
            j["C1"] = out->sys.C1;
            j["C2"] = out->C2;
            j["sigma"] = out->sigma;
            j["v_minus"] = out->v_minus;
            j["v_plus"] = out->v_plus;
        }
        j["columns"] = {{"xi", out->xi}, {"v_hat", out->v_hat}, {"w", out->w}};
        if (out->has_fields) {
            j["columns"]["v"] = out->v;
            j["columns"]["rho"] = out->rho;
            j["columns"]["u"] = out->u;
            j["columns"]["e"] = out->e;
            j["columns"]["theta"] = out->theta;
            j["columns"]["P"] = out->P;
            j["columns"]["q"] = out->q;
            j["columns"]["n"] = out->n;
        } else if (!out->q.empty()) {
            j["columns"]["q"] = out->q;
        }
        write_text(cfg.out_dir + "/" + stem + ".json", j.dump(2) + "\n");
    }
}

int cmd_profile(const RunConfig& cfg) {
    PipelineResult r = run_pipeline(cfg, cfg.consts, cfg.a_list.front());
    write_profile_output(r.profile, cfg, "profile");
    json s = summary_json(cfg, cfg.consts, r);
    s["profile_file"] = std::string("profile.") + (cfg.format == "csv" ? "csv" : "json");
    s["rows"] = r.profile.size();
    std::filesystem::create_directories(cfg.out_dir);
    write_text(cfg.out_dir + "/summary.json", s.dump(2) + "\n");
    std::cout << s.dump(2) << "\n";
    return r.all_gates ? 0 : 3;
}

struct SweepRow {
    double gamma = 0.0, a = 0.0;
    std::string status; // "ok" or the error message
    json summary;       // fast fields always; residuals in full mode
};

int cmd_sweep(const RunConfig& cfg) {
    std::vector<double> gammas =
        cfg.gamma_list.empty() ? std::vector<double>{cfg.consts.gamma}
                               : cfg.gamma_list;
    std::vector<std::pair<double, double>> grid;
    for (double g : gammas)
        for (double a : cfg.a_list) grid.push_back({g, a});

    std::vector<SweepRow> rows(grid.size());

    unsigned n_threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("RADSHOCK_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n_threads = static_cast<unsigned>(v);
    }
    n_threads = std::max(1u, std::min<unsigned>(n_threads, grid.size()));

    auto run_row = [&](std::size_t i) {
        auto [g, a] = grid[i];
        SweepRow& row = rows[i];
        row.gamma = g;
        row.a = a;
        GasConstants k{g, cfg.consts.R};
        json s;
        s["gamma"] = g;
        s["a"] = a;
        try {
            GammaCondition gc = gamma_condition(k);
            s["gamma_condition_ok"] = gc.ok;
            if (k.gamma > 1.0) {
                SmallShockLimits lim = small_shock_limits(cfg.left, k);
                s["fprime0_limit"] = lim.fprime0_limit;
                s["f0_limit"] = lim.f0_limit;
            }
            if (cfg.full_sweep) {
                RunConfig c2 = cfg;
                c2.consts = k;
                PipelineResult r = run_pipeline(c2, k, a);
                s.update(summary_json(c2, k, r));
                row.status = r.all_gates ? "ok" : "gate-failure";
            } else {
                if (!gamma_condition(k).ok)
                    throw validation_error("gamma outside the smooth-profile range");
                ShockData shock = shock_from_amplitude(cfg.left, k, a);
                ReducedSystem sys = build_reduced(shock, k);
                EquilibriumReport eq = equilibria(sys);
                s["sigma"] = shock.sigma;
                s["j"] = shock.j;
                s["C1"] = shock.C1;
                s["C2"] = shock.C2;
                s["f0"] = sys.f0();
                s["fprime0"] = sys.f_coeffs[1];
                s["w0"] = eq.w0;
                s["regularity_order"] = regularity_order(sys);
                ValidityReport vr = check_hypotheses(sys);
                s["hypotheses_ok"] = vr.all_ok;
                s["first_failure"] = vr.first_failure;
                row.status = "ok";
            }
            row.summary = std::move(s);
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
            row.summary = std::move(s); // keep the limit diagnostics
        }
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            run_row(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::filesystem::create_directories(cfg.out_dir);
    // CSV table, deterministic row order
    std::ostringstream csv;
    csv << "gamma,a,status,sigma,j,C1,C2,f0,fprime0,fprime0_limit,w0,"
           "regularity_order\n";
    char buf[64];
    auto num = [&](const json& s, const char* key) -> std::string {
        if (!s.contains(key)) return "";
        std::snprintf(buf, sizeof(buf), "%.17g", s[key].get<double>());
        return buf;
    };
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g", row.gamma);
        csv << buf << ",";
        std::snprintf(buf, sizeof(buf), "%.17g", row.a);
        csv << buf << "," << (row.status == "ok" ? "ok" : "error") << ","
            << num(row.summary, "sigma") << "," << num(row.summary, "j") << ","
            << num(row.summary, "C1") << "," << num(row.summary, "C2") << ","
            << num(row.summary, "f0") << "," << num(row.summary, "fprime0")
            << "," << num(row.summary, "fprime0_limit") << ","
            << num(row.summary, "w0") << ",";
        if (row.summary.contains("regularity_order"))
            csv << row.summary["regularity_order"].get<int>();
        csv << "\n";
    }
    write_text(cfg.out_dir + "/sweep.csv", csv.str());

    json out = json::array();
    for (const auto& row : rows) {
        json r = row.summary;
        r["status"] = row.status;
        out.push_back(std::move(r));
    }
    write_text(cfg.out_dir + "/sweep.json", out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_baby(const RunConfig& cfg) {
    const double a = cfg.a_list.front();
    ReducedSystem sys = baby_reduced(a);
    EquilibriumReport eq = equilibria(sys);
    Trajectory flat = integrate_manifold(sys, eq, ManifoldSide::flat, cfg.integ);
    Trajectory sharp = integrate_manifold(sys, eq, ManifoldSide::sharp, cfg.integ);
    Profile p = glue(flat, sharp, sys, eq, cfg.glue_opts);
    p.q.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p.q[i] = 0.5 * (a - p.v_hat[i]) * (a + p.v_hat[i]);

    const double energy = baby_energy_residual(p, ConvolutionOptions{cfg.edge_tol});
    const bool g_energy = energy <= 1e-8;
    const bool g_glue = p.glue_report.matched;

    write_profile_output(p, cfg, "baby_profile");
    json s;
    s["input"] = {{"a", a}};
    s["w0"] = eq.w0;
    s["w0_closed_form"] = -a * a / (1.0 + std::sqrt(1.0 - 2.0 * a * a));
    s["mu2"] = eq.mu2;
    s["lambda2"] = eq.lambda2;
    s["regularity_order"] = regularity_order(sys);
    s["energy_residual"] = energy;
    s["glue"] = {{"wprime_minus", p.glue_report.wprime_minus},
                 {"wprime_plus", p.glue_report.wprime_plus},
                 {"wprime_target", p.glue_report.wprime_target}};
    s["expansion"] = {{"w", expansion_coeffs(sys, 2).w}};
    s["gates"] = {{"energy", g_energy}, {"glue", g_glue}};
    s["all_gates"] = g_energy && g_glue;
    std::filesystem::create_directories(cfg.out_dir);
    write_text(cfg.out_dir + "/baby_summary.json", s.dump(2) + "\n");
    std::cout << s.dump(2) << "\n";
    return (g_energy && g_glue) ? 0 : 3;
}

int cmd_verify(const std::string& file, const RunConfig& cfg) {
    Profile p = read_profile_csv_file(file);
    json s;
    s["file"] = file;
    s["kind"] = p.sys.is_gas ? "gas" : "baby";
    s["rows"] = p.size();
    bool ok = true;
    ConvolutionOptions copts{cfg.edge_tol};
    if (p.sys.is_gas) {
        ResidualReport ir = integral_residual(p, copts);
        QCrossCheck qc = q_crosscheck(p, copts);
        EquilibriumReport eq = equilibria(p.sys);
        const double h_ode = cfg.ode_dxi_factor * (p.sys.a / std::abs(eq.w0));
        Profile uni = resample_uniform(p, h_ode);
        ResidualReport orr = ode_residual(uni);
        double nf = n_field_residual(uni);
        double nf2 = n_field_residual(resample_uniform(p, 0.5 * h_ode));
        double nratio = nf2 > 0.0 ? nf / nf2 : 4.0;
        s["residuals"] = {{"integral_scaled", ir.max_scaled},
                          {"ode_scaled", orr.max_scaled},
                          {"q_crosscheck_rel", qc.rel},
                          {"n_field", nf},
                          {"n_field_refinement_ratio", nratio}};
        json gates = {{"integral_residual", ir.max_scaled <= 1e-5},
                      {"ode_residual", orr.max_scaled <= 1e-4},
                      {"q_crosscheck", qc.rel <= 1e-6},
                      {"n_field", nratio >= 2.0 || nf <= 1e-12}};
        s["gates"] = gates;
        for (auto& [key, val] : gates.items()) ok = ok && val.get<bool>();
    } else {
        const double a = p.sys.a;
        double energy = baby_energy_residual(p, copts);
        double qcol = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            qcol = std::max(qcol, std::abs(p.q[i] - 0.5 * (a - p.v_hat[i]) *
                                                        (a + p.v_hat[i])));
        s["residuals"] = {{"energy_residual", energy},
                          {"q_column_mismatch", qcol}};
        json gates = {{"energy", energy <= 1e-8}, {"q_column", qcol <= 1e-12}};
        s["gates"] = gates;
        for (auto& [key, val] : gates.items()) ok = ok && val.get<bool>();
    }
    s["all_gates"] = ok;
    std::cout << s.dump(2) << "\n";
    return ok ? 0 : 3;
}

int cmd_expansion(const RunConfig& cfg, int order) {
    GasConstants k = cfg.consts;
    ShockData shock = shock_from_amplitude(cfg.left, k, cfg.a_list.front());
    ReducedSystem sys = build_reduced(shock, k);
    ExpansionCoeffs ec = expansion_coeffs(sys, order);
    json s;
    s["input"] = {{"gamma", k.gamma},
                  {"R", k.R},
                  {"a", cfg.a_list.front()},
                  {"order", order}};
    s["w"] = ec.w;
    s["b"] = ec.b;
    s["denominators"] = ec.denom;
    s["regularity_order"] = regularity_order(sys);
    std::cout << s.dump(2) << "\n";
    return 0;
}

json error_record(const char* code, const std::exception& e) {
    json j;
    j["error"] = {{"code", code}, {"message", e.what()}};
    if (const auto* nsp = dynamic_cast<const no_smooth_profile*>(&e)) {
        j["error"]["f0"] = nsp->f0;
        j["error"]["a"] = nsp->amplitude;
    }
    if (const auto* eu = dynamic_cast<const expansion_unavailable*>(&e))
        j["error"]["max_order"] = eu->max_order;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"traveling-wave shock profiles for a radiating gas"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<double> a_flag, gamma_flag;
    std::optional<double> gamma_one, R_flag, rho_flag, u_flag, e_flag;
    std::optional<double> resample_flag, tol_scale_flag;
    std::string out_flag, format_flag, verify_file;
    std::optional<int> order_flag;
    bool full_flag = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--a", a_flag, "amplitude(s), overrides config");
        sub->add_option("--gamma", gamma_one, "adiabatic index");
        sub->add_option("--R", R_flag, "gas constant");
        sub->add_option("--rho", rho_flag, "left-state density");
        sub->add_option("--u", u_flag, "left-state velocity");
        sub->add_option("--e", e_flag, "left-state internal energy");
        sub->add_option("--out", out_flag, "output directory");
        sub->add_option("--format", format_flag, "csv|json");
        sub->add_option("--resample", resample_flag,
                        "uniform output grid spacing (0 = native)");
        sub->add_option("--tol-scale", tol_scale_flag,
                        "scale all tolerances (0.5 = halved)");
    };

    CLI::App* sp = app.add_subcommand("profile", "compute one shock profile");
    add_common(sp);
    CLI::App* sw = app.add_subcommand("sweep", "summaries over (gamma, a) grids");
    add_common(sw);
    sw->add_option("--gamma-list", gamma_flag, "gamma values for the sweep");
    sw->add_flag("--full", full_flag, "run the full profile pipeline per row");
    CLI::App* sb = app.add_subcommand("baby", "scalar radiating-Burgers pipeline");
    add_common(sb);
    CLI::App* sv = app.add_subcommand("verify", "recompute residuals from a file");
    sv->add_option("file", verify_file, "profile csv")->required();
    add_common(sv);
    CLI::App* se = app.add_subcommand("expansion", "near-corner coefficients");
    add_common(se);
    se->add_option("--n", order_flag, "expansion order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are validation refusals
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (!a_flag.empty()) cfg.a_list = a_flag;
        if (gamma_one) cfg.consts.gamma = *gamma_one;
        if (R_flag) cfg.consts.R = *R_flag;
        if (rho_flag) cfg.left.rho = *rho_flag;
        if (u_flag) cfg.left.u = *u_flag;
        if (e_flag) cfg.left.e = *e_flag;
        if (!out_flag.empty()) cfg.out_dir = out_flag;
        if (!format_flag.empty()) cfg.format = format_flag;
        if (resample_flag) cfg.resample_dxi = *resample_flag;
        if (tol_scale_flag) cfg.tol_scale = *tol_scale_flag;
        if (!gamma_flag.empty()) cfg.gamma_list = gamma_flag;
        cfg.full_sweep = full_flag;
        validate_config(cfg);
        apply_tol_scale(cfg);

        if (sp->parsed()) return cmd_profile(cfg);
        if (sw->parsed()) return cmd_sweep(cfg);
        if (sb->parsed()) return cmd_baby(cfg);
        if (sv->parsed()) return cmd_verify(verify_file, cfg);
        if (se->parsed())
            return cmd_expansion(cfg, order_flag ? *order_flag
                                                  : cfg.expansion_order);
        return 2;
    } catch (const validation_error& e) {
        std::cout << error_record("validation", e).dump(2) << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cout << error_record("io", e).dump(2) << "\n";
        return 4;
    } catch (const numerical_error& e) {
        std::cout << error_record("numerical", e).dump(2) << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cout << error_record("internal", e).dump(2) << "\n";
        return 3;
    }
}
