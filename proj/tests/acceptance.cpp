// Acceptance suite: one line per criterion, computed at desk scale from
// closed-form oracles and cross-route checks. Exits nonzero on any failure.

#include "radshock/baby_model.hpp"
#include "radshock/gas_rh.hpp"
#include "radshock/profile_core.hpp"
#include "radshock/profile_glue.hpp"
#include "radshock/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

using namespace radshock;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", n,
                what.c_str(), detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

double direct_identity_residual(const ShockData& s, const GasConstants& k) {
    auto flux = [&](const GasState& st, double v, int i) {
        double P = (k.gamma - 1.0) * st.rho * st.e;
        if (i == 0) return st.rho * v;
        if (i == 1) return st.rho * v * v + P;
        return st.rho * v * (st.e + 0.5 * v * v) + P * v;
    };
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        double l = flux(s.left, s.v_minus, i);
        double r = flux(s.right, s.v_plus, i);
        worst = std::max(worst, std::abs(l - r) / std::max(std::abs(l), std::abs(r)));
    }
    return worst;
}

struct DeskCase {
    GasConstants k{1.4, 1.0};
    GasState left{1.0, 0.0, 1.0};
    ShockData shock;
    ReducedSystem sys;
    EquilibriumReport eq;
    Trajectory flat, sharp;
    Profile profile;
    ExpansionCoeffs coeffs;

    explicit DeskCase(const IntegrateOptions& opts = {}) {
        shock = shock_from_amplitude(left, k, 1e-3);
        sys = build_reduced(shock, k);
        eq = equilibria(sys);
        flat = integrate_manifold(sys, eq, ManifoldSide::flat, opts);
        sharp = integrate_manifold(sys, eq, ManifoldSide::sharp, opts);
        profile = glue(flat, sharp, sys, eq);
        reconstruct(profile, shock, k);
        coeffs = expansion_coeffs(sys, 4);
    }
};

} // namespace

int main() {
    // ---- 1. Rankine-Hugoniot exactness over random states
    {
        std::mt19937_64 rng(20260810);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double worst_rh = 0.0;
        bool lax_ok = true, comp_ok = true;
        int count = 0;
        for (int i = 0; i < 50; ++i) {
            GasState left{0.1 + 9.9 * U(rng), -5.0 + 10.0 * U(rng),
                          0.1 + 9.9 * U(rng)};
            for (double g : {1.2, 1.4, 5.0 / 3.0, 2.0}) {
                GasConstants k{g, 1.0};
                for (double a : {1e-4, std::pow(10.0, -4.0 + 2.0 * U(rng)), 1e-2}) {
                    ShockData s = shock_from_amplitude(left, k, a);
                    worst_rh = std::max(worst_rh, direct_identity_residual(s, k));
                    worst_rh = std::max(worst_rh, rh_residual(s, k));
                    lax_ok = lax_ok && lax_check(s, k).admissible;
                    comp_ok = comp_ok && s.right.rho > s.left.rho &&
                              0.0 < s.v_plus && s.v_plus < s.v_minus;
                    ++count;
                }
            }
        }
        report(1, "RH identities to 1e-12, Lax and compressivity",
               worst_rh <= 1e-12 && lax_ok && comp_ok,
               fmt("max residual %.3g over %g shocks", worst_rh, count));
    }

    // ---- 2. small-shock limits of (sigma, j, C1, C2) and f(0)
    {
        GasConstants k{1.4, 1.0};
        GasState left{1.0, 0.0, 1.0};
        SmallShockLimits lim = small_shock_limits(left, k);
        auto err = [&](double a) {
            ShockData s = shock_from_amplitude(left, k, a);
            double e = std::abs(s.sigma - lim.sigma);
            e = std::max(e, std::abs(s.j - lim.j));
            e = std::max(e, std::abs(s.C1 - lim.C1));
            e = std::max(e, std::abs(s.C2 - lim.C2));
            return e;
        };
        double p23 = std::log10(err(1e-2) / err(1e-3));
        double p34 = std::log10(err(1e-3) / err(1e-4));
        ShockData s3 = shock_from_amplitude(left, k, 1e-3);
        ReducedSystem sys3 = build_reduced(s3, k);
        double f0_rel = std::abs(sys3.f0() / lim.f0_limit - 1.0);
        report(2, "limit convergence order >= 0.9 and f(0) within 5%",
               p23 >= 0.9 && p34 >= 0.9 && f0_rel <= 0.05,
               fmt("orders %.3f, %.3f; f(0) off by %.2g", p23, p34, f0_rel));
    }

    // ---- 3. gamma threshold of the f'(0) sign
    {
        GasState left{1.0, 0.0, 1.0};
        auto sgn = [&](double g) {
            return small_shock_limits(left, GasConstants{g, 1.0}).fprime0_limit;
        };
        bool signs = sgn(1.5) > 0.0 && sgn(2.0) > 0.0 && sgn(2.2) > 0.0 &&
                     sgn(2.23) < 0.0 && sgn(2.5) < 0.0;
        double lo = 2.0, hi = 2.3;
        while (hi - lo > 1e-5) {
            double mid = 0.5 * (lo + hi);
            (sgn(mid) > 0.0 ? lo : hi) = mid;
        }
        bool bracket = lo >= 2.215 && hi <= 2.2155;
        report(3, "f'(0) sign pattern and threshold bracket",
               signs && bracket, fmt("bracket [%.6f, %.6f]", lo, hi));
    }

    // ---- desk case for criteria 4-9, 11
    DeskCase d;
    NullclineData nc = nullclines(d.sys);

    // ---- 4. heteroclinic construction
    {
        bool term = d.flat.terminal_error <= 1e-10 &&
                    d.sharp.terminal_error <= 1e-10;
        bool contain = true;
        for (const auto& s : d.flat.samples)
            contain = contain && s.V >= -1e-14 && s.V <= d.sys.a + 1e-14 &&
                      s.W <= 1e-14 && s.W >= nc.W1(s.V) - 1e-14;
        for (const auto& s : d.sharp.samples) {
            double floor_w =
                s.V <= nc.vbar() ? nc.W1(s.V) : nc.W1(nc.vbar());
            contain = contain && s.V <= 1e-14 && s.V >= -d.sys.a - 1e-14 &&
                      s.W <= 1e-14 && s.W >= floor_w - 1e-14;
        }
        bool mono = d.flat.v_monotone && d.sharp.v_monotone;
        bool minima = d.sharp.w_min_count == 1 && d.sharp.w_max_count == 0 &&
                      d.flat.w_min_count == 0;
        report(4, "heteroclinics reach (0, w0); containment; monotonicity",
               term && contain && mono && minima,
               fmt("terminal errors %.2g / %.2g; sharp W minima %g",
                   d.flat.terminal_error, d.sharp.terminal_error,
                   (double)d.sharp.w_min_count));
    }

    // ---- 5. C2 gluing
    {
        const GlueReport& g = d.profile.glue_report;
        double wp0 = g.wprime_target;
        bool mutual = std::abs(g.wprime_plus - g.wprime_minus) <=
                      1e-6 * std::abs(wp0);
        bool match = std::abs(g.wprime_minus - wp0) <= 1e-4 * std::abs(wp0) &&
                     std::abs(g.wprime_plus - wp0) <= 1e-4 * std::abs(wp0);
        report(5, "one-sided w'(0) agree to 1e-6 and match -f'(0)w0^2/(f0+3w0)",
               mutual && match,
               fmt("mismatch %.2e of |w'(0)| = %.3e", g.mismatch / std::abs(wp0),
                   std::abs(wp0)));
    }

    // ---- 6. integral-equation residual
    {
        ResidualReport ok = integral_residual(d.profile);
        Profile bad = d.profile;
        for (auto& v : bad.v_hat) v *= 1.01;
        bad.has_fields = false;
        reconstruct(bad, d.shock, d.k);
        ResidualReport corrupted = integral_residual(bad);
        report(6, "integral residual <= 1e-5 a^2; 1% corruption inflates >= 10x",
               ok.max_scaled <= 1e-5 &&
                   corrupted.max_scaled >= 10.0 * ok.max_scaled,
               fmt("residual %.3g, corrupted %.3g", ok.max_scaled,
                   corrupted.max_scaled));
    }

    // ---- 7. ODE residual with tolerance halving
    double h_ode = 0.015 * (d.sys.a / std::abs(d.eq.w0));
    {
        ResidualReport r1 = ode_residual(resample_uniform(d.profile, h_ode));
        DeskCase dh{IntegrateOptions{}.halved()};
        ResidualReport r2 =
            ode_residual(resample_uniform(dh.profile, 0.5 * h_ode));
        report(7, "ODE residual <= 1e-4 a^2, dropping >= 3x under halving",
               r1.max_scaled <= 1e-4 && r1.max_scaled / r2.max_scaled >= 3.0,
               fmt("residual %.3g, halved %.3g, ratio %.2f", r1.max_scaled,
                   r2.max_scaled, r1.max_scaled / r2.max_scaled));
    }

    // ---- 8. q cross-check and the n field
    {
        QCrossCheck qc = q_crosscheck(d.profile);
        Profile u1 = resample_uniform(d.profile, 0.2);
        Profile u2 = resample_uniform(d.profile, 0.1);
        double nf1 = n_field_residual(u1);
        double nf2 = n_field_residual(u2);
        bool n_ok = nf1 <= 1e-10 && nf1 / nf2 >= 2.0;
        report(8, "algebraic vs convolution q to 1e-6; -n''+n-theta^4 at O(h^2)",
               qc.rel <= 1e-6 && n_ok,
               fmt("q rel %.3g; n residual %.3g, refinement ratio %.2f", qc.rel,
                   nf1, nf1 / nf2));
    }

    // ---- 9. expansion theory
    {
        ExpansionFit fit = expansion_fit(d.profile, d.coeffs);
        double e1 = std::abs(fit.w1_fit / d.coeffs.w[1] - 1.0);
        double e2 = std::abs(fit.w2_fit / d.coeffs.w[2] - 1.0);
        double s1 = std::abs(d.flat.terminal_slope / d.coeffs.w[1] - 1.0);
        double s2 = std::abs(d.sharp.terminal_slope / d.coeffs.w[1] - 1.0);
        report(9, "fitted w1 (1e-3), w2 (1e-2); tangency slope vs w1 (1e-6)",
               e1 <= 1e-3 && e2 <= 1e-2 && s1 <= 1e-6 && s2 <= 1e-6,
               fmt("w1 off %.2g, w2 off %.2g, slopes off %.2g", e1, e2,
                   std::max(s1, s2)));
    }

    // ---- 10. baby-model oracle
    {
        ReducedSystem bsys = baby_reduced(0.5);
        EquilibriumReport beq = equilibria(bsys);
        double w0_exact = (-1.0 + std::sqrt(0.5)) / 2.0;
        bool w0_ok = std::abs(beq.w0 - w0_exact) <= 1e-12;
        bool refused = false;
        try {
            baby_reduced(0.8);
        } catch (const no_smooth_profile&) {
            refused = true;
        }
        ExpansionCoeffs bec = expansion_coeffs(bsys, 2);
        bool w1_zero = bec.w[1] == 0.0;
        bool order2 = regularity_order(bsys) == 2;
        Profile bp = baby_profile(0.5);
        double energy = baby_energy_residual(bp);
        report(10, "baby: w0 exact, a=0.8 refused, w1 = 0, order 2, q first integral",
               w0_ok && refused && w1_zero && order2 && energy <= 1e-8,
               fmt("w0 err %.2g, energy residual %.3g", std::abs(beq.w0 - w0_exact),
                   energy));
    }

    // ---- 11. profile asymptotics
    {
        const Profile& p = d.profile;
        double ts = 0.0;
        ts = std::max(ts, std::abs(p.rho.front() - d.shock.left.rho));
        ts = std::max(ts, std::abs(p.u.front() - d.shock.left.u));
        ts = std::max(ts, std::abs(p.e.front() - d.shock.left.e));
        ts = std::max(ts, std::abs(p.rho.back() - d.shock.right.rho));
        ts = std::max(ts, std::abs(p.u.back() - d.shock.right.u));
        ts = std::max(ts, std::abs(p.e.back() - d.shock.right.e));
        double tq = std::max(std::abs(p.q.front()), std::abs(p.q.back()));
        report(11, "tail states within 1e-6 and q tails below 1e-8",
               ts <= 1e-6 && tq <= 1e-8, fmt("state gap %.3g, q gap %.3g", ts, tq));
    }

    if (failures == 0) std::printf("acceptance: all criteria pass\n");
    else std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
