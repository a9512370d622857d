#include <doctest.h>

#include "fixtures.hpp"
#include "radshock/profile_glue.hpp"

#include <cmath>

using namespace radshock;

TEST_CASE("xi_of_eta: monotone maps with the right ranges") {
    const auto& d = fixtures::desk();
    std::vector<double> xf = xi_of_eta(d.flat);
    std::vector<double> xs = xi_of_eta(d.sharp);

    for (std::size_t i = 1; i < xf.size(); ++i) CHECK(xf[i] > xf[i - 1]);
    for (double x : xf) CHECK(x < 0.0);
    for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] < xs[i - 1]);
    for (double x : xs) CHECK(x > 0.0);

    // flat endpoint closes onto 0 within a small multiple of the analytic
    // tail: |xi(eta_end)| = |tail| <= 10 * terminal_error / |w0|
    const double tail_budget =
        10.0 * d.flat.terminal_error / std::abs(d.eq.w0);
    CHECK(std::abs(xf.back()) <= tail_budget);
    CHECK(std::abs(xs.back()) <= tail_budget);
}

TEST_CASE("glue: C2 matching of the one-sided derivatives") {
    const auto& d = fixtures::desk();
    const GlueReport& g = d.profile.glue_report;
    const double target = -d.sys.f_coeffs[1] * d.eq.w0 * d.eq.w0 /
                          (d.sys.f0() + 3.0 * d.eq.w0);
    CHECK(g.wprime_target == doctest::Approx(target).epsilon(1e-14));
    CHECK(std::abs(g.wprime_minus - target) <= 1e-4 * std::abs(target));
    CHECK(std::abs(g.wprime_plus - target) <= 1e-4 * std::abs(target));
    CHECK(g.matched);
}

TEST_CASE("glue: grid structure and monotonicity") {
    const auto& d = fixtures::desk();
    const Profile& p = d.profile;
    REQUIRE(p.size() > 100);
    for (std::size_t i = 1; i < p.size(); ++i) {
        CHECK(p.xi[i] > p.xi[i - 1]);
        CHECK(p.v_hat[i] < p.v_hat[i - 1]);
        CHECK(p.v_hat[i] > -d.sys.a);
        CHECK(p.v_hat[i - 1] < d.sys.a);
    }
    // the glue point itself
    auto it = std::lower_bound(p.xi.begin(), p.xi.end(), 0.0);
    REQUIRE(it != p.xi.end());
    std::size_t i0 = it - p.xi.begin();
    CHECK(p.xi[i0] == 0.0);
    CHECK(p.v_hat[i0] == 0.0);
    CHECK(p.w[i0] == d.eq.w0);
}

TEST_CASE("glue: w is the xi-derivative of v_hat at O(h^2)") {
    const auto& d = fixtures::desk();
    const Profile& p = d.profile;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        const double hm = p.xi[i] - p.xi[i - 1];
        const double hp = p.xi[i + 1] - p.xi[i];
        const double fd = -hp / (hm * (hm + hp)) * p.v_hat[i - 1] +
                          (hp - hm) / (hm * hp) * p.v_hat[i] +
                          hm / (hp * (hm + hp)) * p.v_hat[i + 1];
        worst = std::max(worst, std::abs(fd - p.w[i]));
    }
    CHECK(worst <= 1e-10);

    // second-order character on uniform grids: halving the spacing cuts
    // the truncation about fourfold
    auto fd_err = [&](double h) {
        Profile r = resample_uniform(p, h);
        double e = 0.0;
        for (std::size_t i = 1; i + 1 < r.size(); ++i) {
            const double fd = (r.v_hat[i + 1] - r.v_hat[i - 1]) / (2.0 * h);
            e = std::max(e, std::abs(fd - r.w[i]));
        }
        return e;
    };
    const double e1 = fd_err(0.8), e2 = fd_err(0.4);
    CHECK(e1 / e2 >= 3.0);
    CHECK(e1 / e2 <= 5.0);
}

TEST_CASE("reconstruct: end states, flux constants, and q sign") {
    const auto& d = fixtures::desk();
    const Profile& p = d.profile;
    const ShockData& s = d.shock;

    // asymptotic states at the grid ends
    CHECK(std::abs(p.rho.front() - s.left.rho) <= 1e-6);
    CHECK(std::abs(p.u.front() - s.left.u) <= 1e-6);
    CHECK(std::abs(p.e.front() - s.left.e) <= 1e-6);
    CHECK(std::abs(p.rho.back() - s.right.rho) <= 1e-6);
    CHECK(std::abs(p.u.back() - s.right.u) <= 1e-6);
    CHECK(std::abs(p.e.back() - s.right.e) <= 1e-6);
    CHECK(std::abs(p.q.front()) <= 1e-8);
    CHECK(std::abs(p.q.back()) <= 1e-8);

    // q(0) = -j (gamma+1) a^2 / (2 (gamma-1)) at the glue point
    auto it = std::lower_bound(p.xi.begin(), p.xi.end(), 0.0);
    std::size_t i0 = it - p.xi.begin();
    const double g = d.consts.gamma;
    const double q0 = -s.j * (g + 1.0) * d.sys.a * d.sys.a / (2.0 * (g - 1.0));
    CHECK(p.q[i0] == doctest::Approx(q0).epsilon(1e-12));
    CHECK(p.q[i0] < 0.0);

    // pointwise flux identities and positivity
    double worst_m = 0.0, worst_e = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p.rho[i] > 0.0);
        CHECK(p.theta[i] > 0.0);
        const double v = p.v[i];
        const double mass = p.rho[i] * v;
        const double mom = p.rho[i] * v * v + (g - 1.0) * p.rho[i] * p.e[i];
        const double en = p.rho[i] * v * (p.e[i] + 0.5 * v * v) +
                          (g - 1.0) * p.rho[i] * p.e[i] * v + p.q[i];
        worst_m = std::max(worst_m, std::abs(mass - s.j) / s.j);
        worst_m = std::max(worst_m,
                           std::abs(mom - s.j * s.C1) / (s.j * s.C1));
        worst_e = std::max(worst_e,
                           std::abs(en - s.j * s.C2) / (s.j * s.C2));
    }
    CHECK(worst_m <= 1e-10);
    CHECK(worst_e <= 1e-8);
}

TEST_CASE("reconstruct: refuses mismatched shock data") {
    const auto& d = fixtures::desk();
    Profile p = d.profile;
    ShockData other = shock_from_amplitude(d.left, d.consts, 2e-3);
    CHECK_THROWS_AS(reconstruct(p, other, d.consts), validation_error);
}

TEST_CASE("grid refinement leaves v_hat(xi) unchanged to 1e-6 a") {
    const auto& d = fixtures::desk();
    IntegrateOptions half = IntegrateOptions{}.halved();
    Trajectory fl = integrate_manifold(d.sys, d.eq, ManifoldSide::flat, half);
    Trajectory sh = integrate_manifold(d.sys, d.eq, ManifoldSide::sharp, half);
    Profile p2 = glue(fl, sh, d.sys, d.eq);

    Profile u1 = resample_uniform(d.profile, 0.5);
    Profile u2 = resample_uniform(p2, 0.5);
    double dv = 0.0;
    std::size_t lo = 0;
    for (std::size_t i = 0; i < u1.size(); ++i) {
        while (lo < u2.size() && u2.xi[lo] < u1.xi[i] - 1e-9) ++lo;
        if (lo >= u2.size()) break;
        if (std::abs(u2.xi[lo] - u1.xi[i]) < 1e-9)
            dv = std::max(dv, std::abs(u2.v_hat[lo] - u1.v_hat[i]));
    }
    CHECK(dv < 1e-6 * d.sys.a);
}

TEST_CASE("resample_uniform: grid and interpolation sanity") {
    const auto& d = fixtures::desk();
    Profile r = resample_uniform(d.profile, 0.25);
    REQUIRE(r.size() > 100);
    for (std::size_t i = 1; i < r.size(); ++i) {
        CHECK(r.xi[i] - r.xi[i - 1] == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(r.v_hat[i] < r.v_hat[i - 1]);
    }
    CHECK(r.has_fields);
    // Hermite values agree with a secant through the native neighbors to
    // the secant's own truncation
    std::size_t lo = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        while (lo + 2 < d.profile.size() && d.profile.xi[lo + 1] <= r.xi[i]) ++lo;
        const double x0 = d.profile.xi[lo], x1 = d.profile.xi[lo + 1];
        const double t = (r.xi[i] - x0) / (x1 - x0);
        const double lin =
            d.profile.v_hat[lo] * (1.0 - t) + d.profile.v_hat[lo + 1] * t;
        const double curv = (x1 - x0) * (x1 - x0) *
                            std::abs(d.profile.w[lo + 1] - d.profile.w[lo]) /
                            (x1 - x0);
        worst = std::max(worst, std::abs(r.v_hat[i] - lin) - curv - 1e-13);
    }
    CHECK(worst <= 0.0);
    CHECK_THROWS_AS(resample_uniform(d.profile, 0.0), validation_error);
    CHECK_THROWS_AS(resample_uniform(d.profile, 1e9), validation_error);
}

TEST_CASE("glue: corrupted trajectory fails the C2 match") {
    const auto& d = fixtures::desk();
    Trajectory bad = d.sharp;
    for (std::size_t i = bad.samples.size() - 5; i < bad.samples.size(); ++i) {
        bad.samples[i].slope *= 1.5;
        bad.samples[i].W = d.eq.w0 + bad.samples[i].V * bad.samples[i].slope;
    }
    CHECK_THROWS_AS(glue(d.flat, bad, d.sys, d.eq), numerical_error);
}

TEST_CASE("xi_of_eta: rejects a non-monotone partial integral") {
    const auto& d = fixtures::desk();
    Trajectory bad = d.flat;
    std::size_t mid = bad.samples.size() / 2;
    std::swap(bad.samples[mid].xi_partial, bad.samples[mid + 1].xi_partial);
    CHECK_THROWS_AS(xi_of_eta(bad), numerical_error);
}

TEST_CASE("reconstruct: fatal on nonpositive v or temperature") {
    const auto& d = fixtures::desk();
    Profile p = d.profile;
    p.has_fields = false;
    for (auto& v : p.v_hat) v -= 2.0 * d.shock.v_plus; // pushes v below 0
    CHECK_THROWS_AS(reconstruct(p, d.shock, d.consts), numerical_error);

    Profile p2 = d.profile;
    p2.has_fields = false;
    for (auto& v : p2.v_hat) v += d.shock.C1; // C1 - v < 0 everywhere
    CHECK_THROWS_AS(reconstruct(p2, d.shock, d.consts), numerical_error);
}
