#include <doctest.h>

#include "fixtures.hpp"
#include "radshock/baby_model.hpp"

#include <algorithm>
#include <cmath>

using namespace radshock;

TEST_CASE("baby_reduced: amplitude window") {
    ReducedSystem sys = baby_reduced(0.5);
    CHECK(sys.f0() == 1.0);
    for (int i = 1; i <= 7; ++i) CHECK(sys.f_coeffs[i] == 0.0);
    CHECK_FALSE(sys.is_gas);

    CHECK_THROWS_AS(baby_reduced(0.8), no_smooth_profile);
    CHECK_THROWS_AS(baby_reduced(0.0), validation_error);
    try {
        baby_reduced(0.8);
    } catch (const no_smooth_profile& e) {
        CHECK(e.f0 == 1.0);
        CHECK(e.amplitude == 0.8);
        CHECK(1.0 - 2.0 * 0.8 * 0.8 < 0.0);
    }
    CHECK_NOTHROW(baby_reduced(0.7)); // still below 1/sqrt(2)
}

TEST_CASE("baby: w0 closed form to 1e-12") {
    const auto& b = fixtures::baby();
    CHECK(std::abs(b.eq.w0 - (-1.0 + std::sqrt(0.5)) / 2.0) <= 1e-12);
}

TEST_CASE("baby: first integral q = (a^2 - v_hat^2)/2 against convolution") {
    const auto& b = fixtures::baby();
    double r = baby_energy_residual(b.profile);
    CHECK(r <= 1e-8);

    SUBCASE("refinement halving drops the residual about fourfold") {
        IntegrateOptions fine;
        fine.thin_min_dxi_factor *= 0.5;
        fixtures::Baby bf(0.5);
        Profile p2 = [&] {
            Trajectory fl = integrate_manifold(b.sys, b.eq, ManifoldSide::flat, fine);
            Trajectory sh = integrate_manifold(b.sys, b.eq, ManifoldSide::sharp, fine);
            Profile p = glue(fl, sh, b.sys, b.eq);
            p.q.resize(p.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                p.q[i] = 0.5 * (0.5 - p.v_hat[i]) * (0.5 + p.v_hat[i]);
            return p;
        }();
        double r2 = baby_energy_residual(p2);
        CHECK(r / r2 >= 3.5);
        CHECK(r / r2 <= 4.5);
    }
}

TEST_CASE("baby: q at the corner and at the tails") {
    const auto& b = fixtures::baby();
    const Profile& p = b.profile;
    auto it = std::lower_bound(p.xi.begin(), p.xi.end(), 0.0);
    std::size_t i0 = it - p.xi.begin();
    CHECK(p.xi[i0] == 0.0);
    CHECK(p.q[i0] == doctest::Approx(0.125).epsilon(1e-14)); // a^2/2
    // tails: q -> 0 at the level set by the start offset (1e-6 a)
    CHECK(std::abs(p.q.front()) <= 1e-6);
    CHECK(std::abs(p.q.back()) <= 1e-6);
}

TEST_CASE("baby: expansion degeneracies, w1 = 0 exactly") {
    const auto& b = fixtures::baby();
    ExpansionCoeffs ec = expansion_coeffs(b.sys, 2);
    CHECK(ec.w[1] == 0.0);
    CHECK(ec.b[0] == 0.0);
    CHECK(ec.b[1] == 0.5);
    CHECK(ec.w[2] ==
          doctest::Approx(0.5 / (1.0 + 4.0 * b.eq.w0)).epsilon(1e-14));
    CHECK(regularity_order(b.sys) == 2);
}

TEST_CASE("baby: glue derivatives vanish with f' == 0") {
    const auto& b = fixtures::baby();
    CHECK(b.profile.glue_report.wprime_target == 0.0);
    CHECK(std::abs(b.profile.glue_report.wprime_minus) <= 1e-10);
    CHECK(std::abs(b.profile.glue_report.wprime_plus) <= 1e-10);
}

TEST_CASE("baby: trajectory structure with the degenerate corner") {
    const auto& b = fixtures::baby();
    // sharp side stays monotone (the K2 pocket is empty when vbar = 0)
    CHECK(b.sharp.w_min_count == 0);
    CHECK(b.flat.w_min_count == 0);
    CHECK(b.flat.v_monotone);
    CHECK(b.sharp.v_monotone);
    // both slopes tend to w1 = 0
    CHECK(std::abs(b.flat.terminal_slope) <= 1e-8);
    CHECK(std::abs(b.sharp.terminal_slope) <= 1e-8);
}

TEST_CASE("baby: amplitude to zero collapses the profile") {
    Profile p = baby_profile(0.02);
    double vmax = 0.0, wmin = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        vmax = std::max(vmax, std::abs(p.v_hat[i]));
        wmin = std::min(wmin, p.w[i]);
    }
    CHECK(vmax <= 0.02);
    CHECK(p.w0 == doctest::Approx(-0.02 * 0.02 / 2.0).epsilon(1e-3));
    CHECK(wmin >= p.w0 * 1.0001 - 1e-15);
}

TEST_CASE("baby: ode residual applies verbatim with f == 1") {
    const auto& b = fixtures::baby();
    Profile r = resample_uniform(b.profile, 0.02);
    ResidualReport rr = ode_residual(r);
    CHECK(rr.max_scaled <= 1e-4);
}
