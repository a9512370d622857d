#ifndef RADSHOCK_TEST_FIXTURES_HPP
#define RADSHOCK_TEST_FIXTURES_HPP

#include "radshock/baby_model.hpp"
#include "radshock/gas_rh.hpp"
#include "radshock/profile_core.hpp"
#include "radshock/profile_glue.hpp"
#include "radshock/verify.hpp"

namespace fixtures {

using namespace radshock;

// desk case: left = (1, 0, 1), gamma = 1.4, R = 1, a = 1e-3
struct Desk {
    GasConstants consts{1.4, 1.0};
    GasState left{1.0, 0.0, 1.0};
    ShockData shock;
    ReducedSystem sys;
    EquilibriumReport eq;
    Trajectory flat, sharp;
    Profile profile; // reconstructed
    ExpansionCoeffs coeffs;

    Desk() {
        shock = shock_from_amplitude(left, consts, 1e-3);
        sys = build_reduced(shock, consts);
        eq = equilibria(sys);
        flat = integrate_manifold(sys, eq, ManifoldSide::flat);
        sharp = integrate_manifold(sys, eq, ManifoldSide::sharp);
        profile = glue(flat, sharp, sys, eq);
        reconstruct(profile, shock, consts);
        coeffs = expansion_coeffs(sys, 4);
    }
};

inline const Desk& desk() {
    static Desk d;
    return d;
}

struct Baby {
    ReducedSystem sys;
    EquilibriumReport eq;
    Trajectory flat, sharp;
    Profile profile;

    explicit Baby(double a = 0.5) {
        sys = baby_reduced(a);
        eq = equilibria(sys);
        flat = integrate_manifold(sys, eq, ManifoldSide::flat);
        sharp = integrate_manifold(sys, eq, ManifoldSide::sharp);
        profile = glue(flat, sharp, sys, eq);
        profile.q.resize(profile.size());
        for (std::size_t i = 0; i < profile.size(); ++i)
            profile.q[i] = 0.5 * (a - profile.v_hat[i]) * (a + profile.v_hat[i]);
    }
};

inline const Baby& baby() {
    static Baby b;
    return b;
}

} // namespace fixtures

#endif
