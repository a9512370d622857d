#ifndef RADSHOCK_PROFILE_GLUE_HPP
#define RADSHOCK_PROFILE_GLUE_HPP

#include "radshock/gas_rh.hpp"
#include "radshock/profile_core.hpp"

#include <vector>

namespace radshock {

// One-sided derivative estimates of w at the glue point and the closed-form
// target -f'(0) w0^2 / (f(0) + 3 w0) they must both reproduce.
struct GlueReport {
    double wprime_minus = 0.0;
    double wprime_plus = 0.0;
    double wprime_target = 0.0;
    double mismatch = 0.0; // |wprime_plus - wprime_minus|
    bool matched = false;
};

struct GlueOptions {
    double match_tol = 1e-4; // relative, against the closed-form target
};

// The glued shock profile on a strictly increasing xi grid containing 0.
// Reduced variables are always present; physical fields after reconstruct().
struct Profile {
    // provenance
    ReducedSystem sys;
    double w0 = 0.0;
    GlueReport glue_report;
    // shock provenance (gas profiles; unset for the scalar model)
    bool has_fields = false;
    double sigma = 0.0, v_minus = 0.0, v_plus = 0.0, C2 = 0.0;

    std::vector<double> xi;
    std::vector<double> v_hat;
    std::vector<double> w;
    std::vector<double> slope; // (w - w0)/v_hat; equals w1 at xi = 0

    // physical fields (filled by reconstruct)
    std::vector<double> v, rho, u, e, theta, P, q, n;

    std::size_t size() const { return xi.size(); }
};

// Map a trajectory's eta samples to the physical variable,
//   xi(eta) = -int_eta^inf V dzeta,
// using the accumulated trapezoid pieces plus the analytic exponential tail.
// Strictly increasing onto (-inf, 0) for the flat side, strictly decreasing
// onto (0, +inf) for the sharp side.
std::vector<double> xi_of_eta(const Trajectory& traj);

// Glue the two reparametrized trajectories at xi = 0, inserting
// (v_hat, w)(0) = (0, w0), and verify the one-sided derivatives of w meet
// the C2 matching condition.
Profile glue(const Trajectory& flat, const Trajectory& sharp,
             const ReducedSystem& sys, const EquilibriumReport& eq,
             const GlueOptions& opts = {});

// Fill the physical fields: rho = j/v, u = v + sigma, e = (C1-v)v/(gamma-1),
// theta = (C1-v)v/R, P = (gamma-1) rho e, the algebraic radiative flux
// q = j(gamma+1)/(2(gamma-1)) (v - v_minus)(v - v_plus), and the radiative
// energy n = theta^4 - dq/dxi (finite differences on the grid).
void reconstruct(Profile& p, const ShockData& shock, const GasConstants& k);

// Resample onto the uniform grid {k dxi} intersected with the native span,
// by cubic Hermite interpolation with the analytic slopes v_hat' = w and
// w' = w Omega + Omega'_eta. Fields are recomputed from the resampled
// v_hat; requires dxi > 0.
Profile resample_uniform(const Profile& p, double dxi);

} // namespace radshock

#endif
