#ifndef RADSHOCK_BABY_MODEL_HPP
#define RADSHOCK_BABY_MODEL_HPP

#include "radshock/profile_core.hpp"
#include "radshock/profile_glue.hpp"
#include "radshock/verify.hpp"

namespace radshock {

// Scalar radiating-Burgers model. Its traveling-wave reduction is exactly
// the planar system with f == 1: integrating the wave form of
//   u_t + (u^2/2)_x = -q_x,  -q_xx + q = -u_x
// once gives the first integral q = (a^2 - vhat^2)/2 and
//   vhat vhat'' = -(vhat')^2 - vhat' + (vhat^2 - a^2)/2.
// A smooth connection needs 1 - 2 a^2 > 0, i.e. a < 1/sqrt(2).
struct BabySystem {
    double a = 0.0;
    double u_minus = 0.0, u_plus = 0.0;
    double s = 0.0; // shock speed (u_minus + u_plus)/2
};

inline constexpr double baby_amplitude_limit = 0.70710678118654752; // 1/sqrt(2)

// ReducedSystem with f identically 1; every downstream operation applies.
ReducedSystem baby_reduced(double a);

// Full pipeline: equilibria, both manifolds, glue. The q column is filled
// with the first integral (a^2 - vhat^2)/2.
Profile baby_profile(double a, const IntegrateOptions& opts = {},
                     const GlueOptions& glue_opts = {});

// Independent check of the first integral: q from the diffusion equation,
//   q = -(1/2) int exp(-|xi-y|) w(y) dy,
// against (a^2 - vhat^2)/2. Returns the max absolute mismatch over the
// padded interior window.
double baby_energy_residual(const Profile& p,
                            ConvolutionOptions opts = {});

} // namespace radshock

#endif
