#ifndef RADSHOCK_GAS_RH_HPP
#define RADSHOCK_GAS_RH_HPP

#include "radshock/errors.hpp"

namespace radshock {

// gamma-law gas constants. R only enters the temperature scale
// theta = (gamma-1) e / R, so it propagates into the radiative coupling.
struct GasConstants {
    double gamma = 1.4;
    double R = 1.0;
};

// Primitive fluid state.
struct GasState {
    double rho = 1.0; // density, > 0
    double u = 0.0;   // bulk velocity
    double e = 1.0;   // specific internal energy, > 0
};

// Derived thermodynamic quantities of a state.
struct ThermoState {
    double P;     // pressure (gamma-1) rho e
    double theta; // temperature (gamma-1) e / R
    double E;     // specific total energy e + u^2/2
    double c;     // sound speed sqrt(gamma (gamma-1) e)
};

ThermoState thermo(const GasState& s, const GasConstants& k);

// A single shock in the frame-independent description used throughout:
// left/right states, speed sigma, and the three flux constants obtained
// by integrating the traveling-wave system once,
//   rho v = j,   rho v^2 + P = j C1,   rho v (e + v^2/2) + P v = j C2,
// with v = u - sigma. For 1-shocks j, C1, C2 > 0 and 0 < v_plus < v_minus.
struct ShockData {
    GasState left, right;
    double sigma = 0.0;
    double j = 0.0, C1 = 0.0, C2 = 0.0;
    double v_minus = 0.0, v_plus = 0.0;
    double a = 0.0;   // amplitude |v_minus - v_plus| / 2
    int family = 1;   // 1-shock or 3-shock
};

// Signed admissibility margins; all three strictly positive iff the
// shock satisfies the 1-shock characteristic inequalities
//   u+ - c+ < sigma < u+   and   sigma < u- - c-.
struct LaxReport {
    bool admissible = false;
    double margin_subsonic_right = 0.0;   // u+ - sigma
    double margin_supersonic_right = 0.0; // sigma - (u+ - c+)
    double margin_supersonic_left = 0.0;  // (u- - c-) - sigma
};

LaxReport lax_check(const ShockData& s, const GasConstants& k);

// Build the 1-shock with the given left state and pre-shock Mach number
// M = v_minus / c_minus > 1 from the gamma-law jump relations.
ShockData shock_from_mach(const GasState& left, const GasConstants& k, double mach);

// Build the 1-shock with the given left state and amplitude a > 0.
// The amplitude relation a = c (M^2 - 1) / ((gamma+1) M) is quadratic in M,
// so the Mach number is recovered in closed form rather than iteratively.
ShockData shock_from_amplitude(const GasState& left, const GasConstants& k, double a);

// 3-shock with the given right state, obtained by reflecting x -> -x,
// u -> -u and reusing the 1-shock construction. Mass flux j is negative.
ShockData shock3_from_amplitude(const GasState& right, const GasConstants& k, double a);

// Largest relative residual of the three flux identities evaluated from
// the left and right states independently.
double rh_residual(const ShockData& s, const GasConstants& k);

// Zero-strength limits of (sigma, j, C1, C2) for a 1-shock off the given
// left state, together with the corresponding limits of f(0) and f'(0)
// of the reduced polynomial. f0_limit equals
//   4 gamma^3 (gamma-1)^2 / (R^4 (gamma+1)^8) * C1^7 / (rho c).
struct SmallShockLimits {
    double sigma, j, C1, C2;
    double f0_limit;
    double fprime0_limit;
};

SmallShockLimits small_shock_limits(const GasState& left, const GasConstants& k);

} // namespace radshock

#endif
