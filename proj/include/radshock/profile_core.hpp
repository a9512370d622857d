#ifndef RADSHOCK_PROFILE_CORE_HPP
#define RADSHOCK_PROFILE_CORE_HPP

#include "radshock/errors.hpp"
#include "radshock/gas_rh.hpp"
#include "radshock/polynomial.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace radshock {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
};

// The planar reduced system
//   vhat' = w,   vhat w' = -w^2 - f(vhat) w + (vhat^2 - a^2)/2,
// with f a degree-7 polynomial. For the gas it is
//   f(x) = 4(g-1)/(j R^4 (g+1)) (C1/(g+1) - x)^3 (x + g C1/(g+1))^3 (2x + (g-1)C1/(g+1));
// the scalar radiating-Burgers model injects f == 1 through the same type.
struct ReducedSystem {
    double gamma = 0.0, R = 0.0, j = 0.0, C1 = 0.0; // zero for constant-f systems
    double a = 0.0;
    std::array<double, 8> f_coeffs{}; // monomial coefficients, degree <= 7
    bool is_gas = false;

    double f(double vhat) const {
        double acc = 0.0;
        for (int i = 7; i >= 0; --i) acc = acc * vhat + f_coeffs[i];
        return acc;
    }
    // (f(vhat) - f(0)) / vhat, exact via the shifted coefficients
    double f_offset_quotient(double vhat) const {
        double acc = 0.0;
        for (int i = 7; i >= 1; --i) acc = acc * vhat + f_coeffs[i];
        return acc;
    }
    double f0() const { return f_coeffs[0]; }
    Polynomial f_poly() const {
        return Polynomial(std::vector<double>(f_coeffs.begin(), f_coeffs.end()));
    }
};

// Expand the gas polynomial and record the shock amplitude. Throws
// no_smooth_profile when f(0)^2 - 2 a^2 <= 0.
ReducedSystem build_reduced(const ShockData& shock, const GasConstants& k);

// k-th derivative of f as a polynomial (identically zero for k >= 8).
Polynomial f_derivatives(const ReducedSystem& sys, int order);

// Stationary points of the auxiliary system V' = V W,
// W' = -W^2 - f(V) W + (V^2 - a^2)/2: saddles at (+-a, 0) and the
// stable node at (0, w0).
struct EquilibriumReport {
    double w0 = 0.0;
    double mu1 = 0.0, mu2 = 0.0;         // eigenvalues at (a, 0)
    double nu1 = 0.0, nu2 = 0.0;         // eigenvalues at (-a, 0)
    double lambda1 = 0.0, lambda2 = 0.0; // node eigenvalues w0 and -2 w0 - f(0)
    double b0 = 0.0;                     // -f'(0) w0
    Vec2 r2, R2;    // unstable eigenvectors (a, mu2), (-a, nu2)
    Vec2 e1_0, e2_0; // node eigenvectors (f(0)+3w0, b0), (0, 1)
};

EquilibriumReport equilibria(const ReducedSystem& sys);

// The two branches of W^2 + f(V) W - (V^2 - a^2)/2 = 0 over [-a, a],
// W2(V) < W1(V) <= 0, and the unique critical point Vbar of W1 in (-a, 0).
// For constant f the critical point degenerates to the boundary V = 0.
class NullclineData {
public:
    NullclineData(const ReducedSystem& sys, double vbar, bool degenerate)
        : sys_(sys), fprime_(sys.f_poly().derivative()), vbar_(vbar),
          degenerate_(degenerate) {}

    double Delta(double V) const {
        double f = sys_.f(V);
        return f * f + 2.0 * (V * V - sys_.a * sys_.a);
    }
    double W1(double V) const {
        // rationalized form, stable where Delta ~ f^2
        return (V * V - sys_.a * sys_.a) / (sys_.f(V) + std::sqrt(Delta(V)));
    }
    double W2(double V) const { return 0.5 * (-sys_.f(V) - std::sqrt(Delta(V))); }
    double vbar() const { return vbar_; }
    bool vbar_degenerate() const { return degenerate_; }
    double fprime(double V) const { return fprime_(V); }

private:
    ReducedSystem sys_;
    Polynomial fprime_;
    double vbar_;
    bool degenerate_;
};

NullclineData nullclines(const ReducedSystem& sys);

// Vector field and Jacobian of the auxiliary system.
Vec2 vector_field(const ReducedSystem& sys, Vec2 p);
Mat2 jacobian(const ReducedSystem& sys, Vec2 p);

enum class ManifoldSide { flat, sharp };

struct IntegrateOptions {
    double rtol = 1e-10;
    double atol = 1e-12;              // scaled by component magnitudes
    double xi_quad_tol = 1e-10;       // trapezoid accuracy target for Xi(eta)
    double terminal_tol_factor = 1e-10; // * max(a, |w0|)
    double start_offset_factor = 1e-6;  // * a, along the interior eigendirection
    int max_offset_retries = 8;
    double containment_slack = 1e-14;
    double thin_min_dxi_factor = 1e-4;  // * (a / |w0|); sample spacing floor in xi
    std::size_t max_steps = 80000000;

    IntegrateOptions halved() const {
        IntegrateOptions o = *this;
        o.rtol *= 0.5;
        o.atol *= 0.5;
        o.xi_quad_tol *= 0.25; // halves the eta step cap
        o.terminal_tol_factor *= 0.5;
        o.thin_min_dxi_factor *= 0.5;
        return o;
    }
};

struct TrajectorySample {
    double eta;        // desingularized independent variable
    double V, W;       // auxiliary phase-plane point
    double slope;      // (W - w0) / V, integrated natively
    double xi_partial; // int_{eta_start}^{eta} V dzeta (trapezoid, full step resolution)
};

struct Trajectory {
    ManifoldSide side = ManifoldSide::flat;
    std::vector<TrajectorySample> samples; // thinned; first and last steps kept
    double w0 = 0.0;
    double terminal_error = 0.0; // ||(V, W) - (0, w0)|| at the last step
    double terminal_slope = 0.0; // (W - w0)/V at the last step; tends to w1
    double xi_total = 0.0;       // int_{eta_start}^{infty} V dzeta
    double tail_integral = 0.0;  // analytic part beyond the last step
    // largest prefix gap between the trapezoid sum and the same sum at
    // half the eta resolution: the grid-refinement error of Xi
    double xi_quad_refinement_gap = 0.0;
    double start_offset = 0.0;   // offset s actually used after retries
    std::size_t step_count = 0;
    // full-resolution monotonicity bookkeeping of W along the orbit
    int w_min_count = 0; // falling -> rising transitions
    int w_max_count = 0; // rising -> falling transitions
    bool v_monotone = true;
    double ell1_estimate = 0.0; // terminal limit of slope''/V' (diagnostic only)
};

// Shoot the unstable manifold of (+a,0) ("flat") or (-a,0) ("sharp") into
// the stable node (0, w0), keeping the orbit inside its invariant compact
// set at every accepted step. Integration runs in the node chart
// (V, (W - w0)/V), which stays well conditioned all the way into the node.
Trajectory integrate_manifold(const ReducedSystem& sys, const EquilibriumReport& eq,
                              ManifoldSide side, const IntegrateOptions& opts = {});

// Runtime verification of the hypotheses behind the construction, in the
// order they bind as the amplitude grows.
struct HypothesisCheck {
    std::string name;
    bool ok;
    double margin;
};

struct ValidityReport {
    std::vector<HypothesisCheck> checks;
    bool all_ok = false;
    std::string first_failure; // empty when all pass
};

ValidityReport check_hypotheses(const ReducedSystem& sys);

} // namespace radshock

#endif
