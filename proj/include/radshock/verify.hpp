#ifndef RADSHOCK_VERIFY_HPP
#define RADSHOCK_VERIFY_HPP

#include "radshock/errors.hpp"
#include "radshock/gas_rh.hpp"
#include "radshock/profile_core.hpp"
#include "radshock/profile_glue.hpp"

#include <cstddef>
#include <vector>

namespace radshock {

// Exact integration of the kernel exp(-|x-y|) against a piecewise-linear
// integrand sampled on an arbitrary grid, with the two infinite tails
// closed in exact form using the constant end values. Prefix recursions
// make the full set of node values O(N).
struct ConvolutionOptions {
    double edge_tol = 1e-10; // kernel mass allowed to leak past the grid
};

class ExponentialConvolution {
public:
    ExponentialConvolution(std::vector<double> x, std::vector<double> g,
                           ConvolutionOptions opts = {});

    // (1/2) int exp(-|x-y|) sgn(x-y) g(y) dy at grid node i
    double flux_at_node(std::size_t i) const { return 0.5 * (L_[i] - R_[i]); }
    // (1/2) int exp(-|x-y|) g(y) dy at grid node i
    double smooth_at_node(std::size_t i) const { return 0.5 * (L_[i] + R_[i]); }

    // same quantities at an arbitrary abscissa inside the padded window
    double flux_at(double x) const;
    double smooth_at(double x) const;

    // largest index range whose points keep edge_tol padding on both sides;
    // throws if the grid is too narrow for any interior window
    std::size_t window_lo() const { return lo_; }
    std::size_t window_hi() const { return hi_; } // inclusive
    double padding() const { return padding_; }

    void require_interior(double x) const;

private:
    std::vector<double> x_, g_, L_, R_;
    double padding_;
    std::size_t lo_, hi_;
};

// q(xi) = (1/2) int exp(-|xi-y|) sgn(xi-y) theta(y)^4 dy from the profile's
// temperature samples (constant-extended beyond the grid).
double convolution_q(const Profile& p, double xi,
                     ConvolutionOptions opts = {});

struct ResidualReport {
    double max_scaled = 0.0; // max |residual| / a^2
    double max_abs = 0.0;
    double scale = 0.0; // a^2
    double xi_at_max = 0.0;
};

// Residual of the integral equation
//   (v - v_minus)(v - v_plus) = 2(gamma-1)/(j(gamma+1)) q[theta^4]
// over the padded interior window, scaled by a^2.
ResidualReport integral_residual(const Profile& p,
                                 ConvolutionOptions opts = {});

// Residual of the second-order form
//   vhat w' + w^2 + f(vhat) w - (vhat^2 - a^2)/2 = 0
// with w' by finite differences on the profile grid, scaled by a^2.
// (Algebraically identical to the physical-variable form.)
ResidualReport ode_residual(const Profile& p);

struct QCrossCheck {
    double max_abs_diff = 0.0;
    double q_max = 0.0;
    double rel = 0.0; // max_abs_diff / q_max
};

// Algebraic q against the convolution q on the interior window.
QCrossCheck q_crosscheck(const Profile& p,
                         ConvolutionOptions opts = {});

// max |-n'' + n - theta^4| over interior points (n'' by finite differences).
double n_field_residual(const Profile& p);

// Coefficients of the near-corner expansion
//   w = w0 + w1 vhat + ... + w_{n+1} vhat^{n+1} + o(vhat^{n+1}),
//   w_k = b_{k-1} / (f(0) + (k+2) w0),
//   b_0 = -f'(0) w0,
//   b_1 = 1/2 - 2 w1^2 - f'(0) w1 - f''(0) w0 / 2,
//   b_k = -sum_{i=1}^{k+1} f^(i)(0)/i! w_{k+1-i} - sum_{i=1}^{k} (i+1) w_i w_{k+1-i}.
struct ExpansionCoeffs {
    int order = 0;              // n
    std::vector<double> w;      // w_0 .. w_{n+1}
    std::vector<double> b;      // b_0 .. b_n
    std::vector<double> denom;  // f(0) + (k+2) w0 for k = 1 .. n+1
};

class expansion_unavailable : public validation_error {
public:
    expansion_unavailable(int max_order, const std::string& msg)
        : validation_error(msg), max_order(max_order) {}
    int max_order; // largest order computable at this amplitude
};

ExpansionCoeffs expansion_coeffs(const ReducedSystem& sys, int n);

struct FitOptions {
    double window_lo = 1e-3; // * a, lower edge of |vhat| fit window
    double window_hi = 1e-1; // * a, upper edge
};

struct ExpansionFit {
    double w1_fit = 0.0;
    double w2_fit = 0.0;
    std::size_t samples_minus = 0, samples_plus = 0;
    // per-order remainder diagnostics, k = 0 .. order+1
    std::vector<double> trend_slope; // d log|r_k| / d log|vhat| over the window
    std::vector<char> decreasing;    // |r_k| falls toward vhat -> 0
};

// Fit w1, w2 from the profile samples near xi = 0 (quadratic least squares
// on the slope variable (w - w0)/vhat) and report how the per-order
// remainders of the expansion decay.
ExpansionFit expansion_fit(const Profile& p, const ExpansionCoeffs& coeffs,
                           const FitOptions& opts = {});

// Largest n with f(0) + (n+4) w0 > 0, clamped to [0, 64]; the theory
// certifies a C^{n+2} profile at this amplitude.
int regularity_order(const ReducedSystem& sys);

struct GammaCondition {
    bool ok = false;
    double margin = 0.0; // threshold - gamma
    double threshold = 0.0;
};

// 1 < gamma < (sqrt(7)+1)/(sqrt(7)-1)
GammaCondition gamma_condition(const GasConstants& k);

} // namespace radshock

#endif
