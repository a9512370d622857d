// Reparametrization from the desingularized variable eta back to xi,
// gluing of the two manifold trajectories at xi = 0, and reconstruction
// of the physical fields along the profile.

#include "radshock/profile_glue.hpp"
#include "radshock/detail/fd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace radshock {

std::vector<double> xi_of_eta(const Trajectory& traj) {
    const double S_end = traj.samples.back().xi_partial;
    std::vector<double> xi(traj.samples.size());
    for (std::size_t i = 0; i < traj.samples.size(); ++i)
        xi[i] = traj.samples[i].xi_partial - S_end - traj.tail_integral;
    for (std::size_t i = 1; i < xi.size(); ++i) {
        const bool ok = traj.side == ManifoldSide::flat ? xi[i] > xi[i - 1]
                                                        : xi[i] < xi[i - 1];
        if (!ok)
            throw numerical_error("xi_of_eta: non-monotone reparametrization");
    }
    return xi;
}

namespace {

double w1_closed_form(const ReducedSystem& sys, double w0) {
    return -sys.f_coeffs[1] * w0 / (sys.f0() + 3.0 * w0);
}

// chart field for the slope variable, used for Hermite slopes of w
double slope_rate(const ReducedSystem& sys, double w0, double vhat, double omega) {
    return -w0 * sys.f_offset_quotient(vhat) - 2.0 * vhat * omega * omega -
           3.0 * w0 * omega - sys.f(vhat) * omega + 0.5 * vhat;
}

void fill_fields(Profile& p) {
    const double g = p.sys.gamma;
    const double j = p.sys.j;
    const double C1 = p.sys.C1;
    const double R = p.sys.R;
    const double mid = 0.5 * (p.v_minus + p.v_plus);
    const double Kq = j * (g + 1.0) / (2.0 * (g - 1.0));
    const std::size_t n = p.size();

    p.v.resize(n);
    p.rho.resize(n);
    p.u.resize(n);
    p.e.resize(n);
    p.theta.resize(n);
    p.P.resize(n);
    p.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = p.v_hat[i] + mid;
        if (!(v > 0.0))
            throw numerical_error("reconstruct: v <= 0 along the profile");
        if (!(C1 - v > 0.0))
            throw numerical_error("reconstruct: C1 - v <= 0 (negative temperature)");
        p.v[i] = v;
        p.rho[i] = j / v;
        p.u[i] = v + p.sigma;
        p.e[i] = (C1 - v) * v / (g - 1.0);
        p.theta[i] = (C1 - v) * v / R;
        p.P[i] = (g - 1.0) * p.rho[i] * p.e[i];
        p.q[i] = Kq * (p.v_hat[i] - p.sys.a) * (p.v_hat[i] + p.sys.a);
    }
    std::vector<double> qprime = detail::derivative(p.xi, p.q);
    p.n.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double th4 = std::pow(p.theta[i], 4);
        p.n[i] = th4 - qprime[i];
    }
    p.has_fields = true;
}

} // namespace

Profile glue(const Trajectory& flat, const Trajectory& sharp,
             const ReducedSystem& sys, const EquilibriumReport& eq,
             const GlueOptions& opts) {
    if (flat.side != ManifoldSide::flat || sharp.side != ManifoldSide::sharp)
        throw validation_error("glue: trajectories passed on the wrong sides");
    if (flat.samples.size() < 3 || sharp.samples.size() < 3)
        throw numerical_error("glue: trajectories too short");

    const double w0 = eq.w0;
    const double w1 = w1_closed_form(sys, w0);

    std::vector<double> xi_f = xi_of_eta(flat);
    std::vector<double> xi_s = xi_of_eta(sharp);

    Profile p;
    p.sys = sys;
    p.w0 = w0;

    const std::size_t n = xi_f.size() + 1 + xi_s.size();
    p.xi.reserve(n);
    p.v_hat.reserve(n);
    p.w.reserve(n);
    p.slope.reserve(n);

    // The terminal sample of each trajectory sits within the terminal
    // tolerance of the node, a near-duplicate of the glue point itself.
    // It stays in the derivative stencils below but is dropped from the
    // grid: a cell that short next to regular spacing poisons every
    // second-difference downstream.
    const std::size_t mf = xi_f.size();
    std::size_t keep_f = mf;
    if (-xi_f[mf - 1] < 0.5 * (xi_f[mf - 2] - xi_f[mf - 3])) keep_f = mf - 1;
    const std::size_t ms = xi_s.size();
    std::size_t keep_s = ms;
    if (xi_s[ms - 1] < 0.5 * (xi_s[ms - 3] - xi_s[ms - 2])) keep_s = ms - 1;

    for (std::size_t i = 0; i < keep_f; ++i) {
        p.xi.push_back(xi_f[i]);
        p.v_hat.push_back(flat.samples[i].V);
        p.w.push_back(flat.samples[i].W);
        p.slope.push_back(flat.samples[i].slope);
    }
    p.xi.push_back(0.0);
    p.v_hat.push_back(0.0);
    p.w.push_back(w0);
    p.slope.push_back(w1);
    for (std::size_t i = keep_s; i-- > 0;) {
        p.xi.push_back(xi_s[i]);
        p.v_hat.push_back(sharp.samples[i].V);
        p.w.push_back(sharp.samples[i].W);
        p.slope.push_back(sharp.samples[i].slope);
    }

    for (std::size_t i = 1; i < p.size(); ++i) {
        if (!(p.xi[i] > p.xi[i - 1]))
            throw numerical_error("glue: xi grid not strictly increasing");
        if (!(p.v_hat[i] < p.v_hat[i - 1]))
            throw numerical_error("glue: v_hat not strictly decreasing");
    }

    // one-sided 3-point estimates of w'(0) from the samples nearest 0
    auto side_estimate = [&](const std::vector<double>& xi,
                             const Trajectory& traj) {
        const std::size_t m = xi.size();
        return detail::quadratic_derivative_at_zero(
            xi[m - 1], traj.samples[m - 1].W, xi[m - 2], traj.samples[m - 2].W,
            xi[m - 3], traj.samples[m - 3].W);
    };
    GlueReport rep;
    rep.wprime_minus = side_estimate(xi_f, flat);
    rep.wprime_plus = side_estimate(xi_s, sharp);
    rep.wprime_target = w0 * w1; // -f'(0) w0^2 / (f(0) + 3 w0)
    rep.mismatch = std::abs(rep.wprime_plus - rep.wprime_minus);
    // relative to the target, with an absolute floor for the f' == 0 case
    const double floor_abs =
        1e-8 * std::abs(w0) * std::max(sys.a, std::abs(w0));
    const double tol = opts.match_tol * std::abs(rep.wprime_target) + floor_abs;
    rep.matched = std::abs(rep.wprime_minus - rep.wprime_target) <= tol &&
                  std::abs(rep.wprime_plus - rep.wprime_target) <= tol;
    if (!rep.matched) {
        std::ostringstream os;
        os << "C2 gluing failed: w'(0-) = " << rep.wprime_minus
           << ", w'(0+) = " << rep.wprime_plus << ", target = "
           << rep.wprime_target;
        throw numerical_error(os.str());
    }
    p.glue_report = rep;
    return p;
}

void reconstruct(Profile& p, const ShockData& shock, const GasConstants& k) {
    if (!p.sys.is_gas)
        throw validation_error("reconstruct: profile was not built from gas data");
    if (std::abs(p.sys.a - shock.a) > 1e-12 * shock.a ||
        std::abs(p.sys.j - shock.j) > 1e-12 * shock.j)
        throw validation_error("reconstruct: shock does not match the profile's system");
    (void)k;
    p.sigma = shock.sigma;
    p.v_minus = shock.v_minus;
    p.v_plus = shock.v_plus;
    p.C2 = shock.C2;
    fill_fields(p);
}

Profile resample_uniform(const Profile& p, double dxi) {
    if (!(dxi > 0.0))
        throw validation_error("resample_uniform: dxi must be > 0");
    if (p.size() < 2)
        throw validation_error("resample_uniform: profile too short");

    const double w0 = p.w0;
    const double w1 = w1_closed_form(p.sys, w0);

    Profile r;
    r.sys = p.sys;
    r.w0 = w0;
    r.glue_report = p.glue_report;
    r.sigma = p.sigma;
    r.v_minus = p.v_minus;
    r.v_plus = p.v_plus;
    r.C2 = p.C2;

    const long k_lo = static_cast<long>(std::ceil(p.xi.front() / dxi));
    const long k_hi = static_cast<long>(std::floor(p.xi.back() / dxi));
    if (k_hi <= k_lo)
        throw validation_error("resample_uniform: dxi larger than the grid span");

    std::size_t cell = 0;
    for (long kk = k_lo; kk <= k_hi; ++kk) {
        const double x = kk * dxi;
        while (cell + 2 < p.size() && p.xi[cell + 1] <= x) ++cell;
        const double x0 = p.xi[cell], x1 = p.xi[cell + 1];
        const double h = x1 - x0;
        const double t = (x - x0) / h;
        const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        const double h10 = t * (1.0 - t) * (1.0 - t);
        const double h01 = t * t * (3.0 - 2.0 * t);
        const double h11 = t * t * (t - 1.0);

        // v_hat with exact slopes w
        const double vh = h00 * p.v_hat[cell] + h10 * h * p.w[cell] +
                          h01 * p.v_hat[cell + 1] + h11 * h * p.w[cell + 1];
        // w with slopes dw/dxi = w Omega + Omega'_eta
        // (d Omega/dxi = Omega'_eta / v_hat, so the v_hat factors cancel)
        auto wp = [&](std::size_t i) {
            return p.w[i] * p.slope[i] +
                   slope_rate(p.sys, w0, p.v_hat[i], p.slope[i]);
        };
        const double wv = h00 * p.w[cell] + h10 * h * wp(cell) +
                          h01 * p.w[cell + 1] + h11 * h * wp(cell + 1);

        r.xi.push_back(x);
        r.v_hat.push_back(vh);
        r.w.push_back(wv);
        r.slope.push_back(vh == 0.0 ? w1 : (wv - w0) / vh);
    }

    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r.v_hat[i] < r.v_hat[i - 1]))
            throw numerical_error("resample_uniform: monotonicity lost");

    if (p.has_fields) fill_fields(r);
    return r;
}

} // namespace radshock
