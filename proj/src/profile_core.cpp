// Reduced planar system: polynomial assembly, equilibrium analysis,
// nullclines, and the heteroclinic shooting integrator.
//
// The two connecting orbits are integrated in the node chart
//   Omega = (W - w0) / V,  so  W = w0 + V Omega,
// which turns the auxiliary system into
//   V'     = V (w0 + V Omega),
//   Omega' = -w0 (f(V) - f(0))/V - 2 V Omega^2 - 3 w0 Omega - f(V) Omega + V/2.
// The orbit enters the node along the slow eigendirection, so Omega tends
// to the tangency slope w1 = -f'(0) w0 / (f(0) + 3 w0) with no cancellation;
// everything downstream (gluing, expansion fits) reads that slope directly.

#include "radshock/profile_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace radshock {

namespace {

double stable_node_w0(double f0, double a) {
    const double disc = f0 * f0 - 2.0 * a * a;
    if (!(disc > 0.0)) {
        std::ostringstream os;
        os << "no smooth profile: f(0)^2 - 2 a^2 = " << disc
           << " <= 0 at f(0) = " << f0 << ", a = " << a;
        throw no_smooth_profile(f0, a, os.str());
    }
    // (-f0 + sqrt(f0^2 - 2 a^2)) / 2 without cancellation
    return -a * a / (f0 + std::sqrt(disc));
}

// (-f + sqrt(f^2 + 4 a^2)) / 2 without cancellation (f > 0)
double unstable_eigenvalue(double f, double a) {
    return 2.0 * a * a / (f + std::sqrt(f * f + 4.0 * a * a));
}

} // namespace

ReducedSystem build_reduced(const ShockData& shock, const GasConstants& k) {
    if (shock.family != 1)
        throw validation_error("build_reduced: expects 1-shock data "
                               "(build 3-shock profiles by reflection)");
    if (!(shock.a > 0.0))
        throw validation_error("build_reduced: degenerate shock with a = 0");
    const double g = k.gamma;
    const double R4 = std::pow(k.R, 4);
    const double A = 4.0 * (g - 1.0) / (shock.j * R4 * (g + 1.0));
    const double p = shock.C1 / (g + 1.0);
    const double q = g * shock.C1 / (g + 1.0);
    const double r = (g - 1.0) * shock.C1 / (g + 1.0);

    Polynomial f = Polynomial::linear(p, -1.0).pow3() *
                   Polynomial::linear(q, 1.0).pow3() *
                   Polynomial::linear(r, 2.0) * A;

    ReducedSystem sys;
    sys.gamma = g;
    sys.R = k.R;
    sys.j = shock.j;
    sys.C1 = shock.C1;
    sys.a = 0.5 * (shock.v_minus - shock.v_plus);
    sys.is_gas = true;
    for (int i = 0; i <= 7; ++i) sys.f_coeffs[i] = f.coeff(i);

    // expanded coefficients must reproduce the factored product
    double fmax = 0.0;
    for (int i = 0; i <= 20; ++i) {
        double x = -sys.a + 2.0 * sys.a * i / 20.0;
        fmax = std::max(fmax, std::abs(sys.f(x)));
    }
    for (int i = 0; i <= 20; ++i) {
        double x = -sys.a + 2.0 * sys.a * i / 20.0;
        double prod = A * std::pow(p - x, 3) * std::pow(x + q, 3) * (2.0 * x + r);
        if (std::abs(sys.f(x) - prod) > 1e-12 * fmax)
            throw numerical_error("build_reduced: expanded f disagrees with "
                                  "the factored product");
    }

    stable_node_w0(sys.f0(), sys.a); // discriminant gate
    return sys;
}

Polynomial f_derivatives(const ReducedSystem& sys, int order) {
    if (order < 0 || order > 9)
        throw validation_error("f_derivatives: order must be in [0, 9]");
    return sys.f_poly().derivative(order);
}

EquilibriumReport equilibria(const ReducedSystem& sys) {
    const double a = sys.a;
    const double f0 = sys.f0();
    EquilibriumReport eq;
    eq.w0 = stable_node_w0(f0, a);
    eq.mu2 = unstable_eigenvalue(sys.f(a), a);
    eq.mu1 = 0.5 * (-sys.f(a) - std::sqrt(sys.f(a) * sys.f(a) + 4.0 * a * a));
    eq.nu2 = unstable_eigenvalue(sys.f(-a), a);
    eq.nu1 = 0.5 * (-sys.f(-a) - std::sqrt(sys.f(-a) * sys.f(-a) + 4.0 * a * a));
    eq.lambda1 = eq.w0;
    eq.lambda2 = -2.0 * eq.w0 - f0;
    eq.b0 = -sys.f_coeffs[1] * eq.w0;
    eq.r2 = {a, eq.mu2};
    eq.R2 = {-a, eq.nu2};
    eq.e1_0 = {f0 + 3.0 * eq.w0, eq.b0};
    eq.e2_0 = {0.0, 1.0};
    if (!(eq.lambda2 < eq.lambda1 && eq.lambda1 < 0.0)) {
        std::ostringstream os;
        os << "amplitude too large for C2 theory: node ordering "
              "lambda2 < lambda1 < 0 fails (f(0) + 3 w0 = "
           << f0 + 3.0 * eq.w0 << ")";
        throw validation_error(os.str());
    }
    return eq;
}

NullclineData nullclines(const ReducedSystem& sys) {
    const double a = sys.a;
    const int n_grid = 1000;
    Polynomial fp = sys.f_poly().derivative();

    ReducedSystem probe = sys;
    NullclineData tmp(probe, 0.0, true);
    for (int i = 0; i <= n_grid; ++i) {
        double V = -a + 2.0 * a * i / n_grid;
        if (!(tmp.Delta(V) > 0.0))
            throw validation_error("nullclines: Delta(V) <= 0 on [-a, a]; "
                                   "amplitude outside the small-shock regime");
        if (!(sys.f(V) > 0.0))
            throw validation_error("nullclines: f(V) <= 0 on [-a, a]; "
                                   "amplitude outside the small-shock regime");
    }

    bool f_constant = true;
    for (int i = 1; i <= 7; ++i)
        if (sys.f_coeffs[i] != 0.0) f_constant = false;

    auto numerator = [&](double V) { return V - tmp.W1(V) * fp(V); };

    if (f_constant || !(numerator(0.0) > 0.0)) {
        // W1' proportional to V: critical point collapses to the boundary
        return NullclineData(sys, 0.0, true);
    }
    if (!(numerator(-a) < 0.0))
        throw validation_error("nullclines: W1'(-a) >= 0, outside the small-amplitude regime");

    // exactly one sign change of W1' across [-a, a]
    int changes = 0;
    double prev = numerator(-a);
    for (int i = 1; i <= n_grid; ++i) {
        double V = -a + 2.0 * a * i / n_grid;
        double cur = numerator(V);
        if (prev < 0.0 && cur >= 0.0) ++changes;
        if (prev > 0.0 && cur <= 0.0) ++changes;
        if (cur != 0.0) prev = cur;
    }
    if (changes != 1)
        throw validation_error("nullclines: W1' changes sign more than once; "
                               "amplitude too large");

    double lo = -a, hi = 0.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-16 * a; ++it) {
        double mid = 0.5 * (lo + hi);
        (numerator(mid) < 0.0 ? lo : hi) = mid;
    }
    return NullclineData(sys, 0.5 * (lo + hi), false);
}

Vec2 vector_field(const ReducedSystem& sys, Vec2 p) {
    return {p.x * p.y,
            -p.y * p.y - sys.f(p.x) * p.y + 0.5 * (p.x * p.x - sys.a * sys.a)};
}

Mat2 jacobian(const ReducedSystem& sys, Vec2 p) {
    Polynomial fp = sys.f_poly().derivative();
    Mat2 m;
    m.a11 = p.y;
    m.a12 = p.x;
    m.a21 = -fp(p.x) * p.y + p.x;
    m.a22 = -2.0 * p.y - sys.f(p.x);
    return m;
}

namespace {

struct ChartState {
    double V = 0.0;
    double Omega = 0.0; // (W - w0) / V
};

class ChartField {
public:
    ChartField(const ReducedSystem& sys, double w0) : sys_(sys), w0_(w0) {}

    ChartState operator()(const ChartState& y) const {
        const double fV = sys_.f(y.V);
        const double FV = sys_.f_offset_quotient(y.V);
        ChartState d;
        d.V = y.V * (w0_ + y.V * y.Omega);
        d.Omega = -w0_ * FV - 2.0 * y.V * y.Omega * y.Omega -
                  3.0 * w0_ * y.Omega - fV * y.Omega + 0.5 * y.V;
        return d;
    }
    // partial derivatives of the Omega component, for the ell1 diagnostic
    double dOmega_dV(const ChartState& y) const {
        Polynomial Fp = Polynomial(std::vector<double>(sys_.f_coeffs.begin() + 1,
                                                       sys_.f_coeffs.end()))
                            .derivative();
        Polynomial fp = sys_.f_poly().derivative();
        return -w0_ * Fp(y.V) - 2.0 * y.Omega * y.Omega - fp(y.V) * y.Omega + 0.5;
    }
    double dOmega_dOmega(const ChartState& y) const {
        return -4.0 * y.V * y.Omega - 3.0 * w0_ - sys_.f(y.V);
    }

private:
    ReducedSystem sys_;
    double w0_;
};

struct Containment {
    const NullclineData* nc;
    ManifoldSide side;
    double a;
    double slack;

    // empty string when (V, W) lies inside the invariant set
    const char* violation(double V, double W) const {
        if (W > slack) return "W <= 0";
        if (side == ManifoldSide::flat) {
            if (V < -slack) return "V >= 0";
            if (V > a + slack) return "V <= a";
            if (W < nc->W1(V) - slack) return "W >= W1(V)";
        } else {
            if (V > slack) return "V <= 0";
            if (V < -a - slack) return "V >= -a";
            double floor_w =
                V <= nc->vbar() ? nc->W1(V) : nc->W1(nc->vbar());
            if (W < floor_w - slack) return "W >= K2 floor";
        }
        return nullptr;
    }
};

// Dormand-Prince 5(4) step on the chart state.
struct Dopri5 {
    ChartField f;

    ChartState k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{};

    static ChartState axpy(const ChartState& y, std::initializer_list<std::pair<double, const ChartState*>> terms,
                           double h) {
        double v = 0.0, o = 0.0;
        for (auto& [c, k] : terms) {
            v += c * k->V;
            o += c * k->Omega;
        }
        return {y.V + h * v, y.Omega + h * o};
    }

    // returns the 5th order solution and the embedded error estimate
    ChartState step(const ChartState& y, double h, ChartState& err, bool have_k1) {
        if (!have_k1) k1 = f(y);
        k2 = f(axpy(y, {{1.0 / 5, &k1}}, h));
        k3 = f(axpy(y, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}, h));
        k4 = f(axpy(y, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}, h));
        k5 = f(axpy(y, {{19372.0 / 6561, &k1}, {-25360.0 / 2187, &k2},
                        {64448.0 / 6561, &k3}, {-212.0 / 729, &k4}}, h));
        k6 = f(axpy(y, {{9017.0 / 3168, &k1}, {-355.0 / 33, &k2},
                        {46732.0 / 5247, &k3}, {49.0 / 176, &k4},
                        {-5103.0 / 18656, &k5}}, h));
        ChartState y5 = axpy(y, {{35.0 / 384, &k1}, {500.0 / 1113, &k3},
                                 {125.0 / 192, &k4}, {-2187.0 / 6784, &k5},
                                 {11.0 / 84, &k6}}, h);
        k7 = f(y5);
        // difference of the 5th and embedded 4th order weights
        err.V = h * (71.0 / 57600 * k1.V - 71.0 / 16695 * k3.V +
                     71.0 / 1920 * k4.V - 17253.0 / 339200 * k5.V +
                     22.0 / 525 * k6.V - 1.0 / 40 * k7.V);
        err.Omega = h * (71.0 / 57600 * k1.Omega - 71.0 / 16695 * k3.Omega +
                         71.0 / 1920 * k4.Omega - 17253.0 / 339200 * k5.Omega +
                         22.0 / 525 * k6.Omega - 1.0 / 40 * k7.Omega);
        return y5;
    }
};

} // namespace

Trajectory integrate_manifold(const ReducedSystem& sys, const EquilibriumReport& eq,
                              ManifoldSide side, const IntegrateOptions& opts) {
    const double a = sys.a;
    const double w0 = eq.w0;
    NullclineData nc = nullclines(sys);

    // eta step cap so that the trapezoid quadrature of Xi meets xi_quad_tol;
    // the orbit's V-curvature rate is bounded by the node/saddle eigenvalues.
    const double rate = std::max({std::abs(w0), eq.mu2, eq.nu2,
                                  std::sqrt(w0 * w0 + std::abs(w0) * std::max(eq.mu2, eq.nu2))});
    const double h_max = std::sqrt(12.0 * opts.xi_quad_tol) / (1.5 * rate);

    const double terminal_tol = opts.terminal_tol_factor * std::max(a, std::abs(w0));
    const double omega_scale = std::abs(w0) / a;
    const double dxi_min = opts.thin_min_dxi_factor * (a / std::abs(w0));

    // Step-count estimate before committing to the run. The node phase is
    // stiff when |lambda2| >> |w0| (ratio ~ 2 f(0)^2 / a^2), and an explicit
    // stepper cannot exceed h ~ 3/|lambda2| there no matter how slow the
    // orbit is; refuse up front instead of grinding into the step limit.
    {
        const double h_stab = 3.0 / std::abs(eq.lambda2);
        const double h_eff = std::min(h_max, h_stab);
        const double span_est =
            (std::log(1.0 / opts.start_offset_factor) + 5.0) /
                std::min(eq.mu2, eq.nu2) +
            (std::log(std::max(a, std::abs(w0)) / terminal_tol) + 5.0) /
                std::abs(w0);
        if (span_est / h_eff > static_cast<double>(opts.max_steps)) {
            std::ostringstream os;
            os << "integrate_manifold: estimated " << span_est / h_eff
               << " steps exceeds the limit " << opts.max_steps
               << "; the node phase is stiff at this amplitude "
                  "(|lambda2|/|w0| = "
               << std::abs(eq.lambda2 / w0)
               << "). Increase the amplitude or max_steps.";
            throw numerical_error(os.str());
        }
    }

    const Vec2 evec = side == ManifoldSide::flat ? eq.r2 : eq.R2;
    const double enorm = std::hypot(evec.x, evec.y);
    const Vec2 saddle = side == ManifoldSide::flat ? Vec2{a, 0.0} : Vec2{-a, 0.0};

    Containment box{&nc, side, a, opts.containment_slack};
    ChartField field(sys, w0);
    Dopri5 stepper{field};

    std::string last_violation;
    for (int attempt = 0; attempt <= opts.max_offset_retries; ++attempt) {
        const double s = opts.start_offset_factor * a / std::pow(2.0, attempt);
        const double V0 = saddle.x - s * evec.x / enorm;
        const double W0 = -s * evec.y / enorm;

        if (const char* v = box.violation(V0, W0)) {
            last_violation = v;
            continue;
        }

        Trajectory out;
        out.side = side;
        out.w0 = w0;
        out.start_offset = s;

        ChartState y{V0, (W0 - w0) / V0};
        double eta = 0.0;
        double S = 0.0; // accumulated int V deta
        double h = std::min(h_max, 0.01 / rate);
        double last_kept_S = 0.0;
        // shadow trapezoid over every other step, for the refinement gap
        double S2 = 0.0, eta_mark = 0.0, V_mark = V0, gap = 0.0;
        int parity = 0;

        out.samples.push_back({eta, y.V, W0, y.Omega, S});

        // W monotonicity bookkeeping at full step resolution
        int w_dir = 0; // -1 falling, +1 rising
        const double w_deadband = 1e-13 * std::max(a, std::abs(w0));
        double w_prev = W0;

        bool have_k1 = false;
        std::size_t step = 0;
        std::size_t accepted = 0;
        bool done = false;
        bool failed = false;

        while (!done) {
            if (++step > opts.max_steps)
                throw numerical_error("integrate_manifold: step limit exceeded");
            ChartState err;
            ChartState ynew = stepper.step(y, h, err, have_k1);
            const double scV = opts.atol * a + opts.rtol * std::abs(y.V);
            const double scO = opts.atol * omega_scale + opts.rtol * std::abs(y.Omega);
            const double en = std::max(std::abs(err.V) / scV, std::abs(err.Omega) / scO);

            if (en > 1.0) {
                have_k1 = true; // k1 still valid at y
                h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
                if (h < 1e-14 / rate)
                    throw numerical_error("integrate_manifold: step rejection "
                                          "cascade (stiffness) at V = " +
                                          std::to_string(y.V));
                continue;
            }

            const double Wnew = w0 + ynew.V * ynew.Omega;
            if (const char* v = box.violation(ynew.V, Wnew)) {
                if (accepted == 0) {
                    // curvature pushed the offset point outside: retry closer
                    last_violation = v;
                    failed = true;
                    break;
                }
                std::ostringstream os;
                os << "integrate_manifold: orbit left its compact set ("
                   << v << ") at eta = " << eta + h << ", V = " << ynew.V
                   << ", W = " << Wnew << "; amplitude outside validity";
                throw numerical_error(os.str());
            }

            // trapezoid cell of Xi at full resolution
            S += 0.5 * (y.V + ynew.V) * h;
            eta += h;
            if (++parity == 2) {
                S2 += 0.5 * (V_mark + ynew.V) * (eta - eta_mark);
                eta_mark = eta;
                V_mark = ynew.V;
                parity = 0;
                gap = std::max(gap, std::abs(S - S2));
            }
            if (ynew.V == y.V || (side == ManifoldSide::flat ? ynew.V > y.V
                                                             : ynew.V < y.V))
                out.v_monotone = false;

            const double dw = Wnew - w_prev;
            if (dw > w_deadband) {
                if (w_dir < 0) ++out.w_min_count;
                w_dir = 1;
                w_prev = Wnew;
            } else if (dw < -w_deadband) {
                if (w_dir > 0) ++out.w_max_count;
                w_dir = -1;
                w_prev = Wnew;
            }

            y = ynew;
            stepper.k1 = stepper.k7; // FSAL
            have_k1 = true;
            ++accepted;

            const double dist = std::abs(y.V) * std::hypot(1.0, y.Omega);
            done = dist <= terminal_tol;

            const double stretch =
                std::min(300.0, a / std::sqrt(std::max(a * a - y.V * y.V, a * a * 1e-8)));
            if (done || std::abs(S - last_kept_S) >= dxi_min * stretch) {
                out.samples.push_back({eta, y.V, w0 + y.V * y.Omega, y.Omega, S});
                last_kept_S = S;
            }

            h = std::min({h * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-10), -0.2))),
                          h_max});
        }
        if (failed) continue;

        if (parity == 1) {
            S2 += 0.5 * (V_mark + y.V) * (eta - eta_mark);
            gap = std::max(gap, std::abs(S - S2));
        }
        out.xi_quad_refinement_gap = gap;
        out.step_count = accepted;
        out.terminal_error = std::abs(y.V) * std::hypot(1.0, y.Omega);
        out.terminal_slope = y.Omega;
        // int_{eta_end}^{inf} V dzeta with V' ~ w0 V near the node
        out.tail_integral = -(y.V / w0) * (1.0 - 0.5 * y.V * y.Omega / w0);
        out.xi_total = S + out.tail_integral;

        // ell1 diagnostic: slope''/V' = d(Omega')/d(eta) / V' at the node
        {
            ChartState d = field(y);
            double ratio = d.Omega / d.V; // Omega'/V' -> w2
            out.ell1_estimate =
                field.dOmega_dV(y) + field.dOmega_dOmega(y) * ratio;
        }
        return out;
    }
    throw numerical_error("integrate_manifold: start point not inside the "
                          "compact set after retries (" + last_violation + ")");
}

ValidityReport check_hypotheses(const ReducedSystem& sys) {
    ValidityReport rep;
    const double a = sys.a;
    const double f0 = sys.f0();
    Polynomial fp = sys.f_poly().derivative();

    auto add = [&rep](const std::string& name, bool ok, double margin) {
        rep.checks.push_back({name, ok, margin});
        if (!ok && rep.first_failure.empty()) rep.first_failure = name;
    };

    double fmin = std::numeric_limits<double>::infinity();
    double fpmin = std::numeric_limits<double>::infinity();
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
        double V = -a + 2.0 * a * i / 1000.0;
        double f = sys.f(V);
        fmin = std::min(fmin, f);
        fpmin = std::min(fpmin, fp(V));
        dmin = std::min(dmin, f * f + 2.0 * (V * V - a * a));
    }

    // listed in the order they bind as a grows for this family:
    // node ordering fails at a = (2/3) f(0), the discriminant at f(0)/sqrt(2)
    const double disc = f0 * f0 - 2.0 * a * a;
    double w0 = disc > 0.0 ? -a * a / (f0 + std::sqrt(disc)) : 0.0;
    add("node ordering f(0) + 3 w0 > 0", disc > 0.0 && f0 + 3.0 * w0 > 0.0,
        disc > 0.0 ? f0 + 3.0 * w0 : -1.0);
    add("discriminant f(0)^2 - 2a^2 > 0", disc > 0.0, disc);
    add("f > 0 on [-a, a]", fmin > 0.0, fmin);
    add("f' > 0 on [-a, a]", fpmin > 0.0, fpmin);
    add("Delta > 0 on [-a, a]", dmin > 0.0, dmin);

    rep.all_ok = true;
    for (auto& c : rep.checks) rep.all_ok = rep.all_ok && c.ok;
    return rep;
}

} // namespace radshock
