// Independent verification of computed profiles: the integral equation by
// exact piecewise-linear convolution quadrature, the second-order ODE by
// finite differences, the radiative-flux cross-check, and the near-corner
// expansion coefficients with their empirical fits.

#include "radshock/verify.hpp"
#include "radshock/detail/fd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace radshock {

namespace {

// 1 - exp(-h)
double m1(double h) { return -std::expm1(-h); }

// 1 - (1 - exp(-h))/h, the weight of the downwind endpoint for the cell
// integral int_0^h exp(-(h-t)) lerp(t) dt; series below h ~ 1e-3 where the
// subtraction loses relative accuracy
double weight_B(double h) {
    if (h < 1e-3)
        return h * (0.5 - h / 6.0 + h * h / 24.0 - h * h * h / 120.0);
    return 1.0 - m1(h) / h;
}

// (1 - (1+h) exp(-h))/h, endpoint weight for int_0^h exp(-t) lerp(t) dt
double weight_D(double h) {
    if (h < 1e-3)
        return h * (0.5 - h / 3.0 + h * h / 8.0 - h * h * h / 30.0);
    return m1(h) / h - std::exp(-h);
}

// int_0^h exp(-(h-t)) (gl + (gr-gl) t/h) dt
double cell_left(double h, double gl, double gr) {
    return gl * m1(h) + (gr - gl) * weight_B(h);
}

// int_0^h exp(-t) (gl + (gr-gl) t/h) dt
double cell_right(double h, double gl, double gr) {
    return gl * m1(h) + (gr - gl) * weight_D(h);
}

std::vector<double> theta4_of(const Profile& p) {
    if (!p.has_fields)
        throw validation_error("verify: profile has no reconstructed fields");
    std::vector<double> g(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) g[i] = std::pow(p.theta[i], 4);
    return g;
}

} // namespace

ExponentialConvolution::ExponentialConvolution(std::vector<double> x,
                                               std::vector<double> g,
                                               ConvolutionOptions opts)
    : x_(std::move(x)), g_(std::move(g)) {
    if (x_.size() != g_.size() || x_.size() < 2)
        throw validation_error("convolution: need matching grids with >= 2 points");
    const std::size_t n = x_.size();
    padding_ = -std::log(opts.edge_tol);

    L_.resize(n);
    R_.resize(n);
    L_[0] = g_[0]; // constant tail: int_{-inf}^{x0} e^{y-x0} g0 dy
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = x_[i + 1] - x_[i];
        if (!(h > 0.0))
            throw validation_error("convolution: grid must be strictly increasing");
        L_[i + 1] = std::exp(-h) * L_[i] + cell_left(h, g_[i], g_[i + 1]);
    }
    R_[n - 1] = g_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        const double h = x_[i + 1] - x_[i];
        R_[i] = std::exp(-h) * R_[i + 1] + cell_right(h, g_[i], g_[i + 1]);
    }

    lo_ = 0;
    while (lo_ < n && x_[lo_] - x_.front() < padding_) ++lo_;
    hi_ = n - 1;
    while (hi_ > 0 && x_.back() - x_[hi_] < padding_) --hi_;
    if (lo_ >= hi_) {
        std::ostringstream os;
        os << "convolution: grid span " << x_.back() - x_.front()
           << " leaves no interior window; need padding >= " << padding_
           << " on both sides";
        throw validation_error(os.str());
    }
}

void ExponentialConvolution::require_interior(double x) const {
    if (x - x_.front() < padding_ || x_.back() - x < padding_) {
        std::ostringstream os;
        os << "convolution: evaluation point " << x
           << " closer than the required padding " << padding_
           << " to the grid edge [" << x_.front() << ", " << x_.back() << "]";
        throw validation_error(os.str());
    }
}

double ExponentialConvolution::flux_at(double x) const {
    require_interior(x);
    const std::size_t k =
        std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1;
    const std::size_t kk = std::min(k, x_.size() - 2);
    const double h = x_[kk + 1] - x_[kk];
    const double t = (x - x_[kk]) / h;
    const double gx = g_[kk] + (g_[kk + 1] - g_[kk]) * t;
    const double hl = x - x_[kk];
    const double hr = x_[kk + 1] - x;
    const double L = std::exp(-hl) * L_[kk] + cell_left(hl, g_[kk], gx);
    const double R = std::exp(-hr) * R_[kk + 1] + cell_right(hr, gx, g_[kk + 1]);
    return 0.5 * (L - R);
}

double ExponentialConvolution::smooth_at(double x) const {
    require_interior(x);
    const std::size_t k =
        std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1;
    const std::size_t kk = std::min(k, x_.size() - 2);
    const double h = x_[kk + 1] - x_[kk];
    const double t = (x - x_[kk]) / h;
    const double gx = g_[kk] + (g_[kk + 1] - g_[kk]) * t;
    const double hl = x - x_[kk];
    const double hr = x_[kk + 1] - x;
    const double L = std::exp(-hl) * L_[kk] + cell_left(hl, g_[kk], gx);
    const double R = std::exp(-hr) * R_[kk + 1] + cell_right(hr, gx, g_[kk + 1]);
    return 0.5 * (L + R);
}

double convolution_q(const Profile& p, double xi,
                     ConvolutionOptions opts) {
    ExponentialConvolution conv(p.xi, theta4_of(p), opts);
    return conv.flux_at(xi);
}

ResidualReport integral_residual(const Profile& p,
                                 ConvolutionOptions opts) {
    ExponentialConvolution conv(p.xi, theta4_of(p), opts);
    const double a = p.sys.a;
    const double K2 = 2.0 * (p.sys.gamma - 1.0) / (p.sys.j * (p.sys.gamma + 1.0));
    ResidualReport rep;
    rep.scale = a * a;
    for (std::size_t i = conv.window_lo(); i <= conv.window_hi(); ++i) {
        const double lhs = (p.v_hat[i] - a) * (p.v_hat[i] + a);
        const double r = std::abs(lhs - K2 * conv.flux_at_node(i));
        if (r > rep.max_abs) {
            rep.max_abs = r;
            rep.xi_at_max = p.xi[i];
        }
    }
    rep.max_scaled = rep.max_abs / rep.scale;
    return rep;
}

ResidualReport ode_residual(const Profile& p) {
    if (p.size() < 5)
        throw validation_error("ode_residual: profile too short");
    const double a = p.sys.a;
    std::vector<double> wprime = detail::derivative(p.xi, p.w);
    ResidualReport rep;
    rep.scale = a * a;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        const double vh = p.v_hat[i];
        const double w = p.w[i];
        const double r = std::abs(vh * wprime[i] + w * w + p.sys.f(vh) * w -
                                  0.5 * (vh - a) * (vh + a));
        if (r > rep.max_abs) {
            rep.max_abs = r;
            rep.xi_at_max = p.xi[i];
        }
    }
    rep.max_scaled = rep.max_abs / rep.scale;
    return rep;
}

QCrossCheck q_crosscheck(const Profile& p,
                         ConvolutionOptions opts) {
    if (!p.has_fields)
        throw validation_error("q_crosscheck: profile has no fields");
    ExponentialConvolution conv(p.xi, theta4_of(p), opts);
    QCrossCheck rep;
    for (double qv : p.q) rep.q_max = std::max(rep.q_max, std::abs(qv));
    for (std::size_t i = conv.window_lo(); i <= conv.window_hi(); ++i)
        rep.max_abs_diff = std::max(rep.max_abs_diff,
                                    std::abs(p.q[i] - conv.flux_at_node(i)));
    rep.rel = rep.max_abs_diff / rep.q_max;
    return rep;
}

double n_field_residual(const Profile& p) {
    if (!p.has_fields)
        throw validation_error("n_field_residual: profile has no fields");
    std::vector<double> n2 = detail::second_derivative(p.xi, p.n);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        worst = std::max(worst, std::abs(-n2[i] + p.n[i] -
                                         std::pow(p.theta[i], 4)));
    return worst;
}

ExpansionCoeffs expansion_coeffs(const ReducedSystem& sys, int n) {
    if (n < 0)
        throw validation_error("expansion_coeffs: order must be >= 0");
    const double f0 = sys.f0();
    const double a = sys.a;
    const double disc = f0 * f0 - 2.0 * a * a;
    if (!(disc > 0.0))
        throw no_smooth_profile(f0, a, "expansion_coeffs: discriminant <= 0");
    const double w0 = -a * a / (f0 + std::sqrt(disc));

    // f^(i)(0)/i! are just the monomial coefficients
    auto c = [&sys](int i) { return i <= 7 ? sys.f_coeffs[i] : 0.0; };

    ExpansionCoeffs ec;
    ec.order = n;
    ec.w.assign(n + 2, 0.0);
    ec.b.assign(n + 1, 0.0);
    ec.w[0] = w0;
    ec.b[0] = -c(1) * w0;
    for (int k = 1; k <= n + 1; ++k) {
        const double denom = f0 + (k + 2) * w0;
        if (!(denom > 0.0)) {
            std::ostringstream os;
            os << "expansion order " << n << " not available at amplitude "
               << a << ": f(0) + " << k + 2 << " w0 = " << denom
               << " <= 0 (max available order " << k - 2 << ")";
            throw expansion_unavailable(k - 2, os.str());
        }
        ec.denom.push_back(denom);
        ec.w[k] = ec.b[k - 1] / denom;
        if (k <= n) {
            if (k == 1) {
                ec.b[1] = 0.5 - 2.0 * ec.w[1] * ec.w[1] - c(1) * ec.w[1] -
                          c(2) * w0;
            } else {
                double bk = 0.0;
                for (int i = 1; i <= k + 1; ++i) bk -= c(i) * ec.w[k + 1 - i];
                for (int i = 1; i <= k; ++i)
                    bk -= (i + 1) * ec.w[i] * ec.w[k + 1 - i];
                ec.b[k] = bk;
            }
        }
    }
    return ec;
}

ExpansionFit expansion_fit(const Profile& p, const ExpansionCoeffs& coeffs,
                           const FitOptions& opts) {
    const double a = p.sys.a;
    const double lo = opts.window_lo * a;
    const double hi = opts.window_hi * a;

    std::vector<double> vh, om;
    std::size_t n_minus = 0, n_plus = 0;
    double min_abs = hi;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = p.v_hat[i];
        if (std::abs(x) < lo || std::abs(x) > hi) {
            if (std::abs(x) > 0.0) min_abs = std::min(min_abs, std::abs(x));
            continue;
        }
        vh.push_back(x);
        om.push_back(p.slope[i]);
        (x < 0.0 ? n_plus : n_minus)++;
    }
    if (n_minus < 30 || n_plus < 30 || min_abs > 2.0 * lo) {
        std::ostringstream os;
        os << "expansion_fit: insufficient samples near xi = 0 ("
           << n_minus << " / " << n_plus
           << " in window); increase terminal integration density";
        throw validation_error(os.str());
    }

    // quadratic least squares of (w - w0)/vhat = w1 + w2 vhat + w3 vhat^2,
    // in the scaled variable t = vhat/hi
    long double A[3][3] = {};
    long double rhs[3] = {};
    for (std::size_t i = 0; i < vh.size(); ++i) {
        const long double t = vh[i] / hi;
        const long double basis[3] = {1.0L, t, t * t};
        for (int r = 0; r < 3; ++r) {
            rhs[r] += basis[r] * om[i];
            for (int cc = 0; cc < 3; ++cc) A[r][cc] += basis[r] * basis[cc];
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 system
    int piv[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int best = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs((double)A[piv[r]][col]) > std::abs((double)A[piv[best]][col]))
                best = r;
        std::swap(piv[col], piv[best]);
        for (int r = col + 1; r < 3; ++r) {
            const long double m = A[piv[r]][col] / A[piv[col]][col];
            for (int cc = col; cc < 3; ++cc) A[piv[r]][cc] -= m * A[piv[col]][cc];
            rhs[piv[r]] -= m * rhs[piv[col]];
        }
    }
    long double sol[3];
    for (int col = 2; col >= 0; --col) {
        long double s = rhs[piv[col]];
        for (int cc = col + 1; cc < 3; ++cc) s -= A[piv[col]][cc] * sol[cc];
        sol[col] = s / A[piv[col]][col];
    }

    ExpansionFit fit;
    fit.w1_fit = static_cast<double>(sol[0]);
    fit.w2_fit = static_cast<double>(sol[1] / hi);
    fit.samples_minus = n_minus;
    fit.samples_plus = n_plus;

    // remainder decay per order: r_k = (w - sum_{i<=k} w_i vhat^i)/vhat^k
    const int kmax = coeffs.order + 1;
    for (int k = 0; k <= kmax; ++k) {
        long double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = 0;
        double first_bin = 0.0, last_bin = 0.0;
        std::size_t nf = 0, nl = 0;
        for (std::size_t i = 0; i < vh.size(); ++i) {
            // r_k via the slope variable: (om - sum_{i=1..k} w_i vh^{i-1})/vh^{k-1}
            long double num = om[i];
            long double pw = 1.0L;
            for (int ii = 1; ii <= k; ++ii) {
                num -= coeffs.w[ii] * pw;
                pw *= vh[i];
            }
            double rk = k == 0 ? static_cast<double>(num) * vh[i]
                               : static_cast<double>(num / (pw / vh[i]));
            if (rk == 0.0) continue;
            const double lx = std::log(std::abs(vh[i]));
            const double ly = std::log(std::abs(rk));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++m;
            if (std::abs(vh[i]) < 2.0 * lo) {
                first_bin += std::abs(rk);
                ++nf;
            }
            if (std::abs(vh[i]) > 0.5 * hi) {
                last_bin += std::abs(rk);
                ++nl;
            }
        }
        double slope = 0.0;
        if (m >= 4) {
            const long double det = m * sxx - sx * sx;
            slope = static_cast<double>((m * sxy - sx * sy) / det);
        }
        fit.trend_slope.push_back(slope);
        const bool dec = nf > 0 && nl > 0 && first_bin / nf < last_bin / nl;
        fit.decreasing.push_back(dec ? 1 : 0);
    }
    return fit;
}

int regularity_order(const ReducedSystem& sys) {
    const double f0 = sys.f0();
    const double a = sys.a;
    const double disc = f0 * f0 - 2.0 * a * a;
    if (!(disc > 0.0))
        throw no_smooth_profile(f0, a, "regularity_order: discriminant <= 0");
    const double w0 = -a * a / (f0 + std::sqrt(disc));
    const double T = -f0 / w0;
    if (T > 80.0) return 64; // reported as the cap
    int n = static_cast<int>(std::floor(T)) - 4;
    while (n >= 0 && !(f0 + (n + 4) * w0 > 0.0)) --n;
    while (f0 + (n + 5) * w0 > 0.0) ++n;
    return std::clamp(n, 0, 64);
}

GammaCondition gamma_condition(const GasConstants& k) {
    GammaCondition g;
    g.threshold = (std::sqrt(7.0) + 1.0) / (std::sqrt(7.0) - 1.0);
    g.margin = g.threshold - k.gamma;
    g.ok = k.gamma > 1.0 && k.gamma < g.threshold;
    return g;
}

} // namespace radshock
