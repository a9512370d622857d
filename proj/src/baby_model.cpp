#include "radshock/baby_model.hpp"

#include <cmath>
#include <sstream>

namespace radshock {

ReducedSystem baby_reduced(double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw validation_error("baby_reduced: amplitude must be > 0");
    if (!(1.0 - 2.0 * a * a > 0.0)) {
        std::ostringstream os;
        os << "baby_reduced: no smooth profile, discriminant 1 - 2 a^2 = "
           << 1.0 - 2.0 * a * a << " <= 0 at a = " << a;
        throw no_smooth_profile(1.0, a, os.str());
    }
    ReducedSystem sys;
    sys.a = a;
    sys.f_coeffs = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    sys.is_gas = false;
    return sys;
}

Profile baby_profile(double a, const IntegrateOptions& opts,
                     const GlueOptions& glue_opts) {
    ReducedSystem sys = baby_reduced(a);
    EquilibriumReport eq = equilibria(sys);
    Trajectory flat = integrate_manifold(sys, eq, ManifoldSide::flat, opts);
    Trajectory sharp = integrate_manifold(sys, eq, ManifoldSide::sharp, opts);
    Profile p = glue(flat, sharp, sys, eq, glue_opts);
    p.q.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p.q[i] = 0.5 * (a - p.v_hat[i]) * (a + p.v_hat[i]);
    return p;
}

double baby_energy_residual(const Profile& p,
                            ConvolutionOptions opts) {
    if (p.sys.is_gas)
        throw validation_error("baby_energy_residual: gas profile passed");
    const double a = p.sys.a;
    ExponentialConvolution conv(p.xi, p.w, opts);
    double worst = 0.0;
    for (std::size_t i = conv.window_lo(); i <= conv.window_hi(); ++i) {
        const double q_conv = -conv.smooth_at_node(i);
        const double q_alg = 0.5 * (a - p.v_hat[i]) * (a + p.v_hat[i]);
        worst = std::max(worst, std::abs(q_conv - q_alg));
    }
    return worst;
}

} // namespace radshock
