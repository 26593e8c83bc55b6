#include "emfwd/greens.hpp"

#include <cassert>
#include <cmath>

#include "emfwd/constants.hpp"

namespace emfwd {

namespace {

constexpr double kCoincidenceGuard = 1e-9;  // m

void check_pair(const Vec3& x, const Vec3& y) {
    if ((x - y).norm() < kCoincidenceGuard)
        throw std::domain_error("greens: field and source points coincide");
}

void check_sides(const Vec3& x, const Vec3& y) {
    if (!(x.z > 0.0)) throw std::domain_error("greens: field point must satisfy x3 > 0");
    if (!(y.z < 0.0)) throw std::domain_error("greens: source point must satisfy y3 < 0");
}

// kappa^p / (gamma + mu_rs kappa) * exp(-kappa x3 + gamma y3)
SpectralKernel gs_kernel(const HalfSpaceContext& ctx, double x3, double y3, int power) {
    const Complex k2 = ctx.k_squared;
    const double mu = ctx.soil.mu_rs;
    const bool main_text = ctx.main_text_exponent;
    SpectralKernel f;
    f.decay_scale = x3 - y3;
    f.eval = [k2, mu, x3, y3, power, main_text](double kappa) {
        const Complex gamma = std::sqrt(Complex(kappa * kappa, 0.0) - k2);
        assert(gamma.real() >= 0.0);
        double kp = kappa;
        for (int i = 1; i < power; ++i) kp *= kappa;
        const Complex expo = main_text ? (-gamma * x3 + kappa * y3) : (-kappa * x3 + gamma * y3);
        return kp / (gamma + mu * kappa) * std::exp(expo);
    };
    return f;
}

struct Radial {
    double rho;
    double c1, c2;  // direction cosines of x_t - y_t; zero on-axis
};

Radial radial_of(const Vec3& x, const Vec3& y) {
    Radial r;
    const double dx = x.x - y.x, dy = x.y - y.y;
    r.rho = std::hypot(dx, dy);
    if (r.rho > 0.0) {
        r.c1 = dx / r.rho;
        r.c2 = dy / r.rho;
    } else {
        r.c1 = r.c2 = 0.0;
    }
    return r;
}

}  // namespace

HalfSpaceContext HalfSpaceContext::make(const SoilParams& soil, double omega) {
    HalfSpaceContext ctx;
    ctx.soil = soil;
    ctx.omega = omega;
    ctx.k_squared = Complex(0.0, omega * kMu0 * soil.sigma_s);
    return ctx;
}

double g0(const Vec3& x, const Vec3& y) {
    check_pair(x, y);
    return 1.0 / (4.0 * kPi * (x - y).norm());
}

Vec3 grad_g0(const Vec3& x, const Vec3& y) {
    check_pair(x, y);
    const Vec3 r = x - y;
    const double rn = r.norm();
    const double s = -1.0 / (4.0 * kPi * rn * rn * rn);
    return r * s;
}

ComplexTensor3 hess_g0(const Vec3& x, const Vec3& y) {
    check_pair(x, y);
    const Vec3 r = x - y;
    const double rn = r.norm();
    const double inv = 1.0 / (4.0 * kPi * rn * rn * rn);
    const Vec3 u = r * (1.0 / rn);
    ComplexTensor3 h;
    const double uu[3] = {u.x, u.y, u.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            h(i, j) = (3.0 * uu[i] * uu[j] - (i == j ? 1.0 : 0.0)) * inv;
    return h;
}

GsValue gs(const Vec3& x, const Vec3& y, const HalfSpaceContext& ctx,
           const QuadratureSettings& settings) {
    check_sides(x, y);
    check_pair(x, y);
    const Radial r = radial_of(x, y);
    const HankelResult h = hankel_transform(gs_kernel(ctx, x.z, y.z, 1), 0, r.rho, settings);
    const double inv2pi = 1.0 / (2.0 * kPi);
    return {h.value * inv2pi, h.error * inv2pi};
}

GsGradient grad_gs(const Vec3& x, const Vec3& y, const HalfSpaceContext& ctx,
                   const QuadratureSettings& settings) {
    check_sides(x, y);
    check_pair(x, y);
    const Radial r = radial_of(x, y);
    const SpectralKernel k2 = gs_kernel(ctx, x.z, y.z, 2);
    const HankelResult b0 = hankel_transform(k2, 0, r.rho, settings);
    const HankelResult b1 = hankel_transform(k2, 1, r.rho, settings);
    const double inv2pi = 1.0 / (2.0 * kPi);
    GsGradient g;
    g.value = CVec3(-r.c1 * b1.value * inv2pi, -r.c2 * b1.value * inv2pi, -b0.value * inv2pi);
    g.error = (b0.error + b1.error) * inv2pi;
    return g;
}

GsHessian hess_gs(const Vec3& x, const Vec3& y, const HalfSpaceContext& ctx,
                  const QuadratureSettings& settings) {
    check_sides(x, y);
    check_pair(x, y);
    const Radial r = radial_of(x, y);
    const SpectralKernel k3 = gs_kernel(ctx, x.z, y.z, 3);
    const HankelResult a0 = hankel_transform(k3, 0, r.rho, settings);
    const HankelResult a1 = hankel_transform(k3, 1, r.rho, settings);
    const HankelResult a2 = hankel_transform(k3, 2, r.rho, settings);
    const double inv2pi = 1.0 / (2.0 * kPi);
    const Complex A0 = a0.value * inv2pi;
    const Complex A1 = a1.value * inv2pi;
    const Complex A2 = a2.value * inv2pi;

    // Second tangential derivatives of J0(kappa rho) expand in J0, J2 and the
    // direction cosines; the trace cancels identically with the axial term.
    const double c[2] = {r.c1, r.c2};
    GsHessian h;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            h.value(i, j) = (i == j ? -0.5 * (A0 + A2) : Complex(0.0)) + c[i] * c[j] * A2;
    h.value(0, 2) = h.value(2, 0) = r.c1 * A1;
    h.value(1, 2) = h.value(2, 1) = r.c2 * A1;
    h.value(2, 2) = A0;
    h.error = (a0.error + a1.error + a2.error) * inv2pi;
    return h;
}

}  // namespace emfwd
