#pragma once

// Free-space Laplace Green's function G0 and the air-side half-space Green's
// function Gs, with gradients and Hessians.
//
// Gs couples a source point y in the soil (y3 < 0) to a field point x in air
// (x3 > 0) across the ground plane x3 = 0:
//
//   Gs(x,y) = (1/2pi) int_0^inf  kappa / (gamma + mu_rs kappa)
//                                 * exp(-kappa x3 + gamma y3) J_0(kappa rho) dkappa,
//
// with rho = |x_t - y_t|, gamma = sqrt(kappa^2 - k^2), Re gamma > 0 and
// k^2 = i omega mu0 sigma_s. For sigma_s = 0, mu_rs = 1 this reduces termwise
// to G0 = 1/(4 pi |x-y|). Derivatives are taken spectrally (orders 0..2), not
// by finite differences; finite differences stay in the test suite as oracles.

#include "emfwd/geometry.hpp"
#include "emfwd/model.hpp"
#include "emfwd/quadrature.hpp"

namespace emfwd {

enum class GreensChoice { FreeSpace, HalfSpace };

struct HalfSpaceContext {
    SoilParams soil;
    double omega = 0.0;
    Complex k_squared{0.0, 0.0};  // i * omega * mu0 * sigma_s, set by make()

    // Diagnostic switch: evaluate the exponent variant exp(-gamma x3 + kappa y3)
    // instead of the production form exp(-kappa x3 + gamma y3). The production
    // form is the one that is harmonic in air and has the Laplace limit; the
    // variant is kept only so the two can be compared.
    bool main_text_exponent = false;

    static HalfSpaceContext make(const SoilParams& soil, double omega);
};

struct GsValue {
    Complex value{0.0, 0.0};
    double error = 0.0;  // propagated quadrature error (absolute)
};

struct GsGradient {
    CVec3 value;
    double error = 0.0;
};

struct GsHessian {
    ComplexTensor3 value;
    double error = 0.0;
};

// 1/(4 pi |x-y|); throws on |x-y| below the coincidence guard (1e-9 m).
double g0(const Vec3& x, const Vec3& y);
Vec3 grad_g0(const Vec3& x, const Vec3& y);
// (3 rhat rhat^T - I) / (4 pi r^3), symmetric, trace-free
ComplexTensor3 hess_g0(const Vec3& x, const Vec3& y);

GsValue gs(const Vec3& x, const Vec3& y, const HalfSpaceContext& ctx,
           const QuadratureSettings& settings = {});
GsGradient grad_gs(const Vec3& x, const Vec3& y, const HalfSpaceContext& ctx,
                   const QuadratureSettings& settings = {});
GsHessian hess_gs(const Vec3& x, const Vec3& y, const HalfSpaceContext& ctx,
                  const QuadratureSettings& settings = {});

}  // namespace emfwd
