#pragma once

// Semi-infinite Hankel-transform quadrature
//
//     I = integral_0^inf f(kappa) J_n(kappa * rho) dkappa,   n in {0,1,2},
//
// for complex-valued kernels f that decay exponentially. Two strategies:
//
//  * adaptive Gauss-Kronrod panels on a truncated interval [0, kappa_max],
//    used when the Bessel factor oscillates slowly (rho <= decay scale);
//  * partition-extrapolation: the integral is split at consecutive zeros of
//    J_n(kappa * rho) and the alternating partial sums are accelerated with
//    Wynn's epsilon algorithm, used when rho > decay scale.

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "emfwd/geometry.hpp"

namespace emfwd {

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;  // floor, scaled by the magnitude of the integral
    int max_intervals = 10000;
    int accel_terms = 12;

    enum class Strategy { Auto, AdaptivePanel, PartitionExtrapolation };
    Strategy strategy = Strategy::Auto;

    QuadratureSettings tightened(double factor) const {
        QuadratureSettings s = *this;
        s.rel_tol *= factor;
        s.abs_tol *= factor;
        return s;
    }
};

// One-dimensional complex kernel of the radial spectral variable kappa (1/m).
// `decay_scale` is the dominant e^{-kappa * decay_scale} length in metres; it
// drives truncation and strategy selection. eval must be finite for kappa > 0
// and thread-safe.
struct SpectralKernel {
    std::function<Complex(double)> eval;
    double decay_scale = 1.0;
};

struct HankelResult {
    Complex value{0.0, 0.0};
    double error = 0.0;  // estimated absolute error
};

// Interval budget exhausted before the tolerance was met. Carries the best
// estimate so callers can degrade gracefully (sweeps record it per row).
class NonConvergence : public std::runtime_error {
  public:
    NonConvergence(const std::string& what, Complex best, double err)
        : std::runtime_error(what), best_estimate(best), error_bound(err) {}
    Complex best_estimate;
    double error_bound;
};

// Bessel function of the first kind, order n in {0,1,2}, x >= 0.
// Series for small x, backward (Miller) recurrence in the mid range,
// Hankel asymptotics with recurrence beyond.
double bessel_j(int order, double x);

// k-th positive zero of J_n (k >= 1); McMahon expansion plus Newton.
double bessel_j_zero(int order, int k);

// n-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

HankelResult hankel_transform(const SpectralKernel& f, int order, double rho,
                              const QuadratureSettings& settings = {});

}  // namespace emfwd
