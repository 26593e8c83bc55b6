#pragma once

// Independent oracles for the test and acceptance suites. Everything here is
// deliberately written against different algorithms than the library paths it
// checks: dense-grid quadrature instead of adaptive/extrapolated rules,
// Biot-Savart summation instead of elliptic integrals, long-double ascending
// series instead of Miller recurrence, finite differences instead of spectral
// derivatives.

#include <complex>
#include <functional>

#include "emfwd/geometry.hpp"
#include "emfwd/model.hpp"

namespace oracles {

using emfwd::Complex;
using emfwd::CVec3;
using emfwd::ComplexTensor3;
using emfwd::Vec3;

// dense composite trapezoid on [a, b]
Complex trapezoid(const std::function<Complex(double)>& f, double a, double b, int n);

// brute-force 2-D Fourier quadrature of the half-space kernel over (u, v):
//   (1/(2pi)^2) int int  exp(i u dx1 + i v dx2) k(kappa) du dv,
// kappa = sqrt(u^2 + v^2), via composite Gauss-Legendre tiles on [-L, L]^2.
Complex fourier2d(const std::function<Complex(double)>& radial_kernel, double dx1, double dx2,
                  double L, int tiles, int points_per_tile);

// free-space field of a circular loop by straight-segment Biot-Savart
Vec3 biot_savart_loop(double radius, double height, double current, const Vec3& x, int segments);

// volumetric Biot-Savart of the distributed cylindrical coil
Vec3 biot_savart_coil(const emfwd::CoilSpec& coil, const Vec3& x, int nr, int nz, int nphi);

// central differences of a complex scalar field
CVec3 fd_gradient(const std::function<Complex(const Vec3&)>& f, const Vec3& x, double step);
ComplexTensor3 fd_hessian(const std::function<Complex(const Vec3&)>& f, const Vec3& x,
                          double step);

// long-double ascending series for J_n; trustworthy for x <= 8
double bessel_series_longdouble(int order, double x);

// sphere polarizability through the explicit spherical-Bessel matching route
// (j0, j1 power series of complex argument), valid for |v| <= 20
Complex sphere_mpt_series(double alpha, double sigma_star, double mu_rstar, double omega);

// the standard buried-sphere fixture: saline soil, 0.1 m sphere at 0.4 m
// depth, coincident 0.12/0.15 m coils 0.2 m above ground, J_s = 10/A_coil
emfwd::Scenario section81_scenario();

}  // namespace oracles
