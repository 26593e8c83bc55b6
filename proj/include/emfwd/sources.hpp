#pragma once

// Background magnetic fields H0 of circular loops and distributed cylindrical
// coils, in free space and above/through the conducting half-space. The
// half-space part matches a TE scalar potential across the ground plane:
// air-side  e^{-kappa |x3-h|} + R e^{-kappa (x3+h)},  soil-side  T e^{gamma x3 - kappa h},
// with [mu_r psi] = 0 and [d psi / d x3] = 0 on x3 = 0, giving
//
//   R(kappa) = (mu_rs kappa - gamma) / (mu_rs kappa + gamma),
//   T(kappa) = 2 kappa / (gamma + mu_rs kappa).
//
// The sign convention is pinned by three limits: no contrast gives R = 0,
// T = 1; a perfect conductor gives R -> -1; a purely permeable half-space
// gives the magnetostatic image R = (mu - 1)/(mu + 1).

#include "emfwd/model.hpp"
#include "emfwd/quadrature.hpp"

namespace emfwd {

// Single-turn circular loop, axis +e3 through the lateral origin, plane z = height.
struct LoopSource {
    double radius = 0.0;
    double height = 0.0;   // above the ground plane, > 0
    Complex current{0.0};  // drive, linear in all field operations
};

// TE reflection/transmission pair sampled at one kappa.
struct TeCoefficients {
    Complex reflection{0.0};
    Complex transmission{0.0};
};

TeCoefficients te_coefficients(const SoilParams& soil, double omega, double kappa);

// Exact static field of a circular loop via complete elliptic integrals.
CVec3 loop_field_freespace(const LoopSource& loop, const Vec3& x);

// Incident + reflected field for x3 > 0, transmitted field for x3 < 0.
CVec3 loop_field_halfspace(const LoopSource& loop, const SoilParams& soil, double omega,
                           const Vec3& x, const QuadratureSettings& settings = {});

enum class FieldMedium { WithSoil, FreeSpace };

// One Gauss panel of the coil cross-section collapsed to a filament loop.
struct CoilLoopElement {
    double radius = 0.0;
    double height = 0.0;
    double current = 0.0;  // J_s * panel area; sums exactly to J_s * A_coil
};

std::vector<CoilLoopElement> coil_loop_elements(const CoilSpec& coil);

// Distributed azimuthal current density integrated over the rectangular
// cross-section by tensor-product Gauss loop elements (n_radial x n_axial).
CVec3 coil_field(const CoilSpec& coil, const SoilParams& soil, double omega, const Vec3& x,
                 FieldMedium medium, const QuadratureSettings& settings = {});

// The soil-reflected part alone, i.e. coil_field(WithSoil) - coil_field(FreeSpace)
// with the singular primary cancelled analytically. Regular everywhere in the
// air region (x3 > 0), including inside the winding cross-section.
CVec3 coil_reflected_field(const CoilSpec& coil, const SoilParams& soil, double omega,
                           const Vec3& x, const QuadratureSettings& settings = {});

// m = e3 * pi * J_s * height * (r_outer^3 - r_inner^3) / 3
Vec3 coil_dipole_moment(const CoilSpec& coil);

// Point magnetic dipole m3 e3 at (0, 0, height): free-space closed form, or
// the half-space reflected/transmitted field (the a -> 0 limit of the loop
// kernels). Used by the dipole sensor model.
CVec3 dipole_field(double moment3, double height, const SoilParams& soil, double omega,
                   const Vec3& x, FieldMedium medium, const QuadratureSettings& settings = {});

// Complete elliptic integrals K(m), E(m) of parameter m = k^2, via the AGM.
double elliptic_K(double m);
double elliptic_E(double m);

}  // namespace emfwd
