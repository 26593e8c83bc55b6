#pragma once

// Voltage predictions for a buried object under a measurement coil:
//
//   dV = H0ms(z) . M(omega) . H0(z),
//
// where H0(z) is the excite-coil background field at the object, M is the
// object's magnetic polarizability tensor and H0ms is the sensor field
//
//   H0ms(z)_i = i omega mu0 int_S (D^2 G(x,z))_{ij} n_j dx
//
// integrated over the measurement coil's turn-spanned disks. Variants:
// Vs uses the half-space Green's function and the through-soil background
// field, Vs0 swaps the sensor kernel for the Laplace Green's function, Vfs
// treats the soil as free space throughout. V0 is the object-free soil
// response, the flux of the reflected coil field.
//
// Turn normalisation: the winding density is J_s / (1 A), i.e. the coil is
// read as J_s * A_coil ampere-turns of 1 A wire. This makes the measurement
// functional exactly reciprocal to the drive-field normalisation; absolute
// voltages scale linearly with the (unspecified) turn count.

#include <optional>
#include <string>
#include <vector>

#include "emfwd/greens.hpp"
#include "emfwd/model.hpp"
#include "emfwd/mpt.hpp"
#include "emfwd/quadrature.hpp"
#include "emfwd/sources.hpp"

namespace emfwd {

enum class VoltageVariant { Vs, Vs0, Vfs, V0SoilOnly };

const char* variant_name(VoltageVariant v);
std::optional<VoltageVariant> variant_from_name(const std::string& name);

enum class SensorMode { Integrated, Dipole };

struct VoltageRecord {
    double omega = 0.0;
    VoltageVariant variant = VoltageVariant::Vs;
    Complex value{0.0};            // volts
    Complex value_over_omega{0.0}; // the plotted quantity, value / omega
    RegimeReport diagnostics;
};

// Sensor field of the measurement coil at the object position z (z3 < 0).
// Integrated mode samples each turn-spanned disk at Gauss radial x trapezoid
// azimuthal nodes; dipole mode collapses the coil to its moment at the center.
CVec3 h0ms(const CoilSpec& measure, const Vec3& z, const SoilParams& soil, double omega,
           GreensChoice choice, SensorMode mode, const QuadratureSettings& settings = {});

VoltageRecord delta_v(const Scenario& s, double omega, VoltageVariant variant, SensorMode mode,
                      const QuadratureSettings& settings = {});

// dV0 = i omega mu0 * flux of (H0_with_soil - H0_free_space) over the
// measurement surface; the object is ignored.
VoltageRecord delta_v0_soil_only(const Scenario& s, double omega,
                                 const QuadratureSettings& settings = {});

struct SweepEntry {
    double omega = 0.0;
    VoltageVariant variant = VoltageVariant::Vs;
    VoltageRecord record;
    std::string status = "ok";  // "ok", "nonconvergence", or "error: ..."
};

// One record per (omega, variant) in lexicographic order; independent of the
// parallel schedule. Per-record failures are reported in `status` and the
// sweep continues.
std::vector<SweepEntry> sweep(const Scenario& s, const std::vector<VoltageVariant>& variants,
                              SensorMode mode, const QuadratureSettings& settings = {},
                              int parallelism = 1);

enum class RateHold { FixedOmega, FixedNu };

struct RatePoint {
    double alpha = 0.0;
    double omega = 0.0;
    double abs_v = 0.0;
};

struct RateStudyResult {
    double slope = 0.0;
    double rms_residual = 0.0;
    std::vector<RatePoint> points;
};

// Fits log|dV_s| against log alpha with the sensor and background fields held
// at the base frequency, so the fit isolates the MPT's size scaling. Under
// RateHold::FixedNu the MPT is evaluated at omega(alpha) = omega0 (alpha0/alpha)^2
// and the slope is 3 up to rounding; under FixedOmega the eddy term steepens it.
RateStudyResult scaling_rate_study(const Scenario& base, const std::vector<double>& alphas,
                                   RateHold hold, SensorMode mode,
                                   const QuadratureSettings& settings = {});

}  // namespace emfwd
