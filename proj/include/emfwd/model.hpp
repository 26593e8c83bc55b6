#pragma once

// Domain types for scenarios: soil, buried object, coils, frequency grid,
// plus the dimensionless regime diagnostics. All types are immutable value
// types after construction; operations are pure.

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "emfwd/geometry.hpp"
#include "emfwd/mpt.hpp"

namespace emfwd {

struct SoilParams {
    double sigma_s = 0.0;  // electrical conductivity, S/m, >= 0
    double mu_rs = 1.0;    // relative permeability, >= 1
};

enum class ObjectShape { Sphere, ExternalSignature };

struct ObjectParams {
    double alpha = 0.0;       // size scale, m
    double sigma_star = 0.0;  // S/m, must exceed the soil's conductivity
    double mu_rstar = 1.0;
    ObjectShape shape = ObjectShape::Sphere;
    Vec3 position;  // z, with z3 < 0 (buried)
    std::shared_ptr<const MptSignature> signature;  // set when shape == ExternalSignature
    std::string signature_path;
};

struct CoilSpec {
    double r_inner = 0.0;
    double r_outer = 0.0;
    double height = 0.0;
    Vec3 center;  // center3 - height/2 must stay above the ground plane
    // axis fixed to +e3 in v1
    double current_density_magnitude = 0.0;  // azimuthal, A/m^2
    int n_radial = 6;
    int n_axial = 6;
    int n_azimuthal = 16;

    double cross_section_area() const { return height * (r_outer - r_inner); }
};

struct Scenario {
    SoilParams soil;
    ObjectParams object;
    CoilSpec excite;
    CoilSpec measure;
    std::vector<double> frequencies;  // angular frequencies, rad/s, strictly increasing
};

struct RegimeReport {
    double nu = 0.0;       // alpha^2 sigma_star mu0 omega
    double epsilon = 0.0;  // omega mu0 sigma_s D^2
    double depth_D = 0.0;  // |z3|
    bool mu_rs_bound_ok = false;  // mu_rs <= 1 + alpha/D
    bool epsilon_le_nu = false;
    double skin_depth_object = 0.0;  // sqrt(2 / (omega mu0 mu_rstar sigma_star))
};

// Returns every violated invariant as a human-readable message; empty iff the
// scenario is valid. Never throws.
std::vector<std::string> validate_scenario(const Scenario& s);

RegimeReport regime_diagnostics(const Scenario& s, double omega);

// Strict JSON serialization: unknown keys are rejected to catch unit mistakes.
// A relative signature path is resolved against the scenario file's directory.
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text,
                            const std::filesystem::path& base_dir = {});

}  // namespace emfwd
