#pragma once

// Magnetic polarizability tensors: the analytic sphere, spectral-signature
// files for externally characterised shapes, and the structural checks the
// tensor must satisfy (complex symmetry, positive-semidefinite imaginary part,
// negated-Gram real part relative to the static term).

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "emfwd/geometry.hpp"

namespace emfwd {

// Complex symmetric rank-2 tensor (m^3) at one angular frequency.
struct Mpt {
    ComplexTensor3 tensor;
    double omega = 0.0;
};

// Empty iff the tensor is complex symmetric and Im M is positive semidefinite.
std::vector<std::string> mpt_invariant_violations(const Mpt& m);

// Isotropic MPT of a conducting permeable sphere, M = m(omega) I.
// m comes from matching the interior vector-Helmholtz solution (spherical
// Bessel j1 of complex argument v, v^2 = i omega mu0 mu_rstar sigma_star
// alpha^2) to exterior harmonic dipole terms across r = alpha:
//
//   m = 2 pi alpha^3 [ (2 mu_r + 1)(1 - v cot v) - v^2 ]
//                  / [ (mu_r - 1)(1 - v cot v) + v^2 ].
//
// Endpoints: m -> 4 pi alpha^3 (mu_r - 1)/(mu_r + 2) as omega -> 0 and
// m -> -2 pi alpha^3 in the perfect-conductor limit |v| -> inf.
Mpt sphere_mpt(double alpha, double sigma_star, double mu_rstar, double omega);

struct MptSignature {
    std::vector<Mpt> entries;  // strictly increasing in omega
    std::string provenance;
};

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class InvariantError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class OrderError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class RangeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// CSV with header
//   omega,ReM11,ReM12,ReM13,ReM22,ReM23,ReM33,ImM11,ImM12,ImM13,ImM22,ImM23,ImM33
// SI units, upper-triangle storage, rows sorted by omega, '#' comments carry
// provenance. Every row must pass the Mpt invariants or the load is rejected
// with the offending row index.
MptSignature load_signature(const std::filesystem::path& path);
void save_signature(const MptSignature& sig, const std::filesystem::path& path);

// Componentwise linear interpolation of Re and Im in log omega. No
// extrapolation: omega outside the tabulated span raises RangeError.
Mpt interpolate(const MptSignature& sig, double omega);

struct DecompositionReport {
    ComplexTensor3 n0;  // Re M at the lowest tabulated frequency
    std::vector<std::string> violations;
};

// Checks the definiteness structure across the signature: (a) Im M positive
// semidefinite at every omega, (b) Re M - N0 negative semidefinite, (c) Re M
// eigenvalues non-increasing in omega. Requires at least a decade of span
// whose low end sits in the quasi-static regime.
DecompositionReport decomposition_check(const MptSignature& sig);

}  // namespace emfwd
