#include "emfwd/sources.hpp"

#include <cmath>
#include <vector>

#include "emfwd/constants.hpp"

namespace emfwd {

namespace {

struct LoopElement {
    double radius;
    double height;
    Complex current;
};

// field of one loop at (rho, z) in the loop frame, real-valued per unit current
struct LoopFieldRZ {
    double h_rho;
    double h_z;
};

LoopFieldRZ loop_rz_unit(double a, double h, double rho, double z) {
    const double zr = z - h;
    const double d2 = (a + rho) * (a + rho) + zr * zr;
    const double d = std::sqrt(d2);
    const double near2 = (a - rho) * (a - rho) + zr * zr;
    if (near2 < 1e-18 * a * a)
        throw std::domain_error("loop_field: point on the loop filament");
    const double m = 4.0 * a * rho / d2;
    const double K = elliptic_K(m);
    const double E = elliptic_E(m);
    LoopFieldRZ f;
    f.h_z = 1.0 / (2.0 * kPi * d) * (K + E * (a * a - rho * rho - zr * zr) / near2);
    if (rho <= 1e-7 * (a + std::abs(zr))) {
        f.h_rho = 0.0;  // axial limit; the bracket cancels to O(rho^2)
    } else {
        f.h_rho = zr / (2.0 * kPi * rho * d) * (-K + E * (a * a + rho * rho + zr * zr) / near2);
    }
    return f;
}

Complex te_gamma(const SoilParams& soil, double omega, double kappa) {
    const Complex k2(0.0, omega * kMu0 * soil.sigma_s);
    return std::sqrt(Complex(kappa * kappa, 0.0) - k2);
}

// Reflected-field spectral kernel for a stack of loop elements, x3 > 0:
//   F(kappa) = sum_e (I_e a_e / 2) kappa J1(kappa a_e) R(kappa) e^{-kappa (x3 + h_e)}
// H_z = H0[F](rho), H_rho = H1[F](rho).
SpectralKernel reflected_kernel(const std::vector<LoopElement>& elems, const SoilParams& soil,
                                double omega, double x3) {
    double scale = 1e300;
    for (const auto& e : elems) scale = std::min(scale, x3 + e.height);
    SpectralKernel f;
    f.decay_scale = scale;
    f.eval = [elems, soil, omega, x3](double kappa) {
        const Complex gamma = te_gamma(soil, omega, kappa);
        const double mk = soil.mu_rs * kappa;
        const Complex R = (mk - gamma) / (mk + gamma);
        Complex sum = 0.0;
        for (const auto& e : elems)
            sum += e.current * (0.5 * e.radius) * kappa * bessel_j(1, kappa * e.radius) *
                   std::exp(-kappa * (x3 + e.height));
        return R * sum;
    };
    return f;
}

// Transmitted-field kernels for x3 < 0. The axial component uses
//   Fz(kappa) = sum_e (I_e a_e / 2) kappa J1(kappa a_e) T(kappa) e^{gamma x3 - kappa h_e},
// the radial one carries gamma instead of kappa and a minus sign.
SpectralKernel transmitted_kernel(const std::vector<LoopElement>& elems, const SoilParams& soil,
                                  double omega, double x3, bool radial) {
    double hmin = 1e300;
    for (const auto& e : elems) hmin = std::min(hmin, e.height);
    SpectralKernel f;
    f.decay_scale = hmin - x3;  // Re gamma >= kappa, so this bounds the decay
    f.eval = [elems, soil, omega, x3, radial](double kappa) {
        const Complex gamma = te_gamma(soil, omega, kappa);
        const Complex T = 2.0 * kappa / (gamma + soil.mu_rs * kappa);
        const Complex vertical = std::exp(gamma * x3);
        Complex sum = 0.0;
        for (const auto& e : elems)
            sum += e.current * (0.5 * e.radius) * bessel_j(1, kappa * e.radius) *
                   std::exp(-kappa * e.height);
        const Complex front = radial ? -gamma : Complex(kappa);
        return front * T * vertical * sum;
    };
    return f;
}

CVec3 assemble_cylindrical(Complex h_rho, Complex h_z, double ux, double uy) {
    return CVec3(h_rho * ux, h_rho * uy, h_z);
}

// Field of a stack of coaxial loop elements (axis through the lateral origin).
CVec3 stack_field(const std::vector<LoopElement>& elems, const SoilParams& soil, double omega,
                  const Vec3& x, FieldMedium medium, const QuadratureSettings& settings) {
    const double rho = x.rho();
    double ux = 0.0, uy = 0.0;
    if (rho > 0.0) {
        ux = x.x / rho;
        uy = x.y / rho;
    }

    if (medium == FieldMedium::FreeSpace) {
        Complex hr = 0.0, hz = 0.0;
        for (const auto& e : elems) {
            const LoopFieldRZ f = loop_rz_unit(e.radius, e.height, rho, x.z);
            hr += e.current * f.h_rho;
            hz += e.current * f.h_z;
        }
        return assemble_cylindrical(hr, hz, ux, uy);
    }

    if (x.z == 0.0)
        throw std::domain_error("loop_field_halfspace: x3 = 0 is on the interface");

    if (x.z > 0.0) {
        Complex hr = 0.0, hz = 0.0;
        for (const auto& e : elems) {
            const LoopFieldRZ f = loop_rz_unit(e.radius, e.height, rho, x.z);
            hr += e.current * f.h_rho;
            hz += e.current * f.h_z;
        }
        const SpectralKernel fr = reflected_kernel(elems, soil, omega, x.z);
        hz += hankel_transform(fr, 0, rho, settings).value;
        hr += hankel_transform(fr, 1, rho, settings).value;
        return assemble_cylindrical(hr, hz, ux, uy);
    }

    const SpectralKernel fz = transmitted_kernel(elems, soil, omega, x.z, false);
    const SpectralKernel fr = transmitted_kernel(elems, soil, omega, x.z, true);
    const Complex hz = hankel_transform(fz, 0, rho, settings).value;
    const Complex hr = hankel_transform(fr, 1, rho, settings).value;
    return assemble_cylindrical(hr, hz, ux, uy);
}

std::vector<LoopElement> coil_elements(const CoilSpec& coil) {
    std::vector<LoopElement> elems;
    for (const CoilLoopElement& e : coil_loop_elements(coil))
        elems.push_back({e.radius, e.height, Complex(e.current)});
    return elems;
}

}  // namespace

std::vector<CoilLoopElement> coil_loop_elements(const CoilSpec& coil) {
    const GaussRule gr = gauss_legendre(coil.n_radial);
    const GaussRule gz = gauss_legendre(coil.n_axial);
    const double rmid = 0.5 * (coil.r_outer + coil.r_inner);
    const double rhalf = 0.5 * (coil.r_outer - coil.r_inner);
    const double zhalf = 0.5 * coil.height;
    std::vector<CoilLoopElement> elems;
    elems.reserve(coil.n_radial * coil.n_axial);
    for (int i = 0; i < coil.n_radial; ++i) {
        for (int j = 0; j < coil.n_axial; ++j) {
            CoilLoopElement e;
            e.radius = rmid + rhalf * gr.nodes[i];
            e.height = coil.center.z + zhalf * gz.nodes[j];
            e.current = coil.current_density_magnitude * (rhalf * gr.weights[i]) *
                        (zhalf * gz.weights[j]);
            elems.push_back(e);
        }
    }
    return elems;
}

double elliptic_K(double m) {
    if (!(m >= 0.0 && m < 1.0)) throw std::domain_error("elliptic_K: need 0 <= m < 1");
    double a = 1.0, b = std::sqrt(1.0 - m);
    for (int i = 0; i < 40 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2.0 * a);
}

double elliptic_E(double m) {
    if (!(m >= 0.0 && m < 1.0)) throw std::domain_error("elliptic_E: need 0 <= m < 1");
    double a = 1.0, b = std::sqrt(1.0 - m);
    double c2sum = 0.5 * m;  // 2^{-1} c_0^2 with c_0 = sqrt(m)
    double pow2 = 1.0;
    for (int i = 0; i < 40 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double c = 0.5 * (a - b);
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        c2sum += pow2 * c * c;
        pow2 *= 2.0;
    }
    return kPi / (2.0 * a) * (1.0 - c2sum);
}

TeCoefficients te_coefficients(const SoilParams& soil, double omega, double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("te_coefficients: kappa must be > 0");
    const Complex gamma = te_gamma(soil, omega, kappa);
    const double mk = soil.mu_rs * kappa;
    TeCoefficients te;
    te.reflection = (mk - gamma) / (mk + gamma);
    te.transmission = 2.0 * kappa / (gamma + mk);
    return te;
}

CVec3 loop_field_freespace(const LoopSource& loop, const Vec3& x) {
    std::vector<LoopElement> one{{loop.radius, loop.height, loop.current}};
    return stack_field(one, SoilParams{}, 0.0, x, FieldMedium::FreeSpace, {});
}

CVec3 loop_field_halfspace(const LoopSource& loop, const SoilParams& soil, double omega,
                           const Vec3& x, const QuadratureSettings& settings) {
    std::vector<LoopElement> one{{loop.radius, loop.height, loop.current}};
    return stack_field(one, soil, omega, x, FieldMedium::WithSoil, settings);
}

CVec3 coil_field(const CoilSpec& coil, const SoilParams& soil, double omega, const Vec3& x,
                 FieldMedium medium, const QuadratureSettings& settings) {
    const Vec3 xf(x.x - coil.center.x, x.y - coil.center.y, x.z);
    const double rho = xf.rho();
    if (rho >= coil.r_inner && rho <= coil.r_outer &&
        std::abs(xf.z - coil.center.z) <= 0.5 * coil.height)
        throw std::domain_error("coil_field: point inside the coil windings");
    return stack_field(coil_elements(coil), soil, omega, xf, medium, settings);
}

CVec3 coil_reflected_field(const CoilSpec& coil, const SoilParams& soil, double omega,
                           const Vec3& x, const QuadratureSettings& settings) {
    if (!(x.z > 0.0))
        throw std::domain_error("coil_reflected_field: defined for air-side points only");
    const Vec3 xf(x.x - coil.center.x, x.y - coil.center.y, x.z);
    const double rho = xf.rho();
    double ux = 0.0, uy = 0.0;
    if (rho > 0.0) {
        ux = xf.x / rho;
        uy = xf.y / rho;
    }
    const SpectralKernel fr = reflected_kernel(coil_elements(coil), soil, omega, xf.z);
    const Complex hz = hankel_transform(fr, 0, rho, settings).value;
    const Complex hr = hankel_transform(fr, 1, rho, settings).value;
    return assemble_cylindrical(hr, hz, ux, uy);
}

Vec3 coil_dipole_moment(const CoilSpec& coil) {
    const double r3 = coil.r_outer * coil.r_outer * coil.r_outer -
                      coil.r_inner * coil.r_inner * coil.r_inner;
    return {0.0, 0.0, kPi * coil.current_density_magnitude * coil.height * r3 / 3.0};
}

CVec3 dipole_field(double moment3, double height, const SoilParams& soil, double omega,
                   const Vec3& x, FieldMedium medium, const QuadratureSettings& settings) {
    const double rho = x.rho();
    double ux = 0.0, uy = 0.0;
    if (rho > 0.0) {
        ux = x.x / rho;
        uy = x.y / rho;
    }
    const double amp = moment3 / (4.0 * kPi);

    const auto primary = [&]() -> CVec3 {
        // static dipole: H = D^2 G0 (x, source) . m
        const Vec3 src(0.0, 0.0, height);
        const Vec3 r = x - src;
        const double rn = r.norm();
        if (rn < 1e-12) throw std::domain_error("dipole_field: point at the dipole");
        const double inv = 1.0 / (4.0 * kPi * rn * rn * rn);
        const Vec3 u = r * (1.0 / rn);
        return CVec3(3.0 * u.x * u.z * inv * moment3, 3.0 * u.y * u.z * inv * moment3,
                     (3.0 * u.z * u.z - 1.0) * inv * moment3);
    };

    if (medium == FieldMedium::FreeSpace) return primary();
    if (x.z == 0.0) throw std::domain_error("dipole_field: x3 = 0 is on the interface");

    if (x.z > 0.0) {
        SpectralKernel f;
        f.decay_scale = x.z + height;
        f.eval = [&soil, omega, x3 = x.z, height, amp](double kappa) {
            const Complex gamma = te_gamma(soil, omega, kappa);
            const double mk = soil.mu_rs * kappa;
            const Complex R = (mk - gamma) / (mk + gamma);
            return amp * kappa * kappa * R * std::exp(-kappa * (x3 + height));
        };
        const Complex hz = hankel_transform(f, 0, rho, settings).value;
        const Complex hr = hankel_transform(f, 1, rho, settings).value;
        const CVec3 p = primary();
        return p + assemble_cylindrical(hr, hz, ux, uy);
    }

    SpectralKernel fz;
    fz.decay_scale = height - x.z;
    fz.eval = [&soil, omega, x3 = x.z, height, amp](double kappa) {
        const Complex gamma = te_gamma(soil, omega, kappa);
        const Complex T = 2.0 * kappa / (gamma + soil.mu_rs * kappa);
        return amp * kappa * kappa * T * std::exp(gamma * x3 - kappa * height);
    };
    SpectralKernel fr = fz;
    fr.eval = [&soil, omega, x3 = x.z, height, amp](double kappa) {
        const Complex gamma = te_gamma(soil, omega, kappa);
        const Complex T = 2.0 * kappa / (gamma + soil.mu_rs * kappa);
        return -amp * kappa * gamma * T * std::exp(gamma * x3 - kappa * height);
    };
    const Complex hz = hankel_transform(fz, 0, rho, settings).value;
    const Complex hr = hankel_transform(fr, 1, rho, settings).value;
    return assemble_cylindrical(hr, hz, ux, uy);
}

}  // namespace emfwd
