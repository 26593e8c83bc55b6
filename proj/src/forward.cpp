#include "emfwd/forward.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "emfwd/constants.hpp"

namespace emfwd {

namespace {

constexpr int kDiskRadialNodes = 8;

struct TurnDisk {
    double radius;
    double height;
    double weight;  // turns carried by this cross-section panel (J_s dr dz / 1 A)
};

std::vector<TurnDisk> turn_disks(const CoilSpec& coil) {
    const GaussRule gr = gauss_legendre(coil.n_radial);
    const GaussRule gz = gauss_legendre(coil.n_axial);
    const double rmid = 0.5 * (coil.r_outer + coil.r_inner);
    const double rhalf = 0.5 * (coil.r_outer - coil.r_inner);
    const double zhalf = 0.5 * coil.height;
    std::vector<TurnDisk> disks;
    disks.reserve(coil.n_radial * coil.n_axial);
    for (int i = 0; i < coil.n_radial; ++i)
        for (int j = 0; j < coil.n_axial; ++j)
            disks.push_back({rmid + rhalf * gr.nodes[i], coil.center.z + zhalf * gz.nodes[j],
                             coil.current_density_magnitude * (rhalf * gr.weights[i]) *
                                 (zhalf * gz.weights[j])});
    return disks;
}

// gradient of d G / d x3 at (rho, x3) relative to a source at depth y3,
// i.e. the column D^2 G . e3 split into its radial and axial spectral parts
struct SensorColumn {
    Complex radial;  // multiplies the direction cosines
    Complex axial;
};

class HalfspaceSensorCache {
  public:
    HalfspaceSensorCache(const HalfSpaceContext& ctx, double y3, const QuadratureSettings& s)
        : ctx_(ctx), y3_(y3), settings_(s) {}

    SensorColumn at(double rho, double x3) {
        const auto key = std::make_pair(x3, rho);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        SpectralKernel k;
        const Complex k2 = ctx_.k_squared;
        const double mu = ctx_.soil.mu_rs;
        k.decay_scale = x3 - y3_;
        k.eval = [k2, mu, x3, y3 = y3_](double kappa) {
            const Complex gamma = std::sqrt(Complex(kappa * kappa, 0.0) - k2);
            return kappa * kappa * kappa / (gamma + mu * kappa) *
                   std::exp(-kappa * x3 + gamma * y3);
        };
        const double inv2pi = 1.0 / (2.0 * kPi);
        SensorColumn col;
        col.axial = hankel_transform(k, 0, rho, settings_).value * inv2pi;
        col.radial = hankel_transform(k, 1, rho, settings_).value * inv2pi;
        memo_.emplace(key, col);
        return col;
    }

  private:
    HalfSpaceContext ctx_;
    double y3_;
    QuadratureSettings settings_;
    std::map<std::pair<double, double>, SensorColumn> memo_;
};

Mpt scenario_mpt(const Scenario& s, double omega) {
    if (s.object.shape == ObjectShape::Sphere)
        return sphere_mpt(s.object.alpha, s.object.sigma_star, s.object.mu_rstar, omega);
    if (!s.object.signature)
        throw std::runtime_error("delta_v: external-signature object has no signature attached");
    return interpolate(*s.object.signature, omega);
}

CVec3 excite_field(const Scenario& s, double omega, FieldMedium medium, SensorMode mode,
                   const QuadratureSettings& settings) {
    const Vec3& z = s.object.position;
    if (mode == SensorMode::Integrated)
        return coil_field(s.excite, s.soil, omega, z, medium, settings);
    const Vec3 zf(z.x - s.excite.center.x, z.y - s.excite.center.y, z.z);
    return dipole_field(coil_dipole_moment(s.excite).z, s.excite.center.z, s.soil, omega, zf,
                        medium, settings);
}

VoltageRecord make_record(const Scenario& s, double omega, VoltageVariant variant, Complex value) {
    VoltageRecord r;
    r.omega = omega;
    r.variant = variant;
    r.value = value;
    r.value_over_omega = value / omega;
    r.diagnostics = regime_diagnostics(s, omega);
    return r;
}

double fit_slope(const std::vector<RatePoint>& pts, double* rms) {
    const size_t n = pts.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& p : pts) {
        const double x = std::log(p.alpha);
        const double y = std::log(p.abs_v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double r2 = 0.0;
    for (const auto& p : pts) {
        const double e = std::log(p.abs_v) - (intercept + slope * std::log(p.alpha));
        r2 += e * e;
    }
    if (rms) *rms = std::sqrt(r2 / n);
    return slope;
}

}  // namespace

const char* variant_name(VoltageVariant v) {
    switch (v) {
        case VoltageVariant::Vs: return "Vs";
        case VoltageVariant::Vs0: return "Vs0";
        case VoltageVariant::Vfs: return "Vfs";
        case VoltageVariant::V0SoilOnly: return "V0";
    }
    return "?";
}

std::optional<VoltageVariant> variant_from_name(const std::string& name) {
    if (name == "Vs") return VoltageVariant::Vs;
    if (name == "Vs0") return VoltageVariant::Vs0;
    if (name == "Vfs") return VoltageVariant::Vfs;
    if (name == "V0") return VoltageVariant::V0SoilOnly;
    return std::nullopt;
}

CVec3 h0ms(const CoilSpec& measure, const Vec3& z, const SoilParams& soil, double omega,
           GreensChoice choice, SensorMode mode, const QuadratureSettings& settings) {
    if (!(z.z < 0.0)) throw std::domain_error("h0ms: object position must satisfy z3 < 0");
    const Complex prefactor(0.0, omega * kMu0);

    const HalfSpaceContext ctx = HalfSpaceContext::make(soil, omega);
    HalfspaceSensorCache cache(ctx, z.z, settings);

    const auto column_at = [&](double rho, const double cdir[2], double x3) -> CVec3 {
        if (choice == GreensChoice::HalfSpace) {
            const SensorColumn col = cache.at(rho, x3);
            return CVec3(cdir[0] * col.radial, cdir[1] * col.radial, col.axial);
        }
        // Laplace kernel: closed-form column of (3 u u^T - I)/(4 pi r^3)
        const double dz = x3 - z.z;
        const double r = std::sqrt(rho * rho + dz * dz);
        const double inv = 1.0 / (4.0 * kPi * r * r * r);
        const double ur = rho / r, uz = dz / r;
        return CVec3(3.0 * cdir[0] * ur * uz * inv, 3.0 * cdir[1] * ur * uz * inv,
                     (3.0 * uz * uz - 1.0) * inv);
    };

    if (mode == SensorMode::Dipole) {
        const Vec3 xc = measure.center;
        const double dx = xc.x - z.x, dy = xc.y - z.y;
        const double rho = std::hypot(dx, dy);
        double cdir[2] = {0.0, 0.0};
        if (rho > 0.0) {
            cdir[0] = dx / rho;
            cdir[1] = dy / rho;
        }
        const double turn_area = coil_dipole_moment(measure).z;  // per 1 A of wire current
        return prefactor * turn_area * column_at(rho, cdir, xc.z);
    }

    const std::vector<TurnDisk> disks = turn_disks(measure);
    const GaussRule gd = gauss_legendre(kDiskRadialNodes);
    const int naz = measure.n_azimuthal;
    const double dphi = 2.0 * kPi / naz;
    const bool coaxial = (measure.center.x == z.x) && (measure.center.y == z.y);

    CVec3 total;
    for (const TurnDisk& d : disks) {
        CVec3 flux;
        for (int i = 0; i < kDiskRadialNodes; ++i) {
            const double rnode = 0.5 * d.radius * (gd.nodes[i] + 1.0);
            const double wr = 0.5 * d.radius * gd.weights[i] * rnode * dphi;
            for (int a = 0; a < naz; ++a) {
                const double phi = dphi * a;
                const double cs = std::cos(phi), sn = std::sin(phi);
                double rho, cdir[2];
                if (coaxial) {
                    rho = rnode;  // exact key so the azimuthal ring shares one transform
                    cdir[0] = cs;
                    cdir[1] = sn;
                } else {
                    const double dx = measure.center.x + rnode * cs - z.x;
                    const double dy = measure.center.y + rnode * sn - z.y;
                    rho = std::hypot(dx, dy);
                    if (rho > 0.0) {
                        cdir[0] = dx / rho;
                        cdir[1] = dy / rho;
                    } else {
                        cdir[0] = cdir[1] = 0.0;
                    }
                }
                flux = flux + wr * column_at(rho, cdir, d.height);
            }
        }
        total = total + d.weight * flux;
    }
    return prefactor * total;
}

VoltageRecord delta_v(const Scenario& s, double omega, VoltageVariant variant, SensorMode mode,
                      const QuadratureSettings& settings) {
    if (variant == VoltageVariant::V0SoilOnly) return delta_v0_soil_only(s, omega, settings);

    const Mpt m = scenario_mpt(s, omega);
    const Vec3& z = s.object.position;

    CVec3 h0, hms;
    switch (variant) {
        case VoltageVariant::Vs:
            h0 = excite_field(s, omega, FieldMedium::WithSoil, mode, settings);
            hms = h0ms(s.measure, z, s.soil, omega, GreensChoice::HalfSpace, mode, settings);
            break;
        case VoltageVariant::Vs0:
            h0 = excite_field(s, omega, FieldMedium::WithSoil, mode, settings);
            hms = h0ms(s.measure, z, s.soil, omega, GreensChoice::FreeSpace, mode, settings);
            break;
        case VoltageVariant::Vfs:
            h0 = excite_field(s, omega, FieldMedium::FreeSpace, mode, settings);
            hms = h0ms(s.measure, z, s.soil, omega, GreensChoice::FreeSpace, mode, settings);
            break;
        default:
            throw std::logic_error("delta_v: unreachable variant");
    }
    return make_record(s, omega, variant, contract(hms, m.tensor, h0));
}

VoltageRecord delta_v0_soil_only(const Scenario& s, double omega,
                                 const QuadratureSettings& settings) {
    const std::vector<TurnDisk> disks = turn_disks(s.measure);
    const GaussRule gd = gauss_legendre(kDiskRadialNodes);
    const int naz = s.measure.n_azimuthal;
    const double dphi = 2.0 * kPi / naz;
    const bool coaxial = (s.measure.center.x == s.excite.center.x) &&
                         (s.measure.center.y == s.excite.center.y);

    // reflected axial field keyed by (height, radius from the excite axis)
    std::map<std::pair<double, double>, Complex> memo;
    const auto reflected_hz = [&](double rho, double x3) {
        const auto key = std::make_pair(x3, rho);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const Vec3 p(s.excite.center.x + rho, s.excite.center.y, x3);
        const Complex hz = coil_reflected_field(s.excite, s.soil, omega, p, settings).z;
        memo.emplace(key, hz);
        return hz;
    };

    Complex flux = 0.0;
    for (const TurnDisk& d : disks) {
        for (int i = 0; i < kDiskRadialNodes; ++i) {
            const double rnode = 0.5 * d.radius * (gd.nodes[i] + 1.0);
            const double wr = 0.5 * d.radius * gd.weights[i] * rnode * dphi;
            for (int a = 0; a < naz; ++a) {
                double rho;
                if (coaxial) {
                    rho = rnode;
                } else {
                    const double phi = dphi * a;
                    const double dx = s.measure.center.x + rnode * std::cos(phi) - s.excite.center.x;
                    const double dy = s.measure.center.y + rnode * std::sin(phi) - s.excite.center.y;
                    rho = std::hypot(dx, dy);
                }
                flux += d.weight * wr * reflected_hz(rho, d.height);
            }
        }
    }
    return make_record(s, omega, VoltageVariant::V0SoilOnly, Complex(0.0, omega * kMu0) * flux);
}

std::vector<SweepEntry> sweep(const Scenario& s, const std::vector<VoltageVariant>& variants,
                              SensorMode mode, const QuadratureSettings& settings,
                              int parallelism) {
    std::vector<SweepEntry> entries;
    for (double omega : s.frequencies)
        for (VoltageVariant v : variants) entries.push_back({omega, v, {}, "pending"});

    const auto run_one = [&](SweepEntry& e) {
        try {
            e.record = delta_v(s, e.omega, e.variant, mode, settings);
            e.status = "ok";
        } catch (const NonConvergence& nc) {
            e.record = make_record(s, e.omega, e.variant, nc.best_estimate);
            e.status = "nonconvergence";
        } catch (const std::exception& ex) {
            e.record = make_record(s, e.omega, e.variant, Complex(0.0));
            e.status = std::string("error: ") + ex.what();
        }
    };

    const int workers = std::max(1, std::min<int>(parallelism, entries.size()));
    if (workers == 1) {
        for (auto& e : entries) run_one(e);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const size_t i = next.fetch_add(1);
                    if (i >= entries.size()) return;
                    run_one(entries[i]);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    return entries;
}

RateStudyResult scaling_rate_study(const Scenario& base, const std::vector<double>& alphas,
                                   RateHold hold, SensorMode mode,
                                   const QuadratureSettings& settings) {
    if (base.object.shape != ObjectShape::Sphere)
        throw std::invalid_argument("scaling_rate_study: requires a sphere object");
    if (alphas.size() < 4)
        throw std::invalid_argument("scaling_rate_study: need at least 4 sizes");
    double amin = alphas.front(), amax = alphas.front();
    for (double a : alphas) {
        if (!(a > 0.0)) throw std::invalid_argument("scaling_rate_study: sizes must be positive");
        amin = std::min(amin, a);
        amax = std::max(amax, a);
    }
    if (amax < 2.0 * amin)
        throw std::invalid_argument("scaling_rate_study: sizes must span at least one octave");
    if (base.frequencies.empty())
        throw std::invalid_argument("scaling_rate_study: scenario has no frequencies");

    const double omega0 = base.frequencies.front();
    const double alpha0 = base.object.alpha;
    const Vec3& z = base.object.position;
    const CVec3 hms =
        h0ms(base.measure, z, base.soil, omega0, GreensChoice::HalfSpace, mode, settings);
    const CVec3 h0 = excite_field(base, omega0, FieldMedium::WithSoil, mode, settings);

    RateStudyResult res;
    for (double a : alphas) {
        const double omega =
            hold == RateHold::FixedNu ? omega0 * (alpha0 / a) * (alpha0 / a) : omega0;
        const Mpt m = sphere_mpt(a, base.object.sigma_star, base.object.mu_rstar, omega);
        res.points.push_back({a, omega, std::abs(contract(hms, m.tensor, h0))});
    }
    res.slope = fit_slope(res.points, &res.rms_residual);
    return res;
}

}  // namespace emfwd
