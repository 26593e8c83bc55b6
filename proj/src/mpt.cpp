#include "emfwd/mpt.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "emfwd/constants.hpp"

namespace emfwd {

namespace {

// 1 - v cot v, stable on the whole first quadrant. Power series below the
// cancellation threshold, exponential form beyond (|e^{2iv}| < 1 for Im v > 0).
Complex one_minus_vcotv(Complex v) {
    const double av = std::abs(v);
    if (av < 0.5) {
        const Complex v2 = v * v;
        // 1 - v cot v = v^2/3 + v^4/45 + 2 v^6/945 + ...
        static const double c[8] = {1.0 / 3.0,
                                    1.0 / 45.0,
                                    2.0 / 945.0,
                                    1.0 / 4725.0,
                                    2.0 / 93555.0,
                                    1382.0 / 638512875.0,
                                    4.0 / 18243225.0,
                                    3617.0 / 162820783125.0};
        Complex acc = 0.0;
        Complex p = v2;
        for (double ck : c) {
            acc += ck * p;
            p *= v2;
        }
        return acc;
    }
    const Complex e = std::exp(Complex(0.0, 2.0) * v);  // |e| <= 1 in the upper half plane
    const Complex cot = Complex(0.0, 1.0) * (e + 1.0) / (e - 1.0);
    return 1.0 - v * cot;
}

Complex sphere_coefficient(double alpha, double sigma_star, double mu_rstar, double omega) {
    const Complex v2(0.0, omega * kMu0 * mu_rstar * sigma_star * alpha * alpha);
    const Complex v = std::sqrt(v2);
    Complex t;  // 1 - v cot v
    if (std::abs(v) > 1e4) {
        // overflow guard: deep skin-depth regime, cot v = -i to machine precision
        t = 1.0 + Complex(0.0, 1.0) * v;
    } else {
        t = one_minus_vcotv(v);
    }
    const Complex num = (2.0 * mu_rstar + 1.0) * t - v2;
    const Complex den = (mu_rstar - 1.0) * t + v2;
    return 2.0 * kPi * alpha * alpha * alpha * num / den;
}

std::string row_error(const char* kind, size_t row, const std::string& detail) {
    std::ostringstream os;
    os << kind << " at data row " << row << ": " << detail;
    return os.str();
}

}  // namespace

std::vector<std::string> mpt_invariant_violations(const Mpt& m) {
    std::vector<std::string> v;
    const double scale = m.tensor.frobenius_norm();
    if (m.tensor.max_asymmetry() > 1e-10 * scale)
        v.push_back("tensor is not complex symmetric");
    const ComplexTensor3 im = m.tensor.imag_part();
    const double imscale = im.frobenius_norm();
    const auto ev = symmetric_eigenvalues(im);
    if (ev[0] < -1e-10 * imscale)
        v.push_back("imaginary part is not positive semidefinite");
    return v;
}

Mpt sphere_mpt(double alpha, double sigma_star, double mu_rstar, double omega) {
    if (!(alpha > 0.0 && sigma_star > 0.0 && mu_rstar >= 1.0 && omega > 0.0))
        throw std::domain_error("sphere_mpt: parameters must be positive (mu_rstar >= 1)");
    Mpt m;
    m.omega = omega;
    m.tensor = ComplexTensor3::identity_times(sphere_coefficient(alpha, sigma_star, mu_rstar, omega));
    return m;
}

void save_signature(const MptSignature& sig, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_signature: cannot open " + path.string());
    if (!sig.provenance.empty()) out << "# provenance: " << sig.provenance << "\n";
    out << "omega,ReM11,ReM12,ReM13,ReM22,ReM23,ReM33,ImM11,ImM12,ImM13,ImM22,ImM23,ImM33\n";
    char buf[32];
    const int idx[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    for (const Mpt& e : sig.entries) {
        std::snprintf(buf, sizeof buf, "%.17g", e.omega);
        out << buf;
        for (int part = 0; part < 2; ++part) {
            for (const auto& ij : idx) {
                const Complex c = e.tensor(ij[0], ij[1]);
                std::snprintf(buf, sizeof buf, "%.17g", part == 0 ? c.real() : c.imag());
                out << ',' << buf;
            }
        }
        out << "\n";
    }
}

MptSignature load_signature(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_signature: cannot open " + path.string());
    MptSignature sig;
    std::string line;
    bool header_seen = false;
    size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string tag = "# provenance: ";
            if (line.rfind(tag, 0) == 0) sig.provenance = line.substr(tag.size());
            continue;
        }
        if (!header_seen) {
            if (line != "omega,ReM11,ReM12,ReM13,ReM22,ReM23,ReM33,ImM11,ImM12,ImM13,ImM22,ImM23,ImM33")
                throw ParseError("load_signature: unexpected header line: " + line);
            header_seen = true;
            continue;
        }
        ++row;
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                size_t used = 0;
                fields.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError(row_error("malformed number", row, "'" + tok + "'"));
            }
        }
        if (fields.size() != 13)
            throw ParseError(row_error("wrong field count", row,
                                       std::to_string(fields.size()) + " of 13"));
        Mpt e;
        e.omega = fields[0];
        const int idx[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
        for (int k = 0; k < 6; ++k) {
            const Complex c(fields[1 + k], fields[7 + k]);
            e.tensor(idx[k][0], idx[k][1]) = c;
            e.tensor(idx[k][1], idx[k][0]) = c;  // upper-triangle storage, symmetry enforced
        }
        if (!sig.entries.empty() && !(e.omega > sig.entries.back().omega))
            throw OrderError(row_error("non-increasing omega", row, "rows must be sorted"));
        const auto violations = mpt_invariant_violations(e);
        if (!violations.empty())
            throw InvariantError(row_error("invariant violation", row, violations.front()));
        sig.entries.push_back(e);
    }
    if (!header_seen) throw ParseError("load_signature: missing header in " + path.string());
    if (sig.entries.size() < 2)
        throw ParseError("load_signature: at least 2 rows required for interpolation");
    return sig;
}

Mpt interpolate(const MptSignature& sig, double omega) {
    if (sig.entries.size() < 2)
        throw RangeError("interpolate: signature needs at least 2 entries");
    const double lo = sig.entries.front().omega;
    const double hi = sig.entries.back().omega;
    if (!(omega >= lo && omega <= hi))
        throw RangeError("interpolate: omega outside the tabulated span [" +
                         std::to_string(lo) + " .. " + std::to_string(hi) + "]");
    // exact node hit returns the node tensor unchanged
    size_t hi_idx = 1;
    while (hi_idx < sig.entries.size() && sig.entries[hi_idx].omega < omega) ++hi_idx;
    if (hi_idx == sig.entries.size()) hi_idx = sig.entries.size() - 1;
    const Mpt& a = sig.entries[hi_idx - 1];
    const Mpt& b = sig.entries[hi_idx];
    if (omega == a.omega) return a;
    if (omega == b.omega) return b;
    const double t = (std::log(omega) - std::log(a.omega)) / (std::log(b.omega) - std::log(a.omega));
    Mpt out;
    out.omega = omega;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Complex ca = a.tensor(i, j);
            const Complex cb = b.tensor(i, j);
            out.tensor(i, j) = Complex((1.0 - t) * ca.real() + t * cb.real(),
                                       (1.0 - t) * ca.imag() + t * cb.imag());
        }
    }
    return out;
}

DecompositionReport decomposition_check(const MptSignature& sig) {
    DecompositionReport rep;
    if (sig.entries.size() < 2) {
        rep.violations.push_back("signature too short for a decomposition check");
        return rep;
    }
    const double span = sig.entries.back().omega / sig.entries.front().omega;
    if (span < 10.0)
        rep.violations.push_back("signature spans less than a decade of omega");

    rep.n0 = sig.entries.front().tensor.real_part();
    std::array<double, 3> prev_ev{};
    bool have_prev = false;
    for (size_t k = 0; k < sig.entries.size(); ++k) {
        const Mpt& e = sig.entries[k];
        const double scale = std::max(e.tensor.frobenius_norm(), 1e-300);

        const auto im_ev = symmetric_eigenvalues(e.tensor.imag_part());
        if (im_ev[0] < -1e-10 * scale)
            rep.violations.push_back("Im M not positive semidefinite at omega index " +
                                     std::to_string(k));

        const ComplexTensor3 r = e.tensor.real_part() - rep.n0;
        const auto r_ev = symmetric_eigenvalues(r);
        if (r_ev[2] > 1e-10 * scale)
            rep.violations.push_back("Re M - N0 not negative semidefinite at omega index " +
                                     std::to_string(k));

        const auto re_ev = symmetric_eigenvalues(e.tensor.real_part());
        if (have_prev) {
            for (int i = 0; i < 3; ++i) {
                if (re_ev[i] > prev_ev[i] + 1e-10 * scale) {
                    rep.violations.push_back("Re M eigenvalue increased at omega index " +
                                             std::to_string(k));
                    break;
                }
            }
        }
        prev_ev = re_ev;
        have_prev = true;
    }
    return rep;
}

}  // namespace emfwd
