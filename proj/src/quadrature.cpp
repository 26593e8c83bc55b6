#include "emfwd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "emfwd/constants.hpp"

namespace emfwd {

namespace {

// ---------------------------------------------------------------------------
// Bessel J_n, n = 0,1,2
// ---------------------------------------------------------------------------

// Ascending series, adequate for x <= 2 (largest term is O(1), no cancellation).
double bessel_series(int n, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    for (int m = 1; m <= n; ++m) term *= 0.5 * x / m;  // (x/2)^n / n!
    double sum = term;
    for (int k = 1; k < 64; ++k) {
        term *= -q / (static_cast<double>(k) * (n + k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

// Miller's backward recurrence with the normalisation J0 + 2 J2 + 2 J4 + ... = 1.
// Reliable through the mid range where neither the series nor the asymptotic
// expansion reaches full double accuracy.
void bessel_miller(double x, double out[3]) {
    int start = static_cast<int>(x + 12.0 + 8.0 * std::cbrt(x));
    if (start % 2) ++start;
    double fp = 0.0;   // f_{n+1}
    double fc = 1e-30;  // f_n
    double norm = 0.0;
    double j[3] = {0.0, 0.0, 0.0};
    for (int n = start; n >= 1; --n) {
        double fm = (2.0 * n / x) * fc - fp;
        fp = fc;
        fc = fm;
        if (n - 1 <= 2) j[n - 1] = fc;
        if ((n - 1) % 2 == 0) norm += (n - 1 == 0) ? fc : 2.0 * fc;
        if (std::abs(fc) > 1e280) {  // rescale to avoid overflow
            fc *= 1e-280;
            fp *= 1e-280;
            norm *= 1e-280;
            for (double& v : j) v *= 1e-280;
        }
    }
    for (int k = 0; k < 3; ++k) out[k] = j[k] / norm;
}

// Hankel's asymptotic expansion; for x > 20 the smallest term is below 1e-17.
double bessel_asymptotic(int n, double x) {
    const double mu = 4.0 * n * n;
    const double chi = x - (0.5 * n + 0.25) * kPi;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double f = 2.0 * k - 1.0;
        term *= (mu - f * f) / (k * 8.0 * x);
        if (std::abs(term) > prev) break;  // asymptotic series started diverging
        prev = std::abs(term);
        const int phase = (k / 2) % 2;  // signs cycle +,+,-,-
        const double signed_term = phase ? -term : term;
        if (k % 2)
            q += signed_term;
        else
            p += signed_term;
        if (std::abs(term) < 1e-18) break;
    }
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7-15 panel rule (QUADPACK abscissae)
// ---------------------------------------------------------------------------

constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct Panel {
    double a, b;
    Complex integral;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
Panel gk15(const F& fn, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        if (i == 7) {
            const Complex fv = fn(c);
            resk += kWgk[7] * fv;
            resg += kWg[3] * fv;
            break;
        }
        const Complex f1 = fn(c - h * kXgk[i]);
        const Complex f2 = fn(c + h * kXgk[i]);
        resk += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.integral = h * resk;
    p.error = std::abs(h * (resk - resg));
    return p;
}

// Wynn's epsilon algorithm on a sequence of partial sums. Returns the deepest
// even-column extrapolant and an error estimate from the last diagonal step.
struct EpsilonResult {
    Complex value;
    double step;
    bool valid = false;
};

EpsilonResult wynn_epsilon(const std::vector<Complex>& sums, int max_columns) {
    const int n = static_cast<int>(sums.size());
    if (n < 3) return {};
    std::vector<Complex> prev(n, Complex(0.0));  // epsilon_{-1}
    std::vector<Complex> cur(sums);              // epsilon_0
    Complex best = cur.back();
    Complex prev_best = cur[n - 2];
    int columns = std::min(n - 1, 2 * max_columns);
    for (int k = 1; k <= columns; ++k) {
        std::vector<Complex> next(n - k);
        for (int j = 0; j < n - k; ++j) {
            const Complex diff = cur[j + 1] - cur[j];
            if (std::abs(diff) < 1e-305) return {best, std::abs(best - prev_best), true};
            next[j] = prev[j + 1] + 1.0 / diff;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0) {
            prev_best = best;
            best = cur.back();
        }
    }
    return {best, std::abs(best - prev_best), true};
}

}  // namespace

double bessel_j(int order, double x) {
    if (order < 0 || order > 2) throw std::domain_error("bessel_j: order must be 0, 1 or 2");
    if (!(x >= 0.0)) throw std::domain_error("bessel_j: argument must be finite and >= 0");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x <= 2.0) return bessel_series(order, x);
    if (x <= 20.0) {
        double j[3];
        bessel_miller(x, j);
        return j[order];
    }
    if (order < 2) return bessel_asymptotic(order, x);
    // upward recurrence is safe here: |J2| is not small relative to J0, J1 scale
    return (2.0 / x) * bessel_asymptotic(1, x) - bessel_asymptotic(0, x);
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::domain_error("gauss_legendre: n must be >= 1");
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.weights[i] = w;
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

double bessel_j_zero(int order, int k) {
    if (order < 0 || order > 2) throw std::domain_error("bessel_j_zero: order must be 0, 1 or 2");
    if (k < 1) throw std::domain_error("bessel_j_zero: k must be >= 1");
    const double mu = 4.0 * order * order;
    const double b = (k + 0.5 * order - 0.25) * kPi;
    const double e = 1.0 / (8.0 * b);
    // McMahon expansion
    double x = b - e * ((mu - 1.0) +
                        e * e * (4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / 3.0 +
                                 e * e * 32.0 * (mu - 1.0) *
                                     (83.0 * mu * mu - 982.0 * mu + 3779.0) / 15.0));
    for (int it = 0; it < 4; ++it) {
        const double j = bessel_j(order, x);
        const double jm1 = order == 0 ? -bessel_j(1, x) : bessel_j(order - 1, x);
        const double deriv = order == 0 ? jm1 : jm1 - order / x * bessel_j(order, x);
        const double dx = j / deriv;
        x -= dx;
        if (std::abs(dx) < 1e-14 * x) break;
    }
    return x;
}

namespace {

HankelResult adaptive_panel_path(const SpectralKernel& f, int order, double rho,
                                 const QuadratureSettings& s) {
    const auto integrand = [&](double kappa) {
        return f.eval(kappa) * bessel_j(order, kappa * rho);
    };

    // Truncation point: exp(-kappa_max * decay) ~ abs_tol, extended until the
    // kernel itself has visibly decayed.
    double kappa_max = -std::log(std::min(s.abs_tol, 1e-10)) / f.decay_scale;
    double head = std::abs(f.eval(0.25 / f.decay_scale));
    for (int i = 0; i < 60; ++i) {
        const double tail = std::abs(f.eval(kappa_max)) / f.decay_scale;
        if (tail <= s.abs_tol * std::max(1.0, head) || tail == 0.0) break;
        kappa_max *= 1.3;
    }

    // Seed panels: at least half an oscillation of J_n per panel.
    int n0 = 8;
    if (rho > 0.0) n0 = std::max(n0, std::min(256, static_cast<int>(kappa_max * rho / kPi) + 1));

    std::priority_queue<Panel> heap;
    Complex total = 0.0;
    double total_err = 0.0;
    double scale = 0.0;  // magnitude proxy: sum of |panel integrals|
    for (int i = 0; i < n0; ++i) {
        const double a = kappa_max * i / n0;
        const double b = kappa_max * (i + 1) / n0;
        Panel p = gk15(integrand, a, b);
        total += p.integral;
        total_err += p.error;
        scale += std::abs(p.integral);
        heap.push(p);
    }

    int used = n0;
    double checkpoint_err = std::numeric_limits<double>::infinity();
    int since_checkpoint = 0;
    while (used < s.max_intervals) {
        const double target = std::max(s.rel_tol * std::abs(total), s.abs_tol * std::max(scale, 1e-300));
        if (total_err <= target) break;
        // refinement stalled at a roundoff/kernel-accuracy floor
        if (++since_checkpoint >= 200) {
            if (total_err > 0.98 * checkpoint_err) break;
            checkpoint_err = total_err;
            since_checkpoint = 0;
        }
        Panel worst = heap.top();
        heap.pop();
        total -= worst.integral;
        total_err -= worst.error;
        scale -= std::abs(worst.integral);
        const double mid = 0.5 * (worst.a + worst.b);
        for (const Panel& half : {gk15(integrand, worst.a, mid), gk15(integrand, mid, worst.b)}) {
            total += half.integral;
            total_err += half.error;
            scale += std::abs(half.integral);
            heap.push(half);
        }
        ++used;
    }

    const double target = std::max(s.rel_tol * std::abs(total), s.abs_tol * std::max(scale, 1e-300));
    const double reported = std::max(total_err, 5e-15 * scale);
    if (total_err > target)
        throw NonConvergence("hankel_transform: adaptive panel budget exhausted", total, reported);
    return {total, reported};
}

HankelResult partition_extrapolation_path(const SpectralKernel& f, int order, double rho,
                                          const QuadratureSettings& s) {
    const auto integrand = [&](double kappa) {
        return f.eval(kappa) * bessel_j(order, kappa * rho);
    };

    // Integrate between consecutive zeros of J_n(kappa rho); accelerate the
    // alternating partial sums.
    std::vector<Complex> partial;
    Complex sum = 0.0;
    double panel_err = 0.0;
    double scale = 0.0;
    double a = 0.0;
    int zero_index = 1;
    int used = 0;
    EpsilonResult best{};
    double best_err = std::numeric_limits<double>::infinity();
    int settled = 0;

    while (used < s.max_intervals) {
        const double b = bessel_j_zero(order, zero_index) / rho;
        ++zero_index;
        // one lobe; bisect once if the kernel varies strongly across it
        Panel p = gk15(integrand, a, b);
        if (p.error > 1e-12 * std::max(std::abs(p.integral), scale)) {
            const double mid = 0.5 * (a + b);
            Panel p1 = gk15(integrand, a, mid);
            Panel p2 = gk15(integrand, mid, b);
            p.integral = p1.integral + p2.integral;
            p.error = p1.error + p2.error;
            ++used;
        }
        sum += p.integral;
        panel_err += p.error;
        scale = std::max(scale, std::abs(sum));
        partial.push_back(sum);
        a = b;
        ++used;

        const double target = std::max(s.rel_tol * std::max(std::abs(sum), 1e-300),
                                       s.abs_tol * std::max(scale, 1e-300));

        // raw tail already negligible (kernel decayed before oscillation mattered)
        if (partial.size() >= 3 && std::abs(p.integral) < 0.05 * target &&
            std::abs(partial[partial.size() - 2] - partial[partial.size() - 3]) < 0.05 * target) {
            const double reported = std::max(panel_err + std::abs(p.integral), 5e-15 * scale);
            return {sum, reported};
        }

        if (partial.size() >= 4) {
            // keep the acceleration window bounded by accel_terms
            const int window = std::min<int>(partial.size(), 2 * s.accel_terms + 1);
            std::vector<Complex> tail(partial.end() - window, partial.end());
            EpsilonResult eps = wynn_epsilon(tail, s.accel_terms);
            if (eps.valid) {
                const double err = eps.step + panel_err;
                if (err < best_err) {
                    best = eps;
                    best_err = err;
                }
                if (err <= 0.5 * target)
                    ++settled;
                else
                    settled = 0;
                if (settled >= 2) {
                    const double reported = std::max(err, 5e-15 * scale);
                    return {eps.value, reported};
                }
            }
        }
    }

    const Complex value = best.valid ? best.value : sum;
    const double err = best.valid ? best_err : panel_err + std::abs(partial.back() - partial[partial.size() - 2]);
    throw NonConvergence("hankel_transform: interval budget exhausted before tolerance", value, err);
}

}  // namespace

HankelResult hankel_transform(const SpectralKernel& f, int order, double rho,
                              const QuadratureSettings& settings) {
    if (order < 0 || order > 2) throw std::domain_error("hankel_transform: order must be 0, 1 or 2");
    if (!(rho >= 0.0)) throw std::domain_error("hankel_transform: rho must be >= 0");
    if (!(f.decay_scale > 0.0)) throw std::domain_error("hankel_transform: decay_scale must be > 0");
    if (rho == 0.0 && order >= 1) return {Complex(0.0), 0.0};

    auto strategy = settings.strategy;
    if (strategy == QuadratureSettings::Strategy::Auto) {
        strategy = (rho > f.decay_scale) ? QuadratureSettings::Strategy::PartitionExtrapolation
                                         : QuadratureSettings::Strategy::AdaptivePanel;
    }
    if (rho == 0.0) strategy = QuadratureSettings::Strategy::AdaptivePanel;

    if (strategy == QuadratureSettings::Strategy::AdaptivePanel)
        return adaptive_panel_path(f, order, rho, settings);
    return partition_extrapolation_path(f, order, rho, settings);
}

}  // namespace emfwd
