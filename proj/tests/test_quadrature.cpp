#include <doctest.h>

#include <cmath>
#include <complex>

#include "emfwd/constants.hpp"
#include "emfwd/quadrature.hpp"
#include "support/oracles.hpp"

using namespace emfwd;

namespace {

// mpmath, 40 significant digits
struct BesselRef {
    double x, j0, j1, j2;
};
constexpr BesselRef kBesselRefs[] = {
    {0.5, 0.93846980724081290423, 0.24226845767487388638, 0.030604023458682641307},
    {1.0, 0.76519768655796655145, 0.44005058574493351596, 0.11490348493190048047},
    {2.3, 0.055539784445601963144, 0.53987253260431366532, 0.41391459173206209365},
    {5.0, -0.17759677131433830435, -0.32757913759146522204, 0.046565116277752215532},
    {7.7, 0.23455913958646440641, 0.18131271532458798281, -0.18746492781384415113},
    {9.5, -0.1939287476874223554, 0.16126443075752985095, 0.22787915416269179771},
    {11.8, 0.0019671733067396520043, -0.23228473426738357828, -0.041337467250363987306},
    {12.0, 0.047689310796833536624, -0.22344710449062761237, -0.084930494878604805352},
    {12.2, 0.090770123170504887979, -0.20598202169955993603, -0.1245376677114163529},
    {15.3, -0.073607544951123132409, 0.18787944983234870119, 0.098166950157966099885},
    {19.7, 0.17942725365878742097, 0.015100612097754929548, -0.17789419659302549919},
    {25.0, 0.096266783275958116174, -0.12535024958028990465, -0.10629480324238130855},
    {47.2, -0.087924398463720029099, 0.074942916890158534984, 0.091099945789574204311},
    {99.5, -0.019543066407440783557, -0.07766319824307693544, 0.017981997096022151688},
    {316.2, 0.013938032756646694134, 0.042672696790162603074, -0.013668123226032129915},
    {1000.0, 0.024786686152420174561, 0.0047283119070895239176, -0.024777229528605995513},
};

SpectralKernel exp_kernel(double h) {
    SpectralKernel f;
    f.decay_scale = h;
    f.eval = [h](double kappa) { return Complex(std::exp(-kappa * h), 0.0); };
    return f;
}

double lipschitz_closed_form(int order, double h, double rho) {
    const double r = std::sqrt(h * h + rho * rho);
    if (order == 0) return 1.0 / r;
    return (1.0 - h / r) / rho;  // order 1, rho > 0
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("bessel values at the origin") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(2, 0.0) == 0.0);
}

TEST_CASE("bessel rejects bad arguments") {
    CHECK_THROWS_AS(bessel_j(0, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(3, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(0, std::nan("")), std::domain_error);
}

TEST_CASE("bessel matches the high-precision table") {
    // relative against the envelope sqrt(2/pi x) so near-zero entries do not
    // inflate the measure; target is the module's 1e-12 contract
    for (const auto& ref : kBesselRefs) {
        const double envelope = std::sqrt(2.0 / (kPi * ref.x));
        const double refs[3] = {ref.j0, ref.j1, ref.j2};
        for (int n = 0; n < 3; ++n) {
            const double got = bessel_j(n, ref.x);
            const double denom = std::max(std::abs(refs[n]), 0.05 * envelope);
            CHECK(std::abs(got - refs[n]) / denom <= 1e-12);
        }
    }
}

TEST_CASE("bessel agrees with the long-double series oracle at small x") {
    for (double x : {0.3, 1.1, 2.7, 4.9, 6.5, 7.9}) {
        for (int n = 0; n < 3; ++n) {
            const double got = bessel_j(n, x);
            const double want = oracles::bessel_series_longdouble(n, x);
            CHECK(got == doctest::Approx(want).epsilon(1e-13));
        }
    }
}

TEST_CASE("J0 vanishes at its first zero, located by an independent root-find") {
    // Newton on the long-double series, nowhere near the production path
    double x = 2.4;
    for (int i = 0; i < 50; ++i) {
        const double f = oracles::bessel_series_longdouble(0, x);
        const double df = -oracles::bessel_series_longdouble(1, x);
        const double dx = f / df;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
    }
    CHECK(x == doctest::Approx(2.404825557695773).epsilon(1e-14));
    CHECK(std::abs(bessel_j(0, x)) < 1e-12);
    CHECK(std::abs(bessel_j(0, 2.404825557695773)) < 1e-12);
}

TEST_CASE("bessel zero table") {
    CHECK(bessel_j_zero(0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-13));
    CHECK(bessel_j_zero(1, 1) == doctest::Approx(3.831705970207512).epsilon(1e-13));
    CHECK(bessel_j_zero(2, 1) == doctest::Approx(5.135622301840683).epsilon(1e-13));
    // spacing approaches pi
    const double z40 = bessel_j_zero(0, 40);
    const double z41 = bessel_j_zero(0, 41);
    CHECK(z41 - z40 == doctest::Approx(kPi).epsilon(1e-4));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const GaussRule g = gauss_legendre(6);
    double acc = 0.0, linear = 0.0;
    for (int i = 0; i < 6; ++i) {
        acc += g.weights[i] * std::pow(g.nodes[i], 10);
        linear += g.weights[i] * g.nodes[i];
    }
    CHECK(acc == doctest::Approx(2.0 / 11.0).epsilon(1e-14));
    CHECK(std::abs(linear) < 1e-15);
}

TEST_CASE("Lipschitz closed forms, orders 0 and 1") {
    for (double h : {0.1, 0.6, 2.0}) {
        for (double rho : {0.0, 0.3, 1.0}) {
            const HankelResult r0 = hankel_transform(exp_kernel(h), 0, rho);
            CHECK(r0.value.real() ==
                  doctest::Approx(lipschitz_closed_form(0, h, rho)).epsilon(1e-8));
            const HankelResult r1 = hankel_transform(exp_kernel(h), 1, rho);
            if (rho == 0.0) {
                CHECK(r1.value == Complex(0.0));
                CHECK(r1.error == 0.0);
            } else {
                CHECK(r1.value.real() ==
                      doctest::Approx(lipschitz_closed_form(1, h, rho)).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("spec examples with h = 0.6") {
    const HankelResult a = hankel_transform(exp_kernel(0.6), 0, 0.0);
    CHECK(a.value.real() == doctest::Approx(1.0 / 0.6).epsilon(1e-9));
    const HankelResult b = hankel_transform(exp_kernel(0.6), 0, 0.3);
    CHECK(b.value.real() == doctest::Approx(1.0 / std::sqrt(0.45)).epsilon(1e-9));
    const HankelResult c = hankel_transform(exp_kernel(0.6), 1, 0.3);
    CHECK(c.value.real() ==
          doctest::Approx((1.0 - 0.6 / std::sqrt(0.45)) / 0.3).epsilon(1e-9));
}

TEST_CASE("complex half-space kernel against a dense trapezoid oracle") {
    const auto kernel = [](double kappa) {
        const Complex gamma = std::sqrt(Complex(kappa * kappa, -1.0));
        return kappa / (gamma + kappa) * std::exp(-kappa * 0.2 + gamma * (-0.4));
    };
    SpectralKernel f;
    f.decay_scale = 0.6;
    f.eval = kernel;
    const double rho = 0.1;
    const HankelResult got = hankel_transform(f, 0, rho);

    const Complex want = oracles::trapezoid(
        [&](double kappa) { return kernel(kappa) * bessel_j(0, kappa * rho); }, 0.0, 200.0,
        2000000);
    CHECK(std::abs(got.value - want) / std::abs(want) <= 1e-8);
}

TEST_CASE("linearity of the transform") {
    SpectralKernel f = exp_kernel(0.5);
    SpectralKernel g;
    g.decay_scale = 0.3;
    g.eval = [](double kappa) { return Complex(std::cos(kappa), 0.2) * std::exp(-0.3 * kappa); };
    const Complex a(2.0, -1.0), b(0.5, 3.0);
    SpectralKernel combo;
    combo.decay_scale = 0.3;
    combo.eval = [&](double kappa) { return a * f.eval(kappa) + b * g.eval(kappa); };

    for (double rho : {0.0, 0.4}) {
        const HankelResult rf = hankel_transform(f, 0, rho);
        const HankelResult rg = hankel_transform(g, 0, rho);
        const HankelResult rc = hankel_transform(combo, 0, rho);
        const Complex lhs = rc.value;
        const Complex rhs = a * rf.value + b * rg.value;
        const double budget = 2.0 * (rc.error + std::abs(a) * rf.error + std::abs(b) * rg.error);
        CHECK(std::abs(lhs - rhs) <= budget);
    }
}

TEST_CASE("purely real kernels produce no imaginary part") {
    for (double rho : {0.0, 0.3, 1.2}) {
        const HankelResult r = hankel_transform(exp_kernel(0.4), 0, rho);
        CHECK(std::abs(r.value.imag()) <= 1e-14 * std::abs(r.value.real()) + 1e-14);
    }
}

TEST_CASE("strategy equivalence on a half-space kernel") {
    // greens-type kernel: conducting soil, heights from the standard setup
    const auto kernel = [](double kappa) {
        const Complex gamma = std::sqrt(Complex(kappa * kappa, 0.0) - Complex(0.0, 0.201));
        return kappa / (gamma + 1.0006 * kappa) * std::exp(-kappa * 0.25 + gamma * (-0.4));
    };
    for (double rho : {0.05, 0.2, 0.9}) {
        SpectralKernel f;
        f.decay_scale = 0.65;
        f.eval = kernel;
        QuadratureSettings sa;
        sa.strategy = QuadratureSettings::Strategy::AdaptivePanel;
        QuadratureSettings sp;
        sp.strategy = QuadratureSettings::Strategy::PartitionExtrapolation;
        const HankelResult ra = hankel_transform(f, 0, rho, sa);
        const HankelResult rp = hankel_transform(f, 0, rho, sp);
        CHECK(std::abs(ra.value - rp.value) <= 2.0 * (ra.error + rp.error) + 1e-13);
    }
}

TEST_CASE("error estimates are honest on the closed-form family") {
    for (double h : {0.1, 0.6, 2.0}) {
        for (double rho : {0.0, 0.3, 1.0}) {
            for (int order : {0, 1}) {
                if (order == 1 && rho == 0.0) continue;
                const HankelResult r = hankel_transform(exp_kernel(h), order, rho);
                const double truth = lipschitz_closed_form(order, h, rho);
                const double true_err = std::abs(r.value.real() - truth);
                CHECK(true_err <= 10.0 * r.error);
            }
        }
    }
}

TEST_CASE("interval budget exhaustion raises NonConvergence with a best estimate") {
    QuadratureSettings s;
    s.max_intervals = 4;
    s.rel_tol = 1e-13;
    SpectralKernel f = exp_kernel(0.1);
    bool thrown = false;
    try {
        hankel_transform(f, 0, 2.0, s);  // slow decay, fast oscillation
    } catch (const NonConvergence& e) {
        thrown = true;
        CHECK(std::isfinite(e.best_estimate.real()));
        CHECK(e.error_bound > 0.0);
    }
    CHECK(thrown);
}

TEST_CASE("rho = 0 with order >= 1 is exactly zero") {
    const HankelResult r1 = hankel_transform(exp_kernel(0.6), 1, 0.0);
    const HankelResult r2 = hankel_transform(exp_kernel(0.6), 2, 0.0);
    CHECK(r1.value == Complex(0.0));
    CHECK(r2.value == Complex(0.0));
}

}  // TEST_SUITE
