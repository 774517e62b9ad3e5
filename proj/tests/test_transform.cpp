#include "doctest.h"
#include "oracles/oracles.hpp"

#include "jxfrft/errors.hpp"
#include "jxfrft/lattice.hpp"
#include "jxfrft/transform.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace jxfrft;

namespace {

constexpr double kPi = std::numbers::pi;

SpectralBasis basis_for(int n) { return numeric_basis(build_jx(LatticeSpec(n))); }

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("minus_i_power is exact") {
    CHECK(minus_i_power(0) == cplx(1, 0));
    CHECK(minus_i_power(1) == cplx(0, -1));
    CHECK(minus_i_power(2) == cplx(-1, 0));
    CHECK(minus_i_power(3) == cplx(0, 1));
    CHECK(minus_i_power(-1) == cplx(0, 1));
    CHECK(minus_i_power(-6) == cplx(-1, 0));
}

TEST_CASE("green_spectral basic values") {
    for (int n : {2, 3, 8}) {
        const auto g = green_spectral(basis_for(n), 0.0);
        CHECK(max_abs(g.entries - Eigen::MatrixXcd::Identity(n, n)) < 1e-14);
    }
    // N=2: exp(-i pi/2 sigma_x/2) = (1/sqrt2)[[1,-i],[-i,1]]
    const auto g2 = green_spectral(basis_for(2), kPi / 2);
    Eigen::MatrixXcd expected(2, 2);
    expected << cplx(1, 0), cplx(0, -1), cplx(0, -1), cplx(1, 0);
    expected /= std::sqrt(2.0);
    CHECK(max_abs(g2.entries - expected) < 1e-15);
    CHECK(max_abs(oracle::expm_propagator(2, kPi / 2) - expected) < 1e-14);

    for (int n : {2, 3, 4, 7, 8}) {
        const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
        const auto g = green_spectral(basis_for(n), 2 * kPi);
        CHECK(max_abs(g.entries - sign * Eigen::MatrixXcd::Identity(n, n)) < 1e-10);
    }
}

TEST_CASE("green_closed at Z = 0 is the identity") {
    const LatticeSpec spec(8);
    for (int p = 0; p < 8; ++p) {
        for (int q = 0; q < 8; ++q) {
            const cplx g = green_closed(spec, spec.label(p), spec.label(q), 0.0);
            CHECK(std::abs(g - cplx(p == q ? 1.0 : 0.0, 0.0)) < 1e-15);
        }
    }
}

TEST_CASE("green_closed matches the spectral sum for N = 8") {
    const LatticeSpec spec(8);
    const auto basis = basis_for(8);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> zs(-2 * kPi, 2 * kPi);
    for (int trial = 0; trial < 10; ++trial) {
        const double z = zs(rng);
        const auto spectral = green_spectral(basis, z);
        CHECK(max_abs(green_closed_matrix(spec, z).entries - spectral.entries) < 1e-9);
    }
}

TEST_CASE("green_closed at the Fourier plane reproduces eigenvector amplitudes") {
    for (int n : {2, 3, 8, 13}) {
        const LatticeSpec spec(n);
        const auto basis = basis_for(n);
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) {
                const cplx expected = minus_i_power(q - p) * basis.vectors(p, q);
                CHECK(std::abs(green_closed(spec, spec.label(p), spec.label(q), kPi / 2) - expected) < 1e-12);
            }
        }
    }
}

TEST_CASE("green_closed limit evaluation around the singular points") {
    const LatticeSpec spec(9);
    const double tol = kClosedFormSingularTol;
    // |sin(Z/2)| just below / above the switch, and the same around Z = pi for cos(Z/2)
    const double near_zero_in = 2.0 * std::asin(0.5 * tol);
    const double near_zero_out = 2.0 * std::asin(2.0 * tol);
    const double near_pi_in = kPi - 2.0 * std::asin(0.5 * tol);
    const double near_pi_out = kPi - 2.0 * std::asin(2.0 * tol);
    for (double z : {0.0, near_zero_in, near_zero_out, -near_zero_in, kPi, near_pi_in, near_pi_out, -kPi, 2 * kPi, 3 * kPi}) {
        const Eigen::MatrixXcd ref = oracle::expm_propagator(9, z);
        const auto closed = green_closed_matrix(spec, z);
        CHECK(closed.entries.allFinite());
        CHECK(max_abs(closed.entries - ref) < 1e-12);
    }
}

TEST_CASE("green_quarter") {
    const LatticeSpec spec(8);
    const auto basis = basis_for(8);
    for (int p = 0; p < 8; ++p) {
        CHECK(green_quarter(basis, spec, spec.label(p), spec.label(p)) == cplx(basis.vectors(p, p), 0.0));
    }
    for (int q = 0; q < 8; ++q) {
        for (int p = 0; p < 8; ++p) {
            CHECK(std::abs(std::abs(green_quarter(basis, spec, spec.label(p), spec.label(q))) -
                           std::abs(basis.vectors(p, q))) < 1e-15);
        }
    }
    for (int n = 2; n <= 16; ++n) {
        const LatticeSpec s(n);
        const auto b = basis_for(n);
        const auto g = green_spectral(b, kPi / 2);
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) {
                CHECK(std::abs(green_quarter(b, s, s.label(p), s.label(q)) - g.entries(p, q)) < 1e-10);
            }
        }
    }
}

TEST_CASE("propagate") {
    const LatticeSpec spec(12);
    const auto basis = basis_for(12);
    const Field gauss = make_input(spec, {ProfileKind::gaussian, 1.5, 3.0, 0.4, {}});
    CHECK((propagate(gauss, basis, 0.0).amplitudes - gauss.amplitudes).cwiseAbs().maxCoeff() < 1e-14);

    for (int q = 0; q < 12; ++q) {
        const Field site = make_input(spec, {ProfileKind::single_site, spec.label(q), 1.0, 0.0, {}});
        const Eigen::VectorXd mags = propagate(site, basis, kPi / 2).amplitudes.cwiseAbs();
        CHECK((mags - basis.vectors.col(q).cwiseAbs()).cwiseAbs().maxCoeff() < 1e-12);
    }

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> zs(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double z = zs(rng);
        CHECK(std::abs(propagate(gauss, basis, z).norm() - 1.0) < 1e-12);
    }

    Field wrong{Eigen::VectorXcd::Ones(5)};
    CHECK_THROWS_AS(propagate(wrong, basis, 1.0), UsageError);
}

TEST_CASE("propagate agrees with direct integration of the coupled-mode equations") {
    for (int n : {5, 8, 16}) {
        const LatticeSpec spec(n);
        const auto basis = basis_for(n);
        Eigen::VectorXcd e0(n);
        std::mt19937_64 rng(n);
        std::normal_distribution<double> g;
        for (int i = 0; i < n; ++i) e0(i) = cplx(g(rng), g(rng));
        e0.normalize();
        for (double z : {0.4, kPi / 2, 2.3}) {
            const Eigen::VectorXcd ode = oracle::integrate_coupled_modes(e0, z);
            CHECK((propagate(Field{e0}, basis, z).amplitudes - ode).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
}

TEST_CASE("dfrft group behaviour") {
    const LatticeSpec spec(10);
    const auto basis = basis_for(10);
    const Field f = make_input(spec, {ProfileKind::gaussian, -2.0, 2.5, 0.3, {}});
    CHECK((dfrft(f, basis, 0.0).amplitudes - f.amplitudes).norm() < 1e-14);
    const Field twice = dfrft(dfrft(f, basis, kPi / 2), basis, kPi / 2);
    CHECK((twice.amplitudes - dfrft(f, basis, kPi).amplitudes).norm() < 1e-10);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> zs(-4.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = zs(rng);
        const double b = zs(rng);
        const Field lhs = dfrft(dfrft(f, basis, a), basis, b);
        CHECK((lhs.amplitudes - dfrft(f, basis, a + b).amplitudes).norm() < 1e-10);
    }
}

TEST_CASE("Fourier-plane broadening of a centered Gaussian") {
    const LatticeSpec spec(25);
    const auto basis = basis_for(25);
    const Field in = make_input(spec, {ProfileKind::gaussian, 0.0, 5.0, 0.0, {}});
    const double v_in = variance(spec, in.intensities());
    const double v_out = variance(spec, dfrft(in, basis, kPi / 2).intensities());
    CHECK(v_out > v_in);
}

TEST_CASE("make_input profiles") {
    const LatticeSpec spec(25);
    const Field e = make_input(spec, {ProfileKind::single_site, 3.0, 1.0, 0.0, {}});
    for (int i = 0; i < 25; ++i) CHECK(e.amplitudes(i) == cplx(i == spec.index(3.0) ? 1.0 : 0.0, 0.0));

    const Field g = make_input(spec, {ProfileKind::gaussian, 0.0, 5.0, 0.0, {}});
    CHECK(std::abs(g.norm() - 1.0) < 1e-15);
    const Eigen::VectorXd gi = g.intensities();
    Eigen::Index peak = 0;
    gi.maxCoeff(&peak);
    CHECK(spec.label(static_cast<int>(peak)) == 0.0);
    for (int i = 0; i < 25; ++i) CHECK(std::abs(gi(i) - gi(24 - i)) < 1e-16);
    // FWHM 5: intensity at +-2.5 sites is half the peak
    const double k = 4.0 * std::log(2.0) / 25.0;
    CHECK(std::abs(gi(spec.index(2.0)) / gi(spec.index(0.0)) - std::exp(-4.0 * k)) < 1e-14);
    CHECK(std::abs(std::exp(-2.5 * 2.5 * k) - 0.5) < 1e-15);

    const Field edge = make_input(spec, {ProfileKind::tophat, -10.5, 4.0, 0.0, {}});
    for (int i = 0; i < 25; ++i) CHECK(std::abs(edge.amplitudes(i)) == doctest::Approx(i < 4 ? 0.5 : 0.0));

    const Field ramp = make_input(spec, {ProfileKind::tophat, 0.0, 3.0, 0.25, {}});
    CHECK(std::abs(std::arg(ramp.amplitudes(spec.index(1.0))) - 0.25) < 1e-15);

    CHECK_THROWS_AS(make_input(spec, {ProfileKind::tophat, -11.0, 4.0, 0.0, {}}), UsageError);
    CHECK_THROWS_AS(make_input(spec, {ProfileKind::tophat, 0.0, 2.5, 0.0, {}}), UsageError);
    CHECK_THROWS_AS(make_input(spec, {ProfileKind::gaussian, 13.0, 5.0, 0.0, {}}), UsageError);
    CHECK_THROWS_AS(make_input(spec, {ProfileKind::gaussian, 0.0, -1.0, 0.0, {}}), UsageError);
    CHECK_THROWS_AS(make_input(spec, {ProfileKind::single_site, 0.5, 1.0, 0.0, {}}), UsageError);
    CHECK_THROWS_AS(make_input(spec, {ProfileKind::custom, 0.0, 1.0, 0.0, std::vector<cplx>(3)}), UsageError);
    CHECK_THROWS_AS(make_input(spec, {ProfileKind::custom, 0.0, 1.0, 0.0, std::vector<cplx>(25)}), UsageError);
}

TEST_CASE("zscan") {
    const LatticeSpec spec(9);
    const auto basis = basis_for(9);
    const Field f = make_input(spec, {ProfileKind::single_site, -2.0, 1.0, 0.0, {}});
    const std::vector<double> one{0.0};
    CHECK((zscan(f, basis, one).row(0).transpose() - f.intensities()).cwiseAbs().maxCoeff() < 1e-15);

    const std::vector<double> two{0.0, kPi / 2};
    const Eigen::MatrixXd m = zscan(f, basis, two);
    const int q = spec.index(-2.0);
    CHECK(std::abs(m(0, q) - 1.0) < 1e-15);
    CHECK((m.row(1).transpose() - basis.vectors.col(q).cwiseAbs2()).cwiseAbs().maxCoeff() < 1e-12);

    std::vector<double> grid;
    for (int s = 0; s <= 40; ++s) grid.push_back(-3.0 + 0.17 * s);
    const Eigen::MatrixXd big = zscan(make_input(spec, {ProfileKind::gaussian, 1.0, 3.0, 0.0, {}}), basis, grid);
    for (Eigen::Index r = 0; r < big.rows(); ++r) {
        CHECK(std::abs(big.row(r).sum() - 1.0) < 1e-10);
        CHECK(big.row(r).minCoeff() >= 0.0);
    }
}

TEST_CASE("continuous FrFT of a Gaussian") {
    std::vector<double> xs;
    for (int s = 0; s <= 16; ++s) xs.push_back(-4.0 + 0.5 * s);

    const auto id = continuous_frft_gaussian(1.3, 0.4, 0.0, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::abs(id[i] - std::exp(-(xs[i] - 0.4) * (xs[i] - 0.4) / (2 * 1.69))) < 1e-15);
    }
    // the unit Gaussian is a fixed point of the Fourier transform
    const auto fixed = continuous_frft_gaussian(1.0, 0.0, kPi / 2, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::abs(fixed[i] - std::exp(-xs[i] * xs[i] / 2)) < 1e-14);
    }
    // width 2 -> width 1/2: same shape up to normalization
    const auto narrow = continuous_frft_gaussian(2.0, 0.0, kPi / 2, xs);
    const double peak = std::abs(narrow[8]);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::abs(std::abs(narrow[i]) / peak - std::exp(-xs[i] * xs[i] / (2 * 0.25))) < 1e-14);
    }

    CHECK_THROWS_AS(continuous_frft_gaussian(1.0, 0.0, kPi, xs), UsageError);
    CHECK_THROWS_AS(continuous_frft_gaussian(1.0, 0.0, -3 * kPi, xs), UsageError);
    CHECK_THROWS_AS(continuous_frft_gaussian(0.0, 0.0, 1.0, xs), UsageError);
    CHECK_NOTHROW(continuous_frft_gaussian(1.0, 0.0, 2 * kPi, xs));
}

TEST_CASE("continuous FrFT against a Hermite-Gauss expansion oracle") {
    const std::vector<double> xs{-3.0, -1.7, -0.5, 0.0, 0.8, 2.2, 3.5};
    struct Case {
        double width, shift, order;
    };
    for (const Case c : {Case{2.0, 0.0, kPi / 2}, Case{2.0, 0.0, 0.3}, Case{0.7, 1.3, 2.5}, Case{0.7, 1.3, -2.48},
                         Case{1.0, -0.6, 3.8}, Case{1.4, 0.5, 7.0}}) {
        auto f = [&](double x) { return std::exp(-(x - c.shift) * (x - c.shift) / (2 * c.width * c.width)); };
        const auto ref = oracle::frft_by_expansion(f, c.order, xs);
        const auto got = continuous_frft_gaussian(c.width, c.shift, c.order, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            CHECK(std::abs(got[i] - ref[i]) < 1e-9);
        }
    }
}

TEST_CASE("unitarity over random orders") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> zs(-2 * kPi, 2 * kPi);
    for (int n : {2, 3, 8, 16, 32}) {
        const auto basis = basis_for(n);
        for (int trial = 0; trial < 100; ++trial) {
            CHECK(green_spectral(basis, zs(rng)).unitarity_defect() < 1e-10);
        }
    }
}

TEST_CASE("closed form, spectral sum and matrix exponential agree") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> zs(-2 * kPi, 2 * kPi);
    for (int n : {2, 3, 5, 8, 16, 24, 32}) {
        const LatticeSpec spec(n);
        const auto basis = basis_for(n);
        for (int trial = 0; trial < 5; ++trial) {
            const double z = zs(rng);
            const Eigen::MatrixXcd expm = oracle::expm_propagator(n, z);
            const Eigen::MatrixXcd spectral = green_spectral(basis, z).entries;
            const Eigen::MatrixXcd closed = green_closed_matrix(spec, z).entries;
            CHECK(max_abs(spectral - expm) < 1e-9);
            CHECK(max_abs(closed - expm) < 1e-9);
            CHECK(max_abs(closed - spectral) < 1e-9);
        }
    }
}

TEST_CASE("off-center Gaussians move toward the lattice center") {
    const LatticeSpec spec(25);
    const auto basis = basis_for(25);
    for (double c : {-6.0, -3.0, 4.0, 7.5}) {
        const Field in = make_input(spec, {ProfileKind::gaussian, c, 5.0, 0.0, {}});
        const double before = std::abs(centroid(spec, in.intensities()));
        const double after = std::abs(centroid(spec, propagate(in, basis, kPi / 2).intensities()));
        CHECK(after < before);
    }
}

TEST_CASE("displacement check") {
    const LatticeSpec spec(25);
    const auto basis = basis_for(25);
    const InputProfileSpec flat{ProfileKind::tophat, 0.0, 9.0, 0.0, {}};
    const auto same = displacement_check(spec, basis, flat, kPi / 2);
    CHECK(same.best_shift == 0);
    CHECK(same.distance == 0.0);
    InputProfileSpec ramped = flat;
    ramped.phase_ramp = kPi / 8;
    CHECK(displacement_check(spec, basis, ramped, kPi / 2).distance > 1e-3);
}
