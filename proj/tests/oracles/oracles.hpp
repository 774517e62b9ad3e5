#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls the library's closed forms or spectral routines.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/numeric/odeint.hpp>
#include <boost/rational.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using big_int = boost::multiprecision::cpp_int;
using big_float = boost::multiprecision::cpp_bin_float_50;
using rational = boost::rational<big_int>;

/// ln(k!) from the exact integer k!.
inline double log_factorial_exact(int k) {
    big_int f = 1;
    for (int i = 2; i <= k; ++i) {
        f *= i;
    }
    return static_cast<double>(boost::multiprecision::log(big_float(f)));
}

/// C(r, k) for rational r, exact.
inline rational binomial(const rational& r, int k) {
    rational out(1);
    for (int i = 0; i < k; ++i) {
        out *= (r - rational(i)) / rational(i + 1);
    }
    return out;
}

/// Jacobi finite sum in exact rationals (integer alpha, beta; rational x).
inline rational jacobi_exact(int n, int alpha, int beta, const rational& x) {
    const rational lower = (x - rational(1)) / rational(2);
    const rational upper = (x + rational(1)) / rational(2);
    rational sum(0);
    for (int s = 0; s <= n; ++s) {
        rational term = binomial(rational(n + alpha), n - s) * binomial(rational(n + beta), s);
        for (int t = 0; t < s; ++t) term *= lower;
        for (int t = 0; t < n - s; ++t) term *= upper;
        sum += term;
    }
    return sum;
}

inline double to_double(const rational& r) {
    return static_cast<double>(big_float(r.numerator()) / big_float(r.denominator()));
}

/// Legendre P_n(x) by Bonnet's recurrence.
inline double legendre(int n, double x) {
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = x;
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// psi_n(x) in 50-digit arithmetic via the physicists' H_n recurrence.
inline double hermite_gauss_hp(int n, double xd) {
    const big_float x = xd;
    big_float h0 = 1;
    big_float h1 = 2 * x;
    big_float h = n == 0 ? h0 : h1;
    for (int k = 1; k < n; ++k) {
        h = 2 * x * h1 - 2 * k * h0;
        h0 = h1;
        h1 = h;
    }
    big_float norm = boost::multiprecision::pow(big_float(2), n) * boost::math::constants::root_pi<big_float>();
    for (int k = 2; k <= n; ++k) norm *= k;
    return static_cast<double>(boost::multiprecision::exp(-x * x / 2) * h / boost::multiprecision::sqrt(norm));
}

/// Adaptive Gauss-Kronrod integral over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b) {
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14, &err);
}

/// Dense Jx built straight from the angular-momentum matrix elements.
inline Eigen::MatrixXd jx_dense(int n) {
    const double j = 0.5 * (n - 1);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r + 1 < n; ++r) {
        const double mm = r - j;
        const double c = 0.5 * std::sqrt(j * (j + 1) - mm * (mm + 1));
        m(r, r + 1) = c;
        m(r + 1, r) = c;
    }
    return m;
}

/// exp(-i Z Jx) by Pade scaling and squaring.
inline Eigen::MatrixXcd expm_propagator(int n, double z) {
    const Eigen::MatrixXcd a = cplx(0.0, -z) * jx_dense(n).cast<cplx>();
    return a.exp();
}

/// Integrates i dE/dZ = Jx E with an adaptive Dormand-Prince 5(4) stepper.
inline Eigen::VectorXcd integrate_coupled_modes(const Eigen::VectorXcd& e0, double z) {
    using state = std::vector<cplx>;
    const Eigen::MatrixXd jx = jx_dense(static_cast<int>(e0.size()));
    state s(e0.data(), e0.data() + e0.size());
    auto rhs = [&jx](const state& x, state& dxdt, double) {
        const Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
        const Eigen::VectorXcd d = cplx(0.0, -1.0) * (jx.cast<cplx>() * xv);
        dxdt.assign(d.data(), d.data() + d.size());
    };
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<state>());
    ode::integrate_adaptive(stepper, rhs, s, 0.0, z, z / 200.0);
    return Eigen::Map<Eigen::VectorXcd>(s.data(), static_cast<Eigen::Index>(s.size()));
}

/// Two-photon evolution in the symmetric subspace: the single-particle
/// unitary U is lifted to U (x) U and restricted to the Fock basis
/// {|1_k 1_l>, k<l} u {|2_k>}. Returns Gamma_{k,l} = <a_k^dag a_l^dag a_l a_k>
/// and the densities <a_k^dag a_k>.
struct FockResult {
    Eigen::MatrixXd gamma;
    Eigen::VectorXd density;
};

inline FockResult fock_two_photon(const Eigen::MatrixXcd& u, const Eigen::VectorXcd& initial_tensor) {
    const int n = static_cast<int>(u.rows());
    // U (x) U acting on the N^2 tensor-product vector
    Eigen::MatrixXcd uu(n * n, n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) uu(a * n + b, c * n + d) = u(a, c) * u(b, d);
    const Eigen::VectorXcd out = uu * initial_tensor;

    // Project onto normalized symmetric Fock vectors.
    FockResult res{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
    for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l) {
            cplx amp;
            if (k == l) {
                amp = out(k * n + k); // |2_k> = e_k (x) e_k
                const double p = std::norm(amp);
                res.gamma(k, k) = 2.0 * p; // <n(n-1)> = 2 P(2_k)
                res.density(k) += 2.0 * p;
            } else {
                amp = (out(k * n + l) + out(l * n + k)) / std::numbers::sqrt2;
                const double p = std::norm(amp);
                res.gamma(k, l) = p;
                res.gamma(l, k) = p;
                res.density(k) += p;
                res.density(l) += p;
            }
        }
    }
    return res;
}

/// a_m^dag a_n^dag |0>  as a symmetric tensor.
inline Eigen::VectorXcd separable_tensor(int n, int m_idx, int n_idx) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n * n);
    v(m_idx * n + n_idx) += 1.0 / std::numbers::sqrt2;
    v(n_idx * n + m_idx) += 1.0 / std::numbers::sqrt2;
    return v;
}

/// (1/2)[(a_m^dag)^2 + (a_n^dag)^2]|0> = (|2_m> + |2_n>)/sqrt 2.
inline Eigen::VectorXcd entangled_tensor(int n, int m_idx, int n_idx) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n * n);
    v(m_idx * n + m_idx) = 1.0 / std::numbers::sqrt2;
    v(n_idx * n + n_idx) = 1.0 / std::numbers::sqrt2;
    return v;
}

/// Continuous FrFT with eigenvalues exp(i n Z) by expansion in Hermite-Gauss modes,
/// coefficients by quadrature.
inline std::vector<cplx> frft_by_expansion(const std::function<double(double)>& f, double order,
                                           const std::vector<double>& grid, int modes = 120) {
    auto psi = [](int n, double x) {
        double p0 = std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25);
        if (n == 0) return p0;
        double p1 = std::numbers::sqrt2 * x * p0;
        for (int k = 1; k < n; ++k) {
            const double p2 = x * std::sqrt(2.0 / (k + 1)) * p1 - std::sqrt(static_cast<double>(k) / (k + 1)) * p0;
            p0 = p1;
            p1 = p2;
        }
        return p1;
    };
    std::vector<cplx> out(grid.size());
    for (int n = 0; n < modes; ++n) {
        const double c = integrate([&](double x) { return psi(n, x) * f(x); }, -30.0, 30.0);
        const cplx phase = std::exp(cplx(0.0, n * order));
        for (std::size_t g = 0; g < grid.size(); ++g) out[g] += phase * c * psi(n, grid[g]);
    }
    return out;
}

} // namespace oracle
