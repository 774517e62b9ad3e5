#pragma once

// Special functions used by the Jx-lattice closed forms.

namespace jxfrft::specfun {

struct JacobiParams {
    int degree = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// ln(k!). Exact-sum table up to a few hundred, lgamma beyond.
/// Throws std::domain_error for k < 0.
double log_factorial(int k);

/// Jacobi polynomial P_n^{(alpha,beta)}(x) from the finite sum
///
///   sum_s C(n+alpha, n-s) C(n+beta, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
///
/// with generalized binomials, so negative-integer parameters are fine.
double jacobi(const JacobiParams& params, double x);

/// Same sum, but taking the two half-arguments (x-1)/2 and (x+1)/2 directly.
/// Callers that know them in closed form (e.g. -sin^2, cos^2) avoid the
/// cancellation in x-1 near x = 1.
long double jacobi_halves(const JacobiParams& params, long double lower_half, long double upper_half);

/// Generalized binomial C(r, k) = r (r-1) ... (r-k+1) / k!, k >= 0.
long double generalized_binomial(long double r, int k);

/// Normalized Hermite-Gauss function psi_n(x); unit L2 norm on the real line.
double hermite_gauss(int n, double x);

} // namespace jxfrft::specfun
