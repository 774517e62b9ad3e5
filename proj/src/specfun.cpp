#include "jxfrft/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jxfrft::specfun {

namespace {

constexpr int kTableSize = 1024;

const std::array<double, kTableSize>& log_factorial_table() {
    static const std::array<double, kTableSize> table = [] {
        std::array<double, kTableSize> t{};
        long double acc = 0.0L;
        t[0] = 0.0;
        for (int k = 1; k < kTableSize; ++k) {
            acc += std::log(static_cast<long double>(k));
            t[k] = static_cast<double>(acc);
        }
        return t;
    }();
    return table;
}

} // namespace

double log_factorial(int k) {
    if (k < 0) {
        throw std::domain_error("log_factorial: negative argument " + std::to_string(k));
    }
    if (k < kTableSize) {
        return log_factorial_table()[k];
    }
    return std::lgamma(static_cast<double>(k) + 1.0);
}

long double generalized_binomial(long double r, int k) {
    if (k < 0) {
        return 0.0L;
    }
    long double value = 1.0L;
    for (int i = 0; i < k; ++i) {
        value *= (r - i) / static_cast<long double>(i + 1);
    }
    return value;
}

long double jacobi_halves(const JacobiParams& params, long double lower_half, long double upper_half) {
    const int n = params.degree;
    if (n < 0) {
        throw std::domain_error("jacobi: negative degree");
    }
    const long double a = params.alpha;
    const long double b = params.beta;
    long double sum = 0.0L;
    for (int s = 0; s <= n; ++s) {
        const long double c1 = generalized_binomial(n + a, n - s);
        if (c1 == 0.0L) {
            continue;
        }
        const long double c2 = generalized_binomial(n + b, s);
        if (c2 == 0.0L) {
            continue;
        }
        sum += c1 * c2 * std::pow(lower_half, s) * std::pow(upper_half, n - s);
    }
    return sum;
}

double jacobi(const JacobiParams& params, double x) {
    if (!std::isfinite(params.alpha) || !std::isfinite(params.beta)) {
        throw std::domain_error("jacobi: non-finite parameter");
    }
    const long double xl = x;
    return static_cast<double>(jacobi_halves(params, 0.5L * (xl - 1.0L), 0.5L * (xl + 1.0L)));
}

double hermite_gauss(int n, double x) {
    if (n < 0) {
        throw std::domain_error("hermite_gauss: negative order");
    }
    // psi_{k+1} = x sqrt(2/(k+1)) psi_k - sqrt(k/(k+1)) psi_{k-1}
    const long double xl = x;
    long double prev = 0.0L;
    long double cur = std::exp(-0.5L * xl * xl) / std::pow(std::numbers::pi_v<long double>, 0.25L);
    for (int k = 0; k < n; ++k) {
        const long double next = xl * std::sqrt(2.0L / (k + 1)) * cur - std::sqrt(static_cast<long double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return static_cast<double>(cur);
}

} // namespace jxfrft::specfun
