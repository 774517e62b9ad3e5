#include "jxfrft/transform.hpp"

#include "jxfrft/errors.hpp"
#include "jxfrft/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace jxfrft {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_size(int expected, int actual, const char* what) {
    if (expected != actual) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch (lattice has " << expected << " sites, got " << actual << ")";
        throw UsageError(msg.str());
    }
}

} // namespace

cplx minus_i_power(int k) {
    switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
    }
}

double GreenMatrix::unitarity_defect() const {
    const Eigen::MatrixXcd gram = entries.adjoint() * entries;
    return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

GreenMatrix green_spectral(const SpectralBasis& basis, double order) {
    const int n = basis.size();
    Eigen::VectorXcd phases(n);
    for (int r = 0; r < n; ++r) {
        phases(r) = std::exp(-kI * (basis.eigenvalues(r) * order));
    }
    const Eigen::MatrixXcd u = basis.vectors.cast<cplx>();
    return {order, u * phases.asDiagonal() * u.transpose()};
}

cplx green_closed(const LatticeSpec& spec, double p, double q, double order) {
    const int ip = spec.index(p);
    const int iq = spec.index(q);
    const int two_j = spec.two_j();
    const int sin_power = iq - ip;          // q - p
    const int cos_power = two_j - ip - iq;  // -q - p
    const specfun::JacobiParams params{ip, static_cast<double>(sin_power), static_cast<double>(cos_power)};

    const long double log_ratio = 0.5L * (specfun::log_factorial(ip) + specfun::log_factorial(two_j - ip) -
                                          specfun::log_factorial(iq) - specfun::log_factorial(two_j - iq));
    const long double prefactor = std::exp(log_ratio);

    const long double half = 0.5L * static_cast<long double>(order);
    const long double s = std::sin(half);
    const long double c = std::cos(half);
    // (x-1)/2 = -sin^2(Z/2), (x+1)/2 = cos^2(Z/2) for x = cos Z
    const bool singular = (sin_power < 0 && std::abs(s) < kClosedFormSingularTol) ||
                          (cos_power < 0 && std::abs(c) < kClosedFormSingularTol);

    long double value = 0.0L;
    if (!singular) {
        value = std::pow(s, sin_power) * std::pow(c, cos_power) * specfun::jacobi_halves(params, -s * s, c * c);
    } else {
        // Fold the outer powers into each term; every surviving term has
        // nonnegative exponents, so this is the analytic limit.
        const int degree = params.degree;
        for (int t = 0; t <= degree; ++t) {
            const long double c1 = specfun::generalized_binomial(degree + params.alpha, degree - t);
            const long double c2 = specfun::generalized_binomial(degree + params.beta, t);
            if (c1 == 0.0L || c2 == 0.0L) {
                continue;
            }
            const int sp = 2 * t + sin_power;
            const int cp = 2 * (degree - t) + cos_power;
            const long double sign = (t % 2 == 0) ? 1.0L : -1.0L;
            value += sign * c1 * c2 * std::pow(s, sp) * std::pow(c, cp);
        }
    }
    return minus_i_power(sin_power) * static_cast<double>(prefactor * value);
}

GreenMatrix green_closed_matrix(const LatticeSpec& spec, double order) {
    GreenMatrix g{order, Eigen::MatrixXcd(spec.size(), spec.size())};
    for (int i = 0; i < spec.size(); ++i) {
        for (int k = 0; k < spec.size(); ++k) {
            g.entries(i, k) = green_closed(spec, spec.label(i), spec.label(k), order);
        }
    }
    return g;
}

cplx green_quarter(const SpectralBasis& basis, const LatticeSpec& spec, double p, double q) {
    require_size(spec.size(), basis.size(), "green_quarter");
    const int ip = spec.index(p);
    const int iq = spec.index(q);
    return minus_i_power(iq - ip) * basis.vectors(ip, iq);
}

Field propagate(const Field& field, const SpectralBasis& basis, double order) {
    require_size(basis.size(), field.size(), "propagate");
    // U diag(e^{-i beta Z}) U^T applied without forming G.
    Eigen::VectorXcd modal = basis.vectors.transpose().cast<cplx>() * field.amplitudes;
    for (int r = 0; r < basis.size(); ++r) {
        modal(r) *= std::exp(-kI * (basis.eigenvalues(r) * order));
    }
    return {basis.vectors.cast<cplx>() * modal};
}

Field dfrft(const Field& field, const SpectralBasis& basis, double order) {
    return propagate(field, basis, order);
}

Field make_input(const LatticeSpec& spec, const InputProfileSpec& profile) {
    const int n = spec.size();
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(n);
    if (!std::isfinite(profile.center) || !std::isfinite(profile.phase_ramp)) {
        throw UsageError("profile center and phase ramp must be finite");
    }
    auto ramp = [&](double m) { return std::exp(kI * (profile.phase_ramp * m)); };

    switch (profile.kind) {
    case ProfileKind::gaussian: {
        if (!(profile.width > 0.0)) {
            throw UsageError("gaussian FWHM must be positive");
        }
        if (profile.center < -spec.j() || profile.center > spec.j()) {
            throw UsageError("gaussian center lies outside the lattice");
        }
        const double k = 4.0 * std::numbers::ln2 / (2.0 * profile.width * profile.width);
        for (int i = 0; i < n; ++i) {
            const double m = spec.label(i);
            amp(i) = std::exp(-(m - profile.center) * (m - profile.center) * k) * ramp(m);
        }
        break;
    }
    case ProfileKind::tophat: {
        const double count = std::round(profile.width);
        if (!(profile.width >= 1.0) || std::abs(profile.width - count) > 1e-9) {
            throw UsageError("top-hat width must be a positive whole number of sites");
        }
        const double first = profile.center - 0.5 * (count - 1.0);
        const double last = profile.center + 0.5 * (count - 1.0);
        if (!spec.contains(first) || !spec.contains(last)) {
            std::ostringstream msg;
            msg << "top-hat of " << count << " sites centered at " << profile.center
                << " does not fit on lattice sites " << -spec.j() << ".." << spec.j();
            throw UsageError(msg.str());
        }
        for (int i = spec.index(first); i <= spec.index(last); ++i) {
            amp(i) = ramp(spec.label(i));
        }
        break;
    }
    case ProfileKind::single_site: {
        const int i = spec.index(profile.center);
        amp(i) = ramp(spec.label(i));
        break;
    }
    case ProfileKind::custom: {
        require_size(n, static_cast<int>(profile.custom.size()), "custom profile");
        for (int i = 0; i < n; ++i) {
            if (!std::isfinite(profile.custom[i].real()) || !std::isfinite(profile.custom[i].imag())) {
                throw UsageError("custom profile has non-finite amplitudes");
            }
            amp(i) = profile.custom[i];
        }
        break;
    }
    }

    const double norm = amp.norm();
    if (!(norm > 0.0)) {
        throw UsageError("input profile has zero norm on the lattice");
    }
    return {amp / norm};
}

Eigen::MatrixXd zscan(const Field& field, const SpectralBasis& basis, std::span<const double> z_grid) {
    require_size(basis.size(), field.size(), "zscan");
    Eigen::MatrixXd map(static_cast<Eigen::Index>(z_grid.size()), field.size());
    for (std::size_t r = 0; r < z_grid.size(); ++r) {
        if (!std::isfinite(z_grid[r])) {
            throw UsageError("z grid contains a non-finite value");
        }
        map.row(static_cast<Eigen::Index>(r)) = propagate(field, basis, z_grid[r]).intensities().transpose();
    }
    return map;
}

std::vector<cplx> continuous_frft_gaussian(double width, double shift, double order,
                                           std::span<const double> x_grid) {
    if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(shift) || !std::isfinite(order)) {
        throw UsageError("continuous FrFT needs a positive width and finite shift and order");
    }
    const double w2 = width * width;
    std::vector<cplx> out;
    out.reserve(x_grid.size());

    const double alpha = std::remainder(order, 2.0 * std::numbers::pi);
    const double sa = std::sin(alpha);
    if (std::abs(sa) < 1e-12) {
        if (std::cos(alpha) < 0.0) {
            throw UsageError("continuous FrFT at an odd multiple of pi is the parity operator; evaluate f(-x) directly");
        }
        for (double x : x_grid) {
            out.emplace_back(std::exp(-(x - shift) * (x - shift) / (2.0 * w2)), 0.0);
        }
        return out;
    }

    // Kernel sqrt((1 + i cot a)/(2 pi)) exp(-i cot(a)(x^2+u^2)/2 + i x u / sin a);
    // the Gaussian integral is done in closed form.
    const double cot = std::cos(alpha) / sa;
    const double sign = sa > 0.0 ? 1.0 : -1.0;
    const cplx prefactor = std::exp(kI * (sign * std::numbers::pi / 4.0 - alpha / 2.0)) /
                           std::sqrt(std::abs(sa) * 2.0 * std::numbers::pi);
    const cplx a = 1.0 / (2.0 * w2) + 0.5 * kI * cot;
    const cplx root = std::sqrt(std::numbers::pi / a);
    for (double u : x_grid) {
        const cplx b = shift / w2 + kI * (u / sa);
        out.push_back(prefactor * root * std::exp(b * b / (4.0 * a) - shift * shift / (2.0 * w2) - 0.5 * kI * cot * u * u));
    }
    return out;
}

DisplacementCheck displacement_check(const LatticeSpec& spec, const SpectralBasis& basis,
                                     const InputProfileSpec& profile, double order) {
    InputProfileSpec flat = profile;
    flat.phase_ramp = 0.0;
    const Eigen::VectorXd ramped = propagate(make_input(spec, profile), basis, order).intensities();
    const Eigen::VectorXd reference = propagate(make_input(spec, flat), basis, order).intensities();
    const int n = spec.size();
    DisplacementCheck best{0, std::numeric_limits<double>::infinity()};
    for (int shift = -(n - 1); shift <= n - 1; ++shift) {
        double sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const int src = i - shift;
            const double moved = (src >= 0 && src < n) ? reference(src) : 0.0;
            sq += (ramped(i) - moved) * (ramped(i) - moved);
        }
        const double d = std::sqrt(sq);
        if (d < best.distance) {
            best = {shift, d};
        }
    }
    return best;
}

double centroid(const LatticeSpec& spec, const Eigen::VectorXd& intensity) {
    require_size(spec.size(), static_cast<int>(intensity.size()), "centroid");
    double total = 0.0;
    double first = 0.0;
    for (int i = 0; i < spec.size(); ++i) {
        total += intensity(i);
        first += intensity(i) * spec.label(i);
    }
    return first / total;
}

double variance(const LatticeSpec& spec, const Eigen::VectorXd& intensity) {
    const double mean = centroid(spec, intensity);
    double total = 0.0;
    double second = 0.0;
    for (int i = 0; i < spec.size(); ++i) {
        const double d = spec.label(i) - mean;
        total += intensity(i);
        second += intensity(i) * d * d;
    }
    return second / total;
}

} // namespace jxfrft
