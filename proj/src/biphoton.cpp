#include "jxfrft/biphoton.hpp"

#include "jxfrft/errors.hpp"
#include "jxfrft/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace jxfrft {

namespace {

struct SitePair {
    int m;
    int n;
};

SitePair resolve_sites(int size, const TwoPhotonInput& input) {
    const LatticeSpec spec(size);
    const SitePair sites{spec.index(input.m), spec.index(input.n)};
    if (sites.m == sites.n) {
        throw UsageError("two-photon input needs two distinct preparation sites");
    }
    return sites;
}

} // namespace

CorrelationMatrix correlation(const GreenMatrix& green, const TwoPhotonInput& input) {
    const int size = static_cast<int>(green.entries.rows());
    const auto [m, n] = resolve_sites(size, input);
    const auto& g = green.entries;
    CorrelationMatrix out{Eigen::MatrixXd(size, size)};
    for (int k = 0; k < size; ++k) {
        for (int l = k; l < size; ++l) {
            const cplx amplitude = input.kind == TwoPhotonKind::separable
                                       ? g(k, m) * g(l, n) + g(k, n) * g(l, m)
                                       : g(k, m) * g(l, m) + g(k, n) * g(l, n);
            out.gamma(k, l) = std::norm(amplitude);
            out.gamma(l, k) = out.gamma(k, l);
        }
    }
    return out;
}

CorrelationMatrix correlation(const SpectralBasis& basis, const TwoPhotonInput& input, double order) {
    return correlation(green_spectral(basis, order), input);
}

double correlation_outermost(const LatticeSpec& spec, double k, double l) {
    if (spec.size() % 2 != 0) {
        throw UsageError("the outermost-pair closed form needs half-integer j (even N)");
    }
    const int ik = spec.index(k);
    const int il = spec.index(l);
    const int two_j = spec.two_j();
    // k + l = ik + il - 2j; zero unless odd
    const int label_sum = ik + il - two_j;
    if (label_sum % 2 == 0) {
        return 0.0;
    }
    const long double pk = specfun::jacobi_halves({ik, static_cast<double>(two_j - ik), static_cast<double>(-ik)}, -0.5L, 0.5L);
    const long double pl = specfun::jacobi_halves({il, static_cast<double>(-il), static_cast<double>(two_j - il)}, -0.5L, 0.5L);
    // 4^{k+l+1} (j+k)!(j-k)!(j+l)!(j-l)! (P_k P_l / (N-1)!)^2
    const long double log_mag = (label_sum + 1) * std::log(4.0L) + specfun::log_factorial(ik) +
                                specfun::log_factorial(two_j - ik) + specfun::log_factorial(il) +
                                specfun::log_factorial(two_j - il) - 2.0L * specfun::log_factorial(two_j);
    return static_cast<double>(std::exp(log_mag) * (pk * pl) * (pk * pl));
}

OutermostCalibration calibrate_outermost(const LatticeSpec& spec, const SpectralBasis& basis) {
    if (basis.size() != spec.size()) {
        throw UsageError("calibrate_outermost: basis and lattice sizes differ");
    }
    const int size = spec.size();
    const auto& u = basis.vectors;
    const int top = size - 1; // column of beta = j
    Eigen::MatrixXd direct(size, size);
    Eigen::MatrixXd closed(size, size);
    for (int k = 0; k < size; ++k) {
        for (int l = 0; l < size; ++l) {
            const double a = u(k, top) * u(l, 0) + u(k, 0) * u(l, top);
            direct(k, l) = a * a;
            closed(k, l) = correlation_outermost(spec, spec.label(k), spec.label(l));
        }
    }
    OutermostCalibration cal;
    const double denom = closed.squaredNorm();
    cal.constant = denom > 0.0 ? direct.cwiseProduct(closed).sum() / denom : 1.0;
    cal.max_residual = (direct - cal.constant * closed).cwiseAbs().maxCoeff();
    return cal;
}

PhotonDensity photon_density(const GreenMatrix& green, const TwoPhotonInput& input) {
    const int size = static_cast<int>(green.entries.rows());
    const auto [m, n] = resolve_sites(size, input);
    PhotonDensity out{green.entries.col(m).cwiseAbs2() + green.entries.col(n).cwiseAbs2()};
    return out;
}

PhotonDensity photon_density(const SpectralBasis& basis, const TwoPhotonInput& input, double order) {
    return photon_density(green_spectral(basis, order), input);
}

TwoPhotonInput apply_beamsplitter(const TwoPhotonInput& input) {
    if (input.kind != TwoPhotonKind::separable) {
        throw UsageError("beam-splitter preparation expects a separable photon pair");
    }
    if (input.m == input.n) {
        throw UsageError("beam-splitter preparation needs two distinct input sites");
    }
    return {TwoPhotonKind::path_entangled, input.m, input.n};
}

Eigen::MatrixXcd coupler_matrix(const LatticeSpec& spec, double m, double n) {
    const int im = spec.index(m);
    const int in = spec.index(n);
    if (im == in) {
        throw UsageError("coupler needs two distinct sites");
    }
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(spec.size(), spec.size());
    b(im, im) = r;
    b(in, in) = r;
    b(im, in) = cplx(0.0, r);
    b(in, im) = cplx(0.0, r);
    return b;
}

SuppressionReport suppression_report(const CorrelationMatrix& gamma, ParityRule rule) {
    const int size = gamma.size();
    const int two_j = size - 1;
    SuppressionReport report;
    report.rule = rule;
    for (int k = 0; k < size; ++k) {
        for (int l = 0; l < size; ++l) {
            const bool even = ((k + l - two_j) % 2 + 2) % 2 == 0;
            const bool suppressed = (rule == ParityRule::even_suppressed) == even;
            const double v = std::abs(gamma.gamma(k, l));
            if (suppressed) {
                report.max_suppressed = std::max(report.max_suppressed, v);
            } else {
                report.max_allowed = std::max(report.max_allowed, v);
            }
        }
    }
    if (report.max_allowed > 0.0) {
        report.ratio = report.max_suppressed / report.max_allowed;
    } else {
        report.ratio = report.max_suppressed > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    report.pass = report.ratio < kSuppressionRatioTol;
    return report;
}

Eigen::MatrixXd rotate90(const Eigen::MatrixXd& gamma) {
    const Eigen::Index size = gamma.rows();
    Eigen::MatrixXd rot(size, size);
    for (Eigen::Index k = 0; k < size; ++k) {
        for (Eigen::Index l = 0; l < size; ++l) {
            rot(k, l) = gamma(l, size - 1 - k);
        }
    }
    return rot;
}

RotationReport rotation_comparison(const CorrelationMatrix& separable, const CorrelationMatrix& entangled) {
    if (separable.gamma.rows() != entangled.gamma.rows() || separable.gamma.cols() != entangled.gamma.cols() ||
        separable.gamma.rows() != separable.gamma.cols()) {
        throw UsageError("rotation comparison needs two square maps of the same size");
    }
    RotationReport report;
    report.distance = (entangled.gamma - rotate90(separable.gamma)).norm();
    report.pass = report.distance < kRotationTol;
    return report;
}

std::string to_string(TwoPhotonKind kind) {
    return kind == TwoPhotonKind::separable ? "separable" : "path_entangled";
}

std::string to_string(ParityRule rule) {
    return rule == ParityRule::odd_suppressed ? "odd_suppressed" : "even_suppressed";
}

} // namespace jxfrft
