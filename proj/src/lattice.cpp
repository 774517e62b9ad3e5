#include "jxfrft/lattice.hpp"

#include "jxfrft/errors.hpp"
#include "jxfrft/specfun.hpp"

#include <cmath>
#include <sstream>

namespace jxfrft {

LatticeSpec::LatticeSpec(int sites, double kappa0) : sites_(sites), kappa0_(kappa0) {
    if (sites < 2) {
        throw UsageError("lattice needs N >= 2 sites, got " + std::to_string(sites));
    }
    if (!(kappa0 > 0.0) || !std::isfinite(kappa0)) {
        throw UsageError("kappa0 must be a positive finite coupling scale");
    }
}

bool LatticeSpec::contains(double label) const {
    if (!std::isfinite(label)) {
        return false;
    }
    const double offset = label + j();
    const double rounded = std::round(offset);
    return std::abs(offset - rounded) < 1e-9 && rounded >= 0.0 && rounded <= two_j();
}

int LatticeSpec::index(double label) const {
    if (!contains(label)) {
        std::ostringstream msg;
        msg << "site label " << label << " is not on the lattice (labels run from " << -j() << " to " << j()
            << " in unit steps)";
        throw UsageError(msg.str());
    }
    return static_cast<int>(std::lround(label + j()));
}

Eigen::MatrixXd JxMatrix::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i + 1 < dim; ++i) {
        m(i, i + 1) = offdiag[i];
        m(i + 1, i) = offdiag[i];
    }
    return m;
}

JxMatrix build_jx(const LatticeSpec& spec) {
    JxMatrix jx;
    jx.dim = spec.size();
    jx.offdiag.resize(spec.size() - 1);
    // <m+1|Jx|m> = sqrt(j(j+1) - m(m+1)) / 2 = sqrt((j-m)(j+m+1)) / 2, m = i - j.
    // The factored integer form keeps c_i == c_{N-2-i} bit-exact.
    const int two_j = spec.two_j();
    for (int i = 0; i + 1 < spec.size(); ++i) {
        const double product = static_cast<double>(two_j - i) * static_cast<double>(i + 1);
        jx.offdiag[i] = 0.5 * std::sqrt(product);
    }
    return jx;
}

std::vector<double> exact_eigenvalues(const LatticeSpec& spec) {
    std::vector<double> values(spec.size());
    for (int i = 0; i < spec.size(); ++i) {
        values[i] = spec.label(i);
    }
    return values;
}

namespace {

Eigen::VectorXd raw_analytic_eigenvector(const LatticeSpec& spec, double m) {
    const int mi = spec.index(m);
    const int two_j = spec.two_j();
    const long double log_norm_m = specfun::log_factorial(mi) + specfun::log_factorial(two_j - mi);
    Eigen::VectorXd u(spec.size());
    for (int i = 0; i < spec.size(); ++i) {
        const double n = spec.label(i);
        // 2^n sqrt((j+n)!(j-n)! / ((j+m)!(j-m)!)) P_{j+n}^{(m-n, -m-n)}(0)
        const long double log_ratio =
            0.5L * (specfun::log_factorial(i) + specfun::log_factorial(two_j - i) - log_norm_m);
        const long double prefactor = std::exp(log_ratio + static_cast<long double>(n) * std::log(2.0L));
        const specfun::JacobiParams params{i, m - n, -m - n};
        u(i) = static_cast<double>(prefactor * specfun::jacobi_halves(params, -0.5L, 0.5L));
    }
    return u;
}

} // namespace

double analytic_eigenvector_raw_norm(const LatticeSpec& spec, double m) {
    return raw_analytic_eigenvector(spec, m).norm();
}

Eigen::VectorXd analytic_eigenvector(const LatticeSpec& spec, double m) {
    Eigen::VectorXd u = raw_analytic_eigenvector(spec, m);
    u.normalize();
    if (u(0) < 0.0) {
        u = -u;
    }
    return u;
}

SpectralBasis analytic_basis(const LatticeSpec& spec) {
    SpectralBasis basis;
    basis.eigenvalues.resize(spec.size());
    basis.vectors.resize(spec.size(), spec.size());
    for (int c = 0; c < spec.size(); ++c) {
        basis.eigenvalues(c) = spec.label(c);
        basis.vectors.col(c) = analytic_eigenvector(spec, spec.label(c));
    }
    return basis;
}

void apply_sign_convention(Eigen::MatrixXd& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        if (vectors(0, c) < 0.0) {
            vectors.col(c) *= -1.0;
        }
    }
}

SpectralBasis numeric_basis(const JxMatrix& jx) {
    if (jx.dim < 1 || static_cast<int>(jx.offdiag.size()) != jx.dim - 1) {
        throw UsageError("malformed Jx matrix: dim and coupling count disagree");
    }
    const Eigen::VectorXd diag = Eigen::VectorXd::Zero(jx.dim);
    const Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(jx.offdiag.data(), jx.dim - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "tridiagonal eigensolver did not converge (N=" << jx.dim << ", couplings in [" << sub.minCoeff()
            << ", " << sub.maxCoeff() << "], spectral radius bound " << 2.0 * sub.maxCoeff() << ")";
        throw NumericError(msg.str());
    }

    SpectralBasis basis{solver.eigenvalues(), solver.eigenvectors()};
    apply_sign_convention(basis.vectors);

    const Eigen::MatrixXd dense = jx.dense();
    const double tol = 1e-10 * std::max(1.0, 0.5 * (jx.dim - 1) / 16.0);
    for (int c = 0; c < basis.size(); ++c) {
        const double residual = (dense * basis.vectors.col(c) - basis.eigenvalues(c) * basis.vectors.col(c)).norm();
        if (residual > tol) {
            std::ostringstream msg;
            msg << "eigenpair " << c << " residual " << residual << " exceeds " << tol << " (N=" << jx.dim << ")";
            throw NumericError(msg.str());
        }
    }
    return basis;
}

double orthonormality_defect(const SpectralBasis& basis) {
    const Eigen::MatrixXd gram = basis.vectors.transpose() * basis.vectors;
    return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

} // namespace jxfrft
