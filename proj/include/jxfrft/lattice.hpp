#pragma once

#include <Eigen/Dense>

#include <vector>

namespace jxfrft {

/// A Jx lattice of N sites. Site labels run m = -j..j with j = (N-1)/2;
/// arrays are indexed by i = m + j.
class LatticeSpec {
public:
    explicit LatticeSpec(int sites, double kappa0 = 1.0);

    int size() const { return sites_; }
    int two_j() const { return sites_ - 1; }
    double j() const { return 0.5 * (sites_ - 1); }
    /// gamma = j(j+1) = (N^2 - 1)/4
    double gamma() const { return 0.25 * (static_cast<double>(sites_) * sites_ - 1.0); }
    double kappa0() const { return kappa0_; }

    double label(int index) const { return index - j(); }
    /// Array index for a site label; throws UsageError if the label is not a lattice site.
    int index(double label) const;
    bool contains(double label) const;

private:
    int sites_;
    double kappa0_;
};

/// Symmetric tridiagonal Jx with zero diagonal, couplings in units of kappa0.
struct JxMatrix {
    int dim = 0;
    std::vector<double> offdiag;

    Eigen::MatrixXd dense() const;
};

/// Eigenvalues ascending, column c of `vectors` belongs to eigenvalues[c].
/// Columns carry the sign convention "component at site -j is positive".
struct SpectralBasis {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd vectors;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

JxMatrix build_jx(const LatticeSpec& spec);

/// {-j, -j+1, ..., j}
std::vector<double> exact_eigenvalues(const LatticeSpec& spec);

/// Closed-form eigenvector u^{(m)} (Jacobi polynomials at 0), unit norm.
Eigen::VectorXd analytic_eigenvector(const LatticeSpec& spec, double m);

/// Norm of the closed-form vector before normalization; 1 when its prefactor
/// constant is exact.
double analytic_eigenvector_raw_norm(const LatticeSpec& spec, double m);

/// All closed-form eigenvectors as columns, ordered like numeric_basis.
SpectralBasis analytic_basis(const LatticeSpec& spec);

/// Numerical eigendecomposition of the tridiagonal Jx. Throws NumericError if
/// the solver does not converge or a residual exceeds 1e-10.
SpectralBasis numeric_basis(const JxMatrix& jx);

/// Flip each column so its first component is positive.
void apply_sign_convention(Eigen::MatrixXd& vectors);

/// max |U^T U - I|
double orthonormality_defect(const SpectralBasis& basis);

} // namespace jxfrft
