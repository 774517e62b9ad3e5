#pragma once

#include "jxfrft/lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace jxfrft {

using cplx = std::complex<double>;

/// Complex mode amplitudes E_m over lattice sites, stored by index i = m + j.
struct Field {
    Eigen::VectorXcd amplitudes;

    int size() const { return static_cast<int>(amplitudes.size()); }
    double norm() const { return amplitudes.norm(); }
    Eigen::VectorXd intensities() const { return amplitudes.cwiseAbs2(); }
};

/// Transfer matrix at transform order Z: column q is the response to a unit
/// excitation at site q.
struct GreenMatrix {
    double order = 0.0;
    Eigen::MatrixXcd entries;

    /// max |G^dagger G - I|
    double unitarity_defect() const;
};

/// (-i)^k for integer k, exact.
cplx minus_i_power(int k);

/// G(Z) = sum_r u^{(r)} u^{(r)T} exp(-i beta_r Z)
GreenMatrix green_spectral(const SpectralBasis& basis, double order);

/// Closed-form entry G_{p,q}(Z) (sites given as labels). Near the points where
/// the sin/cos powers are negative and vanish, the powers are folded
/// into the Jacobi sum, which is the analytic limit.
cplx green_closed(const LatticeSpec& spec, double p, double q, double order);

/// Full closed-form matrix.
GreenMatrix green_closed_matrix(const LatticeSpec& spec, double order);

/// Tolerance on |sin(Z/2)| and |cos(Z/2)| below which green_closed switches to
/// the folded (limit) evaluation.
inline constexpr double kClosedFormSingularTol = 1e-6;

/// (-i)^{q-p} u_p^{(q)}: the Fourier-plane Green function read off the basis.
cplx green_quarter(const SpectralBasis& basis, const LatticeSpec& spec, double p, double q);

Field propagate(const Field& field, const SpectralBasis& basis, double order);

/// Discrete fractional Fourier transform of the given order (= propagate).
Field dfrft(const Field& field, const SpectralBasis& basis, double order);

enum class ProfileKind { gaussian, tophat, single_site, custom };

struct InputProfileSpec {
    ProfileKind kind = ProfileKind::gaussian;
    /// Site label of the profile center; may be fractional.
    double center = 0.0;
    /// FWHM of the intensity in sites (gaussian) or number of sites (tophat).
    double width = 5.0;
    /// Linear phase in radians per site, applied as exp(i ramp m).
    double phase_ramp = 0.0;
    std::vector<cplx> custom;
};

/// Normalized input field. Throws UsageError when the profile does not fit.
Field make_input(const LatticeSpec& spec, const InputProfileSpec& profile);

/// Rows are grid points, columns sites: |E_i(Z)|^2.
Eigen::MatrixXd zscan(const Field& field, const SpectralBasis& basis, std::span<const double> z_grid);

/// Continuous FrFT (eigenvalue exp(i n Z) on the n-th Hermite-Gauss mode) of
/// exp(-(x - shift)^2 / (2 width^2)), sampled on x_grid. Order a multiple of
/// 2 pi returns the input; an odd multiple of pi throws UsageError.
std::vector<cplx> continuous_frft_gaussian(double width, double shift, double order,
                                           std::span<const double> x_grid);

/// How far a (phase-ramped) profile's output is from a pure lattice shift of
/// the output of the same profile without the ramp.
struct DisplacementCheck {
    int best_shift = 0;    ///< integer site shift minimizing the distance
    double distance = 0.0; ///< L2 distance between the intensity profiles at that shift
};

DisplacementCheck displacement_check(const LatticeSpec& spec, const SpectralBasis& basis,
                                     const InputProfileSpec& profile, double order);

/// Intensity-weighted mean site label.
double centroid(const LatticeSpec& spec, const Eigen::VectorXd& intensity);
/// Intensity-weighted variance in site units.
double variance(const LatticeSpec& spec, const Eigen::VectorXd& intensity);

} // namespace jxfrft
