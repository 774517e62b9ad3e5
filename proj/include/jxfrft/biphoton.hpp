#pragma once

#include "jxfrft/lattice.hpp"
#include "jxfrft/transform.hpp"

#include <Eigen/Dense>

#include <string>

namespace jxfrft {

enum class TwoPhotonKind { separable, path_entangled };

/// Two photons prepared at sites m != n: either a_m^dag a_n^dag |0>, or the
/// path-entangled (1/2)[(a_m^dag)^2 + (a_n^dag)^2]|0>.
struct TwoPhotonInput {
    TwoPhotonKind kind = TwoPhotonKind::separable;
    double m = 0.0;
    double n = 0.0;
};

/// Gamma_{k,l} = <a_k^dag a_l^dag a_l a_k>, indexed by site index.
struct CorrelationMatrix {
    Eigen::MatrixXd gamma;

    double total() const { return gamma.sum(); }
    int size() const { return static_cast<int>(gamma.rows()); }
};

struct PhotonDensity {
    Eigen::VectorXd intensities;

    double total() const { return intensities.sum(); }
};

CorrelationMatrix correlation(const SpectralBasis& basis, const TwoPhotonInput& input, double order);

/// Same, from an already built transfer matrix.
CorrelationMatrix correlation(const GreenMatrix& green, const TwoPhotonInput& input);

/// Closed-form Gamma_{k,l} for the outermost separable pair a_j^dag a_{-j}^dag at
/// Z = pi/2. Zero for (k+l) even. Defined for half-integer j (even N) only.
double correlation_outermost(const LatticeSpec& spec, double k, double l);

/// Fit of the closed form to the eigenvector expression: the least-squares
/// constant c with direct ~= c * closed over all entries.
struct OutermostCalibration {
    double constant = 1.0;
    double max_residual = 0.0; ///< max |direct - c closed| after calibration
};

OutermostCalibration calibrate_outermost(const LatticeSpec& spec, const SpectralBasis& basis);

PhotonDensity photon_density(const SpectralBasis& basis, const TwoPhotonInput& input, double order);
PhotonDensity photon_density(const GreenMatrix& green, const TwoPhotonInput& input);

/// 50:50 coupler acting on a separable pair: Hong-Ou-Mandel bunching yields the
/// path-entangled state on the same sites.
TwoPhotonInput apply_beamsplitter(const TwoPhotonInput& input);

/// N x N unitary of a 50:50 directional coupler between sites m and n
/// ((1, i; i, 1)/sqrt 2 on that pair, identity elsewhere).
Eigen::MatrixXcd coupler_matrix(const LatticeSpec& spec, double m, double n);

enum class ParityRule { odd_suppressed, even_suppressed };

struct SuppressionReport {
    ParityRule rule = ParityRule::even_suppressed;
    double max_suppressed = 0.0;
    double max_allowed = 0.0;
    double ratio = 0.0;
    bool pass = false;
};

inline constexpr double kSuppressionRatioTol = 1e-12;

/// Parity of (k+l) is taken on site labels (k, l = -j..j).
SuppressionReport suppression_report(const CorrelationMatrix& gamma, ParityRule rule);

struct RotationReport {
    double distance = 0.0; ///< Frobenius norm of ent - rot90(sep)
    bool pass = false;
};

inline constexpr double kRotationTol = 1e-10;

/// rot[k][l] = sep[l][-k] in site labels: the separable map turned by 90 degrees.
Eigen::MatrixXd rotate90(const Eigen::MatrixXd& gamma);

RotationReport rotation_comparison(const CorrelationMatrix& separable, const CorrelationMatrix& entangled);

std::string to_string(TwoPhotonKind kind);
std::string to_string(ParityRule rule);

} // namespace jxfrft
