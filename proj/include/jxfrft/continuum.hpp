#pragma once

#include "jxfrft/lattice.hpp"

#include <span>
#include <vector>

namespace jxfrft {

/// Compares a Jx eigenvector with a sampled oscillator mode on x_m = m / gamma^{1/4}.
/// Oscillator level n pairs with the eigenvalue beta = j - n.
struct ContinuumProbe {
    int sites = 0;
    int level = 0;

    double scale() const; ///< gamma^{1/4}
    std::vector<double> grid() const;
};

/// |<v, h>| with v the unit eigenvector and h the renormalized samples of psi_level.
double continuum_overlap(const ContinuumProbe& probe);

/// Overlap against an explicit basis (reused across levels).
double continuum_overlap(const ContinuumProbe& probe, const SpectralBasis& basis);

struct ConvergenceEntry {
    int sites = 0;
    int level = 0;
    double overlap = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceEntry> entries; ///< ordered by N, then level

    double at(int sites, int level) const;
    /// Each level's overlap is non-decreasing along increasing N within `slack`.
    bool monotone(double slack = 1e-6) const;
};

ConvergenceTable convergence_study(std::span<const int> levels, std::span<const int> sizes);

/// || G(Z) u^{(m)} - exp(-i beta_m Z) u^{(m)} ||
double eigenrelation_residual(const SpectralBasis& basis, const LatticeSpec& spec, double m, double order);

} // namespace jxfrft
