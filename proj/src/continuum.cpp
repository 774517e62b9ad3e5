#include "jxfrft/continuum.hpp"

#include "jxfrft/errors.hpp"
#include "jxfrft/specfun.hpp"
#include "jxfrft/transform.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace jxfrft {

double ContinuumProbe::scale() const {
    const double gamma = 0.25 * (static_cast<double>(sites) * sites - 1.0);
    return std::pow(gamma, 0.25);
}

std::vector<double> ContinuumProbe::grid() const {
    const double j = 0.5 * (sites - 1);
    const double s = scale();
    std::vector<double> x(sites);
    for (int i = 0; i < sites; ++i) {
        x[i] = (i - j) / s;
    }
    return x;
}

namespace {

void validate(const ContinuumProbe& probe) {
    if (probe.sites < 2) {
        throw UsageError("continuum probe needs N >= 2");
    }
    if (probe.level < 0 || probe.level >= probe.sites) {
        throw UsageError("oscillator level must satisfy 0 <= level < N");
    }
}

} // namespace

double continuum_overlap(const ContinuumProbe& probe, const SpectralBasis& basis) {
    validate(probe);
    if (basis.size() != probe.sites) {
        throw UsageError("continuum_overlap: basis size differs from probe N");
    }
    // level n <-> beta = j - n, i.e. the n-th column from the top
    const Eigen::VectorXd v = basis.vectors.col(probe.sites - 1 - probe.level);
    const auto x = probe.grid();
    Eigen::VectorXd h(probe.sites);
    for (int i = 0; i < probe.sites; ++i) {
        h(i) = specfun::hermite_gauss(probe.level, x[i]);
    }
    const double hn = h.norm();
    if (!(hn > 0.0)) {
        throw NumericError("sampled Hermite-Gauss mode vanished on the grid");
    }
    return std::abs(v.dot(h)) / hn;
}

double continuum_overlap(const ContinuumProbe& probe) {
    validate(probe);
    return continuum_overlap(probe, numeric_basis(build_jx(LatticeSpec(probe.sites))));
}

double ConvergenceTable::at(int sites, int level) const {
    for (const auto& e : entries) {
        if (e.sites == sites && e.level == level) {
            return e.overlap;
        }
    }
    throw UsageError("no convergence entry for N=" + std::to_string(sites) + ", level=" + std::to_string(level));
}

bool ConvergenceTable::monotone(double slack) const {
    std::map<int, std::vector<std::pair<int, double>>> by_level;
    for (const auto& e : entries) {
        by_level[e.level].emplace_back(e.sites, e.overlap);
    }
    for (auto& [level, column] : by_level) {
        std::sort(column.begin(), column.end());
        for (std::size_t i = 1; i < column.size(); ++i) {
            if (column[i].second < column[i - 1].second - slack) {
                return false;
            }
        }
    }
    return true;
}

ConvergenceTable convergence_study(std::span<const int> levels, std::span<const int> sizes) {
    if (levels.empty() || sizes.empty()) {
        throw UsageError("convergence study needs at least one level and one lattice size");
    }
    const int min_size = *std::min_element(sizes.begin(), sizes.end());
    for (int level : levels) {
        if (level < 0 || level >= min_size) {
            throw UsageError("every level must be below the smallest N (" + std::to_string(min_size) + ")");
        }
    }
    std::vector<int> ordered(sizes.begin(), sizes.end());
    std::sort(ordered.begin(), ordered.end());

    ConvergenceTable table;
    for (int n : ordered) {
        const SpectralBasis basis = numeric_basis(build_jx(LatticeSpec(n)));
        for (int level : levels) {
            table.entries.push_back({n, level, continuum_overlap({n, level}, basis)});
        }
    }
    return table;
}

double eigenrelation_residual(const SpectralBasis& basis, const LatticeSpec& spec, double m, double order) {
    if (basis.size() != spec.size()) {
        throw UsageError("eigenrelation_residual: basis and lattice sizes differ");
    }
    const int c = spec.index(m);
    const Field mode{basis.vectors.col(c).cast<cplx>()};
    const Field image = propagate(mode, basis, order);
    const cplx phase = std::exp(cplx(0.0, -basis.eigenvalues(c) * order));
    return (image.amplitudes - phase * mode.amplitudes).norm();
}

} // namespace jxfrft
