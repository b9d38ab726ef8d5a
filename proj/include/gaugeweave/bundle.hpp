#pragma once

#include <functional>
#include <optional>

#include "gaugeweave/calculus.hpp"

namespace gaugeweave {

/// Maps a parameter point R to the Hamiltonian H(R).
using HamiltonianBuilder = std::function<Matrix(const std::vector<double>&)>;

/// Eigensystem of H(R) sampled over a grid, with the deterministic reference
/// gauge and a continuity stitch applied pointwise. Frozen after build; all
/// queries are const.
struct EigenBundle {
    ParameterGrid grid;
    int hilbert_dim = 0;
    int band_count = 0;
    std::vector<Matrix> states;             // per point: hilbert_dim x band_count
    std::vector<Eigen::VectorXd> energies;  // per point: band_count
    HamiltonianBuilder builder;
    std::vector<std::string> warnings;      // continuity diagnostics
    double degeneracy_rel_tol = 1e-8;

    Vector band(std::size_t p, int n) const { return states[p].col(n); }
    double energy(std::size_t p, int n) const { return energies[p][n]; }

    void require_band(int n) const {
        if (n < 0 || n >= band_count)
            throw Error("band index " + std::to_string(n) + " out of range");
    }
};

struct BundleOptions {
    /// Bands whose gaps are checked during the build. Empty = all bands.
    /// Dense well Hamiltonians have physically near-degenerate high levels,
    /// so callers interested in low bands restrict the check.
    std::vector<int> checked_bands;
    double degeneracy_rel_tol = 1e-8;
    bool stitch_continuity = true;
};

/// Sample H(R) over the grid, eigensolve pointwise, apply the reference
/// gauge, and stitch signs along a raster walk. The stitch flips a vector
/// when its overlap with the already-visited neighbor has negative real
/// part; overlaps with modulus < 0.5 are recorded as continuity warnings.
inline EigenBundle build_bundle(HamiltonianBuilder builder, const ParameterGrid& grid,
                                const BundleOptions& opt = {}) {
    EigenBundle b;
    b.grid = grid;
    b.builder = std::move(builder);
    b.degeneracy_rel_tol = opt.degeneracy_rel_tol;

    const std::size_t n = grid.size();
    b.states.resize(n);
    b.energies.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        const Matrix h = b.builder(grid.coords(p));
        EigenDecomposition eig = eig_hermitian(h);
        if (p == 0) {
            b.hilbert_dim = eig.dim();
            b.band_count = eig.dim();
        } else if (eig.dim() != b.hilbert_dim) {
            throw DimensionMismatch("build_bundle: builder dimension changed across grid");
        }
        const double scale = std::max(1.0, max_abs(h));
        std::vector<int> to_check = opt.checked_bands;
        if (to_check.empty())
            for (int k = 0; k < eig.dim(); ++k) to_check.push_back(k);
        for (int k : to_check) {
            if (band_gap(eig.eigenvalues, k) < opt.degeneracy_rel_tol * scale)
                throw DegenerateBand("band " + std::to_string(k) + " degenerate at grid point " +
                                     std::to_string(p));
        }
        Matrix vecs(b.hilbert_dim, b.band_count);
        for (int k = 0; k < b.band_count; ++k)
            vecs.col(k) = fix_reference_gauge(eig.eigenvectors.col(k));
        b.states[p] = std::move(vecs);
        b.energies[p] = std::move(eig.eigenvalues);
    }

    if (opt.stitch_continuity && n > 1) {
        for (std::size_t p = 1; p < n; ++p) {
            // predecessor: decrement the last dimension with nonzero index
            std::vector<int> idx = grid.multi(p);
            int d = grid.dims() - 1;
            while (d >= 0 && idx[d] == 0) --d;
            if (d < 0) continue;
            idx[d] -= 1;
            const std::size_t q = grid.flat(idx);
            for (int k = 0; k < b.band_count; ++k) {
                const cplx ov = inner(b.states[q].col(k), b.states[p].col(k));
                if (std::abs(ov) < 0.5)
                    b.warnings.push_back("band " + std::to_string(k) +
                                         ": low continuity overlap |" +
                                         std::to_string(std::abs(ov)) + "| at point " +
                                         std::to_string(p));
                if (ov.real() < 0.0) b.states[p].col(k) *= -1.0;
            }
        }
    }
    return b;
}

/// Real phase fields zeta_m(R), one per band, plus an optional field for the
/// post-selection bra. Missing entries mean zeta = 0.
struct GaugeFunction {
    std::vector<std::optional<ScalarField>> zeta_band;  // size band_count (or shorter)
    std::optional<ScalarField> zeta_phi;

    static GaugeFunction single_band(int band, ScalarField zeta, int band_count) {
        GaugeFunction g;
        g.zeta_band.resize(band_count);
        g.zeta_band[band] = std::move(zeta);
        return g;
    }

    double zeta_at(int band, std::size_t p) const {
        if (band >= static_cast<int>(zeta_band.size()) || !zeta_band[band]) return 0.0;
        return zeta_band[band]->values[p].real();
    }
};

/// Pointwise phase rotation |u_m> -> exp(i zeta_m(R)) |u_m>. Energies,
/// norms, and orthogonality are untouched; zeta = 0 returns the bundle
/// unchanged bitwise.
inline EigenBundle apply_gauge(const EigenBundle& bundle, const GaugeFunction& g) {
    EigenBundle out = bundle;
    for (int k = 0; k < bundle.band_count; ++k) {
        if (k >= static_cast<int>(g.zeta_band.size()) || !g.zeta_band[k]) continue;
        const ScalarField& zeta = *g.zeta_band[k];
        if (zeta.values.size() != bundle.grid.size())
            throw DimensionMismatch("apply_gauge: zeta field size mismatch");
        for (std::size_t p = 0; p < bundle.grid.size(); ++p) {
            const double z = zeta.values[p].real();
            if (z != 0.0) out.states[p].col(k) *= std::exp(iu * z);
        }
    }
    return out;
}

}  // namespace gaugeweave
