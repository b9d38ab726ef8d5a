#pragma once

#include <random>

#include "gaugeweave/grid.hpp"
#include "gaugeweave/linalg.hpp"

namespace gaugeweave {

namespace stencil {

// Shared one-sided second-order coefficients. The connection stencils in
// berry.hpp must use these exact weights so gauge shifts cancel against
// grad_scalar to rounding, not just to O(h^2).
inline constexpr double fwd0 = -3.0, fwd1 = 4.0, fwd2 = -1.0;

}  // namespace stencil

/// Second-order gradient of a sampled scalar field: central differences in
/// the interior, one-sided at open edges, wrap-around on periodic dimensions.
inline VectorField grad_scalar(const ScalarField& f) {
    const ParameterGrid& g = f.grid;
    VectorField out(g);
    for (int d = 0; d < g.dims(); ++d) {
        if (g.shape[d] < 3)
            throw GridTooCoarse("grad_scalar: need >= 3 points along dimension " +
                                std::to_string(d));
        const double inv2h = 1.0 / (2.0 * g.spacing[d]);
        for (std::size_t p = 0; p < g.size(); ++p) {
            auto up = g.neighbor(p, d, +1);
            auto dn = g.neighbor(p, d, -1);
            cplx v;
            if (up && dn) {
                v = (f.values[*up] - f.values[*dn]) * inv2h;
            } else if (up) {  // open left edge
                v = (stencil::fwd0 * f.values[p] + stencil::fwd1 * f.values[*up] +
                     stencil::fwd2 * f.values[*g.neighbor(p, d, +2)]) *
                    inv2h;
            } else {  // open right edge
                v = -(stencil::fwd0 * f.values[p] + stencil::fwd1 * f.values[*dn] +
                      stencil::fwd2 * f.values[*g.neighbor(p, d, -2)]) *
                    inv2h;
            }
            out.components[d][p] = v;
        }
    }
    return out;
}

/// Derivative of one vector-field component along one dimension (same
/// stencils as grad_scalar).
inline std::vector<cplx> partial(const VectorField& f, int component, int d) {
    ScalarField s(f.grid);
    s.values = f.components[component];
    VectorField grad = grad_scalar(s);
    return std::move(grad.components[d]);
}

/// One independent plane of a curl.
struct PlaneCurl {
    int dim_a = 0, dim_b = 1;  // plane (a, b), a < b
    ScalarField values;        // d_a F_b - d_b F_a
};

/// Curl per independent component pair. N=2 gives the single scalar curl.
inline std::vector<PlaneCurl> curl_planes(const VectorField& f) {
    const int nd = f.grid.dims();
    if (nd < 2) throw GridTooCoarse("curl: need at least 2 dimensions");
    std::vector<PlaneCurl> out;
    for (int a = 0; a < nd; ++a) {
        for (int b = a + 1; b < nd; ++b) {
            PlaneCurl pc;
            pc.dim_a = a;
            pc.dim_b = b;
            pc.values = ScalarField(f.grid);
            std::vector<cplx> dafb = partial(f, b, a);
            std::vector<cplx> dbfa = partial(f, a, b);
            for (std::size_t p = 0; p < f.grid.size(); ++p)
                pc.values.values[p] = dafb[p] - dbfa[p];
            out.push_back(std::move(pc));
        }
    }
    return out;
}

inline ScalarField curl_2d(const VectorField& f) {
    if (f.grid.dims() != 2) throw DimensionMismatch("curl_2d: grid must be 2-dimensional");
    return std::move(curl_planes(f).front().values);
}

/// Trapezoidal line integral of a (complex) vector field along a polyline,
/// with multilinear interpolation between grid points.
inline cplx line_integral(const VectorField& f, const PathContour& path) {
    const int nd = f.grid.dims();
    cplx acc{};
    for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
        const auto& a = path.points[k];
        const auto& b = path.points[k + 1];
        if (static_cast<int>(a.size()) != nd || static_cast<int>(b.size()) != nd)
            throw DimensionMismatch("line_integral: path/grid dimension mismatch");
        for (int d = 0; d < nd; ++d) {
            const double dr = b[d] - a[d];
            if (dr == 0.0) continue;
            acc += 0.5 * (sample(f, d, a) + sample(f, d, b)) * dr;
        }
    }
    return acc;
}

/// Translation by `steps` grid sites along dimension d, as a permutation
/// matrix acting on functions sampled over the grid:
/// (T psi)(R) = psi(R - steps*h_d e_d). Exactly unitary; periodic only.
inline Matrix translation_matrix(const ParameterGrid& g, int d, int steps) {
    if (g.boundary.at(d) != Boundary::periodic)
        throw OpenBoundaryUnsupported("translation_matrix: dimension must be periodic");
    const std::size_t n = g.size();
    Matrix t = Matrix::Zero(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t src = *g.neighbor(p, d, -steps);
        t(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(src)) = 1.0;
    }
    return t;
}

/// Central-difference momentum operator -i*hbar d/dR_d on a periodic grid.
/// Hermitian by construction (exact antisymmetric stencil times -i).
inline Matrix momentum_matrix(const ParameterGrid& g, int d, double hbar = 1.0) {
    if (g.boundary.at(d) != Boundary::periodic)
        throw OpenBoundaryUnsupported("momentum_matrix: dimension must be periodic");
    if (g.shape[d] < 3) throw GridTooCoarse("momentum_matrix: need >= 3 points");
    const std::size_t n = g.size();
    const double c = hbar / (2.0 * g.spacing[d]);
    Matrix p = Matrix::Zero(n, n);
    for (std::size_t q = 0; q < n; ++q) {
        const auto row = static_cast<Eigen::Index>(q);
        p(row, static_cast<Eigen::Index>(*g.neighbor(q, d, +1))) = cplx(0.0, -c);
        p(row, static_cast<Eigen::Index>(*g.neighbor(q, d, -1))) = cplx(0.0, +c);
    }
    return p;
}

/// Exactness report for the translation/momentum pair on a periodic grid.
struct HermiticityReport {
    std::vector<double> max_asymmetry;   // per dimension, max |P - P^dagger|
    std::vector<double> unitary_defect;  // per dimension, max |T^dagger T - I|
    double max_pairing_defect = 0.0;     // max |<f|Pg> - <Pf|g>| over random pairs

    double worst_asymmetry() const {
        double m = 0.0;
        for (double v : max_asymmetry) m = std::max(m, v);
        return m;
    }
    double worst_unitary_defect() const {
        double m = 0.0;
        for (double v : unitary_defect) m = std::max(m, v);
        return m;
    }
};

inline HermiticityReport check_momentum_hermitian(const ParameterGrid& g,
                                                  int random_pairs = 100,
                                                  std::uint64_t seed = 2026) {
    HermiticityReport rep;
    const std::size_t n = g.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (int d = 0; d < g.dims(); ++d) {
        if (g.boundary[d] != Boundary::periodic)
            throw OpenBoundaryUnsupported("check_momentum_hermitian: periodic grid required");
        Matrix p = momentum_matrix(g, d);
        Matrix t = translation_matrix(g, d, 1);
        rep.max_asymmetry.push_back(max_abs(p - Matrix(p.adjoint())));
        rep.unitary_defect.push_back(
            max_abs(Matrix(t.adjoint() * t) - Matrix::Identity(n, n)));
        for (int k = 0; k < random_pairs; ++k) {
            Vector f(n), h(n);
            for (std::size_t j = 0; j < n; ++j) {
                f[j] = cplx(gauss(rng), gauss(rng));
                h[j] = cplx(gauss(rng), gauss(rng));
            }
            f.normalize();
            h.normalize();
            const cplx lhs = inner(f, Vector(p * h));
            const cplx rhs = inner(Vector(p * f), h);
            rep.max_pairing_defect = std::max(rep.max_pairing_defect, std::abs(lhs - rhs));
        }
    }
    return rep;
}

}  // namespace gaugeweave
