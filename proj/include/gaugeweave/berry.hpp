#pragma once

#include "gaugeweave/bundle.hpp"

namespace gaugeweave {

enum class FieldKind { full, self, mutual, mutual_component };

/// Connection-like complex vector field over the bundle grid. For
/// kind == full the values are real (imaginary parts identically zero by
/// construction). `mask` flags points excluded by a post-selection node
/// (empty means nothing is masked). For mutual_component, `component_band`
/// identifies the projected band m.
struct ConnectionField {
    VectorField field;
    int band = 0;
    FieldKind kind = FieldKind::full;
    int component_band = -1;
    std::vector<std::uint8_t> mask;

    bool masked(std::size_t p) const { return !mask.empty() && mask[p] != 0; }
};

/// Curvature field: one scalar per independent plane. `cell_valid` marks
/// plaquette cells that exist (open boundaries lose the last row/column).
struct CurvatureField {
    std::vector<PlaneCurl> planes;
    int band = 0;
    FieldKind kind = FieldKind::full;
    int component_band = -1;
    std::vector<std::uint8_t> mask;
    std::vector<std::uint8_t> cell_valid;

    bool masked(std::size_t p) const { return !mask.empty() && mask[p] != 0; }
};

namespace detail {

/// arg<u_n(p)|u_n(q)> — the discrete connection phase between two points.
inline double link_phase(const EigenBundle& b, int n, std::size_t p, std::size_t q) {
    const cplx ov = inner(b.band(p, n), b.band(q, n));
    if (std::abs(ov) == 0.0)
        throw VanishingOverlap("link_phase: orthogonal neighboring states");
    return std::arg(ov);
}

}  // namespace detail

/// Berry connection of band n as a field over the grid.
///
/// Component m at R is built from the phases of neighbor overlaps,
/// -[arg<u(R)|u(R+h)> - arg<u(R)|u(R-h)>]/(2h), with the matching one-sided
/// form at open edges. This discretization is second-order accurate, exactly
/// real, and shifts by exactly -grad_scalar(zeta) under a pointwise gauge
/// change, because the overlap phases pick up the sampled zeta differences
/// with no truncation remainder.
inline ConnectionField berry_connection(const EigenBundle& b, int n) {
    b.require_band(n);
    ConnectionField out;
    out.band = n;
    out.kind = FieldKind::full;
    out.field = VectorField(b.grid);
    const ParameterGrid& g = b.grid;
    for (std::size_t p = 0; p < g.size(); ++p)
        require_nondegenerate(b.energies[p], n, b.degeneracy_rel_tol,
                              "grid point " + std::to_string(p));
    for (int d = 0; d < g.dims(); ++d) {
        if (g.shape[d] < 3)
            throw GridTooCoarse("berry_connection: need >= 3 points along dimension " +
                                std::to_string(d));
        const double inv2h = 1.0 / (2.0 * g.spacing[d]);
        for (std::size_t p = 0; p < g.size(); ++p) {
            auto up = g.neighbor(p, d, +1);
            auto dn = g.neighbor(p, d, -1);
            double a;
            if (up && dn) {
                a = -(detail::link_phase(b, n, p, *up) - detail::link_phase(b, n, p, *dn)) *
                    inv2h;
            } else if (up) {
                const double b1 = detail::link_phase(b, n, p, *up);
                const double b2 = detail::link_phase(b, n, p, *g.neighbor(p, d, +2));
                a = -(4.0 * b1 - b2) * inv2h;
            } else {
                const double g1 = detail::link_phase(b, n, p, *dn);
                const double g2 = detail::link_phase(b, n, p, *g.neighbor(p, d, -2));
                a = (4.0 * g1 - g2) * inv2h;
            }
            out.field.components[d][p] = cplx(a, 0.0);
        }
    }
    return out;
}

/// Line integral of a full connection along a contour; for closed contours
/// the result is reduced to the principal branch (-pi, pi].
inline double berry_phase_line(const ConnectionField& conn, const PathContour& path) {
    if (conn.kind != FieldKind::full)
        throw Error("berry_phase_line: full-kind connection required");
    const double raw = line_integral(conn.field, path).real();
    return path.closed ? wrap_angle(raw) : raw;
}

/// Phase of the overlap product around an explicit state sequence. The
/// sequence is treated as cyclic; per-point phases cancel pairwise, so the
/// result is bitwise independent of any phase choice at each point.
inline double wilson_phase_from_states(const std::vector<Vector>& states) {
    if (states.size() < 3) throw Error("wilson_phase_from_states: need >= 3 states");
    double total = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        const Vector& a = states[k];
        const Vector& bnext = states[(k + 1) % states.size()];
        const cplx ov = inner(a, bnext);
        if (std::abs(ov) < 1e-300)
            throw VanishingOverlap("wilson loop: adjacent states orthogonal; path too coarse");
        total += std::arg(ov);
    }
    return wrap_angle(-total);
}

/// Gauge-invariant discrete Berry phase: eigensolve the builder along the
/// path points and take the overlap-product phase. The path may visit
/// arbitrary (off-grid) parameter points.
inline double berry_phase_wilson(const EigenBundle& b, int n, const PathContour& path) {
    if (!path.closed) throw Error("berry_phase_wilson: closed path required");
    if (!b.builder) throw Error("berry_phase_wilson: bundle carries no builder");
    std::vector<Vector> states;
    states.reserve(path.points.size() - 1);
    for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {  // last == first
        EigenDecomposition eig = eig_hermitian(b.builder(path.points[k]));
        require_nondegenerate(eig.eigenvalues, n, b.degeneracy_rel_tol, "path sample");
        states.push_back(fix_reference_gauge(eig.eigenvectors.col(n)));
    }
    return wilson_phase_from_states(states);
}

enum class CurvatureMethod { curl, plaquette };

/// Berry curvature per independent plane.
///
/// curl: stencil curl of the berry_connection field (second order, inherits
/// any reference-gauge seams). plaquette: phase of the four-overlap product
/// around each cell divided by the cell area; exactly gauge-invariant, and
/// summed over a closed surface it is 2*pi times an integer by construction.
/// Plaquette samples live on cells and are stored at the cell's base corner.
inline CurvatureField berry_curvature(const EigenBundle& b, int n,
                                      CurvatureMethod method = CurvatureMethod::plaquette) {
    b.require_band(n);
    CurvatureField out;
    out.band = n;
    out.kind = FieldKind::full;
    const ParameterGrid& g = b.grid;
    if (g.dims() < 2) throw GridTooCoarse("berry_curvature: need >= 2 dimensions");

    if (method == CurvatureMethod::curl) {
        ConnectionField conn = berry_connection(b, n);
        out.planes = curl_planes(conn.field);
        return out;
    }

    out.cell_valid.assign(g.size(), 0);
    for (int a = 0; a < g.dims(); ++a) {
        for (int c = a + 1; c < g.dims(); ++c) {
            PlaneCurl pc;
            pc.dim_a = a;
            pc.dim_b = c;
            pc.values = ScalarField(g);
            const double inv_area = 1.0 / (g.spacing[a] * g.spacing[c]);
            for (std::size_t p = 0; p < g.size(); ++p) {
                auto pa = g.neighbor(p, a, +1);
                auto pc2 = g.neighbor(p, c, +1);
                if (!pa || !pc2) continue;
                auto pac = g.neighbor(*pa, c, +1);
                if (!pac) continue;
                const cplx prod = inner(b.band(p, n), b.band(*pa, n)) *
                                  inner(b.band(*pa, n), b.band(*pac, n)) *
                                  inner(b.band(*pac, n), b.band(*pc2, n)) *
                                  inner(b.band(*pc2, n), b.band(p, n));
                if (std::abs(prod) == 0.0)
                    throw VanishingOverlap("plaquette: orthogonal neighboring states");
                pc.values.values[p] = cplx(-std::arg(prod) * inv_area, 0.0);
                out.cell_valid[p] = 1;
            }
            out.planes.push_back(std::move(pc));
        }
    }
    return out;
}

/// Plaquette flux sum over all valid cells of one plane, without the area
/// division: 2*pi times an integer on closed surfaces. `reverse_orientation`
/// selects the (b, a) circulation instead of (a, b).
inline double plaquette_flux_sum(const EigenBundle& b, int n, int plane_index = 0,
                                 bool reverse_orientation = false) {
    CurvatureField f = berry_curvature(b, n, CurvatureMethod::plaquette);
    const PlaneCurl& pc = f.planes.at(plane_index);
    const double area = b.grid.spacing[pc.dim_a] * b.grid.spacing[pc.dim_b];
    double total = 0.0;
    for (std::size_t p = 0; p < b.grid.size(); ++p)
        if (f.cell_valid.empty() || f.cell_valid[p]) total += pc.values.values[p].real() * area;
    return reverse_orientation ? -total : total;
}

}  // namespace gaugeweave
