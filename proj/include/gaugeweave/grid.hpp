#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gaugeweave/common.hpp"

namespace gaugeweave {

enum class Boundary { periodic, open };

/// Uniform N-dimensional parameter grid. Flattening is row-major with the
/// last dimension fastest. Boundaries are per dimension so mixed topologies
/// (sphere patch: open polar axis, periodic azimuth) work on one grid.
struct ParameterGrid {
    std::vector<int> shape;           // points per dimension
    std::vector<double> spacing;      // h_m > 0
    std::vector<double> origin;
    std::vector<Boundary> boundary;

    ParameterGrid() = default;
    ParameterGrid(std::vector<int> shape_, std::vector<double> spacing_,
                  std::vector<double> origin_, std::vector<Boundary> boundary_)
        : shape(std::move(shape_)),
          spacing(std::move(spacing_)),
          origin(std::move(origin_)),
          boundary(std::move(boundary_)) {
        validate();
    }

    static ParameterGrid uniform(std::vector<int> shape, std::vector<double> spacing,
                                 std::vector<double> origin, Boundary b) {
        std::vector<Boundary> bs(shape.size(), b);
        return ParameterGrid(std::move(shape), std::move(spacing), std::move(origin), std::move(bs));
    }

    void validate() const {
        const size_t n = shape.size();
        if (n == 0 || spacing.size() != n || origin.size() != n || boundary.size() != n)
            throw DimensionMismatch("ParameterGrid: inconsistent field sizes");
        for (size_t d = 0; d < n; ++d) {
            if (shape[d] < 1) throw GridTooCoarse("ParameterGrid: empty dimension");
            if (!(spacing[d] > 0.0)) throw Error("ParameterGrid: spacing must be positive");
        }
    }

    int dims() const { return static_cast<int>(shape.size()); }

    std::size_t size() const {
        std::size_t n = 1;
        for (int s : shape) n *= static_cast<std::size_t>(s);
        return n;
    }

    std::size_t flat(const std::vector<int>& idx) const {
        std::size_t f = 0;
        for (int d = 0; d < dims(); ++d) f = f * shape[d] + idx[d];
        return f;
    }

    std::vector<int> multi(std::size_t flat_index) const {
        std::vector<int> idx(dims());
        for (int d = dims() - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(flat_index % shape[d]);
            flat_index /= shape[d];
        }
        return idx;
    }

    std::vector<double> coords(const std::vector<int>& idx) const {
        std::vector<double> r(dims());
        for (int d = 0; d < dims(); ++d) r[d] = origin[d] + spacing[d] * idx[d];
        return r;
    }
    std::vector<double> coords(std::size_t flat_index) const { return coords(multi(flat_index)); }

    /// Index shifted by `steps` along dimension d, honoring the boundary.
    /// Returns nullopt when an open boundary is crossed.
    std::optional<std::size_t> neighbor(std::size_t flat_index, int d, int steps) const {
        std::vector<int> idx = multi(flat_index);
        long j = idx[d] + steps;
        if (boundary[d] == Boundary::periodic) {
            j %= shape[d];
            if (j < 0) j += shape[d];
        } else if (j < 0 || j >= shape[d]) {
            return std::nullopt;
        }
        idx[d] = static_cast<int>(j);
        return flat(idx);
    }

    /// Coordinate extent of dimension d. For periodic dimensions the period
    /// is shape*h (the point after the last wraps to the first).
    double extent(int d) const {
        return boundary[d] == Boundary::periodic ? shape[d] * spacing[d]
                                                 : (shape[d] - 1) * spacing[d];
    }
};

/// Complex scalar samples over a grid.
struct ScalarField {
    ParameterGrid grid;
    std::vector<cplx> values;

    ScalarField() = default;
    explicit ScalarField(ParameterGrid g) : grid(std::move(g)), values(grid.size(), cplx{}) {}

    cplx& operator[](std::size_t i) { return values[i]; }
    const cplx& operator[](std::size_t i) const { return values[i]; }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

/// Complex vector field: one component per grid dimension, each sampled over
/// the whole grid. components[d][flat].
struct VectorField {
    ParameterGrid grid;
    std::vector<std::vector<cplx>> components;

    VectorField() = default;
    explicit VectorField(ParameterGrid g)
        : grid(std::move(g)),
          components(grid.dims(), std::vector<cplx>(grid.size(), cplx{})) {}

    int dims() const { return static_cast<int>(components.size()); }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : components)
            for (const cplx& v : c) m = std::max(m, std::abs(v));
        return m;
    }
};

/// Ordered polyline in parameter coordinates. Closed contours carry the
/// duplicated endpoint (front == back).
struct PathContour {
    std::vector<std::vector<double>> points;
    bool closed = false;

    std::size_t segments() const { return points.empty() ? 0 : points.size() - 1; }

    static PathContour open_path(std::vector<std::vector<double>> pts) {
        return PathContour{std::move(pts), false};
    }

    static PathContour closed_loop(std::vector<std::vector<double>> pts) {
        if (pts.size() < 2) throw Error("closed_loop: need at least 2 points");
        if (pts.front() != pts.back()) pts.push_back(pts.front());
        return PathContour{std::move(pts), true};
    }

    PathContour reversed() const {
        PathContour r = *this;
        std::reverse(r.points.begin(), r.points.end());
        return r;
    }
};

namespace detail {

/// Locate coordinate x along dimension d: cell index and fractional offset.
/// Periodic dimensions wrap; open dimensions throw PathOffGrid when outside
/// the sampled range (within a small slack for roundoff).
inline void locate(const ParameterGrid& g, int d, double x, int& cell, double& frac) {
    const double h = g.spacing[d];
    double t = (x - g.origin[d]) / h;
    const int n = g.shape[d];
    if (g.boundary[d] == Boundary::periodic) {
        t -= std::floor(t / n) * n;
        if (t >= n) t -= n;
        cell = static_cast<int>(std::floor(t));
        if (cell >= n) cell = n - 1;
        frac = t - cell;
    } else {
        const double slack = 1e-9;
        if (t < -slack || t > n - 1 + slack)
            throw PathOffGrid("coordinate outside open grid dimension " + std::to_string(d));
        t = std::clamp(t, 0.0, static_cast<double>(n - 1));
        cell = std::min(static_cast<int>(std::floor(t)), n - 2 >= 0 ? n - 2 : 0);
        frac = t - cell;
    }
}

template <typename Getter>
cplx interpolate(const ParameterGrid& g, Getter&& value_at, const std::vector<double>& r) {
    const int nd = g.dims();
    if (static_cast<int>(r.size()) != nd) throw DimensionMismatch("interpolate: point dimension");
    std::vector<int> cell(nd);
    std::vector<double> frac(nd);
    for (int d = 0; d < nd; ++d) locate(g, d, r[d], cell[d], frac[d]);

    cplx acc{};
    const int corners = 1 << nd;
    std::vector<int> idx(nd);
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        for (int d = 0; d < nd; ++d) {
            const bool hi = (c >> d) & 1;
            w *= hi ? frac[d] : (1.0 - frac[d]);
            int j = cell[d] + (hi ? 1 : 0);
            if (j >= g.shape[d]) {
                if (g.boundary[d] == Boundary::periodic) j = 0;
                else j = g.shape[d] - 1;  // frac is 0 here by construction
            }
            idx[d] = j;
        }
        if (w != 0.0) acc += w * value_at(g.flat(idx));
    }
    return acc;
}

}  // namespace detail

/// Multilinear interpolation of a scalar field at an arbitrary point.
inline cplx sample(const ScalarField& f, const std::vector<double>& r) {
    return detail::interpolate(f.grid, [&](std::size_t i) { return f.values[i]; }, r);
}

/// Multilinear interpolation of one vector-field component.
inline cplx sample(const VectorField& f, int component, const std::vector<double>& r) {
    return detail::interpolate(
        f.grid, [&](std::size_t i) { return f.components[component][i]; }, r);
}

}  // namespace gaugeweave
