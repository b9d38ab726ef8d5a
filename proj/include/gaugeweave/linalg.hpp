#pragma once

#include <algorithm>
#include <cmath>

#include "gaugeweave/common.hpp"

namespace gaugeweave {

/// Result of a Hermitian eigensolve. Eigenvalues ascending, eigenvectors
/// orthonormal columns, `gap` the smallest adjacent eigenvalue spacing.
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;  // column n is band n
    double gap = 0.0;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Entrywise deviation from Hermiticity.
inline double hermiticity_defect(const Matrix& h) {
    return max_abs(h - Matrix(h.adjoint()));
}

inline bool is_hermitian(const Matrix& h, double tol = 1e-12) {
    if (h.rows() != h.cols()) return false;
    return hermiticity_defect(h) <= tol * std::max(1.0, max_abs(h));
}

/// Conjugate-linear-in-bra inner product <bra|ket>.
inline cplx inner(const Vector& bra, const Vector& ket) {
    if (bra.size() != ket.size()) throw DimensionMismatch("inner: dimension mismatch");
    return bra.dot(ket);  // Eigen's dot conjugates the left argument
}

/// Rotate v by a global phase so its largest-magnitude entry (ties broken by
/// lowest index) is real and positive. Deterministic phase convention applied
/// before any finite-differencing of eigenvectors. Idempotent.
inline Vector fix_reference_gauge(const Vector& v) {
    if (v.size() == 0) throw ZeroVector("fix_reference_gauge: empty vector");
    Eigen::Index pivot = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double a = std::abs(v[i]);
        if (a > best) {
            best = a;
            pivot = i;
        }
    }
    if (best == 0.0) throw ZeroVector("fix_reference_gauge: zero vector");
    const cplx p = v[pivot];
    if (p.imag() == 0.0 && p.real() > 0.0) return v;  // already conventional
    Vector w = v * (std::conj(p) / best);
    w[pivot] = cplx(best, 0.0);  // pin the pivot exactly real-positive
    return w;
}

struct EigOptions {
    double hermiticity_tol = 1e-12;       // relative to max(1, |H|_max)
    double degeneracy_rel_tol = 1e-8;     // gap threshold relative to |H|
};

/// Dense Hermitian eigensolve with ascending eigenvalues and deterministic
/// output. Throws NonHermitianInput if the input fails the Hermiticity gate.
inline EigenDecomposition eig_hermitian(const Matrix& h, const EigOptions& opt = {}) {
    if (h.rows() != h.cols() || h.rows() < 1)
        throw NonHermitianInput("eig_hermitian: matrix must be square, dim >= 1");
    const double scale = std::max(1.0, max_abs(h));
    if (hermiticity_defect(h) > opt.hermiticity_tol * scale)
        throw NonHermitianInput("eig_hermitian: Hermiticity tolerance exceeded");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw Error("eig_hermitian: eigensolver did not converge");

    EigenDecomposition out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    out.gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i + 1 < out.eigenvalues.size(); ++i)
        out.gap = std::min(out.gap, out.eigenvalues[i + 1] - out.eigenvalues[i]);
    return out;
}

/// Gap around one band: min distance to the adjacent eigenvalues.
inline double band_gap(const Eigen::VectorXd& evals, int n) {
    double g = std::numeric_limits<double>::infinity();
    if (n > 0) g = std::min(g, evals[n] - evals[n - 1]);
    if (n + 1 < evals.size()) g = std::min(g, evals[n + 1] - evals[n]);
    return g;
}

/// Throws DegenerateBand when the gap around band n drops below the
/// relative threshold. Non-degenerate bands are a precondition for every
/// single-band geometric quantity here.
inline void require_nondegenerate(const Eigen::VectorXd& evals, int n,
                                  double rel_tol = 1e-8,
                                  const std::string& where = "") {
    const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
    if (band_gap(evals, n) < rel_tol * scale)
        throw DegenerateBand("degenerate band " + std::to_string(n) +
                             (where.empty() ? "" : " at " + where));
}

}  // namespace gaugeweave
