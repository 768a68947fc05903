#pragma once

#include <utility>
#include <vector>

#include "clockforge/matrix.hpp"

namespace clockforge {

// Real symmetric tridiagonal matrix: diag has n entries, offdiag n-1.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;

    SymTridiagonal() = default;
    SymTridiagonal(std::vector<double> d, std::vector<double> e) : diag(std::move(d)), offdiag(std::move(e)) {
        if (diag.empty()) throw std::invalid_argument("SymTridiagonal: empty diagonal");
        if (offdiag.size() + 1 != diag.size())
            throw std::invalid_argument("SymTridiagonal: offdiag length must be diag length - 1");
    }

    int dim() const { return static_cast<int>(diag.size()); }

    Matrix dense() const {
        const int n = dim();
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = diag[i];
        for (int i = 0; i + 1 < n; ++i) {
            m(i, i + 1) = offdiag[i];
            m(i + 1, i) = offdiag[i];
        }
        return m;
    }

    std::vector<double> apply(const std::vector<double>& v) const {
        const int n = dim();
        std::vector<double> out(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double acc = diag[i] * v[i];
            if (i > 0) acc += offdiag[i - 1] * v[i - 1];
            if (i + 1 < n) acc += offdiag[i] * v[i + 1];
            out[i] = acc;
        }
        return out;
    }

    double norm_bound() const {  // max row sum, bounds the spectral radius
        const int n = dim();
        double m = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = std::abs(diag[i]);
            if (i > 0) r += std::abs(offdiag[i - 1]);
            if (i + 1 < n) r += std::abs(offdiag[i]);
            m = std::max(m, r);
        }
        return m;
    }
};

// Hermitian tridiagonal with real diagonal a_t and complex lower off-diagonal
// b_t = H(t+1, t).
struct ComplexTridiagonal {
    std::vector<double> diag;
    std::vector<cplx> offdiag;

    ComplexTridiagonal() = default;
    ComplexTridiagonal(std::vector<double> d, std::vector<cplx> e) : diag(std::move(d)), offdiag(std::move(e)) {
        if (diag.empty()) throw std::invalid_argument("ComplexTridiagonal: empty diagonal");
        if (offdiag.size() + 1 != diag.size())
            throw std::invalid_argument("ComplexTridiagonal: offdiag length must be diag length - 1");
    }

    int dim() const { return static_cast<int>(diag.size()); }

    Matrix dense() const {
        const int n = dim();
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = diag[i];
        for (int i = 0; i + 1 < n; ++i) {
            m(i + 1, i) = offdiag[i];
            m(i, i + 1) = std::conj(offdiag[i]);
        }
        return m;
    }
};

// Diagonal phase gauge |t> -> exp(i phi_t)|t> that makes every off-diagonal
// real and <= 0.  Spectrum is invariant; the phases let eigenvectors of the
// original matrix be reconstructed as v_t = exp(i phi_t) w_t.
struct GaugeReduction {
    SymTridiagonal matrix;
    std::vector<cplx> phases;  // e^{i phi_t}

    Vector lift(const std::vector<double>& w) const {
        Vector v(w.size());
        for (size_t t = 0; t < w.size(); ++t) v[t] = phases[t] * w[t];
        return v;
    }
};

inline GaugeReduction gauge_reduce(const ComplexTridiagonal& h) {
    const int n = h.dim();
    GaugeReduction g;
    g.phases.assign(n, cplx(1.0, 0.0));
    std::vector<double> off(n > 1 ? n - 1 : 0, 0.0);
    for (int t = 0; t + 1 < n; ++t) {
        const cplx b = h.offdiag[t];
        const double ab = std::abs(b);
        if (ab == 0.0) {
            g.phases[t + 1] = g.phases[t];
            off[t] = 0.0;
        } else {
            // want conj(phase[t+1]) * b * phase[t] = -|b|
            g.phases[t + 1] = -g.phases[t] * (b / ab);
            off[t] = -ab;
        }
    }
    g.matrix = SymTridiagonal(h.diag, off);
    return g;
}

// --- Sturm-sequence bisection + inverse iteration ---------------------------
//
// Eigenvalues by bisection on the negcount function; eigenvectors by inverse
// iteration on the shifted matrix.  The matrix is split into irreducible
// blocks at (numerically) zero off-diagonals, so in-block eigenvalues are
// simple and inverse iteration is well conditioned.  Memory stays O(n).

// Number of eigenvalues strictly below x.
int sturm_count(const SymTridiagonal& t, double x);

// Eigenvalues with (0-based) indices in [k_lo, k_hi], ascending.
std::vector<double> tridiag_eigenvalues(const SymTridiagonal& t, int k_lo, int k_hi);

inline std::vector<double> tridiag_eigenvalues(const SymTridiagonal& t) {
    return tridiag_eigenvalues(t, 0, t.dim() - 1);
}

// Eigenvector for an isolated eigenvalue (inverse iteration).  `lambda` should
// come from tridiag_eigenvalues.  The result is normalized with the global
// phase convention (largest amplitude positive).
std::vector<double> tridiag_eigenvector(const SymTridiagonal& t, double lambda);

// Lowest two eigenvalues (E0, E1); dim >= 2 required.
std::pair<double, double> tridiag_lowest_two(const SymTridiagonal& t);

double tridiag_ground_energy(const SymTridiagonal& t);

// Full spectrum with eigenvectors, block-aware: the matrix splits into
// irreducible blocks at zero couplings, each block has simple eigenvalues,
// and vectors are padded back to full length.
struct TridiagDecomposition {
    std::vector<double> eigenvalues;               // ascending
    std::vector<std::vector<double>> eigenvectors;  // matching order
};

TridiagDecomposition tridiag_full_decomposition(const SymTridiagonal& t);

}  // namespace clockforge
