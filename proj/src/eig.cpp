#include "clockforge/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace clockforge {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Householder reduction of a Hermitian matrix to complex tridiagonal form,
// accumulating the unitary in q.
void householder_tridiagonalize(Matrix& a, Matrix& q) {
    const int n = a.rows();
    const double scale = std::max(a.max_abs(), 1e-300);
    Vector v(n), w(n), qv(n);
    for (int k = 0; k + 2 < n; ++k) {
        double sigma = 0.0;
        for (int i = k + 1; i < n; ++i) sigma += std::norm(a(i, k));
        double col_norm = std::sqrt(sigma);
        if (col_norm <= kEps * scale) continue;

        cplx alpha = a(k + 1, k);
        cplx phase = (std::abs(alpha) > 0.0) ? alpha / std::abs(alpha) : cplx(1.0);
        cplx beta = -phase * col_norm;

        std::fill(v.begin(), v.end(), cplx(0.0));
        for (int i = k + 1; i < n; ++i) v[i] = a(i, k);
        v[k + 1] -= beta;
        double vn = norm2(v);
        if (vn <= kEps * scale) continue;
        for (auto& x : v) x /= vn;

        // A <- (I - 2vv+) A (I - 2vv+) = A - 2vu+ - 2uv+ with
        // w = Av, kappa = v+w (real), u = w - kappa v.
        for (int i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (int j = k + 1; j < n; ++j) acc += a(i, j) * v[j];
            w[i] = acc;
        }
        double kappa = 0.0;
        for (int i = k + 1; i < n; ++i) kappa += (std::conj(v[i]) * w[i]).real();
        for (int i = 0; i < n; ++i) w[i] -= kappa * v[i];
        for (int i = 0; i < n; ++i) {
            const cplx vi = v[i];
            const cplx ui = w[i];
            if (vi == cplx(0.0) && ui == cplx(0.0)) continue;
            for (int j = 0; j < n; ++j) a(i, j) -= 2.0 * (vi * std::conj(w[j]) + ui * std::conj(v[j]));
        }

        // Q <- Q (I - 2vv+)
        for (int i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (int j = k + 1; j < n; ++j) acc += q(i, j) * v[j];
            qv[i] = acc;
        }
        for (int i = 0; i < n; ++i) {
            const cplx qvi = qv[i];
            if (qvi == cplx(0.0)) continue;
            for (int j = k + 1; j < n; ++j) q(i, j) -= 2.0 * qvi * std::conj(v[j]);
        }
    }
}

// Implicit-shift QL on (d, e) with rotation accumulation into the complex
// columns of z.  e is padded to length n with e[n-1] unused.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix& z, int max_total_iter) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    int total_iter = 0;
    for (int l = 0; l < n; ++l) {
        for (;;) {
            int m = l;
            for (; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m == l) break;
            if (++total_iter > max_total_iter) {
                double rem = 0.0;
                for (int i = 0; i < n - 1; ++i) rem = std::max(rem, std::abs(e[i]));
                throw numerical_error("eig_hermitian: QL sweep cap exceeded, off-diagonal residual " +
                                      std::to_string(rem));
            }
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for (int k = 0; k < z.rows(); ++k) {
                    cplx fk = z(k, i + 1);
                    z(k, i + 1) = s * z(k, i) + c * fk;
                    z(k, i) = c * z(k, i) - s * fk;
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

void sort_pairs(std::vector<double>& evals, Matrix& vecs) {
    const int n = static_cast<int>(evals.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return evals[a] < evals[b]; });
    std::vector<double> ev(n);
    Matrix v(vecs.rows(), n);
    for (int k = 0; k < n; ++k) {
        ev[k] = evals[idx[k]];
        for (int i = 0; i < vecs.rows(); ++i) v(i, k) = vecs(i, idx[k]);
    }
    evals = std::move(ev);
    vecs = std::move(v);
}

void fix_column_phases(Matrix& vecs) {
    for (int k = 0; k < vecs.cols(); ++k) {
        int imax = 0;
        double amax = -1.0;
        for (int i = 0; i < vecs.rows(); ++i) {
            double a = std::abs(vecs(i, k));
            if (a > amax) {
                amax = a;
                imax = i;
            }
        }
        if (amax <= 0.0) continue;
        cplx phase = vecs(imax, k) / amax;
        for (int i = 0; i < vecs.rows(); ++i) vecs(i, k) /= phase;
    }
}

double compute_residual(const Matrix& h, const std::vector<double>& evals, const Matrix& vecs) {
    const int n = h.rows();
    double norm_h = 0.0;
    for (double l : evals) norm_h = std::max(norm_h, std::abs(l));
    norm_h = std::max(1.0, norm_h);
    double worst = 0.0;
    Vector v(n);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) v[i] = vecs(i, k);
        Vector hv = h.apply(v);
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) r2 += std::norm(hv[i] - evals[k] * v[i]);
        worst = std::max(worst, std::sqrt(r2));
    }
    return worst / norm_h;
}

}  // namespace

EigenDecomposition eig_hermitian(const HermitianMatrix& h, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("eig_hermitian: tol must be positive");
    const int n = h.dim();
    Matrix a = h.matrix();
    Matrix q = Matrix::identity(n);

    if (n == 1) {
        EigenDecomposition d;
        d.eigenvalues = {a(0, 0).real()};
        d.eigenvectors = q;
        return d;
    }

    householder_tridiagonalize(a, q);

    // Extract tridiagonal data and gauge the off-diagonal real.
    std::vector<double> d(n), e(n, 0.0);
    for (int i = 0; i < n; ++i) d[i] = a(i, i).real();
    Vector phases(n, cplx(1.0));
    for (int i = 0; i + 1 < n; ++i) {
        cplx c = a(i + 1, i);
        double ac = std::abs(c);
        if (ac == 0.0) {
            phases[i + 1] = phases[i];
            e[i] = 0.0;
        } else {
            phases[i + 1] = -phases[i] * (c / ac);
            e[i] = -ac;
        }
    }
    for (int j = 0; j < n; ++j) {
        if (phases[j] == cplx(1.0)) continue;
        for (int i = 0; i < n; ++i) q(i, j) *= phases[j];
    }

    ql_implicit(d, e, q, 64 * n);
    sort_pairs(d, q);
    fix_column_phases(q);

    EigenDecomposition out;
    out.eigenvalues = std::move(d);
    out.eigenvectors = std::move(q);
    out.residual = compute_residual(h.matrix(), out.eigenvalues, out.eigenvectors);
    double norm_h = std::max(std::abs(out.eigenvalues.front()), std::abs(out.eigenvalues.back()));
    if (out.residual > std::max(tol, 1e-12)) {
        throw numerical_error("eig_hermitian: residual " + std::to_string(out.residual) +
                              " exceeds tolerance after convergence");
    }
    if (n >= 2) out.degenerate_ground = (out.eigenvalues[1] - out.eigenvalues[0]) <= degeneracy_threshold(norm_h);
    return out;
}

EigenDecomposition eig_hermitian(const Matrix& m, double tol) { return eig_hermitian(HermitianMatrix(m), tol); }

EigenDecomposition eig_tridiagonal(const SymTridiagonal& t, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("eig_tridiagonal: tol must be positive");
    const int n = t.dim();
    TridiagDecomposition dec = tridiag_full_decomposition(t);
    std::vector<double> evals = std::move(dec.eigenvalues);
    Matrix vecs(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) vecs(r, c) = dec.eigenvectors[c][r];
    fix_column_phases(vecs);

    EigenDecomposition out;
    out.eigenvalues = std::move(evals);
    out.eigenvectors = std::move(vecs);
    // residual via O(n) applies
    double norm_h = std::max({std::abs(out.eigenvalues.front()), std::abs(out.eigenvalues.back()), 1.0});
    double worst = 0.0;
    for (int c = 0; c < n; ++c) {
        std::vector<double> v(n);
        for (int r = 0; r < n; ++r) v[r] = out.eigenvectors(r, c).real();
        std::vector<double> hv = t.apply(v);
        double r2 = 0.0;
        for (int r = 0; r < n; ++r) {
            double diff = hv[r] - out.eigenvalues[c] * v[r];
            r2 += diff * diff;
        }
        worst = std::max(worst, std::sqrt(r2));
    }
    out.residual = worst / norm_h;
    if (out.residual > std::max(tol, 1e-12))
        throw numerical_error("eig_tridiagonal: residual " + std::to_string(out.residual) + " exceeds tolerance");
    if (n >= 2)
        out.degenerate_ground = (out.eigenvalues[1] - out.eigenvalues[0]) <= degeneracy_threshold(norm_h);
    return out;
}

double spectral_gap(const HermitianMatrix& h) {
    if (h.dim() < 2) throw std::invalid_argument("spectral_gap: undefined for dim 1");
    auto d = eig_hermitian(h);
    return d.eigenvalues[1] - d.eigenvalues[0];
}

double spectral_gap(const SymTridiagonal& t) {
    if (t.dim() < 2) throw std::invalid_argument("spectral_gap: undefined for dim 1");
    auto [e0, e1] = tridiag_lowest_two(t);
    return e1 - e0;
}

GroundState ground_state(const HermitianMatrix& h) {
    auto d = eig_hermitian(h);
    GroundState g{d.eigenvalues[0], d.column(0), d.degenerate_ground};
    fix_phase(g.state);
    return g;
}

GroundState ground_state(const SymTridiagonal& t) {
    GroundState g;
    if (t.dim() == 1) {
        g.energy = t.diag[0];
        g.state = {cplx(1.0)};
        g.degenerate = false;
        return g;
    }
    auto [e0, e1] = tridiag_lowest_two(t);
    auto v = tridiag_eigenvector(t, e0);
    g.energy = e0;
    g.state.assign(v.begin(), v.end());
    g.degenerate = (e1 - e0) <= degeneracy_threshold(std::max(std::abs(e0), t.norm_bound()));
    fix_phase(g.state);
    return g;
}

Matrix eigenspace_basis(const HermitianMatrix& h, double lo, double hi) {
    auto d = eig_hermitian(h);
    std::vector<int> keep;
    for (int k = 0; k < h.dim(); ++k)
        if (d.eigenvalues[k] >= lo && d.eigenvalues[k] <= hi) keep.push_back(k);
    Matrix b(h.dim(), static_cast<int>(keep.size()));
    for (size_t c = 0; c < keep.size(); ++c)
        for (int r = 0; r < h.dim(); ++r) b(r, static_cast<int>(c)) = d.eigenvectors(r, keep[c]);
    return b;
}

Matrix kernel_basis(const HermitianMatrix& h, double tol) { return eigenspace_basis(h, -tol, tol); }

Matrix projector_from_basis(const Matrix& basis, int dim) {
    Matrix p(dim, dim);
    for (int c = 0; c < basis.cols(); ++c)
        for (int i = 0; i < dim; ++i) {
            const cplx bi = basis(i, c);
            if (bi == cplx(0.0)) continue;
            for (int j = 0; j < dim; ++j) p(i, j) += bi * std::conj(basis(j, c));
        }
    return p;
}

std::vector<double> principal_angles(const HermitianMatrix& p, const HermitianMatrix& q, double idem_tol) {
    auto check_idempotent = [&](const HermitianMatrix& m, const char* name) {
        Matrix diff = m.matrix() * m.matrix() - m.matrix();
        if (diff.max_abs() > idem_tol)
            throw std::invalid_argument(std::string("principal_angles: ") + name + " is not idempotent (defect " +
                                        std::to_string(diff.max_abs()) + ")");
    };
    check_idempotent(p, "P");
    check_idempotent(q, "Q");
    if (p.dim() != q.dim()) throw std::invalid_argument("principal_angles: dimension mismatch");

    Matrix bp = eigenspace_basis(p, 0.5, 2.0);
    Matrix bq = eigenspace_basis(q, 0.5, 2.0);
    int m = std::min(bp.cols(), bq.cols());
    if (m == 0) return {};

    Matrix cmat = bp.adjoint() * bq;  // r_p x r_q
    Matrix gram = cmat.adjoint() * cmat;
    auto d = eig_hermitian(HermitianMatrix(gram, 1e-9));
    std::vector<double> cosines;
    for (int k = d.eigenvectors.cols() - 1; k >= 0 && static_cast<int>(cosines.size()) < m; --k) {
        double lam = std::clamp(d.eigenvalues[k], 0.0, 1.0);
        cosines.push_back(std::sqrt(lam));
    }
    return cosines;  // descending
}

}  // namespace clockforge
