#include "clockforge/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace clockforge {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Irreducible blocks: split where the off-diagonal is negligible relative to
// its diagonal neighbors (EISPACK splitting criterion).
std::vector<std::pair<int, int>> split_blocks(const SymTridiagonal& t) {
    const int n = t.dim();
    std::vector<std::pair<int, int>> blocks;
    int start = 0;
    for (int i = 0; i + 1 < n; ++i) {
        double thresh = kEps * (std::abs(t.diag[i]) + std::abs(t.diag[i + 1]));
        if (std::abs(t.offdiag[i]) <= thresh) {
            blocks.emplace_back(start, i);
            start = i + 1;
        }
    }
    blocks.emplace_back(start, n - 1);
    return blocks;
}

SymTridiagonal slice(const SymTridiagonal& t, int lo, int hi) {
    std::vector<double> d(t.diag.begin() + lo, t.diag.begin() + hi + 1);
    std::vector<double> e;
    if (hi > lo) e.assign(t.offdiag.begin() + lo, t.offdiag.begin() + hi);
    return SymTridiagonal(std::move(d), std::move(e));
}

int sturm_count_block(const SymTridiagonal& t, double x) {
    const int n = t.dim();
    int count = 0;
    double q = t.diag[0] - x;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        double e = t.offdiag[i - 1];
        if (q == 0.0) q = kEps * (std::abs(e) + kEps);
        q = t.diag[i] - x - e * e / q;
        if (q < 0.0) ++count;
    }
    return count;
}

std::pair<double, double> gershgorin(const SymTridiagonal& t) {
    const int n = t.dim();
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(t.offdiag[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    return {lo, hi};
}

// Bisect for the k-th (0-based) eigenvalue of a single irreducible block.
double bisect_eigenvalue(const SymTridiagonal& t, int k, double lo, double hi) {
    double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= 4.0 * kEps * scale || mid == lo || mid == hi) break;
        if (sturm_count_block(t, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Solve (T - lambda) x = b with partial pivoting; the factorization has two
// superdiagonals of fill-in.  Specialized for inverse iteration.
void shifted_solve(const SymTridiagonal& t, double lambda, std::vector<double>& x) {
    const int n = t.dim();
    std::vector<double> d(n), u1(std::max(0, n - 1)), u2(std::max(0, n - 2)), l(std::max(0, n - 1));
    std::vector<int> pivoted(std::max(0, n - 1), 0);
    for (int i = 0; i < n; ++i) d[i] = t.diag[i] - lambda;
    for (int i = 0; i + 1 < n; ++i) u1[i] = t.offdiag[i];
    for (int i = 0; i + 2 < n; ++i) u2[i] = 0.0;

    const double tiny = kEps * std::max(t.norm_bound(), 1e-300);
    // forward elimination
    std::vector<double> sub(std::max(0, n - 1));
    for (int i = 0; i + 1 < n; ++i) sub[i] = t.offdiag[i];
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i]) > std::abs(d[i])) {
            pivoted[i] = 1;
            std::swap(d[i], sub[i]);
            double tmp = (i + 1 < n) ? d[i + 1] : 0.0;
            d[i + 1] = u1[i];
            u1[i] = tmp;
            if (i + 2 < n) {
                u2[i] = u1[i + 1];
                u1[i + 1] = 0.0;
            }
            std::swap(x[i], x[i + 1]);
        }
        if (std::abs(d[i]) < tiny) d[i] = (d[i] >= 0 ? tiny : -tiny);
        double m = sub[i] / d[i];
        l[i] = m;
        d[i + 1] -= m * u1[i];
        if (i + 2 < n) u1[i + 1] -= m * u2[i];
        x[i + 1] -= m * x[i];
    }
    if (std::abs(d[n - 1]) < tiny) d[n - 1] = (d[n - 1] >= 0 ? tiny : -tiny);
    // back substitution
    for (int i = n - 1; i >= 0; --i) {
        double acc = x[i];
        if (i + 1 < n) acc -= u1[i] * x[i + 1];
        if (i + 2 < n) acc -= u2[i] * x[i + 2];
        x[i] = acc / d[i];
    }
}

std::vector<double> block_eigenvector(const SymTridiagonal& t, double lambda) {
    const int n = t.dim();
    std::vector<double> x(n);
    // deterministic pseudo-random start, resistant to exactly-symmetric modes
    unsigned long long s = 0x9e3779b97f4a7c15ULL;
    for (int i = 0; i < n; ++i) {
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        x[i] = 0.5 + static_cast<double>((s * 0x2545f4914f6cdd1dULL) >> 11) * 0x1.0p-53;
    }
    const double scale = std::max(t.norm_bound(), 1e-300);
    double best_residual = 1e300;
    std::vector<double> best;
    for (int iter = 0; iter < 6; ++iter) {
        shifted_solve(t, lambda, x);
        double nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw numerical_error("tridiag_eigenvector: inverse iteration collapsed");
        for (double& v : x) v /= nrm;
        std::vector<double> tx = t.apply(x);
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = tx[i] - lambda * x[i];
            res += r * r;
        }
        res = std::sqrt(res);
        if (res < best_residual) {
            best_residual = res;
            best = x;
            if (res <= 8.0 * kEps * scale) break;
        } else {
            break;  // no further improvement
        }
    }
    x = best;
    // phase convention: largest-magnitude entry positive
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
    if (x[imax] < 0.0)
        for (double& v : x) v = -v;
    return x;
}

}  // namespace

int sturm_count(const SymTridiagonal& t, double x) { return sturm_count_block(t, x); }

std::vector<double> tridiag_eigenvalues(const SymTridiagonal& t, int k_lo, int k_hi) {
    const int n = t.dim();
    if (k_lo < 0 || k_hi >= n || k_lo > k_hi) throw std::invalid_argument("tridiag_eigenvalues: bad index range");
    // Collect all block eigenvalues lazily: each requested global index is
    // found by bisection on the full negcount (which sums over blocks
    // automatically since zero couplings do not mix Sturm counts).
    auto [lo0, hi0] = gershgorin(t);
    double pad = kEps * std::max(std::abs(lo0), std::abs(hi0)) * n + kEps;
    lo0 -= pad;
    hi0 += pad;
    std::vector<double> out;
    out.reserve(k_hi - k_lo + 1);
    for (int k = k_lo; k <= k_hi; ++k) out.push_back(bisect_eigenvalue(t, k, lo0, hi0));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> tridiag_eigenvector(const SymTridiagonal& t, double lambda) {
    const int n = t.dim();
    auto blocks = split_blocks(t);
    if (blocks.size() == 1) return block_eigenvector(t, lambda);
    // Locate the block owning this eigenvalue: the one whose local negcounts
    // bracket it.  Ties (degenerate across blocks) resolve to the first.
    const double scale = std::max(t.norm_bound(), 1e-300);
    for (auto [lo, hi] : blocks) {
        SymTridiagonal b = slice(t, lo, hi);
        double gap = 1e4 * kEps * scale * b.dim();
        int below = sturm_count_block(b, lambda - gap);
        int below_hi = sturm_count_block(b, lambda + gap);
        if (below_hi > below) {
            std::vector<double> local = block_eigenvector(b, lambda);
            std::vector<double> full(n, 0.0);
            std::copy(local.begin(), local.end(), full.begin() + lo);
            return full;
        }
    }
    // fall back: nearest block by spectrum
    SymTridiagonal b = slice(t, blocks[0].first, blocks[0].second);
    std::vector<double> local = block_eigenvector(b, lambda);
    std::vector<double> full(n, 0.0);
    std::copy(local.begin(), local.end(), full.begin() + blocks[0].first);
    return full;
}

std::pair<double, double> tridiag_lowest_two(const SymTridiagonal& t) {
    if (t.dim() < 2) throw std::invalid_argument("tridiag_lowest_two: dim must be >= 2");
    auto ev = tridiag_eigenvalues(t, 0, 1);
    return {ev[0], ev[1]};
}

double tridiag_ground_energy(const SymTridiagonal& t) { return tridiag_eigenvalues(t, 0, 0)[0]; }

TridiagDecomposition tridiag_full_decomposition(const SymTridiagonal& t) {
    const int n = t.dim();
    const double scale = std::max(t.norm_bound(), 1.0);
    const double cluster_tol = 1e-5 * scale;

    struct Entry {
        double ev;
        int block_lo;
        std::vector<double> vec;  // block-local
    };
    std::vector<Entry> entries;
    entries.reserve(n);

    for (auto [lo, hi] : split_blocks(t)) {
        SymTridiagonal b = slice(t, lo, hi);
        const int bn = b.dim();
        if (bn == 1) {
            entries.push_back({b.diag[0], lo, {1.0}});
            continue;
        }
        std::vector<double> evs = tridiag_eigenvalues(b, 0, bn - 1);
        // inverse iteration; nearly coincident in-block eigenvalues share a
        // cluster and get re-orthogonalized
        int k = 0;
        std::vector<std::vector<double>> vecs(bn);
        while (k < bn) {
            int j = k;
            while (j + 1 < bn && evs[j + 1] - evs[j] <= cluster_tol) ++j;
            for (int i = k; i <= j; ++i) {
                double shift = evs[i];
                for (int attempt = 0; attempt < 3; ++attempt) {
                    vecs[i] = block_eigenvector(b, shift);
                    for (int prev = k; prev < i; ++prev) {
                        double ip = 0.0;
                        for (int r = 0; r < bn; ++r) ip += vecs[prev][r] * vecs[i][r];
                        for (int r = 0; r < bn; ++r) vecs[i][r] -= ip * vecs[prev][r];
                    }
                    double nn = 0.0;
                    for (double x : vecs[i]) nn += x * x;
                    nn = std::sqrt(nn);
                    if (nn > 1e-3) {
                        for (double& x : vecs[i]) x /= nn;
                        break;
                    }
                    if (attempt == 2)
                        throw numerical_error("tridiag_full_decomposition: cluster orthogonalization collapsed");
                    shift = evs[i] + (attempt + 1) * (i - k + 1) * 64 * kEps * scale;
                }
            }
            k = j + 1;
        }
        for (int i = 0; i < bn; ++i) entries.push_back({evs[i], lo, std::move(vecs[i])});
    }

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.ev < b.ev; });
    TridiagDecomposition out;
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (Entry& e : entries) {
        out.eigenvalues.push_back(e.ev);
        std::vector<double> full(n, 0.0);
        std::copy(e.vec.begin(), e.vec.end(), full.begin() + e.block_lo);
        out.eigenvectors.push_back(std::move(full));
    }
    return out;
}

}  // namespace clockforge
