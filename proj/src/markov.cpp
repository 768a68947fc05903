#include "clockforge/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clockforge/eig.hpp"

namespace clockforge {

namespace {
constexpr double kEntryTol = 1e-12;
constexpr double kRowTol = 1e-10;
constexpr double kBalanceTol = 1e-9;
}  // namespace

MarkovChain::MarkovChain(std::vector<std::vector<double>> p_, std::vector<double> pi_)
    : p(std::move(p_)), pi(std::move(pi_)) {
    const int n = static_cast<int>(pi.size());
    if (n == 0) throw std::invalid_argument("MarkovChain: empty chain");
    if (p.size() != pi.size()) throw std::invalid_argument("MarkovChain: P/pi size mismatch");
    double pisum = 0.0;
    for (double x : pi) {
        if (x < -kEntryTol) throw std::invalid_argument("MarkovChain: negative stationary weight");
        pisum += x;
    }
    if (std::abs(pisum - 1.0) > 1e-9) throw std::invalid_argument("MarkovChain: pi must sum to 1");
    for (int i = 0; i < n; ++i) {
        if (p[i].size() != pi.size()) throw std::invalid_argument("MarkovChain: ragged P");
        double row = 0.0;
        for (double x : p[i]) {
            if (x < -kEntryTol) throw std::invalid_argument("MarkovChain: negative transition probability");
            row += x;
        }
        if (std::abs(row - 1.0) > kRowTol)
            throw std::invalid_argument("MarkovChain: row " + std::to_string(i) + " sums to " + std::to_string(row));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(pi[i] * p[i][j] - pi[j] * p[j][i]) > kBalanceTol)
                throw std::invalid_argument("MarkovChain: detailed balance violated at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
}

bool MarkovChain::is_tridiagonal(double tol) const {
    const int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(i - j) > 1 && std::abs(p[i][j]) > tol) return false;
    return true;
}

double MarkovChain::spectral_gap() const {
    const int n = dim();
    if (n < 2) throw std::invalid_argument("MarkovChain::spectral_gap: need dim >= 2");
    if (is_tridiagonal(kEntryTol)) {
        std::vector<double> diag(n), off(n - 1);
        for (int i = 0; i < n; ++i) diag[i] = p[i][i];
        for (int i = 0; i + 1 < n; ++i) {
            double sym = p[i][i + 1] * p[i + 1][i];
            off[i] = (sym <= 0.0) ? 0.0 : std::sqrt(sym);  // pi-symmetrization of a reversible chain
        }
        SymTridiagonal a(std::move(diag), std::move(off));
        auto ev = tridiag_eigenvalues(a, n - 2, n - 1);
        return ev[1] - ev[0];
    }
    // dense symmetrization sqrt(pi_i/pi_j) P_ij
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double sym = p[i][j] * p[j][i];
            a(i, j) = (i == j) ? p[i][i] : ((sym <= 0.0) ? 0.0 : std::sqrt(sym) * (p[i][j] < 0 ? -1.0 : 1.0));
        }
    auto dec = eig_hermitian(HermitianMatrix(a, 1e-8));
    return dec.eigenvalues[n - 1] - dec.eigenvalues[n - 2];
}

namespace {

double cut_flow(const MarkovChain& mc, const std::vector<char>& in_s) {
    const int n = mc.dim();
    double q = 0.0;
    for (int x = 0; x < n; ++x) {
        if (!in_s[x]) continue;
        for (int y = 0; y < n; ++y)
            if (!in_s[y]) q += mc.pi[x] * mc.p[x][y];
    }
    return q;
}

}  // namespace

double conductance(const MarkovChain& mc, ConductanceStrategy strategy) {
    const int n = mc.dim();
    if (n < 2) throw std::invalid_argument("conductance: need at least two states");
    double best = std::numeric_limits<double>::max();
    if (strategy == ConductanceStrategy::exact) {
        if (n > 21) throw std::invalid_argument("conductance: exact strategy capped at T <= 20");
        std::vector<char> in_s(n, 0);
        for (unsigned long long mask = 1; mask + 1 < (1ULL << n); ++mask) {
            double pis = 0.0;
            for (int i = 0; i < n; ++i) {
                in_s[i] = (mask >> i) & 1ULL;
                if (in_s[i]) pis += mc.pi[i];
            }
            double denom = std::min(pis, 1.0 - pis);
            if (denom <= 0.0) continue;
            best = std::min(best, cut_flow(mc, in_s) / denom);
        }
    } else {
        std::vector<char> in_s(n, 0);
        double pis = 0.0;
        for (int k = 0; k + 1 < n; ++k) {
            in_s[k] = 1;
            pis += mc.pi[k];
            double denom = std::min(pis, 1.0 - pis);
            if (denom <= 0.0) continue;
            best = std::min(best, cut_flow(mc, in_s) / denom);
        }
    }
    return best;
}

std::pair<double, double> cheeger_bounds(double phi) {
    if (phi < 0.0 || phi > 1.0) throw std::invalid_argument("cheeger_bounds: phi must lie in [0, 1]");
    return {0.5 * phi * phi, 2.0 * phi};
}

QcMapping quantum_to_classical(const ComplexTridiagonal& m) {
    const int n = m.dim();
    if (n < 2) throw std::invalid_argument("quantum_to_classical: need dim >= 2");
    QcMapping out;

    // Normalization: shift by E0 (so a_t >= 0 and E = 0 exactly, since the
    // smallest eigenvalue never exceeds the smallest diagonal entry) and
    // rescale only as needed to keep the diagonal of G nonnegative.  With
    // E = 0 the gap relation reads Delta_P = Delta_H on the nose.
    auto gauge = gauge_reduce(m);
    auto [e0_raw, e1_raw] = tridiag_lowest_two(gauge.matrix);
    double shift = e0_raw;
    double max_a_shifted = *std::max_element(m.diag.begin(), m.diag.end()) - shift;
    double scale = std::max(1.0, max_a_shifted);
    out.shift = shift;
    out.scale = scale;
    out.ground_energy = (e0_raw - shift) / scale;  // 0 by construction
    out.gap_h = (e1_raw - e0_raw) / scale;

    // Degenerate route.  A broken bond splits the chain; when both sides
    // share the ground energy the gap is exactly zero and the signed-window
    // excitation witnesses it.  Otherwise the global ground state is confined
    // to one side, i.e. an endpoint amplitude vanishes.
    const double bond_tol = kEntryTol * std::max(1.0, scale);
    for (int t = 0; t + 1 < n; ++t) {
        if (std::abs(m.offdiag[t]) <= bond_tol) {
            out.degenerate_cut = t;
            SymTridiagonal left(std::vector<double>(gauge.matrix.diag.begin(), gauge.matrix.diag.begin() + t + 1),
                                std::vector<double>(gauge.matrix.offdiag.begin(), gauge.matrix.offdiag.begin() + t));
            SymTridiagonal right(
                std::vector<double>(gauge.matrix.diag.begin() + t + 1, gauge.matrix.diag.end()),
                std::vector<double>(gauge.matrix.offdiag.begin() + t + 1, gauge.matrix.offdiag.end()));
            double e_left = tridiag_ground_energy(left);
            double e_right = tridiag_ground_energy(right);
            if (std::abs(e_left - e_right) <= degeneracy_threshold(gauge.matrix.norm_bound())) {
                out.gap_h = 0.0;
                // spanning ground combination (psi_L (+) psi_R)/sqrt(2)
                std::vector<double> span(n, 0.0);
                std::vector<double> vl = (t == 0) ? std::vector<double>{1.0} : tridiag_eigenvector(left, e_left);
                std::vector<double> vr =
                    (t + 2 == n) ? std::vector<double>{1.0} : tridiag_eigenvector(right, e_right);
                for (int s = 0; s <= t; ++s) span[s] = vl[s] / std::sqrt(2.0);
                for (int s = t + 1; s < n; ++s) span[s] = vr[s - t - 1] / std::sqrt(2.0);
                out.psi_perp = orthogonal_excitation(m, gauge.lift(span), t);
            }
            return out;
        }
    }

    std::vector<double> w = tridiag_eigenvector(gauge.matrix, e0_raw);
    Vector psi = gauge.lift(w);
    fix_phase(psi);
    const double amp_tol = kEntryTol;
    if (std::abs(psi.front()) <= amp_tol || std::abs(psi.back()) <= amp_tol) {
        out.degenerate_cut = -2;  // endpoint amplitude vanishes
        out.gap_h = 0.0;
        return out;
    }

    const double denom = scale * (1.0 - out.ground_energy);  // (1 - E) in original units
    if (denom <= 0.0) throw numerical_error("quantum_to_classical: normalization failed (E >= 1)");

    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    std::vector<double> pi(n);
    double pin = 0.0;
    for (int t = 0; t < n; ++t) {
        pi[t] = std::norm(psi[t]);
        pin += pi[t];
    }
    for (double& x : pi) x /= pin;

    double worst_negative = 0.0;
    for (int t = 0; t < n; ++t) {
        // diagonal: G_tt = (scale - (a_t - shift))/denom
        p[t][t] = (scale - (m.diag[t] - shift)) / denom;
        if (t + 1 < n) {
            // H(t, t+1) = conj(b_t); G off-diagonals carry -H/denom
            cplx up = -std::conj(m.offdiag[t]) * psi[t + 1] / (psi[t] * denom);
            cplx down = -m.offdiag[t] * psi[t] / (psi[t + 1] * denom);
            if (std::abs(up.imag()) > 1e-9 || std::abs(down.imag()) > 1e-9)
                throw numerical_error("quantum_to_classical: transition probabilities are not real");
            p[t][t + 1] = up.real();
            p[t + 1][t] = down.real();
            worst_negative = std::min({worst_negative, up.real(), down.real()});
        }
    }
    if (worst_negative < -1e-10)
        throw numerical_error("quantum_to_classical: negative transition probability " +
                              std::to_string(worst_negative));
    // clamp roundoff negatives and renormalize rows
    for (int t = 0; t < n; ++t) {
        double row = 0.0;
        for (double& x : p[t]) {
            if (x < 0.0) x = 0.0;
            row += x;
        }
        for (double& x : p[t]) x /= row;
    }

    out.chain.emplace(std::move(p), std::move(pi));
    out.gap_p = out.chain->spectral_gap();
    return out;
}

Vector orthogonal_excitation(const ComplexTridiagonal& m, const Vector& psi, int tprime) {
    const int n = m.dim();
    if (static_cast<int>(psi.size()) != n) throw std::invalid_argument("orthogonal_excitation: size mismatch");
    if (tprime < 0 || tprime + 1 >= n) throw std::invalid_argument("orthogonal_excitation: cut index out of range");
    if (std::abs(m.offdiag[tprime]) > kEntryTol)
        throw std::invalid_argument("orthogonal_excitation: b_{t'} must vanish at the cut");
    double w_left = 0.0, w_right = 0.0;
    for (int t = 0; t <= tprime; ++t) w_left += std::norm(psi[t]);
    for (int t = tprime + 1; t < n; ++t) w_right += std::norm(psi[t]);
    if (w_left <= 0.0 || w_right <= 0.0)
        throw std::invalid_argument("orthogonal_excitation: psi must have weight on both sides of the cut");
    Vector perp(n);
    for (int t = 0; t < n; ++t) perp[t] = (t <= tprime) ? psi[t] / w_left : -psi[t] / w_right;
    return perp;
}

double birth_death_ell(const MarkovChain& mc) {
    if (!mc.is_tridiagonal(1e-12)) throw std::invalid_argument("birth_death_ell: chain is not birth-death");
    const int n = mc.dim();
    const int T = n - 1;
    // median index: smallest i' with cumulative pi >= 1/2 (then automatically
    // pi([i',T]) >= 1/2 as well)
    int ip = 0;
    double cum = 0.0;
    for (int t = 0; t < n; ++t) {
        cum += mc.pi[t];
        if (cum >= 0.5) {
            ip = t;
            break;
        }
    }
    std::vector<double> prefix(n + 1, 0.0);
    for (int t = 0; t < n; ++t) prefix[t + 1] = prefix[t] + mc.pi[t];

    double ell = 0.0;
    for (int j = 0; j <= ip; ++j) {
        double s = 0.0;
        for (int k = j; k <= ip - 1; ++k) {
            double flow = mc.pi[k] * mc.p[k][k + 1];
            if (flow <= 0.0) return std::numeric_limits<double>::infinity();
            s += 1.0 / flow;
        }
        ell = std::max(ell, prefix[j + 1] * s);  // pi([0, j]) * sum
    }
    for (int j = ip + 1; j <= T; ++j) {
        double s = 0.0;
        for (int k = ip + 1; k <= j; ++k) {
            double flow = mc.pi[k] * mc.p[k][k - 1];
            if (flow <= 0.0) return std::numeric_limits<double>::infinity();
            s += 1.0 / flow;
        }
        ell = std::max(ell, (prefix[n] - prefix[j]) * s);  // pi([j, T]) * sum
    }
    return ell;
}

namespace {

ProductBound product_bound_impl(const SymTridiagonal& sym, const std::vector<cplx>& original_off) {
    for (double a : sym.diag)
        if (std::abs(a) > 1.0 + 1e-9)
            throw std::invalid_argument("tridiag_product_bound: |a_t| <= 1 violated");
    for (const cplx& b : original_off)
        if (std::abs(b) > 1.0 + 1e-9)
            throw std::invalid_argument("tridiag_product_bound: |b_t| <= 1 violated");
    auto [e0, e1] = tridiag_lowest_two(sym);
    ProductBound out{};
    out.gap = e1 - e0;
    out.degenerate = out.gap <= degeneracy_threshold(sym.norm_bound());
    if (out.degenerate) {
        out.gap = e1 - e0;
        out.min_endpoint = 0.0;
        out.product = 0.0;
        return out;
    }
    std::vector<double> v = tridiag_eigenvector(sym, e0);
    out.min_endpoint = std::min(v.front() * v.front(), v.back() * v.back());
    out.product = out.gap * out.min_endpoint;
    return out;
}

}  // namespace

ProductBound tridiag_product_bound(const ComplexTridiagonal& m) {
    auto gauge = gauge_reduce(m);
    return product_bound_impl(gauge.matrix, m.offdiag);
}

ProductBound tridiag_product_bound(const SymTridiagonal& m) {
    std::vector<cplx> off(m.offdiag.begin(), m.offdiag.end());
    return product_bound_impl(m, off);
}

}  // namespace clockforge
