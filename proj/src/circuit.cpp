#include "clockforge/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "clockforge/eig.hpp"

namespace clockforge {

namespace {

constexpr double kUnitaryTol = 1e-10;

void check_unitary(const Matrix& u, const std::string& what, double tol = kUnitaryTol) {
    Matrix g = u.adjoint() * u;
    g -= Matrix::identity(u.rows());
    if (g.max_abs() > tol) throw std::invalid_argument(what + ": matrix is not unitary (defect " +
                                                       std::to_string(g.max_abs()) + ")");
}

int check_qubit_cap(const Circuit& c, int qubit_cap) {
    if (c.n > qubit_cap)
        throw std::invalid_argument("circuit: qubit count " + std::to_string(c.n) + " exceeds cap " +
                                    std::to_string(qubit_cap));
    return 1 << c.n;
}

}  // namespace

Gate::Gate(Matrix u, std::vector<int> t, std::string n) : unitary(std::move(u)), targets(std::move(t)), name(std::move(n)) {
    if (targets.empty()) throw std::invalid_argument("Gate: no target qubits");
    long d = 1L << targets.size();
    if (unitary.rows() != d || unitary.cols() != d)
        throw std::invalid_argument("Gate: unitary dimension does not match target count");
    check_unitary(unitary, "Gate");
}

Gate named_gate(const std::string& name, std::vector<int> targets) {
    const cplx i(0.0, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    Matrix m;
    if (name == "I") {
        m = Matrix::identity(2);
    } else if (name == "X") {
        m = Matrix(2, 2);
        m(0, 1) = 1;
        m(1, 0) = 1;
    } else if (name == "Y") {
        m = Matrix(2, 2);
        m(0, 1) = -i;
        m(1, 0) = i;
    } else if (name == "Z") {
        m = Matrix(2, 2);
        m(0, 0) = 1;
        m(1, 1) = -1;
    } else if (name == "H") {
        m = Matrix(2, 2);
        m(0, 0) = s;
        m(0, 1) = s;
        m(1, 0) = s;
        m(1, 1) = -s;
    } else if (name == "S") {
        m = Matrix(2, 2);
        m(0, 0) = 1;
        m(1, 1) = i;
    } else if (name == "T") {
        m = Matrix(2, 2);
        m(0, 0) = 1;
        m(1, 1) = std::polar(1.0, M_PI / 4);
    } else if (name == "CNOT") {
        m = Matrix::identity(4);
        m(2, 2) = 0;
        m(3, 3) = 0;
        m(2, 3) = 1;
        m(3, 2) = 1;
    } else {
        throw std::invalid_argument("named_gate: unknown gate '" + name + "'");
    }
    return Gate(std::move(m), std::move(targets), name);
}

Circuit::Circuit(int n_, std::vector<Gate> gates_) : n(n_), gates(std::move(gates_)) {
    if (n < 1) throw std::invalid_argument("Circuit: need at least one qubit");
    if (gates.empty()) throw std::invalid_argument("Circuit: need at least one gate (T >= 1)");
    for (const Gate& g : gates)
        for (int t : g.targets)
            if (t < 0 || t >= n) throw std::invalid_argument("Circuit: gate target out of range");
}

PenaltyPair::PenaltyPair(Matrix in, Matrix out, double idem_tol) : pi_in(std::move(in)), pi_out(std::move(out)) {
    auto check = [&](const Matrix& m, const char* what) {
        if (!m.is_square() || m.rows() != pi_in.rows())
            throw std::invalid_argument(std::string("PenaltyPair: ") + what + " has wrong shape");
        if (m.hermiticity_defect() > idem_tol)
            throw std::invalid_argument(std::string("PenaltyPair: ") + what + " is not Hermitian");
        Matrix d = m * m - m;
        if (d.max_abs() > idem_tol)
            throw std::invalid_argument(std::string("PenaltyPair: ") + what + " is not idempotent");
    };
    check(pi_in, "Pi_in");
    check(pi_out, "Pi_out");
}

PenaltyPair standard_penalties(int n, const std::vector<int>& in_ancillas, int out_qubit) {
    if (out_qubit < 0 || out_qubit >= n) throw std::invalid_argument("standard_penalties: bad output qubit");
    const int d = 1 << n;
    Matrix pin(d, d);
    // penalize any listed ancilla away from |0>: 1 - prod |0><0|
    for (int x = 0; x < d; ++x) {
        bool all_zero = true;
        for (int q : in_ancillas) {
            if (q < 0 || q >= n) throw std::invalid_argument("standard_penalties: bad ancilla index");
            if ((x >> (n - 1 - q)) & 1) all_zero = false;
        }
        pin(x, x) = all_zero ? 0.0 : 1.0;
    }
    Matrix pout(d, d);
    for (int x = 0; x < d; ++x) {
        bool out_zero = ((x >> (n - 1 - out_qubit)) & 1) == 0;
        pout(x, x) = out_zero ? 1.0 : 0.0;  // penalizes output qubit in |0>
    }
    return PenaltyPair(std::move(pin), std::move(pout));
}

Matrix embed_gate(const Gate& g, int n) {
    const int d = 1 << n;
    const int k = static_cast<int>(g.targets.size());
    Matrix full(d, d);
    for (int x = 0; x < d; ++x) {
        // extract the target-qubit bits of the column index
        int col_sub = 0;
        for (int b = 0; b < k; ++b) col_sub = (col_sub << 1) | ((x >> (n - 1 - g.targets[b])) & 1);
        for (int row_sub = 0; row_sub < (1 << k); ++row_sub) {
            const cplx amp = g.unitary(row_sub, col_sub);
            if (amp == cplx(0.0)) continue;
            int y = x;
            for (int b = 0; b < k; ++b) {
                int bit = (row_sub >> (k - 1 - b)) & 1;
                int pos = n - 1 - g.targets[b];
                y = (y & ~(1 << pos)) | (bit << pos);
            }
            full(y, x) = amp;
        }
    }
    return full;
}

Matrix circuit_unitary(const Circuit& c, int qubit_cap) {
    const int d = check_qubit_cap(c, qubit_cap);
    Matrix u = Matrix::identity(d);
    for (const Gate& g : c.gates) u = embed_gate(g, c.n) * u;
    check_unitary(u, "circuit_unitary", 1e-9);
    return u;
}

Matrix history_unitary(const Circuit& c, int qubit_cap) {
    const int d = check_qubit_cap(c, qubit_cap);
    const int T = c.T();
    Matrix w((T + 1) * d, (T + 1) * d);
    Matrix prefix = Matrix::identity(d);
    for (int t = 0; t <= T; ++t) {
        if (t > 0) prefix = embed_gate(c.gates[t - 1], c.n) * prefix;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) w(t * d + i, t * d + j) = prefix(i, j);
    }
    check_unitary(w, "history_unitary", 1e-9);
    return w;
}

HermitianMatrix h_prop(const ClockWeights& w, const Circuit& c, int qubit_cap) {
    if (w.T != c.T())
        throw std::invalid_argument("h_prop: weight length " + std::to_string(w.T) + " does not match circuit T " +
                                    std::to_string(c.T()));
    const int d = check_qubit_cap(c, qubit_cap);
    const int T = c.T();
    Matrix h((T + 1) * d, (T + 1) * d);
    for (int t = 0; t <= T; ++t)
        for (int i = 0; i < d; ++i) h(t * d + i, t * d + i) += w.a[t];
    for (int t = 0; t < T; ++t) {
        Matrix u = embed_gate(c.gates[t], c.n);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const cplx z = w.b[t] * u(i, j);
                if (z == cplx(0.0)) continue;
                h((t + 1) * d + i, t * d + j) += z;
                h(t * d + j, (t + 1) * d + i) += std::conj(z);
            }
    }
    return HermitianMatrix(h);
}

HermitianMatrix h_fk(const ClockWeights& w, const Circuit& c, const PenaltyPair& p, int qubit_cap) {
    const int d = check_qubit_cap(c, qubit_cap);
    if (p.dim() != d) throw std::invalid_argument("h_fk: penalty dimension does not match circuit");
    const int T = c.T();
    Matrix h = h_prop(w, c, qubit_cap).matrix();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            h(i, j) += p.pi_in(i, j);
            h(T * d + i, T * d + j) += p.pi_out(i, j);
        }
    return HermitianMatrix(h);
}

AcceptanceResult acceptance_probability(const Circuit& c, const PenaltyPair& p, int qubit_cap) {
    const int d = check_qubit_cap(c, qubit_cap);
    if (p.dim() != d) throw std::invalid_argument("acceptance_probability: penalty dimension mismatch");
    Matrix q_in_basis = kernel_basis(HermitianMatrix(p.pi_in));
    Matrix q_out_basis = kernel_basis(HermitianMatrix(p.pi_out));
    if (q_in_basis.cols() == 0 || q_out_basis.cols() == 0) return {0.0, true};
    Matrix u = circuit_unitary(c, qubit_cap);
    // epsilon = sigma_max(Q_out U Q_in)^2 over the kernel bases
    Matrix m = q_out_basis.adjoint() * (u * q_in_basis);
    Matrix gram = m.adjoint() * m;
    auto dec = eig_hermitian(HermitianMatrix(gram, 1e-9));
    double eps = std::clamp(dec.eigenvalues.back(), 0.0, 1.0);
    return {eps, false};
}

double unsat_penalty(const ClockWeights& w, const Circuit& c, const PenaltyPair& p, int qubit_cap) {
    double e_fk = ground_state(h_fk(w, c, p, qubit_cap)).energy;
    double e_prop = ground_state(h_prop(w, c, qubit_cap)).energy;
    double penalty = e_fk - e_prop;
    if (penalty < -1e-10) throw numerical_error("unsat_penalty: negative penalty " + std::to_string(penalty));
    return std::max(0.0, penalty);
}

double geometrical_lower_bound(double gap, double eps, double pi0, double piT) {
    if (gap < 0.0 || eps < 0.0 || eps > 1.0 || pi0 < 0.0 || pi0 > 1.0 || piT < 0.0 || piT > 1.0)
        throw std::invalid_argument("geometrical_lower_bound: inputs out of range");
    return 0.25 * gap * (1.0 - std::sqrt(eps)) * std::min(pi0, piT);
}

SandwichReport lemma2_sandwich(const ClockWeights& w, const Circuit& c, const PenaltyPair& p, int qubit_cap) {
    SandwichReport r{};
    auto gauge = gauge_reduce(clock_tridiagonal(w));
    auto clock_ground = ground_state(gauge.matrix);
    r.clock_gap = spectral_gap(gauge.matrix);
    r.pi0 = std::norm(clock_ground.state.front());
    r.piT = std::norm(clock_ground.state.back());
    r.epsilon = acceptance_probability(c, p, qubit_cap).epsilon;
    r.lower = geometrical_lower_bound(r.clock_gap, r.epsilon, r.pi0, r.piT);
    r.penalty = unsat_penalty(w, c, p, qubit_cap);

    SymTridiagonal endpoint = gauge.matrix;
    endpoint.diag.front() += 1.0;
    endpoint.diag.back() += 1.0;
    r.upper = tridiag_ground_energy(endpoint) - tridiag_ground_energy(gauge.matrix);

    // hypothesis of the geometrical lemma: clock gap below the penalty-term gap
    const int d = p.dim();
    const int T = c.T();
    Matrix pen((T + 1) * d, (T + 1) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            pen(i, j) += p.pi_in(i, j);
            pen(T * d + i, T * d + j) += p.pi_out(i, j);
        }
    auto pen_dec = eig_hermitian(HermitianMatrix(pen));
    double first_nonzero = 0.0;
    for (double e : pen_dec.eigenvalues)
        if (e > 1e-9) {
            first_nonzero = e;
            break;
        }
    r.penalty_gap = first_nonzero;
    r.hypothesis_holds = r.clock_gap < r.penalty_gap;
    return r;
}

std::vector<ProjectorBlock> projector_pair_quantities(const PenaltyPair& p, const Matrix& u) {
    const int d = p.dim();
    if (u.rows() != d || u.cols() != d) throw std::invalid_argument("projector_pair_quantities: U dimension mismatch");
    check_unitary(u, "projector_pair_quantities");
    Matrix pi_tilde = u.adjoint() * (p.pi_out * u);

    auto in_dec = eig_hermitian(HermitianMatrix(p.pi_in));
    int rank_in = 0, rank_out = 0;
    for (double e : in_dec.eigenvalues) rank_in += (e > 0.5);
    auto out_dec = eig_hermitian(HermitianMatrix(p.pi_out));
    for (double e : out_dec.eigenvalues) rank_out += (e > 0.5);
    if (2 * rank_in < d || 2 * rank_out < d)
        throw std::invalid_argument(
            "projector_pair_quantities: rank hypothesis violated (need rank Pi_in, rank Pi_out >= d/2)");

    // full-rank hypothesis of the NO-instance lemma
    Matrix sum = p.pi_in + pi_tilde;
    auto sum_dec = eig_hermitian(HermitianMatrix(sum, 1e-9));
    if (sum_dec.eigenvalues.front() <= 1e-9)
        throw std::invalid_argument(
            "projector_pair_quantities: Pi_in + U+ Pi_out U is rank deficient (YES-like instance)");

    // Jordan pairing: diagonalize Pi_tilde restricted to supp Pi_in; each
    // eigenvector with weight in (0,1) pairs with a partner in ker Pi_in.
    Matrix supp_in = eigenspace_basis(HermitianMatrix(p.pi_in), 0.5, 2.0);  // d x r
    Matrix restricted = supp_in.adjoint() * (pi_tilde * supp_in);
    auto rd = eig_hermitian(HermitianMatrix(restricted, 1e-9));

    std::vector<ProjectorBlock> blocks;
    std::vector<Vector> partners;  // consumed directions inside ker Pi_in
    const double edge_tol = 1e-9;
    for (int k = 0; k < restricted.rows(); ++k) {
        double lambda = std::clamp(rd.eigenvalues[k], 0.0, 1.0);
        // e' = supp_in * u_k
        Vector e_vec(d, cplx(0.0));
        for (int i = 0; i < d; ++i) {
            cplx acc = 0.0;
            for (int c2 = 0; c2 < supp_in.cols(); ++c2) acc += supp_in(i, c2) * rd.eigenvectors(c2, k);
            e_vec[i] = acc;
        }
        ProjectorBlock b{};
        b.lambda = lambda;
        if (lambda < 1.0 - edge_tol && lambda > edge_tol) {
            // partner w = (1 - Pi_in) Pi_tilde e' normalized
            Vector t = pi_tilde.apply(e_vec);
            Vector w = p.pi_in.apply(t);
            for (int i = 0; i < d; ++i) w[i] = t[i] - w[i];
            double wn = norm2(w);
            if (wn < 1e-12) throw numerical_error("projector_pair_quantities: degenerate Jordan partner");
            for (auto& x : w) x /= wn;
            cplx xi = dot(e_vec, pi_tilde.apply(w));
            double mu = dot(w, pi_tilde.apply(w)).real();
            b.mu = mu;
            b.xi = std::abs(xi);
            b.eta = (mu > 0.0) ? std::sqrt(std::max(0.0, lambda / mu)) : 0.0;
            b.trace = lambda + mu;
            b.two_dim = true;
            partners.push_back(std::move(w));
        } else {
            // e' lies (numerically) inside supp or ker of Pi_tilde: 1-d block
            b.mu = 0.0;
            b.xi = 0.0;
            b.eta = 0.0;
            b.trace = lambda;
            b.two_dim = false;
        }
        blocks.push_back(b);
    }

    // kernel-side one-dimensional blocks: directions of ker Pi_in not consumed
    // as Jordan partners carry Pi_tilde weight mu on their own (mu = 1 under
    // the full-rank hypothesis; eps = 0 instances report eta = 0, mu = 1 here)
    Matrix ker_in = eigenspace_basis(HermitianMatrix(p.pi_in), -0.5, 0.5);
    std::vector<Vector> kept = partners;
    const size_t expected_leftover = static_cast<size_t>(ker_in.cols()) - partners.size();
    for (int c = 0; c < ker_in.cols() && kept.size() - partners.size() < expected_leftover; ++c) {
        Vector f(d);
        for (int i = 0; i < d; ++i) f[i] = ker_in(i, c);
        for (const Vector& w : kept) {
            cplx ip = dot(w, f);
            for (int i = 0; i < d; ++i) f[i] -= ip * w[i];
        }
        double fn = norm2(f);
        if (fn < 1e-6) continue;  // inside the span already accounted for
        for (auto& x : f) x /= fn;
        ProjectorBlock b{};
        b.lambda = 0.0;
        b.mu = dot(f, pi_tilde.apply(f)).real();
        b.xi = 0.0;
        b.eta = 0.0;
        b.trace = b.mu;
        b.two_dim = false;
        blocks.push_back(b);
        kept.push_back(std::move(f));
    }
    return blocks;
}

bool projector_blocks_satisfy_bounds(const std::vector<ProjectorBlock>& blocks, double eps, double tol) {
    for (const ProjectorBlock& b : blocks) {
        if (!b.two_dim) continue;
        if (b.mu < 1.0 - eps - tol) return false;
        if (b.lambda > eps + tol) return false;
        if (std::abs(b.trace - 1.0) > tol) return false;
        if (std::abs(b.xi - b.eta * b.mu) > tol) return false;
        if (std::abs(b.lambda - b.eta * b.eta * b.mu) > tol) return false;
        if (eps < 1.0 && b.eta > std::sqrt(eps / (1.0 - eps)) + tol) return false;
    }
    return true;
}

PaddedConstruction padded_construction(const Circuit& c, const PenaltyPair& p, int qubit_cap) {
    const int T = c.T();
    if (T % 2 != 0) throw std::invalid_argument("padded_construction: T must be divisible by 2");
    const int d = check_qubit_cap(c, qubit_cap);
    if (p.dim() != d) throw std::invalid_argument("padded_construction: penalty dimension mismatch");

    // pad with T/2 identities on each side: 2T gates, clock 0..2T
    std::vector<Gate> padded;
    Gate id = named_gate("I", {0});
    for (int i = 0; i < T / 2; ++i) padded.push_back(id);
    for (const Gate& g : c.gates) padded.push_back(g);
    for (int i = 0; i < T / 2; ++i) padded.push_back(id);
    Circuit pc(c.n, std::move(padded));

    HermitianMatrix h = h_prop(kitaev_weights(2 * T), pc, qubit_cap);

    const int clock = 2 * T + 1;
    Matrix pen(clock * d, clock * d);
    for (int t = 0; t <= T / 2; ++t)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) pen(t * d + i, t * d + j) += p.pi_in(i, j);
    for (int t = 3 * T / 2; t <= 2 * T; ++t)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) pen(t * d + i, t * d + j) += p.pi_out(i, j);
    HermitianMatrix penalty(pen);

    Matrix ker_h = kernel_basis(h);
    Matrix ker_p = kernel_basis(penalty);
    double cos2 = 0.0;
    if (ker_h.cols() > 0 && ker_p.cols() > 0) {
        Matrix m = ker_h.adjoint() * ker_p;
        Matrix gram = m * m.adjoint();
        auto dec = eig_hermitian(HermitianMatrix(gram, 1e-9));
        cos2 = std::clamp(dec.eigenvalues.back(), 0.0, 1.0);
    }

    PaddedConstruction out{std::move(h), std::move(penalty), cos2,
                           acceptance_probability(c, p, qubit_cap).epsilon, 0.0};
    double e_h = ground_state(out.h).energy;
    double e_hp = ground_state(HermitianMatrix(out.h.matrix() + out.penalty.matrix())).energy;
    out.unsat = std::max(0.0, e_hp - e_h);

    double bound = (3.0 + std::sqrt(out.epsilon)) / 4.0 + 1e-9;
    if (cos2 > bound)
        throw numerical_error("padded_construction: cos^2(theta) " + std::to_string(cos2) +
                              " exceeds the (3 + sqrt(eps))/4 bound");
    return out;
}

}  // namespace clockforge
