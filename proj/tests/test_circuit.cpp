#include <doctest.h>

#include <algorithm>

#include "clockforge/circuit.hpp"
#include "clockforge/eig.hpp"
#include "clockforge/json_io.hpp"
#include "oracles.hpp"

using namespace clockforge;

namespace {

// rejecting instance: valid input |0...0>, identity gates, output qubit
// penalized in |0> (which the identity reaches) -> epsilon = 0
Circuit identity_circuit(int n, int T) {
    std::vector<Gate> gates(T, named_gate("I", {0}));
    return Circuit(n, std::move(gates));
}

PenaltyPair rejecting_penalties(int n) {
    const int d = 1 << n;
    Matrix pin(d, d);
    for (int x = 0; x < d; ++x)
        if ((x >> (n - 1)) & 1) pin(x, x) = 1.0;  // qubit 0 must be |0>
    Matrix pout(d, d);
    for (int x = 0; x < d; ++x)
        if (!((x >> (n - 1)) & 1)) pout(x, x) = 1.0;  // penalize qubit 0 in |0>
    return PenaltyPair(std::move(pin), std::move(pout));
}

ClockWeights theorem1_weights(int T) {
    auto t1 = theorem1_matrix(T);
    std::vector<cplx> b(t1.offdiag.begin(), t1.offdiag.end());
    return ClockWeights(T, t1.diag, std::move(b));
}

}  // namespace

TEST_CASE("circuit_unitary basics") {
    Circuit cx(1, {named_gate("X", {0})});
    auto ux = circuit_unitary(cx);
    CHECK(ux(0, 1) == cplx(1.0));
    CHECK(ux(1, 0) == cplx(1.0));

    Circuit cxx(1, {named_gate("X", {0}), named_gate("X", {0})});
    CHECK((circuit_unitary(cxx) - Matrix::identity(2)).max_abs() < 1e-14);

    Circuit hzh(1, {named_gate("H", {0}), named_gate("Z", {0}), named_gate("H", {0})});
    CHECK((circuit_unitary(hzh) - circuit_unitary(cx)).max_abs() < 1e-12);
}

TEST_CASE("circuit qubit cap") {
    CHECK_THROWS_AS(circuit_unitary(identity_circuit(7, 1)), std::invalid_argument);
}

TEST_CASE("embedding respects target order on entangling gates") {
    // CNOT with control 1, target 0 flips qubit 0 when qubit 1 is set
    Circuit c(2, {named_gate("CNOT", {1, 0})});
    Matrix u = circuit_unitary(c);
    // |01> (index 1) -> |11> (index 3)
    CHECK(u(3, 1) == cplx(1.0));
    CHECK(u(1, 3) == cplx(1.0));
    CHECK(u(0, 0) == cplx(1.0));
    CHECK(u(2, 2) == cplx(1.0));
}

TEST_CASE("history_unitary is unitary and block-structured") {
    Circuit id = identity_circuit(1, 3);
    CHECK((history_unitary(id) - Matrix::identity(8)).max_abs() < 1e-14);

    Circuit cx(1, {named_gate("X", {0})});
    auto w = history_unitary(cx);
    CHECK(w(0, 0) == cplx(1.0));
    CHECK(w(1, 1) == cplx(1.0));
    CHECK(w(2, 3) == cplx(1.0));
    CHECK(w(3, 2) == cplx(1.0));
}

TEST_CASE("lemma-1 conjugation carries h_prop to the clock Hamiltonian") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng.below(3));
        int T = 2 + static_cast<int>(rng.below(7));
        Circuit c = oracles::random_circuit(rng, n, T);
        ClockWeights w = oracles::random_weights(rng, T);
        auto hp = h_prop(w, c);
        Matrix wmat = history_unitary(c);
        Matrix conj = wmat.adjoint() * (hp.matrix() * wmat);
        Matrix target = kron(clock_tridiagonal(w).dense(), Matrix::identity(1 << n));
        CHECK((conj - target).max_abs() < 1e-9);
    }
}

TEST_CASE("h_prop spectrum is the clock spectrum with multiplicity") {
    Rng rng(7);
    Circuit c = oracles::random_circuit(rng, 2, 4);
    ClockWeights w = oracles::random_weights(rng, 4);
    auto dense = eig_hermitian(h_prop(w, c));
    auto clock = eig_tridiagonal(gauge_reduce(clock_tridiagonal(w)).matrix);
    for (int k = 0; k < 5; ++k)
        for (int m = 0; m < 4; ++m)
            CHECK(std::abs(dense.eigenvalues[4 * k + m] - clock.eigenvalues[k]) < 1e-9);
}

TEST_CASE("h_prop identity circuit with kitaev weights is the Laplacian tensor identity") {
    Circuit c = identity_circuit(1, 2);
    auto hp = h_prop(kitaev_weights(2), c);
    Matrix target = kron(clock_hamiltonian(kitaev_weights(2)).matrix(), Matrix::identity(2));
    CHECK((hp.matrix() - target).max_abs() < 1e-14);

    Circuit cx(1, {named_gate("X", {0})});
    auto d = eig_hermitian(h_prop(kitaev_weights(1), cx));
    std::vector<double> expect{0, 0, 2, 2};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(d.eigenvalues[i] - expect[i]) < 1e-10);
}

TEST_CASE("h_prop rejects mismatched weight length") {
    CHECK_THROWS_AS(h_prop(kitaev_weights(3), identity_circuit(1, 2)), std::invalid_argument);
}

TEST_CASE("h_fk reduces to h_prop for zero penalties and to the endpoint clock for full ones") {
    Circuit c = identity_circuit(1, 3);
    const int d = 2;
    PenaltyPair zero(Matrix::zero(d, d), Matrix::zero(d, d));
    auto w = kitaev_weights(3);
    CHECK((h_fk(w, c, zero).matrix() - h_prop(w, c).matrix()).max_abs() == 0.0);

    PenaltyPair full(Matrix::identity(d), Matrix::identity(d));
    auto dfk = eig_hermitian(h_fk(w, c, full));
    auto endpoint = eig_tridiagonal(endpoint_penalized_clock(3));
    for (int k = 0; k < 4; ++k)
        for (int m = 0; m < 2; ++m)
            CHECK(std::abs(dfk.eigenvalues[2 * k + m] - endpoint.eigenvalues[k]) < 1e-9);

    auto rej = rejecting_penalties(1);
    CHECK(ground_state(h_fk(w, c, rej)).energy > 1e-4);
}

TEST_CASE("acceptance probability worked examples") {
    Matrix pin(2, 2), pout(2, 2);
    pin(1, 1) = 1;   // valid input |0>
    pout(0, 0) = 1;  // valid output |1>
    PenaltyPair p(pin, pout);

    CHECK(acceptance_probability(identity_circuit(1, 1), p).epsilon == doctest::Approx(0.0).scale(1));
    CHECK(acceptance_probability(Circuit(1, {named_gate("X", {0})}), p).epsilon == doctest::Approx(1.0));
    CHECK(acceptance_probability(Circuit(1, {named_gate("H", {0})}), p).epsilon ==
          doctest::Approx(0.5).epsilon(1e-10));

    PenaltyPair trivial(Matrix::identity(2), Matrix::identity(2));
    auto res = acceptance_probability(identity_circuit(1, 1), trivial);
    CHECK(res.trivial_kernel);
    CHECK(res.epsilon == 0.0);
}

TEST_CASE("acceptance probability is invariant under appending identity gates") {
    Rng rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        Circuit c = oracles::random_circuit(rng, 2, 3);
        auto p = standard_penalties(2, {1}, 0);
        double e1 = acceptance_probability(c, p).epsilon;
        std::vector<Gate> padded = c.gates;
        padded.push_back(named_gate("I", {0}));
        padded.push_back(named_gate("I", {1}));
        double e2 = acceptance_probability(Circuit(2, std::move(padded)), p).epsilon;
        CHECK(std::abs(e1 - e2) < 1e-10);
    }
}

TEST_CASE("unsat penalty vanishes without penalties and is positive for rejecting instances") {
    Circuit c = identity_circuit(1, 4);
    PenaltyPair zero(Matrix::zero(2, 2), Matrix::zero(2, 2));
    CHECK(unsat_penalty(kitaev_weights(4), c, zero) == doctest::Approx(0.0).scale(1));

    auto rej = rejecting_penalties(1);
    CHECK(unsat_penalty(kitaev_weights(4), c, rej) > 1e-4);
    CHECK(unsat_penalty(theorem1_weights(4), c, rej) > 1e-4);
}

TEST_CASE("geometrical lower bound formula") {
    CHECK(geometrical_lower_bound(0.1, 0.25, 0.25, 0.5) == doctest::Approx(0.003125));
    CHECK(geometrical_lower_bound(0.1, 1.0, 0.25, 0.5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(geometrical_lower_bound(-1, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("lemma-2 sandwich holds on rejecting instances") {
    for (int T : {4, 8}) {
        for (bool kitaev : {true, false}) {
            Circuit c = identity_circuit(2, T);
            auto p = rejecting_penalties(2);
            ClockWeights w = kitaev ? kitaev_weights(T) : theorem1_weights(T);
            auto rep = lemma2_sandwich(w, c, p);
            CHECK(rep.lower <= rep.penalty + 1e-10);
            CHECK(rep.penalty <= rep.upper + 1e-10);
            CHECK(rep.epsilon == doctest::Approx(0.0).scale(1));
            CHECK(rep.hypothesis_holds);
        }
    }
}

TEST_CASE("projector pair quantities: orthogonal case and the Hadamard block") {
    // exactly orthogonal supports (eps = 0): every eta vanishes and the
    // kernel-side weights are mu = 1
    Matrix pin(2, 2), pout2(2, 2);
    pin(1, 1) = 1;
    pout2(0, 0) = 1;
    auto blocks0 = projector_pair_quantities(PenaltyPair(pin, pout2), Matrix::identity(2));
    REQUIRE(blocks0.size() == 2);
    for (const auto& b : blocks0) CHECK(b.eta == doctest::Approx(0.0).scale(1));
    CHECK(blocks0[0].lambda == doctest::Approx(0.0).scale(1));  // e-side
    CHECK(blocks0[1].mu == doctest::Approx(1.0));               // f-side

    Circuit h(1, {named_gate("H", {0})});
    auto blocks = projector_pair_quantities(PenaltyPair(pin, pout2), circuit_unitary(h));
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].two_dim);
    CHECK(blocks[0].mu == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(blocks[0].lambda == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(blocks[0].trace == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(blocks[0].eta == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("projector pair quantities on random NO instances") {
    Rng rng(17);
    int tested = 0;
    for (int trial = 0; trial < 120 && tested < 50; ++trial) {
        Circuit c = oracles::random_circuit(rng, 2, 4);
        auto p = standard_penalties(2, {0}, 0);  // rank-2 penalties on d = 4
        auto eps = acceptance_probability(c, p).epsilon;
        if (eps > 0.999) continue;  // need a NO-like instance with full-rank sum
        std::vector<ProjectorBlock> blocks;
        try {
            blocks = projector_pair_quantities(p, circuit_unitary(c));
        } catch (const std::invalid_argument&) {
            continue;  // rank deficiency: YES-like instance
        }
        ++tested;
        for (const auto& b : blocks) {
            if (!b.two_dim) continue;
            CHECK(std::abs(b.trace - 1.0) < 1e-9);
            CHECK(std::abs(b.xi - b.eta * b.mu) < 1e-9);
            CHECK(std::abs(b.lambda - b.eta * b.eta * b.mu) < 1e-9);
        }
        CHECK(projector_blocks_satisfy_bounds(blocks, eps));
        // Jordan-angle cross-check: the lambdas are squared principal-angle
        // cosines between supp Pi_in and U+ supp Pi_out U
        Matrix u = circuit_unitary(c);
        Matrix pi_tilde = u.adjoint() * (p.pi_out * u);
        auto cosines = principal_angles(HermitianMatrix(p.pi_in), HermitianMatrix(pi_tilde, 1e-9));
        std::vector<double> lambdas;
        for (const auto& b : blocks) lambdas.push_back(b.lambda);
        std::sort(lambdas.rbegin(), lambdas.rend());
        for (size_t i = 0; i < std::min(cosines.size(), lambdas.size()); ++i)
            CHECK(std::abs(cosines[i] * cosines[i] - lambdas[i]) < 1e-8);
    }
    CHECK(tested == 50);
}

TEST_CASE("projector pair quantities rejects rank-deficient and low-rank hypotheses") {
    // YES instance: |0> sits in both kernels, so Pi_in + Pi_tilde is singular
    Matrix pin(2, 2), pout(2, 2);
    pin(1, 1) = 1;
    pout(1, 1) = 1;
    CHECK_THROWS_AS(projector_pair_quantities(PenaltyPair(pin, pout), Matrix::identity(2)),
                    std::invalid_argument);
    // rank below d/2
    Matrix small(4, 4);
    small(0, 0) = 1;
    CHECK_THROWS_AS(projector_pair_quantities(PenaltyPair(small, Matrix::identity(4)), Matrix::identity(4)),
                    std::invalid_argument);
}

TEST_CASE("padded construction endpoints and bound") {
    auto p = rejecting_penalties(1);

    // epsilon = 0: rejecting identity, T = 4
    auto pad0 = padded_construction(identity_circuit(1, 4), p);
    CHECK(pad0.epsilon == doctest::Approx(0.0).scale(1));
    CHECK(pad0.cos2theta <= 0.75 + 1e-9);

    // epsilon = 1: the X circuit satisfies the penalties, kernels are compatible
    std::vector<Gate> g(4, named_gate("I", {0}));
    g[0] = named_gate("X", {0});
    auto pad1 = padded_construction(Circuit(1, std::move(g)), p);
    CHECK(pad1.epsilon == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pad1.cos2theta == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(padded_construction(identity_circuit(1, 3), p), std::invalid_argument);
}

TEST_CASE("padded construction cos^2 bound on random circuits") {
    Rng rng(3);
    for (int trial = 0; trial < 8; ++trial) {
        Circuit c = oracles::random_circuit(rng, 2, 4);
        auto p = standard_penalties(2, {1}, 0);
        auto pad = padded_construction(c, p);  // asserts the bound internally
        CHECK(pad.cos2theta <= (3.0 + std::sqrt(pad.epsilon)) / 4.0 + 1e-9);
    }
}

TEST_CASE("circuit json round trip") {
    Rng rng(19);
    Circuit c = oracles::random_circuit(rng, 2, 5);
    Circuit back = circuit_from_json(circuit_to_json(c));
    CHECK((circuit_unitary(back) - circuit_unitary(c)).max_abs() < 1e-14);
}
