#include <doctest.h>

#include "clockforge/clock.hpp"
#include "clockforge/eig.hpp"
#include "clockforge/json_io.hpp"
#include "clockforge/markov.hpp"
#include "oracles.hpp"

using namespace clockforge;

namespace {

MarkovChain metropolis_as_chain(const TimeDistribution& dist) {
    auto c = metropolis_chain(dist);
    return MarkovChain(c.dense(), c.pi);
}

}  // namespace

TEST_CASE("markov chain validation") {
    CHECK_THROWS_AS(MarkovChain({{0.5, 0.4}, {0.5, 0.5}}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(MarkovChain({{1.2, -0.2}, {0.0, 1.0}}, {0.5, 0.5}), std::invalid_argument);
    // detailed balance violation: asymmetric flow with uniform pi
    CHECK_THROWS_AS(MarkovChain({{0.2, 0.8}, {0.3, 0.7}}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("conductance of the uniform three-state metropolis chain") {
    auto mc = metropolis_as_chain(uniform_distribution(2));
    double exact = conductance(mc, ConductanceStrategy::exact);
    double interval = conductance(mc, ConductanceStrategy::interval);
    CHECK(exact == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(interval == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(oracles::brute_force_conductance(mc) == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("conductance of the lazy two-state chain") {
    MarkovChain two({{0.5, 0.5}, {0.5, 0.5}}, {0.5, 0.5});
    CHECK(conductance(two, ConductanceStrategy::exact) == doctest::Approx(0.5));
    CHECK(conductance(two, ConductanceStrategy::interval) == doctest::Approx(0.5));
}

TEST_CASE("theorem-1 chain edge flow") {
    for (int T : {8, 32}) {
        auto mc = metropolis_as_chain(theorem1_distribution(T));
        // P_{0,1} = 1/(2T-2); the singleton flow Q({0}, complement) is 1/(8T-8)
        CHECK(mc.p[0][1] == doctest::Approx(1.0 / (2.0 * T - 2.0)).epsilon(1e-12));
        double flow = mc.pi[0] * mc.p[0][1];
        CHECK(flow == doctest::Approx(1.0 / (8.0 * T - 8.0)).epsilon(1e-12));
        double phi_singleton = flow / std::min(mc.pi[0], 1.0 - mc.pi[0]);
        CHECK(phi_singleton == doctest::Approx(1.0 / (2.0 * T - 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("exact and interval strategies agree on birth-death chains") {
    Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        int T = 4 + static_cast<int>(rng.below(10));  // exact capped small
        auto mc = metropolis_as_chain(oracles::random_distribution(rng, T));
        double e = conductance(mc, ConductanceStrategy::exact);
        double i = conductance(mc, ConductanceStrategy::interval);
        CHECK(std::abs(e - i) < 1e-12);
    }
    CHECK_THROWS_AS(conductance(metropolis_as_chain(uniform_distribution(25)), ConductanceStrategy::exact),
                    std::invalid_argument);
}

TEST_CASE("cheeger bounds") {
    auto [lo, hi] = cheeger_bounds(0.25);
    CHECK(lo == doctest::Approx(1.0 / 32.0));
    CHECK(hi == doctest::Approx(0.5));
    auto [z0, z1] = cheeger_bounds(0.0);
    CHECK(z0 == 0.0);
    CHECK(z1 == 0.0);
    CHECK_THROWS_AS(cheeger_bounds(1.5), std::invalid_argument);
}

TEST_CASE("cheeger sandwich against the spectral gap") {
    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        int T = 3 + static_cast<int>(rng.below(40));
        auto mc = metropolis_as_chain(oracles::random_distribution(rng, T));
        double phi = conductance(mc, ConductanceStrategy::interval);
        double gap = mc.spectral_gap();
        auto [lo, hi] = cheeger_bounds(phi);
        CHECK(gap >= lo - 1e-10);
        CHECK(gap <= hi + 1e-10);
    }
}

TEST_CASE("quantum-to-classical mapping on the two-site examples") {
    auto map = quantum_to_classical(ComplexTridiagonal({1, 1}, {cplx(-1, 0)}));
    REQUIRE(map.chain.has_value());
    CHECK(map.chain->p[0][0] == doctest::Approx(0.0).scale(1));
    CHECK(map.chain->p[0][1] == doctest::Approx(1.0));
    CHECK(map.chain->p[1][0] == doctest::Approx(1.0));
    CHECK(map.gap_p == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(map.gap_h == doctest::Approx(2.0).epsilon(1e-10));

    // complex phases cancel against the ground-state amplitudes
    auto map2 = quantum_to_classical(ComplexTridiagonal({1, 1}, {std::polar(1.0, oracles::kPi / 3.0)}));
    REQUIRE(map2.chain.has_value());
    CHECK(map2.chain->p[0][1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(map2.chain->p[1][0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("quantum-to-classical recovers the metropolis chain") {
    auto dist = uniform_distribution(8);
    auto h = metropolis_hamiltonian(dist);
    std::vector<cplx> off(h.offdiag.begin(), h.offdiag.end());
    auto map = quantum_to_classical(ComplexTridiagonal(h.diag, off));
    REQUIRE(map.chain.has_value());
    auto orig = metropolis_chain(dist).dense();
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) CHECK(std::abs(map.chain->p[i][j] - orig[i][j]) < 1e-10);
}

TEST_CASE("quantum-to-classical ensemble invariants") {
    // Mixed ensemble: gauged Metropolis matrices at full size (ground
    // amplitudes bounded below by construction, arbitrary complex phases)
    // plus moderate-disorder random tridiagonals at sizes where the endpoint
    // amplitudes stay well above the numerical noise floor.
    Rng rng(2718);
    int mapped = 0;
    for (int trial = 0; trial < 100; ++trial) {
        ComplexTridiagonal m = (trial % 2 == 0)
            ? oracles::random_gauged_metropolis(
                  rng, oracles::random_distribution(rng, 50 + static_cast<int>(rng.below(151))))
            : oracles::random_delocalized_tridiagonal(rng, 3 + static_cast<int>(rng.below(58)));
        auto map = quantum_to_classical(m);
        REQUIRE(map.chain.has_value());
        ++mapped;
        const int T = m.dim() - 1;
        const auto& mc = *map.chain;
        // stochasticity and reversibility are enforced by the MarkovChain
        // constructor; check the remaining facts
        CHECK(map.ground_energy == doctest::Approx(0.0).scale(1));
        CHECK(std::abs(map.gap_p - (1.0 - map.ground_energy) * map.gap_h) < 1e-9);
        // pi = |psi|^2
        auto gauge = gauge_reduce(m);
        auto g = ground_state(gauge.matrix);
        for (int t = 0; t <= T; ++t) CHECK(std::abs(mc.pi[t] - std::norm(g.state[t])) < 1e-9);
        // Cheeger and birth-death sandwiches
        double phi = conductance(mc, ConductanceStrategy::interval);
        auto [lo, hi] = cheeger_bounds(std::min(1.0, phi));
        CHECK(map.gap_p >= lo - 1e-9);
        CHECK(map.gap_p <= hi + 1e-9);
        // birth-death sandwich; the lower constant 1/4 is the robust one for
        // this discrete-time normalization (gap * ell dips to ~0.44 on real
        // instances, so a 1/(2 ell) lower bound would be violated)
        double ell = birth_death_ell(mc);
        CHECK(map.gap_p >= 1.0 / (4.0 * ell) - 1e-9);
        CHECK(map.gap_p <= 4.0 / ell + 1e-9);
    }
    CHECK(mapped == 100);
}

TEST_CASE("broken bonds route to the degenerate report") {
    ComplexTridiagonal m({0.5, 0.5, 0.5, 0.5}, {cplx(-0.3), cplx(0.0), cplx(-0.3)});
    auto map = quantum_to_classical(m);
    CHECK(!map.chain.has_value());
    CHECK(map.degenerate_cut == 1);
    CHECK(map.gap_h == 0.0);
    // identical blocks: the ground state spans the cut and the signed-window
    // excitation comes back as an exact degenerate eigenvector
    REQUIRE(map.psi_perp.has_value());
    Vector hp = m.dense().apply(*map.psi_perp);
    double e = 0.2;  // block ground energy of [[0.5,-0.3],[-0.3,0.5]]
    for (int t = 0; t < 4; ++t) CHECK(std::abs(hp[t] - e * (*map.psi_perp)[t]) < 1e-9);
}

TEST_CASE("orthogonal excitation across a cut") {
    // two identical decoupled blocks; psi restricted to each block is a
    // ground state, so the window vector is an exact eigenvector
    ComplexTridiagonal m({1, 1, 1, 1}, {cplx(-1), cplx(0.0), cplx(-1)});
    auto gauge = gauge_reduce(m);
    auto dec = tridiag_full_decomposition(gauge.matrix);
    // degenerate ground space: take the symmetric combination as psi
    Vector psi(4);
    const double h = 0.5;  // (1,1,1,1)/2 built from the two block grounds
    for (int t = 0; t < 4; ++t) psi[t] = h;
    auto perp = orthogonal_excitation(m, psi, 1);
    CHECK(std::abs(dot(perp, psi)) < 1e-10);
    // eigenvector check: H psi_perp = E psi_perp with E = 0
    Matrix hm = m.dense();
    Vector hp = hm.apply(perp);
    for (int t = 0; t < 4; ++t) CHECK(std::abs(hp[t] - 0.0 * perp[t]) < 1e-9);
    // windows scale as psi_t / psi^2(window)
    CHECK(perp[0].real() == doctest::Approx(1.0));   // 0.5 / 0.5
    CHECK(perp[2].real() == doctest::Approx(-1.0));

    CHECK_THROWS_AS(orthogonal_excitation(m, psi, 0), std::invalid_argument);
}

TEST_CASE("birth-death ell on worked examples") {
    MarkovChain two({{0.5, 0.5}, {0.5, 0.5}}, {0.5, 0.5});
    double ell = birth_death_ell(two);
    CHECK(ell == doctest::Approx(2.0));
    double gap = two.spectral_gap();
    CHECK(gap == doctest::Approx(1.0));
    CHECK(gap >= 1.0 / (2.0 * ell));
    CHECK(gap <= 4.0 / ell);

    auto mc = metropolis_as_chain(uniform_distribution(10));
    double ell10 = birth_death_ell(mc);
    double gap10 = mc.spectral_gap();
    CHECK(gap10 >= 1.0 / (2.0 * ell10) - 1e-12);
    CHECK(gap10 <= 4.0 / ell10 + 1e-12);
}

TEST_CASE("birth-death ell rejects dense chains") {
    // reversible 3-state chain with a direct 0 <-> 2 transition
    std::vector<std::vector<double>> p{{0.4, 0.3, 0.3}, {0.3, 0.4, 0.3}, {0.3, 0.3, 0.4}};
    MarkovChain mc(p, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK_THROWS_AS(birth_death_ell(mc), std::invalid_argument);
}

TEST_CASE("theorem-1 chains have ell growing like psi_0^2 T^2") {
    double prev_ratio = 0.0;
    for (int T : {16, 32, 64, 128}) {
        auto mc = metropolis_as_chain(theorem1_distribution(T));
        double ell = birth_death_ell(mc);
        double ratio = ell / (mc.pi[0] * T * T);  // pi_0 = psi_0^2 = 1/4
        CHECK(ratio > 0.1);
        if (prev_ratio > 0.0) CHECK(std::abs(ratio / prev_ratio - 1.0) < 0.5);
        prev_ratio = ratio;
    }
}

TEST_CASE("tridiagonal product bound") {
    auto two = tridiag_product_bound(ComplexTridiagonal({1, 1}, {cplx(-1)}));
    CHECK(two.product == doctest::Approx(1.0).epsilon(1e-10));

    // free kitaev clock: uniform ground state, gap ~ pi^2/T^2, product ~ pi^2/T^3
    for (int T : {16, 64}) {
        std::vector<double> diag(T + 1, 0.0);
        std::vector<double> off(T, -0.5);  // |b| <= 1 normalization kept
        auto pb = tridiag_product_bound(SymTridiagonal(diag, off));
        CHECK(pb.product * T * T * T < 20.0);
        CHECK(pb.product > 0.0);
    }

    for (int T : {25, 100}) {
        auto pb = tridiag_product_bound(theorem1_matrix(T));
        CHECK(pb.product * T * T > 0.15);
        CHECK(pb.product * T * T < 0.25);
    }

    // degenerate ground state: decoupled identical blocks
    auto deg = tridiag_product_bound(ComplexTridiagonal({0.5, 0.5, 0.5, 0.5}, {cplx(-0.5), cplx(0.0), cplx(-0.5)}));
    CHECK(deg.degenerate);
    CHECK(deg.product == 0.0);

    CHECK_THROWS_AS(tridiag_product_bound(ComplexTridiagonal({1.5, 0}, {cplx(-1)})), std::invalid_argument);
}

TEST_CASE("chain json round trip") {
    auto mc = metropolis_as_chain(theorem1_distribution(6));
    auto back = chain_from_json(chain_to_json(mc));
    for (int i = 0; i < 7; ++i) {
        CHECK(back.pi[i] == mc.pi[i]);
        for (int j = 0; j < 7; ++j) CHECK(back.p[i][j] == mc.p[i][j]);
    }
}
