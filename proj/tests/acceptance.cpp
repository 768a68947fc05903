// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "clockforge/adiabatic.hpp"
#include "clockforge/circuit.hpp"
#include "clockforge/clock.hpp"
#include "clockforge/eig.hpp"
#include "clockforge/markov.hpp"
#include "clockforge/ulg.hpp"
#include "oracles.hpp"

using namespace clockforge;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail, double seconds) {
    std::printf("[%s] criterion %2d %-28s %s (%.1fs)\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str(), seconds);
    if (!pass) ++failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Circuit identity_circuit(int n, int T) {
    std::vector<Gate> gates(T, named_gate("I", {0}));
    return Circuit(n, std::move(gates));
}

PenaltyPair rejecting_penalties(int n) {
    const int d = 1 << n;
    Matrix pin(d, d), pout(d, d);
    for (int x = 0; x < d; ++x) {
        bool q0_set = (x >> (n - 1)) & 1;
        pin(x, x) = q0_set ? 1.0 : 0.0;   // valid inputs have qubit 0 = |0>
        pout(x, x) = q0_set ? 0.0 : 1.0;  // outputs with qubit 0 = |0> are penalized
    }
    return PenaltyPair(std::move(pin), std::move(pout));
}

ClockWeights theorem1_weights(int T) {
    auto t1 = theorem1_matrix(T);
    std::vector<cplx> b(t1.offdiag.begin(), t1.offdiag.end());
    return ClockWeights(T, t1.diag, std::move(b));
}

SymTridiagonal kitaev_clock(int T) {
    std::vector<double> d(T + 1, 2.0);
    d.front() = d.back() = 1.0;
    return SymTridiagonal(d, std::vector<double>(T, -1.0));
}

// --- criteria -------------------------------------------------------------

void criterion1() {
    Timer timer;
    Rng rng(1001);
    bool pass = true;
    double worst_e0 = 0.0, worst_amp = 0.0, worst_entry = 0.0;
    for (int T : {25, 50, 100, 200, 400}) {
        std::vector<TimeDistribution> dists;
        dists.push_back(theorem1_distribution(T));
        for (int k = 0; k < 10; ++k) dists.push_back(oracles::random_distribution(rng, T));
        for (const auto& dist : dists) {
            auto h = metropolis_hamiltonian(dist);
            double e0 = tridiag_ground_energy(h);
            worst_e0 = std::max(worst_e0, std::abs(e0));
            auto g = ground_state(h);
            for (int t = 0; t <= T; ++t)
                worst_amp = std::max(worst_amp, std::abs(g.state[t].real() - std::sqrt(dist.pi[t])));
        }
        auto direct = theorem1_matrix(T);
        auto metro = metropolis_hamiltonian(theorem1_distribution(T));
        for (int i = 0; i <= T; ++i) worst_entry = std::max(worst_entry, std::abs(direct.diag[i] - metro.diag[i]));
        for (int i = 0; i < T; ++i)
            worst_entry = std::max(worst_entry, std::abs(direct.offdiag[i] - metro.offdiag[i]));
    }
    pass = worst_e0 <= 1e-10 && worst_amp <= 1e-8 && worst_entry <= 1e-12 && timer.elapsed() < 10.0;
    report(1, "lemma3/theorem1 construction", pass,
           fmt("|E0|<=%.1e amp dev %.1e entry dev %.1e", worst_e0, worst_amp, worst_entry), timer.elapsed());
}

void criterion2() {
    Timer timer;
    bool pass = true;
    double prev = 0.0, lo = 1e300, hi = 0.0;
    for (int T : {25, 50, 100, 200, 400}) {
        double v = spectral_gap(theorem1_matrix(T)) * T * T;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (v <= 0.70 || v >= 0.85) pass = false;
        if (prev > 0.0 && std::abs(v / prev - 1.0) >= 0.10) pass = false;
        prev = v;
    }
    pass = pass && timer.elapsed() < 30.0;
    report(2, "theorem1 gap scaling", pass, fmt("gap*T^2 in [%.4f, %.4f], bracket (0.70, 0.85)", lo, hi),
           timer.elapsed());
}

void criterion3() {
    Timer timer;
    Rng rng(1003);
    double worst_e0 = 0.0, worst_bound = 0.0, worst_case = 0.0;
    for (int T : {1, 2, 5, 10, 50, 100, 500}) {
        auto h = endpoint_penalized_clock(T);
        double exact = 2.0 * (1.0 - std::cos(oracles::kPi / (T + 2)));
        worst_e0 = std::max(worst_e0, std::abs(tridiag_ground_energy(h) - exact));
        worst_bound = std::max(worst_bound, std::abs(stoquastic_lower_bound(h, dirichlet_sine_ansatz(T)) - exact));
    }
    for (int T : {10, 100}) {
        for (int trial = 0; trial < 10; ++trial) {
            double eps = rng.uniform(0.0, 0.5);
            SBlockParams p{T, 1.0 - eps, rng.uniform(0.0, std::sqrt(eps / 2.0))};
            auto closed = s_block_case_values(p).as_array();
            auto ratios = s_block_case_ratios(p).as_array();
            for (int i = 0; i < 5; ++i) worst_case = std::max(worst_case, std::abs(closed[i] - ratios[i]));
        }
    }
    bool pass = worst_e0 <= 1e-10 && worst_bound <= 1e-10 && worst_case <= 1e-10;
    report(3, "theorem3 endpoint clock", pass,
           fmt("E0 dev %.1e ansatz dev %.1e s-block case dev %.1e", worst_e0, worst_bound, worst_case),
           timer.elapsed());
}

void criterion4() {
    Timer timer;
    bool pass = true;
    double min_scaled = 1e300;
    for (int n : {1, 2, 3}) {
        for (int T : {8, 16, 32}) {
            Circuit c = identity_circuit(n, T);
            auto p = rejecting_penalties(n);
            for (bool kit : {true, false}) {
                ClockWeights w = kit ? kitaev_weights(T) : theorem1_weights(T);
                auto rep = lemma2_sandwich(w, c, p);
                min_scaled = std::min(min_scaled, rep.penalty * T * T);
                if (rep.penalty * T * T <= 0.15) pass = false;
                if (!(rep.lower <= rep.penalty + 1e-10 && rep.penalty <= rep.upper + 1e-10)) pass = false;
                if (!rep.hypothesis_holds) pass = false;
            }
        }
    }
    pass = pass && timer.elapsed() < 120.0;
    report(4, "full-circuit unsat penalty", pass,
           fmt("min penalty*T^2 = %.4f (> 0.15), sandwich held on all 18 instances", min_scaled), timer.elapsed());
}

void criterion5() {
    Timer timer;
    Rng rng(1005);
    bool pass = true;
    int mapped = 0;
    double worst_rel = 0.0, prod_lo = 1e300, prod_hi = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        ComplexTridiagonal m = (trial % 2 == 0)
            ? oracles::random_gauged_metropolis(
                  rng, oracles::random_distribution(rng, 50 + static_cast<int>(rng.below(151))))
            : oracles::random_delocalized_tridiagonal(rng, 3 + static_cast<int>(rng.below(58)));
        auto map = quantum_to_classical(m);  // constructor checks stochasticity + reversibility
        if (!map.chain) {
            pass = false;
            continue;
        }
        ++mapped;
        const auto& mc = *map.chain;
        worst_rel = std::max(worst_rel, std::abs(map.gap_p - (1.0 - map.ground_energy) * map.gap_h));
        auto gauge = gauge_reduce(m);
        auto g = ground_state(gauge.matrix);
        for (int t = 0; t < m.dim(); ++t)
            if (std::abs(mc.pi[t] - std::norm(g.state[t])) > 1e-9) pass = false;
        double phi = conductance(mc, ConductanceStrategy::interval);
        auto [chlo, chhi] = cheeger_bounds(std::min(1.0, phi));
        if (!(map.gap_p >= chlo - 1e-9 && map.gap_p <= chhi + 1e-9)) pass = false;
        double ell = birth_death_ell(mc);
        prod_lo = std::min(prod_lo, map.gap_p * ell);
        prod_hi = std::max(prod_hi, map.gap_p * ell);
        if (!(map.gap_p >= 1.0 / (4.0 * ell) - 1e-9 && map.gap_p <= 4.0 / ell + 1e-9)) pass = false;
    }
    pass = pass && mapped == 100 && worst_rel <= 1e-9;
    report(5, "quantum-to-classical map", pass,
           fmt("100 chains, gap relation dev %.1e, gap*ell in [%.3f, %.3f]", worst_rel, prod_lo, prod_hi),
           timer.elapsed());
}

void criterion6() {
    Timer timer;
    Rng rng(1006);
    double ens_max = 0.0;
    for (int trial = 0; trial < 120; ++trial) {
        int T = 10 + static_cast<int>(rng.below(55));
        auto pb = tridiag_product_bound(oracles::random_complex_tridiagonal(rng, T + 1, 1.0, 0.05));
        ens_max = std::max(ens_max, pb.product * T * T);
    }
    double th1_val = 0.0, kit_val = 0.0;
    for (int T : {25, 50, 100, 200, 400}) {
        th1_val = std::max(th1_val, tridiag_product_bound(theorem1_matrix(T)).product * T * T);
        // Kitaev clock scaled into the |a|,|b| <= 1 family
        std::vector<double> dk(T + 1, 1.0);
        dk.front() = dk.back() = 0.5;
        auto pbk = tridiag_product_bound(SymTridiagonal(dk, std::vector<double>(T, -0.5)));
        kit_val = std::max(kit_val, pbk.product * T * T);
        ens_max = std::max(ens_max, std::max(th1_val, kit_val));
    }
    // recorded constant: the sweep maximum stays below 0.25 and the explicit
    // construction sits within a factor 10 of it (it is in fact the maximum)
    bool pass = ens_max < 0.25 && th1_val >= ens_max / 10.0;
    report(6, "theorem5 product tightness", pass,
           fmt("ensemble max %.4f, theorem1 %.4f, kitaev/2 %.4f", ens_max, th1_val, kit_val), timer.elapsed());
}

void criterion7() {
    Timer timer;
    bool pass = true;
    double worst_drop = 0.0, min_gap = 1e300;
    for (int T : {10, 20, 40}) {
        auto mod = modified_schedule(theorem1_matrix(T), std::pow(double(T), 4.0));
        auto grid = uniform_grid(201);
        auto curve = gap_sweep(mod, grid);
        for (double g : curve.gap) min_gap = std::min(min_gap, g);
        if (min_gap < 0.25 - 1e-9) pass = false;
        auto mono = monotone_excited_check(mod, grid);
        if (!mono.non_decreasing) pass = false;
        worst_drop = std::max(worst_drop, mono.worst_drop);
    }
    for (int T : {10, 20, 40, 100}) {
        auto kit = gap_sweep(standard_schedule(kitaev_clock(T)), uniform_grid(201));
        auto mod = gap_sweep(standard_schedule(theorem1_matrix(T)), uniform_grid(201));
        if (mod.argmin < 1.0 - 0.005 - 1e-12) pass = false;       // at the edge within grid resolution
        if (kit.argmin < 1.0 - 2.5 / T) pass = false;             // asymptotic edge attainment
        if (kit.min_gap < 0.75 * kit.gap.back()) pass = false;    // edge value tracks the minimum
        auto gk = ground_state(kitaev_clock(T));
        auto gm = ground_state(theorem1_matrix(T));
        if (std::abs(std::norm(gk.state.back()) - 1.0 / (T + 1)) > 1e-8) pass = false;
        if (std::abs(std::norm(gm.state.back()) - 0.25) > 1e-8) pass = false;
    }
    report(7, "theorem2 adiabatic gaps", pass,
           fmt("modified min gap %.4f (>= 1/4), E1 monotone, pi_T = 1/4 vs 1/(T+1)", min_gap), timer.elapsed());
}

void criterion8() {
    Timer timer;
    Rng rng(1008);
    bool pass = true;
    int near = 0;
    auto check = [&](const HermitianMatrix& h) {
        auto rep = diameter_bound_check(h);
        if (!rep.holds || !rep.refined_holds) pass = false;
        if (rep.near_saturation) ++near;
    };
    for (int T : {20, 50, 100}) check(HermitianMatrix(endpoint_penalized_clock(T).dense()));
    for (int T : {25, 60}) check(HermitianMatrix(theorem1_matrix(T).dense()));
    for (int T : {12, 30}) check(HermitianMatrix(metropolis_hamiltonian(oracles::random_distribution(rng, T)).dense()));
    for (int trial = 0; trial < 50; ++trial) {
        int n = 8 + static_cast<int>(rng.below(33));
        int band = 1 + static_cast<int>(rng.below(3));
        Matrix h(n, n);
        for (int i = 0; i < n; ++i) {
            h(i, i) = rng.uniform(-1.0, 1.0);
            for (int j = i + 1; j <= std::min(n - 1, i + band); ++j) {
                cplx z(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                if (std::abs(z) > 1.0) z /= std::abs(z);
                h(i, j) = z;
                h(j, i) = std::conj(z);
            }
        }
        check(HermitianMatrix(h));
    }
    bool diam_exact = true;
    for (int T = 1; T <= 64; ++T)
        if (matrix_diameter(clock_hamiltonian(kitaev_weights(T))).diam != T) diam_exact = false;
    pass = pass && diam_exact;
    report(8, "theorem6 diameter bound", pass,
           fmt("57 instances, %.0f near-saturation logged, path diam exact to T=64", double(near)), timer.elapsed());
}

void criterion9() {
    Timer timer;
    Rng rng(1009);
    bool pass = true;
    double worst_res = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        int v = 3 + static_cast<int>(rng.below(6));
        auto g = oracles::random_simple_ulg(rng, v, 2, 2);
        worst_res = std::max(worst_res, laplacian_equivalence_check(g).residual);
    }
    if (worst_res >= 1e-9) pass = false;

    Matrix x(2, 2);
    x(0, 1) = 1;
    x(1, 0) = 1;
    auto fp = frustrated_pair_analysis(x);
    double hg_expect[4][4] = {{2, 0, -1, -1}, {0, 2, -1, -1}, {-1, -1, 2, 0}, {-1, -1, 0, 2}};
    double tr_expect[4][4] = {{2, 0, -2, 0}, {0, 2, 0, 0}, {-2, 0, 2, 0}, {0, 0, 0, 2}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (std::abs(fp.h_g(i, j).real() - hg_expect[i][j]) > 1e-12) pass = false;
            if (std::abs(fp.transformed(i, j).real() - tr_expect[i][j]) > 1e-9) pass = false;
        }

    for (int T : {10, 30, 64}) {
        auto clock = clock_hamiltonian(kitaev_weights(T));
        auto dec = eig_hermitian(clock);
        auto cert = low_energy_unsat_upper_bound(clock, {T}, dec.eigenvalues[1] + 1e-12);
        if (cert.energy > dec.eigenvalues[1] + 1e-10) pass = false;
        // the certificate really does cap the penalized ground energy
        Matrix pen = clock.matrix();
        pen(T, T) += 1.0;
        if (ground_state(HermitianMatrix(pen)).energy > cert.energy + 1e-9) pass = false;
    }
    report(9, "ulg suite", pass, fmt("equivalence residual %.1e, printed matrices exact, certificates hold", worst_res),
           timer.elapsed());
}

void criterion10() {
    Timer timer;
    Rng rng(1010);
    bool pass = true;
    double worst_margin = -1e300;
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c = oracles::random_circuit(rng, 2, 4);
        auto p = standard_penalties(2, {1}, 0);
        try {
            auto pad = padded_construction(c, p);
            worst_margin = std::max(worst_margin, pad.cos2theta - (3.0 + std::sqrt(pad.epsilon)) / 4.0);
        } catch (const numerical_error&) {
            pass = false;
        }
    }
    if (worst_margin > 1e-9) pass = false;

    double lo = 1e300, hi = 0.0;
    for (int T : {4, 8, 16}) {
        auto pad = padded_construction(identity_circuit(1, T), rejecting_penalties(1));
        double v = pad.unsat * T * T;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(lo > 0.15 && hi < 5.0)) pass = false;
    report(10, "appendix padded construction", pass,
           fmt("cos^2 margin %.1e, padded unsat*T^2 in [%.3f, %.3f]", worst_margin, lo, hi), timer.elapsed());
}

}  // namespace

int main() {
    std::printf("clockforge acceptance suite\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
