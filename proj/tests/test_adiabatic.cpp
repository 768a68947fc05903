#include <doctest.h>

#include "clockforge/adiabatic.hpp"
#include "clockforge/clock.hpp"
#include "clockforge/eig.hpp"
#include "oracles.hpp"

using namespace clockforge;

namespace {

SymTridiagonal kitaev_clock(int T) {
    std::vector<double> d(T + 1, 2.0);
    d.front() = d.back() = 1.0;
    return SymTridiagonal(d, std::vector<double>(T, -1.0));
}

}  // namespace

TEST_CASE("interpolation endpoints") {
    auto sch = standard_schedule(kitaev_clock(4));
    CHECK((interpolate(sch, 0.0).matrix() - sch.h_init.matrix()).max_abs() == 0.0);
    CHECK((interpolate(sch, 1.0).matrix() - sch.h_final.matrix()).max_abs() == 0.0);
    CHECK_THROWS_AS(interpolate(sch, 1.5), std::invalid_argument);

    double a = 16.0;
    auto mod = modified_schedule(theorem1_matrix(4), a);
    Matrix expect = mod.h_init.matrix() + cplx(a) * mod.h_final.matrix();
    CHECK((interpolate(mod, 1.0).matrix() - expect).max_abs() == 0.0);
}

TEST_CASE("standard schedule starts with unit gap") {
    auto sch = standard_schedule(kitaev_clock(12));
    auto curve = gap_sweep(sch, uniform_grid(5));
    CHECK(curve.gap.front() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("modified schedule keeps the gap above one quarter") {
    for (int T : {10, 20, 40}) {
        auto sch = modified_schedule(theorem1_matrix(T), std::pow(double(T), 4.0));
        auto curve = gap_sweep(sch, uniform_grid(201));
        for (double g : curve.gap) CHECK(g >= 0.25 - 1e-9);
        // trial-state argument: the ground energy stays at most 3/4
        for (double e : curve.e0) CHECK(e <= 0.75 + 1e-9);
        // and E1 >= 1 throughout (Weyl from the s = 0 spectrum)
        for (double e : curve.e1) CHECK(e >= 1.0 - 1e-9);
    }
}

TEST_CASE("weyl monotonicity of the first excited level") {
    auto sch = modified_schedule(theorem1_matrix(10), 1e4);
    auto rep = monotone_excited_check(sch, uniform_grid(101));
    CHECK(rep.non_decreasing);
    CHECK(rep.first_violation == -1);

    // constant schedule: H_final = 0 is PSD, E1 stays flat
    SymTridiagonal zero(std::vector<double>(5, 0.0), std::vector<double>(4, 0.0));
    auto flat = modified_schedule(zero, 1.0);
    CHECK(monotone_excited_check(flat, uniform_grid(11)).non_decreasing);

    // standard kind rejected: increments are not PSD
    auto std_sch = standard_schedule(kitaev_clock(5));
    CHECK_THROWS_AS(monotone_excited_check(std_sch, uniform_grid(5)), std::invalid_argument);
}

TEST_CASE("both linear interpolations reach their minimum gap at the right edge") {
    for (int T : {10, 20, 40, 100}) {
        auto kit = gap_sweep(standard_schedule(kitaev_clock(T)), uniform_grid(201));
        auto mod = gap_sweep(standard_schedule(theorem1_matrix(T)), uniform_grid(201));
        // weighted construction: the discrete argmin is the last grid point
        CHECK(mod.argmin >= 1.0 - 0.005 - 1e-12);
        // uniform weights: the minimum drifts toward the edge like 1 - O(1/T)
        CHECK(kit.argmin >= 1.0 - 2.5 / T);
        // the edge value tracks the true minimum
        CHECK(kit.min_gap >= 0.75 * kit.gap.back());
        CHECK(mod.min_gap >= 0.75 * mod.gap.back());
    }
}

TEST_CASE("endpoint measurement probabilities of the two final ground states") {
    for (int T : {10, 40}) {
        auto gk = ground_state(kitaev_clock(T));
        CHECK(std::norm(gk.state.back()) == doctest::Approx(1.0 / (T + 1)).epsilon(1e-8));
        auto gm = ground_state(theorem1_matrix(T));
        CHECK(std::norm(gm.state.back()) == doctest::Approx(0.25).epsilon(1e-8));
    }
}

TEST_CASE("final overlap estimate") {
    // huge A: unperturbed limit
    auto big = modified_schedule(theorem1_matrix(8), 1e12);
    auto ov_big = final_overlap_estimate(big);
    CHECK(ov_big.overlap >= 1.0 - 1e-6);

    // A = T^4: deviation within the first-order bound with 10% slack, and the
    // overlap form 1 - O(1/T)
    for (int T : {8, 12, 16}) {
        auto sch = modified_schedule(theorem1_matrix(T), std::pow(double(T), 4.0));
        auto ov = final_overlap_estimate(sch);
        CHECK(ov.deviation <= ov.first_order_bound * 1.1 + 1e-12);
        CHECK(1.0 - ov.overlap <= 1.0 / T);
    }

    // commuting pair: diagonal final Hamiltonian shares the eigenbasis of H0
    std::vector<double> d{0.0, 0.3, 0.5, 0.9};
    SymTridiagonal diag(d, std::vector<double>(3, 0.0));
    auto sch = modified_schedule(diag, 100.0);
    auto ov = final_overlap_estimate(sch);
    CHECK(ov.overlap == doctest::Approx(1.0).epsilon(1e-12));
}
