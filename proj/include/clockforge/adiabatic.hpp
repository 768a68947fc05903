#pragma once

#include <vector>

#include "clockforge/matrix.hpp"
#include "clockforge/tridiagonal.hpp"

namespace clockforge {

enum class ScheduleKind {
    standard_linear,  // H(s) = (1-s) H_init + s H_final
    modified_scaled,  // H(s) = H_init + s A H_final
};

struct Schedule {
    ScheduleKind kind;
    HermitianMatrix h_init;
    HermitianMatrix h_final;
    double scale_a;  // A, modified kind only

    Schedule(ScheduleKind k, HermitianMatrix init, HermitianMatrix final_, double a = 1.0);
};

// Clock-side initializer 1 - |0><0| (ground state |t = 0>).
HermitianMatrix clock_initializer(int dim);

Schedule standard_schedule(const SymTridiagonal& h_final);
Schedule modified_schedule(const SymTridiagonal& h_prop, double a);

HermitianMatrix interpolate(const Schedule& sch, double s);

struct GapCurve {
    std::vector<double> s;
    std::vector<double> e0;
    std::vector<double> e1;
    std::vector<double> gap;
    double min_gap;
    double argmin;  // refined by golden-section inside the bracketing interval
};

std::vector<double> uniform_grid(int points);

// Grid points are independent; `jobs` > 1 evaluates them on worker threads
// with results merged in grid order regardless of completion order.
GapCurve gap_sweep(const Schedule& sch, const std::vector<double>& grid, int jobs = 1);

struct MonotoneReport {
    bool non_decreasing;
    int first_violation;  // grid index, -1 if none
    double worst_drop;
};

// Weyl check: E1(s) non-decreasing along the grid (modified kind only; the
// increments s A H_final must be positive semi-definite).
MonotoneReport monotone_excited_check(const Schedule& sch, const std::vector<double>& grid, double slack = 1e-9);

struct OverlapEstimate {
    double overlap;            // |<psi_tilde | psi*_0>| at s = 1
    double deviation;          // phase-aligned 2-norm difference
    double first_order_bound;  // A^-1 Delta^-1 sum_k |<psi_0|H_init|psi_k>|
};

OverlapEstimate final_overlap_estimate(const Schedule& sch);

}  // namespace clockforge
