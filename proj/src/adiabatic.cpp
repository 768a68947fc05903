#include "clockforge/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "clockforge/eig.hpp"

namespace clockforge {

Schedule::Schedule(ScheduleKind k, HermitianMatrix init, HermitianMatrix final_, double a)
    : kind(k), h_init(std::move(init)), h_final(std::move(final_)), scale_a(a) {
    if (h_init.dim() != h_final.dim()) throw std::invalid_argument("Schedule: dimension mismatch");
    if (scale_a <= 0.0) throw std::invalid_argument("Schedule: A must be positive");
}

HermitianMatrix clock_initializer(int dim) {
    Matrix m = Matrix::identity(dim);
    m(0, 0) = 0.0;
    return HermitianMatrix(m);
}

Schedule standard_schedule(const SymTridiagonal& h_final) {
    return Schedule(ScheduleKind::standard_linear, clock_initializer(h_final.dim()),
                    HermitianMatrix(h_final.dense()), 1.0);
}

Schedule modified_schedule(const SymTridiagonal& h_prop, double a) {
    return Schedule(ScheduleKind::modified_scaled, clock_initializer(h_prop.dim()),
                    HermitianMatrix(h_prop.dense()), a);
}

HermitianMatrix interpolate(const Schedule& sch, double s) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("interpolate: s must lie in [0, 1]");
    Matrix m = (sch.kind == ScheduleKind::standard_linear)
                   ? cplx(1.0 - s) * sch.h_init.matrix() + cplx(s) * sch.h_final.matrix()
                   : sch.h_init.matrix() + cplx(s * sch.scale_a) * sch.h_final.matrix();
    return HermitianMatrix(m);
}

std::vector<double> uniform_grid(int points) {
    if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
    return g;
}

namespace {

// Tridiagonal fast path: every schedule built from clock-side matrices is a
// real tridiagonal pencil, so the sweep stays O(T) per grid point.
bool is_real_tridiagonal(const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const cplx z = m(i, j);
            if (std::abs(z.imag()) > 0.0) return false;
            if (std::abs(i - j) > 1 && z != cplx(0.0)) return false;
        }
    return true;
}

SymTridiagonal to_tridiagonal(const Matrix& m) {
    const int n = m.rows();
    std::vector<double> d(n), e(n - 1);
    for (int i = 0; i < n; ++i) d[i] = m(i, i).real();
    for (int i = 0; i + 1 < n; ++i) e[i] = m(i, i + 1).real();
    return SymTridiagonal(std::move(d), std::move(e));
}

struct PairEval {
    double e0, e1;
};

PairEval lowest_pair(const Schedule& sch, double s, bool tridiag_path) {
    HermitianMatrix h = interpolate(sch, s);
    if (tridiag_path) {
        auto [e0, e1] = tridiag_lowest_two(to_tridiagonal(h.matrix()));
        return {e0, e1};
    }
    auto d = eig_hermitian(h);
    return {d.eigenvalues[0], d.eigenvalues[1]};
}

}  // namespace

GapCurve gap_sweep(const Schedule& sch, const std::vector<double>& grid, int jobs) {
    if (grid.size() < 2) throw std::invalid_argument("gap_sweep: need at least two grid points");
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0 || grid[i] > 1.0) throw std::invalid_argument("gap_sweep: grid out of [0, 1]");
        if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("gap_sweep: grid must be sorted");
    }
    const bool fast = is_real_tridiagonal(sch.h_init.matrix()) && is_real_tridiagonal(sch.h_final.matrix());

    GapCurve curve;
    curve.s = grid;
    curve.e0.resize(grid.size());
    curve.e1.resize(grid.size());
    curve.gap.resize(grid.size());
    const int count = static_cast<int>(grid.size());
    jobs = std::max(1, std::min(jobs, count));
    auto eval_range = [&](int begin, int step) {
        for (int i = begin; i < count; i += step) {
            PairEval p = lowest_pair(sch, grid[i], fast);
            curve.e0[i] = p.e0;
            curve.e1[i] = p.e1;
            curve.gap[i] = p.e1 - p.e0;
        }
    };
    if (jobs == 1) {
        eval_range(0, 1);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w) workers.emplace_back(eval_range, w, jobs);
        for (auto& t : workers) t.join();
    }
    int best = 0;
    for (int i = 0; i < count; ++i)
        if (curve.gap[i] < curve.gap[best]) best = i;

    // golden-section refinement of the argmin inside the bracketing interval
    double lo = grid[std::max(0, best - 1)];
    double hi = grid[std::min<int>(static_cast<int>(grid.size()) - 1, best + 1)];
    auto gap_at = [&](double s) { PairEval p = lowest_pair(sch, s, fast); return p.e1 - p.e0; };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = gap_at(x1), f2 = gap_at(x2);
    while (b - a > 1e-4) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = gap_at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = gap_at(x2);
        }
    }
    double mid = 0.5 * (a + b);
    double fmid = gap_at(mid);
    if (fmid <= curve.gap[best]) {
        curve.min_gap = fmid;
        curve.argmin = mid;
    } else {
        curve.min_gap = curve.gap[best];
        curve.argmin = grid[best];
    }
    return curve;
}

MonotoneReport monotone_excited_check(const Schedule& sch, const std::vector<double>& grid, double slack) {
    if (sch.kind != ScheduleKind::modified_scaled)
        throw std::invalid_argument("monotone_excited_check: requires the modified schedule (PSD increments)");
    auto final_dec = eig_hermitian(sch.h_final);
    if (final_dec.eigenvalues.front() < -1e-9)
        throw std::invalid_argument("monotone_excited_check: increments are not positive semi-definite");
    GapCurve curve = gap_sweep(sch, grid);
    MonotoneReport rep{true, -1, 0.0};
    for (size_t i = 1; i < curve.e1.size(); ++i) {
        double drop = curve.e1[i - 1] - curve.e1[i];
        if (drop > slack) {
            rep.non_decreasing = false;
            if (rep.first_violation < 0) rep.first_violation = static_cast<int>(i);
            rep.worst_drop = std::max(rep.worst_drop, drop);
        }
    }
    return rep;
}

OverlapEstimate final_overlap_estimate(const Schedule& sch) {
    if (sch.kind != ScheduleKind::modified_scaled)
        throw std::invalid_argument("final_overlap_estimate: requires the modified schedule");
    const int n = sch.h_final.dim();
    // H_tilde = H_final + A^-1 H_init, the s = 1 Hamiltonian divided by A
    Matrix ht = sch.h_final.matrix() + cplx(1.0 / sch.scale_a) * sch.h_init.matrix();
    auto tilde = eig_hermitian(HermitianMatrix(ht));
    auto prop = eig_hermitian(sch.h_final);

    Vector psi_tilde = tilde.column(0);
    Vector psi_star = prop.column(0);
    double overlap = std::abs(dot(psi_tilde, psi_star));

    double gap = prop.eigenvalues[1] - prop.eigenvalues[0];
    Vector h0psi = sch.h_init.matrix().apply(psi_star);
    double sum = 0.0;
    for (int k = 1; k < n; ++k) {
        cplx amp = 0.0;
        for (int i = 0; i < n; ++i) amp += std::conj(prop.eigenvectors(i, k)) * h0psi[i];
        sum += std::abs(amp);
    }
    OverlapEstimate out{};
    out.overlap = overlap;
    out.deviation = std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
    out.first_order_bound = sum / (sch.scale_a * gap);
    return out;
}

}  // namespace clockforge
