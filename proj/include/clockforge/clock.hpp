#pragma once

#include <array>
#include <vector>

#include "clockforge/eig.hpp"
#include "clockforge/matrix.hpp"
#include "clockforge/tridiagonal.hpp"

namespace clockforge {

// Coefficients {a_t, b_t} of a weighted clock Hamiltonian
//   H_clock = sum_t a_t |t><t| + sum_t (b_t |t+1><t| + conj(b_t) |t><t+1|),
// normalized to |a_t|, |b_t| <= 1.
struct ClockWeights {
    int T;                   // number of gates; clock dimension is T+1
    std::vector<double> a;   // T+1 entries
    std::vector<cplx> b;     // T entries
    double bound = 1.0;      // validated cap on |a_t|; 2 for the standard Kitaev form

    ClockWeights(int T_, std::vector<double> a_, std::vector<cplx> b_, double bound_ = 1.0);
};

ClockWeights kitaev_weights(int T);  // a_0 = a_T = 1, interior 2 -> path Laplacian

// Probability distribution over time steps {0..T}; strictly positive and
// normalized.
struct TimeDistribution {
    int T;
    std::vector<double> pi;

    TimeDistribution(int T_, std::vector<double> pi_);
};

TimeDistribution uniform_distribution(int T);

// pi_0 = pi_T = 1/4, interior 1/(2(T-1)); assembled in exact rationals and
// converted to floating point once.
TimeDistribution theorem1_distribution(int T);

ComplexTridiagonal clock_tridiagonal(const ClockWeights& w);
HermitianMatrix clock_hamiltonian(const ClockWeights& w);

// Row-stochastic birth-death chain with Metropolis rates
//   P_{t,t+-1} = (1/4) min{1, pi_{t+-1}/pi_t},
// boundary moves zero, diagonal completing each row; P_{t,t} >= 1/2.
struct MetropolisChain {
    int T;
    std::vector<double> up;    // P_{t,t+1}, T entries
    std::vector<double> down;  // P_{t,t-1}, entry t-1 holds P_{t,t-1}, T entries
    std::vector<double> stay;  // P_{t,t}, T+1 entries
    std::vector<double> pi;    // stationary distribution

    std::vector<std::vector<double>> dense() const;
};

MetropolisChain metropolis_chain(const TimeDistribution& pi);

// H = I - A with A the similarity-symmetrized transition matrix; ground
// energy 0 with ground amplitudes sqrt(pi_t).
SymTridiagonal metropolis_hamiltonian(const TimeDistribution& pi);

// The explicit (T+1)x(T+1) matrix: prefactor 1/2; corner diagonals 1/(T-1);
// interior diagonals 1; corner off-diagonals -1/sqrt(2T-2); interior
// off-diagonals -1/2.  Coincides with metropolis_hamiltonian applied to
// theorem1_distribution for T >= 3.
SymTridiagonal theorem1_matrix(int T);

// Kitaev clock plus unit endpoint projectors: tridiag(-1, 2, -1) on T+1
// sites.  Ground energy 2(1 - cos(pi/(T+2))).
SymTridiagonal endpoint_penalized_clock(int T);

// Variational bound min_t <t|H phi>/phi_t for H stoquastic in the given
// basis; guaranteed <= E0(H).  phi need not be normalized but must be
// strictly positive.
double stoquastic_lower_bound(const HermitianMatrix& h, const std::vector<double>& phi,
                              double stoq_tol = 1e-12);
double stoquastic_lower_bound(const SymTridiagonal& t, const std::vector<double>& phi,
                              double stoq_tol = 1e-12);

// Dirichlet sine ansatz sin(pi (t+1) / (T+2)) on T+1 sites; the exact ground
// state of endpoint_penalized_clock.
std::vector<double> dirichlet_sine_ansatz(int T);

// Coupled double-clock block: (I_2 (x) path Laplacian) + |00><00| + L (x) |T><T|
// with L = mu [ |1><1| + eta^2 |0><0| - eta(|0><1| + |1><0|) ], written in the
// ordering with the second half time-reversed, so the matrix is banded.
struct SBlockParams {
    int T;
    double mu;   // in [0, 1]
    double eta;  // >= 0
};

HermitianMatrix s_block(const SBlockParams& p);

// Half-sine trial vector sum_i sin(pi i / 2T)(|i> + |i+T>) + |2T+1>, indexed in
// the banded ordering.  Entry 0 is zero, so rows are evaluated individually
// rather than through stoquastic_lower_bound.
std::vector<double> s_block_ansatz(int T);

// The five distinct row values of <t|S phi>/phi_t under the half-sine ansatz:
// rows 1, interior, T (input corner), T+1 (output corner), 2T.
struct SBlockCases {
    double edge;        // t = 1
    double interior;    // 1 < t <= T-1 and T+1 < t < 2T
    double in_corner;   // t = T
    double out_corner;  // t = T+1
    double far_end;     // t = 2T
    std::array<double, 5> as_array() const { return {edge, interior, in_corner, out_corner, far_end}; }
};

SBlockCases s_block_case_values(const SBlockParams& p);  // closed forms
SBlockCases s_block_case_ratios(const SBlockParams& p);  // direct row evaluation

}  // namespace clockforge
