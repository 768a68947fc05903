#pragma once

#include <optional>
#include <vector>

#include "clockforge/matrix.hpp"
#include "clockforge/tridiagonal.hpp"

namespace clockforge {

// Row-stochastic matrix on states {0..T} with stationary distribution pi,
// reversible with respect to pi (detailed balance within 1e-9).
struct MarkovChain {
    std::vector<std::vector<double>> p;
    std::vector<double> pi;

    MarkovChain(std::vector<std::vector<double>> p_, std::vector<double> pi_);
    int dim() const { return static_cast<int>(pi.size()); }
    bool is_tridiagonal(double tol = 0.0) const;

    // Spectral gap 1 - lambda_1(P), via the pi-symmetrization.
    double spectral_gap() const;
};

enum class ConductanceStrategy {
    exact,     // all 2^(T+1) - 2 subsets; capped at T <= 20
    interval,  // contiguous cuts [0..k]; exact for reversible birth-death chains
};

double conductance(const MarkovChain& mc, ConductanceStrategy strategy = ConductanceStrategy::interval);

// (Phi^2 / 2, 2 Phi).
std::pair<double, double> cheeger_bounds(double phi);

// Quantum-to-classical mapping P_{t,t'} = psi_{t'} G_{t,t'} / psi_t with
// G = (1 - H)/(1 - E) after the energy-shift normalization making a_t >= 0
// and E in [0, 1).  Defined for arbitrary complex tridiagonal Hermitian
// matrices; when some b_t vanishes (or an endpoint amplitude is zero) the
// spectral gap is zero and the degenerate route reports the orthogonal
// excitation cut instead of a chain.
struct QcMapping {
    std::optional<MarkovChain> chain;
    double shift = 0.0;        // subtracted from the diagonal
    double scale = 1.0;        // divided out after the shift
    double ground_energy = 0.0;  // E of the normalized matrix
    double gap_h = 0.0;          // spectral gap of the normalized matrix
    double gap_p = 0.0;          // spectral gap of the chain (when present)
    int degenerate_cut = -1;     // index t' with b_{t'} = 0, if any
    std::optional<Vector> psi_perp;  // degenerate excitation across the cut
};

QcMapping quantum_to_classical(const ComplexTridiagonal& m);

// The piecewise +-psi_t window vector orthogonal to psi that stays an
// eigenvector when the chain is cut at t' (b_{t'} = 0).
Vector orthogonal_excitation(const ComplexTridiagonal& m, const Vector& psi, int tprime);

// Birth-death spectral-gap quantity ell: the two-sided maximization around
// the median index i' of pi.  The gap is pinched within constant factors,
// 1/(4 ell) <= gap <= 4/ell (the lower constant 1/4 is what holds for
// discrete-time chains; gap * ell dips to ~0.44 on concrete instances).
double birth_death_ell(const MarkovChain& mc);

// Delta_H * min{|psi_0|^2, |psi_T|^2} for a tridiagonal Hamiltonian with
// |a_t|, |b_t| <= 1.
struct ProductBound {
    double gap;
    double min_endpoint;
    double product;
    bool degenerate;
};

ProductBound tridiag_product_bound(const ComplexTridiagonal& m);
ProductBound tridiag_product_bound(const SymTridiagonal& m);

}  // namespace clockforge
