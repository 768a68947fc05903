#pragma once

#include <string>
#include <vector>

#include "clockforge/matrix.hpp"

namespace clockforge {

// Edge a -> b carrying a d x d unitary label and an optional positive weight.
struct UlgEdge {
    int a;
    int b;
    Matrix unitary;
    double weight = 1.0;
};

struct UnitaryLabeledGraph {
    int num_vertices;
    int d;  // label dimension
    std::vector<UlgEdge> edges;
    std::vector<double> vertex_weights;  // optional; empty means all zero

    UnitaryLabeledGraph(int v, int d_, std::vector<UlgEdge> e, std::vector<double> vw = {});
};

// H_G = sum_(a,b) w_ab sum_i (|a>|i> - |b> U_ab |i>)(h.c.) + sum_v w_v |v><v| (x) 1.
HermitianMatrix ulg_hamiltonian(const UnitaryLabeledGraph& g, long dim_cap = 4160);

// Weighted graph Laplacian of the underlying graph (plus vertex weights).
Matrix graph_laplacian(const UnitaryLabeledGraph& g);

// Simplicity: the oriented product of unitaries around every fundamental
// cycle of a spanning tree is the identity.
struct SimplicityReport {
    bool simple;
    double max_residual;             // worst ||loop product - 1||_max
    std::vector<int> witness_cycle;  // vertex sequence of a violating cycle
};

SimplicityReport is_simple(const UnitaryLabeledGraph& g, double tol = 1e-9);

// Builds W from spanning-tree path products and verifies
// ||W+ H_G W - L(G) (x) 1||_max.
struct EquivalenceReport {
    double residual;
    Matrix w;
};

EquivalenceReport laplacian_equivalence_check(const UnitaryLabeledGraph& g, double tol = 1e-9);

// Smallest k with <u|H^k|v> != 0, maximized over basis pairs; infinite when
// the matrix is block-disconnected.  Thresholds are relative: powers of
// H/||H|| are compared against zero_tol.
struct DiameterResult {
    int diam;        // -1 encodes infinity
    int diam_prime;  // restricted to the ground-support basis states
    bool finite;
    bool prime_finite;
};

DiameterResult matrix_diameter(const HermitianMatrix& h, double zero_tol = 1e-10);

// Both forms of the diameter bound: the closed inequality
//   Delta_H <= (||H||/2) (ln(2/pi_min)/diam)^2
// and the refined diam' <= (1 + 1/sqrt(2 Delta_G)) ln(2/pi'_min) with
// Delta_G the gap of the top-normalized matrix.
struct DiameterReport {
    int diam;
    int diam_prime;
    double pi_min;
    double pi_min_prime;
    double gap;
    double norm;
    double bound;          // right-hand side of the closed inequality
    double refined_rhs;    // right-hand side of the refined inequality
    bool holds;            // gap <= bound + slack (requires finite diam, pi_min > 0)
    bool refined_holds;    // diam' <= refined_rhs + slack
    bool near_saturation;  // within a factor 2 of either bound
    bool degenerate_ground;
    bool used_support_fallback;  // pi_min was 0 in full-basis mode
};

DiameterReport diameter_bound_check(const HermitianMatrix& h, double zero_tol = 1e-10, double slack = 1e-9);

// Two-vertex double-edge ULG with labels {1, U}: Hamiltonian, the block form
// after conjugating by the eigenbasis of 1 + U, and the effective vertex
// penalties 2 - |lambda_i|.
struct FrustratedPair {
    HermitianMatrix h_g;
    HermitianMatrix transformed;
    std::vector<cplx> lambdas;      // eigenvalues of 1 + U
    std::vector<double> penalties;  // 2 - |lambda_i|
};

FrustratedPair frustrated_pair_analysis(const Matrix& u);

// From the eigenspace with energies <= r, build a superposition with zero
// amplitude on every penalty vertex; its energy certifies
// E(H_prop + penalties) <= r for any penalties supported there.
struct LowEnergyCertificate {
    double energy;
    Vector state;
    int low_dim;  // number of eigenvalues <= r
};

LowEnergyCertificate low_energy_unsat_upper_bound(const HermitianMatrix& h_prop,
                                                  const std::vector<int>& penalty_vertices, double r);

}  // namespace clockforge
