#pragma once

#include <string>
#include <vector>

#include "clockforge/clock.hpp"
#include "clockforge/matrix.hpp"

namespace clockforge {

// A gate: d x d unitary acting on the listed qubits (d = 2^targets).
struct Gate {
    Matrix unitary;
    std::vector<int> targets;
    std::string name;  // empty for raw-matrix gates

    Gate(Matrix u, std::vector<int> t, std::string n = "");
};

Gate named_gate(const std::string& name, std::vector<int> targets);

struct Circuit {
    int n;                    // qubit count
    std::vector<Gate> gates;  // U_1 .. U_T in application order

    Circuit(int n_, std::vector<Gate> gates_);
    int T() const { return static_cast<int>(gates.size()); }
};

// Input/output penalty projectors on the 2^n-dimensional register.
struct PenaltyPair {
    Matrix pi_in;
    Matrix pi_out;

    PenaltyPair(Matrix in, Matrix out, double idem_tol = 1e-10);
    int dim() const { return pi_in.rows(); }
};

// Standard convention: Pi_out = |0><0| on the designated output qubit
// ("penalizes it in state |0>"), Pi_in fixes the listed ancillas to |0>.
PenaltyPair standard_penalties(int n, const std::vector<int>& in_ancillas, int out_qubit);

// Embed a gate's unitary on its target qubits (qubit 0 = most significant).
Matrix embed_gate(const Gate& g, int n);

// U = U_T ... U_1.
Matrix circuit_unitary(const Circuit& c, int qubit_cap = 6);

// W = sum_t |t><t| (x) U_t ... U_1.
Matrix history_unitary(const Circuit& c, int qubit_cap = 6);

// H_prop = sum_t a_t |t><t| (x) 1 + sum_t (b_t |t+1><t| (x) U_{t+1} + h.c.).
HermitianMatrix h_prop(const ClockWeights& w, const Circuit& c, int qubit_cap = 6);

// H_FK = H_prop + |0><0| (x) Pi_in + |T><T| (x) Pi_out.
HermitianMatrix h_fk(const ClockWeights& w, const Circuit& c, const PenaltyPair& p, int qubit_cap = 6);

struct AcceptanceResult {
    double epsilon;            // largest squared singular value of Q_out U Q_in
    bool trivial_kernel;       // some kernel was {0}; epsilon defined as 0
};

AcceptanceResult acceptance_probability(const Circuit& c, const PenaltyPair& p, int qubit_cap = 6);

// E(H_FK) - E(H_prop) for the given circuit; non-negative.
double unsat_penalty(const ClockWeights& w, const Circuit& c, const PenaltyPair& p, int qubit_cap = 6);

// (gap/4)(1 - sqrt(eps)) min{pi0, piT}.
double geometrical_lower_bound(double gap, double eps, double pi0, double piT);

// Both sides of the geometrical sandwich for one instance, plus the
// hypothesis check on the penalty-term gap.
struct SandwichReport {
    double lower;           // geometrical lower bound
    double penalty;         // UNSAT penalty
    double upper;           // E(H_clock + |0><0| + |T><T|)
    double epsilon;
    double pi0, piT;
    double clock_gap;
    double penalty_gap;     // spectral gap of H_in + H_out
    bool hypothesis_holds;  // clock_gap < penalty_gap
};

SandwichReport lemma2_sandwich(const ClockWeights& w, const Circuit& c, const PenaltyPair& p, int qubit_cap = 6);

// Per-block quantities of the Jordan decomposition of (Pi_in, U+ Pi_out U):
// P_i = [[lambda, -|xi|], [-|xi|, mu]] with lambda = eta^2 mu, |xi| = eta mu.
struct ProjectorBlock {
    double lambda;
    double mu;
    double xi;      // magnitude of the off-diagonal coupling
    double eta;     // sqrt(lambda/mu)
    double trace;   // lambda + mu, 1 for genuine two-dimensional blocks
    bool two_dim;
};

std::vector<ProjectorBlock> projector_pair_quantities(const PenaltyPair& p, const Matrix& u);

// Bounds implied by the acceptance probability for a NO instance:
// mu_i >= 1 - eps, lambda_i <= eps, eta_i <= sqrt(eps/(1-eps)), unit traces
// and the rank-one structure lambda = eta^2 mu, |xi| = eta mu.
bool projector_blocks_satisfy_bounds(const std::vector<ProjectorBlock>& blocks, double eps, double tol = 1e-9);

// Appendix-style padded construction: T/2 identity gates on each side,
// penalties spread over the padded windows, and the angle between ker H and
// ker P.  cos^2(theta) <= (3 + sqrt(eps))/4.
struct PaddedConstruction {
    HermitianMatrix h;        // padded propagation Hamiltonian
    HermitianMatrix penalty;  // spread penalty P
    double cos2theta;
    double epsilon;
    double unsat;             // E(H + P) - E(H)
};

PaddedConstruction padded_construction(const Circuit& c, const PenaltyPair& p, int qubit_cap = 6);

}  // namespace clockforge
