#pragma once

#include <string>

#include <json.hpp>

#include "clockforge/circuit.hpp"
#include "clockforge/clock.hpp"
#include "clockforge/markov.hpp"
#include "clockforge/matrix.hpp"
#include "clockforge/tridiagonal.hpp"
#include "clockforge/ulg.hpp"

namespace clockforge {

using json = nlohmann::json;

// Matrices: {dim, entries: [[re, im], ...]} row-major.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json hermitian_to_json(const HermitianMatrix& h);
HermitianMatrix hermitian_from_json(const json& j);

// SymTridiagonal: {diag: [...], offdiag: [...]}.
json tridiagonal_to_json(const SymTridiagonal& t);
SymTridiagonal tridiagonal_from_json(const json& j);

// Complex tridiagonal: {diag: [...], offdiag: [[re, im], ...]}.
json complex_tridiagonal_to_json(const ComplexTridiagonal& t);
ComplexTridiagonal complex_tridiagonal_from_json(const json& j);

// TimeDistribution: {T, pi: [...]}.
json distribution_to_json(const TimeDistribution& d);
TimeDistribution distribution_from_json(const json& j);

// Circuit: {n, gates: [{name | matrix, targets}]}.
json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

// Penalties: {in_qubits: [...], out_qubit: k} or {pi_in: matrix, pi_out: matrix}.
PenaltyPair penalties_from_json(const json& j, int n);

// Markov chain: {P: [[...]], pi: [...]}.
json chain_to_json(const MarkovChain& mc);
MarkovChain chain_from_json(const json& j);

// ULG: {vertices: [...], d, edges: [{a, b, unitary, weight?}], vertex_weights?}.
// Edge endpoints refer to the vertices list by name or index.
json ulg_to_json(const UnitaryLabeledGraph& g);
UnitaryLabeledGraph ulg_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace clockforge
