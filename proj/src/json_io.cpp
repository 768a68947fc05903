#include "clockforge/json_io.hpp"

#include <fstream>

namespace clockforge {

namespace {

json complex_list(const std::vector<cplx>& v) {
    json out = json::array();
    for (const cplx& z : v) out.push_back({z.real(), z.imag()});
    return out;
}

std::vector<cplx> complex_list_from(const json& j) {
    std::vector<cplx> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("json: complex entries must be [re, im]");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"dim", m.rows()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j) {
    const int dim = j.at("dim").get<int>();
    const auto& entries = j.at("entries");
    if (static_cast<long>(entries.size()) != static_cast<long>(dim) * dim)
        throw std::invalid_argument("json matrix: entry count does not match dim^2");
    Matrix m(dim, dim);
    long idx = 0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const auto& e = entries[idx++];
            m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

json hermitian_to_json(const HermitianMatrix& h) { return matrix_to_json(h.matrix()); }

HermitianMatrix hermitian_from_json(const json& j) { return HermitianMatrix(matrix_from_json(j)); }

json tridiagonal_to_json(const SymTridiagonal& t) { return json{{"diag", t.diag}, {"offdiag", t.offdiag}}; }

SymTridiagonal tridiagonal_from_json(const json& j) {
    return SymTridiagonal(j.at("diag").get<std::vector<double>>(), j.at("offdiag").get<std::vector<double>>());
}

json complex_tridiagonal_to_json(const ComplexTridiagonal& t) {
    return json{{"diag", t.diag}, {"offdiag", complex_list(t.offdiag)}};
}

ComplexTridiagonal complex_tridiagonal_from_json(const json& j) {
    return ComplexTridiagonal(j.at("diag").get<std::vector<double>>(), complex_list_from(j.at("offdiag")));
}

json distribution_to_json(const TimeDistribution& d) { return json{{"T", d.T}, {"pi", d.pi}}; }

TimeDistribution distribution_from_json(const json& j) {
    return TimeDistribution(j.at("T").get<int>(), j.at("pi").get<std::vector<double>>());
}

json circuit_to_json(const Circuit& c) {
    json gates = json::array();
    for (const Gate& g : c.gates) {
        json jg{{"targets", g.targets}};
        if (!g.name.empty())
            jg["name"] = g.name;
        else
            jg["matrix"] = matrix_to_json(g.unitary);
        gates.push_back(jg);
    }
    return json{{"n", c.n}, {"gates", gates}};
}

Circuit circuit_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    std::vector<Gate> gates;
    for (const auto& jg : j.at("gates")) {
        std::vector<int> targets = jg.at("targets").get<std::vector<int>>();
        if (jg.contains("name"))
            gates.push_back(named_gate(jg["name"].get<std::string>(), std::move(targets)));
        else
            gates.push_back(Gate(matrix_from_json(jg.at("matrix")), std::move(targets)));
    }
    return Circuit(n, std::move(gates));
}

PenaltyPair penalties_from_json(const json& j, int n) {
    if (j.contains("pi_in") || j.contains("pi_out"))
        return PenaltyPair(matrix_from_json(j.at("pi_in")), matrix_from_json(j.at("pi_out")));
    std::vector<int> in_qubits = j.value("in_qubits", std::vector<int>{0});
    int out_qubit = j.value("out_qubit", 0);
    return standard_penalties(n, in_qubits, out_qubit);
}

json chain_to_json(const MarkovChain& mc) { return json{{"P", mc.p}, {"pi", mc.pi}}; }

MarkovChain chain_from_json(const json& j) {
    return MarkovChain(j.at("P").get<std::vector<std::vector<double>>>(), j.at("pi").get<std::vector<double>>());
}

json ulg_to_json(const UnitaryLabeledGraph& g) {
    json vertices = json::array();
    for (int v = 0; v < g.num_vertices; ++v) vertices.push_back(v);
    json edges = json::array();
    for (const UlgEdge& e : g.edges)
        edges.push_back(json{{"a", e.a}, {"b", e.b}, {"unitary", matrix_to_json(e.unitary)}, {"weight", e.weight}});
    json out{{"vertices", vertices}, {"d", g.d}, {"edges", edges}};
    if (!g.vertex_weights.empty()) out["vertex_weights"] = g.vertex_weights;
    return out;
}

UnitaryLabeledGraph ulg_from_json(const json& j) {
    const auto& vertices = j.at("vertices");
    const int nv = static_cast<int>(vertices.size());
    const int d = j.at("d").get<int>();
    auto vertex_index = [&](const json& ref) -> int {
        if (ref.is_number_integer()) return ref.get<int>();
        for (int v = 0; v < nv; ++v)
            if (vertices[v] == ref) return v;
        throw std::invalid_argument("ulg json: unknown vertex " + ref.dump());
    };
    std::vector<UlgEdge> edges;
    for (const auto& je : j.at("edges")) {
        UlgEdge e{vertex_index(je.at("a")), vertex_index(je.at("b")), Matrix(), je.value("weight", 1.0)};
        const auto& ju = je.at("unitary");
        if (ju.is_string()) {
            Gate g = named_gate(ju.get<std::string>(), {0});
            if (g.unitary.rows() != d) throw std::invalid_argument("ulg json: named unitary dimension mismatch");
            e.unitary = g.unitary;
        } else {
            e.unitary = matrix_from_json(ju);
        }
        edges.push_back(std::move(e));
    }
    std::vector<double> vw = j.value("vertex_weights", std::vector<double>{});
    return UnitaryLabeledGraph(nv, d, std::move(edges), std::move(vw));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

}  // namespace clockforge
