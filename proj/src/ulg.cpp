#include "clockforge/ulg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "clockforge/eig.hpp"

namespace clockforge {

namespace {

void check_edge_unitary(const Matrix& u, int d) {
    if (u.rows() != d || u.cols() != d) throw std::invalid_argument("UlgEdge: label dimension mismatch");
    Matrix g = u.adjoint() * u;
    g -= Matrix::identity(d);
    if (g.max_abs() > 1e-10) throw std::invalid_argument("UlgEdge: label is not unitary");
}

struct SpanningTree {
    std::vector<int> parent;        // -1 for roots
    std::vector<int> parent_edge;   // edge index into g.edges
    std::vector<char> edge_in_tree;
    std::vector<Matrix> path;       // path product from root: carries x_root to x_v
};

// BFS spanning forest; path[v] = product of oriented edge labels root -> v.
SpanningTree build_tree(const UnitaryLabeledGraph& g) {
    const int n = g.num_vertices;
    SpanningTree t;
    t.parent.assign(n, -1);
    t.parent_edge.assign(n, -1);
    t.edge_in_tree.assign(g.edges.size(), 0);
    t.path.assign(n, Matrix::identity(g.d));
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge index)
    for (size_t e = 0; e < g.edges.size(); ++e) {
        adj[g.edges[e].a].push_back({g.edges[e].b, static_cast<int>(e)});
        adj[g.edges[e].b].push_back({g.edges[e].a, static_cast<int>(e)});
    }
    std::vector<char> seen(n, 0);
    for (int root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (auto [w, e] : adj[v]) {
                if (seen[w]) continue;
                seen[w] = 1;
                t.parent[w] = v;
                t.parent_edge[w] = e;
                t.edge_in_tree[e] = 1;
                // traversing a -> b applies U; b -> a applies U^dagger
                const UlgEdge& edge = g.edges[e];
                t.path[w] = (edge.a == v) ? edge.unitary * t.path[v] : edge.unitary.adjoint() * t.path[v];
                q.push(w);
            }
        }
    }
    return t;
}

std::vector<int> tree_path_to_root(const SpanningTree& t, int v) {
    std::vector<int> out;
    while (v != -1) {
        out.push_back(v);
        v = t.parent[v];
    }
    return out;
}

}  // namespace

UnitaryLabeledGraph::UnitaryLabeledGraph(int v, int d_, std::vector<UlgEdge> e, std::vector<double> vw)
    : num_vertices(v), d(d_), edges(std::move(e)), vertex_weights(std::move(vw)) {
    if (num_vertices < 1) throw std::invalid_argument("UnitaryLabeledGraph: need at least one vertex");
    if (d < 1) throw std::invalid_argument("UnitaryLabeledGraph: label dimension must be >= 1");
    if (!vertex_weights.empty() && vertex_weights.size() != static_cast<size_t>(num_vertices))
        throw std::invalid_argument("UnitaryLabeledGraph: vertex weight count mismatch");
    std::vector<std::pair<int, int>> seen;
    for (const UlgEdge& edge : edges) {
        if (edge.a < 0 || edge.a >= num_vertices || edge.b < 0 || edge.b >= num_vertices)
            throw std::invalid_argument("UnitaryLabeledGraph: edge endpoint out of range");
        if (edge.a == edge.b) throw std::invalid_argument("UnitaryLabeledGraph: self-loops not supported");
        if (edge.weight <= 0.0) throw std::invalid_argument("UnitaryLabeledGraph: edge weight must be positive");
        check_edge_unitary(edge.unitary, d);
        auto key = std::make_pair(edge.a, edge.b);
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw std::invalid_argument("UnitaryLabeledGraph: multi-edge between the same ordered pair");
        seen.push_back(key);
    }
}

HermitianMatrix ulg_hamiltonian(const UnitaryLabeledGraph& g, long dim_cap) {
    const long dim = static_cast<long>(g.num_vertices) * g.d;
    if (dim > dim_cap)
        throw std::invalid_argument("ulg_hamiltonian: dimension " + std::to_string(dim) + " exceeds cap");
    const int d = g.d;
    Matrix h(static_cast<int>(dim), static_cast<int>(dim));
    for (const UlgEdge& e : g.edges) {
        // h_ab = w (|a><a| + |b><b|) (x) 1 - w (|a><b| (x) U+ + |b><a| (x) U)
        for (int i = 0; i < d; ++i) {
            h(e.a * d + i, e.a * d + i) += e.weight;
            h(e.b * d + i, e.b * d + i) += e.weight;
        }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const cplx u = e.unitary(i, j);
                if (u == cplx(0.0)) continue;
                h(e.b * d + i, e.a * d + j) -= e.weight * u;
                h(e.a * d + j, e.b * d + i) -= e.weight * std::conj(u);
            }
    }
    if (!g.vertex_weights.empty())
        for (int v = 0; v < g.num_vertices; ++v)
            for (int i = 0; i < d; ++i) h(v * d + i, v * d + i) += g.vertex_weights[v];
    return HermitianMatrix(h);
}

Matrix graph_laplacian(const UnitaryLabeledGraph& g) {
    const int n = g.num_vertices;
    Matrix l(n, n);
    for (const UlgEdge& e : g.edges) {
        l(e.a, e.a) += e.weight;
        l(e.b, e.b) += e.weight;
        l(e.a, e.b) -= e.weight;
        l(e.b, e.a) -= e.weight;
    }
    if (!g.vertex_weights.empty())
        for (int v = 0; v < n; ++v) l(v, v) += g.vertex_weights[v];
    return l;
}

SimplicityReport is_simple(const UnitaryLabeledGraph& g, double tol) {
    SpanningTree t = build_tree(g);
    SimplicityReport rep{true, 0.0, {}};
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (t.edge_in_tree[e]) continue;
        const UlgEdge& edge = g.edges[e];
        // fundamental cycle: root->a, edge a->b, b->root
        Matrix loop = t.path[edge.b].adjoint() * (edge.unitary * t.path[edge.a]);
        Matrix diff = loop - Matrix::identity(g.d);
        double res = diff.max_abs();
        rep.max_residual = std::max(rep.max_residual, res);
        if (res > tol && rep.simple) {
            rep.simple = false;
            // witness: a -> root -> b path plus this edge, as a vertex list
            std::vector<int> up = tree_path_to_root(t, edge.a);
            std::vector<int> down = tree_path_to_root(t, edge.b);
            rep.witness_cycle = up;
            rep.witness_cycle.insert(rep.witness_cycle.end(), down.rbegin(), down.rend());
        }
    }
    return rep;
}

EquivalenceReport laplacian_equivalence_check(const UnitaryLabeledGraph& g, double tol) {
    SimplicityReport s = is_simple(g, tol);
    if (!s.simple)
        throw std::invalid_argument("laplacian_equivalence_check: graph is not simple (witness cycle of length " +
                                    std::to_string(s.witness_cycle.size()) + ")");
    SpanningTree t = build_tree(g);
    const int n = g.num_vertices, d = g.d;
    Matrix w(n * d, n * d);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) w(v * d + i, v * d + j) = t.path[v](i, j);
    Matrix hg = ulg_hamiltonian(g).matrix();
    Matrix target = kron(graph_laplacian(g), Matrix::identity(d));
    Matrix diff = w.adjoint() * (hg * w) - target;
    return {diff.max_abs(), std::move(w)};
}

DiameterResult matrix_diameter(const HermitianMatrix& h, double zero_tol) {
    if (zero_tol <= 0.0) throw std::invalid_argument("matrix_diameter: zero_tol must be positive");
    const int n = h.dim();
    auto dec = eig_hermitian(h);
    double norm = std::max(std::abs(dec.eigenvalues.front()), std::abs(dec.eigenvalues.back()));

    // ground support for diam'
    Vector ground = dec.column(0);
    std::vector<char> in_support(n, 0);
    for (int i = 0; i < n; ++i) in_support[i] = std::norm(ground[i]) > 1e-24;

    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) dist[i][i] = 0;

    // Powers of H/||H|| with a cancellation-aware zero test: alongside the
    // power M_k we carry the absolute-value product S_k >= |M_k|, the natural
    // magnitude scale per entry.  An entry is zero either structurally
    // (S_k = 0 exactly) or when it has cancelled below zero_tol relative to
    // that scale.  A flat threshold on |M_k| would misread band-limited
    // entries, whose legitimate magnitudes decay geometrically in k.
    Matrix scaled = h.matrix();
    if (norm > 0.0) scaled *= cplx(1.0 / norm, 0.0);
    std::vector<double> abs_scaled(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) abs_scaled[static_cast<size_t>(i) * n + j] = std::abs(scaled(i, j));
    Matrix power = Matrix::identity(n);
    std::vector<double> acc(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) acc[static_cast<size_t>(i) * n + i] = 1.0;
    int remaining = n * n - n;
    std::vector<double> next_acc(static_cast<size_t>(n) * n);
    for (int k = 1; k <= n - 1 && remaining > 0; ++k) {
        power = power * scaled;
        std::fill(next_acc.begin(), next_acc.end(), 0.0);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                const double ail = acc[static_cast<size_t>(i) * n + l];
                if (ail == 0.0) continue;
                for (int j = 0; j < n; ++j) next_acc[static_cast<size_t>(i) * n + j] += ail * abs_scaled[static_cast<size_t>(l) * n + j];
            }
        acc.swap(next_acc);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (dist[i][j] >= 0) continue;
                const double scale_ij = acc[static_cast<size_t>(i) * n + j];
                if (scale_ij > 0.0 && std::abs(power(i, j)) > zero_tol * scale_ij) {
                    dist[i][j] = k;
                    --remaining;
                }
            }
    }
    DiameterResult out{0, 0, true, true};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (dist[i][j] < 0) {
                out.finite = false;
                if (in_support[i] && in_support[j]) out.prime_finite = false;
            } else {
                out.diam = std::max(out.diam, dist[i][j]);
                if (in_support[i] && in_support[j]) out.diam_prime = std::max(out.diam_prime, dist[i][j]);
            }
        }
    if (!out.finite) out.diam = -1;
    if (!out.prime_finite) out.diam_prime = -1;
    return out;
}

DiameterReport diameter_bound_check(const HermitianMatrix& h, double zero_tol, double slack) {
    const int n = h.dim();
    if (n < 2) throw std::invalid_argument("diameter_bound_check: need dim >= 2");
    auto dec = eig_hermitian(h);
    DiameterReport rep{};
    rep.degenerate_ground = dec.degenerate_ground;
    rep.gap = dec.eigenvalues[1] - dec.eigenvalues[0];
    rep.norm = std::max(std::abs(dec.eigenvalues.front()), std::abs(dec.eigenvalues.back()));

    Vector ground = dec.column(0);
    rep.pi_min = 1.0;
    rep.pi_min_prime = 1.0;
    bool any_zero = false;
    for (int i = 0; i < n; ++i) {
        double p = std::norm(ground[i]);
        rep.pi_min = std::min(rep.pi_min, p);
        if (p > 1e-24)
            rep.pi_min_prime = std::min(rep.pi_min_prime, p);
        else
            any_zero = true;
    }
    rep.used_support_fallback = any_zero;

    DiameterResult diam = matrix_diameter(h, zero_tol);
    rep.diam = diam.diam;
    rep.diam_prime = diam.diam_prime;

    // closed form on the full basis (support-restricted quantities when some
    // ground amplitude vanishes)
    double pi_for_bound = any_zero ? rep.pi_min_prime : rep.pi_min;
    int diam_for_bound = any_zero ? rep.diam_prime : rep.diam;
    if (diam_for_bound > 0 && pi_for_bound > 0.0) {
        double lg = std::log(2.0 / pi_for_bound);
        rep.bound = 0.5 * rep.norm * (lg / diam_for_bound) * (lg / diam_for_bound);
        rep.holds = rep.gap <= rep.bound + slack;
        rep.near_saturation = rep.holds && rep.gap > 0.5 * rep.bound;
    } else {
        rep.bound = std::numeric_limits<double>::infinity();
        rep.holds = true;
        rep.near_saturation = false;
    }

    // refined form: diam' <= (1 + 1/sqrt(2 Delta_G)) ln(2/pi'_min), with
    // Delta_G the gap of (||H|| - H)/(||H|| - E0)
    double denom = rep.norm - dec.eigenvalues[0];
    if (denom > 0.0 && rep.diam_prime > 0 && rep.pi_min_prime > 0.0 && rep.gap > 0.0) {
        double delta_g = rep.gap / denom;
        rep.refined_rhs = (1.0 + 1.0 / std::sqrt(2.0 * delta_g)) * std::log(2.0 / rep.pi_min_prime);
        rep.refined_holds = rep.diam_prime <= rep.refined_rhs + slack;
        rep.near_saturation = rep.near_saturation || (rep.refined_holds && rep.diam_prime > 0.5 * rep.refined_rhs);
    } else {
        rep.refined_rhs = std::numeric_limits<double>::infinity();
        rep.refined_holds = true;
    }
    return rep;
}

FrustratedPair frustrated_pair_analysis(const Matrix& u) {
    if (!u.is_square()) throw std::invalid_argument("frustrated_pair_analysis: U must be square");
    const int d = u.rows();
    check_edge_unitary(u, d);

    // two vertices, two parallel edges labeled 1 and U
    Matrix h(2 * d, 2 * d);
    Matrix coupling = Matrix::identity(d) + u;  // 1 + U
    for (int i = 0; i < d; ++i) {
        h(i, i) += 2.0;
        h(d + i, d + i) += 2.0;
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const cplx z = coupling(i, j);
            h(d + i, j) -= z;
            h(j, d + i) -= std::conj(z);
        }
    HermitianMatrix hg(h);

    // eigenbasis of 1 + U: normal matrix, diagonalized through the Hermitian
    // decomposition of U = sum e^{i theta_k} |k><k|
    Matrix herm_part(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) herm_part(i, j) = 0.5 * (u(i, j) + std::conj(u(j, i)));
    // eigenvectors of (U + U+)/2 diagonalize U only when U has distinct
    // cos(theta); to stay general use the Hermitian matrix i(U - U+) jointly.
    // A robust route: diagonalize the Hermitian H1 = U + U+ and within each
    // eigenspace diagonalize H2 = i(U - U+).
    auto d1 = eig_hermitian(HermitianMatrix(herm_part + herm_part.adjoint(), 1e-9));
    Matrix basis = d1.eigenvectors;
    // refine inside degenerate blocks of H1 using H2
    Matrix h2(d, d);
    const cplx im(0.0, 1.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) h2(i, j) = im * (u(i, j) - std::conj(u(j, i)));
    int start = 0;
    while (start < d) {
        int end = start;
        while (end + 1 < d && std::abs(d1.eigenvalues[end + 1] - d1.eigenvalues[start]) < 1e-9) ++end;
        if (end > start) {
            int m = end - start + 1;
            Matrix sub(m, m);
            Matrix blockbasis(d, m);
            for (int c = 0; c < m; ++c)
                for (int r = 0; r < d; ++r) blockbasis(r, c) = basis(r, start + c);
            sub = blockbasis.adjoint() * (h2 * blockbasis);
            auto d2 = eig_hermitian(HermitianMatrix(sub, 1e-9));
            Matrix rotated = blockbasis * d2.eigenvectors;
            for (int c = 0; c < m; ++c)
                for (int r = 0; r < d; ++r) basis(r, start + c) = rotated(r, c);
        }
        start = end + 1;
    }

    // order the eigenbasis by descending |lambda_i(1 + U)| so the strongest
    // edge connection comes first
    {
        Matrix lam0 = basis.adjoint() * (coupling * basis);
        std::vector<int> order(d);
        for (int i = 0; i < d; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return std::abs(lam0(x, x)) > std::abs(lam0(y, y)); });
        Matrix sorted(d, d);
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < d; ++r) sorted(r, c) = basis(r, order[c]);
        basis = std::move(sorted);
    }

    Matrix big = Matrix(2 * d, 2 * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            big(i, j) = basis(i, j);
            big(d + i, d + j) = basis(i, j);
        }
    Matrix transformed = big.adjoint() * (h * big);

    FrustratedPair out{std::move(hg), HermitianMatrix(transformed, 1e-8), {}, {}};
    Matrix lam = basis.adjoint() * (coupling * basis);
    for (int i = 0; i < d; ++i) {
        cplx l = lam(i, i);
        double al = std::abs(l);
        if (al > 2.0 + 1e-9) throw numerical_error("frustrated_pair_analysis: |lambda| <= 2 violated");
        out.lambdas.push_back(l);
        out.penalties.push_back(2.0 - std::min(2.0, al));
    }
    return out;
}

LowEnergyCertificate low_energy_unsat_upper_bound(const HermitianMatrix& h_prop,
                                                  const std::vector<int>& penalty_vertices, double r) {
    const int n = h_prop.dim();
    for (int v : penalty_vertices)
        if (v < 0 || v >= n) throw std::invalid_argument("low_energy_unsat_upper_bound: vertex out of range");
    auto dec = eig_hermitian(h_prop);
    int k = 0;
    while (k < n && dec.eigenvalues[k] <= r) ++k;
    const int m = static_cast<int>(penalty_vertices.size());
    if (k < m + 1)
        throw std::invalid_argument("low_energy_unsat_upper_bound: only " + std::to_string(k) +
                                    " eigenvalues <= R for " + std::to_string(m) + " penalty vertices");

    // constraints: sum_i c_i psi_i(v) = 0 for each penalty vertex v
    Matrix constraints(m, k);
    for (int row = 0; row < m; ++row)
        for (int i = 0; i < k; ++i) constraints(row, i) = dec.eigenvectors(penalty_vertices[row], i);
    // null space of the constraint matrix via its Gram kernel
    Matrix gram = constraints.adjoint() * constraints;
    auto gd = eig_hermitian(HermitianMatrix(gram, 1e-9));
    const double null_tol = 1e-12 * std::max(1.0, gd.eigenvalues.back());
    // candidate coefficient vectors: eigenvectors with ~zero Gram eigenvalue;
    // among them pick the one minimizing the energy quadratic form
    double best_energy = std::numeric_limits<double>::max();
    Vector best_c;
    for (int c = 0; c < k; ++c) {
        if (gd.eigenvalues[c] > null_tol) continue;
        Vector coeff(k);
        double energy = 0.0;
        for (int i = 0; i < k; ++i) {
            coeff[i] = gd.eigenvectors(i, c);
            energy += std::norm(coeff[i]) * dec.eigenvalues[i];
        }
        if (energy < best_energy) {
            best_energy = energy;
            best_c = coeff;
        }
    }
    if (best_c.empty()) throw numerical_error("low_energy_unsat_upper_bound: null-space solve failed");

    LowEnergyCertificate cert{};
    cert.low_dim = k;
    cert.energy = best_energy;
    cert.state.assign(n, cplx(0.0));
    for (int i = 0; i < k; ++i)
        for (int row = 0; row < n; ++row) cert.state[row] += best_c[i] * dec.eigenvectors(row, i);
    normalize(cert.state);
    fix_phase(cert.state);
    return cert;
}

}  // namespace clockforge
