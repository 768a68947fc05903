// clockforge: build, diagonalize, and verify modified circuit-to-Hamiltonian
// constructions from the command line.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 claim-verification failure.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <thread>

#include "clockforge/adiabatic.hpp"
#include "clockforge/circuit.hpp"
#include "clockforge/clock.hpp"
#include "clockforge/eig.hpp"
#include "clockforge/json_io.hpp"
#include "clockforge/markov.hpp"
#include "clockforge/report.hpp"
#include "clockforge/rng.hpp"
#include "clockforge/ulg.hpp"

using namespace clockforge;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerify = 4;

double default_tol() {
    if (const char* env = std::getenv("CLOCKFORGE_TOL")) {
        double v = std::atof(env);
        if (v > 0.0) return v;
    }
    return 1e-10;
}

std::string timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

// Deterministic parameter-order parallel map: results land by index no
// matter which worker finishes first.
template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : workers) t.join();
}

ClockWeights weights_by_name(const std::string& name, int T) {
    if (name == "kitaev" || name == "uniform") return kitaev_weights(T);
    if (name == "theorem1") {
        auto t1 = theorem1_matrix(T);
        std::vector<cplx> b(t1.offdiag.begin(), t1.offdiag.end());
        return ClockWeights(T, t1.diag, std::move(b));
    }
    // otherwise a JSON file {T, a:[...], b:[[re,im],...], bound?}
    json j = load_json_file(name);
    int jt = j.at("T").get<int>();
    std::vector<double> a = j.at("a").get<std::vector<double>>();
    std::vector<cplx> b;
    for (const auto& e : j.at("b")) b.emplace_back(e[0].get<double>(), e[1].get<double>());
    double bound = j.value("bound", 1.0);
    return ClockWeights(jt, std::move(a), std::move(b), bound);
}

TimeDistribution distribution_by_name(const std::string& name, int T) {
    if (name == "uniform") return uniform_distribution(T);
    if (name == "theorem1") return theorem1_distribution(T);
    return distribution_from_json(load_json_file(name));
}

std::vector<int> parse_t_list(const std::string& spec) {
    std::vector<int> out;
    std::string token;
    for (char c : spec + ",") {
        if (c == ',') {
            if (!token.empty()) out.push_back(std::stoi(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (out.empty()) throw std::invalid_argument("empty T list");
    return out;
}

std::string g_format = "json";

// single-object reports: JSON by default, or flat key,value rows
void emit(const json& j, const std::string& out_path) {
    if (g_format == "csv" && out_path.empty()) {
        std::cout << "key,value\n";
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.value().is_primitive()) std::cout << it.key() << "," << it.value().dump() << "\n";
        return;
    }
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json_file(out_path, j);
}

SymTridiagonal kitaev_clock(int T) {
    std::vector<double> d(T + 1, 2.0);
    d.front() = d.back() = 1.0;
    return SymTridiagonal(d, std::vector<double>(T, -1.0));
}

// --- verify targets ---------------------------------------------------------
// One target per desk-checkable claim; each prints a table and returns true
// when the claim holds at its pinned tolerance.

bool verify_lemma1(std::uint64_t seed) {
    Rng rng(seed);
    std::printf("%6s %4s %4s %14s\n", "trial", "n", "T", "residual");
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng.below(3));
        int T = 2 + static_cast<int>(rng.below(7));
        std::vector<Gate> gates;
        const char* names[] = {"X", "Y", "Z", "H", "S", "T"};
        for (int t = 0; t < T; ++t) gates.push_back(named_gate(names[rng.below(6)], {static_cast<int>(rng.below(n))}));
        Circuit c(n, std::move(gates));
        std::vector<double> a(T + 1);
        std::vector<cplx> b(T);
        for (auto& x : a) x = rng.uniform(-1.0, 1.0);
        for (auto& x : b) x = std::polar(rng.uniform(0.1, 1.0), rng.uniform(0.0, 2 * M_PI));
        ClockWeights w(T, a, b);
        Matrix wmat = history_unitary(c);
        Matrix conj = wmat.adjoint() * (h_prop(w, c).matrix() * wmat);
        Matrix target = kron(clock_tridiagonal(w).dense(), Matrix::identity(1 << n));
        double res = (conj - target).max_abs();
        std::printf("%6d %4d %4d %14.3e\n", trial, n, T, res);
        ok = ok && res <= 1e-9;
    }
    return ok;
}

bool verify_lemma3(std::uint64_t seed) {
    Rng rng(seed);
    std::printf("%5s %14s %14s\n", "T", "|E0|", "amp dev");
    bool ok = true;
    for (int T : {10, 50, 200}) {
        double worst_e0 = 0.0, worst_amp = 0.0;
        for (int k = 0; k < 50; ++k) {
            std::vector<double> pi(T + 1);
            double sum = 0.0;
            for (auto& x : pi) {
                x = rng.uniform(0.05, 1.0);
                sum += x;
            }
            for (auto& x : pi) x /= sum;
            double s2 = 0.0;
            for (double x : pi) s2 += x;
            pi.back() += 1.0 - s2;
            TimeDistribution dist(T, pi);
            auto h = metropolis_hamiltonian(dist);
            worst_e0 = std::max(worst_e0, std::abs(tridiag_ground_energy(h)));
            auto g = ground_state(h);
            for (int t = 0; t <= T; ++t)
                worst_amp = std::max(worst_amp, std::abs(g.state[t].real() - std::sqrt(dist.pi[t])));
        }
        std::printf("%5d %14.3e %14.3e\n", T, worst_e0, worst_amp);
        ok = ok && worst_e0 <= 1e-10 && worst_amp <= 1e-8;
    }
    return ok;
}

bool verify_theorem1(const std::vector<int>& ts, int jobs) {
    std::printf("%6s %16s %14s\n", "T", "gap*T^2", "E0");
    std::vector<double> scaled(ts.size()), e0s(ts.size());
    parallel_for(static_cast<int>(ts.size()), jobs, [&](int i) {
        auto m = theorem1_matrix(ts[i]);
        scaled[i] = spectral_gap(m) * ts[i] * ts[i];
        e0s[i] = tridiag_ground_energy(m);
    });
    bool ok = true;
    for (size_t i = 0; i < ts.size(); ++i) {
        std::printf("%6d %16.6f %14.3e\n", ts[i], scaled[i], e0s[i]);
        ok = ok && scaled[i] > 0.70 && scaled[i] < 0.85 && std::abs(e0s[i]) <= 1e-10;
        if (i > 0) ok = ok && std::abs(scaled[i] / scaled[i - 1] - 1.0) < 0.10;
    }
    return ok;
}

bool verify_theorem2(int jobs) {
    std::printf("%5s %12s %10s %12s %10s\n", "T", "min gap", "monotone", "argmin(std)", "pi_T");
    bool ok = true;
    std::vector<int> ts{10, 20, 40};
    std::vector<double> mins(ts.size()), argmins(ts.size()), pits(ts.size());
    std::vector<int> monos(ts.size());
    parallel_for(static_cast<int>(ts.size()), jobs, [&](int i) {
        int T = ts[i];
        auto mod = modified_schedule(theorem1_matrix(T), std::pow(double(T), 4.0));
        auto grid = uniform_grid(201);
        auto curve = gap_sweep(mod, grid);
        mins[i] = curve.min_gap;
        monos[i] = monotone_excited_check(mod, grid).non_decreasing ? 1 : 0;
        argmins[i] = gap_sweep(standard_schedule(theorem1_matrix(T)), grid).argmin;
        pits[i] = std::norm(ground_state(theorem1_matrix(T)).state.back());
    });
    for (size_t i = 0; i < ts.size(); ++i) {
        std::printf("%5d %12.4f %10s %12.4f %10.4f\n", ts[i], mins[i], monos[i] ? "yes" : "no", argmins[i], pits[i]);
        ok = ok && mins[i] >= 0.25 - 1e-9 && monos[i] && argmins[i] >= 1.0 - 0.005 - 1e-12 &&
             std::abs(pits[i] - 0.25) <= 1e-8;
    }
    return ok;
}

bool verify_theorem3() {
    std::printf("%6s %18s %18s %14s\n", "T", "E0", "sine-ansatz bound", "deviation");
    bool ok = true;
    for (int T : {2, 10, 100, 1000}) {
        auto h = endpoint_penalized_clock(T);
        double exact = 2.0 * (1.0 - std::cos(M_PI / (T + 2)));
        double e0 = tridiag_ground_energy(h);
        double bound = stoquastic_lower_bound(h, dirichlet_sine_ansatz(T));
        std::printf("%6d %18.12f %18.12f %14.3e\n", T, e0, bound, std::abs(bound - exact));
        ok = ok && std::abs(e0 - exact) <= 1e-10 && std::abs(bound - exact) <= 1e-10;
    }
    return ok;
}

bool verify_theorem4(std::uint64_t seed) {
    Rng rng(seed);
    std::printf("%5s %10s %10s %16s %14s\n", "T", "mu", "eta", "E0*T^2", "case dev");
    bool ok = true;
    for (int T : {10, 100}) {
        for (int trial = 0; trial < 5; ++trial) {
            double eps = rng.uniform(0.0, 0.5);
            SBlockParams p{T, 1.0 - eps, rng.uniform(0.0, std::sqrt(eps / 2.0))};
            auto closed = s_block_case_values(p).as_array();
            auto ratios = s_block_case_ratios(p).as_array();
            double dev = 0.0;
            for (int i = 0; i < 5; ++i) dev = std::max(dev, std::abs(closed[i] - ratios[i]));
            double e0 = eig_hermitian(s_block(p)).eigenvalues[0];
            std::printf("%5d %10.4f %10.4f %16.6f %14.3e\n", T, p.mu, p.eta, e0 * T * T, dev);
            ok = ok && dev <= 1e-10 && e0 * T * T > 0.5 && e0 * T * T < 6.0;
        }
    }
    return ok;
}

bool verify_kitaev(int jobs) {
    std::printf("%5s %3s %18s %18s\n", "T", "n", "kitaev pen*T^2", "theorem1 pen*T^2");
    struct Row {
        double kit, th1;
        bool sandwich;
    };
    std::vector<int> ts{8, 16, 32};
    std::vector<Row> rows(ts.size());
    parallel_for(static_cast<int>(ts.size()), jobs, [&](int i) {
        int T = ts[i];
        std::vector<Gate> gates(T, named_gate("I", {0}));
        Circuit c(2, gates);
        Matrix pin(4, 4), pout(4, 4);
        for (int x = 0; x < 4; ++x) {
            pin(x, x) = (x >> 1) ? 1.0 : 0.0;
            pout(x, x) = (x >> 1) ? 0.0 : 1.0;
        }
        PenaltyPair p(pin, pout);
        auto t1 = theorem1_matrix(T);
        std::vector<cplx> b(t1.offdiag.begin(), t1.offdiag.end());
        auto rep_k = lemma2_sandwich(kitaev_weights(T), c, p);
        auto rep_1 = lemma2_sandwich(ClockWeights(T, t1.diag, b), c, p);
        bool sandwich = rep_k.lower <= rep_k.penalty + 1e-10 && rep_k.penalty <= rep_k.upper + 1e-10 &&
                        rep_1.lower <= rep_1.penalty + 1e-10 && rep_1.penalty <= rep_1.upper + 1e-10;
        rows[i] = {rep_k.penalty * T * T, rep_1.penalty * T * T, sandwich};
    });
    bool ok = true;
    for (size_t i = 0; i < ts.size(); ++i) {
        std::printf("%5d %3d %18.4f %18.4f\n", ts[i], 2, rows[i].kit, rows[i].th1);
        ok = ok && rows[i].kit > 0.15 && rows[i].th1 > 0.15 && rows[i].sandwich;
    }
    return ok;
}

bool verify_theorem5(std::uint64_t seed) {
    Rng rng(seed);
    double ens_max = 0.0;
    for (int trial = 0; trial < 120; ++trial) {
        int T = 10 + static_cast<int>(rng.below(55));
        std::vector<double> d(T + 1);
        std::vector<cplx> e(T);
        for (auto& x : d) x = rng.uniform(-1.0, 1.0);
        for (auto& x : e) x = std::polar(rng.uniform(0.05, 1.0), rng.uniform(0.0, 2 * M_PI));
        auto pb = tridiag_product_bound(ComplexTridiagonal(d, e));
        ens_max = std::max(ens_max, pb.product * T * T);
    }
    double th1 = 0.0;
    std::printf("%6s %18s\n", "T", "theorem1 prod*T^2");
    for (int T : {25, 50, 100, 200, 400}) {
        double v = tridiag_product_bound(theorem1_matrix(T)).product * T * T;
        std::printf("%6d %18.6f\n", T, v);
        th1 = std::max(th1, v);
    }
    double all_max = std::max(ens_max, th1);
    std::printf("ensemble max %.6f, theorem1 max %.6f (saturation factor %.2f)\n", all_max, th1, all_max / th1);
    return all_max < 0.25 && th1 >= all_max / 10.0;
}

bool verify_theorem6(std::uint64_t seed) {
    Rng rng(seed);
    std::printf("%-22s %12s %12s %8s\n", "instance", "gap", "bound", "holds");
    bool ok = true;
    auto show = [&](const std::string& name, const HermitianMatrix& h) {
        auto rep = diameter_bound_check(h);
        std::printf("%-22s %12.6f %12.6f %8s\n", name.c_str(), rep.gap, rep.bound,
                    rep.holds && rep.refined_holds ? "yes" : "NO");
        ok = ok && rep.holds && rep.refined_holds;
    };
    for (int T : {20, 50, 100})
        show("endpoint-clock T=" + std::to_string(T), HermitianMatrix(endpoint_penalized_clock(T).dense()));
    for (int T : {25, 60}) show("theorem1 T=" + std::to_string(T), HermitianMatrix(theorem1_matrix(T).dense()));
    int viol = 0;
    for (int trial = 0; trial < 50; ++trial) {
        int n = 8 + static_cast<int>(rng.below(33));
        int band = 1 + static_cast<int>(rng.below(3));
        Matrix h(n, n);
        for (int i = 0; i < n; ++i) {
            h(i, i) = rng.uniform(-1.0, 1.0);
            for (int j = i + 1; j <= std::min(n - 1, i + band); ++j) {
                cplx z(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                if (std::abs(z) > 1.0) z /= std::abs(z);
                h(i, j) = z;
                h(j, i) = std::conj(z);
            }
        }
        auto rep = diameter_bound_check(HermitianMatrix(h));
        if (!(rep.holds && rep.refined_holds)) ++viol;
    }
    std::printf("random banded ensemble: %d of 50 violations\n", viol);
    bool diam_ok = true;
    for (int T = 1; T <= 64; ++T)
        if (matrix_diameter(clock_hamiltonian(kitaev_weights(T))).diam != T) diam_ok = false;
    std::printf("path-Laplacian diameter exact up to T=64: %s\n", diam_ok ? "yes" : "NO");
    return ok && viol == 0 && diam_ok;
}

bool verify_appendix_a1(std::uint64_t seed) {
    Rng rng(seed);
    std::printf("%6s %10s %12s %16s\n", "trial", "eps", "cos^2", "bound");
    bool ok = true;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Gate> gates;
        const char* names[] = {"X", "Y", "Z", "H", "S", "T"};
        for (int t = 0; t < 4; ++t) gates.push_back(named_gate(names[rng.below(6)], {static_cast<int>(rng.below(2))}));
        Circuit c(2, std::move(gates));
        auto p = standard_penalties(2, {1}, 0);
        auto pad = padded_construction(c, p);
        double bound = (3.0 + std::sqrt(pad.epsilon)) / 4.0;
        std::printf("%6d %10.4f %12.6f %16.6f\n", trial, pad.epsilon, pad.cos2theta, bound);
        ok = ok && pad.cos2theta <= bound + 1e-9;
    }
    std::printf("%6s %18s\n", "T", "padded unsat*T^2");
    for (int T : {4, 8, 16}) {
        std::vector<Gate> gates(T, named_gate("I", {0}));
        Circuit c(1, gates);
        Matrix pin(2, 2), pout(2, 2);
        pin(1, 1) = 1;
        pout(0, 0) = 1;
        auto pad = padded_construction(c, PenaltyPair(pin, pout));
        std::printf("%6d %18.4f\n", T, pad.unsat * T * T);
        ok = ok && pad.unsat * T * T > 0.15 && pad.unsat * T * T < 5.0;
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clockforge: clock Hamiltonians, Markov-chain gap bounds, and circuit-to-Hamiltonian verification"};
    app.require_subcommand(1);
    int jobs = 1;
    std::uint64_t seed = 1;
    app.add_option("--jobs", jobs, "worker threads for sweeps")->capture_default_str();
    app.add_option("--seed", seed, "PRNG seed recorded in outputs")->capture_default_str();
    app.add_option("--format", g_format, "single-object report format")->check(CLI::IsMember({"json", "csv"}));

    // clock ------------------------------------------------------------
    auto* clock = app.add_subcommand("clock", "clock Hamiltonian constructions");
    auto* clock_build = clock->add_subcommand("build", "build a clock Hamiltonian and report E0/gap");
    int cb_t = 8;
    std::string cb_weights = "kitaev", cb_out;
    clock_build->add_option("--T", cb_t, "number of gates")->required();
    clock_build->add_option("--weights", cb_weights, "kitaev|theorem1|uniform|file.json");
    clock_build->add_option("--out", cb_out, "output path (JSON)");

    auto* clock_metro = clock->add_subcommand("metropolis", "Metropolis Hamiltonian gap sweep (CSV)");
    std::string cm_pi = "uniform", cm_t = "100", cm_out;
    clock_metro->add_option("--pi", cm_pi, "uniform|theorem1|file.json");
    clock_metro->add_option("--T", cm_t, "comma-separated T list");
    clock_metro->add_option("--out", cm_out, "CSV output path");

    auto* clock_bound = clock->add_subcommand("bound", "stoquastic sine-ansatz bound vs exact ground energy");
    int bound_t = 10;
    clock_bound->add_option("--T", bound_t, "clock length")->required();

    // circuit ------------------------------------------------------------
    auto* circ = app.add_subcommand("circuit", "full circuit Hamiltonians");
    auto* circ_accept = circ->add_subcommand("accept", "acceptance probability");
    std::string ca_file, ca_pen;
    circ_accept->add_option("--file", ca_file, "circuit JSON")->required();
    circ_accept->add_option("--penalties", ca_pen, "penalties JSON");

    auto* circ_unsat = circ->add_subcommand("unsat", "UNSAT penalty and the geometrical sandwich");
    std::string cu_file, cu_pen, cu_weights = "kitaev";
    circ_unsat->add_option("--file", cu_file, "circuit JSON")->required();
    circ_unsat->add_option("--penalties", cu_pen, "penalties JSON");
    circ_unsat->add_option("--weights", cu_weights, "kitaev|theorem1|file.json");

    auto* circ_padded = circ->add_subcommand("padded", "padded construction report");
    std::string cp_file, cp_pen;
    circ_padded->add_option("--file", cp_file, "circuit JSON")->required();
    circ_padded->add_option("--penalties", cp_pen, "penalties JSON");

    // markov ------------------------------------------------------------
    auto* markov = app.add_subcommand("markov", "Markov-chain analyses");
    auto* markov_map = markov->add_subcommand("map", "quantum-to-classical mapping");
    std::string mm_file, mm_out;
    markov_map->add_option("--file", mm_file, "complex tridiagonal JSON {diag, offdiag}")->required();
    markov_map->add_option("--out", mm_out, "chain JSON output path");

    auto* markov_cheeger = markov->add_subcommand("cheeger", "conductance and Cheeger bounds");
    std::string mc_file, mc_strategy = "interval";
    markov_cheeger->add_option("--file", mc_file, "chain JSON {P, pi}")->required();
    markov_cheeger->add_option("--strategy", mc_strategy, "interval|exact")
        ->check(CLI::IsMember({"interval", "exact"}));

    auto* markov_bd = markov->add_subcommand("bd", "birth-death gap characterization");
    std::string mb_file;
    markov_bd->add_option("--file", mb_file, "chain JSON {P, pi}")->required();

    auto* markov_sweep = markov->add_subcommand("sweep", "gap/product sweep over the explicit clock family (CSV)");
    std::string ms_t = "25,50,100,200", ms_out;
    markov_sweep->add_option("--T", ms_t, "comma-separated T list");
    markov_sweep->add_option("--out", ms_out, "CSV output path");

    // adiabatic ------------------------------------------------------------
    auto* adia = app.add_subcommand("adiabatic", "interpolation schedules");
    auto* adia_sweep = adia->add_subcommand("sweep", "gap sweep over the adiabatic parameter (CSV)");
    std::string as_schedule = "standard", as_weights = "theorem1", as_out;
    int as_t = 20, as_grid = 201;
    double as_a = 0.0;
    adia_sweep->add_option("--schedule", as_schedule, "standard|modified")
        ->check(CLI::IsMember({"standard", "modified"}));
    adia_sweep->add_option("--T", as_t, "clock length")->required();
    adia_sweep->add_option("--grid", as_grid, "grid points");
    adia_sweep->add_option("--weights", as_weights, "kitaev|theorem1");
    adia_sweep->add_option("--A", as_a, "modified-schedule scale (default T^4)");
    adia_sweep->add_option("--out", as_out, "CSV output path");

    auto* adia_overlap = adia->add_subcommand("overlap", "final-state overlap estimate");
    int ao_t = 10;
    double ao_a = 0.0;
    adia_overlap->add_option("--T", ao_t, "clock length")->required();
    adia_overlap->add_option("--A", ao_a, "scale (default T^4)");

    // ulg ------------------------------------------------------------
    auto* ulg = app.add_subcommand("ulg", "unitary labeled graphs");
    auto* ulg_build = ulg->add_subcommand("build", "assemble the ULG Hamiltonian");
    std::string ub_file, ub_out;
    ulg_build->add_option("--file", ub_file, "ULG JSON")->required();
    ulg_build->add_option("--out", ub_out, "Hamiltonian JSON output");

    auto* ulg_check = ulg->add_subcommand("check", "simplicity and Laplacian equivalence");
    std::string uc_file;
    ulg_check->add_option("--file", uc_file, "ULG JSON")->required();

    auto* ulg_diam = ulg->add_subcommand("diam", "matrix diameter bound report");
    std::string ud_file;
    ulg_diam->add_option("--file", ud_file, "Hermitian matrix JSON")->required();

    auto* ulg_frus = ulg->add_subcommand("frustrated", "two-vertex frustrated pair analysis");
    std::string uf_unitary = "X";
    ulg_frus->add_option("--unitary", uf_unitary, "gate name (X, H, ...) or matrix JSON file");

    // verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "per-claim verification targets (exit 4 on failure)");
    std::string v_target;
    std::string v_ts = "25,50,100,200";
    verify
        ->add_option("target", v_target,
                     "lemma1|lemma3|theorem1|theorem2|theorem3|theorem4 (block decomposition)|theorem5|theorem6|"
                     "kitaev|appendix-a1")
        ->required();
    verify->add_option("--T", v_ts, "comma-separated T list (theorem1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        const double tol = default_tol();
        if (*clock_build) {
            auto w = weights_by_name(cb_weights, cb_t);
            auto gauge = gauge_reduce(clock_tridiagonal(w));
            json j{{"T", cb_t},
                   {"weights", cb_weights},
                   {"matrix", tridiagonal_to_json(gauge.matrix)},
                   {"E0", tridiag_ground_energy(gauge.matrix)},
                   {"gap", spectral_gap(gauge.matrix)}};
            emit(j, cb_out);
        } else if (*clock_metro) {
            auto ts = parse_t_list(cm_t);
            std::vector<std::array<double, 3>> rows(ts.size());
            parallel_for(static_cast<int>(ts.size()), jobs, [&](int i) {
                auto dist = distribution_by_name(cm_pi, ts[i]);
                auto h = metropolis_hamiltonian(dist);
                auto [e0, e1] = tridiag_lowest_two(h);
                rows[i] = {double(ts[i]), e0, e1 - e0};
            });
            std::string config = "clock metropolis --pi " + cm_pi + " --T " + cm_t;
            if (cm_out.empty()) cm_out = "metropolis_gap.csv";
            CsvWriter csv(cm_out, config, seed, {"T", "E0", "gap"}, timestamp());
            for (auto& r : rows) csv.row({r[0], r[1], r[2]});
            std::printf("wrote %s (%zu rows)\n", cm_out.c_str(), rows.size());
        } else if (*clock_bound) {
            auto h = endpoint_penalized_clock(bound_t);
            double exact = tridiag_ground_energy(h);
            double bound = stoquastic_lower_bound(h, dirichlet_sine_ansatz(bound_t));
            emit(json{{"T", bound_t},
                      {"E0", exact},
                      {"sine_ansatz_bound", bound},
                      {"closed_form", 2.0 * (1.0 - std::cos(M_PI / (bound_t + 2)))}},
                 "");
        } else if (*circ_accept) {
            Circuit c = circuit_from_json(load_json_file(ca_file));
            PenaltyPair p = ca_pen.empty() ? standard_penalties(c.n, {0}, 0)
                                           : penalties_from_json(load_json_file(ca_pen), c.n);
            auto res = acceptance_probability(c, p);
            emit(json{{"epsilon", res.epsilon}, {"trivial_kernel", res.trivial_kernel}}, "");
        } else if (*circ_unsat) {
            Circuit c = circuit_from_json(load_json_file(cu_file));
            PenaltyPair p = cu_pen.empty() ? standard_penalties(c.n, {0}, 0)
                                           : penalties_from_json(load_json_file(cu_pen), c.n);
            auto w = weights_by_name(cu_weights, c.T());
            auto rep = lemma2_sandwich(w, c, p);
            emit(json{{"penalty", rep.penalty},
                      {"lower_bound", rep.lower},
                      {"upper_bound", rep.upper},
                      {"epsilon", rep.epsilon},
                      {"clock_gap", rep.clock_gap},
                      {"pi0", rep.pi0},
                      {"piT", rep.piT},
                      {"hypothesis_holds", rep.hypothesis_holds}},
                 "");
        } else if (*circ_padded) {
            Circuit c = circuit_from_json(load_json_file(cp_file));
            PenaltyPair p = cp_pen.empty() ? standard_penalties(c.n, {0}, 0)
                                           : penalties_from_json(load_json_file(cp_pen), c.n);
            auto pad = padded_construction(c, p);
            emit(json{{"cos2theta", pad.cos2theta},
                      {"epsilon", pad.epsilon},
                      {"bound", (3.0 + std::sqrt(pad.epsilon)) / 4.0},
                      {"unsat", pad.unsat}},
                 "");
        } else if (*markov_map) {
            auto m = complex_tridiagonal_from_json(load_json_file(mm_file));
            auto map = quantum_to_classical(m);
            json j{{"shift", map.shift},
                   {"scale", map.scale},
                   {"ground_energy", map.ground_energy},
                   {"gap_h", map.gap_h},
                   {"gap_p", map.gap_p}};
            if (map.chain)
                j["chain"] = chain_to_json(*map.chain);
            else
                j["degenerate_cut"] = map.degenerate_cut;
            emit(j, mm_out);
        } else if (*markov_cheeger) {
            auto mc = chain_from_json(load_json_file(mc_file));
            double phi = conductance(
                mc, mc_strategy == "exact" ? ConductanceStrategy::exact : ConductanceStrategy::interval);
            auto [lo, hi] = cheeger_bounds(std::min(1.0, phi));
            emit(json{{"phi", phi}, {"lower", lo}, {"upper", hi}, {"gap", mc.spectral_gap()}}, "");
        } else if (*markov_bd) {
            auto mc = chain_from_json(load_json_file(mb_file));
            double ell = birth_death_ell(mc);
            emit(json{{"ell", ell}, {"lower", 1.0 / (4.0 * ell)}, {"upper", 4.0 / ell}, {"gap", mc.spectral_gap()}},
                 "");
        } else if (*markov_sweep) {
            auto ts = parse_t_list(ms_t);
            std::vector<std::array<double, 5>> rows(ts.size());
            parallel_for(static_cast<int>(ts.size()), jobs, [&](int i) {
                int T = ts[i];
                auto pb = tridiag_product_bound(theorem1_matrix(T));
                auto chain = metropolis_chain(theorem1_distribution(T));
                MarkovChain mc(chain.dense(), chain.pi);
                double ell = birth_death_ell(mc);
                rows[i] = {double(T), pb.gap, pb.product, 1.0 / (4.0 * ell), 4.0 / ell};
            });
            std::string config = "markov sweep --T " + ms_t;
            if (ms_out.empty()) ms_out = "markov_sweep.csv";
            CsvWriter csv(ms_out, config, seed, {"T", "gap", "product", "bd_lower", "bd_upper"}, timestamp());
            for (auto& r : rows) csv.row({r[0], r[1], r[2], r[3], r[4]});
            std::printf("wrote %s (%zu rows)\n", ms_out.c_str(), rows.size());
        } else if (*adia_sweep) {
            SymTridiagonal final_h = (as_weights == "kitaev") ? kitaev_clock(as_t) : theorem1_matrix(as_t);
            double a = as_a > 0.0 ? as_a : std::pow(double(as_t), 4.0);
            Schedule sch = (as_schedule == "modified") ? modified_schedule(final_h, a) : standard_schedule(final_h);
            auto grid = uniform_grid(as_grid);
            auto curve = gap_sweep(sch, grid, jobs);
            std::string config = "adiabatic sweep --schedule " + as_schedule + " --T " + std::to_string(as_t) +
                                 " --grid " + std::to_string(as_grid) + " --weights " + as_weights;
            if (as_out.empty()) as_out = "adiabatic_sweep.csv";
            CsvWriter csv(as_out, config, seed, {"s", "E0", "E1", "gap"}, timestamp());
            for (size_t i = 0; i < curve.s.size(); ++i) csv.row({curve.s[i], curve.e0[i], curve.e1[i], curve.gap[i]});
            std::printf("wrote %s; min gap %.6g at s = %.6g\n", as_out.c_str(), curve.min_gap, curve.argmin);
        } else if (*adia_overlap) {
            double a = ao_a > 0.0 ? ao_a : std::pow(double(ao_t), 4.0);
            auto ov = final_overlap_estimate(modified_schedule(theorem1_matrix(ao_t), a));
            emit(json{{"overlap", ov.overlap},
                      {"deviation", ov.deviation},
                      {"first_order_bound", ov.first_order_bound},
                      {"A", a}},
                 "");
        } else if (*ulg_build) {
            auto g = ulg_from_json(load_json_file(ub_file));
            auto h = ulg_hamiltonian(g);
            if (ub_out.empty())
                std::cout << hermitian_to_json(h).dump(2) << "\n";
            else
                save_json_file(ub_out, hermitian_to_json(h));
        } else if (*ulg_check) {
            auto g = ulg_from_json(load_json_file(uc_file));
            auto rep = is_simple(g);
            json j{{"simple", rep.simple}, {"max_residual", rep.max_residual}};
            if (rep.simple)
                j["equivalence_residual"] = laplacian_equivalence_check(g, std::max(tol, 1e-9)).residual;
            else
                j["witness_cycle"] = rep.witness_cycle;
            emit(j, "");
        } else if (*ulg_diam) {
            auto h = hermitian_from_json(load_json_file(ud_file));
            auto rep = diameter_bound_check(h);
            emit(json{{"diam", rep.diam},
                      {"diam_prime", rep.diam_prime},
                      {"pi_min", rep.pi_min},
                      {"gap", rep.gap},
                      {"norm", rep.norm},
                      {"bound", rep.bound},
                      {"refined_rhs", rep.refined_rhs},
                      {"holds", rep.holds},
                      {"refined_holds", rep.refined_holds},
                      {"near_saturation", rep.near_saturation}},
                 "");
        } else if (*ulg_frus) {
            Matrix u;
            if (uf_unitary.size() <= 4 && uf_unitary.find('.') == std::string::npos)
                u = named_gate(uf_unitary, {0}).unitary;
            else
                u = matrix_from_json(load_json_file(uf_unitary));
            auto fp = frustrated_pair_analysis(u);
            json lam = json::array();
            for (const cplx& l : fp.lambdas) lam.push_back({l.real(), l.imag()});
            emit(json{{"lambdas", lam},
                      {"penalties", fp.penalties},
                      {"h_g", hermitian_to_json(fp.h_g)},
                      {"transformed", hermitian_to_json(fp.transformed)}},
                 "");
        } else if (*verify) {
            bool ok = false;
            if (v_target == "lemma1")
                ok = verify_lemma1(seed);
            else if (v_target == "lemma3")
                ok = verify_lemma3(seed);
            else if (v_target == "theorem1")
                ok = verify_theorem1(parse_t_list(v_ts), jobs);
            else if (v_target == "theorem2")
                ok = verify_theorem2(jobs);
            else if (v_target == "theorem3")
                ok = verify_theorem3();
            else if (v_target == "theorem4")
                ok = verify_theorem4(seed);
            else if (v_target == "theorem5")
                ok = verify_theorem5(seed);
            else if (v_target == "theorem6")
                ok = verify_theorem6(seed);
            else if (v_target == "kitaev")
                ok = verify_kitaev(jobs);
            else if (v_target == "appendix-a1")
                ok = verify_appendix_a1(seed);
            else
                throw std::invalid_argument("unknown verify target " + v_target);
            std::printf("%s: %s\n", v_target.c_str(), ok ? "VERIFIED" : "FAILED");
            if (!ok) return kExitVerify;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
