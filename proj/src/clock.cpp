#include "clockforge/clock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace clockforge {

namespace {
constexpr double kWeightSlack = 1e-12;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

ClockWeights::ClockWeights(int T_, std::vector<double> a_, std::vector<cplx> b_, double bound_)
    : T(T_), a(std::move(a_)), b(std::move(b_)), bound(bound_) {
    if (T < 1) throw std::invalid_argument("ClockWeights: T must be >= 1");
    if (a.size() != static_cast<size_t>(T + 1) || b.size() != static_cast<size_t>(T))
        throw std::invalid_argument("ClockWeights: need T+1 diagonal and T off-diagonal weights");
    if (bound <= 0.0) throw std::invalid_argument("ClockWeights: bound must be positive");
    for (double x : a)
        if (std::abs(x) > bound + kWeightSlack)
            throw std::invalid_argument("ClockWeights: |a_t| <= " + std::to_string(bound) + " violated");
    for (const cplx& x : b)
        if (std::abs(x) > 1.0 + kWeightSlack)
            throw std::invalid_argument("ClockWeights: |b_t| <= 1 violated");
}

ClockWeights kitaev_weights(int T) {
    // The standard construction's projector sums put 2 on the interior
    // diagonal, exceeding the normalized family by a constant prefactor.
    std::vector<double> a(T + 1, 2.0);
    a.front() = 1.0;
    a.back() = 1.0;
    std::vector<cplx> b(T, cplx(-1.0, 0.0));
    return ClockWeights(T, std::move(a), std::move(b), 2.0);
}

TimeDistribution::TimeDistribution(int T_, std::vector<double> pi_) : T(T_), pi(std::move(pi_)) {
    if (T < 0) throw std::invalid_argument("TimeDistribution: T must be >= 0");
    if (pi.size() != static_cast<size_t>(T + 1))
        throw std::invalid_argument("TimeDistribution: need T+1 probabilities");
    double sum = 0.0;
    for (double p : pi) {
        if (p <= 0.0) throw std::invalid_argument("TimeDistribution: support everywhere required (pi_t > 0)");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("TimeDistribution: probabilities must sum to 1 (got " + std::to_string(sum) + ")");
}

TimeDistribution uniform_distribution(int T) {
    return TimeDistribution(T, std::vector<double>(T + 1, 1.0 / (T + 1)));
}

TimeDistribution theorem1_distribution(int T) {
    if (T < 2) throw std::invalid_argument("theorem1_distribution: T must be >= 2");
    // exact rationals over the common denominator 4(T-1)
    const long long denom = 4LL * (T - 1);
    std::vector<long long> num(T + 1, 2);
    num.front() = T - 1;
    num.back() = T - 1;
    long long total = 0;
    for (long long x : num) total += x;
    if (total != denom) throw numerical_error("theorem1_distribution: rational normalization failed");
    std::vector<double> pi(T + 1);
    for (int t = 0; t <= T; ++t) pi[t] = static_cast<double>(num[t]) / static_cast<double>(denom);
    return TimeDistribution(T, std::move(pi));
}

ComplexTridiagonal clock_tridiagonal(const ClockWeights& w) {
    return ComplexTridiagonal(w.a, w.b);
}

HermitianMatrix clock_hamiltonian(const ClockWeights& w) {
    return HermitianMatrix(clock_tridiagonal(w).dense());
}

std::vector<std::vector<double>> MetropolisChain::dense() const {
    std::vector<std::vector<double>> p(T + 1, std::vector<double>(T + 1, 0.0));
    for (int t = 0; t <= T; ++t) {
        p[t][t] = stay[t];
        if (t < T) p[t][t + 1] = up[t];
        if (t > 0) p[t][t - 1] = down[t - 1];
    }
    return p;
}

MetropolisChain metropolis_chain(const TimeDistribution& dist) {
    const int T = dist.T;
    MetropolisChain c;
    c.T = T;
    c.pi = dist.pi;
    c.up.assign(T, 0.0);
    c.down.assign(T, 0.0);
    c.stay.assign(T + 1, 0.0);
    for (int t = 0; t <= T; ++t) {
        double pu = (t < T) ? 0.25 * std::min(1.0, dist.pi[t + 1] / dist.pi[t]) : 0.0;
        double pd = (t > 0) ? 0.25 * std::min(1.0, dist.pi[t - 1] / dist.pi[t]) : 0.0;
        if (t < T) c.up[t] = pu;
        if (t > 0) c.down[t - 1] = pd;
        c.stay[t] = 1.0 - pu - pd;
    }
    return c;
}

SymTridiagonal metropolis_hamiltonian(const TimeDistribution& dist) {
    const int T = dist.T;
    MetropolisChain c = metropolis_chain(dist);
    std::vector<double> diag(T + 1), off(T, 0.0);
    for (int t = 0; t <= T; ++t) diag[t] = 1.0 - c.stay[t];
    for (int t = 0; t < T; ++t) {
        // A_{t,t+1} = sqrt(pi_t / pi_{t+1}) P_{t,t+1}; symmetric by detailed balance
        off[t] = -std::sqrt(dist.pi[t] / dist.pi[t + 1]) * c.up[t];
    }
    return SymTridiagonal(std::move(diag), std::move(off));
}

SymTridiagonal theorem1_matrix(int T) {
    if (T < 2) throw std::invalid_argument("theorem1_matrix: T must be >= 2");
    std::vector<double> diag(T + 1, 0.5), off(T, -0.25);
    diag.front() = 0.5 / (T - 1);
    diag.back() = 0.5 / (T - 1);
    off.front() = -0.5 / std::sqrt(2.0 * T - 2.0);
    off.back() = -0.5 / std::sqrt(2.0 * T - 2.0);
    return SymTridiagonal(std::move(diag), std::move(off));
}

SymTridiagonal endpoint_penalized_clock(int T) {
    if (T < 1) throw std::invalid_argument("endpoint_penalized_clock: T must be >= 1");
    return SymTridiagonal(std::vector<double>(T + 1, 2.0), std::vector<double>(T, -1.0));
}

namespace {

double bound_from_rows(const std::vector<double>& hphi, const std::vector<double>& phi) {
    double best = std::numeric_limits<double>::max();
    for (size_t t = 0; t < phi.size(); ++t) {
        if (phi[t] <= 0.0) throw std::invalid_argument("stoquastic_lower_bound: phi must be strictly positive");
        best = std::min(best, hphi[t] / phi[t]);
    }
    return best;
}

}  // namespace

double stoquastic_lower_bound(const HermitianMatrix& h, const std::vector<double>& phi, double stoq_tol) {
    const int n = h.dim();
    if (static_cast<int>(phi.size()) != n) throw std::invalid_argument("stoquastic_lower_bound: size mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const cplx z = h(i, j);
            if (z.real() > stoq_tol || std::abs(z.imag()) > stoq_tol)
                throw std::invalid_argument("stoquastic_lower_bound: H is not stoquastic in this basis");
        }
    std::vector<double> hphi(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += h(i, j).real() * phi[j];
        hphi[i] = acc;
    }
    return bound_from_rows(hphi, phi);
}

double stoquastic_lower_bound(const SymTridiagonal& t, const std::vector<double>& phi, double stoq_tol) {
    if (phi.size() != t.diag.size()) throw std::invalid_argument("stoquastic_lower_bound: size mismatch");
    for (double e : t.offdiag)
        if (e > stoq_tol) throw std::invalid_argument("stoquastic_lower_bound: H is not stoquastic in this basis");
    std::vector<double> hphi = t.apply(phi);
    return bound_from_rows(hphi, phi);
}

std::vector<double> dirichlet_sine_ansatz(int T) {
    std::vector<double> phi(T + 1);
    for (int t = 0; t <= T; ++t) phi[t] = std::sin(kPi * (t + 1) / (T + 2));
    return phi;
}

HermitianMatrix s_block(const SBlockParams& p) {
    if (p.T < 2) throw std::invalid_argument("s_block: T must be >= 2");
    if (p.mu < 0.0 || p.mu > 1.0 + kWeightSlack) throw std::invalid_argument("s_block: mu must lie in [0, 1]");
    if (p.eta < 0.0) throw std::invalid_argument("s_block: eta must be >= 0");
    const int T = p.T;
    const int n = 2 * (T + 1);
    Matrix m(n, n);
    // banded ordering: j = 0..T is the first clock (input side), j = T+1..2T+1
    // the second clock reversed, so the L coupling sits on the middle bond.
    for (int j = 0; j < n; ++j) m(j, j) = 2.0;
    m(0, 0) = 2.0;           // path end 1 plus the |00><00| penalty
    m(T, T) = 1.0 + p.mu * p.eta * p.eta;
    m(T + 1, T + 1) = 1.0 + p.mu;
    m(n - 1, n - 1) = 1.0;
    for (int j = 0; j + 1 < n; ++j) {
        double bond = (j == T) ? -p.mu * p.eta : -1.0;
        m(j, j + 1) = bond;
        m(j + 1, j) = bond;
    }
    return HermitianMatrix(m);
}

std::vector<double> s_block_ansatz(int T) {
    const int n = 2 * (T + 1);
    std::vector<double> phi(n, 0.0);
    for (int i = 1; i <= T; ++i) {
        double v = std::sin(kPi * i / (2.0 * T));
        phi[i] = v;
        phi[i + T] = v;
    }
    phi[n - 1] = 1.0;
    return phi;
}

SBlockCases s_block_case_values(const SBlockParams& p) {
    const double T = p.T;
    const double s1 = std::sin(kPi / (2.0 * T));
    SBlockCases c;
    c.edge = (2.0 * s1 - std::sin(kPi / T)) / s1;
    c.interior = 4.0 * std::pow(std::sin(kPi / (4.0 * T)), 2);
    c.in_corner = p.eta * p.eta * p.mu - p.eta * p.mu * s1 - std::cos(kPi / (2.0 * T)) + 1.0;
    c.out_corner = p.mu - p.eta * p.mu / s1 - 2.0 * std::cos(kPi / (2.0 * T)) + 1.0;
    c.far_end = 1.0 - std::sin(kPi * (T - 1.0) / (2.0 * T));
    return c;
}

SBlockCases s_block_case_ratios(const SBlockParams& p) {
    const int T = p.T;
    if (T < 4) throw std::invalid_argument("s_block_case_ratios: need T >= 4 to populate all five cases");
    HermitianMatrix s = s_block(p);
    std::vector<double> phi = s_block_ansatz(T);
    const int n = s.dim();
    std::vector<double> ratio(n, 0.0);
    for (int t = 0; t < n; ++t) {
        if (phi[t] == 0.0) continue;  // rows 0 is skipped (zero trial amplitude)
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += s(t, j).real() * phi[j];
        ratio[t] = acc / phi[t];
    }
    SBlockCases c;
    c.edge = ratio[1];
    c.interior = ratio[2];
    // both interior stretches must agree
    for (int t = 2; t <= T - 1; ++t)
        if (std::abs(ratio[t] - c.interior) > 1e-9)
            throw numerical_error("s_block_case_ratios: interior rows are not constant");
    for (int t = T + 2; t < 2 * T; ++t)
        if (std::abs(ratio[t] - c.interior) > 1e-9)
            throw numerical_error("s_block_case_ratios: reversed interior rows are not constant");
    c.in_corner = ratio[T];
    c.out_corner = ratio[T + 1];
    c.far_end = ratio[2 * T];
    return c;
}

}  // namespace clockforge
