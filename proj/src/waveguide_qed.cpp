#include "cskin/waveguide_qed.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "cskin/errors.hpp"

namespace cskin {

namespace {
constexpr double kPi = std::numbers::pi;
}

double fold_to_zone(double k) {
    double f = std::remainder(k, 2.0 * kPi); // (-pi, pi], with -pi possible
    if (f <= -kPi) f += 2.0 * kPi;
    return f;
}

void ModelParams::validate() const {
    if (!(xi > 0.0) || xi > 1.0) throw InvalidParams("model.xi must be in (0, 1]");
    if (!(phi > 0.0) || !(phi < kPi)) throw InvalidParams("model.phi must be in (0, pi)");
    if (!(gamma1d > 0.0)) throw InvalidParams("model.gamma1d must be positive");
    if (n_atoms < 2) throw InvalidParams("model.n_atoms must be >= 2");
}

TwoExcitationState::TwoExcitationState(int n_atoms, std::vector<Complex> pair_amplitudes,
                                       Complex energy)
    : n_atoms_(n_atoms), pairs_(std::move(pair_amplitudes)), energy_(energy) {
    if (n_atoms_ < 2) throw InvalidParams("TwoExcitationState: n_atoms must be >= 2");
    if (static_cast<int>(pairs_.size()) != pair_count(n_atoms_))
        throw DimensionMismatch("TwoExcitationState: amplitude count != N(N-1)/2");
    double s = 0;
    for (const auto& z : pairs_) s += std::norm(z);
    if (s <= 0) throw ZeroState("TwoExcitationState: zero amplitudes");
    const double scale = 1.0 / std::sqrt(2.0 * s);
    for (auto& z : pairs_) z *= scale;
}

int TwoExcitationState::pair_index(int m, int n, int n_atoms) {
    // (m,n), 1 <= m < n <= N, lexicographic over m then n.
    return (m - 1) * n_atoms - m * (m - 1) / 2 + (n - m - 1);
}

Complex TwoExcitationState::amplitude(int m, int n) const {
    if (m == n) return 0;
    if (m > n) std::swap(m, n);
    return pairs_[pair_index(m, n, n_atoms_)];
}

ComplexMatrix TwoExcitationState::full_matrix() const {
    ComplexMatrix psi(n_atoms_);
    for (int m = 1; m <= n_atoms_; ++m)
        for (int n = m + 1; n <= n_atoms_; ++n) {
            const Complex a = pairs_[pair_index(m, n, n_atoms_)];
            psi(m - 1, n - 1) = a;
            psi(n - 1, m - 1) = a;
        }
    return psi;
}

ComplexMatrix single_excitation_hamiltonian(const ModelParams& p) {
    p.validate();
    const int n = p.n_atoms;
    const double gf = p.gamma_forward();
    const double gb = p.gamma_backward();
    ComplexMatrix h(n);
    for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l) {
            if (m == l) {
                h(m, l) = Complex(p.omega0, -p.gamma1d);
            } else {
                const double rate = m > l ? gf : gb;
                const double d = std::abs(m - l);
                h(m, l) = Complex(0, -rate) * std::polar(1.0, p.phi * d);
            }
        }
    return h;
}

ComplexMatrix two_excitation_hamiltonian(const ModelParams& p) {
    p.validate();
    const int n = p.n_atoms;
    const ComplexMatrix h1 = single_excitation_hamiltonian(p);
    const int m_dim = TwoExcitationState::pair_count(n);

    std::vector<std::pair<int, int>> basis;
    basis.reserve(m_dim);
    for (int m = 1; m <= n; ++m)
        for (int l = m + 1; l <= n; ++l) basis.emplace_back(m, l);

    ComplexMatrix h2(m_dim);
    for (int i = 0; i < m_dim; ++i) {
        const auto [m, nn] = basis[i];
        for (int j = 0; j < m_dim; ++j) {
            const auto [mp, np] = basis[j];
            Complex v = 0;
            if (nn == np) v += h1(m - 1, mp - 1);
            if (m == mp) v += h1(nn - 1, np - 1);
            if (nn == mp) v += h1(m - 1, np - 1);
            if (m == np) v += h1(nn - 1, mp - 1);
            h2(i, j) = v;
        }
    }
    return h2;
}

ComplexMatrix relative_hamiltonian_halfline(const ModelParams& p, double K, int r_max) {
    p.validate();
    if (r_max < 2) throw TruncationTooSmall("relative_hamiltonian_halfline: r_max must be >= 2");
    const double gf = p.gamma_forward();
    const double gb = p.gamma_backward();
    ComplexMatrix h(r_max);
    for (int r = 1; r <= r_max; ++r)
        for (int s = 1; s <= r_max; ++s) {
            Complex v = 0;
            for (int eta : {+1, -1}) {
                const double d = std::abs(r + eta * s);
                v += gb * std::polar(1.0, (p.phi + K / 2) * d) +
                     gf * std::polar(1.0, (p.phi - K / 2) * d);
            }
            h(r - 1, s - 1) = Complex(0, -1) * v;
        }
    return h;
}

int fullline_coordinate(int i, int r_max) {
    return i < r_max ? i - r_max : i - r_max + 1;
}

ComplexMatrix relative_hamiltonian_fullline(const ModelParams& p, double K, int r_max) {
    p.validate();
    if (r_max < 2) throw TruncationTooSmall("relative_hamiltonian_fullline: r_max must be >= 2");
    const double eps = p.chirality_eps();
    const double g = p.gamma1d;
    const int dim = 2 * r_max;
    ComplexMatrix h(dim);
    for (int i = 0; i < dim; ++i) {
        const int r = fullline_coordinate(i, r_max);
        for (int j = 0; j < dim; ++j) {
            const int s = fullline_coordinate(j, r_max);
            const double d = r - s;
            const Complex ph = std::polar(1.0, p.phi * std::abs(d));
            h(i, j) = Complex(0, -g) * std::cos(K * d / 2) * ph -
                      (g * eps / 2) * std::sin(K * std::abs(d) / 2) * ph;
        }
    }
    return h;
}

double polariton_dispersion(const ModelParams& p, double K) {
    p.validate();
    const double den = std::cos(K) - std::cos(p.phi);
    if (std::abs(den) < kDispersionGuard)
        throw DispersionSingularity("polariton_dispersion: K within guard of +-phi");
    return p.gamma1d * (std::sin(p.phi) + p.theta() * std::sin(K)) / den;
}

bool ContinuumIntervals::contains(double eps) const {
    for (const auto& iv : all)
        if (iv.contains(eps)) return true;
    return false;
}

namespace {

std::vector<Interval> merge_intervals(std::vector<Interval> ivs, double gap_tol) {
    if (ivs.empty()) return ivs;
    std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo;
    });
    std::vector<Interval> out;
    out.push_back(ivs[0]);
    for (size_t i = 1; i < ivs.size(); ++i) {
        if (ivs[i].lo <= out.back().hi + gap_tol)
            out.back().hi = std::max(out.back().hi, ivs[i].hi);
        else
            out.push_back(ivs[i]);
    }
    return out;
}

} // namespace

ContinuumIntervals scattering_continuum(const ModelParams& p, double K, int q_samples) {
    p.validate();
    if (q_samples < 100) throw InvalidParams("scattering_continuum: q_samples must be >= 100");

    // eps_scat(q) is continuous between the Markovian divergences at
    // q = +-phi and q = K -+ phi; the image of each continuity arc is one
    // interval, and the polariton-pair class is constant on each arc.
    std::vector<double> sing = {fold_to_zone(p.phi), fold_to_zone(-p.phi),
                                fold_to_zone(K - p.phi), fold_to_zone(K + p.phi)};
    std::sort(sing.begin(), sing.end());
    sing.erase(std::unique(sing.begin(), sing.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               sing.end());

    auto arc_of = [&](double q) {
        // index of the arc (s_i, s_{i+1}) containing q, circular
        const auto it = std::upper_bound(sing.begin(), sing.end(), q);
        return static_cast<int>(it - sing.begin()) % static_cast<int>(sing.size());
    };
    auto branch_upper = [&](double q) { return std::abs(fold_to_zone(q)) < p.phi; };

    struct ArcRange {
        double lo = 0, hi = 0;
        bool valid = false;
        int cls = 0; // 0 uu, 1 ul, 2 ll
    };
    std::map<int, ArcRange> arcs;

    const double gap_tol = 2.0 * kPi / q_samples;
    for (int j = 0; j < q_samples; ++j) {
        const double q = -kPi + 2.0 * kPi * (j + 1) / q_samples;
        if (std::abs(std::cos(q) - std::cos(p.phi)) < kDispersionGuard) continue;
        if (std::abs(std::cos(K - q) - std::cos(p.phi)) < kDispersionGuard) continue;
        const double w1 = polariton_dispersion(p, q);
        const double w2 = polariton_dispersion(p, K - q);
        const double eps = 0.5 * (w1 + w2);
        const int upper_count = (branch_upper(q) ? 1 : 0) + (branch_upper(K - q) ? 1 : 0);
        auto& arc = arcs[arc_of(q)];
        if (!arc.valid) {
            arc = {eps, eps, true, 2 - upper_count};
        } else {
            arc.lo = std::min(arc.lo, eps);
            arc.hi = std::max(arc.hi, eps);
        }
    }

    ContinuumIntervals out;
    std::vector<Interval> every;
    std::vector<Interval> per_class[3];
    for (const auto& [idx, arc] : arcs) {
        if (!arc.valid) continue;
        per_class[arc.cls].push_back({arc.lo, arc.hi});
        every.push_back({arc.lo, arc.hi});
    }
    out.upper_upper = merge_intervals(per_class[0], gap_tol);
    out.upper_lower = merge_intervals(per_class[1], gap_tol);
    out.lower_lower = merge_intervals(per_class[2], gap_tol);
    out.all = merge_intervals(every, gap_tol);
    return out;
}

} // namespace cskin
