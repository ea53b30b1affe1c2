#include "cskin/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cskin/errors.hpp"
#include "cskin/parallel.hpp"

namespace cskin {

namespace {

constexpr double kPi = std::numbers::pi;

double vector_ipr(const std::vector<Complex>& v) {
    double s2 = 0, s4 = 0;
    for (const auto& z : v) {
        const double n = std::norm(z);
        s2 += n;
        s4 += n * n;
    }
    return s4 / (s2 * s2);
}

double tail_weight(const std::vector<Complex>& v) {
    const size_t n = v.size();
    const size_t start = n - std::max<size_t>(1, n / 10);
    double s = 0;
    for (size_t i = start; i < n; ++i) s += std::norm(v[i]);
    return s;
}

double overlap(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return std::abs(s);
}

struct Tracked {
    Complex eps;
    std::vector<Complex> vec;
    double best_overlap;
};

Tracked continue_step(const ModelParams& p, double k_eval, int r_max,
                      const std::vector<Complex>& prev) {
    const Spectrum s = eig_general(relative_hamiltonian_halfline(p, k_eval, r_max));
    int best = 0;
    double best_ov = -1;
    for (int i = 0; i < s.size(); ++i) {
        const double ov = overlap(prev, s.eigenvectors[i]);
        if (ov > best_ov) {
            best_ov = ov;
            best = i;
        }
    }
    return {s.eigenvalues[best] / 2.0, s.eigenvectors[best], best_ov};
}

} // namespace

int select_bound_eigenstate(const Spectrum& s, double eps_target, double eps_per_lambda,
                            double ipr_threshold) {
    int best = -1;
    double best_d = std::numeric_limits<double>::max();
    for (int i = 0; i < s.size(); ++i) {
        if (vector_ipr(s.eigenvectors[i]) <= ipr_threshold) continue;
        const double d = std::abs(s.eigenvalues[i] * eps_per_lambda - eps_target);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::vector<double> default_k_grid(int k_points) {
    if (k_points < 5) throw InvalidParams("default_k_grid: k_points must be >= 5");
    std::vector<double> g(k_points);
    for (int j = 1; j <= k_points; ++j) g[j - 1] = -kPi + 2.0 * kPi * j / k_points;
    g.back() = kPi; // exact zone edge
    return g;
}

int DispersionBranch::index_of(double K, double tol) const {
    int best = -1;
    double best_d = tol;
    for (int i = 0; i < size(); ++i) {
        const double d = std::abs(fold_to_zone(k_grid[i] - K));
        if (d <= best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

double DispersionBranch::bound_energy_min() const {
    double m = std::numeric_limits<double>::max();
    for (int i = 0; i < size(); ++i)
        if (bound_flags[i]) m = std::min(m, energies[i].real());
    return m;
}

double DispersionBranch::bound_energy_max() const {
    double m = -std::numeric_limits<double>::max();
    for (int i = 0; i < size(); ++i)
        if (bound_flags[i]) m = std::max(m, energies[i].real());
    return m;
}

DispersionBranch trace_branch(const ModelParams& p, std::vector<double> k_grid, int r_max,
                              const TraceOptions& opts) {
    p.validate();
    if (r_max < 2) throw TruncationTooSmall("trace_branch: r_max must be >= 2");
    if (!std::is_sorted(k_grid.begin(), k_grid.end()))
        throw InvalidParams("trace_branch: k_grid must be ascending");

    const int m = static_cast<int>(k_grid.size());
    for (double k : k_grid)
        if (k <= -kPi - 1e-12 || k > kPi + 1e-12)
            throw InvalidParams("trace_branch: k_grid values must lie in (-pi, pi]");
    int i_pi = -1;
    for (int i = 0; i < m; ++i)
        if (std::abs(k_grid[i] - kPi) < 1e-9) i_pi = i;
    if (i_pi < 0) throw InvalidParams("trace_branch: k_grid must include K = pi");

    const double ipr_threshold = opts.ipr_factor / r_max;
    const double eps_anchor = 2.0 * p.gamma1d / std::tan(2 * p.phi);

    // Seed at K = pi. For chiral parameters the branch is identified by
    // adiabatic continuation in xi from the non-chiral limit.
    ModelParams seed_p = p;
    seed_p.xi = 1.0;
    Spectrum s0 = eig_general(relative_hamiltonian_halfline(seed_p, kPi, r_max));
    int idx = select_bound_eigenstate(s0, eps_anchor, 0.5, ipr_threshold);
    if (idx < 0) throw SeedNotFound("trace_branch: no localized eigenstate near 2 cot(2 phi)");
    std::vector<Complex> seed_vec = s0.eigenvectors[idx];
    Complex seed_eps = s0.eigenvalues[idx] / 2.0;

    if (p.xi < 1.0) {
        const int steps = std::max(1, static_cast<int>(std::ceil((1.0 - p.xi) / opts.xi_step)));
        for (int k = 1; k <= steps; ++k) {
            seed_p.xi = 1.0 + (p.xi - 1.0) * k / steps;
            const Tracked t = continue_step(seed_p, kPi, r_max, seed_vec);
            if (t.best_overlap <= opts.overlap_min)
                throw SeedNotFound("trace_branch: lost branch during xi continuation");
            seed_vec = t.vec;
            seed_eps = t.eps;
        }
    }

    if (tail_weight(seed_vec) > opts.seed_tail_threshold)
        throw TruncationTooSmall("trace_branch: seed eigenvector tail exceeds threshold");

    if (opts.convergence_check) {
        Spectrum s2 = eig_general(relative_hamiltonian_halfline(p, kPi, 2 * r_max));
        const int idx2 = select_bound_eigenstate(s2, seed_eps.real(), 0.5, ipr_threshold / 2);
        if (idx2 < 0 || std::abs(s2.eigenvalues[idx2] / 2.0 - seed_eps) > 1e-6)
            throw TruncationTooSmall("trace_branch: eigenvalue not converged at r_max");
    }

    // Continuum intervals per grid point (independent, precomputed).
    std::vector<ContinuumIntervals> continua(m);
    parallel_for(m, opts.threads, [&](int i) {
        continua[i] = scattering_continuum(p, k_grid[i], opts.q_samples);
    });

    DispersionBranch branch;
    branch.k_grid = k_grid;
    branch.energies.assign(m, Complex(0));
    branch.bound_flags.assign(m, false);

    auto classify = [&](int i, const Tracked& t) {
        const bool in_zone = std::abs(k_grid[i]) > 2 * p.phi;
        const bool localized = vector_ipr(t.vec) > ipr_threshold;
        const bool small_tail = tail_weight(t.vec) < opts.tail_threshold;
        const bool real_energy = std::abs(t.eps.imag()) <= opts.im_threshold * p.gamma1d;
        const bool outside = !continua[i].contains(t.eps.real());
        return in_zone && localized && small_tail && real_energy && outside;
    };

    const Tracked at_pi{seed_eps, seed_vec, 1.0};
    branch.energies[i_pi] = seed_eps;
    branch.bound_flags[i_pi] = classify(i_pi, at_pi);

    // Walk the two arcs away from K = pi. The lower arc descends over
    // K in (0, pi); the wrapped arc covers K <= 0 and is evaluated at the
    // unwrapped momenta K + 2 pi (same spectra, continuous eigenvectors
    // across the zone edge).
    auto walk = [&](const std::vector<int>& order, double k_shift) {
        std::vector<Complex> prev = seed_vec;
        bool prev_bound = branch.bound_flags[i_pi];
        for (int i : order) {
            const Tracked t = continue_step(p, k_grid[i] + k_shift, r_max, prev);
            const bool bound = classify(i, t);
            if (t.best_overlap <= opts.overlap_min && prev_bound && bound)
                throw BranchLost("trace_branch: eigenvector overlap below 0.5 (grid too coarse?)");
            branch.energies[i] = t.eps;
            branch.bound_flags[i] = bound;
            prev = t.vec;
            prev_bound = bound;
        }
    };

    std::vector<int> down, wrapped;
    for (int i = i_pi - 1; i >= 0 && k_grid[i] > 0; --i) down.push_back(i);
    for (int i = 0; i < m && k_grid[i] <= 0; ++i) wrapped.push_back(i);
    walk(down, 0.0);
    walk(wrapped, 2 * kPi);

    // Taylor coefficients at the default stencil when the grid provides it.
    if (m >= 5) {
        const double dk = 2 * kPi / m;
        try {
            branch.taylor = taylor_coefficients(branch, 2 * dk);
        } catch (const InsufficientStencil&) {
            branch.taylor.eps_pi = seed_eps;
        }
    }
    return branch;
}

TaylorCoefficients taylor_coefficients(const DispersionBranch& branch, double stencil_h) {
    if (stencil_h <= 0) throw InvalidParams("taylor_coefficients: stencil_h must be positive");
    const int ip = branch.index_of(kPi);
    const int ipp = branch.index_of(kPi + stencil_h);
    const int ipm = branch.index_of(kPi - stencil_h);
    const int ipp2 = branch.index_of(kPi + 2 * stencil_h);
    const int ipm2 = branch.index_of(kPi - 2 * stencil_h);
    for (int i : {ip, ipp, ipm, ipp2, ipm2}) {
        if (i < 0)
            throw InsufficientStencil("taylor_coefficients: branch not sampled at pi, pi+-h, pi+-2h");
        if (!branch.bound_flags[i])
            throw InsufficientStencil("taylor_coefficients: stencil point not bound-flagged");
    }
    TaylorCoefficients t;
    t.eps_pi = branch.energies[ip];
    const double ep = branch.energies[ipp].real();
    const double em = branch.energies[ipm].real();
    const double e0 = branch.energies[ip].real();
    t.alpha_num = (ep - em) / (2 * stencil_h);
    t.inv_mass_num = (ep - 2 * e0 + em) / (stencil_h * stencil_h);
    t.valid = true;
    return t;
}

EnergyWindow unidirectional_window(const DispersionBranch& branch) {
    const int m = branch.size();
    // circularly consecutive bound segments
    std::vector<std::pair<double, double>> segments;
    double lo = std::numeric_limits<double>::max(), hi = -lo;
    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        if (!branch.bound_flags[i] || !branch.bound_flags[j]) continue;
        const double a = branch.energies[i].real();
        const double b = branch.energies[j].real();
        segments.emplace_back(a, b);
        lo = std::min({lo, a, b});
        hi = std::max({hi, a, b});
    }
    EnergyWindow w;
    if (segments.empty() || hi <= lo) return w;

    const int n_scan = 4001;
    int run_start = -1;
    int best_start = -1, best_len = 0;
    auto flush = [&](int end) {
        if (run_start >= 0 && end - run_start > best_len) {
            best_len = end - run_start;
            best_start = run_start;
        }
        run_start = -1;
    };
    for (int t = 0; t < n_scan; ++t) {
        const double e = lo + (hi - lo) * (t + 0.5) / n_scan;
        int count = 0;
        for (const auto& [a, b] : segments)
            if ((a - e) * (b - e) < 0) ++count;
        if (count == 1) {
            if (run_start < 0) run_start = t;
        } else {
            flush(t);
        }
    }
    flush(n_scan);
    if (best_start < 0) return w;
    w.eps1 = lo + (hi - lo) * (best_start + 0.5) / n_scan;
    w.eps2 = lo + (hi - lo) * (best_start + best_len - 0.5) / n_scan;
    w.empty = false;
    return w;
}

} // namespace cskin
