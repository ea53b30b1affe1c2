#include "cskin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cskin/errors.hpp"

namespace cskin {

namespace {
constexpr double kPi = std::numbers::pi;

double circular_distance(double a, double b) {
    return std::abs(fold_to_zone(a - b));
}

// Local maxima of a cyclic sequence, thresholded and merged; strongest first.
std::vector<double> peaks_of_spectrum(const std::vector<double>& s,
                                      const std::vector<double>& k_bins, double peak_threshold,
                                      double merge_resolution) {
    const int g = static_cast<int>(s.size());
    std::vector<int> maxima;
    double top = 0;
    for (int i = 0; i < g; ++i) {
        const double prev = s[(i + g - 1) % g];
        const double next = s[(i + 1) % g];
        if (s[i] > prev && s[i] >= next) maxima.push_back(i);
        top = std::max(top, s[i]);
    }
    if (maxima.empty()) throw NoPeaks("com_momentum_peaks: no local maxima in |psi(K)|^2");

    std::vector<int> eligible;
    for (int i : maxima)
        if (s[i] >= peak_threshold * top) eligible.push_back(i);
    if (eligible.empty()) throw NoPeaks("com_momentum_peaks: no maxima above threshold");

    std::stable_sort(eligible.begin(), eligible.end(), [&](int a, int b) { return s[a] > s[b]; });
    std::vector<double> accepted;
    for (int i : eligible) {
        bool close = false;
        for (double k : accepted)
            if (circular_distance(k_bins[i], k) < merge_resolution) {
                close = true;
                break;
            }
        if (!close) accepted.push_back(k_bins[i]);
    }
    return accepted;
}

SpatialProfile profile_from_marginal(std::vector<double> p) {
    const int n = static_cast<int>(p.size());
    double s = 0;
    for (double v : p) s += v;
    if (s <= 0) throw ZeroState("spatial_profile: zero state");
    for (auto& v : p) v /= s;

    SpatialProfile out;
    double nbar = 0;
    for (int i = 0; i < n; ++i) nbar += (i + 1) * p[i];
    out.com_mean = nbar;
    const double half = n / 2.0, dead = n / 10.0;
    if (nbar < half - dead)
        out.edge_side = EdgeSide::Left;
    else if (nbar > half + dead)
        out.edge_side = EdgeSide::Right;
    else
        out.edge_side = EdgeSide::None;

    // Fit over the half adjacent to the localized edge, 3 outermost sites
    // excluded; reported as positive when decaying away from that edge.
    const int lo_half_end = n / 2;
    if (out.edge_side == EdgeSide::Right) {
        const auto slope = fit_log_slope(p, n - lo_half_end + 1, n - 3);
        if (slope) out.decay_rate = *slope;
    } else {
        const auto slope = fit_log_slope(p, 4, lo_half_end);
        if (slope) out.decay_rate = -*slope;
    }
    out.com_profile = std::move(p);
    return out;
}

} // namespace

std::string to_string(DirectionClass c) {
    switch (c) {
        case DirectionClass::Unidirectional: return "unidirectional";
        case DirectionClass::Bidirectional: return "bidirectional";
        default: return "unclassified";
    }
}

std::string to_string(EdgeSide s) {
    switch (s) {
        case EdgeSide::Left: return "left";
        case EdgeSide::Right: return "right";
        default: return "none";
    }
}

double ipr(std::span<const Complex> amplitudes) {
    double s2 = 0, s4 = 0;
    for (const auto& z : amplitudes) {
        const double n = std::norm(z);
        s2 += n;
        s4 += n * n;
    }
    if (s2 <= 0) throw ZeroState("ipr: zero state");
    return s4 / (s2 * s2);
}

double ipr(const TwoExcitationState& psi) { return ipr(std::span<const Complex>(psi.pairs())); }

std::pair<std::vector<double>, std::vector<double>> com_momentum_spectrum(
    const TwoExcitationState& psi, int grid_size) {
    const Grid2D ft = dft_2d(psi.full_matrix(), grid_size);
    const int g = ft.size;
    std::vector<double> s(g, 0.0), bins(g);
    const double dk = 2.0 * kPi / g;
    for (int m = 0; m < g; ++m) bins[m] = fold_to_zone(m * dk);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) s[(i + j) % g] += std::norm(ft.at(i, j));
    return {bins, s};
}

std::vector<double> com_momentum_peaks(const TwoExcitationState& psi, int grid_size,
                                       double peak_threshold) {
    if (grid_size < 4 * psi.n_atoms())
        throw InvalidParams("com_momentum_peaks: grid_size must be >= 4N");
    if (!(peak_threshold > 0) || !(peak_threshold < 1))
        throw InvalidParams("com_momentum_peaks: peak_threshold must be in (0, 1)");
    auto [bins, s] = com_momentum_spectrum(psi, grid_size);
    return peaks_of_spectrum(s, bins, peak_threshold, 2.0 * kPi / psi.n_atoms());
}

std::vector<double> com_momentum_peaks(std::span<const Complex> psi, int grid_size,
                                       double peak_threshold) {
    const int n = static_cast<int>(psi.size());
    if (n < 1) throw EmptyInput("com_momentum_peaks: empty state");
    if (grid_size < 4 * n) throw InvalidParams("com_momentum_peaks: grid_size must be >= 4N");
    if (!(peak_threshold > 0) || !(peak_threshold < 1))
        throw InvalidParams("com_momentum_peaks: peak_threshold must be in (0, 1)");
    std::vector<double> bins(grid_size);
    for (int m = 0; m < grid_size; ++m) bins[m] = Grid2D::node(m, grid_size);
    const auto ft = dft_1d(psi, bins);
    std::vector<double> s(grid_size);
    for (int m = 0; m < grid_size; ++m) s[m] = std::norm(ft[m]);
    return peaks_of_spectrum(s, bins, peak_threshold, 2.0 * kPi / n);
}

DirectionClass classify_direction(std::span<const double> peaks, double fold_tolerance) {
    if (peaks.size() == 1) {
        const double k = peaks[0];
        if (fold_tolerance > 0 &&
            (std::abs(k) < fold_tolerance || kPi - std::abs(k) < fold_tolerance))
            return DirectionClass::Unclassified;
        return DirectionClass::Unidirectional;
    }
    if (peaks.size() == 2) return DirectionClass::Bidirectional;
    return DirectionClass::Unclassified;
}

SpatialProfile spatial_profile(const TwoExcitationState& psi) {
    const int n = psi.n_atoms();
    std::vector<double> p(n, 0.0);
    for (int m = 1; m <= n; ++m)
        for (int l = m + 1; l <= n; ++l) {
            const double w = std::norm(psi.amplitude(m, l));
            p[m - 1] += w;
            p[l - 1] += w;
        }
    return profile_from_marginal(std::move(p));
}

SpatialProfile spatial_profile(std::span<const Complex> psi) {
    std::vector<double> p(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) p[i] = std::norm(psi[i]);
    return profile_from_marginal(std::move(p));
}

std::optional<double> fit_log_slope(std::span<const double> p, int lo, int hi) {
    lo = std::max(lo, 1);
    hi = std::min(hi, static_cast<int>(p.size()));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int n = lo; n <= hi; ++n) {
        const double v = p[n - 1];
        if (v < 1e-300) continue;
        const double y = std::log(v);
        sx += n;
        sy += y;
        sxx += static_cast<double>(n) * n;
        sxy += n * y;
        ++cnt;
    }
    if (cnt < 2) return std::nullopt;
    const double den = cnt * sxx - sx * sx;
    if (den == 0) return std::nullopt;
    return (cnt * sxy - sx * sy) / den;
}

WindingResult winding_number(std::span<const Complex> loop, Complex base) {
    if (loop.size() < 3) throw InvalidParams("winding_number: need at least 3 loop samples");
    const size_t m = loop.size();
    double scale = 0;
    for (size_t i = 0; i < m; ++i)
        scale = std::max(scale, std::abs(loop[i] - loop[(i + 1) % m]));
    double total = 0;
    for (size_t i = 0; i < m; ++i) {
        const Complex a = loop[i] - base;
        const Complex b = loop[(i + 1) % m] - base;
        if (std::abs(a) < 1e-12 * std::max(scale, 1.0))
            throw BaseOnCurve("winding_number: base point lies on the sampled curve");
        total += std::arg(b / a);
    }
    WindingResult r;
    const double raw = total / (2 * kPi);
    r.winding = static_cast<int>(std::lround(raw));
    r.defect = std::abs(raw - r.winding);
    return r;
}

} // namespace cskin
