#include "cskin/effective_model.hpp"

#include <cmath>
#include <numbers>

#include "cskin/errors.hpp"
#include "cskin/waveguide_qed.hpp"

namespace cskin {

namespace {
constexpr double kPi = std::numbers::pi;

// u(d) = int dK/2pi cos(K d) U(K) on a uniform grid of M points over (-pi, pi].
std::vector<double> fourier_coefficients(const EffectiveParams& p, int m_points, int d_max) {
    std::vector<double> u(d_max + 1, 0.0);
    for (int j = 1; j <= m_points; ++j) {
        const double k = -kPi + 2.0 * kPi * j / m_points;
        const double uk = loss_profile(p, k);
        for (int d = 0; d <= d_max; ++d) u[d] += uk * std::cos(k * d);
    }
    for (auto& v : u) v /= m_points;
    return u;
}

} // namespace

void EffectiveParams::validate() const {
    if (!(t > 0)) throw InvalidParams("effective.t must be positive");
    if (Gamma < 0) throw InvalidParams("effective.Gamma must be >= 0");
    if (!(sigma > 0)) throw InvalidParams("effective.sigma must be positive");
    if (!(two_phi > 0) || !(two_phi < kPi))
        throw InvalidParams("effective.two_phi must be in (0, pi)");
    if (n_sites < 2) throw InvalidParams("effective.n_sites must be >= 2");
}

double loss_profile(const EffectiveParams& p, double K) {
    return p.Gamma / kPi *
           (std::atan((K + p.two_phi) / p.sigma) - std::atan((K - p.two_phi) / p.sigma));
}

ComplexMatrix nonlocal_potential(const EffectiveParams& p, int quadrature_points) {
    p.validate();
    const int n = p.n_sites;
    const int m0 = quadrature_points > 0 ? quadrature_points : std::max(4096, 64 * n);
    const auto u1 = fourier_coefficients(p, m0, n - 1);
    const auto u2 = fourier_coefficients(p, 2 * m0, n - 1);
    double umax = 0, diff = 0;
    for (int d = 0; d < n; ++d) {
        umax = std::max(umax, std::abs(u2[d]));
        diff = std::max(diff, std::abs(u2[d] - u1[d]));
    }
    if (p.Gamma > 0 && diff > 1e-8 * std::max(umax, 1e-300))
        throw QuadratureNotConverged("nonlocal_potential: doubling the grid changed u(d) by " +
                                     std::to_string(diff / std::max(umax, 1e-300)) + " relative");
    ComplexMatrix u(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) u(a, b) = u2[std::abs(a - b)];
    return u;
}

ComplexMatrix effective_hamiltonian(const EffectiveParams& p, Boundary boundary,
                                    int quadrature_points) {
    p.validate();
    const int n = p.n_sites;
    ComplexMatrix h(n);
    const Complex hop_f = p.t * std::polar(1.0, p.Phi);
    const Complex hop_b = p.t * std::polar(1.0, -p.Phi);
    for (int i = 0; i + 1 < n; ++i) {
        h(i, i + 1) += hop_f;
        h(i + 1, i) += hop_b;
    }

    if (boundary == Boundary::Periodic) {
        h(n - 1, 0) += hop_f;
        h(0, n - 1) += hop_b;
        // Discrete momentum sum so that Bloch waves are exact eigenvectors;
        // u_pbc is N-periodic, which is the minimal-image convention.
        std::vector<double> u(n, 0.0);
        for (int j = 0; j < n; ++j) {
            const double k = fold_to_zone(2.0 * kPi * j / n);
            const double uk = loss_profile(p, k);
            for (int d = 0; d < n; ++d) u[d] += uk * std::cos(k * d);
        }
        for (auto& v : u) v /= n;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) h(a, b) += Complex(0, -1) * u[(a - b + n) % n];
    } else {
        const ComplexMatrix u = nonlocal_potential(p, quadrature_points);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) h(a, b) += Complex(0, -1) * u(a, b);
    }
    return h;
}

std::vector<Complex> pbc_dispersion(const EffectiveParams& p, std::span<const double> k_grid) {
    p.validate();
    std::vector<Complex> out(k_grid.size());
    for (size_t i = 0; i < k_grid.size(); ++i)
        out[i] = Complex(2.0 * p.t * std::cos(k_grid[i] + p.Phi), -loss_profile(p, k_grid[i]));
    return out;
}

} // namespace cskin
