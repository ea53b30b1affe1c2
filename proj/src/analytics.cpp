#include "cskin/analytics.hpp"

#include <cmath>

#include "cskin/errors.hpp"

namespace cskin {

AnalyticBoundState bound_state_analytic(double phi, int r_max) {
    const double c2 = std::cos(2 * phi);
    if (c2 <= 0) throw DomainError("bound_state_analytic: requires cos(2 phi) > 0");
    const double kappa = -std::log(c2);
    if (r_max < 10.0 / kappa)
        throw InvalidParams("bound_state_analytic: r_max must be >= 10/kappa");

    AnalyticBoundState st;
    st.kappa = kappa;
    st.eps_pi0 = 2.0 / std::tan(2 * phi);
    st.r_max = r_max;
    st.chi0.assign(2 * static_cast<size_t>(r_max) + 1, 0.0);
    const double amp = std::sqrt(1.0 - std::exp(-2 * kappa)) / std::sqrt(2.0);
    for (int r = 1; 2 * r <= r_max; ++r) {
        const double v = (r % 2 ? -1.0 : 1.0) * amp * std::exp(-(r - 1) * kappa);
        st.chi0[static_cast<size_t>(r_max + 2 * r)] = v;
        st.chi0[static_cast<size_t>(r_max - 2 * r)] = v;
    }
    return st;
}

double scattering_energy_analytic(double phi, double q) {
    const double s = std::sin(phi);
    const double c = std::cos(q / 2);
    const double den = s * s - c * c;
    if (std::abs(den) < 1e-9)
        throw DomainError("scattering_energy_analytic: resonance cos^2(q/2) = sin^2(phi)");
    return std::sin(phi) * std::cos(phi) / den;
}

double alpha_analytic(double phi, double xi) {
    const double c = std::cos(phi);
    if (std::abs(c) < 1e-12) throw DomainError("alpha_analytic: cos(phi) = 0");
    const double eps_chi = 2.0 * (1.0 - xi) / (1.0 + xi);
    return std::cos(3 * phi) / (8.0 * std::pow(c, 5)) * eps_chi;
}

double alpha_linearized(double phi, double xi) {
    const double c = std::cos(phi);
    if (std::abs(c) < 1e-12) throw DomainError("alpha_linearized: cos(phi) = 0");
    return (1.0 - xi) / 8.0 * std::cos(3 * phi) / std::pow(c, 5);
}

double inv_mass_analytic(double phi) {
    const double c = std::cos(phi);
    if (std::abs(c) < 1e-12) throw DomainError("inv_mass_analytic: cos(phi) = 0");
    return -std::sin(phi) * std::cos(3 * phi) / (8.0 * std::pow(c, 6));
}

double localization_length_analytic(double t, double gamma) {
    if (!(t > 0)) throw InvalidParams("localization_length_analytic: t must be positive");
    if (gamma < 0) throw InvalidParams("localization_length_analytic: gamma must be >= 0");
    return std::asinh(gamma / (4.0 * t));
}

} // namespace cskin
