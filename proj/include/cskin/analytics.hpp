#ifndef CSKIN_ANALYTICS_HPP
#define CSKIN_ANALYTICS_HPP

#include <vector>

namespace cskin {

// Closed-form bound state of the relative motion at K = pi in the
// non-chiral limit. chi vanishes on odd r and at r = 0; valid for
// cos(2 phi) > 0. Energies are in units of gamma_1D.
struct AnalyticBoundState {
    double kappa = 0;   // inverse pair size
    double eps_pi0 = 0; // 2 cot(2 phi)
    int r_max = 0;
    std::vector<double> chi0; // index r + r_max, r in [-r_max, r_max]

    double chi(int r) const { return chi0[static_cast<size_t>(r + r_max)]; }
};

// Throws DomainError when cos(2 phi) <= 0, InvalidParams when the
// truncation cannot hold the state (r_max < 10/kappa).
AnalyticBoundState bound_state_analytic(double phi, int r_max);

// Scattering-state energy at K = pi: sin(phi) cos(phi) / (sin^2(phi) - cos^2(q/2)).
double scattering_energy_analytic(double phi, double q);

// First-order chiral slope of the pair dispersion at K = pi,
// alpha = cos(3 phi) / (8 cos^5 phi) * eps_chi with eps_chi = 2(1-xi)/(1+xi).
double alpha_analytic(double phi, double xi);

// The xi -> 1 reduction (1-xi)/8 * cos(3 phi)/cos^5(phi).
double alpha_linearized(double phi, double xi);

// Zeroth-order inverse effective mass -sin(phi) cos(3 phi) / (8 cos^6 phi).
double inv_mass_analytic(double phi);

// Exponential decay rate per site of |psi| for the mid-band edge state of
// the effective model: arcsinh(gamma / 4t). The |psi|^2 rate is twice this.
double localization_length_analytic(double t, double gamma);

} // namespace cskin

#endif
