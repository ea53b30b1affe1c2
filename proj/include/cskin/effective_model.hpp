#ifndef CSKIN_EFFECTIVE_MODEL_HPP
#define CSKIN_EFFECTIVE_MODEL_HPP

#include <numbers>
#include <span>
#include <vector>

#include "cskin/linalg.hpp"

namespace cskin {

// Composite-particle model: chiral nearest-neighbor hopping with amplitude
// t and phase Phi, plus a nonlocal loss term built from the momentum-space
// profile U(K), a sigmoidal plateau of height Gamma on |K| < two_phi with
// crossover width sigma.
struct EffectiveParams {
    double t = 1.0;
    double Phi = -0.5;
    double Gamma = 0.3;
    double sigma = 0.05;
    double two_phi = std::numbers::pi / 2;
    int n_sites = 100;

    void validate() const; // throws InvalidParams
};

enum class Boundary { Open, Periodic };

// U(K) = (Gamma/pi) [arctan((K + 2phi)/sigma) - arctan((K - 2phi)/sigma)].
double loss_profile(const EffectiveParams& p, double K);

// Real symmetric Toeplitz matrix U_{nn'} = u(n - n') from trapezoid
// quadrature of the Fourier integral of U(K); quadrature_points = 0 selects
// the default max(4096, 64 N). Convergence is asserted by doubling the
// grid, else QuadratureNotConverged.
ComplexMatrix nonlocal_potential(const EffectiveParams& p, int quadrature_points = 0);

// N x N Hamiltonian: Hermitian chiral hopping minus i times the nonlocal
// potential. Under periodic boundary the hopping wraps and the potential is
// built from the discrete momentum sum, making Bloch waves exact
// eigenvectors.
ComplexMatrix effective_hamiltonian(const EffectiveParams& p, Boundary boundary,
                                    int quadrature_points = 0);

// eps_pair(K) = 2 t cos(K + Phi) - i U(K).
std::vector<Complex> pbc_dispersion(const EffectiveParams& p, std::span<const double> k_grid);

} // namespace cskin

#endif
