#ifndef CSKIN_WAVEGUIDE_QED_HPP
#define CSKIN_WAVEGUIDE_QED_HPP

#include <numbers>
#include <vector>

#include "cskin/linalg.hpp"

namespace cskin {

// Physical parameters of the chirally coupled atom array. phi is the phase
// gained between adjacent atoms (omega0 d / c), xi the backward/forward
// emission-rate ratio, gamma1d the rate unit. Energies returned by the
// builders are relative to omega0 = 0 by convention.
struct ModelParams {
    double phi = 0.35 * std::numbers::pi;
    double xi = 0.7;
    double gamma1d = 1.0;
    int n_atoms = 40;
    double omega0 = 0.0;

    double gamma_forward() const { return 2.0 * gamma1d / (1.0 + xi); }
    double gamma_backward() const { return 2.0 * gamma1d * xi / (1.0 + xi); }
    double theta() const { return (1.0 - xi) / (1.0 + xi); }
    double chirality_eps() const { return 2.0 * theta(); }

    void validate() const; // throws InvalidParams
};

// Symmetric two-photon amplitude on a finite array. Pair amplitudes are
// stored for m < n in lexicographic order and normalized so that
// sum_{m<n} |psi_mn|^2 = 1/2 (full symmetric matrix sums to 1).
class TwoExcitationState {
public:
    TwoExcitationState(int n_atoms, std::vector<Complex> pair_amplitudes, Complex energy);

    int n_atoms() const { return n_atoms_; }
    int n_pairs() const { return static_cast<int>(pairs_.size()); }
    const std::vector<Complex>& pairs() const { return pairs_; }
    Complex energy() const { return energy_; } // per photon, relative to omega0

    // 1-based site indices; symmetric extension, zero on the diagonal.
    Complex amplitude(int m, int n) const;
    ComplexMatrix full_matrix() const;

    static int pair_count(int n_atoms) { return n_atoms * (n_atoms - 1) / 2; }
    static int pair_index(int m, int n, int n_atoms); // 1-based, m < n

private:
    int n_atoms_;
    std::vector<Complex> pairs_;
    Complex energy_;
};

// Effective non-Hermitian single-excitation Hamiltonian H_{m,n} (N x N).
ComplexMatrix single_excitation_hamiltonian(const ModelParams& p);

// Hard-core two-excitation sector of the same Hamiltonian on the basis
// {(m,n): m<n} in lexicographic order (M x M, M = N(N-1)/2). Eigenvalue E
// maps to the per-photon energy via eps = (E - 2 omega0)/2.
ComplexMatrix two_excitation_hamiltonian(const ModelParams& p);

// Relative-motion Hamiltonian on the half line r = 1..r_max at fixed
// center-of-mass momentum K. Eigenvalue lambda maps to eps_pair = lambda/2.
ComplexMatrix relative_hamiltonian_halfline(const ModelParams& p, double K, int r_max);

// Full-line form on relative coordinates s in {-r_max..r_max}\{0} with the
// hard-core site projected out (2 r_max x 2 r_max). Its kernel is half the
// folded half-line kernel, so eigenvalue lambda maps to eps_pair = lambda
// directly; cross-checked against the half-line form in the tests.
ComplexMatrix relative_hamiltonian_fullline(const ModelParams& p, double K, int r_max);

// Basis coordinate of row/column i of the full-line matrix.
int fullline_coordinate(int i, int r_max);

inline constexpr double kDispersionGuard = 1e-6;

// Single-polariton dispersion omega(K) - omega0 in units of gamma1d.
// Throws DispersionSingularity within the guard distance of cos K = cos phi.
double polariton_dispersion(const ModelParams& p, double K);

struct Interval {
    double lo = 0, hi = 0;
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// Two-polariton scattering continuum at center-of-mass momentum K,
// classified by the branches (|k| < phi upper, |k| > phi lower) of the two
// constituents.
struct ContinuumIntervals {
    std::vector<Interval> upper_upper;
    std::vector<Interval> upper_lower;
    std::vector<Interval> lower_lower;
    std::vector<Interval> all;

    bool contains(double eps) const;
};

ContinuumIntervals scattering_continuum(const ModelParams& p, double K, int q_samples);

// Fold a momentum into the first Brillouin zone (-pi, pi].
double fold_to_zone(double k);

} // namespace cskin

#endif
