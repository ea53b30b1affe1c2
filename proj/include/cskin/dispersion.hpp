#ifndef CSKIN_DISPERSION_HPP
#define CSKIN_DISPERSION_HPP

#include <vector>

#include "cskin/waveguide_qed.hpp"

namespace cskin {

struct TaylorCoefficients {
    Complex eps_pi = 0;
    double alpha_num = 0;
    double inv_mass_num = 0;
    bool valid = false;
};

// Sampled bound-pair dispersion branch over the Brillouin zone. bound_flags
// marks the grid points where the tracked eigenstate is a genuine bound
// state (localized, real energy, outside the scattering continuum).
struct DispersionBranch {
    std::vector<double> k_grid; // folded into (-pi, pi], ascending
    std::vector<Complex> energies;
    std::vector<bool> bound_flags;
    TaylorCoefficients taylor;

    int size() const { return static_cast<int>(k_grid.size()); }
    // index of the grid point circularly closest to K; -1 when farther than tol
    int index_of(double K, double tol = 1e-9) const;
    double bound_energy_min() const;
    double bound_energy_max() const;
};

struct TraceOptions {
    int q_samples = 2001;         // continuum sampling per K
    double overlap_min = 0.5;     // continuation threshold
    double ipr_factor = 5.0;      // bound if IPR > ipr_factor / r_max
    double tail_threshold = 1e-6; // bound if tail weight below this
    double seed_tail_threshold = 1e-8;
    double xi_step = 0.05;        // adiabatic seeding step in xi
    double im_threshold = 1e-6;   // bound if |Im eps| below this
    bool convergence_check = true;
    int threads = 1;
};

// Uniform grid K_j = -pi + j * 2pi/k_points, j = 1..k_points (includes pi).
std::vector<double> default_k_grid(int k_points);

// Track the bound branch that connects to eps_pair = 2 cot(2 phi) at K = pi
// in the xi -> 1 limit. Seeds at K = pi (adiabatic continuation in xi for
// chiral parameters) and continues by eigenvector overlap along both arcs
// of the zone. Throws SeedNotFound / BranchLost / TruncationTooSmall.
DispersionBranch trace_branch(const ModelParams& p, std::vector<double> k_grid, int r_max,
                              const TraceOptions& opts = {});

// Central finite differences of Re eps_pair at K = pi; the branch must hold
// bound samples at pi, pi +- h, pi +- 2h (circularly folded).
TaylorCoefficients taylor_coefficients(const DispersionBranch& branch, double stencil_h);

struct EnergyWindow {
    double eps1 = 0, eps2 = 0;
    bool empty = true;
    bool contains(double e) const { return !empty && e >= eps1 && e <= eps2; }
};

// Maximal energy interval in which eps = Re eps_pair(K), restricted to
// bound samples, has exactly one solution. Empty in the non-chiral case.
EnergyWindow unidirectional_window(const DispersionBranch& branch);

// Bound eigenstate of a relative Hamiltonian spectrum: localized (IPR above
// threshold) and closest in energy to the target. Returns -1 if none.
int select_bound_eigenstate(const Spectrum& s, double eps_target, double eps_per_lambda,
                            double ipr_threshold);

} // namespace cskin

#endif
