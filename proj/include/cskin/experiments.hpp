#ifndef CSKIN_EXPERIMENTS_HPP
#define CSKIN_EXPERIMENTS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cskin/analysis.hpp"
#include "cskin/config.hpp"
#include "cskin/dispersion.hpp"
#include "cskin/effective_model.hpp"

namespace cskin {

// Per-eigenstate record of the finite two-excitation analysis.
struct FiniteStateRow {
    int id = 0;
    Complex eps = 0; // per photon, relative to omega0
    double ipr = 0;
    std::vector<double> k_peaks;
    DirectionClass direction = DirectionClass::Unclassified;
    EdgeSide edge_side = EdgeSide::None;
    double rel_weight = 0; // amplitude weight at relative distance <= 10
    bool bound_pair = false;
    double com_mean = 0;
    std::optional<double> decay_rate;
};

struct FiniteAnalysis {
    std::vector<FiniteStateRow> rows;
    std::vector<TwoExcitationState> states; // same order as rows
};

// Diagonalizes the hard-core two-excitation Hamiltonian and classifies
// every eigenstate (momentum peaks, direction, edge side, localization).
FiniteAnalysis analyze_finite_spectrum(const ExperimentConfig& cfg);

// Relative-coordinate weight within distance <= d_cut (bound pairs ~1,
// scattering states ~d_cut/N).
double relative_weight(const TwoExcitationState& psi, int d_cut = 10);

struct EffectiveStateRow {
    int id = 0;
    Complex eps = 0;
    double ipr = 0;
    std::vector<double> k_peaks;
    DirectionClass direction = DirectionClass::Unclassified;
    EdgeSide edge_side = EdgeSide::None;
    double com_mean = 0;
    std::optional<double> decay_rate;
};

struct EffectiveAnalysis {
    Spectrum obc;
    std::vector<EffectiveStateRow> rows;
    std::vector<Complex> loop; // PBC dispersion over the k grid
    std::vector<double> loop_k;
    WindingResult winding;     // about the OBC spectrum centroid
    Complex centroid = 0;
    EnergyWindow window;       // momentum-loss solution-count window
};

// OBC diagnostics, PBC loop and winding for the composite-particle model.
EffectiveAnalysis run_effective_analysis(const ExperimentConfig& cfg);

// Energy window of the effective model in which exactly one of the two
// Bloch momenta at Re eps = 2t cos(K + Phi) carries loss above Gamma/2.
EnergyWindow effective_unidirectional_window(const EffectiveParams& p);

// Executes the configured experiment, writing datasets under
// out_root/<experiment>/. Returns 0 on success, 3 when an embedded
// consistency check fails. Numerics errors propagate as exceptions.
int run_experiment(const ExperimentConfig& cfg, const std::string& out_root, std::ostream& log);

} // namespace cskin

#endif
