#ifndef CSKIN_ANALYSIS_HPP
#define CSKIN_ANALYSIS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cskin/waveguide_qed.hpp"

namespace cskin {

enum class DirectionClass { Unidirectional, Bidirectional, Unclassified };
enum class EdgeSide { Left, Right, None };

std::string to_string(DirectionClass c);
std::string to_string(EdgeSide s);

// Inverse participation ratio sum |psi|^4 / (sum |psi|^2)^2; invariant under
// global phase and rescaling. For two-excitation states the sum runs over
// the stored pairs.
double ipr(std::span<const Complex> amplitudes);
double ipr(const TwoExcitationState& psi);

// Center-of-mass momentum extraction: local maxima of the |FT|^2 projected
// onto K = k1 + k2 (folded into (-pi, pi]), above peak_threshold times the
// principal maximum, merged when closer than the resolution 2 pi / N.
// Returned strongest first. Throws NoPeaks when no local maximum exists.
std::vector<double> com_momentum_peaks(const TwoExcitationState& psi, int grid_size,
                                       double peak_threshold);
std::vector<double> com_momentum_peaks(std::span<const Complex> psi, int grid_size,
                                       double peak_threshold);

// Projection S(K) itself (diagnostic / dataset output): first = K bins,
// second = projected spectral weight.
std::pair<std::vector<double>, std::vector<double>> com_momentum_spectrum(
    const TwoExcitationState& psi, int grid_size);

// One peak -> unidirectional, two -> bidirectional, otherwise unclassified.
// A single peak within fold_tolerance of the self-conjugate momenta K = 0 or
// K = +-pi cannot be told apart from a standing wave at the zone
// edge/center and is reported unclassified; pass 0 to disable.
DirectionClass classify_direction(std::span<const double> peaks, double fold_tolerance = 0.0);

struct SpatialProfile {
    std::vector<double> com_profile; // marginal occupation per site, sums to 1
    EdgeSide edge_side = EdgeSide::None;
    std::optional<double> decay_rate; // per-site log-slope of |psi|^2 toward the bulk
    double com_mean = 0;              // <n>, 1-based
};

SpatialProfile spatial_profile(const TwoExcitationState& psi);
SpatialProfile spatial_profile(std::span<const Complex> psi);

// Least-squares slope of log p_n over 1-based sites [lo, hi]; entries below
// 1e-300 are skipped. Returns nullopt with fewer than two usable points.
std::optional<double> fit_log_slope(std::span<const double> p, int lo, int hi);

struct WindingResult {
    int winding = 0;
    double defect = 0; // |raw - winding|, required < 0.05
};

// Winding of the cyclic polygon eps_j around base: sum of principal
// argument increments / 2 pi, rounded. Throws BaseOnCurve when base lies on
// the sampled curve.
WindingResult winding_number(std::span<const Complex> loop, Complex base);

// Everything the datasets report per eigenstate.
struct StateDiagnostics {
    double ipr = 0;
    std::vector<double> k_peaks;
    DirectionClass direction = DirectionClass::Unclassified;
    EdgeSide edge_side = EdgeSide::None;
    std::vector<double> com_profile;
    std::optional<double> decay_rate;
    double com_mean = 0;
};

} // namespace cskin

#endif
