#pragma once

#include "ltda/metric_space.hpp"
#include "ltda/persistence.hpp"
#include "ltda/poset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ltda {

/// An r-slice of a generalized landscape: values per level sampled on the
/// grid, with linear interpolation between grid points.
struct SampledSlice {
    std::vector<double> z;
    std::vector<std::vector<double>> levels;  // levels[n-1][grid index]

    double interpolate(int level, double r) const;
    int n_levels() const { return static_cast<int>(levels.size()); }
};

/// Provenance codes for grid cells where no path realized the minimum.
constexpr int kProvenanceDiameterCap = -1;
constexpr int kProvenanceZeroUnion = -2;

/// Landscape of the labeled persistent homology module on the grid Z x P,
/// P the weighted poset with the empty set excluded. values[n-1] is indexed
/// (grid point, element); provenance records which path (by enumeration
/// index) achieved each minimum, ties going to the smallest index.
struct GeneralizedLandscape {
    std::vector<double> z;
    std::vector<int> elements;          // poset element ids with nonzero mask
    std::vector<uint32_t> element_masks;
    int degree = 0;
    int n_max = 0;
    const WeightedPoset* poset = nullptr;
    std::vector<MatrixXd> values;
    std::vector<Eigen::MatrixXi> provenance;

    int element_index(uint32_t mask) const;
    SampledSlice slice(uint32_t mask) const;
};

/// Default grid: `count` evenly spaced values from 0 to the diameter of the
/// union of all labels.
std::vector<double> default_grid(const LabeledMetricSpace& lms, int count = 64);

/// Computes the landscape by the path-complex pipeline: enumerate the
/// monotone staircases of Z x P entering at every poset element, build each
/// path's gap-inserted filtered complex, extend bars across the gaps, take
/// exact one-dimensional landscapes, and fold the pointwise minimum over the
/// paths through each grid point. Two convention terms cap each column: the
/// diameter of the queried union (the module is zero from there on) and the
/// poset distance to any sub-union whose degree-j barcode is empty.
/// Exact at grid points; see interpolate() for off-grid values.
GeneralizedLandscape generalized_landscape(const LabeledMetricSpace& lms,
                                           const WeightedPoset& poset, int degree,
                                           const std::vector<double>& z, int n_max,
                                           double path_budget = 1e6, int threads = 0);

/// Linear interpolation between the two bracketing grid columns at a fixed
/// poset element; off-grid error is bounded by the local grid step.
double interpolate(const GeneralizedLandscape& gl, int level, double r, uint32_t element_mask);

SampledSlice restrict_to(const GeneralizedLandscape& gl, uint32_t element_mask);

/// Landscape of the image of the inclusion-induced maps for a 2-labeled space
/// whose first label is contained in the second: the chain-poset landscape
/// with zero edge weight, restricted to the first label.
SampledSlice image_landscape(const LabeledMetricSpace& lms, int degree,
                             const std::vector<double>& z, int n_max);

/// Max absolute difference over levels and grid cells; grids and posets must
/// match exactly.
double sup_distance(const GeneralizedLandscape& a, const GeneralizedLandscape& b);

/// Mean squared difference over a uniform resampling of the common r-range,
/// summed over levels.
double mse_distance(const SampledSlice& a, const SampledSlice& b, int resample_count);

}  // namespace ltda
