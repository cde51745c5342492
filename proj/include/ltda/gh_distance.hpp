#pragma once

#include "ltda/metric_space.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ltda {

/// Map tuples realizing a labeled GH value. phi[i][a] is the position inside
/// label set i of Y of the image of the a-th point of label set i of X, and
/// psi[i][b] the position inside label set i of X of the image of the b-th
/// point of label set i of Y. For the stabilized variant the outer index runs
/// over the pairs of the label correspondence instead.
struct MapPair {
    std::vector<std::vector<int>> phi;
    std::vector<std::vector<int>> psi;
};

/// Relation D between label indices [k] and [l] with both projections onto.
struct LabelCorrespondence {
    std::vector<std::pair<int, int>> pairs;  // 0-based (i, j)
};

struct GHResult {
    double value = 0.0;
    MapPair witness;
    std::optional<std::vector<int>> sigma;                  // permuted variant
    std::optional<LabelCorrespondence> correspondence;      // stabilized variant
};

/// sup over X_i x X_j of |d_X(x, x') - d_Y(phi_i(x), phi_j(x'))|.
double distortion_phi(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, int i, int j,
                      const std::vector<int>& phi_i, const std::vector<int>& phi_j);

/// sup over Y_i x Y_j of |d_X(psi_i(y), psi_j(y')) - d_Y(y, y')|.
double distortion_psi(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, int i, int j,
                      const std::vector<int>& psi_i, const std::vector<int>& psi_j);

/// sup over X_i x Y_j of |d_X(x, psi_j(y)) - d_Y(phi_i(x), y)|.
double codistortion(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, int i, int j,
                    const std::vector<int>& phi_i, const std::vector<int>& psi_j);

/// Exact k-labeled GH distance for registered labels, by exhaustive search
/// over map tuples with branch-and-bound pruning. The witness is the
/// lexicographically smallest optimal map table. Throws BudgetExceeded when
/// the enumeration size prod |Y_i|^|X_i| * |X_i|^|Y_i| exceeds the budget.
GHResult gh_k_exact(const LabeledMetricSpace& X, const LabeledMetricSpace& Y,
                    double budget = 1e8);

/// Classical GH of the underlying spaces (single label covering everything).
GHResult gh_plain(const LabeledMetricSpace& X, const LabeledMetricSpace& Y,
                  double budget = 1e8);

/// Minimum of gh_k_exact over all label permutations of X; k <= 8.
GHResult gh_perm_exact(const LabeledMetricSpace& X, const LabeledMetricSpace& Y,
                       double budget = 1e8);

/// GH modulo stabilization, via exhaustive search over label correspondences
/// D in C([k],[l]) and per-pair map tuples.
GHResult gh_stab_exact(const LabeledMetricSpace& X, const LabeledMetricSpace& Y,
                       double budget = 1e8);

/// (1/2) max over nonempty Q of |diam_Q(X) - diam_Q(Y)|; valid lower bound
/// for gh_k_exact. Requires equal k <= 20.
double gh_lower_bound_diam(const LabeledMetricSpace& X, const LabeledMetricSpace& Y);

}  // namespace ltda
