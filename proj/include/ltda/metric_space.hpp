#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace ltda {

using Eigen::MatrixXd;

using IndexSet = std::vector<int>;
using LabelList = std::vector<IndexSet>;

/// Finite metric space whose points carry an ordered cover by k nonempty
/// label sets (label sets may overlap and may repeat). Points are referenced
/// by integer index; coordinates are optional metadata kept only when the
/// space was built from a point cloud. Immutable after construction.
class LabeledMetricSpace {
public:
    LabeledMetricSpace(MatrixXd dist, LabelList labels,
                       std::optional<MatrixXd> coords = std::nullopt);

    static LabeledMetricSpace from_point_cloud(const MatrixXd& coords, LabelList labels);
    static LabeledMetricSpace from_distance_matrix(MatrixXd dist, LabelList labels);

    int n_points() const { return static_cast<int>(dist_.rows()); }
    int k() const { return static_cast<int>(labels_.size()); }
    const MatrixXd& dist() const { return dist_; }
    double dist(int i, int j) const { return dist_(i, j); }
    const LabelList& labels() const { return labels_; }
    const IndexSet& label(int i) const { return labels_[static_cast<size_t>(i)]; }
    const std::optional<MatrixXd>& coords() const { return coords_; }

    /// Union of the label sets selected by the bitmask (bit i = label i),
    /// as a sorted list of point indices.
    IndexSet union_of(uint32_t label_mask) const;

private:
    MatrixXd dist_;
    LabelList labels_;
    std::optional<MatrixXd> coords_;
};

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks every structural invariant: zero diagonal, symmetry, nonnegativity,
/// triangle inequality (additive slack 1e-9), nonempty covering labels.
ValidationReport validate(const LabeledMetricSpace& lms);

/// Diameter of a plain point set.
double diam_points(const LabeledMetricSpace& lms, const IndexSet& points);

/// Max distance over all point pairs in the union of the labels listed in Q
/// (0-based label indices).
double diam_Q(const LabeledMetricSpace& lms, const std::vector<int>& Q);

/// Hausdorff distance between two point sets of the same space.
double hausdorff(const LabeledMetricSpace& lms, const IndexSet& A, const IndexSet& B);

/// Sub-space over the labels listed in I (0-based, strictly increasing),
/// with points renumbered and labels restricted in order.
LabeledMetricSpace restrict_labels(const LabeledMetricSpace& lms, const std::vector<int>& I);

/// Same points and metric, labels reindexed: new label i is old label sigma[i].
LabeledMetricSpace permute_labels(const LabeledMetricSpace& lms, const std::vector<int>& sigma);

/// q-labeled space with label i equal to the old label rho[i]; rho must be
/// surjective onto [k].
LabeledMetricSpace stabilize(const LabeledMetricSpace& lms, const std::vector<int>& rho);

/// Coarsening with a single label covering every point.
LabeledMetricSpace forget_labels(const LabeledMetricSpace& lms);

/// Point set with a coloring map and a constraint family of color subsets.
struct ChromaticInput {
    MatrixXd dist;
    std::optional<MatrixXd> coords;
    std::vector<int> colors;                 // one color per point
    std::vector<std::vector<int>> sigma;     // constraint family, each set nonempty
};

/// Labeled space whose j-th label set is the preimage of sigma[j]. Throws if
/// either consistency condition fails (a point colored outside the family, or
/// a constraint set hit by no point), naming the offender.
LabeledMetricSpace chromatic_to_labeled(const ChromaticInput& input);

}  // namespace ltda
