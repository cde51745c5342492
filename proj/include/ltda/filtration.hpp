#pragma once

#include "ltda/metric_space.hpp"
#include "ltda/poset.hpp"

#include <unordered_map>
#include <vector>

namespace ltda {

/// Simplicial complex with monotone filtration values. Simplices are sorted
/// vertex index tuples; vertices enter at 0 for Vietoris-Rips input and
/// higher-dimensional simplices at their diameter (possibly shifted by gap
/// insertion).
class FilteredComplex {
public:
    void insert(std::vector<int> vertices, double value);
    bool contains(const std::vector<int>& vertices) const;
    double value_of(const std::vector<int>& vertices) const;
    size_t index_of(const std::vector<int>& vertices) const;

    size_t size() const { return simplices_.size(); }
    const std::vector<int>& vertices(size_t s) const { return simplices_[s]; }
    double value(size_t s) const { return values_[s]; }
    void set_value(size_t s, double v) { values_[s] = v; }
    int dim(size_t s) const { return static_cast<int>(simplices_[s].size()) - 1; }
    int max_dim() const;
    double max_value() const;

    /// Highest homological dimension the complex was built to support
    /// (builder's max_dim + 1); defaults to the realized max dimension.
    int tracked_dim() const { return tracked_dim_ >= 0 ? tracked_dim_ : max_dim(); }
    void set_tracked_dim(int d) { tracked_dim_ = d; }

    /// Full scan that every facet enters no later than its cofacet.
    bool is_monotone() const;

private:
    int tracked_dim_ = -1;
    struct VecHash {
        size_t operator()(const std::vector<int>& v) const noexcept {
            size_t h = 1469598103934665603ull;
            for (int x : v) h = (h ^ static_cast<size_t>(x)) * 1099511628211ull;
            return h;
        }
    };
    std::vector<std::vector<int>> simplices_;
    std::vector<double> values_;
    std::unordered_map<std::vector<int>, size_t, VecHash> index_;
};

/// Vietoris-Rips complex on the given points: all simplices up to dimension
/// max_dim + 1 whose diameter is at most r_max, filtered by diameter.
FilteredComplex vietoris_rips(const LabeledMetricSpace& lms, const IndexSet& points, int max_dim,
                              double r_max);

/// Filtered complex of a poset path with gap insertion. Starting from the
/// Vietoris-Rips complex of the path's anchor union, each crossing
/// (alpha, label, w) appends the next union's complex on a filtration axis
/// stretched by the accumulated gap lengths: writing W_i for w_1 + ... + w_i,
/// a new simplex born before the crossing enters at alpha_i + W_i, a new
/// simplex born at value v >= alpha_i enters at v + W_i, and simplices already
/// present above alpha_i + W_{i-1} are pushed up by w_i. Only simplices absent
/// from the accumulating complex are inserted. The result is always
/// face-monotone (asserted).
FilteredComplex path_complex(const LabeledMetricSpace& lms, const WeightedPoset& poset,
                             const PosetPath& path, const GapAnnotation& gaps, int max_dim);

}  // namespace ltda
