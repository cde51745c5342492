#pragma once

#include "ltda/metric_space.hpp"

#include <cstdint>
#include <vector>

namespace ltda {

enum class PosetDistanceKind { geodesic, ultrametric };

/// Finite weighted poset given by its Hasse diagram. Elements carry a label
/// bitmask (bit i = label i); for the power poset the element id equals its
/// mask. Distance tables are extended reals with +inf on incomparable pairs.
class WeightedPoset {
public:
    struct Edge {
        int from, to;
        double weight;
    };

    WeightedPoset(std::vector<uint32_t> element_masks, std::vector<Edge> edges);

    int size() const { return static_cast<int>(masks_.size()); }
    uint32_t mask(int e) const { return masks_[static_cast<size_t>(e)]; }
    const std::vector<uint32_t>& masks() const { return masks_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int top() const { return top_; }
    int bottom() const { return bottom_; }
    bool leq(int a, int b) const;

    /// Edges leaving element e, as (edge index) list.
    const std::vector<int>& up_edges(int e) const { return up_[static_cast<size_t>(e)]; }

    /// Element id for a mask, or -1 when absent.
    int element_of(uint32_t mask) const;

    double distance(int p, int q, PosetDistanceKind kind) const;

    WeightedPoset with_weights(std::vector<double> weights) const;

private:
    void build_tables();

    std::vector<uint32_t> masks_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> up_;
    MatrixXd geodesic_, ultrametric_;
    int top_ = -1, bottom_ = -1;
};

/// Power set of [k] ordered by inclusion; element id = mask, Hasse edges are
/// single-label insertions, weights all zero. 1 <= k <= 10.
WeightedPoset power_poset(int k);

/// Two-node chain {1} -> {1,2} used for the image landscape.
WeightedPoset chain_poset_pair();

WeightedPoset weight_constant(const WeightedPoset& poset, double w);

/// Edge Q -> Q' weighted by diam of the union of the labels in Q'.
/// The poset must be the power poset matching lms.
WeightedPoset weight_diameter(const WeightedPoset& poset, const LabeledMetricSpace& lms);

/// Edge Q -> Q' weighted by alpha times the Hausdorff distance between the
/// unions of Q and Q'. Edges out of the empty set use alpha * diam of the
/// target union instead, keeping the table total; those edges never enter
/// path complexes.
WeightedPoset weight_hausdorff_fraction(const WeightedPoset& poset, const LabeledMetricSpace& lms,
                                        double alpha);

double poset_distance(const WeightedPoset& poset, int p, int q, PosetDistanceKind kind);

/// Finite grid Z paired with a weighted poset; the product Z x P ordered
/// componentwise is the discretization the landscape is computed on.
struct Discretization {
    std::vector<double> z;  // strictly increasing
    const WeightedPoset* poset;
};

/// Where a path crosses a Hasse edge: grid value, label added, edge weight.
struct GapCrossing {
    double alpha;
    int added_label;   // 0-based; -1 when the edge does not add a single label
    double weight;
    int to_element;    // poset element entered
};

struct GapAnnotation {
    std::vector<GapCrossing> crossings;
};

/// A monotone staircase in Z x P: an ascending chain of poset elements with
/// nondecreasing crossing positions taken from Z. `chain` lists the visited
/// elements from the anchor upward; crossing i happens at alphas[i-1].
struct PosetPath {
    std::vector<int> chain;        // chain[0] = anchor element
    std::vector<double> alphas;    // size chain.size() - 1
    GapAnnotation gaps(const WeightedPoset& poset) const;
    bool contains(int element, double r) const {
        for (size_t s = 0; s < chain.size(); ++s) {
            if (chain[s] != element) continue;
            const bool lo = (s == 0) || (alphas[s - 1] <= r);
            const bool hi = (s + 1 == chain.size()) || (r <= alphas[s]);
            if (lo && hi) return true;
        }
        return false;
    }
};

/// Number of maximal chains of Z x P for the power poset on [k]:
/// k! * C(|Z| + k - 1, k).
double maximal_chain_count(int k, int z_size);

/// All maximal chains of the discretization (bottom element at the smallest
/// grid value up to the top element at the largest), optionally filtered to
/// those containing the given (grid value, element) point. With dedupe set,
/// chains that generate the same filtered complex (identical annotated
/// crossings above the bottom element) are collapsed to one representative.
/// Throws BudgetExceeded when the chain count exceeds the budget.
std::vector<PosetPath> enumerate_paths(const Discretization& disc,
                                       const std::pair<double, int>* through = nullptr,
                                       bool dedupe = false, double budget = 1e7);

}  // namespace ltda
