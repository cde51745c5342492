#pragma once

#include "ltda/f2.hpp"
#include "ltda/filtration.hpp"
#include "ltda/poset.hpp"

#include <utility>
#include <vector>

namespace ltda {

/// Finite birth-death intervals of one homology degree, each with b < d.
/// Essential classes are capped at the filtration value of the complex's last
/// simplex insertion, so every bar is finite.
struct Barcode {
    std::vector<std::pair<double, double>> bars;
};

/// Persistence barcode of the complex in the given degree, over the
/// two-element field. Column reduction with clearing; columns ordered by
/// (filtration value, dimension, lexicographic vertices) for reproducibility.
Barcode barcode(const FilteredComplex& fc, int degree);

/// Bars born exactly at a crossing's arrival value alpha_i + (w_1+...+w_i)
/// get their birth pulled back by w_i, across the inserted gap. Crossings are
/// applied from the last to the first, so coincident crossings chain.
Barcode extend_bars(const Barcode& bc, const GapAnnotation& gaps);

/// Exact piecewise-linear persistence landscape of a finite barcode. Level n
/// at r is the n-th largest of min(r - b, d - r) over bars, clamped at 0.
class Landscape1D {
public:
    Landscape1D() = default;
    explicit Landscape1D(const Barcode& bc);

    double evaluate(int level, double r) const;
    int max_levels() const { return static_cast<int>(bars_.size()); }
    double sup(int level) const;
    const std::vector<std::pair<double, double>>& bars() const { return bars_; }

private:
    std::vector<std::pair<double, double>> bars_;
};

Landscape1D landscape_1d(const Barcode& bc);
double evaluate_1d(const Landscape1D& ls, int level, double r);

/// Persistence module over R x P presented by explicit vector-space
/// dimensions and maps: the r-axis is cut at `breaks` into half-open
/// intervals [breaks[i], breaks[i+1]) on which the module is constant, with
/// interval 0 = (-inf, breaks[0]) required to be zero. horizontal[i][e] maps
/// interval i to i+1 at element e; vertical[i][edge] maps across a Hasse edge
/// inside interval i.
struct ExplicitModule {
    const WeightedPoset* poset = nullptr;
    std::vector<double> breaks;
    std::vector<std::vector<int>> dims;            // dims[interval][element]
    std::vector<std::vector<F2Matrix>> horizontal; // [interval][element]
    std::vector<std::vector<F2Matrix>> vertical;   // [interval][edge index]

    int n_intervals() const { return static_cast<int>(dims.size()); }
    /// Index of the interval containing r.
    int interval_of(double r) const;
    /// Rank of the composed map from (interval ia, element a) to (ib, b).
    int rank(int ia, int a, int ib, int b) const;
    /// Throws std::logic_error when some square fails to commute.
    void verify_commutativity() const;
};

enum class ProductQuasimetric { sum, max };

/// Generalized landscape of an explicit module, straight from the ball
/// definition: for each level and grid point the supremum is resolved by
/// scanning the finite candidate thresholds induced by the module's interval
/// nodes. values[level-1](grid index, element index over `elements`).
struct OracleLandscape {
    std::vector<double> grid;
    std::vector<int> elements;  // poset element ids, empty mask excluded
    std::vector<MatrixXd> values;
};

OracleLandscape oracle_generalized_landscape(const ExplicitModule& m, ProductQuasimetric mode,
                                             PosetDistanceKind kind, const std::vector<double>& grid,
                                             int n_max);

}  // namespace ltda
