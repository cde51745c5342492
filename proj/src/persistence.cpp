#include "ltda/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace ltda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Symmetric difference of two sorted index lists (column addition over F2).
std::vector<int> xor_columns(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

Barcode barcode(const FilteredComplex& fc, int degree) {
    if (degree < 0) throw std::invalid_argument("barcode: negative degree");
    if (degree > fc.tracked_dim() - 1)
        throw std::invalid_argument("barcode: degree beyond computed dimension");

    const size_t n = fc.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (fc.value(a) != fc.value(b)) return fc.value(a) < fc.value(b);
        if (fc.dim(a) != fc.dim(b)) return fc.dim(a) < fc.dim(b);
        return fc.vertices(a) < fc.vertices(b);
    });
    std::vector<int> pos(n);
    for (size_t i = 0; i < n; ++i) pos[order[i]] = static_cast<int>(i);

    const double cap = fc.max_value();
    const int j = degree;

    auto boundary = [&](size_t s) {
        const auto& verts = fc.vertices(s);
        std::vector<int> col;
        col.reserve(verts.size());
        std::vector<int> face(verts.size() - 1);
        for (size_t drop = 0; drop < verts.size(); ++drop) {
            size_t w = 0;
            for (size_t v = 0; v < verts.size(); ++v)
                if (v != drop) face[w++] = verts[v];
            col.push_back(pos[fc.index_of(face)]);
        }
        std::sort(col.begin(), col.end());
        return col;
    };

    std::vector<std::pair<double, double>> bars;
    std::vector<char> cleared(n, 0);

    // Reduce the (j+1)-boundary: each surviving pivot pairs a j-simplex birth
    // with this column's death.
    std::unordered_map<int, std::vector<int>> reduced;
    for (size_t i = 0; i < n; ++i) {
        const size_t s = order[i];
        if (fc.dim(s) != j + 1) continue;
        std::vector<int> col = boundary(s);
        while (!col.empty()) {
            auto it = reduced.find(col.back());
            if (it == reduced.end()) break;
            col = xor_columns(col, it->second);
        }
        if (col.empty()) continue;
        const int p = col.back();
        reduced.emplace(p, std::move(col));
        const size_t birth_simplex = order[static_cast<size_t>(p)];
        cleared[birth_simplex] = 1;
        const double b = fc.value(birth_simplex);
        const double d = fc.value(s);
        if (b < d) bars.emplace_back(b, d);
    }

    // Births in degree j that no (j+1)-simplex kills are essential; they are
    // capped at the complex's last insertion value.
    if (j == 0) {
        for (size_t s = 0; s < n; ++s)
            if (fc.dim(s) == 0 && !cleared[s] && fc.value(s) < cap)
                bars.emplace_back(fc.value(s), cap);
    } else {
        std::unordered_map<int, std::vector<int>> reduced_j;
        for (size_t i = 0; i < n; ++i) {
            const size_t s = order[i];
            if (fc.dim(s) != j || cleared[s]) continue;  // clearing
            std::vector<int> col = boundary(s);
            while (!col.empty()) {
                auto it = reduced_j.find(col.back());
                if (it == reduced_j.end()) break;
                col = xor_columns(col, it->second);
            }
            if (col.empty()) {
                if (fc.value(s) < cap) bars.emplace_back(fc.value(s), cap);
            } else {
                reduced_j.emplace(col.back(), std::move(col));
            }
        }
    }

    std::sort(bars.begin(), bars.end());
    return Barcode{std::move(bars)};
}

Barcode extend_bars(const Barcode& bc, const GapAnnotation& gaps) {
    // Recompute the arrival values with the exact arithmetic used during gap
    // insertion so the equality test below is bit-for-bit.
    std::vector<double> thresholds, arrivals;
    std::vector<double> W = {0.0};
    for (const GapCrossing& c : gaps.crossings) W.push_back(W.back() + c.weight);
    for (size_t i = 0; i < gaps.crossings.size(); ++i) {
        thresholds.push_back(gaps.crossings[i].alpha + W[i]);
        arrivals.push_back(gaps.crossings[i].alpha + W[i + 1]);
    }
    Barcode out = bc;
    for (size_t i = gaps.crossings.size(); i-- > 0;)
        for (auto& bar : out.bars)
            if (bar.first == arrivals[i]) bar.first = thresholds[i];
    std::sort(out.bars.begin(), out.bars.end());
    return out;
}

Landscape1D::Landscape1D(const Barcode& bc) : bars_(bc.bars) {
    std::sort(bars_.begin(), bars_.end());
}

double Landscape1D::evaluate(int level, double r) const {
    if (level < 1) throw std::invalid_argument("Landscape1D: levels are 1-based");
    std::vector<double> tents;
    tents.reserve(bars_.size());
    for (const auto& [b, d] : bars_) {
        const double t = std::min(r - b, d - r);
        if (t > 0.0) tents.push_back(t);
    }
    if (static_cast<size_t>(level) > tents.size()) return 0.0;
    std::nth_element(tents.begin(), tents.begin() + (level - 1), tents.end(),
                     std::greater<double>());
    return tents[static_cast<size_t>(level - 1)];
}

double Landscape1D::sup(int level) const {
    // The maximum of the n-th largest tent lives at a tent peak or at a
    // crossing of two tent sides; both land in this candidate set.
    std::vector<double> xs;
    for (const auto& [b, d] : bars_) {
        xs.push_back(b);
        xs.push_back(d);
        xs.push_back(0.5 * (b + d));
    }
    for (size_t i = 0; i < bars_.size(); ++i)
        for (size_t j = i + 1; j < bars_.size(); ++j) {
            xs.push_back(0.5 * (bars_[i].first + bars_[j].second));
            xs.push_back(0.5 * (bars_[j].first + bars_[i].second));
        }
    double m = 0.0;
    for (double x : xs) m = std::max(m, evaluate(level, x));
    return m;
}

Landscape1D landscape_1d(const Barcode& bc) { return Landscape1D(bc); }

double evaluate_1d(const Landscape1D& ls, int level, double r) { return ls.evaluate(level, r); }

int ExplicitModule::interval_of(double r) const {
    int i = 0;
    while (i < static_cast<int>(breaks.size()) && r >= breaks[static_cast<size_t>(i)]) ++i;
    return i;
}

int ExplicitModule::rank(int ia, int a, int ib, int b) const {
    if (ia > ib) throw std::invalid_argument("ExplicitModule::rank: intervals out of order");
    // Route: horizontal at a from ia to ib, then vertical chain a -> b in ib.
    F2Matrix m = F2Matrix::identity(dims[static_cast<size_t>(ia)][static_cast<size_t>(a)]);
    for (int i = ia; i < ib; ++i)
        m = horizontal[static_cast<size_t>(i)][static_cast<size_t>(a)] * m;
    // Greedy Hasse walk from a to b; commutativity makes the choice immaterial.
    int at = a;
    while (at != b) {
        bool advanced = false;
        for (int ei : poset->up_edges(at)) {
            const int to = poset->edges()[static_cast<size_t>(ei)].to;
            if (poset->leq(to, b)) {
                m = vertical[static_cast<size_t>(ib)][static_cast<size_t>(ei)] * m;
                at = to;
                advanced = true;
                break;
            }
        }
        if (!advanced) throw std::invalid_argument("ExplicitModule::rank: elements not comparable");
    }
    return m.rank();
}

void ExplicitModule::verify_commutativity() const {
    for (int i = 0; i + 1 < n_intervals(); ++i)
        for (size_t e = 0; e < poset->edges().size(); ++e) {
            const auto& edge = poset->edges()[e];
            const F2Matrix lhs = vertical[static_cast<size_t>(i) + 1][e] *
                                 horizontal[static_cast<size_t>(i)][static_cast<size_t>(edge.from)];
            const F2Matrix rhs = horizontal[static_cast<size_t>(i)][static_cast<size_t>(edge.to)] *
                                 vertical[static_cast<size_t>(i)][e];
            if (!(lhs == rhs))
                throw std::logic_error("ExplicitModule: non-commuting square detected");
        }
}

OracleLandscape oracle_generalized_landscape(const ExplicitModule& m, ProductQuasimetric mode,
                                             PosetDistanceKind kind, const std::vector<double>& grid,
                                             int n_max) {
    m.verify_commutativity();
    const WeightedPoset& poset = *m.poset;

    OracleLandscape out;
    out.grid = grid;
    for (int e = 0; e < poset.size(); ++e)
        if (poset.mask(e) != 0) out.elements.push_back(e);
    out.values.assign(static_cast<size_t>(n_max),
                      MatrixXd::Zero(static_cast<Eigen::Index>(grid.size()),
                                     static_cast<Eigen::Index>(out.elements.size())));

    const int n_int = m.n_intervals();
    auto lo = [&](int i) { return i == 0 ? -kInf : m.breaks[static_cast<size_t>(i - 1)]; };
    auto hi = [&](int i) {
        return i == static_cast<int>(m.breaks.size()) ? kInf : m.breaks[static_cast<size_t>(i)];
    };
    auto combine = [&](double dr, double dp) {
        return mode == ProductQuasimetric::sum ? dr + dp : std::max(dr, dp);
    };

    for (size_t pe = 0; pe < out.elements.size(); ++pe) {
        const int p = out.elements[pe];
        for (size_t gi = 0; gi < grid.size(); ++gi) {
            const double r = grid[gi];
            std::vector<double> best(static_cast<size_t>(n_max) + 1, kInf);
            for (int a = 0; a < poset.size(); ++a) {
                if (poset.mask(a) == 0 || !poset.leq(a, p)) continue;
                const double dpa = poset.distance(a, p, kind);
                for (int ia = 0; ia < n_int; ++ia) {
                    if (lo(ia) > r) continue;
                    const double leg_a = combine(hi(ia) > r ? 0.0 : r - hi(ia), dpa);
                    for (int b = 0; b < poset.size(); ++b) {
                        if (poset.mask(b) == 0 || !poset.leq(p, b)) continue;
                        const double dpb = poset.distance(p, b, kind);
                        for (int ib = ia; ib < n_int; ++ib) {
                            if (hi(ib) <= r) continue;
                            const double leg_b = combine(std::max(lo(ib) - r, 0.0), dpb);
                            const int rank = m.rank(ia, a, ib, b);
                            if (rank >= n_max) continue;
                            const double v = std::max(leg_a, leg_b);
                            for (int nn = rank + 1; nn <= n_max; ++nn)
                                best[static_cast<size_t>(nn)] =
                                    std::min(best[static_cast<size_t>(nn)], v);
                        }
                    }
                }
            }
            for (int nn = 1; nn <= n_max; ++nn) {
                const double v = best[static_cast<size_t>(nn)];
                out.values[static_cast<size_t>(nn - 1)](static_cast<Eigen::Index>(gi),
                                                        static_cast<Eigen::Index>(pe)) =
                    (v == kInf ? kInf : std::max(v, 0.0));
            }
        }
    }
    return out;
}

}  // namespace ltda
