#include "testkit/testkit.hpp"

#include "ltda/filtration.hpp"
#include "ltda/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ltda::testkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// --- dense F2 linear algebra over dynamic bit vectors -----------------------

using BitVec = std::vector<uint64_t>;

BitVec make_bits(size_t n) { return BitVec((n + 63) / 64, 0); }
void set_bit(BitVec& v, size_t i) { v[i / 64] |= (uint64_t{1} << (i % 64)); }
void xor_into(BitVec& a, const BitVec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}
int lowest_bit(const BitVec& v) {
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i]) return static_cast<int>(i * 64 + static_cast<size_t>(std::countr_zero(v[i])));
    return -1;
}

// Greedy elimination; returns the rank of the given column vectors.
int rank_of(std::vector<BitVec> cols) {
    std::map<int, BitVec> pivots;
    int rank = 0;
    for (auto& c : cols) {
        int p = lowest_bit(c);
        while (p >= 0) {
            auto it = pivots.find(p);
            if (it == pivots.end()) break;
            xor_into(c, it->second);
            p = lowest_bit(c);
        }
        if (p >= 0) {
            pivots.emplace(p, c);
            ++rank;
        }
    }
    return rank;
}

// Kernel of the linear map whose columns are given, expressed as combinations
// of the input columns (bit i set = column i participates).
std::vector<BitVec> kernel_combinations(const std::vector<BitVec>& cols, size_t n_cols) {
    std::map<int, std::pair<BitVec, BitVec>> pivots;  // pivot -> (column, combination)
    std::vector<BitVec> kernel;
    for (size_t i = 0; i < cols.size(); ++i) {
        BitVec c = cols[i];
        BitVec comb = make_bits(n_cols);
        set_bit(comb, i);
        int p = lowest_bit(c);
        while (p >= 0) {
            auto it = pivots.find(p);
            if (it == pivots.end()) break;
            xor_into(c, it->second.first);
            xor_into(comb, it->second.second);
            p = lowest_bit(c);
        }
        if (p < 0)
            kernel.push_back(comb);
        else
            pivots.emplace(p, std::make_pair(c, comb));
    }
    return kernel;
}

bool get_bit(const BitVec& v, size_t i) { return (v[i / 64] >> (i % 64)) & 1u; }

}  // namespace

int brute_rank(const LabeledMetricSpace& lms, const IndexSet& union_a, double r_a,
               const IndexSet& union_b, double r_b, int degree) {
    if (r_a > r_b) throw std::invalid_argument("brute_rank: needs r_a <= r_b");
    if (!std::includes(union_b.begin(), union_b.end(), union_a.begin(), union_a.end()))
        throw std::invalid_argument("brute_rank: union_a must lie inside union_b");
    if (degree < 0) throw std::invalid_argument("brute_rank: negative degree");
    if (r_a < 0.0) return 0;

    const FilteredComplex big = vietoris_rips(lms, union_b, degree, r_b);
    if (big.size() > 10000) throw std::invalid_argument("brute_rank: simplex budget exceeded");

    const std::set<int> a_points(union_a.begin(), union_a.end());
    auto in_a = [&](size_t s) {
        if (big.value(s) > r_a) return false;
        for (int v : big.vertices(s))
            if (!a_points.count(v)) return false;
        return true;
    };

    // Index the degree-j simplices of the big complex; everything is phrased
    // in that basis.
    std::vector<size_t> j_simplices;
    std::map<std::vector<int>, size_t> j_index;
    for (size_t s = 0; s < big.size(); ++s)
        if (big.dim(s) == degree) {
            j_index[big.vertices(s)] = j_simplices.size();
            j_simplices.push_back(s);
        }
    const size_t nj = j_simplices.size();
    if (nj == 0) return 0;

    // Rows for boundaries of j-simplices: (j-1)-simplex indices.
    std::map<std::vector<int>, size_t> jm1_index;
    size_t next_row = 0;
    for (size_t s = 0; s < big.size(); ++s)
        if (big.dim(s) == degree - 1) jm1_index.emplace(big.vertices(s), next_row++);

    auto boundary_of = [&](size_t s) {
        BitVec col = make_bits(std::max<size_t>(jm1_index.size(), 1));
        if (degree == 0) return col;  // zero map
        const auto& verts = big.vertices(s);
        std::vector<int> face(verts.size() - 1);
        for (size_t drop = 0; drop < verts.size(); ++drop) {
            size_t w = 0;
            for (size_t v = 0; v < verts.size(); ++v)
                if (v != drop) face[w++] = verts[v];
            set_bit(col, jm1_index.at(face));
        }
        return col;
    };

    // Cycle basis of the small complex, as chains in the big j-basis.
    std::vector<BitVec> a_cols;
    std::vector<size_t> a_ids;
    for (size_t t = 0; t < nj; ++t)
        if (in_a(j_simplices[t])) {
            a_cols.push_back(boundary_of(j_simplices[t]));
            a_ids.push_back(t);
        }
    const std::vector<BitVec> combos = kernel_combinations(a_cols, a_cols.size());
    std::vector<BitVec> cycles;
    for (const auto& comb : combos) {
        BitVec chain = make_bits(nj);
        for (size_t i = 0; i < a_ids.size(); ++i)
            if (get_bit(comb, i)) set_bit(chain, a_ids[i]);
        cycles.push_back(std::move(chain));
    }

    // Boundary space of the big complex in degree j.
    std::vector<BitVec> boundaries;
    for (size_t s = 0; s < big.size(); ++s)
        if (big.dim(s) == degree + 1) {
            BitVec col = make_bits(nj);
            const auto& verts = big.vertices(s);
            std::vector<int> face(verts.size() - 1);
            for (size_t drop = 0; drop < verts.size(); ++drop) {
                size_t w = 0;
                for (size_t v = 0; v < verts.size(); ++v)
                    if (v != drop) face[w++] = verts[v];
                set_bit(col, j_index.at(face));
            }
            boundaries.push_back(std::move(col));
        }

    const int rank_b = rank_of(boundaries);
    std::vector<BitVec> both = boundaries;
    both.insert(both.end(), cycles.begin(), cycles.end());
    return rank_of(std::move(both)) - rank_b;
}

BruteLandscape brute_generalized_landscape(const LabeledMetricSpace& lms,
                                           const WeightedPoset& poset, int degree,
                                           const std::vector<double>& grid, int n_max,
                                           PosetDistanceKind kind) {
    BruteLandscape out;
    out.grid = grid;
    for (int e = 0; e < poset.size(); ++e)
        if (poset.mask(e) != 0) {
            out.elements.push_back(e);
            out.masks.push_back(poset.mask(e));
        }
    out.values.assign(static_cast<size_t>(n_max),
                      MatrixXd::Zero(static_cast<Eigen::Index>(grid.size()),
                                     static_cast<Eigen::Index>(out.elements.size())));

    const size_t ne = out.elements.size();
    std::vector<IndexSet> unions(ne);
    std::vector<double> diam(ne);
    std::vector<std::vector<double>> criticals(ne);  // interval left endpoints
    std::vector<char> zero_col(ne);
    for (size_t e = 0; e < ne; ++e) {
        unions[e] = lms.union_of(out.masks[e]);
        diam[e] = diam_points(lms, unions[e]);
        std::set<double> c = {0.0};
        for (size_t a = 0; a < unions[e].size(); ++a)
            for (size_t b = a + 1; b < unions[e].size(); ++b)
                c.insert(lms.dist(unions[e][a], unions[e][b]));
        criticals[e].assign(c.begin(), c.end());
        zero_col[e] = (degree == 0 && diam[e] == 0.0);
    }

    // rank cache over (a element, a interval, b element, b interval)
    std::map<std::tuple<size_t, size_t, size_t, size_t>, int> cache;
    auto rank_between = [&](size_t ea, size_t ia, size_t eb, size_t ib) {
        if (zero_col[ea] || zero_col[eb]) return 0;
        const auto key = std::make_tuple(ea, ia, eb, ib);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const double ra = criticals[ea][ia];
        const double rb = std::max(criticals[eb][ib], ra);
        const int r = brute_rank(lms, unions[ea], ra, unions[eb], rb, degree);
        cache.emplace(key, r);
        return r;
    };

    for (size_t pe = 0; pe < ne; ++pe) {
        const int p = out.elements[pe];
        for (size_t gi = 0; gi < grid.size(); ++gi) {
            const double r = grid[gi];
            std::vector<double> best(static_cast<size_t>(n_max) + 1, kInf);
            auto add = [&](int rank, double value) {
                for (int n = rank + 1; n <= n_max; ++n)
                    best[static_cast<size_t>(n)] = std::min(best[static_cast<size_t>(n)], value);
            };
            // Own-column conventions: zero module below 0 and beyond the
            // union's diameter.
            add(0, r);
            add(0, std::max(diam[pe] - r, 0.0));
            for (size_t ea = 0; ea < ne; ++ea) {
                if (!poset.leq(out.elements[ea], p)) continue;
                const double dpa = poset.distance(out.elements[ea], p, kind);
                if (dpa == kInf) continue;
                for (size_t ia = 0; ia < criticals[ea].size(); ++ia) {
                    const double lo_a = criticals[ea][ia];
                    if (lo_a > r) continue;
                    const double hi_a =
                        ia + 1 < criticals[ea].size() ? criticals[ea][ia + 1] : kInf;
                    const double leg_a = (hi_a > r ? 0.0 : r - hi_a) + dpa;
                    // Zero module below 0 handled above; cross-element zero
                    // columns enter through rank_between.
                    if (zero_col[ea]) {
                        add(0, leg_a);
                        continue;
                    }
                    for (size_t eb = 0; eb < ne; ++eb) {
                        if (!poset.leq(p, out.elements[eb])) continue;
                        const double dpb = poset.distance(p, out.elements[eb], kind);
                        if (dpb == kInf) continue;
                        for (size_t ib = 0; ib < criticals[eb].size(); ++ib) {
                            const double hi_b =
                                ib + 1 < criticals[eb].size() ? criticals[eb][ib + 1] : kInf;
                            if (hi_b <= r) continue;
                            const double leg_b = std::max(criticals[eb][ib] - r, 0.0) + dpb;
                            const int rk = rank_between(ea, ia, eb, ib);
                            if (rk >= n_max) continue;
                            add(rk, std::max(leg_a, leg_b));
                        }
                    }
                }
            }
            for (int n = 1; n <= n_max; ++n) {
                const double v = best[static_cast<size_t>(n)];
                out.values[static_cast<size_t>(n - 1)](static_cast<Eigen::Index>(gi),
                                                       static_cast<Eigen::Index>(pe)) =
                    (v == kInf) ? 0.0 : std::max(v, 0.0);
            }
        }
    }
    return out;
}

int connected_components(const LabeledMetricSpace& lms, const IndexSet& points, double r) {
    std::vector<int> parent(points.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (size_t a = 0; a < points.size(); ++a)
        for (size_t b = a + 1; b < points.size(); ++b)
            if (lms.dist(points[a], points[b]) <= r) {
                const int ra = find(static_cast<int>(a));
                const int rb = find(static_cast<int>(b));
                if (ra != rb) parent[static_cast<size_t>(ra)] = rb;
            }
    int c = 0;
    for (size_t a = 0; a < points.size(); ++a)
        if (find(static_cast<int>(a)) == static_cast<int>(a)) ++c;
    return c;
}

double landscape_from_bars(const std::vector<std::pair<double, double>>& bars, int level,
                           double r) {
    std::vector<double> candidates = {0.0};
    for (const auto& [b, d] : bars) {
        candidates.push_back(r - b);
        candidates.push_back(d - r);
    }
    double best = 0.0;
    for (double eps : candidates) {
        if (eps < 0.0) continue;
        int count = 0;
        for (const auto& [b, d] : bars)
            if (r - eps >= b && r + eps <= d) ++count;
        if (count >= level) best = std::max(best, eps);
    }
    return best;
}

namespace {

LabeledMetricSpace make_space(std::vector<std::vector<double>> pts, LabelList labels) {
    MatrixXd coords(static_cast<Eigen::Index>(pts.size()),
                    static_cast<Eigen::Index>(pts[0].size()));
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts[i].size(); ++j)
            coords(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = pts[i][j];
    return LabeledMetricSpace::from_point_cloud(coords, std::move(labels));
}

double clamp0(double v) { return std::max(v, 0.0); }

}  // namespace

std::vector<GoldenCase> golden_worked_cases(double d1, double d2) {
    std::vector<GoldenCase> cases;
    const double s2 = std::sqrt(2.0);

    {
        GoldenCase ex1{"two one-point classes, degree 0",
                       make_space({{0, 0}, {0, 1}}, {{0}, {1}}),
                       0,
                       d1,
                       d2,
                       3,
                       nullptr};
        ex1.expected = [d1, d2](uint32_t mask, int n, double r) -> double {
            if (mask != 0b11u) return 0.0;
            if (n > 2 || r < 0.0 || r >= 1.0) return 0.0;
            return clamp0(std::min(std::min(d1, d2), std::min(1.0 - r, r)));
        };
        cases.push_back(std::move(ex1));
    }

    {
        GoldenCase ex2{"two two-point classes, degree 1",
                       make_space({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {2, 3}}),
                       1,
                       d1,
                       d2,
                       2,
                       nullptr};
        ex2.expected = [d1, d2, s2](uint32_t mask, int n, double r) -> double {
            if (mask != 0b11u || n > 1) return 0.0;
            if (r < 1.0 || r >= s2) return 0.0;
            return clamp0(std::min(std::min(d1, d2), std::min(s2 - r, r - 1.0)));
        };
        cases.push_back(std::move(ex2));
    }

    {
        GoldenCase ex3{"two three-point classes, degree 0",
                       make_space({{0, 0}, {0.4, 0}, {1, 0}, {0, 1}, {0.4, 1}, {1, 1}},
                                  {{0, 1, 2}, {3, 4, 5}}),
                       0,
                       d1,
                       d2,
                       7,
                       nullptr};
        ex3.expected = [d1, d2, s2](uint32_t mask, int n, double r) -> double {
            if (r < 0.0) return 0.0;
            if (mask == 0b01u || mask == 0b10u) {
                if (n == 1) return clamp0(std::min(r, 1.0 - r));
                if (n == 2) return clamp0(std::min(r, 0.6 - r));
                if (n == 3) return clamp0(std::min(r, 0.4 - r));
                return 0.0;
            }
            if (mask != 0b11u) return 0.0;
            switch (n) {
                case 1:
                    return clamp0(std::min(s2 - r, r));
                case 2:
                    if (r < 0.6)
                        return std::min(std::min(1.0 - r, r),
                                        std::min(std::max(d1, 0.6 - r), std::max(d2, 0.6 - r)));
                    if (r < 1.0) return std::min(1.0 - r, std::min(d1, d2));
                    return 0.0;
                case 3:
                    if (r < 0.4)
                        return std::min(std::min(0.6 - r, r),
                                        std::min(std::max(d1, 0.4 - r), std::max(d2, 0.4 - r)));
                    if (r < 0.6) return std::min(0.6 - r, std::min(d1, d2));
                    return 0.0;
                case 4:
                    if (r < 0.6) return std::min(std::min(d1, d2), std::min(0.6 - r, r));
                    return 0.0;
                case 5:
                case 6:
                    if (r < 0.4) return std::min(std::min(d1, d2), std::min(0.4 - r, r));
                    return 0.0;
                default:
                    return 0.0;
            }
        };
        cases.push_back(std::move(ex3));
    }
    return cases;
}

namespace {

F2Matrix mat(int rows, int cols, std::initializer_list<std::initializer_list<int>> entries) {
    F2Matrix m(rows, cols);
    int r = 0;
    for (const auto& row : entries) {
        int c = 0;
        for (int v : row) {
            if (v) m.set(r, c, true);
            ++c;
        }
        ++r;
    }
    return m;
}

}  // namespace

ExplicitModule explicit_module_two_singletons(const WeightedPoset& poset) {
    // Elements in power_poset(2) order: {}, {1}, {2}, {1,2}; rows of the two
    // singleton classes are zero everywhere (zero-diameter unions).
    ExplicitModule m;
    m.poset = &poset;
    m.breaks = {0.0, 1.0};
    m.dims = {{0, 0, 0, 0}, {0, 0, 0, 2}, {0, 0, 0, 0}};
    m.horizontal.resize(2);
    m.horizontal[0] = {F2Matrix(0, 0), F2Matrix(0, 0), F2Matrix(0, 0), F2Matrix(2, 0)};
    m.horizontal[1] = {F2Matrix(0, 0), F2Matrix(0, 0), F2Matrix(0, 0), F2Matrix(0, 2)};
    for (int i = 0; i < 3; ++i) {
        std::vector<F2Matrix> v;
        for (const auto& e : poset.edges()) {
            const int dfrom = m.dims[static_cast<size_t>(i)][static_cast<size_t>(e.from)];
            const int dto = m.dims[static_cast<size_t>(i)][static_cast<size_t>(e.to)];
            v.push_back(F2Matrix(dto, dfrom));
        }
        m.vertical.push_back(std::move(v));
    }
    return m;
}

ExplicitModule explicit_module_square_h1(const WeightedPoset& poset) {
    ExplicitModule m;
    m.poset = &poset;
    const double s2 = std::sqrt(2.0);
    m.breaks = {1.0, s2};
    m.dims = {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}};
    m.horizontal.resize(2);
    m.horizontal[0] = {F2Matrix(0, 0), F2Matrix(0, 0), F2Matrix(0, 0), F2Matrix(1, 0)};
    m.horizontal[1] = {F2Matrix(0, 0), F2Matrix(0, 0), F2Matrix(0, 0), F2Matrix(0, 1)};
    for (int i = 0; i < 3; ++i) {
        std::vector<F2Matrix> v;
        for (const auto& e : poset.edges())
            v.push_back(F2Matrix(m.dims[static_cast<size_t>(i)][static_cast<size_t>(e.to)],
                                 m.dims[static_cast<size_t>(i)][static_cast<size_t>(e.from)]));
        m.vertical.push_back(std::move(v));
    }
    return m;
}

ExplicitModule explicit_module_image_three_points(const WeightedPoset& chain) {
    // X_1 = {0, 2} inside X = {0, 1, 2} on a line; degree 0. Chain elements:
    // 0 = X_1, 1 = X.
    ExplicitModule m;
    m.poset = &chain;
    m.breaks = {0.0, 1.0, 2.0};
    m.dims = {{0, 0}, {2, 3}, {2, 1}, {0, 0}};
    m.horizontal.resize(3);
    m.horizontal[0] = {F2Matrix(2, 0), F2Matrix(3, 0)};
    m.horizontal[1] = {F2Matrix::identity(2), mat(1, 3, {{1, 1, 1}})};
    m.horizontal[2] = {F2Matrix(0, 2), F2Matrix(0, 1)};
    m.vertical.resize(4);
    m.vertical[0] = {F2Matrix(0, 0)};
    m.vertical[1] = {mat(3, 2, {{1, 0}, {0, 0}, {0, 1}})};
    m.vertical[2] = {mat(1, 2, {{1, 1}})};
    m.vertical[3] = {F2Matrix(0, 0)};
    return m;
}

LabeledMetricSpace random_space(uint64_t seed, int min_points, int max_points) {
    SplitMix64 rng(seed);
    const int n = min_points +
                  static_cast<int>(rng.below(static_cast<uint64_t>(max_points - min_points + 1)));
    MatrixXd coords(n, 2);
    for (int i = 0; i < n; ++i) {
        coords(i, 0) = rng.uniform();
        coords(i, 1) = rng.uniform();
    }
    IndexSet even, odd;
    for (int i = 0; i < n; ++i) (i % 2 == 0 ? even : odd).push_back(i);
    if (odd.empty()) odd.push_back(0);  // single-point space still needs two labels
    return LabeledMetricSpace::from_point_cloud(coords, {even, odd});
}

bool has_label_preserving_isometry(const LabeledMetricSpace& X, const LabeledMetricSpace& Y,
                                   double tol) {
    if (X.k() != Y.k() || X.n_points() != Y.n_points()) return false;
    const int n = X.n_points();
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                if (std::abs(X.dist(i, j) - Y.dist(perm[static_cast<size_t>(i)],
                                                   perm[static_cast<size_t>(j)])) > tol)
                    ok = false;
        for (int l = 0; l < X.k() && ok; ++l) {
            IndexSet image;
            for (int p : X.label(l)) image.push_back(perm[static_cast<size_t>(p)]);
            std::sort(image.begin(), image.end());
            if (image != Y.label(l)) ok = false;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace ltda::testkit
