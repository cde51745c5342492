#include "ltda/landscape.hpp"

#include "ltda/errors.hpp"
#include "ltda/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace ltda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binom_count(int z_size, int m) {
    // Nondecreasing position tuples of length m over z_size values.
    double c = 1.0;
    for (int t = 1; t <= m; ++t) c *= static_cast<double>(z_size + t - 1) / static_cast<double>(t);
    return c;
}

struct PathData {
    PosetPath path;
    GapAnnotation gaps;
    Landscape1D landscape;
    std::vector<double> shift_below;  // accumulated gap length below each stage
};

// Ascending Hasse chains from every nonempty element up to the top, paired
// with every nondecreasing crossing-position tuple from the grid. Entering at
// an arbitrary element (not only at single classes) is what lets the fold see
// the plain landscape of each union alongside the gap-inserted ones.
std::vector<PosetPath> anchored_paths(const WeightedPoset& poset, const std::vector<double>& z,
                                      double budget) {
    if (poset.top() < 0) throw std::invalid_argument("generalized_landscape: poset needs a top");
    std::vector<std::vector<int>> chains;
    for (int q0 = 0; q0 < poset.size(); ++q0) {
        if (poset.mask(q0) == 0) continue;
        std::vector<int> prefix = {q0};
        std::function<void(int)> rec = [&](int at) {
            if (at == poset.top()) {
                chains.push_back(prefix);
                return;
            }
            for (int ei : poset.up_edges(at)) {
                const int to = poset.edges()[static_cast<size_t>(ei)].to;
                prefix.push_back(to);
                rec(to);
                prefix.pop_back();
            }
        };
        rec(q0);
    }

    double total = 0.0;
    for (const auto& chain : chains) {
        total += binom_count(static_cast<int>(z.size()), static_cast<int>(chain.size()) - 1);
        if (total > budget)
            throw BudgetExceeded("generalized_landscape: path enumeration exceeds budget");
    }

    std::vector<PosetPath> paths;
    paths.reserve(static_cast<size_t>(total));
    for (const auto& chain : chains) {
        const size_t m = chain.size() - 1;
        std::vector<double> alphas(m);
        std::function<void(size_t, size_t)> rec = [&](size_t at, size_t min_index) {
            if (at == m) {
                paths.push_back(PosetPath{chain, alphas});
                return;
            }
            for (size_t i = min_index; i < z.size(); ++i) {
                alphas[at] = z[i];
                rec(at + 1, i);
            }
        };
        rec(0, 0);
    }
    return paths;
}

std::optional<size_t> stage_of(const PosetPath& path, int element, double r) {
    for (size_t s = 0; s < path.chain.size(); ++s) {
        if (path.chain[s] != element) continue;
        const bool lo = (s == 0) || (path.alphas[s - 1] <= r);
        const bool hi = (s + 1 == path.chain.size()) || (r <= path.alphas[s]);
        if (lo && hi) return s;
    }
    return std::nullopt;
}

void parallel_for(size_t n, int threads, const std::function<void(size_t)>& body) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    int t = threads > 0 ? threads : hw;
    t = std::min<int>(t, static_cast<int>(n));
    if (t <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < t; ++w)
        pool.emplace_back([&] {
            try {
                for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

double SampledSlice::interpolate(int level, double r) const {
    if (level < 1 || level > n_levels()) return 0.0;
    const auto& v = levels[static_cast<size_t>(level - 1)];
    if (r < z.front() || r > z.back())
        throw std::invalid_argument("SampledSlice::interpolate: r outside the grid range");
    auto it = std::upper_bound(z.begin(), z.end(), r);
    if (it == z.begin()) return v.front();
    if (it == z.end()) return v.back();
    const size_t hi = static_cast<size_t>(it - z.begin());
    const size_t lo = hi - 1;
    if (z[hi] == z[lo]) return v[lo];
    const double t = (r - z[lo]) / (z[hi] - z[lo]);
    return v[lo] + t * (v[hi] - v[lo]);
}

int GeneralizedLandscape::element_index(uint32_t mask) const {
    for (size_t i = 0; i < element_masks.size(); ++i)
        if (element_masks[i] == mask) return static_cast<int>(i);
    return -1;
}

SampledSlice GeneralizedLandscape::slice(uint32_t mask) const {
    const int e = element_index(mask);
    if (e < 0) throw std::invalid_argument("GeneralizedLandscape::slice: unknown poset element");
    SampledSlice s;
    s.z = z;
    s.levels.assign(static_cast<size_t>(n_max), std::vector<double>(z.size(), 0.0));
    for (int n = 0; n < n_max; ++n)
        for (size_t g = 0; g < z.size(); ++g)
            s.levels[static_cast<size_t>(n)][g] =
                values[static_cast<size_t>(n)](static_cast<Eigen::Index>(g), e);
    return s;
}

std::vector<double> default_grid(const LabeledMetricSpace& lms, int count) {
    if (count < 2) throw std::invalid_argument("default_grid: need at least two grid values");
    const double top = diam_points(lms, lms.union_of((1u << lms.k()) - 1u));
    std::vector<double> z(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        z[static_cast<size_t>(i)] = top * static_cast<double>(i) / static_cast<double>(count - 1);
    return z;
}

GeneralizedLandscape generalized_landscape(const LabeledMetricSpace& lms,
                                           const WeightedPoset& poset, int degree,
                                           const std::vector<double>& z, int n_max,
                                           double path_budget, int threads) {
    if (z.empty()) throw std::invalid_argument("generalized_landscape: empty grid");
    for (size_t i = 0; i + 1 < z.size(); ++i)
        if (z[i] >= z[i + 1])
            throw std::invalid_argument("generalized_landscape: grid must be strictly increasing");
    if (n_max < 1) throw std::invalid_argument("generalized_landscape: n_max must be positive");

    GeneralizedLandscape gl;
    gl.z = z;
    gl.degree = degree;
    gl.n_max = n_max;
    gl.poset = &poset;
    for (int e = 0; e < poset.size(); ++e)
        if (poset.mask(e) != 0) {
            gl.elements.push_back(e);
            gl.element_masks.push_back(poset.mask(e));
        }
    gl.values.assign(static_cast<size_t>(n_max),
                     MatrixXd::Zero(static_cast<Eigen::Index>(z.size()),
                                    static_cast<Eigen::Index>(gl.elements.size())));
    gl.provenance.assign(static_cast<size_t>(n_max),
                         Eigen::MatrixXi::Constant(static_cast<Eigen::Index>(z.size()),
                                                   static_cast<Eigen::Index>(gl.elements.size()),
                                                   kProvenanceDiameterCap));

    // Per-element geometry: union diameter, and whether the degree-j barcode
    // of the union is empty (such a column is zero for every r, and its poset
    // distance caps every landscape above it).
    std::vector<double> diam(gl.elements.size());
    std::vector<char> zero_row(gl.elements.size());
    for (size_t e = 0; e < gl.elements.size(); ++e) {
        const IndexSet pts = lms.union_of(gl.element_masks[e]);
        diam[e] = diam_points(lms, pts);
        const FilteredComplex fc = vietoris_rips(lms, pts, degree, diam[e]);
        zero_row[e] = barcode(fc, degree).bars.empty();
    }

    std::vector<PosetPath> paths = anchored_paths(poset, z, path_budget);
    std::vector<PathData> data(paths.size());
    parallel_for(paths.size(), threads, [&](size_t i) {
        PathData d;
        d.path = paths[i];
        d.gaps = paths[i].gaps(poset);
        const FilteredComplex fc = path_complex(lms, poset, d.path, d.gaps, degree);
        d.landscape = Landscape1D(extend_bars(barcode(fc, degree), d.gaps));
        d.shift_below.assign(d.path.chain.size(), 0.0);
        double shift = 0.0;
        for (size_t s = 1; s < d.path.chain.size(); ++s) {
            shift += d.gaps.crossings[s - 1].weight;
            d.shift_below[s] = shift;
        }
        data[i] = std::move(d);
    });

    // Pointwise min over the paths through each grid point, then the two
    // convention caps. Ties keep the lowest path index.
    for (size_t e = 0; e < gl.elements.size(); ++e) {
        const int element = gl.elements[e];
        double zero_cap = kInf;
        for (size_t a = 0; a < gl.elements.size(); ++a)
            if (zero_row[a] && poset.leq(gl.elements[a], element))
                zero_cap = std::min(zero_cap, poset.distance(gl.elements[a], element,
                                                             PosetDistanceKind::geodesic));
        for (size_t g = 0; g < z.size(); ++g) {
            const double r = z[g];
            for (int n = 1; n <= n_max; ++n) {
                double best = kInf;
                int who = kProvenanceDiameterCap;
                for (size_t p = 0; p < data.size(); ++p) {
                    const auto s = stage_of(data[p].path, element, r);
                    if (!s) continue;
                    const double u = r + data[p].shift_below[*s];
                    const double v = data[p].landscape.evaluate(n, u);
                    if (v < best) {
                        best = v;
                        who = static_cast<int>(p);
                    }
                }
                const double diameter_cap = std::max(diam[e] - r, 0.0);
                if (diameter_cap < best) {
                    best = diameter_cap;
                    who = kProvenanceDiameterCap;
                }
                if (zero_cap < best) {
                    best = zero_cap;
                    who = kProvenanceZeroUnion;
                }
                if (best == kInf) best = 0.0;
                gl.values[static_cast<size_t>(n - 1)](static_cast<Eigen::Index>(g),
                                                      static_cast<Eigen::Index>(e)) = best;
                gl.provenance[static_cast<size_t>(n - 1)](static_cast<Eigen::Index>(g),
                                                          static_cast<Eigen::Index>(e)) = who;
            }
        }
    }
    return gl;
}

double interpolate(const GeneralizedLandscape& gl, int level, double r, uint32_t element_mask) {
    if (level < 1 || level > gl.n_max)
        throw std::invalid_argument("interpolate: level out of range");
    if (r < gl.z.front() || r > gl.z.back())
        throw std::invalid_argument("interpolate: r outside the grid range");
    const int e = gl.element_index(element_mask);
    if (e < 0) throw std::invalid_argument("interpolate: unknown poset element");
    const auto& v = gl.values[static_cast<size_t>(level - 1)];
    auto it = std::upper_bound(gl.z.begin(), gl.z.end(), r);
    if (it == gl.z.begin()) return v(0, e);
    const size_t hi = std::min(static_cast<size_t>(it - gl.z.begin()), gl.z.size() - 1);
    const size_t lo = hi - (hi > 0 ? 1 : 0);
    if (hi == lo || gl.z[hi] == gl.z[lo]) return v(static_cast<Eigen::Index>(lo), e);
    const double t = (r - gl.z[lo]) / (gl.z[hi] - gl.z[lo]);
    return v(static_cast<Eigen::Index>(lo), e) +
           t * (v(static_cast<Eigen::Index>(hi), e) - v(static_cast<Eigen::Index>(lo), e));
}

SampledSlice restrict_to(const GeneralizedLandscape& gl, uint32_t element_mask) {
    return gl.slice(element_mask);
}

SampledSlice image_landscape(const LabeledMetricSpace& lms, int degree,
                             const std::vector<double>& z, int n_max) {
    if (lms.k() != 2) throw std::invalid_argument("image_landscape: expects two labels");
    const IndexSet& first = lms.label(0);
    const IndexSet& second = lms.label(1);
    if (!std::includes(second.begin(), second.end(), first.begin(), first.end()))
        throw std::invalid_argument("image_landscape: first label must be a subset of the second");
    const WeightedPoset chain = weight_constant(chain_poset_pair(), 0.0);
    const GeneralizedLandscape gl = generalized_landscape(lms, chain, degree, z, n_max);
    return gl.slice(0b01u);
}

double sup_distance(const GeneralizedLandscape& a, const GeneralizedLandscape& b) {
    if (a.z != b.z || a.element_masks != b.element_masks || a.n_max != b.n_max ||
        a.degree != b.degree)
        throw std::invalid_argument("sup_distance: landscapes live on different discretizations");
    double m = 0.0;
    for (int n = 0; n < a.n_max; ++n)
        m = std::max(m, (a.values[static_cast<size_t>(n)] - b.values[static_cast<size_t>(n)])
                            .cwiseAbs()
                            .maxCoeff());
    return m;
}

double mse_distance(const SampledSlice& a, const SampledSlice& b, int resample_count) {
    if (resample_count < 2) throw std::invalid_argument("mse_distance: need at least two samples");
    if (a.n_levels() != b.n_levels())
        throw std::invalid_argument("mse_distance: level counts differ");
    const double lo = std::max(a.z.front(), b.z.front());
    const double hi = std::min(a.z.back(), b.z.back());
    if (hi < lo) throw std::invalid_argument("mse_distance: grids do not overlap");
    double total = 0.0;
    for (int n = 1; n <= a.n_levels(); ++n) {
        double acc = 0.0;
        for (int i = 0; i < resample_count; ++i) {
            const double r =
                lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(resample_count - 1);
            const double d = a.interpolate(n, r) - b.interpolate(n, r);
            acc += d * d;
        }
        total += acc / static_cast<double>(resample_count);
    }
    return total;
}

}  // namespace ltda
