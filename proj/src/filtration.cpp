#include "ltda/filtration.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace ltda {

void FilteredComplex::insert(std::vector<int> vertices, double value) {
    auto it = index_.find(vertices);
    if (it != index_.end()) throw std::logic_error("FilteredComplex::insert: duplicate simplex");
    index_.emplace(vertices, simplices_.size());
    simplices_.push_back(std::move(vertices));
    values_.push_back(value);
}

bool FilteredComplex::contains(const std::vector<int>& vertices) const {
    return index_.count(vertices) > 0;
}

double FilteredComplex::value_of(const std::vector<int>& vertices) const {
    return values_[index_of(vertices)];
}

size_t FilteredComplex::index_of(const std::vector<int>& vertices) const {
    auto it = index_.find(vertices);
    if (it == index_.end()) throw std::out_of_range("FilteredComplex: unknown simplex");
    return it->second;
}

int FilteredComplex::max_dim() const {
    int d = -1;
    for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
}

double FilteredComplex::max_value() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, v);
    return m;
}

bool FilteredComplex::is_monotone() const {
    for (size_t s = 0; s < simplices_.size(); ++s) {
        const auto& verts = simplices_[s];
        if (verts.size() < 2) continue;
        std::vector<int> face(verts.size() - 1);
        for (size_t drop = 0; drop < verts.size(); ++drop) {
            size_t w = 0;
            for (size_t v = 0; v < verts.size(); ++v)
                if (v != drop) face[w++] = verts[v];
            auto it = index_.find(face);
            if (it == index_.end()) return false;
            if (values_[it->second] > values_[s]) return false;
        }
    }
    return true;
}

namespace {

void enumerate_simplices(const LabeledMetricSpace& lms, const IndexSet& points, int max_vertices,
                         double r_max,
                         const std::function<void(const std::vector<int>&, double)>& emit) {
    std::vector<int> current;
    // Depth-first subset enumeration tracking the running diameter; branches
    // whose diameter already exceeds r_max are cut.
    std::function<void(size_t, double)> rec = [&](size_t next, double diam) {
        if (!current.empty()) emit(current, diam);
        if (static_cast<int>(current.size()) == max_vertices) return;
        for (size_t i = next; i < points.size(); ++i) {
            double d = diam;
            for (int v : current) d = std::max(d, lms.dist(v, points[i]));
            if (d > r_max) continue;
            current.push_back(points[i]);
            rec(i + 1, d);
            current.pop_back();
        }
    };
    rec(0, 0.0);
}

}  // namespace

FilteredComplex vietoris_rips(const LabeledMetricSpace& lms, const IndexSet& points, int max_dim,
                              double r_max) {
    if (points.empty()) throw std::invalid_argument("vietoris_rips: empty point set");
    if (max_dim < 0) throw std::invalid_argument("vietoris_rips: negative max_dim");
    if (r_max < 0.0) throw std::invalid_argument("vietoris_rips: negative r_max");
    FilteredComplex fc;
    fc.set_tracked_dim(max_dim + 1);
    enumerate_simplices(lms, points, max_dim + 2, r_max,
                        [&](const std::vector<int>& verts, double diam) { fc.insert(verts, diam); });
    return fc;
}

FilteredComplex path_complex(const LabeledMetricSpace& lms, const WeightedPoset& poset,
                             const PosetPath& path, const GapAnnotation& gaps, int max_dim) {
    if (path.chain.empty()) throw std::invalid_argument("path_complex: empty path");

    // The anchor union is the first element carrying at least one label; for
    // maximal chains this skips the empty set, whose complex is empty.
    size_t anchor = 0;
    while (anchor < path.chain.size() && poset.mask(path.chain[anchor]) == 0) ++anchor;
    if (anchor == path.chain.size())
        throw std::invalid_argument("path_complex: path never reaches a labeled union");

    const double r_max = diam_points(lms, lms.union_of(poset.mask(path.chain.back())));

    // Prefix gap lengths W[0..m]; every filtration value below is one single
    // addition x + W[j], so face-monotonicity follows from the monotonicity
    // of rounded addition and needs no slack.
    const size_t m = gaps.crossings.size();
    std::vector<double> W = {0.0};
    for (const GapCrossing& c : gaps.crossings) W.push_back(W.back() + c.weight);

    // A simplex entering with the crossing-i union at original value v >= the
    // crossing position lands at v + W[j], where j is the last crossing the
    // value has already passed; one born before the crossing waits out the
    // gap and enters at the arrival value alpha_i + W[i].
    auto late_value = [&](double orig, size_t entry) {
        size_t j = entry;
        while (j < m && gaps.crossings[j].alpha < orig) ++j;
        return orig + W[j];
    };

    FilteredComplex fc;
    fc.set_tracked_dim(max_dim + 1);
    enumerate_simplices(lms, lms.union_of(poset.mask(path.chain[anchor])), max_dim + 2, r_max,
                        [&](const std::vector<int>& verts, double diam) {
                            fc.insert(verts, late_value(diam, 0));
                        });
    for (size_t i = 0; i < m; ++i) {
        const GapCrossing& c = gaps.crossings[i];
        const double arrival = c.alpha + W[i + 1];
        enumerate_simplices(lms, lms.union_of(poset.mask(c.to_element)), max_dim + 2, r_max,
                            [&](const std::vector<int>& verts, double diam) {
                                if (fc.contains(verts)) return;
                                fc.insert(verts,
                                          diam < c.alpha ? arrival : late_value(diam, i + 1));
                            });
    }

    if (!fc.is_monotone())
        throw std::logic_error("path_complex: produced a non-monotone filtration");
    return fc;
}

}  // namespace ltda
