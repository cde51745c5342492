#include "ltda/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ltda {

namespace {

// Structural checks every instance needs; coverage and emptiness stay
// report-based so that validate() can name the offenders.
void check_label_ranges(const LabelList& labels, int n_points) {
    if (labels.empty()) throw std::invalid_argument("labels: at least one label set required");
    for (size_t i = 0; i < labels.size(); ++i)
        for (int p : labels[i])
            if (p < 0 || p >= n_points)
                throw std::invalid_argument("labels: point index out of range in label set " +
                                            std::to_string(i + 1));
}

void check_cover(const LabelList& labels, int n_points) {
    std::vector<char> covered(static_cast<size_t>(n_points), 0);
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].empty())
            throw std::invalid_argument("labels: label set " + std::to_string(i + 1) + " is empty");
        for (int p : labels[i]) covered[static_cast<size_t>(p)] = 1;
    }
    for (int p = 0; p < n_points; ++p)
        if (!covered[static_cast<size_t>(p)])
            throw std::invalid_argument("labels: point " + std::to_string(p + 1) +
                                        " is not covered by any label set");
}

LabelList sorted_labels(LabelList labels) {
    for (auto& l : labels) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    return labels;
}

}  // namespace

LabeledMetricSpace::LabeledMetricSpace(MatrixXd dist, LabelList labels,
                                       std::optional<MatrixXd> coords)
    : dist_(std::move(dist)), labels_(sorted_labels(std::move(labels))), coords_(std::move(coords)) {
    if (dist_.rows() != dist_.cols())
        throw std::invalid_argument("distance matrix must be square");
    if (dist_.rows() == 0) throw std::invalid_argument("space must have at least one point");
    check_label_ranges(labels_, n_points());
}

LabeledMetricSpace LabeledMetricSpace::from_point_cloud(const MatrixXd& coords, LabelList labels) {
    if (coords.rows() == 0) throw std::invalid_argument("point cloud is empty");
    check_label_ranges(labels, static_cast<int>(coords.rows()));
    check_cover(labels, static_cast<int>(coords.rows()));
    const int n = static_cast<int>(coords.rows());
    MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double v = (coords.row(i) - coords.row(j)).norm();
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return LabeledMetricSpace(std::move(d), std::move(labels), coords);
}

LabeledMetricSpace LabeledMetricSpace::from_distance_matrix(MatrixXd dist, LabelList labels) {
    return LabeledMetricSpace(std::move(dist), std::move(labels));
}

IndexSet LabeledMetricSpace::union_of(uint32_t label_mask) const {
    std::set<int> pts;
    for (int i = 0; i < k(); ++i)
        if (label_mask & (1u << i)) pts.insert(labels_[static_cast<size_t>(i)].begin(),
                                               labels_[static_cast<size_t>(i)].end());
    return IndexSet(pts.begin(), pts.end());
}

ValidationReport validate(const LabeledMetricSpace& lms) {
    constexpr double kTriangleSlack = 1e-9;
    ValidationReport report;
    const MatrixXd& d = lms.dist();
    const int n = lms.n_points();
    for (int i = 0; i < n; ++i) {
        if (d(i, i) != 0.0)
            report.issues.push_back("nonzero diagonal at point " + std::to_string(i + 1));
        for (int j = i + 1; j < n; ++j) {
            if (d(i, j) != d(j, i))
                report.issues.push_back("asymmetry between points " + std::to_string(i + 1) +
                                        " and " + std::to_string(j + 1));
            if (d(i, j) < 0.0 || !std::isfinite(d(i, j)))
                report.issues.push_back("invalid distance between points " + std::to_string(i + 1) +
                                        " and " + std::to_string(j + 1));
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m)
                if (d(i, j) > d(i, m) + d(m, j) + kTriangleSlack) {
                    report.issues.push_back("triangle inequality violated for points " +
                                            std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                            "," + std::to_string(m + 1));
                    // One witness per (i,j) pair keeps the report readable.
                    break;
                }
    std::vector<char> covered(static_cast<size_t>(n), 0);
    for (int i = 0; i < lms.k(); ++i) {
        if (lms.label(i).empty())
            report.issues.push_back("label set " + std::to_string(i + 1) + " is empty");
        for (int p : lms.label(i)) covered[static_cast<size_t>(p)] = 1;
    }
    for (int p = 0; p < n; ++p)
        if (!covered[static_cast<size_t>(p)])
            report.issues.push_back("point " + std::to_string(p + 1) + " is not covered");
    return report;
}

double diam_points(const LabeledMetricSpace& lms, const IndexSet& points) {
    double m = 0.0;
    for (size_t a = 0; a < points.size(); ++a)
        for (size_t b = a + 1; b < points.size(); ++b)
            m = std::max(m, lms.dist(points[a], points[b]));
    return m;
}

double diam_Q(const LabeledMetricSpace& lms, const std::vector<int>& Q) {
    if (Q.empty()) throw std::invalid_argument("diam_Q: Q must be nonempty");
    uint32_t mask = 0;
    for (int i : Q) {
        if (i < 0 || i >= lms.k()) throw std::invalid_argument("diam_Q: label index out of range");
        mask |= 1u << i;
    }
    return diam_points(lms, lms.union_of(mask));
}

double hausdorff(const LabeledMetricSpace& lms, const IndexSet& A, const IndexSet& B) {
    if (A.empty() || B.empty()) throw std::invalid_argument("hausdorff: empty input set");
    double h = 0.0;
    for (int a : A) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int b : B) nearest = std::min(nearest, lms.dist(a, b));
        h = std::max(h, nearest);
    }
    for (int b : B) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int a : A) nearest = std::min(nearest, lms.dist(a, b));
        h = std::max(h, nearest);
    }
    return h;
}

LabeledMetricSpace restrict_labels(const LabeledMetricSpace& lms, const std::vector<int>& I) {
    if (I.empty()) throw std::invalid_argument("restrict_labels: I must be nonempty");
    for (size_t a = 0; a + 1 < I.size(); ++a)
        if (I[a] >= I[a + 1])
            throw std::invalid_argument("restrict_labels: I must be strictly increasing");
    uint32_t mask = 0;
    for (int i : I) {
        if (i < 0 || i >= lms.k())
            throw std::invalid_argument("restrict_labels: label index out of range");
        mask |= 1u << i;
    }
    const IndexSet pts = lms.union_of(mask);
    std::vector<int> renumber(static_cast<size_t>(lms.n_points()), -1);
    for (size_t p = 0; p < pts.size(); ++p) renumber[static_cast<size_t>(pts[p])] = static_cast<int>(p);

    const int m = static_cast<int>(pts.size());
    MatrixXd d(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) d(a, b) = lms.dist(pts[static_cast<size_t>(a)], pts[static_cast<size_t>(b)]);

    LabelList labels;
    for (int i : I) {
        IndexSet l;
        for (int p : lms.label(i)) l.push_back(renumber[static_cast<size_t>(p)]);
        labels.push_back(std::move(l));
    }
    std::optional<MatrixXd> coords;
    if (lms.coords()) {
        MatrixXd c(m, lms.coords()->cols());
        for (int a = 0; a < m; ++a) c.row(a) = lms.coords()->row(pts[static_cast<size_t>(a)]);
        coords = std::move(c);
    }
    return LabeledMetricSpace(std::move(d), std::move(labels), std::move(coords));
}

LabeledMetricSpace permute_labels(const LabeledMetricSpace& lms, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != lms.k())
        throw std::invalid_argument("permute_labels: sigma has wrong length");
    std::vector<char> seen(sigma.size(), 0);
    for (int s : sigma) {
        if (s < 0 || s >= lms.k() || seen[static_cast<size_t>(s)])
            throw std::invalid_argument("permute_labels: sigma is not a permutation");
        seen[static_cast<size_t>(s)] = 1;
    }
    LabelList labels;
    for (int s : sigma) labels.push_back(lms.label(s));
    return LabeledMetricSpace(lms.dist(), std::move(labels), lms.coords());
}

LabeledMetricSpace stabilize(const LabeledMetricSpace& lms, const std::vector<int>& rho) {
    const int q = static_cast<int>(rho.size());
    if (q < lms.k()) throw std::invalid_argument("stabilize: q must be at least k");
    std::vector<char> hit(static_cast<size_t>(lms.k()), 0);
    for (int r : rho) {
        if (r < 0 || r >= lms.k()) throw std::invalid_argument("stabilize: rho value out of range");
        hit[static_cast<size_t>(r)] = 1;
    }
    for (int i = 0; i < lms.k(); ++i)
        if (!hit[static_cast<size_t>(i)])
            throw std::invalid_argument("stabilize: rho is not surjective (label " +
                                        std::to_string(i + 1) + " missed)");
    LabelList labels;
    for (int r : rho) labels.push_back(lms.label(r));
    return LabeledMetricSpace(lms.dist(), std::move(labels), lms.coords());
}

LabeledMetricSpace forget_labels(const LabeledMetricSpace& lms) {
    IndexSet all(static_cast<size_t>(lms.n_points()));
    for (int p = 0; p < lms.n_points(); ++p) all[static_cast<size_t>(p)] = p;
    return LabeledMetricSpace(lms.dist(), {all}, lms.coords());
}

LabeledMetricSpace chromatic_to_labeled(const ChromaticInput& input) {
    const int n = static_cast<int>(input.dist.rows());
    if (static_cast<int>(input.colors.size()) != n)
        throw std::invalid_argument("chromatic input: one color per point required");
    if (input.sigma.empty()) throw std::invalid_argument("chromatic input: empty constraint family");
    for (size_t j = 0; j < input.sigma.size(); ++j)
        if (input.sigma[j].empty())
            throw std::invalid_argument("chromatic input: constraint set " + std::to_string(j + 1) +
                                        " is empty");

    auto in_sigma = [&](int color, const std::vector<int>& s) {
        return std::find(s.begin(), s.end(), color) != s.end();
    };

    // Consistency condition 1: every color used lies in the union of the family.
    for (int p = 0; p < n; ++p) {
        bool found = false;
        for (const auto& s : input.sigma)
            if (in_sigma(input.colors[static_cast<size_t>(p)], s)) { found = true; break; }
        if (!found)
            throw std::invalid_argument("chromatic input: point " + std::to_string(p + 1) +
                                        " has color " + std::to_string(input.colors[static_cast<size_t>(p)]) +
                                        " outside every constraint set");
    }

    // Consistency condition 2: every constraint set is hit by some point.
    LabelList labels;
    for (size_t j = 0; j < input.sigma.size(); ++j) {
        IndexSet l;
        for (int p = 0; p < n; ++p)
            if (in_sigma(input.colors[static_cast<size_t>(p)], input.sigma[j])) l.push_back(p);
        if (l.empty())
            throw std::invalid_argument("chromatic input: constraint set " + std::to_string(j + 1) +
                                        " matches no point");
        labels.push_back(std::move(l));
    }
    return LabeledMetricSpace(input.dist, std::move(labels), input.coords);
}

}  // namespace ltda
