#include "ltda/gh_distance.hpp"

#include "ltda/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ltda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Depth-first search over map tables in lexicographic order with
// branch-and-bound pruning. term_max(slot, value, prefix) returns the max of
// the objective terms that become determined when `slot` takes `value` given
// the already assigned prefix. Because improvements are strict and the scan
// is lexicographic, the reported witness is the lexicographically smallest
// optimal table.
double lex_min_max(const std::vector<int>& domains,
                   const std::function<double(int, int, const std::vector<int>&)>& term_max,
                   std::vector<int>& best_assignment) {
    double best = kInf;
    std::vector<int> cur(domains.size(), -1);
    std::function<void(size_t, double)> rec = [&](size_t slot, double running) {
        if (slot == domains.size()) {
            if (running < best) {
                best = running;
                best_assignment = cur;
            }
            return;
        }
        for (int v = 0; v < domains[slot]; ++v) {
            const double m = std::max(running, term_max(static_cast<int>(slot), v, cur));
            if (m >= best) continue;
            cur[slot] = v;
            rec(slot + 1, m);
            cur[slot] = -1;
        }
    };
    rec(0, 0.0);
    return best;
}

double pow_capped(double base, double exp, double cap) {
    double r = 1.0;
    for (double e = 0; e < exp; ++e) {
        r *= base;
        if (r > cap) return cap * 2.0;
    }
    return r;
}

double enumeration_size(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, double cap) {
    double total = 1.0;
    for (int i = 0; i < X.k(); ++i) {
        total *= pow_capped(static_cast<double>(Y.label(i).size()),
                            static_cast<double>(X.label(i).size()), cap);
        total *= pow_capped(static_cast<double>(X.label(i).size()),
                            static_cast<double>(Y.label(i).size()), cap);
        if (total > cap) return cap * 2.0;
    }
    return total;
}

}  // namespace

double distortion_phi(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, int i, int j,
                      const std::vector<int>& phi_i, const std::vector<int>& phi_j) {
    const IndexSet& Xi = X.label(i);
    const IndexSet& Xj = X.label(j);
    if (phi_i.size() != Xi.size() || phi_j.size() != Xj.size())
        throw std::invalid_argument("distortion_phi: map not total on its domain");
    double m = 0.0;
    for (size_t a = 0; a < Xi.size(); ++a)
        for (size_t b = 0; b < Xj.size(); ++b) {
            const double dx = X.dist(Xi[a], Xj[b]);
            const double dy = Y.dist(Y.label(i)[static_cast<size_t>(phi_i[a])],
                                     Y.label(j)[static_cast<size_t>(phi_j[b])]);
            m = std::max(m, std::abs(dx - dy));
        }
    return m;
}

double distortion_psi(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, int i, int j,
                      const std::vector<int>& psi_i, const std::vector<int>& psi_j) {
    const IndexSet& Yi = Y.label(i);
    const IndexSet& Yj = Y.label(j);
    if (psi_i.size() != Yi.size() || psi_j.size() != Yj.size())
        throw std::invalid_argument("distortion_psi: map not total on its domain");
    double m = 0.0;
    for (size_t a = 0; a < Yi.size(); ++a)
        for (size_t b = 0; b < Yj.size(); ++b) {
            const double dx = X.dist(X.label(i)[static_cast<size_t>(psi_i[a])],
                                     X.label(j)[static_cast<size_t>(psi_j[b])]);
            const double dy = Y.dist(Yi[a], Yj[b]);
            m = std::max(m, std::abs(dx - dy));
        }
    return m;
}

double codistortion(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, int i, int j,
                    const std::vector<int>& phi_i, const std::vector<int>& psi_j) {
    const IndexSet& Xi = X.label(i);
    const IndexSet& Yj = Y.label(j);
    if (phi_i.size() != Xi.size() || psi_j.size() != Yj.size())
        throw std::invalid_argument("codistortion: map not total on its domain");
    double m = 0.0;
    for (size_t a = 0; a < Xi.size(); ++a)
        for (size_t b = 0; b < Yj.size(); ++b) {
            const double dx = X.dist(Xi[a], X.label(j)[static_cast<size_t>(psi_j[b])]);
            const double dy = Y.dist(Y.label(i)[static_cast<size_t>(phi_i[a])], Yj[b]);
            m = std::max(m, std::abs(dx - dy));
        }
    return m;
}

GHResult gh_k_exact(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, double budget) {
    if (X.k() != Y.k())
        throw std::invalid_argument("gh_k_exact: spaces must have the same number of labels");
    const int k = X.k();
    if (enumeration_size(X, Y, budget) > budget)
        throw BudgetExceeded("gh_k_exact: map enumeration exceeds budget");

    // Slot layout: all phi entries (label by label, point by point inside the
    // sorted label set), then all psi entries. Each slot remembers the source
    // point and, once assigned, the image point.
    struct SlotInfo {
        bool is_phi;
        int lbl;
        int src;  // point index in the source space
    };
    std::vector<SlotInfo> slots;
    std::vector<int> domains;
    for (int i = 0; i < k; ++i)
        for (int p : X.label(i)) {
            slots.push_back({true, i, p});
            domains.push_back(static_cast<int>(Y.label(i).size()));
        }
    for (int i = 0; i < k; ++i)
        for (int y : Y.label(i)) {
            slots.push_back({false, i, y});
            domains.push_back(static_cast<int>(X.label(i).size()));
        }

    auto term_max = [&](int slot, int value, const std::vector<int>& cur) -> double {
        const SlotInfo& s = slots[static_cast<size_t>(slot)];
        double m = 0.0;
        if (s.is_phi) {
            const int img = Y.label(s.lbl)[static_cast<size_t>(value)];
            for (int t = 0; t < slot; ++t) {
                const SlotInfo& o = slots[static_cast<size_t>(t)];
                const int oimg = Y.label(o.lbl)[static_cast<size_t>(cur[static_cast<size_t>(t)])];
                m = std::max(m, std::abs(X.dist(s.src, o.src) - Y.dist(img, oimg)));
            }
        } else {
            const int img = X.label(s.lbl)[static_cast<size_t>(value)];
            for (int t = 0; t < slot; ++t) {
                const SlotInfo& o = slots[static_cast<size_t>(t)];
                if (o.is_phi) {
                    // codis(phi_o, psi_s) on the pair (o.src, s.src).
                    const int oimg = Y.label(o.lbl)[static_cast<size_t>(cur[static_cast<size_t>(t)])];
                    m = std::max(m, std::abs(X.dist(o.src, img) - Y.dist(oimg, s.src)));
                } else {
                    const int oimg = X.label(o.lbl)[static_cast<size_t>(cur[static_cast<size_t>(t)])];
                    m = std::max(m, std::abs(X.dist(img, oimg) - Y.dist(s.src, o.src)));
                }
            }
        }
        return m;
    };

    std::vector<int> best;
    const double v = lex_min_max(domains, term_max, best);

    GHResult res;
    res.value = 0.5 * v;
    res.witness.phi.resize(static_cast<size_t>(k));
    res.witness.psi.resize(static_cast<size_t>(k));
    size_t pos = 0;
    for (int i = 0; i < k; ++i)
        for (size_t a = 0; a < X.label(i).size(); ++a)
            res.witness.phi[static_cast<size_t>(i)].push_back(best[pos++]);
    for (int i = 0; i < k; ++i)
        for (size_t b = 0; b < Y.label(i).size(); ++b)
            res.witness.psi[static_cast<size_t>(i)].push_back(best[pos++]);
    return res;
}

GHResult gh_plain(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, double budget) {
    return gh_k_exact(forget_labels(X), forget_labels(Y), budget);
}

GHResult gh_perm_exact(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, double budget) {
    if (X.k() != Y.k())
        throw std::invalid_argument("gh_perm_exact: spaces must have the same number of labels");
    if (X.k() > 8) throw BudgetExceeded("gh_perm_exact: k > 8");
    std::vector<int> sigma(static_cast<size_t>(X.k()));
    std::iota(sigma.begin(), sigma.end(), 0);

    GHResult best;
    best.value = kInf;
    do {
        GHResult r = gh_k_exact(permute_labels(X, sigma), Y, budget);
        if (r.value < best.value) {
            best = r;
            best.sigma = sigma;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return best;
}

GHResult gh_stab_exact(const LabeledMetricSpace& X, const LabeledMetricSpace& Y, double budget) {
    const int k = X.k();
    const int l = Y.k();
    if (k * l > 25) throw BudgetExceeded("gh_stab_exact: k*l > 25");

    // Pre-scan the correspondence lattice so the budget check happens before
    // any solving starts.
    const uint32_t n_masks = 1u << (k * l);
    std::vector<uint32_t> valid;
    double total = 0.0;
    for (uint32_t mask = 1; mask < n_masks; ++mask) {
        uint32_t proj1 = 0, proj2 = 0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < l; ++j)
                if (mask & (1u << (i * l + j))) {
                    proj1 |= 1u << i;
                    proj2 |= 1u << j;
                }
        if (proj1 != (1u << k) - 1u || proj2 != (1u << l) - 1u) continue;
        valid.push_back(mask);
        double size = 1.0;
        for (int i = 0; i < k && size <= budget; ++i)
            for (int j = 0; j < l && size <= budget; ++j)
                if (mask & (1u << (i * l + j))) {
                    size *= pow_capped(static_cast<double>(Y.label(j).size()),
                                       static_cast<double>(X.label(i).size()), budget);
                    size *= pow_capped(static_cast<double>(X.label(i).size()),
                                       static_cast<double>(Y.label(j).size()), budget);
                }
        total += size;
        if (total > budget) throw BudgetExceeded("gh_stab_exact: enumeration exceeds budget");
    }

    GHResult best;
    best.value = kInf;
    for (uint32_t mask : valid) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < l; ++j)
                if (mask & (1u << (i * l + j))) pairs.emplace_back(i, j);

        struct SlotInfo {
            bool is_phi;
            int xi, yj;  // label indices of the pair
            int src;
        };
        std::vector<SlotInfo> slots;
        std::vector<int> domains;
        for (auto [i, j] : pairs)
            for (int p : X.label(i)) {
                slots.push_back({true, i, j, p});
                domains.push_back(static_cast<int>(Y.label(j).size()));
            }
        for (auto [i, j] : pairs)
            for (int y : Y.label(j)) {
                slots.push_back({false, i, j, y});
                domains.push_back(static_cast<int>(X.label(i).size()));
            }

        auto term_max = [&](int slot, int value, const std::vector<int>& cur) -> double {
            const SlotInfo& s = slots[static_cast<size_t>(slot)];
            double m = 0.0;
            if (s.is_phi) {
                const int img = Y.label(s.yj)[static_cast<size_t>(value)];
                for (int t = 0; t < slot; ++t) {
                    const SlotInfo& o = slots[static_cast<size_t>(t)];
                    const int oimg = Y.label(o.yj)[static_cast<size_t>(cur[static_cast<size_t>(t)])];
                    m = std::max(m, std::abs(X.dist(s.src, o.src) - Y.dist(img, oimg)));
                }
            } else {
                const int img = X.label(s.xi)[static_cast<size_t>(value)];
                for (int t = 0; t < slot; ++t) {
                    const SlotInfo& o = slots[static_cast<size_t>(t)];
                    if (o.is_phi) {
                        const int oimg = Y.label(o.yj)[static_cast<size_t>(cur[static_cast<size_t>(t)])];
                        m = std::max(m, std::abs(X.dist(o.src, img) - Y.dist(oimg, s.src)));
                    } else {
                        const int oimg = X.label(o.xi)[static_cast<size_t>(cur[static_cast<size_t>(t)])];
                        m = std::max(m, std::abs(X.dist(img, oimg) - Y.dist(s.src, o.src)));
                    }
                }
            }
            return m;
        };

        std::vector<int> assignment;
        const double v = lex_min_max(domains, term_max, assignment);
        if (0.5 * v < best.value) {
            best.value = 0.5 * v;
            best.correspondence = LabelCorrespondence{pairs};
            best.witness.phi.assign(pairs.size(), {});
            best.witness.psi.assign(pairs.size(), {});
            size_t pos = 0;
            for (size_t t = 0; t < pairs.size(); ++t)
                for (size_t a = 0; a < X.label(pairs[t].first).size(); ++a)
                    best.witness.phi[t].push_back(assignment[pos++]);
            for (size_t t = 0; t < pairs.size(); ++t)
                for (size_t b = 0; b < Y.label(pairs[t].second).size(); ++b)
                    best.witness.psi[t].push_back(assignment[pos++]);
        }
    }
    return best;
}

double gh_lower_bound_diam(const LabeledMetricSpace& X, const LabeledMetricSpace& Y) {
    if (X.k() != Y.k())
        throw std::invalid_argument("gh_lower_bound_diam: spaces must have the same number of labels");
    if (X.k() > 20) throw std::invalid_argument("gh_lower_bound_diam: k > 20");
    const uint32_t full = (1u << X.k()) - 1u;
    double best = 0.0;
    for (uint32_t q = 1; q <= full; ++q) {
        const double dx = diam_points(X, X.union_of(q));
        const double dy = diam_points(Y, Y.union_of(q));
        best = std::max(best, std::abs(dx - dy));
    }
    return 0.5 * best;
}

}  // namespace ltda
