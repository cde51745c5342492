#include "ltda/poset.hpp"

#include "ltda/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

namespace ltda {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

WeightedPoset::WeightedPoset(std::vector<uint32_t> element_masks, std::vector<Edge> edges)
    : masks_(std::move(element_masks)), edges_(std::move(edges)) {
    const int n = size();
    up_.assign(static_cast<size_t>(n), {});
    std::vector<int> in_degree(static_cast<size_t>(n), 0);
    for (size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.from < 0 || ed.from >= n || ed.to < 0 || ed.to >= n)
            throw std::invalid_argument("poset edge endpoint out of range");
        if (ed.weight < 0.0) throw std::invalid_argument("poset edge weight must be nonnegative");
        up_[static_cast<size_t>(ed.from)].push_back(static_cast<int>(e));
        ++in_degree[static_cast<size_t>(ed.to)];
    }
    int n_top = 0, n_bottom = 0;
    for (int e = 0; e < n; ++e) {
        if (up_[static_cast<size_t>(e)].empty()) { top_ = e; ++n_top; }
        if (in_degree[static_cast<size_t>(e)] == 0) { bottom_ = e; ++n_bottom; }
    }
    if (n_top != 1) top_ = -1;
    if (n_bottom != 1) bottom_ = -1;
    build_tables();
}

void WeightedPoset::build_tables() {
    const int n = size();
    // Topological order by Kahn's algorithm over the Hasse DAG.
    std::vector<int> in_degree(static_cast<size_t>(n), 0);
    for (const Edge& e : edges_) ++in_degree[static_cast<size_t>(e.to)];
    std::vector<int> order;
    for (int e = 0; e < n; ++e)
        if (in_degree[static_cast<size_t>(e)] == 0) order.push_back(e);
    for (size_t head = 0; head < order.size(); ++head)
        for (int ei : up_[static_cast<size_t>(order[head])])
            if (--in_degree[static_cast<size_t>(edges_[static_cast<size_t>(ei)].to)] == 0)
                order.push_back(edges_[static_cast<size_t>(ei)].to);
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("poset relation contains a cycle");

    geodesic_ = MatrixXd::Constant(n, n, kInf);
    ultrametric_ = MatrixXd::Constant(n, n, kInf);
    for (int s = 0; s < n; ++s) {
        geodesic_(s, s) = 0.0;
        ultrametric_(s, s) = 0.0;
        for (int v : order) {
            if (geodesic_(s, v) == kInf) continue;
            for (int ei : up_[static_cast<size_t>(v)]) {
                const Edge& e = edges_[static_cast<size_t>(ei)];
                geodesic_(s, e.to) = std::min(geodesic_(s, e.to), geodesic_(s, v) + e.weight);
                ultrametric_(s, e.to) =
                    std::min(ultrametric_(s, e.to), std::max(ultrametric_(s, v), e.weight));
            }
        }
    }
}

bool WeightedPoset::leq(int a, int b) const { return geodesic_(a, b) < kInf; }

int WeightedPoset::element_of(uint32_t mask) const {
    for (int e = 0; e < size(); ++e)
        if (masks_[static_cast<size_t>(e)] == mask) return e;
    return -1;
}

double WeightedPoset::distance(int p, int q, PosetDistanceKind kind) const {
    return kind == PosetDistanceKind::geodesic ? geodesic_(p, q) : ultrametric_(p, q);
}

WeightedPoset WeightedPoset::with_weights(std::vector<double> weights) const {
    if (weights.size() != edges_.size())
        throw std::invalid_argument("with_weights: wrong number of weights");
    std::vector<Edge> edges = edges_;
    for (size_t e = 0; e < edges.size(); ++e) edges[e].weight = weights[e];
    return WeightedPoset(masks_, std::move(edges));
}

WeightedPoset power_poset(int k) {
    if (k < 1 || k > 10) throw std::invalid_argument("power_poset: k must be in [1, 10]");
    const uint32_t n = 1u << k;
    std::vector<uint32_t> masks(n);
    for (uint32_t m = 0; m < n; ++m) masks[m] = m;
    std::vector<WeightedPoset::Edge> edges;
    for (uint32_t m = 0; m < n; ++m)
        for (int b = 0; b < k; ++b)
            if (!(m & (1u << b)))
                edges.push_back({static_cast<int>(m), static_cast<int>(m | (1u << b)), 0.0});
    return WeightedPoset(std::move(masks), std::move(edges));
}

WeightedPoset chain_poset_pair() {
    std::vector<uint32_t> masks = {0b01u, 0b11u};
    std::vector<WeightedPoset::Edge> edges = {{0, 1, 0.0}};
    return WeightedPoset(std::move(masks), std::move(edges));
}

WeightedPoset weight_constant(const WeightedPoset& poset, double w) {
    if (w < 0.0) throw std::invalid_argument("weight_constant: negative weight");
    std::vector<double> weights(poset.edges().size(), w);
    return poset.with_weights(std::move(weights));
}

WeightedPoset weight_diameter(const WeightedPoset& poset, const LabeledMetricSpace& lms) {
    std::vector<double> weights;
    weights.reserve(poset.edges().size());
    for (const auto& e : poset.edges()) {
        const uint32_t target = poset.mask(e.to);
        if (static_cast<int>(std::bit_width(target)) > lms.k())
            throw std::invalid_argument("weight_diameter: poset does not match the space's labels");
        weights.push_back(diam_points(lms, lms.union_of(target)));
    }
    return poset.with_weights(std::move(weights));
}

WeightedPoset weight_hausdorff_fraction(const WeightedPoset& poset, const LabeledMetricSpace& lms,
                                        double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("weight_hausdorff_fraction: negative alpha");
    std::vector<double> weights;
    weights.reserve(poset.edges().size());
    for (const auto& e : poset.edges()) {
        const uint32_t source = poset.mask(e.from);
        const uint32_t target = poset.mask(e.to);
        if (static_cast<int>(std::bit_width(target)) > lms.k())
            throw std::invalid_argument("weight_hausdorff_fraction: poset does not match labels");
        if (source == 0)
            weights.push_back(alpha * diam_points(lms, lms.union_of(target)));
        else
            weights.push_back(alpha * hausdorff(lms, lms.union_of(source), lms.union_of(target)));
    }
    return poset.with_weights(std::move(weights));
}

double poset_distance(const WeightedPoset& poset, int p, int q, PosetDistanceKind kind) {
    return poset.distance(p, q, kind);
}

GapAnnotation PosetPath::gaps(const WeightedPoset& poset) const {
    GapAnnotation ann;
    for (size_t s = 1; s < chain.size(); ++s) {
        const int from = chain[s - 1];
        const int to = chain[s];
        if (poset.mask(from) == 0) continue;  // entering the first class opens no gap
        double w = 0.0;
        for (int ei : poset.up_edges(from))
            if (poset.edges()[static_cast<size_t>(ei)].to == to) {
                w = poset.edges()[static_cast<size_t>(ei)].weight;
                break;
            }
        const uint32_t added = poset.mask(to) & ~poset.mask(from);
        const int label = std::has_single_bit(added) ? std::countr_zero(added) : -1;
        ann.crossings.push_back({alphas[s - 1], label, w, to});
    }
    return ann;
}

double maximal_chain_count(int k, int z_size) {
    double c = 1.0;
    for (int t = 0; t < k; ++t) c *= static_cast<double>(z_size + t);
    return c;
}

namespace {

void chains_to_top(const WeightedPoset& poset, int from, std::vector<int>& prefix,
                   std::vector<std::vector<int>>& out) {
    if (from == poset.top()) {
        out.push_back(prefix);
        return;
    }
    for (int ei : poset.up_edges(from)) {
        const int to = poset.edges()[static_cast<size_t>(ei)].to;
        prefix.push_back(to);
        chains_to_top(poset, to, prefix, out);
        prefix.pop_back();
    }
}

void positions_rec(const std::vector<double>& z, size_t m, size_t at, size_t min_index,
                   std::vector<double>& alphas, const std::function<void()>& emit) {
    if (at == m) {
        emit();
        return;
    }
    for (size_t i = min_index; i < z.size(); ++i) {
        alphas[at] = z[i];
        positions_rec(z, m, at + 1, i, alphas, emit);
    }
}

}  // namespace

std::vector<PosetPath> enumerate_paths(const Discretization& disc,
                                       const std::pair<double, int>* through, bool dedupe,
                                       double budget) {
    const WeightedPoset& poset = *disc.poset;
    if (poset.bottom() < 0 || poset.top() < 0)
        throw std::invalid_argument("enumerate_paths: poset needs unique bottom and top");
    const int height = static_cast<int>(std::popcount(poset.mask(poset.top())) -
                                        std::popcount(poset.mask(poset.bottom())));
    if (maximal_chain_count(height, static_cast<int>(disc.z.size())) > budget)
        throw BudgetExceeded("enumerate_paths: maximal chain count exceeds budget");

    std::vector<std::vector<int>> chains;
    std::vector<int> prefix = {poset.bottom()};
    chains_to_top(poset, poset.bottom(), prefix, chains);

    std::vector<PosetPath> paths;
    std::map<std::pair<std::vector<int>, std::vector<double>>, bool> seen;
    for (const auto& chain : chains) {
        const size_t m = chain.size() - 1;
        std::vector<double> alphas(m);
        positions_rec(disc.z, m, 0, 0, alphas, [&] {
            PosetPath p{chain, alphas};
            if (through && !p.contains(through->second, through->first)) return;
            if (dedupe) {
                // Chains differing only in where they leave the bottom element
                // build the same filtered complex.
                std::vector<int> tail(chain.begin() + 1, chain.end());
                std::vector<double> tail_alphas(alphas.begin() + (m > 0 ? 1 : 0), alphas.end());
                if (poset.mask(poset.bottom()) != 0) {
                    tail = chain;
                    tail_alphas = alphas;
                }
                auto key = std::make_pair(tail, tail_alphas);
                if (seen.count(key)) return;
                seen[key] = true;
            }
            paths.push_back(std::move(p));
        });
    }
    return paths;
}

}  // namespace ltda
