#include "medianqs/wasserstein.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "medianqs/errors.hpp"
#include "medianqs/median.hpp"

namespace medianqs {

namespace {

constexpr double kFlowEps = 1e-13;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
    int to;
    double cap;
    double cost;
};

class FlowGraph {
public:
    explicit FlowGraph(int n) : adj_(static_cast<std::size_t>(n)) {}

    int add_edge(int from, int to, double cap, double cost = 0.0) {
        adj_[from].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({to, cap, cost});
        adj_[to].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({from, 0.0, -cost});
        return static_cast<int>(edges_.size()) - 2;
    }

    int size() const { return static_cast<int>(adj_.size()); }

    // Dinic's blocking-flow algorithm.
    double max_flow(int s, int t) {
        double total = 0.0;
        std::vector<int> level(adj_.size()), it(adj_.size());
        for (;;) {
            std::fill(level.begin(), level.end(), -1);
            std::queue<int> q;
            level[s] = 0;
            q.push(s);
            while (!q.empty()) {
                const int v = q.front();
                q.pop();
                for (int e : adj_[v]) {
                    if (edges_[e].cap > kFlowEps && level[edges_[e].to] < 0) {
                        level[edges_[e].to] = level[v] + 1;
                        q.push(edges_[e].to);
                    }
                }
            }
            if (level[t] < 0) return total;
            std::fill(it.begin(), it.end(), 0);
            for (double pushed; (pushed = augment(s, t, kInf, level, it)) > kFlowEps;) total += pushed;
        }
    }

    // Successive shortest paths with Dijkstra on reduced costs; all initial costs are >= 0.
    double min_cost_flow(int s, int t, double demand) {
        const int n = size();
        std::vector<double> potential(n, 0.0), dist(n);
        std::vector<int> prev_edge(n);
        double cost = 0.0;
        double remaining = demand;
        std::vector<char> settled(n);
        while (remaining > kFlowEps) {
            std::fill(dist.begin(), dist.end(), kInf);
            std::fill(prev_edge.begin(), prev_edge.end(), -1);
            std::fill(settled.begin(), settled.end(), 0);
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
            dist[s] = 0.0;
            heap.emplace(0.0, s);
            while (!heap.empty()) {
                auto [d, v] = heap.top();
                heap.pop();
                if (settled[v]) continue;
                settled[v] = 1;
                for (int e : adj_[v]) {
                    const Edge& E = edges_[e];
                    if (E.cap <= kFlowEps || settled[E.to]) continue;
                    // Rounding can leave reduced costs slightly negative.
                    const double nd = d + std::max(0.0, E.cost + potential[v] - potential[E.to]);
                    if (nd < dist[E.to]) {
                        dist[E.to] = nd;
                        prev_edge[E.to] = e;
                        heap.emplace(nd, E.to);
                    }
                }
            }
            if (dist[t] == kInf) break;
            for (int v = 0; v < n; ++v)
                if (dist[v] < kInf) potential[v] += dist[v];
            double push = remaining;
            for (int v = t; v != s; v = edges_[prev_edge[v] ^ 1].to) push = std::min(push, edges_[prev_edge[v]].cap);
            for (int v = t; v != s; v = edges_[prev_edge[v] ^ 1].to) {
                edges_[prev_edge[v]].cap -= push;
                edges_[prev_edge[v] ^ 1].cap += push;
                cost += push * edges_[prev_edge[v]].cost;
            }
            remaining -= push;
        }
        if (remaining > 1e-9) throw InvariantViolation("wasserstein", "transport problem left mass unshipped");
        return cost;
    }

private:
    double augment(int v, int t, double limit, const std::vector<int>& level, std::vector<int>& it) {
        if (v == t) return limit;
        for (int& i = it[v]; i < static_cast<int>(adj_[v].size()); ++i) {
            Edge& E = edges_[adj_[v][i]];
            if (E.cap <= kFlowEps || level[E.to] != level[v] + 1) continue;
            const double got = augment(E.to, t, std::min(limit, E.cap), level, it);
            if (got > kFlowEps) {
                E.cap -= got;
                edges_[adj_[v][i] ^ 1].cap += got;
                return got;
            }
        }
        return 0.0;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<Edge> edges_;
};

std::vector<std::vector<double>> cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    std::vector<std::vector<double>> d(mu.size(), std::vector<double>(nu.size()));
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < nu.size(); ++j) d[i][j] = euclidean_dist(mu.points()[i], nu.points()[j]);
    return d;
}

void check_support(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    if (mu.size() + nu.size() > kMaxTransportSupport) {
        throw ResourceError("wasserstein", "total support " + std::to_string(mu.size() + nu.size()) +
                                               " exceeds " + std::to_string(kMaxTransportSupport));
    }
}

bool coupling_exists(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const std::vector<std::vector<double>>& d, double threshold) {
    const int n = static_cast<int>(mu.size()), m = static_cast<int>(nu.size());
    FlowGraph g(n + m + 2);
    const int s = n + m, t = n + m + 1;
    for (int i = 0; i < n; ++i) g.add_edge(s, i, mu.weights()[i]);
    for (int j = 0; j < m; ++j) g.add_edge(n + j, t, nu.weights()[j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (d[i][j] <= threshold) g.add_edge(i, n + j, kInf);
    return g.max_flow(s, t) >= 1.0 - 1e-9;
}

// Lexicographic order on (size, weights, coordinates); solving in this fixed
// orientation makes the distances exactly symmetric.
bool ordered(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.weights() != b.weights()) return a.weights() < b.weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec3 p = a.points()[i].cartesian(), q = b.points()[i].cartesian();
        if (p.x != q.x) return p.x < q.x;
        if (p.y != q.y) return p.y < q.y;
        if (p.z != q.z) return p.z < q.z;
    }
    return true;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<UnitPoint> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty()) throw ParameterError("wasserstein", "measure has no atoms");
    if (points_.size() != weights_.size()) throw ParameterError("wasserstein", "points and weights differ in length");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) throw ParameterError("wasserstein", "weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ParameterError("wasserstein", "weights sum to " + std::to_string(sum) + ", not 1");
    }
    std::vector<std::array<double, 3>> keys;
    keys.reserve(points_.size());
    for (const auto& p : points_) keys.push_back({p.x(), p.y(), p.z()});
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
        throw ParameterError("wasserstein", "atom points must be distinct");
    }
}

double w_infinity(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    check_support(mu, nu);
    if (!ordered(mu, nu)) return w_infinity(nu, mu);
    const auto d = cost_matrix(mu, nu);
    std::vector<double> levels;
    levels.reserve(mu.size() * nu.size());
    for (const auto& row : d) levels.insert(levels.end(), row.begin(), row.end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    // The product coupling uses every pair, so the largest level is always feasible.
    std::size_t lo = 0, hi = levels.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (coupling_exists(mu, nu, d, levels[mid])) hi = mid;
        else lo = mid + 1;
    }
    return levels[lo];
}

double w_one(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    check_support(mu, nu);
    if (!ordered(mu, nu)) return w_one(nu, mu);
    const auto d = cost_matrix(mu, nu);
    const int n = static_cast<int>(mu.size()), m = static_cast<int>(nu.size());
    FlowGraph g(n + m + 2);
    const int s = n + m, t = n + m + 1;
    for (int i = 0; i < n; ++i) g.add_edge(s, i, mu.weights()[i]);
    for (int j = 0; j < m; ++j) g.add_edge(n + j, t, nu.weights()[j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) g.add_edge(i, n + j, kInf, d[i][j]);
    double supply = 0.0, demand = 0.0;
    for (double w : mu.weights()) supply += w;
    for (double w : nu.weights()) demand += w;
    return g.min_cost_flow(s, t, std::min(supply, demand));
}

double partition_w_infinity_bound(const std::vector<double>& partition_diameters) {
    if (partition_diameters.empty()) throw ParameterError("wasserstein", "empty diameter list");
    return *std::max_element(partition_diameters.begin(), partition_diameters.end());
}

DiscreteMeasure to_discrete(const NodeMeasure& m, const IcosaTriangulation& tri) {
    if (m.nodes.size() != m.weights.size()) throw ParameterError("wasserstein", "nodes and weights differ in length");
    std::vector<UnitPoint> pts;
    pts.reserve(m.nodes.size());
    for (VertexId v : m.nodes) {
        if (v >= tri.vertex_count()) throw ParameterError("wasserstein", "node " + std::to_string(v) + " out of range");
        pts.push_back(tri.vertices[v]);
    }
    return DiscreteMeasure(std::move(pts), m.weights);
}

double weighted_median_value(const ScalarField& field, const ReebTree& tree, const NodeMeasure& m) {
    std::vector<double> masses(tree.size(), 0.0);
    for (std::size_t i = 0; i < m.nodes.size(); ++i) masses[m.nodes[i]] += m.weights[i];
    return field.value(find_weighted_median(tree, mass_pass(tree, masses)));
}

Theorem2Check verify_theorem2(const ScalarField& field, const ReebTree& tree, double field_lip,
                              const NodeMeasure& mu, const NodeMeasure& nu) {
    const IcosaTriangulation& tri = field.triangulation();
    const DiscreteMeasure dmu = to_discrete(mu, tri);
    const DiscreteMeasure dnu = to_discrete(nu, tri);
    Theorem2Check out;
    out.lhs = std::abs(weighted_median_value(field, tree, mu) - weighted_median_value(field, tree, nu));
    out.rhs = field_lip * w_infinity(dmu, dnu);
    return out;
}

}  // namespace medianqs
