#include "medianqs/reeb_tree.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "medianqs/errors.hpp"

namespace medianqs {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<VertexId>(i);
    }

    VertexId find(VertexId x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    VertexId unite(VertexId a, VertexId b) {
        a = find(a);
        b = find(b);
        if (a == b) return a;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return a;
    }

private:
    std::vector<VertexId> parent_;
    std::vector<std::uint32_t> size_;
};

// One sweep of the merge-tree construction. Visiting vertices in `order`,
// every already-visited neighbor component is attached to the current vertex
// through its most recently added vertex (the component's "tail"). Returns
// link[v] = the vertex v attaches to (kNoNode for the last vertex), and
// fills xor-accumulated child sets and child counts.
struct MergeTree {
    std::vector<VertexId> link;
    std::vector<VertexId> child_xor;
    std::vector<std::uint32_t> child_count;
};

template <class Order, class Visited>
MergeTree sweep(const IcosaTriangulation& tri, const Order& order, Visited&& visited_before) {
    const std::size_t V = tri.vertex_count();
    MergeTree t{std::vector<VertexId>(V, kNoNode), std::vector<VertexId>(V, 0),
                std::vector<std::uint32_t>(V, 0)};
    DisjointSets sets(V);
    std::vector<VertexId> tail(V);
    for (VertexId v : order) {
        tail[v] = v;
        for (VertexId u : tri.vertex_neighbors[v]) {
            if (!visited_before(u, v)) continue;
            const VertexId ru = sets.find(u);
            const VertexId rv = sets.find(v);
            if (ru == rv) continue;
            const VertexId end = tail[ru];
            t.link[end] = v;
            t.child_xor[v] ^= end;
            ++t.child_count[v];
            tail[sets.unite(ru, rv)] = v;
        }
    }
    return t;
}

}  // namespace

std::vector<std::pair<VertexId, VertexId>> ReebTree::arcs() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(size() ? size() - 1 : 0);
    for (VertexId v = 0; v < size(); ++v)
        if (parent_[v] != kNoNode) out.emplace_back(parent_[v], v);
    return out;
}

ReebTree ReebTree::from_arcs(std::size_t node_count, const std::vector<std::pair<VertexId, VertexId>>& arcs,
                             VertexId root, std::vector<double> values) {
    if (arcs.size() + 1 != node_count) {
        throw InvariantViolation("reeb_tree", "tree with " + std::to_string(node_count) +
                                                  " nodes has " + std::to_string(arcs.size()) + " arcs");
    }
    if (root >= node_count) throw InvariantViolation("reeb_tree", "root outside node range");
    // Undirected adjacency in CSR form.
    std::vector<std::size_t> off(node_count + 1, 0);
    for (const auto& [a, b] : arcs) {
        ++off[a + 1];
        ++off[b + 1];
    }
    for (std::size_t i = 0; i < node_count; ++i) off[i + 1] += off[i];
    std::vector<VertexId> adj(off.back());
    std::vector<std::size_t> fill(off.begin(), off.end() - 1);
    for (const auto& [a, b] : arcs) {
        adj[fill[a]++] = b;
        adj[fill[b]++] = a;
    }

    ReebTree T;
    T.root_ = root;
    T.value_ = std::move(values);
    T.parent_.assign(node_count, kNoNode);
    T.depth_.assign(node_count, 0);
    T.order_.reserve(node_count);
    std::vector<char> seen(node_count, 0);
    seen[root] = 1;
    T.order_.push_back(root);
    for (std::size_t head = 0; head < T.order_.size(); ++head) {
        const VertexId v = T.order_[head];
        for (std::size_t e = off[v]; e < off[v + 1]; ++e) {
            const VertexId u = adj[e];
            if (seen[u]) continue;
            seen[u] = 1;
            T.parent_[u] = v;
            T.depth_[u] = T.depth_[v] + 1;
            T.order_.push_back(u);
        }
    }
    if (T.order_.size() != node_count) {
        throw InvariantViolation("reeb_tree", "arcs do not form a connected tree");
    }
    T.child_offset_.assign(node_count + 1, 0);
    for (VertexId v = 0; v < node_count; ++v)
        if (T.parent_[v] != kNoNode) ++T.child_offset_[T.parent_[v] + 1];
    for (std::size_t i = 0; i < node_count; ++i) T.child_offset_[i + 1] += T.child_offset_[i];
    T.child_list_.resize(node_count - 1);
    std::vector<std::size_t> cfill(T.child_offset_.begin(), T.child_offset_.end() - 1);
    for (VertexId v : T.order_)
        if (T.parent_[v] != kNoNode) T.child_list_[cfill[T.parent_[v]]++] = v;
    return T;
}

ReebTree build_reeb(const ScalarField& field) {
    const IcosaTriangulation& tri = field.triangulation();
    const std::size_t V = tri.vertex_count();
    const std::size_t E = tri.edge_count();
    const std::size_t F = tri.face_count();
    if (V + F != E + 2 || 3 * F != 2 * E) {
        throw InvariantViolation("reeb_tree", "complex is not a closed triangulated 2-sphere (V=" +
                                                  std::to_string(V) + ", E=" + std::to_string(E) +
                                                  ", F=" + std::to_string(F) + ")");
    }
    const auto& rank = field.rank();
    const auto& asc = field.ascending();

    // Join tree: descending sweep, superlevel components merge at v.
    MergeTree join = sweep(tri, std::vector<VertexId>(asc.rbegin(), asc.rend()),
                           [&](VertexId u, VertexId v) { return rank[u] > rank[v]; });
    // Split tree: ascending sweep, sublevel components merge at v.
    MergeTree split = sweep(tri, asc, [&](VertexId u, VertexId v) { return rank[u] < rank[v]; });
    // join.link[v] is v's neighbor below in the join tree, join.child_* its upper
    // neighbors; split.link[v] is the neighbor above, split.child_* the lower ones.

    std::vector<std::pair<VertexId, VertexId>> arcs;
    arcs.reserve(V - 1);
    std::vector<char> removed(V, 0);
    std::deque<VertexId> queue;
    auto is_upper_leaf = [&](VertexId v) {
        return join.child_count[v] == 0 && split.child_count[v] == 1;
    };
    auto is_lower_leaf = [&](VertexId v) {
        return split.child_count[v] == 0 && join.child_count[v] == 1;
    };
    for (VertexId v : asc)
        if (is_upper_leaf(v) || is_lower_leaf(v)) queue.push_back(v);

    std::size_t remaining = V;
    while (remaining > 1) {
        if (queue.empty()) throw InvariantViolation("reeb_tree", "merge stalled without leaves");
        const VertexId v = queue.front();
        queue.pop_front();
        if (removed[v]) continue;
        VertexId touched_a = kNoNode;
        VertexId touched_b = kNoNode;
        if (is_upper_leaf(v)) {
            const VertexId below = join.link[v];
            if (below == kNoNode) throw InvariantViolation("reeb_tree", "upper leaf without join arc");
            arcs.emplace_back(below, v);
            join.child_xor[below] ^= v;
            --join.child_count[below];
            // Splice v out of the split tree.
            const VertexId lower = split.child_xor[v];
            const VertexId upper = split.link[v];
            split.link[lower] = upper;
            if (upper != kNoNode) split.child_xor[upper] ^= v ^ lower;
            touched_a = below;
            touched_b = lower;
        } else if (is_lower_leaf(v)) {
            const VertexId above = split.link[v];
            if (above == kNoNode) throw InvariantViolation("reeb_tree", "lower leaf without split arc");
            arcs.emplace_back(above, v);
            split.child_xor[above] ^= v;
            --split.child_count[above];
            const VertexId upper = join.child_xor[v];
            const VertexId lower = join.link[v];
            join.link[upper] = lower;
            if (lower != kNoNode) join.child_xor[lower] ^= v ^ upper;
            touched_a = above;
            touched_b = upper;
        } else {
            continue;
        }
        removed[v] = 1;
        --remaining;
        for (VertexId t : {touched_a, touched_b}) {
            if (t != kNoNode && !removed[t] && (is_upper_leaf(t) || is_lower_leaf(t))) {
                queue.push_back(t);
            }
        }
    }
    return ReebTree::from_arcs(V, arcs, asc.front(), field.values());
}

CollapsedTree collapse(const ReebTree& tree) {
    CollapsedTree out;
    const std::size_t V = tree.size();
    auto kept = [&](VertexId v) { return tree.degree(v) != 2; };
    for (VertexId v = 0; v < V; ++v)
        if (kept(v)) out.nodes.push_back({v, tree.value(v), tree.degree(v)});

    // Walk each chain downward from its upper kept endpoint.
    for (VertexId v = 0; v < V; ++v) {
        if (!kept(v)) continue;
        for (VertexId c : tree.children(v)) {
            VertexId w = c;
            while (!kept(w)) w = tree.children(w)[0];
            out.edges.emplace_back(std::min(v, w), std::max(v, w));
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

int superlevel_component_indicator(const ReebTree& tree, const ScalarField& field, double s,
                                   VertexId median_node) {
    if (median_node >= tree.size()) throw ParameterError("reeb_tree", "median node out of range");
    return field.value(median_node) >= s ? 1 : 0;
}

}  // namespace medianqs
