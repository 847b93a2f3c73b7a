#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "medianqs/pl_field.hpp"

namespace medianqs {

inline constexpr VertexId kNoNode = std::numeric_limits<VertexId>::max();

/// Reeb tree of a PL field on the sphere, with one node per triangulation
/// vertex (node id = vertex id), rooted at the global minimum.
///
/// Regular vertices appear as degree-2 nodes; collapse() removes them.
class ReebTree {
public:
    std::size_t size() const { return parent_.size(); }
    VertexId root() const { return root_; }
    VertexId parent(VertexId v) const { return parent_[v]; }
    std::span<const VertexId> children(VertexId v) const {
        return {child_list_.data() + child_offset_[v], child_offset_[v + 1] - child_offset_[v]};
    }
    std::uint32_t depth(VertexId v) const { return depth_[v]; }
    double value(VertexId v) const { return value_[v]; }
    /// Undirected degree (children plus parent).
    std::size_t degree(VertexId v) const {
        return children(v).size() + (parent_[v] == kNoNode ? 0 : 1);
    }
    /// Nodes in breadth-first order from the root; parents precede children.
    const std::vector<VertexId>& top_down() const { return order_; }
    /// The V - 1 arcs as (parent, child).
    std::vector<std::pair<VertexId, VertexId>> arcs() const;

    /// Orients an undirected tree given by its arcs from `root`.
    static ReebTree from_arcs(std::size_t node_count, const std::vector<std::pair<VertexId, VertexId>>& arcs,
                              VertexId root, std::vector<double> values);

private:
    VertexId root_ = kNoNode;
    std::vector<VertexId> parent_;
    std::vector<std::size_t> child_offset_;
    std::vector<VertexId> child_list_;
    std::vector<std::uint32_t> depth_;
    std::vector<double> value_;
    std::vector<VertexId> order_;
};

/// The tree with all degree-2 nodes spliced out.
struct CollapsedTree {
    struct Node {
        VertexId id;
        double value;
        std::size_t degree;
    };
    std::vector<Node> nodes;                            // sorted by id
    std::vector<std::pair<VertexId, VertexId>> edges;  // (smaller id, larger id), sorted
};

/// Augmented contour tree via join and split trees (union-find sweeps in both
/// directions) merged leaf by leaf, then rooted at the global minimum.
/// O(V log V) for the sort plus near-linear sweeps.
/// Throws InvariantViolation when the complex is not a closed genus-0 surface.
ReebTree build_reeb(const ScalarField& field);

CollapsedTree collapse(const ReebTree& tree);

/// 1 iff the closed superlevel set {F >= s} contains the median node's level
/// component, i.e. iff value(median_node) >= s.
int superlevel_component_indicator(const ReebTree& tree, const ScalarField& field, double s,
                                   VertexId median_node);

}  // namespace medianqs
