#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "medianqs/equal_area_partition.hpp"
#include "medianqs/icosa_triangulation.hpp"
#include "medianqs/pl_field.hpp"
#include "medianqs/reeb_tree.hpp"

namespace medianqs {

/// Largest N accepted by select_parameters; memory grows as 10 N^2.
inline constexpr int kMaxSelectedN = 2048;
inline constexpr int kMinN = 46;
inline constexpr double kMarkingDensity = 0.115744;

/// Largest odd k <= 0.115744 N^2 (may be below 237 for N < 46).
int max_regions(int N);

/// lip * (sqrt(3)(3 - sqrt 5)/N + (7 pi (13 + 6 sqrt 5)/11)/sqrt(k)).
double error_bound(double lip_bound, int N, int k);

/// Smallest N >= 46 whose bound with k = max_regions(N) is <= epsilon.
/// Throws ParameterError for epsilon <= 0 or a negative bound, and
/// ResourceError (naming the required N) once N would exceed kMaxSelectedN.
std::pair<int, int> select_parameters(double epsilon, double lip_bound);

/// Throws ParameterError unless k is odd, k >= 237, N >= 46 and k <= 0.115744 N^2.
void check_parameters(int N, int k);

struct MarkedVertexSet {
    std::vector<char> marks;         // c_v per vertex
    std::vector<char> region_flags;  // f_R per region, flat index
    std::size_t marked_count = 0;
    std::vector<VertexId> Z;         // marked vertices in index order
};

/// Marks the first vertex (canonical order) that lies in the open interior of
/// each region. Throws InvariantViolation if some region stays unmarked.
MarkedVertexSet mark_vertices(const IcosaTriangulation& tri, const EqualAreaPartition& partition);

/// t_v = number of marked nodes in the subtree of v.
std::vector<std::uint64_t> count_pass(const ReebTree& tree, const std::vector<char>& marks);

/// Subtree sums of arbitrary nonnegative node masses.
std::vector<double> mass_pass(const ReebTree& tree, const std::vector<double>& masses);

/// Deepest node with t_v >= (k + 1)/2. Throws InvariantViolation unless exactly
/// one such node attains the maximal depth, ParameterError for even k.
VertexId find_median(const ReebTree& tree, const std::vector<std::uint64_t>& counts, std::uint64_t k);

/// Weighted rule: deepest node whose subtree mass exceeds 1/2 (every complement
/// component then carries mass < 1/2). Throws ParameterError when some subtree
/// other than the whole tree carries mass within 1e-9 of 1/2.
VertexId find_weighted_median(const ReebTree& tree, const std::vector<double>& subtree_mass);

struct QuasiStateResult {
    double value = 0.0;
    double error_bound = 0.0;
    int N = 0;
    int k = 0;
    double lip_bound = 0.0;
    VertexId median_node = kNoNode;
};

/// Everything in the pipeline that does not depend on the input function.
struct Workspace {
    int N = 0;
    int k = 0;
    std::shared_ptr<const IcosaTriangulation> tri;
    EqualAreaPartition partition;
    MarkedVertexSet marks;
};

/// Validates (N, k), then builds the triangulation, the partition and the marks.
Workspace prepare(int N, int k);

/// Sample, Reeb tree, count, median on a prepared workspace.
QuasiStateResult compute(const InputFunction& f, const Workspace& ws);
QuasiStateResult compute(const InputFunction& f, int N, int k);

/// The same pipeline, also returning the intermediate field and tree.
struct PipelineTrace {
    QuasiStateResult result;
    ScalarField field;
    ReebTree tree;
    std::vector<std::uint64_t> counts;
};
PipelineTrace compute_traced(const InputFunction& f, const Workspace& ws);

/// min F + integral over [min F, max F] of the superlevel indicator, summed
/// exactly over the intervals between consecutive vertex values.
double integral_oracle(const ScalarField& field, const ReebTree& tree, VertexId median_node);

/// tau({F >= s}) computed from masses alone: 1 iff some connected component of
/// the tree restricted to nodes with value >= s carries more than half of the
/// total mass.
int superlevel_tau(const ReebTree& tree, const std::vector<double>& masses, double s);

/// min F + integral of superlevel_tau, the same interval sum as integral_oracle.
double tau_integral(const ScalarField& field, const ReebTree& tree, const std::vector<double>& masses);

}  // namespace medianqs
