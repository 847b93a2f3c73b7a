#include "medianqs/median.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "medianqs/errors.hpp"

namespace medianqs {

namespace {

// 7 pi (13 + 6 sqrt 5) / 11
double region_term_constant() { return 7.0 * pl_lipschitz_factor(); }

double bound_at(double lip, int N) { return error_bound(lip, N, max_regions(N)); }

// Nodes sorted by the field's tie-broken order, highest first.
std::vector<VertexId> descending(const ReebTree& tree) {
    std::vector<VertexId> order(tree.size());
    std::iota(order.begin(), order.end(), VertexId{0});
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        const double va = tree.value(a), vb = tree.value(b);
        return va > vb || (va == vb && a > b);
    });
    return order;
}

}  // namespace

int max_regions(int N) {
    const double cap = kMarkingDensity * static_cast<double>(N) * static_cast<double>(N);
    long long k = static_cast<long long>(std::floor(cap));
    if (k % 2 == 0) --k;
    return static_cast<int>(std::max(k, -1LL));
}

double error_bound(double lip_bound, int N, int k) {
    if (lip_bound == 0.0) return 0.0;
    return lip_bound * (curvilinear_diameter_bound(N) + region_term_constant() / std::sqrt(double(k)));
}

void check_parameters(int N, int k) {
    if (N < kMinN) throw ParameterError("median", "N=" + std::to_string(N) + " violates N >= 46");
    if (k % 2 == 0) throw ParameterError("median", "k=" + std::to_string(k) + " violates k odd");
    if (k < kMinRegions) throw ParameterError("median", "k=" + std::to_string(k) + " violates k >= 237");
    if (k > kMarkingDensity * double(N) * double(N)) {
        throw ParameterError("median", "k=" + std::to_string(k) + " violates k <= 0.115744 N^2 for N=" +
                                           std::to_string(N));
    }
}

std::pair<int, int> select_parameters(double epsilon, double lip_bound) {
    if (!(epsilon > 0.0)) throw ParameterError("median", "epsilon must be positive");
    if (!(lip_bound >= 0.0)) throw ParameterError("median", "lip_bound must be nonnegative");
    if (bound_at(lip_bound, kMinN) <= epsilon) return {kMinN, max_regions(kMinN)};

    // The bound is strictly decreasing in N, so double then bisect.
    long long lo = kMinN;  // bound(lo) > epsilon
    long long hi = kMinN;
    while (bound_at(lip_bound, static_cast<int>(hi)) > epsilon) {
        lo = hi;
        hi *= 2;
        if (hi > (1LL << 30)) {
            throw ResourceError("median", "epsilon=" + std::to_string(epsilon) +
                                              " needs N beyond 2^30 (limit " + std::to_string(kMaxSelectedN) + ")");
        }
    }
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        (bound_at(lip_bound, static_cast<int>(mid)) > epsilon ? lo : hi) = mid;
    }
    if (hi > kMaxSelectedN) {
        throw ResourceError("median", "epsilon=" + std::to_string(epsilon) + " requires N=" +
                                          std::to_string(hi) + " (limit " + std::to_string(kMaxSelectedN) + ")");
    }
    return {static_cast<int>(hi), max_regions(static_cast<int>(hi))};
}

MarkedVertexSet mark_vertices(const IcosaTriangulation& tri, const EqualAreaPartition& partition) {
    MarkedVertexSet out;
    out.marks.assign(tri.vertex_count(), 0);
    out.region_flags.assign(static_cast<std::size_t>(partition.k()), 0);
    for (VertexId v = 0; v < tri.vertex_count(); ++v) {
        const UnitPoint& p = tri.vertices[v];
        const RegionId id = locate(partition, p);
        const std::size_t r = partition.flat_index(id);
        if (out.region_flags[r] || !in_interior(partition, id, p)) continue;
        out.region_flags[r] = 1;
        out.marks[v] = 1;
        out.Z.push_back(v);
        ++out.marked_count;
        if (out.marked_count == static_cast<std::size_t>(partition.k())) break;
    }
    if (out.marked_count != static_cast<std::size_t>(partition.k())) {
        const auto first_missing = std::find(out.region_flags.begin(), out.region_flags.end(), 0);
        const RegionId id = partition.region_at(static_cast<std::size_t>(first_missing - out.region_flags.begin()));
        throw InvariantViolation("median", "marked " + std::to_string(out.marked_count) + " of " +
                                               std::to_string(partition.k()) + " regions; region (" +
                                               std::to_string(id.band) + ", " + std::to_string(id.sector) +
                                               ") contains no interior vertex at N=" + std::to_string(tri.N));
    }
    return out;
}

std::vector<std::uint64_t> count_pass(const ReebTree& tree, const std::vector<char>& marks) {
    if (marks.size() != tree.size()) throw ParameterError("median", "mark vector size does not match tree");
    std::vector<std::uint64_t> t(tree.size());
    for (VertexId v = 0; v < tree.size(); ++v) t[v] = marks[v] ? 1 : 0;
    const auto& order = tree.top_down();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const VertexId p = tree.parent(*it);
        if (p != kNoNode) t[p] += t[*it];
    }
    return t;
}

std::vector<double> mass_pass(const ReebTree& tree, const std::vector<double>& masses) {
    if (masses.size() != tree.size()) throw ParameterError("median", "mass vector size does not match tree");
    std::vector<double> t(masses);
    const auto& order = tree.top_down();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const VertexId p = tree.parent(*it);
        if (p != kNoNode) t[p] += t[*it];
    }
    return t;
}

VertexId find_median(const ReebTree& tree, const std::vector<std::uint64_t>& counts, std::uint64_t k) {
    if (k % 2 == 0) throw ParameterError("median", "k must be odd");
    if (counts.size() != tree.size()) throw ParameterError("median", "count vector size does not match tree");
    const std::uint64_t half = (k + 1) / 2;
    VertexId best = kNoNode;
    std::size_t ties = 0;
    for (VertexId v = 0; v < tree.size(); ++v) {
        if (counts[v] < half) continue;
        if (best == kNoNode || tree.depth(v) > tree.depth(best)) {
            best = v;
            ties = 1;
        } else if (tree.depth(v) == tree.depth(best)) {
            ++ties;
        }
    }
    if (best == kNoNode) throw InvariantViolation("median", "no node carries (k+1)/2 marks");
    if (ties != 1) {
        throw InvariantViolation("median", std::to_string(ties) + " nodes qualify at maximal depth");
    }
    return best;
}

VertexId find_weighted_median(const ReebTree& tree, const std::vector<double>& subtree_mass) {
    if (subtree_mass.size() != tree.size()) throw ParameterError("median", "mass vector size does not match tree");
    constexpr double kSpectrumTol = 1e-9;
    VertexId best = kNoNode;
    std::size_t ties = 0;
    for (VertexId v = 0; v < tree.size(); ++v) {
        const double m = subtree_mass[v];
        if (v != tree.root() && std::abs(m - 0.5) <= kSpectrumTol) {
            throw ParameterError("median", "1/2 lies in the spectrum: the subtree of node " + std::to_string(v) +
                                               " carries mass " + std::to_string(m));
        }
        if (m <= 0.5) continue;
        if (best == kNoNode || tree.depth(v) > tree.depth(best)) {
            best = v;
            ties = 1;
        } else if (tree.depth(v) == tree.depth(best)) {
            ++ties;
        }
    }
    if (best == kNoNode) throw InvariantViolation("median", "no subtree carries more than half the mass");
    if (ties != 1) throw InvariantViolation("median", std::to_string(ties) + " nodes qualify at maximal depth");
    return best;
}

Workspace prepare(int N, int k) {
    check_parameters(N, k);
    Workspace ws;
    ws.N = N;
    ws.k = k;
    ws.tri = std::make_shared<const IcosaTriangulation>(build_triangulation(N));
    ws.partition = build_partition(k);
    ws.marks = mark_vertices(*ws.tri, ws.partition);
    return ws;
}

PipelineTrace compute_traced(const InputFunction& f, const Workspace& ws) {
    ScalarField field = sample(f, ws.tri);
    ReebTree tree = build_reeb(field);
    std::vector<std::uint64_t> counts = count_pass(tree, ws.marks.marks);
    if (counts[tree.root()] != static_cast<std::uint64_t>(ws.k)) {
        throw InvariantViolation("median", "root count differs from k");
    }
    const VertexId m = find_median(tree, counts, static_cast<std::uint64_t>(ws.k));
    QuasiStateResult r;
    r.value = field.value(m);
    r.N = ws.N;
    r.k = ws.k;
    r.lip_bound = f.lip_bound();
    r.error_bound = error_bound(r.lip_bound, ws.N, ws.k);
    r.median_node = m;
    return PipelineTrace{r, std::move(field), std::move(tree), std::move(counts)};
}

QuasiStateResult compute(const InputFunction& f, const Workspace& ws) { return compute_traced(f, ws).result; }

QuasiStateResult compute(const InputFunction& f, int N, int k) { return compute(f, prepare(N, k)); }

double integral_oracle(const ScalarField& field, const ReebTree& tree, VertexId median_node) {
    std::vector<double> levels(field.values());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const double mid = 0.5 * (levels[i] + levels[i + 1]);
        if (superlevel_component_indicator(tree, field, mid, median_node)) integral += levels[i + 1] - levels[i];
    }
    return levels.front() + integral;
}

int superlevel_tau(const ReebTree& tree, const std::vector<double>& masses, double s) {
    double total = 0.0;
    for (double m : masses) total += m;
    // Component masses of the induced forest, accumulated bottom-up.
    std::vector<double> acc(tree.size(), 0.0);
    const auto& order = tree.top_down();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const VertexId v = *it;
        if (tree.value(v) < s) continue;
        acc[v] += masses[v];
        const VertexId p = tree.parent(v);
        if (p != kNoNode && tree.value(p) >= s) {
            acc[p] += acc[v];
        } else if (acc[v] > 0.5 * total) {
            return 1;
        }
    }
    return 0;
}

double tau_integral(const ScalarField& field, const ReebTree& tree, const std::vector<double>& masses) {
    if (masses.size() != tree.size()) throw ParameterError("median", "mass vector size does not match tree");
    double total = 0.0;
    for (double m : masses) total += m;
    // Descending sweep: tau({F >= s}) switches from 0 to 1 at the first level
    // where a component of the superlevel forest exceeds half the mass.
    const std::vector<VertexId> order = descending(tree);
    std::vector<VertexId> parent(tree.size());
    std::iota(parent.begin(), parent.end(), VertexId{0});
    std::vector<double> mass(masses);
    std::vector<char> active(tree.size(), 0);
    auto find = [&](VertexId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    double switch_level = field.value(field.ascending().front());
    for (std::size_t i = 0; i < order.size();) {
        const double level = tree.value(order[i]);
        double largest = 0.0;
        for (; i < order.size() && tree.value(order[i]) == level; ++i) {
            const VertexId v = order[i];
            active[v] = 1;
            auto join = [&](VertexId u) {
                if (u == kNoNode || !active[u]) return;
                const VertexId a = find(u), b = find(v);
                if (a == b) return;
                parent[a] = b;
                mass[b] += mass[a];
            };
            join(tree.parent(v));
            for (VertexId c : tree.children(v)) join(c);
        }
        for (std::size_t j = i; j-- > 0 && tree.value(order[j]) == level;) largest = std::max(largest, mass[find(order[j])]);
        if (largest > 0.5 * total) {
            switch_level = level;
            break;
        }
    }
    std::vector<double> levels(field.values());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < levels.size() && levels[i + 1] <= switch_level; ++i) {
        integral += levels[i + 1] - levels[i];
    }
    return levels.front() + integral;
}

}  // namespace medianqs
