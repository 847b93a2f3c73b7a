// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "medianqs/equal_area_partition.hpp"
#include "medianqs/errors.hpp"
#include "medianqs/icosa_triangulation.hpp"
#include "medianqs/median.hpp"
#include "medianqs/random_instances.hpp"
#include "medianqs/reeb_tree.hpp"
#include "medianqs/wasserstein.hpp"
#include "oracles/brute_median.hpp"
#include "oracles/levelset_reeb.hpp"
#include "oracles/partition_scan.hpp"
#include "oracles/transport_enum.hpp"

using namespace medianqs;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

InputFunction z_function() { return InputFunction::polynomial(Polynomial({{1.0, 0, 0, 1}})); }
InputFunction shifted_square() {
    return InputFunction::polynomial(Polynomial({{1.0, 0, 0, 2}, {-0.6, 0, 0, 1}, {0.09, 0, 0, 0}}));
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

Polynomial product(const Polynomial& a, const Polynomial& b) {
    std::vector<Monomial> terms;
    for (const auto& s : a.terms())
        for (const auto& t : b.terms()) terms.push_back({s.c * t.c, s.i + t.i, s.j + t.j, s.k + t.k});
    return Polynomial(terms);
}

Polynomial sum(const Polynomial& a, const Polynomial& b) {
    std::vector<Monomial> terms(a.terms());
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return Polynomial(terms);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const int kNs[] = {46, 92, 184};

Outcome criterion1() {
    Outcome o;
    std::ostringstream d;
    for (int N : kNs) {
        const auto t0 = std::chrono::steady_clock::now();
        const QuasiStateResult r = compute(z_function(), N, max_regions(N));
        const double secs = seconds_since(t0);
        const bool certified = std::abs(r.value) <= r.error_bound;
        const double empirical = N == 46 ? 0.05 : N == 92 ? 0.03 : r.error_bound;
        o.pass = o.pass && certified && std::abs(r.value) <= empirical && secs <= 60.0;
        d << "N=" << N << " value=" << fmt(r.value) << " bound=" << fmt(r.error_bound) << " t=" << fmt(secs) << "s; ";
    }
    o.detail = d.str();
    return o;
}

Outcome criterion2() {
    // Unrotated, the median lands on an equator vertex and the error is exactly
    // zero at every N, so generic rotations are averaged to expose the trend.
    Outcome o;
    std::ostringstream d;
    std::vector<double> plain, rotated_mean;
    for (int N : kNs) {
        const Workspace ws = prepare(N, max_regions(N));
        const QuasiStateResult r = compute(shifted_square(), ws);
        o.pass = o.pass && std::abs(r.value - 0.09) <= r.error_bound;
        plain.push_back(std::abs(r.value - 0.09));
        double total = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            Rng rng(seed);
            const QuasiStateResult q = compute(shifted_square().rotated(random_rotation(rng)), ws);
            o.pass = o.pass && std::abs(q.value - 0.09) <= q.error_bound;
            total += std::abs(q.value - 0.09);
        }
        rotated_mean.push_back(total / 5);
        d << "N=" << N << " err=" << fmt(plain.back()) << " rotated_mean_err=" << fmt(rotated_mean.back())
          << " bound=" << fmt(r.error_bound) << "; ";
    }
    for (std::size_t i = 1; i < plain.size(); ++i) {
        o.pass = o.pass && plain[i] <= plain[i - 1] && rotated_mean[i] < rotated_mean[i - 1];
    }
    o.detail = d.str();
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::ostringstream d;
    for (int N : {1, 2, 8, 46, 92}) {
        const IcosaTriangulation tri = build_triangulation(N);
        const double diam = max_curvilinear_diameter(tri), angle = min_planar_angle(tri);
        o.pass = o.pass && diam <= curvilinear_diameter_bound(N) && angle >= min_angle_bound();
        d << "N=" << N << " diam=" << fmt(diam) << "<=" << fmt(curvilinear_diameter_bound(N)) << " angle=" << fmt(angle)
          << ">=" << fmt(min_angle_bound()) << "; ";
    }
    o.detail = d.str();
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::ostringstream d;
    Rng rng(4);
    for (int k : {237, 243, 1001}) {
        const EqualAreaPartition P = build_partition(k);
        const PartitionAudit a = audit_partition(P);
        int mismatches = 0;
        for (int t = 0; t < 10000; ++t) {
            const UnitPoint p = random_unit_point(rng);
            if (!(locate(P, p) == oracle::linear_scan(P, p))) ++mismatches;
        }
        o.pass = o.pass && a.area_max_rel_err <= 1e-9 && a.max_diameter <= 7.0 / std::sqrt(double(k)) &&
                 a.min_inradius >= 0.77970 / std::sqrt(double(k)) && mismatches == 0;
        d << "k=" << k << " area_err=" << fmt(a.area_max_rel_err) << " diam=" << fmt(a.max_diameter)
          << " inradius=" << fmt(a.min_inradius) << " mismatches=" << mismatches << "; ";
    }
    o.detail = d.str();
    return o;
}

Outcome criterion5() {
    Outcome o;
    Rng rng(5);
    std::uniform_int_distribution<int> pickN(46, 200);
    int failures = 0;
    for (int t = 0; t < 20; ++t) {
        const int N = pickN(rng);
        std::uniform_int_distribution<int> pickk(0, (max_regions(N) - 237) / 2);
        const int k = 237 + 2 * pickk(rng);
        try {
            const MarkedVertexSet M = mark_vertices(build_triangulation(N), build_partition(k));
            if (M.marked_count != static_cast<std::size_t>(k)) ++failures;
        } catch (const Error&) {
            ++failures;
        }
    }
    o.pass = failures == 0;
    o.detail = "20 pairs, failures=" + std::to_string(failures);
    return o;
}

ReebTree random_tree(Rng& rng, std::size_t n) {
    std::vector<std::pair<VertexId, VertexId>> arcs;
    for (VertexId v = 1; v < n; ++v) arcs.push_back({std::uniform_int_distribution<VertexId>(0, v - 1)(rng), v});
    std::vector<double> values(n);
    std::iota(values.begin(), values.end(), 0.0);
    return ReebTree::from_arcs(n, arcs, 0, values);
}

Outcome criterion6() {
    Outcome o;
    Rng rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> coarse(0, 5);
    int tree_mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int N = 1 + trial % 4;
        auto tri = std::make_shared<const IcosaTriangulation>(build_triangulation(N));
        std::vector<double> values(tri->vertex_count());
        for (double& v : values) v = trial % 4 == 3 ? coarse(rng) : u(rng);
        VertexTable table;
        table.N = N;
        table.values = values;
        const ScalarField F = sample(InputFunction::vertex_table(table, 1.0), tri);
        const CollapsedTree C = collapse(build_reeb(F));
        const auto expected = oracle::collapse_arcs(F.size(), oracle::levelset_contour_tree(*tri, F.rank()));
        bool same = C.edges == expected;
        for (const auto& n : C.nodes) same = same && n.value == values[n.id];
        tree_mismatches += !same;
    }
    int median_mismatches = 0;
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 100;) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 20);
        const ReebTree T = random_tree(rng, n);
        std::vector<char> marks(n);
        for (auto& m : marks) m = coin(rng);
        const auto k = static_cast<std::uint64_t>(std::count(marks.begin(), marks.end(), 1));
        if (k % 2 == 0) continue;
        ++trial;
        const VertexId m = find_median(T, count_pass(T, marks), k);
        const auto brute = oracle::component_mass_medians(n, T.arcs(), std::vector<double>(marks.begin(), marks.end()));
        // Unmarked chains may tie; the rule picks the deepest tied node.
        bool ok = std::find(brute.begin(), brute.end(), m) != brute.end();
        for (VertexId b : brute) ok = ok && (b == m || T.depth(b) < T.depth(m));
        median_mismatches += !ok;
    }
    o.pass = tree_mismatches == 0 && median_mismatches == 0;
    o.detail = "reeb mismatches=" + std::to_string(tree_mismatches) + "/100, median mismatches=" +
               std::to_string(median_mismatches) + "/100";
    return o;
}

Outcome criterion7() {
    Outcome o;
    const Workspace ws = prepare(46, max_regions(46));
    Rng rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int mono = 0, lip = 0, lin = 0, integ = 0;
    for (int pair = 0; pair < 100; ++pair) {
        const Polynomial pf = random_polynomial(rng, 3, 4), pg = random_polynomial(rng, 3, 4);
        const InputFunction f = InputFunction::polynomial(pf), g = InputFunction::polynomial(pg);
        const PipelineTrace tf = compute_traced(f, ws), tg = compute_traced(g, ws);

        // f <= f + h^2 + c pointwise.
        const Polynomial h = random_polynomial(rng, 2, 2);
        const Polynomial bigger = sum(sum(pf, product(h, h)), Polynomial({{std::abs(u(rng)) * 0.1, 0, 0, 0}}));
        mono += !(tf.result.value <= compute(InputFunction::polynomial(bigger), ws).value);

        double sup = 0.0;
        for (VertexId v = 0; v < tf.field.size(); ++v) sup = std::max(sup, std::abs(tf.field.value(v) - tg.field.value(v)));
        lip += !(std::abs(tf.result.value - tg.result.value) <= sup);

        for (double a : {2.0, -1.0, 0.5}) {
            const double b = u(rng);
            lin += !(compute(f.affine(a, b), ws).value == a * tf.result.value + b);
        }

        for (const PipelineTrace* t : {&tf, &tg}) {
            integ += !(std::abs(integral_oracle(t->field, t->tree, t->result.median_node) - t->result.value) <= 1e-12);
        }
    }
    o.pass = mono == 0 && lip == 0 && lin == 0 && integ == 0;
    o.detail = "100 pairs: monotonicity violations=" + std::to_string(mono) + ", C0 violations=" + std::to_string(lip) +
               ", quasi-linearity violations=" + std::to_string(lin) + "/300, integral mismatches=" +
               std::to_string(integ) + "/200";
    return o;
}

DiscreteMeasure random_measure(Rng& rng, int atoms) {
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<UnitPoint> pts;
    std::vector<double> w;
    for (int i = 0; i < atoms; ++i) {
        pts.push_back(random_unit_point(rng));
        w.push_back(u(rng));
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    double rest = 1.0;
    for (int i = 0; i + 1 < atoms; ++i) rest -= (w[i] /= total);
    w.back() = rest;
    return DiscreteMeasure(pts, w);
}

Outcome criterion8() {
    Outcome o;
    const auto checks = theorem2_trials(8, 200, 8);
    int violations = 0;
    double worst_ratio = 0.0;
    for (const auto& c : checks) {
        violations += !c.holds();
        if (c.rhs > 0) worst_ratio = std::max(worst_ratio, c.lhs / c.rhs);
    }

    Rng rng(88);
    int solver_mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const DiscreteMeasure mu = random_measure(rng, 1 + trial % 5), nu = random_measure(rng, 1 + (trial / 5) % 5);
        std::vector<std::vector<double>> d(mu.size(), std::vector<double>(nu.size()));
        for (std::size_t i = 0; i < mu.size(); ++i)
            for (std::size_t j = 0; j < nu.size(); ++j) d[i][j] = euclidean_dist(mu.points()[i], nu.points()[j]);
        const auto ex = oracle::enumerate_transport(mu.weights(), nu.weights(), d);
        solver_mismatches += !(std::abs(w_one(mu, nu) - ex.min_cost) <= 1e-9 &&
                               std::abs(w_infinity(mu, nu) - ex.min_bottleneck) <= 1e-9);
    }

    const UnitPoint zero = UnitPoint::from_cartesian({1.0, 0.0, 0.0});
    const UnitPoint one = UnitPoint::from_cartesian({std::cos(1.0), std::sin(1.0), 0.0});
    const double dist = euclidean_dist(zero, one);
    bool example = true;
    double last_w1 = 1e300;
    for (int n : {2, 10, 100, 1000, 10000}) {
        const DiscreteMeasure mu({zero, one}, {1.0 / n, 1.0 - 1.0 / n});
        const auto target = DiscreteMeasure::dirac(one);
        const double w1 = w_one(mu, target), winf = w_infinity(mu, target);
        example = example && std::abs(w1 - dist / n) <= 1e-12 && winf == dist && w1 < last_w1;
        last_w1 = w1;
    }
    example = example && last_w1 < 1e-4;

    o.pass = violations == 0 && solver_mismatches == 0 && example;
    o.detail = "violations=" + std::to_string(violations) + "/200 (max lhs/rhs=" + fmt(worst_ratio) +
               "), solver mismatches=" + std::to_string(solver_mismatches) + "/100, segment example " +
               (example ? "reproduced" : "NOT reproduced");
    return o;
}

Outcome criterion9() {
    Outcome o;
    std::vector<double> times;
    for (int N : kNs) {
        std::vector<double> runs;
        for (int r = 0; r < 5; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            compute(shifted_square(), N, max_regions(N));
            runs.push_back(seconds_since(t0));
        }
        std::nth_element(runs.begin(), runs.begin() + 2, runs.end());
        times.push_back(runs[2]);
    }
    double log_a = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double N = kNs[i];
        log_a += std::log(times[i] / (N * N * std::log(N)));
    }
    const double a = std::exp(log_a / static_cast<double>(times.size()));
    std::ostringstream d;
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double N = kNs[i];
        const double dev = times[i] / (a * N * N * std::log(N)) - 1.0;
        worst = std::max(worst, std::abs(dev));
        d << "N=" << kNs[i] << " t=" << fmt(times[i]) << "s dev=" << fmt(100 * dev) << "%; ";
    }
    o.pass = worst <= 0.35;
    o.detail = d.str() + "a=" + fmt(a);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 certified value for f = z", criterion1},
        {"2 certified value for (z - 0.3)^2", criterion2},
        {"3 triangulation geometry audits", criterion3},
        {"4 partition audits", criterion4},
        {"5 marking feasibility", criterion5},
        {"6 Reeb tree and median correctness", criterion6},
        {"7 quasi-state axioms", criterion7},
        {"8 Wasserstein continuity and transport solvers", criterion8},
        {"9 O(N^2 log N) scaling", criterion9},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
