#include "medianqs/random_instances.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <set>

#include "medianqs/pl_field.hpp"
#include "medianqs/reeb_tree.hpp"

namespace medianqs {

UnitPoint random_unit_point(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        const Vec3 v{g(rng), g(rng), g(rng)};
        if (norm(v) > 1e-6) return radial_project(v);
    }
}

Mat3 random_rotation(Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    return rotation_about(random_unit_point(rng).cartesian(), angle(rng));
}

Polynomial random_polynomial(Rng& rng, int max_degree, int terms) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(1, std::max(1, max_degree));
    std::vector<Monomial> out;
    out.push_back({coef(rng), 0, 0, 0});
    for (int t = 0; t < terms; ++t) {
        const int d = deg(rng);
        std::uniform_int_distribution<int> split(0, d);
        int i = split(rng);
        std::uniform_int_distribution<int> split2(0, d - i);
        int j = split2(rng);
        out.push_back({coef(rng), i, j, d - i - j});
    }
    return Polynomial(out);
}

NodeMeasure random_node_measure(Rng& rng, std::size_t vertex_count, int max_atoms) {
    static constexpr std::array<int, 6> kPrimes{101, 103, 107, 109, 113, 127};
    std::uniform_int_distribution<int> atoms_dist(1, std::max(1, max_atoms));
    std::uniform_int_distribution<std::size_t> pick(0, kPrimes.size() - 1);
    std::uniform_int_distribution<VertexId> vertex(0, static_cast<VertexId>(vertex_count - 1));
    const int atoms = atoms_dist(rng);
    const int p = kPrimes[pick(rng)];

    std::set<VertexId> chosen;
    while (static_cast<int>(chosen.size()) < atoms) chosen.insert(vertex(rng));

    // Split p into `atoms` positive integers via sorted cut points.
    std::set<int> cuts;
    std::uniform_int_distribution<int> cut(1, p - 1);
    while (static_cast<int>(cuts.size()) < atoms - 1) cuts.insert(cut(rng));
    NodeMeasure m;
    m.nodes.assign(chosen.begin(), chosen.end());
    std::shuffle(m.nodes.begin(), m.nodes.end(), rng);
    int prev = 0;
    for (int c : cuts) {
        m.weights.push_back(double(c - prev) / p);
        prev = c;
    }
    m.weights.push_back(double(p - prev) / p);
    return m;
}

std::vector<Theorem2Check> theorem2_trials(int N, int trials, std::uint64_t seed) {
    auto tri = std::make_shared<const IcosaTriangulation>(build_triangulation(N));
    Rng rng(seed);
    std::vector<Theorem2Check> out;
    out.reserve(static_cast<std::size_t>(std::max(trials, 0)));
    for (int t = 0; t < trials; ++t) {
        const InputFunction f = InputFunction::polynomial(random_polynomial(rng, 3, 4));
        const ScalarField field = sample(f, tri);
        const ReebTree tree = build_reeb(field);
        const NodeMeasure mu = random_node_measure(rng, tri->vertex_count(), 6);
        const NodeMeasure nu = random_node_measure(rng, tri->vertex_count(), 6);
        out.push_back(verify_theorem2(field, tree, pl_lip_bound(f), mu, nu));
    }
    return out;
}

}  // namespace medianqs
