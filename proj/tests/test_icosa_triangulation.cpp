#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "medianqs/errors.hpp"
#include "medianqs/icosa_triangulation.hpp"

using namespace medianqs;

TEST_CASE("counts") {
    for (int N : {1, 2, 3, 8, 46}) {
        CAPTURE(N);
        const IcosaTriangulation tri = build_triangulation(N);
        CHECK(tri.face_count() == 20u * N * N);
        CHECK(tri.vertex_count() == 10u * N * N + 2);
        CHECK(tri.edge_count() == 30u * N * N);
        CHECK(tri.vertex_count() + tri.face_count() - tri.edge_count() == 2);
    }
    CHECK(build_triangulation(46).vertex_count() == 21162);
    CHECK(build_triangulation(46).face_count() == 42320);
    CHECK_THROWS_AS(build_triangulation(0), ParameterError);
}

TEST_CASE("closed manifold and degrees") {
    for (int N : {1, 2, 5, 12}) {
        CAPTURE(N);
        const IcosaTriangulation tri = build_triangulation(N);
        std::map<std::pair<VertexId, VertexId>, int> directed;
        for (const auto& f : tri.faces) {
            CHECK(f[0] != f[1]);
            CHECK(f[1] != f[2]);
            CHECK(f[0] != f[2]);
            for (int s = 0; s < 3; ++s) ++directed[{f[s], f[(s + 1) % 3]}];
            // Outward orientation, and the face plane misses the origin.
            const Vec3 a = tri.vertices[f[0]].cartesian(), b = tri.vertices[f[1]].cartesian(),
                       c = tri.vertices[f[2]].cartesian();
            CHECK(det3(a, b, c) > 0.0);
        }
        // Each undirected edge appears once in each direction.
        for (const auto& [e, count] : directed) {
            CHECK(count == 1);
            CHECK(directed.count({e.second, e.first}) == 1);
        }
        int deg5 = 0;
        for (std::size_t v = 0; v < tri.vertex_count(); ++v) {
            const auto d = tri.vertex_neighbors[v].size();
            CHECK((d == 5 || d == 6));
            deg5 += d == 5;
            CHECK(tri.star[v].size() == d);
        }
        CHECK(deg5 == 12);
        double closest = 10.0;
        for (std::size_t v = 0; v < tri.vertex_count(); ++v)
            for (VertexId w : tri.vertex_neighbors[v]) closest = std::min(closest, euclidean_dist(tri.vertices[v], tri.vertices[w]));
        CHECK(closest > 1e-9);
    }
}

TEST_CASE("vertex deduplication is exact") {
    const IcosaTriangulation tri = build_triangulation(9);
    std::vector<Vec3> pts;
    for (const auto& p : tri.vertices) pts.push_back(p.cartesian());
    double closest = 10.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) closest = std::min(closest, norm(pts[i] - pts[j]));
    CHECK(closest > 1e-9);
    // Shared lattice points agree between the two faces that contain them.
    for (int f = 0; f < 20; ++f) {
        for (int a = 0; a <= 9; ++a)
            for (int b = 0; a + b <= 9; ++b) {
                const VertexId v = tri.lattice_vertex(f, a, b, 9 - a - b);
                const UnitPoint p = radial_project(tri.lattice_point(f, a, b, 9 - a - b));
                REQUIRE(euclidean_dist(p, tri.vertices[v]) <= 1e-14);
            }
    }
}

TEST_CASE("canonical vertex order starts with the corners") {
    const IcosaTriangulation tri = build_triangulation(4);
    for (int v = 0; v < 12; ++v) CHECK(euclidean_dist(tri.vertices[v], UnitPoint::from_cartesian(icosahedron_corners()[v])) == 0.0);
    const IcosaTriangulation again = build_triangulation(4);
    CHECK(again.faces == tri.faces);
}

TEST_CASE("curvilinear diameter audit") {
    const double bound1 = curvilinear_diameter_bound(1);
    CHECK(bound1 == doctest::Approx(1.3231).epsilon(1e-4));
    const IcosaTriangulation t1 = build_triangulation(1);
    const double d1 = max_curvilinear_diameter(t1);
    // N = 1: the projected face's diameter is its chord, the icosahedron edge.
    const double edge = euclidean_dist(t1.vertices[t1.faces[0][0]], t1.vertices[t1.faces[0][1]]);
    CHECK(d1 == doctest::Approx(edge).epsilon(1e-12));
    CHECK(d1 <= bound1);
    const double d46 = max_curvilinear_diameter(build_triangulation(46));
    const double d92 = max_curvilinear_diameter(build_triangulation(92));
    CHECK(d46 <= curvilinear_diameter_bound(46));
    CHECK(curvilinear_diameter_bound(46) == doctest::Approx(0.028764).epsilon(1e-4));
    CHECK(d92 <= curvilinear_diameter_bound(92));
    CHECK(curvilinear_diameter_bound(92) == doctest::Approx(0.014382).epsilon(1e-4));
    CHECK(d92 <= d46);
}

TEST_CASE("minimum angle audit") {
    const double theta0 = kPi - 2.0 * std::acos((6.0 * std::sqrt(5.0) - 13.0) / 2.0);
    CHECK(min_angle_bound() == theta0);
    CHECK(min_planar_angle(build_triangulation(1)) == doctest::Approx(kPi / 3).epsilon(1e-12));
    for (int N : {1, 2, 8, 46}) CHECK(min_planar_angle(build_triangulation(N)) >= theta0);
    CHECK(pl_lipschitz_factor() == doctest::Approx(kPi / (2.0 * std::sin(theta0 / 2.0))).epsilon(1e-12));
    CHECK(pl_lipschitz_factor() == doctest::Approx(7.5446).epsilon(1e-4));
}

TEST_CASE("locate_face returns a convex combination reproducing the point") {
    const IcosaTriangulation tri = build_triangulation(7);
    for (std::size_t v = 0; v < tri.vertex_count(); ++v) {
        const FaceLocation loc = locate_face(tri, tri.vertices[v]);
        const Face& f = tri.faces[loc.face];
        CHECK(std::find(f.begin(), f.end(), static_cast<VertexId>(v)) != f.end());
    }
    // Off-vertex points: planar barycentric point projects back to p.
    for (double th = 0.05; th < kPi; th += 0.1)
        for (double ph = 0.0; ph < kTwoPi; ph += 0.13) {
            const UnitPoint p = UnitPoint::from_spherical(th, ph);
            const FaceLocation loc = locate_face(tri, p);
            double s = 0.0;
            Vec3 q{};
            for (int i = 0; i < 3; ++i) {
                CHECK(loc.weights[i] >= -1e-12);
                CHECK(loc.weights[i] <= 1.0 + 1e-12);
                s += loc.weights[i];
                q = q + loc.weights[i] * tri.vertices[tri.faces[loc.face][i]].cartesian();
            }
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(euclidean_dist(radial_project(q), p) <= 1e-12);
        }
}
