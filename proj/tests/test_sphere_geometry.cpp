#include <doctest.h>

#include <cmath>
#include <random>

#include "medianqs/errors.hpp"
#include "medianqs/random_instances.hpp"
#include "medianqs/sphere_geometry.hpp"

using namespace medianqs;

namespace {

const UnitPoint kEquatorX = UnitPoint::from_cartesian({1.0, 0.0, 0.0});

InputFunction z_function() { return InputFunction::polynomial(Polynomial({{1.0, 0, 0, 1}})); }
InputFunction shifted_square() {
    return InputFunction::polynomial(Polynomial({{1.0, 0, 0, 2}, {-0.6, 0, 0, 1}, {0.09, 0, 0, 0}}));
}

}  // namespace

TEST_CASE("euclidean_dist examples") {
    CHECK(euclidean_dist(kNorthPole, kNorthPole) == 0.0);
    CHECK(euclidean_dist(kNorthPole, kSouthPole) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(euclidean_dist(kNorthPole, kEquatorX) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("spherical_dist examples") {
    CHECK(spherical_dist(kNorthPole, kSouthPole) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(spherical_dist(kEquatorX, kEquatorX) == 0.0);
    CHECK(spherical_dist(kNorthPole, kEquatorX) == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("radial_project examples") {
    const UnitPoint a = radial_project({0.0, 0.0, 2.0});
    CHECK(a.x() == 0.0);
    CHECK(a.y() == 0.0);
    CHECK(a.z() == 1.0);
    const UnitPoint b = radial_project({3.0, 4.0, 0.0});
    CHECK(b.x() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(b.y() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(b.z() == 0.0);
    CHECK_THROWS_AS(radial_project({0.0, 0.0, 0.0}), ParameterError);

    Rng rng(11);
    for (int t = 0; t < 1000; ++t) {
        const UnitPoint p = random_unit_point(rng);
        const UnitPoint q = radial_project(p.cartesian());
        CHECK(euclidean_dist(p, q) <= 1e-15);
        const UnitPoint s = radial_project(p.cartesian() * 7.5);
        CHECK(euclidean_dist(p, s) <= 1e-15);
    }
}

TEST_CASE("UnitPoint invariants") {
    CHECK_THROWS_AS(UnitPoint::from_cartesian({1.0, 1.0, 0.0}), ParameterError);
    Rng rng(3);
    for (int t = 0; t < 1000; ++t) {
        const UnitPoint p = random_unit_point(rng);
        CHECK(std::abs(dot(p.cartesian(), p.cartesian()) - 1.0) <= 1e-12);
        CHECK(std::abs(p.theta() - std::acos(p.z())) <= 1e-7);
        CHECK(std::abs(std::sin(p.theta()) * std::cos(p.phi()) - p.x()) <= 1e-12);
        CHECK(std::abs(std::sin(p.theta()) * std::sin(p.phi()) - p.y()) <= 1e-12);
        CHECK(p.phi() >= 0.0);
        CHECK(p.phi() < kTwoPi);
        const UnitPoint q = UnitPoint::from_spherical(p.theta(), p.phi());
        CHECK(euclidean_dist(p, q) <= 1e-12);
    }
    CHECK(kNorthPole.theta() == 0.0);
    CHECK(kSouthPole.theta() == kPi);
}

TEST_CASE("metric comparison on random pairs") {
    Rng rng(5);
    for (int t = 0; t < 100000; ++t) {
        const UnitPoint a = random_unit_point(rng), b = random_unit_point(rng);
        const double d = euclidean_dist(a, b), D = spherical_dist(a, b);
        REQUIRE(D >= d - 1e-15);
        REQUIRE(D <= kPi / 2 * d + 1e-15);
        REQUIRE(d == euclidean_dist(b, a));
    }
}

TEST_CASE("evaluate examples") {
    CHECK(evaluate(z_function(), kNorthPole) == 1.0);
    CHECK(evaluate(shifted_square(), kEquatorX) == doctest::Approx(0.09).epsilon(1e-15));
    Rng rng(8);
    const InputFunction one = InputFunction::constant(1.0);
    for (int t = 0; t < 10; ++t) CHECK(evaluate(one, random_unit_point(rng)) == 1.0);
}

TEST_CASE("vertex tables are defined only at bound vertices") {
    VertexTable table;
    table.N = 1;
    table.values.assign(12, 0.0);
    for (int v = 0; v < 12; ++v) table.values[v] = v;
    std::vector<Vec3> sites;
    for (int v = 0; v < 12; ++v) sites.push_back(radial_project({double(v) + 1.0, 1.0, 0.5}).cartesian());
    table.sites = sites;
    const InputFunction f = InputFunction::vertex_table(table, 1.0);
    CHECK(evaluate(f, UnitPoint::from_cartesian(sites[4])) == 4.0);
    CHECK_THROWS_AS(evaluate(f, kNorthPole), ParameterError);
    CHECK(f.at_vertex(7, kNorthPole) == 7.0);

    VertexTable bad;
    bad.N = 1;
    bad.values.assign(11, 0.0);
    CHECK_THROWS_AS(InputFunction::vertex_table(bad, 1.0), ParameterError);
    VertexTable ok;
    ok.N = 1;
    ok.values.assign(12, 0.0);
    CHECK_THROWS_AS(InputFunction::vertex_table(ok, -1.0), ParameterError);
}

TEST_CASE("polynomial_lip_bound examples") {
    CHECK(polynomial_lip_bound(Polynomial({{1.0, 0, 0, 1}})) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(polynomial_lip_bound(Polynomial({{5.0, 0, 0, 0}})) == 0.0);
    const double expected = 2.0 * std::sqrt(3.0) * std::sqrt(1.0 + 0.36 + 0.0081);
    CHECK(polynomial_lip_bound(Polynomial({{1.0, 0, 0, 2}, {-0.6, 0, 0, 1}, {0.09, 0, 0, 0}})) ==
          doctest::Approx(expected).epsilon(1e-15));
    CHECK(expected == doctest::Approx(4.05181).epsilon(1e-5));
}

TEST_CASE("polynomial terms merge and sort") {
    const Polynomial p({{1.0, 0, 0, 1}, {2.0, 1, 0, 0}, {0.5, 0, 0, 1}});
    REQUIRE(p.terms().size() == 2);
    CHECK(p.terms()[0].i == 0);
    CHECK(p.terms()[0].c == 1.5);
    CHECK(p.terms()[1].i == 1);
    CHECK(p.degree() == 1);
    CHECK(Polynomial({{0.0, 5, 0, 0}, {2.0, 0, 0, 0}}).degree() == 0);
    CHECK_THROWS_AS(Polynomial({{1.0, -1, 0, 0}}), ParameterError);
}

TEST_CASE("sampled Lipschitz ratios stay below the polynomial bound") {
    Rng rng(21);
    const std::vector<InputFunction> fs{z_function(), shifted_square(),
                                        InputFunction::polynomial(random_polynomial(rng, 3, 4)),
                                        InputFunction::polynomial(random_polynomial(rng, 4, 6))};
    for (const auto& f : fs) {
        for (int t = 0; t < 100000; ++t) {
            const UnitPoint a = random_unit_point(rng), b = random_unit_point(rng);
            REQUIRE(std::abs(evaluate(f, a) - evaluate(f, b)) <= f.lip_bound() * euclidean_dist(a, b) + 1e-12);
        }
    }
}

TEST_CASE("rotation and affine composition") {
    Rng rng(4);
    const Mat3 R1 = random_rotation(rng), R2 = random_rotation(rng);
    const InputFunction f = shifted_square();
    const InputFunction g = f.rotated(R1).rotated(R2);
    for (int t = 0; t < 100; ++t) {
        const UnitPoint p = random_unit_point(rng);
        const UnitPoint q = UnitPoint::from_cartesian(medianqs::apply(R1, medianqs::apply(R2, p.cartesian())));
        CHECK(evaluate(g, p) == doctest::Approx(evaluate(f, q)).epsilon(1e-12));
    }
    CHECK(g.lip_bound() == f.lip_bound());

    const InputFunction h = f.affine(-2.0, 0.5);
    const InputFunction dist = InputFunction::distance_to({0.0, 0.0, 1.0}).affine(3.0, 1.0);
    CHECK(dist.lip_bound() == 3.0);
    for (int t = 0; t < 100; ++t) {
        const UnitPoint p = random_unit_point(rng);
        CHECK(evaluate(h, p) == doctest::Approx(-2.0 * evaluate(f, p) + 0.5).epsilon(1e-12));
        CHECK(evaluate(dist, p) == doctest::Approx(3.0 * euclidean_dist(p, kNorthPole) + 1.0).epsilon(1e-12));
    }
}
