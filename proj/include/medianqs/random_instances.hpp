#pragma once

#include <cstdint>
#include <random>

#include "medianqs/sphere_geometry.hpp"
#include "medianqs/wasserstein.hpp"

namespace medianqs {

using Rng = std::mt19937_64;

/// Uniform point on the sphere.
UnitPoint random_unit_point(Rng& rng);

/// Uniform random rotation (random axis, random angle).
Mat3 random_rotation(Rng& rng);

/// `terms` monomials of total degree in [1, max_degree] with coefficients in
/// [-1, 1], plus a constant term in [-1, 1].
Polynomial random_polynomial(Rng& rng, int max_degree, int terms);

/// Between 1 and max_atoms distinct vertices with weights a_i / p for an odd
/// prime p, so that no subset of atoms carries mass exactly 1/2.
NodeMeasure random_node_measure(Rng& rng, std::size_t vertex_count, int max_atoms);

/// Random (f, mu, nu) triples on the N-th triangulation: f is a cubic
/// polynomial with four terms, each measure has at most six atoms. Every
/// trial is derived from `seed` alone.
std::vector<Theorem2Check> theorem2_trials(int N, int trials, std::uint64_t seed);

}  // namespace medianqs
