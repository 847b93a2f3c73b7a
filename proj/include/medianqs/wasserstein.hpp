#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "medianqs/pl_field.hpp"
#include "medianqs/reeb_tree.hpp"
#include "medianqs/sphere_geometry.hpp"

namespace medianqs {

/// A finitely supported probability measure on the sphere.
class DiscreteMeasure {
public:
    /// Requires equal lengths, positive weights summing to 1 within 1e-12 and
    /// pairwise distinct points; throws ParameterError otherwise.
    DiscreteMeasure(std::vector<UnitPoint> points, std::vector<double> weights);

    static DiscreteMeasure dirac(const UnitPoint& p) { return DiscreteMeasure({p}, {1.0}); }

    std::size_t size() const { return points_.size(); }
    const std::vector<UnitPoint>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<UnitPoint> points_;
    std::vector<double> weights_;
};

/// Largest total support handled by the exact solvers.
inline constexpr std::size_t kMaxTransportSupport = 10000;

/// inf over couplings of the largest chordal distance in the coupling's support.
/// Binary search over the sorted pairwise distances with a max-flow feasibility test.
double w_infinity(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Optimal transport cost with chordal ground distance, by successive shortest
/// paths. Throws ResourceError above kMaxTransportSupport atoms in total.
double w_one(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// max of the region diameters; throws ParameterError for an empty list.
double partition_w_infinity_bound(const std::vector<double>& partition_diameters);

/// A measure carried by triangulation vertices.
struct NodeMeasure {
    std::vector<VertexId> nodes;
    std::vector<double> weights;
};

/// Converts to a DiscreteMeasure on the vertex positions (validating it).
DiscreteMeasure to_discrete(const NodeMeasure& m, const IcosaTriangulation& tri);

/// Value of F at the weighted median node of m.
double weighted_median_value(const ScalarField& field, const ReebTree& tree, const NodeMeasure& m);

struct Theorem2Check {
    double lhs = 0.0;  // |zeta_mu(F) - zeta_nu(F)|
    double rhs = 0.0;  // lip * W_inf(mu, nu)
    bool holds() const { return lhs <= rhs; }
};

/// `field_lip` bounds Lip(F) in the chordal metric (pl_lip_bound for sampled
/// inputs). Throws ParameterError when 1/2 lies in either spectrum.
Theorem2Check verify_theorem2(const ScalarField& field, const ReebTree& tree, double field_lip,
                              const NodeMeasure& mu, const NodeMeasure& nu);

}  // namespace medianqs
