#pragma once

#include <memory>
#include <vector>

#include "medianqs/icosa_triangulation.hpp"
#include "medianqs/sphere_geometry.hpp"

namespace medianqs {

/// The piecewise-linear function F on a triangulation, given by its vertex
/// values, together with the strict total order (value, index) used in place
/// of a generic perturbation.
class ScalarField {
public:
    ScalarField(std::shared_ptr<const IcosaTriangulation> tri, std::vector<double> values);

    const IcosaTriangulation& triangulation() const { return *tri_; }
    const std::shared_ptr<const IcosaTriangulation>& triangulation_ptr() const { return tri_; }
    const std::vector<double>& values() const { return values_; }
    double value(VertexId v) const { return values_[v]; }
    std::size_t size() const { return values_.size(); }

    /// Strict total order: lexicographic on (value, vertex index).
    bool less(VertexId a, VertexId b) const {
        return values_[a] < values_[b] || (values_[a] == values_[b] && a < b);
    }

    /// Vertices sorted ascending under less(); computed once on construction.
    const std::vector<VertexId>& ascending() const { return ascending_; }
    /// Position of each vertex in ascending().
    const std::vector<std::uint32_t>& rank() const { return rank_; }

    /// F at an arbitrary point: barycentric interpolation on the containing
    /// planar simplex composed with radial projection.
    double interpolate(const UnitPoint& p) const;

private:
    std::shared_ptr<const IcosaTriangulation> tri_;
    std::vector<double> values_;
    std::vector<VertexId> ascending_;
    std::vector<std::uint32_t> rank_;
};

/// Samples f at every vertex. A failing evaluation is rethrown as a
/// ParameterError naming the vertex index.
ScalarField sample(const InputFunction& f, std::shared_ptr<const IcosaTriangulation> tri);

/// lip_bound(f) * sqrt(3) (3 - sqrt 5) / N: certified bound on sup |f - F|.
double pl_sup_error_bound(const InputFunction& f, const ScalarField& field);

/// lip_bound(f) * pi (13 + 6 sqrt 5) / 11: certified bound on Lip(F).
double pl_lip_bound(const InputFunction& f);

}  // namespace medianqs
