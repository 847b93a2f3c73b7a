#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "medianqs/sphere_geometry.hpp"

namespace medianqs {

using VertexId = std::uint32_t;
using Face = std::array<VertexId, 3>;

/// The 20 N^2 triangulation obtained by splitting every face of an inscribed
/// icosahedron into N^2 congruent triangles and projecting radially.
///
/// Vertex order is canonical: the 12 icosahedron corners, then the N - 1
/// interior lattice points of each of the 30 edges, then the interior points
/// of each of the 20 faces. Faces are oriented counter-clockwise seen from
/// outside the sphere.
struct IcosaTriangulation {
    int N = 0;
    std::vector<UnitPoint> vertices;
    std::vector<Face> faces;
    /// Sorted neighbor lists.
    std::vector<std::vector<VertexId>> vertex_neighbors;
    /// Incident faces of every vertex.
    std::vector<std::vector<std::uint32_t>> star;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t face_count() const { return faces.size(); }
    std::size_t edge_count() const;

    /// Corners of the 20 icosahedron faces, as indices into the first 12 vertices.
    static const std::array<Face, 20>& base_faces();

    /// The planar lattice point P(a, b, c) = (aA + bB + cC)/N of base face `f`
    /// (before projection), with a + b + c = N.
    Vec3 lattice_point(int f, int a, int b, int c) const;

    /// Index of the vertex at lattice coordinates (a, b, c) of base face `f`.
    VertexId lattice_vertex(int f, int a, int b, int c) const;
};

/// Throws ParameterError for N < 1.
IcosaTriangulation build_triangulation(int N);

/// Unit-norm corners of the icosahedron in canonical order.
const std::array<Vec3, 12>& icosahedron_corners();

/// Max over faces of the Euclidean diameter of the projected triangle,
/// sampled at the corners and `per_edge` points per side.
double max_curvilinear_diameter(const IcosaTriangulation& tri, int per_edge = 8);

/// Minimum interior angle over the planar triangles spanned by the projected vertices.
double min_planar_angle(const IcosaTriangulation& tri);

/// sqrt(3) (3 - sqrt(5)) / N.
double curvilinear_diameter_bound(int N);

/// pi - 2 arccos((6 sqrt 5 - 13)/2).
double min_angle_bound();

/// pi / (2 sin(theta0 / 2)) = pi (13 + 6 sqrt 5) / 11.
double pl_lipschitz_factor();

/// Location of a point in the triangulation: the containing face and the
/// barycentric weights of the planar simplex composed with radial projection.
struct FaceLocation {
    std::uint32_t face = 0;
    std::array<double, 3> weights{};
};

/// O(1): picks the icosahedron face whose cone contains p, inverts the
/// lattice coordinates, then solves for weights on the small planar simplex.
FaceLocation locate_face(const IcosaTriangulation& tri, const UnitPoint& p);

}  // namespace medianqs
