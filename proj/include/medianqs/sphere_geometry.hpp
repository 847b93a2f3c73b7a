#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace medianqs {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
constexpr double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

/// Row-major 3x3 matrix; used for rigid rotations of the evaluation point.
using Mat3 = std::array<std::array<double, 3>, 3>;

Vec3 apply(const Mat3& m, const Vec3& v);

/// Rotation by `angle` radians about the (normalized) `axis`.
Mat3 rotation_about(const Vec3& axis, double angle);

/// A point of the unit sphere carrying both Cartesian and spherical coordinates.
///
/// theta is the colatitude measured from the north pole (0,0,1), in [0, pi];
/// phi is the azimuth in [0, 2 pi) with the seam at phi = 0.
class UnitPoint {
public:
    /// Requires |v| = 1 within 1e-12; throws ParameterError otherwise.
    static UnitPoint from_cartesian(const Vec3& v);
    static UnitPoint from_spherical(double theta, double phi);

    UnitPoint() : UnitPoint(from_cartesian({0.0, 0.0, 1.0})) {}

    double x() const { return p_.x; }
    double y() const { return p_.y; }
    double z() const { return p_.z; }
    double theta() const { return theta_; }
    double phi() const { return phi_; }
    const Vec3& cartesian() const { return p_; }

private:
    UnitPoint(const Vec3& p, double theta, double phi) : p_(p), theta_(theta), phi_(phi) {}

    Vec3 p_;
    double theta_;
    double phi_;
};

inline const UnitPoint kNorthPole = UnitPoint::from_cartesian({0.0, 0.0, 1.0});
inline const UnitPoint kSouthPole = UnitPoint::from_cartesian({0.0, 0.0, -1.0});

/// Chordal distance |a - b|, in [0, 2].
double euclidean_dist(const UnitPoint& a, const UnitPoint& b);

/// Great-circle distance arccos(<a,b>), with the dot product clamped to [-1, 1].
double spherical_dist(const UnitPoint& a, const UnitPoint& b);

/// p / |p|; throws ParameterError for the zero vector.
UnitPoint radial_project(const Vec3& p);

// ---------------------------------------------------------------------------
// Input functions

struct Monomial {
    double c = 0.0;
    int i = 0;
    int j = 0;
    int k = 0;
};

/// Sum of c x^i y^j z^k restricted to the sphere. Duplicate exponent triples
/// are merged on construction; terms are kept sorted by (i, j, k).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(const std::vector<Monomial>& terms);

    const std::vector<Monomial>& terms() const { return terms_; }

    /// Total degree over terms with nonzero coefficient (0 for constants).
    int degree() const;

    /// Non-constant terms are summed first, the constant term is added last.
    double operator()(const Vec3& p) const;

    /// a * this + b.
    Polynomial affine(double a, double b) const;

private:
    std::vector<Monomial> terms_;
};

/// Euclidean distance to a fixed point of the sphere (1-Lipschitz).
struct DistanceToPoint {
    Vec3 center;
};

/// Values prescribed at the vertices of the N-th icosahedral triangulation.
struct VertexTable {
    int N = 0;
    std::vector<double> values;
    /// Vertex positions in canonical order; filled when the table is bound to
    /// its triangulation and used only for point lookups.
    std::vector<Vec3> sites;
};

enum class FunctionKind { Polynomial, VertexTable, Builtin };

class InputFunction {
public:
    static InputFunction polynomial(Polynomial p);
    static InputFunction distance_to(const Vec3& center);
    /// `lip_bound` must be supplied by the caller; it cannot be derived from a table.
    static InputFunction vertex_table(VertexTable table, double lip_bound);
    static InputFunction constant(double c);

    FunctionKind kind() const;
    double lip_bound() const { return lip_bound_; }

    const VertexTable* as_vertex_table() const { return std::get_if<VertexTable>(&rep_); }

    /// f o R. Rotations are isometries, so the Lipschitz bound is unchanged.
    InputFunction rotated(const Mat3& rotation) const;
    const std::optional<Mat3>& rotation() const { return rotation_; }

    /// a f + b, with the Lipschitz bound scaled by |a| (recomputed for polynomials).
    InputFunction affine(double a, double b) const;

    /// Attaches vertex positions to a vertex table so that point lookups work.
    void bind_sites(std::vector<Vec3> sites);

    /// Value at vertex `index` of the triangulation whose position is `p`.
    /// Vertex tables answer by index; every other kind evaluates at `p`.
    double at_vertex(std::size_t index, const UnitPoint& p) const;

    friend double evaluate(const InputFunction& f, const UnitPoint& p);

private:
    InputFunction() = default;

    struct Affine {
        double a = 1.0;
        double b = 0.0;
    };

    std::variant<Polynomial, DistanceToPoint, VertexTable> rep_;
    double lip_bound_ = 0.0;
    std::optional<Mat3> rotation_;
    // Post-composition a * f + b for polynomials and distance functions.
    Affine post_;
    std::map<std::array<double, 3>, std::size_t> site_index_;
};

/// Exact monomial-sum evaluation for polynomials; table lookup for vertex
/// tables (a point that is not a bound vertex is rejected with ParameterError).
double evaluate(const InputFunction& f, const UnitPoint& p);

/// D sqrt(3) (sum c^2)^(1/2), where D is the total degree.
double polynomial_lip_bound(const Polynomial& f);

}  // namespace medianqs
