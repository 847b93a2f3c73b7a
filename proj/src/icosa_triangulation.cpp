#include "medianqs/icosa_triangulation.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "medianqs/errors.hpp"

namespace medianqs {

namespace {

constexpr double kGolden = 1.6180339887498948482;

std::array<Vec3, 12> make_corners() {
    const double g = kGolden;
    std::array<Vec3, 12> raw = {{
        {0, 1, g}, {0, -1, g}, {0, 1, -g}, {0, -1, -g},
        {1, g, 0}, {-1, g, 0}, {1, -g, 0}, {-1, -g, 0},
        {g, 0, 1}, {-g, 0, 1}, {g, 0, -1}, {-g, 0, -1},
    }};
    for (Vec3& v : raw) v = v / norm(v);
    return raw;
}

std::array<Face, 20> make_base_faces() {
    const auto& c = icosahedron_corners();
    // Adjacent corners are at the minimal pairwise distance (the edge length).
    double edge = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 12; ++a)
        for (int b = a + 1; b < 12; ++b) edge = std::min(edge, norm(c[a] - c[b]));
    auto adjacent = [&](int a, int b) { return norm(c[a] - c[b]) < edge * (1.0 + 1e-9); };

    std::array<Face, 20> faces{};
    int count = 0;
    for (int a = 0; a < 12; ++a)
        for (int b = a + 1; b < 12; ++b)
            for (int d = b + 1; d < 12; ++d) {
                if (!(adjacent(a, b) && adjacent(b, d) && adjacent(a, d))) continue;
                Face f{static_cast<VertexId>(a), static_cast<VertexId>(b),
                       static_cast<VertexId>(d)};
                if (det3(c[a], c[b], c[d]) < 0.0) std::swap(f[1], f[2]);
                faces.at(count++) = f;
            }
    if (count != 20) throw InvariantViolation("icosa_triangulation", "icosahedron face count");
    return faces;
}

// Canonical edge numbering: pairs (lo, hi) of adjacent corners, lexicographic.
struct EdgeTable {
    std::array<std::array<int, 12>, 12> id{};
    EdgeTable() {
        for (auto& row : id) row.fill(-1);
        std::vector<std::pair<int, int>> edges;
        for (const Face& f : IcosaTriangulation::base_faces())
            for (int s = 0; s < 3; ++s) {
                int a = static_cast<int>(f[s]);
                int b = static_cast<int>(f[(s + 1) % 3]);
                edges.emplace_back(std::min(a, b), std::max(a, b));
            }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            id[edges[e].first][edges[e].second] = static_cast<int>(e);
            id[edges[e].second][edges[e].first] = static_cast<int>(e);
        }
    }
};

const EdgeTable& edge_table() {
    static const EdgeTable table;
    return table;
}

// Position of local triangle (i, j) within a base face; ups at even slots,
// downs at odd slots, rows of constant j in order.
std::uint32_t local_face_index(int N, int i, int j, bool down) {
    const int row_offset = j * (2 * N - 1) - j * (j - 1);
    return static_cast<std::uint32_t>(row_offset + 2 * i + (down ? 1 : 0));
}

}  // namespace

const std::array<Vec3, 12>& icosahedron_corners() {
    static const std::array<Vec3, 12> corners = make_corners();
    return corners;
}

const std::array<Face, 20>& IcosaTriangulation::base_faces() {
    static const std::array<Face, 20> faces = make_base_faces();
    return faces;
}

std::size_t IcosaTriangulation::edge_count() const {
    std::size_t total = 0;
    for (const auto& nb : vertex_neighbors) total += nb.size();
    return total / 2;
}

Vec3 IcosaTriangulation::lattice_point(int f, int a, int b, int c) const {
    const auto& corners = icosahedron_corners();
    const Face& F = base_faces()[f];
    return (corners[F[0]] * a + corners[F[1]] * b + corners[F[2]] * c) / N;
}

VertexId IcosaTriangulation::lattice_vertex(int f, int a, int b, int c) const {
    const Face& F = base_faces()[f];
    const int coeff[3] = {a, b, c};
    int nonzero = 0;
    for (int s = 0; s < 3; ++s) nonzero += coeff[s] != 0;
    if (nonzero == 1) {
        for (int s = 0; s < 3; ++s)
            if (coeff[s] != 0) return F[s];
    }
    if (nonzero == 2) {
        int s0 = -1;
        int s1 = -1;
        for (int s = 0; s < 3; ++s) {
            if (coeff[s] == 0) continue;
            (s0 < 0 ? s0 : s1) = s;
        }
        const int u = static_cast<int>(F[s0]);
        const int v = static_cast<int>(F[s1]);
        const int e = edge_table().id[u][v];
        // Parameter along the canonical edge is the coefficient of the larger corner.
        const int t = u > v ? coeff[s0] : coeff[s1];
        return static_cast<VertexId>(12 + e * (N - 1) + (t - 1));
    }
    const std::size_t per_face = static_cast<std::size_t>(N - 1) * (N - 2) / 2;
    const std::size_t base = 12 + 30 * static_cast<std::size_t>(N - 1) + f * per_face;
    const std::size_t row = static_cast<std::size_t>(b - 1) * (N - 1) -
                            static_cast<std::size_t>(b - 1) * b / 2;
    return static_cast<VertexId>(base + row + (c - 1));
}

IcosaTriangulation build_triangulation(int N) {
    if (N < 1) throw ParameterError("icosa_triangulation", "N = " + std::to_string(N) + " violates N >= 1");
    if (N > 20000) throw ResourceError("icosa_triangulation", "N = " + std::to_string(N) + " is too large");

    IcosaTriangulation T;
    T.N = N;
    const std::size_t V = 10 * static_cast<std::size_t>(N) * N + 2;
    const auto& corners = icosahedron_corners();

    std::vector<Vec3> pos(V);
    std::vector<char> filled(V, 0);
    for (int c = 0; c < 12; ++c) {
        pos[c] = corners[c];
        filled[c] = 1;
    }
    // Edge points from the canonical (lo, hi) orientation so every face sees
    // the identical coordinates.
    for (int lo = 0; lo < 12; ++lo)
        for (int hi = lo + 1; hi < 12; ++hi) {
            const int e = edge_table().id[lo][hi];
            if (e < 0) continue;
            for (int t = 1; t < N; ++t) {
                const std::size_t v = 12 + static_cast<std::size_t>(e) * (N - 1) + (t - 1);
                pos[v] = (corners[lo] * (N - t) + corners[hi] * t) / N;
                filled[v] = 1;
            }
        }
    for (int f = 0; f < 20; ++f)
        for (int b = 1; b < N; ++b)
            for (int c = 1; b + c < N; ++c) {
                const int a = N - b - c;
                const VertexId v = T.lattice_vertex(f, a, b, c);
                pos[v] = T.lattice_point(f, a, b, c);
                filled[v] = 1;
            }
    if (std::count(filled.begin(), filled.end(), 0) != 0) {
        throw InvariantViolation("icosa_triangulation", "lattice indexing left holes");
    }
    T.vertices.reserve(V);
    for (const Vec3& p : pos) T.vertices.push_back(radial_project(p));

    T.faces.resize(20 * static_cast<std::size_t>(N) * N);
    for (int f = 0; f < 20; ++f) {
        const std::size_t off = static_cast<std::size_t>(f) * N * N;
        for (int j = 0; j < N; ++j)
            for (int i = 0; i + j < N; ++i) {
                const int a = N - i - j;
                T.faces[off + local_face_index(N, i, j, false)] = {
                    T.lattice_vertex(f, a, i, j), T.lattice_vertex(f, a - 1, i + 1, j),
                    T.lattice_vertex(f, a - 1, i, j + 1)};
                if (i + j <= N - 2) {
                    T.faces[off + local_face_index(N, i, j, true)] = {
                        T.lattice_vertex(f, a - 1, i + 1, j), T.lattice_vertex(f, a - 2, i + 1, j + 1),
                        T.lattice_vertex(f, a - 1, i, j + 1)};
                }
            }
    }

    T.vertex_neighbors.assign(V, {});
    T.star.assign(V, {});
    for (std::uint32_t fi = 0; fi < T.faces.size(); ++fi) {
        const Face& F = T.faces[fi];
        for (int s = 0; s < 3; ++s) {
            T.star[F[s]].push_back(fi);
            T.vertex_neighbors[F[s]].push_back(F[(s + 1) % 3]);
            T.vertex_neighbors[F[s]].push_back(F[(s + 2) % 3]);
        }
    }
    for (auto& nb : T.vertex_neighbors) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return T;
}

double max_curvilinear_diameter(const IcosaTriangulation& tri, int per_edge) {
    double best = 0.0;
    std::vector<Vec3> pts;
    for (const Face& F : tri.faces) {
        pts.clear();
        for (int s = 0; s < 3; ++s) {
            const Vec3& a = tri.vertices[F[s]].cartesian();
            const Vec3& b = tri.vertices[F[(s + 1) % 3]].cartesian();
            pts.push_back(a);
            for (int t = 1; t <= per_edge; ++t) {
                const double u = static_cast<double>(t) / (per_edge + 1);
                pts.push_back(radial_project(a * (1.0 - u) + b * u).cartesian());
            }
        }
        for (std::size_t x = 0; x < pts.size(); ++x)
            for (std::size_t y = x + 1; y < pts.size(); ++y)
                best = std::max(best, norm(pts[x] - pts[y]));
    }
    return best;
}

double min_planar_angle(const IcosaTriangulation& tri) {
    double best = kPi;
    for (const Face& F : tri.faces) {
        for (int s = 0; s < 3; ++s) {
            const Vec3& p = tri.vertices[F[s]].cartesian();
            const Vec3 u = tri.vertices[F[(s + 1) % 3]].cartesian() - p;
            const Vec3 v = tri.vertices[F[(s + 2) % 3]].cartesian() - p;
            best = std::min(best, std::atan2(norm(cross(u, v)), dot(u, v)));
        }
    }
    return best;
}

double curvilinear_diameter_bound(int N) {
    return std::sqrt(3.0) * (3.0 - std::sqrt(5.0)) / N;
}

double min_angle_bound() {
    return kPi - 2.0 * std::acos(0.5 * (6.0 * std::sqrt(5.0) - 13.0));
}

double pl_lipschitz_factor() { return kPi * (13.0 + 6.0 * std::sqrt(5.0)) / 11.0; }

FaceLocation locate_face(const IcosaTriangulation& tri, const UnitPoint& p) {
    const auto& corners = icosahedron_corners();
    const auto& base = IcosaTriangulation::base_faces();
    const Vec3& q = p.cartesian();

    // The base face whose cone contains p maximizes the smallest edge determinant.
    int best_face = 0;
    double best_margin = -std::numeric_limits<double>::infinity();
    for (int f = 0; f < 20; ++f) {
        const Vec3& A = corners[base[f][0]];
        const Vec3& B = corners[base[f][1]];
        const Vec3& C = corners[base[f][2]];
        const double margin = std::min({det3(A, B, q), det3(B, C, q), det3(C, A, q)});
        if (margin > best_margin) {
            best_margin = margin;
            best_face = f;
        }
    }
    const Vec3& A = corners[base[best_face][0]];
    const Vec3& B = corners[base[best_face][1]];
    const Vec3& C = corners[base[best_face][2]];
    const double vol = det3(A, B, C);
    // Cone coordinates: q = lA A + lB B + lC C with nonnegative coefficients;
    // normalizing gives barycentric coordinates of the ray's hit on the face plane.
    double lA = det3(q, B, C) / vol;
    double lB = det3(A, q, C) / vol;
    double lC = det3(A, B, q) / vol;
    const double sum = lA + lB + lC;
    lB /= sum;
    lC /= sum;

    const int N = tri.N;
    const double u = std::clamp(lB * N, 0.0, static_cast<double>(N));
    const double v = std::clamp(lC * N, 0.0, static_cast<double>(N));
    int i = std::min(static_cast<int>(std::floor(u)), N - 1);
    int j = std::min(static_cast<int>(std::floor(v)), N - 1);
    if (i + j > N - 1) {
        // On the far edge of the big face; step back into the last row.
        if (u - i >= v - j) i = N - 1 - j; else j = N - 1 - i;
    }
    const bool down = (i + j <= N - 2) && (u - i) + (v - j) > 1.0;

    FaceLocation loc;
    loc.face = static_cast<std::uint32_t>(best_face) * N * N + local_face_index(N, i, j, down);
    const Face& F = tri.faces[loc.face];
    const Vec3& v0 = tri.vertices[F[0]].cartesian();
    const Vec3& v1 = tri.vertices[F[1]].cartesian();
    const Vec3& v2 = tri.vertices[F[2]].cartesian();
    const double w0 = det3(q, v1, v2);
    const double w1 = det3(v0, q, v2);
    const double w2 = det3(v0, v1, q);
    const double ws = w0 + w1 + w2;
    loc.weights = {w0 / ws, w1 / ws, w2 / ws};
    return loc;
}

}  // namespace medianqs
