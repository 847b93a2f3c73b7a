#include "medianqs/sphere_geometry.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "medianqs/errors.hpp"

namespace medianqs {

Vec3 apply(const Mat3& m, const Vec3& v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 rotation_about(const Vec3& axis, double angle) {
    const double len = norm(axis);
    if (len == 0.0) throw ParameterError("sphere_geometry", "rotation axis is the zero vector");
    const Vec3 u = axis / len;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double t = 1.0 - c;
    // Rodrigues' formula.
    return Mat3{{{t * u.x * u.x + c, t * u.x * u.y - s * u.z, t * u.x * u.z + s * u.y},
                 {t * u.x * u.y + s * u.z, t * u.y * u.y + c, t * u.y * u.z - s * u.x},
                 {t * u.x * u.z - s * u.y, t * u.y * u.z + s * u.x, t * u.z * u.z + c}}};
}

UnitPoint UnitPoint::from_cartesian(const Vec3& v) {
    const double n2 = dot(v, v);
    if (!(std::abs(n2 - 1.0) <= 2e-12)) {
        std::ostringstream msg;
        msg << "point (" << v.x << ", " << v.y << ", " << v.z << ") is not on the unit sphere";
        throw ParameterError("sphere_geometry", msg.str());
    }
    // atan2 keeps full relative accuracy near the poles, where arccos(z) does not.
    const double theta = std::atan2(std::hypot(v.x, v.y), v.z);
    double phi = std::atan2(v.y, v.x);
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi) phi = 0.0;
    return UnitPoint(v, theta, phi);
}

UnitPoint UnitPoint::from_spherical(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw ParameterError("sphere_geometry", "colatitude outside [0, pi]");
    }
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi) phi = 0.0;
    const double st = std::sin(theta);
    return UnitPoint({st * std::cos(phi), st * std::sin(phi), std::cos(theta)}, theta, phi);
}

double euclidean_dist(const UnitPoint& a, const UnitPoint& b) {
    return norm(a.cartesian() - b.cartesian());
}

double spherical_dist(const UnitPoint& a, const UnitPoint& b) {
    const double c = std::clamp(dot(a.cartesian(), b.cartesian()), -1.0, 1.0);
    return std::acos(c);
}

UnitPoint radial_project(const Vec3& p) {
    const double n = norm(p);
    if (!(n > 0.0)) throw ParameterError("sphere_geometry", "cannot project the zero vector");
    Vec3 q = p / n;
    // Renormalize once more so the unit-norm invariant holds to machine precision.
    q = q / norm(q);
    return UnitPoint::from_cartesian(q);
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(const std::vector<Monomial>& terms) {
    for (const Monomial& m : terms) {
        if (m.i < 0 || m.j < 0 || m.k < 0) {
            throw ParameterError("sphere_geometry", "monomial exponents must be nonnegative");
        }
        if (!std::isfinite(m.c)) throw ParameterError("sphere_geometry", "non-finite coefficient");
    }
    terms_ = terms;
    std::sort(terms_.begin(), terms_.end(), [](const Monomial& a, const Monomial& b) {
        return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
    });
    std::vector<Monomial> merged;
    for (const Monomial& m : terms_) {
        if (!merged.empty() && merged.back().i == m.i && merged.back().j == m.j &&
            merged.back().k == m.k) {
            merged.back().c += m.c;
        } else {
            merged.push_back(m);
        }
    }
    terms_ = std::move(merged);
}

int Polynomial::degree() const {
    int d = 0;
    for (const Monomial& m : terms_) {
        if (m.c != 0.0) d = std::max(d, m.i + m.j + m.k);
    }
    return d;
}

namespace {

double ipow(double base, int e) {
    double r = 1.0;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace

double Polynomial::operator()(const Vec3& p) const {
    double sum = 0.0;
    double constant = 0.0;
    for (const Monomial& m : terms_) {
        if (m.i == 0 && m.j == 0 && m.k == 0) {
            constant += m.c;
        } else {
            sum += m.c * ipow(p.x, m.i) * ipow(p.y, m.j) * ipow(p.z, m.k);
        }
    }
    return sum + constant;
}

Polynomial Polynomial::affine(double a, double b) const {
    std::vector<Monomial> out;
    out.reserve(terms_.size() + 1);
    for (const Monomial& m : terms_) out.push_back({a * m.c, m.i, m.j, m.k});
    out.push_back({b, 0, 0, 0});
    return Polynomial(out);
}

double polynomial_lip_bound(const Polynomial& f) {
    double sq = 0.0;
    for (const Monomial& m : f.terms()) sq += m.c * m.c;
    return f.degree() * std::sqrt(3.0) * std::sqrt(sq);
}

// ---------------------------------------------------------------------------

InputFunction InputFunction::polynomial(Polynomial p) {
    InputFunction f;
    f.lip_bound_ = polynomial_lip_bound(p);
    f.rep_ = std::move(p);
    return f;
}

InputFunction InputFunction::distance_to(const Vec3& center) {
    InputFunction f;
    f.rep_ = DistanceToPoint{radial_project(center).cartesian()};
    f.lip_bound_ = 1.0;
    return f;
}

InputFunction InputFunction::vertex_table(VertexTable table, double lip_bound) {
    if (table.N < 1) throw ParameterError("sphere_geometry", "vertex table needs N >= 1");
    const std::size_t expected = 10 * static_cast<std::size_t>(table.N) * table.N + 2;
    if (table.values.size() != expected) {
        std::ostringstream msg;
        msg << "vertex table for N=" << table.N << " needs " << expected << " values, got "
            << table.values.size();
        throw ParameterError("sphere_geometry", msg.str());
    }
    if (!(lip_bound >= 0.0) || !std::isfinite(lip_bound)) {
        throw ParameterError("sphere_geometry", "vertex table needs an explicit lip_bound >= 0");
    }
    InputFunction f;
    f.lip_bound_ = lip_bound;
    std::vector<Vec3> sites = std::move(table.sites);
    table.sites.clear();
    f.rep_ = std::move(table);
    if (!sites.empty()) f.bind_sites(std::move(sites));
    return f;
}

InputFunction InputFunction::constant(double c) {
    return polynomial(Polynomial({{c, 0, 0, 0}}));
}

FunctionKind InputFunction::kind() const {
    if (std::holds_alternative<Polynomial>(rep_)) return FunctionKind::Polynomial;
    if (std::holds_alternative<VertexTable>(rep_)) return FunctionKind::VertexTable;
    return FunctionKind::Builtin;
}

InputFunction InputFunction::rotated(const Mat3& rotation) const {
    if (kind() == FunctionKind::VertexTable) {
        throw ParameterError("sphere_geometry", "vertex tables cannot be rotated");
    }
    InputFunction f = *this;
    if (!rotation_) {
        f.rotation_ = rotation;
        return f;
    }
    // (f o R1) o R2 = f o (R1 R2).
    Mat3 prod{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            for (int t = 0; t < 3; ++t) prod[r][c] += (*rotation_)[r][t] * rotation[t][c];
    f.rotation_ = prod;
    return f;
}

InputFunction InputFunction::affine(double a, double b) const {
    InputFunction f = *this;
    if (const auto* p = std::get_if<Polynomial>(&f.rep_)) {
        // Evaluated as a * f + b so that values match the affine image exactly;
        // the bound is that of the equivalent folded polynomial.
        f.post_ = {a * post_.a, a * post_.b + b};
        f.lip_bound_ = polynomial_lip_bound(p->affine(f.post_.a, f.post_.b));
    } else if (auto* t = std::get_if<VertexTable>(&f.rep_)) {
        for (double& v : t->values) v = a * v + b;
        f.lip_bound_ = std::abs(a) * lip_bound_;
    } else {
        f.post_ = {a * post_.a, a * post_.b + b};
        f.lip_bound_ = std::abs(a) * lip_bound_;
    }
    return f;
}

void InputFunction::bind_sites(std::vector<Vec3> sites) {
    auto* t = std::get_if<VertexTable>(&rep_);
    if (!t) throw ParameterError("sphere_geometry", "only vertex tables carry sites");
    if (sites.size() != t->values.size()) {
        throw ParameterError("sphere_geometry", "site count does not match table size");
    }
    site_index_.clear();
    for (std::size_t v = 0; v < sites.size(); ++v) {
        site_index_[{sites[v].x, sites[v].y, sites[v].z}] = v;
    }
    t->sites = std::move(sites);
}

double InputFunction::at_vertex(std::size_t index, const UnitPoint& p) const {
    if (const auto* t = std::get_if<VertexTable>(&rep_)) {
        if (index >= t->values.size()) {
            throw ParameterError("sphere_geometry",
                                 "vertex index " + std::to_string(index) + " outside table");
        }
        return t->values[index];
    }
    return evaluate(*this, p);
}

double evaluate(const InputFunction& f, const UnitPoint& p) {
    const Vec3 q = f.rotation_ ? apply(*f.rotation_, p.cartesian()) : p.cartesian();
    if (const auto* poly = std::get_if<Polynomial>(&f.rep_)) {
        const double v = (*poly)(q);
        return f.post_.a == 1.0 && f.post_.b == 0.0 ? v : f.post_.a * v + f.post_.b;
    }
    if (const auto* dist = std::get_if<DistanceToPoint>(&f.rep_)) {
        return f.post_.a * norm(q - dist->center) + f.post_.b;
    }
    const auto& table = std::get<VertexTable>(f.rep_);
    const auto it = f.site_index_.find({q.x, q.y, q.z});
    if (it == f.site_index_.end()) {
        throw ParameterError("sphere_geometry", "vertex table queried at a non-vertex point");
    }
    return table.values[it->second];
}

}  // namespace medianqs
