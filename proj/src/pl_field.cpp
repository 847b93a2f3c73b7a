#include "medianqs/pl_field.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "medianqs/errors.hpp"

namespace medianqs {

ScalarField::ScalarField(std::shared_ptr<const IcosaTriangulation> tri, std::vector<double> values)
    : tri_(std::move(tri)), values_(std::move(values)) {
    if (!tri_) throw ParameterError("pl_field", "null triangulation");
    if (values_.size() != tri_->vertex_count()) {
        throw ParameterError("pl_field", "value count does not match vertex count");
    }
    for (std::size_t v = 0; v < values_.size(); ++v) {
        if (!std::isfinite(values_[v])) {
            throw ParameterError("pl_field", "non-finite value at vertex " + std::to_string(v));
        }
    }
    ascending_.resize(values_.size());
    std::iota(ascending_.begin(), ascending_.end(), VertexId{0});
    std::sort(ascending_.begin(), ascending_.end(),
              [this](VertexId a, VertexId b) { return less(a, b); });
    rank_.resize(values_.size());
    for (std::size_t r = 0; r < ascending_.size(); ++r) {
        rank_[ascending_[r]] = static_cast<std::uint32_t>(r);
    }
}

double ScalarField::interpolate(const UnitPoint& p) const {
    const FaceLocation loc = locate_face(*tri_, p);
    const Face& F = tri_->faces[loc.face];
    return loc.weights[0] * values_[F[0]] + loc.weights[1] * values_[F[1]] +
           loc.weights[2] * values_[F[2]];
}

ScalarField sample(const InputFunction& f, std::shared_ptr<const IcosaTriangulation> tri) {
    if (!tri) throw ParameterError("pl_field", "null triangulation");
    if (const VertexTable* table = f.as_vertex_table(); table && table->N != tri->N) {
        throw ParameterError("pl_field", "vertex table for N=" + std::to_string(table->N) +
                                             " sampled on N=" + std::to_string(tri->N));
    }
    std::vector<double> values(tri->vertex_count());
    for (std::size_t v = 0; v < values.size(); ++v) {
        try {
            values[v] = f.at_vertex(v, tri->vertices[v]);
        } catch (const Error& e) {
            throw ParameterError("pl_field",
                                 "evaluation failed at vertex " + std::to_string(v) + ": " + e.what());
        }
        if (!std::isfinite(values[v])) {
            throw ParameterError("pl_field", "non-finite value at vertex " + std::to_string(v));
        }
    }
    return ScalarField(std::move(tri), std::move(values));
}

double pl_sup_error_bound(const InputFunction& f, const ScalarField& field) {
    return f.lip_bound() * curvilinear_diameter_bound(field.triangulation().N);
}

double pl_lip_bound(const InputFunction& f) { return f.lip_bound() * pl_lipschitz_factor(); }

}  // namespace medianqs
