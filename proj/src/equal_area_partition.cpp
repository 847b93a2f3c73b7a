#include "medianqs/equal_area_partition.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>

#include "medianqs/errors.hpp"

namespace medianqs {

namespace {

constexpr int kLocateWindow = 3;

double sector_start(int m, int j) { return kTwoPi * (j - 1) / m; }
double sector_end(int m, int j) { return kTwoPi * j / m; }

}  // namespace

bool EqualAreaPartition::valid(const RegionId& id) const {
    return id.band >= 0 && id.band < band_count() && id.sector >= 1 &&
           id.sector <= counts_[id.band];
}

std::size_t EqualAreaPartition::flat_index(const RegionId& id) const {
    if (!valid(id)) throw ParameterError("equal_area_partition", "invalid region id");
    return offsets_[id.band] + static_cast<std::size_t>(id.sector - 1);
}

RegionId EqualAreaPartition::region_at(std::size_t flat) const {
    if (flat >= static_cast<std::size_t>(k_)) {
        throw ParameterError("equal_area_partition", "flat region index out of range");
    }
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat);
    const int band = static_cast<int>(it - offsets_.begin()) - 1;
    return {band, static_cast<int>(flat - offsets_[band]) + 1};
}

EqualAreaPartition build_partition(int k) {
    if (k < kMinRegions) {
        throw ParameterError("equal_area_partition",
                             "k = " + std::to_string(k) + " violates k >= 237");
    }
    if (k % 2 == 0) {
        throw ParameterError("equal_area_partition",
                             "k = " + std::to_string(k) + " violates k odd");
    }

    EqualAreaPartition P;
    P.k_ = k;
    // Largest odd n with n^2 <= k/2, in integer arithmetic.
    int n = 1;
    while (2 * (n + 1) * (n + 1) <= k) ++n;
    if (n % 2 == 0) --n;
    P.n_ = n;

    const double cap_cos = 1.0 - 12.0 / k;
    const double theta0 = std::acos(cap_cos);
    const double step = (kPi - 2.0 * theta0) / n;
    P.approx_.resize(n + 1);
    for (int i = 0; i <= n; ++i) P.approx_[i] = theta0 + i * step;

    // Ideal real-valued counts for interior bands 1..n; they sum to k - 12.
    // Rounding is done on the northern half and mirrored so the partition is
    // symmetric under z -> -z.
    const int middle = (n + 1) / 2;
    std::vector<double> ideal(n + 1, 0.0);
    for (int i = 1; i <= middle; ++i) {
        ideal[i] = 0.5 * k * (std::cos(P.approx_[i - 1]) - std::cos(P.approx_[i]));
    }
    std::vector<int> m(n + 2, 0);
    m[0] = m[n + 1] = 6;
    long assigned = 0;
    for (int i = 1; i <= middle; ++i) {
        m[i] = static_cast<int>(std::floor(ideal[i]));
        assigned += (i == middle ? 1 : 2) * m[i];
    }
    long remainder = (k - 12) - assigned;
    if (remainder % 2 != 0) {
        ++m[middle];
        --remainder;
    }
    std::vector<int> order(middle > 1 ? middle - 1 : 0);
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return ideal[a] - std::floor(ideal[a]) > ideal[b] - std::floor(ideal[b]);
    });
    for (int t = 0; remainder > 0; ++t) {
        if (t >= static_cast<int>(order.size())) {
            throw InvariantViolation("equal_area_partition", "band count rounding overflowed");
        }
        ++m[order[t]];
        remainder -= 2;
    }
    for (int i = 1; i < middle; ++i) m[n + 1 - i] = m[i];
    for (int i = 0; i <= n + 1; ++i) {
        if (m[i] < 1) throw InvariantViolation("equal_area_partition", "empty band");
    }
    P.counts_ = m;

    // Exact colatitudes from cumulative counts: cos theta_i = 1 - (12 + 2 S_i)/k,
    // with the integer numerator formed first so mirrored bands negate exactly.
    P.latitudes_.assign(n + 3, 0.0);
    P.cosines_.assign(n + 3, 0.0);
    P.cosines_[0] = 1.0;
    P.latitudes_[0] = 0.0;
    long cumulative = 0;
    for (int i = 0; i <= n; ++i) {
        if (i > 0) cumulative += m[i];
        const long numerator = k - 12 - 2 * cumulative;
        P.cosines_[i + 1] = static_cast<double>(numerator) / k;
        P.latitudes_[i + 1] = std::acos(P.cosines_[i + 1]);
    }
    P.cosines_[n + 2] = -1.0;
    P.latitudes_[n + 2] = kPi;

    P.offsets_.resize(n + 2);
    std::size_t off = 0;
    for (int i = 0; i <= n + 1; ++i) {
        P.offsets_[i] = off;
        off += static_cast<std::size_t>(m[i]);
    }
    if (off != static_cast<std::size_t>(k)) {
        throw InvariantViolation("equal_area_partition", "sector counts do not sum to k");
    }
    return P;
}

RegionId locate(const EqualAreaPartition& P, const UnitPoint& p) {
    const double theta = p.theta();
    const auto& lat = P.band_latitudes();
    const int n = P.n();

    int band;
    if (theta < lat[1]) {
        band = 0;
    } else if (theta >= lat[n + 1]) {
        band = n + 1;
    } else {
        const auto& approx = P.approx_latitudes();
        const double step = (approx[n] - approx[0]) / n;
        int guess = static_cast<int>(std::floor((theta - approx[0]) / step)) + 1;
        guess = std::clamp(guess, 1, n);
        band = -1;
        const int lo = std::max(1, guess - kLocateWindow);
        const int hi = std::min(n, guess + kLocateWindow);
        for (int b = lo; b <= hi; ++b) {
            if (lat[b] <= theta && theta < lat[b + 1]) {
                band = b;
                break;
            }
        }
        if (band < 0) {
            std::cerr << "warning: locate window [" << lo << ", " << hi
                      << "] missed colatitude " << theta << "; scanning all bands\n";
            for (int b = 1; b <= n; ++b) {
                if (lat[b] <= theta && theta < lat[b + 1]) {
                    band = b;
                    break;
                }
            }
            if (band < 0) throw InvariantViolation("equal_area_partition", "point not in any band");
        }
    }

    const int m = P.sectors(band);
    const double phi = p.phi();
    int j = static_cast<int>(std::floor(phi * m / kTwoPi)) + 1;
    j = std::clamp(j, 1, m);
    // Settle rounding at sector seams against the same boundary formula the
    // region rectangles use.
    if (j > 1 && phi < sector_start(m, j)) --j;
    if (j < m && phi >= sector_end(m, j)) ++j;
    return {band, j};
}

bool in_interior(const EqualAreaPartition& P, const RegionId& id, const UnitPoint& p) {
    if (!P.valid(id)) throw ParameterError("equal_area_partition", "invalid region id");
    const double theta = p.theta();
    if (!(P.lower_latitude(id.band) < theta && theta < P.upper_latitude(id.band))) return false;
    const int m = P.sectors(id.band);
    return sector_start(m, id.sector) < p.phi() && p.phi() < sector_end(m, id.sector);
}

double region_area(const EqualAreaPartition& P, const RegionId& id) {
    if (!P.valid(id)) throw ParameterError("equal_area_partition", "invalid region id");
    const auto& c = P.band_cosines();
    return kTwoPi * (c[id.band] - c[id.band + 1]) / P.sectors(id.band);
}

UnitPoint region_center(const EqualAreaPartition& P, const RegionId& id) {
    if (!P.valid(id)) throw ParameterError("equal_area_partition", "invalid region id");
    const double theta = 0.5 * (P.lower_latitude(id.band) + P.upper_latitude(id.band));
    const int m = P.sectors(id.band);
    return UnitPoint::from_spherical(theta, kTwoPi * (id.sector - 0.5) / m);
}

std::vector<UnitPoint> region_boundary_samples(const EqualAreaPartition& P, const RegionId& id,
                                               int per_edge) {
    if (!P.valid(id)) throw ParameterError("equal_area_partition", "invalid region id");
    const double t0 = P.lower_latitude(id.band);
    const double t1 = P.upper_latitude(id.band);
    const int m = P.sectors(id.band);
    const double p0 = sector_start(m, id.sector);
    const double p1 = sector_end(m, id.sector);

    std::vector<UnitPoint> out;
    out.reserve(4 * static_cast<std::size_t>(per_edge) + 4);
    for (double t : {t0, t1})
        for (double ph : {p0, p1}) out.push_back(UnitPoint::from_spherical(t, ph));
    for (int s = 1; s <= per_edge; ++s) {
        const double u = static_cast<double>(s) / (per_edge + 1);
        const double ph = p0 + u * (p1 - p0);
        const double t = t0 + u * (t1 - t0);
        out.push_back(UnitPoint::from_spherical(t0, ph));
        out.push_back(UnitPoint::from_spherical(t1, ph));
        out.push_back(UnitPoint::from_spherical(t, p0));
        out.push_back(UnitPoint::from_spherical(t, p1));
    }
    return out;
}

double region_sampled_diameter(const EqualAreaPartition& P, const RegionId& id, int per_edge) {
    const auto pts = region_boundary_samples(P, id, per_edge);
    double best = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            best = std::max(best, euclidean_dist(pts[a], pts[b]));
    return best;
}

double region_sampled_inradius(const EqualAreaPartition& P, const RegionId& id, int per_edge) {
    auto pts = region_boundary_samples(P, id, per_edge);
    const UnitPoint c = region_center(P, id);
    const double t0 = P.lower_latitude(id.band);
    const double t1 = P.upper_latitude(id.band);
    const int m = P.sectors(id.band);

    // Nearest points on the two parallels share the center's azimuth.
    pts.push_back(UnitPoint::from_spherical(t0, c.phi()));
    pts.push_back(UnitPoint::from_spherical(t1, c.phi()));
    // Nearest point on each meridian side: project onto the meridian plane.
    for (double ph : {sector_start(m, id.sector), sector_end(m, id.sector)}) {
        const Vec3 normal{-std::sin(ph), std::cos(ph), 0.0};
        const Vec3 foot = c.cartesian() - normal * dot(c.cartesian(), normal);
        if (norm(foot) == 0.0) continue;
        const UnitPoint f = radial_project(foot);
        const Vec3 dir{std::cos(ph), std::sin(ph), 0.0};
        // Must lie on the half-plane of this meridian and within the side's colatitudes.
        if (dot(f.cartesian(), dir) >= 0.0 && f.theta() >= t0 && f.theta() <= t1) {
            pts.push_back(f);
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (const UnitPoint& q : pts) best = std::min(best, euclidean_dist(c, q));
    return best;
}

PartitionAudit audit_partition(const EqualAreaPartition& P, int per_edge) {
    PartitionAudit a;
    a.min_inradius = std::numeric_limits<double>::infinity();
    const double target = 4.0 * kPi / P.k();
    for (int b = 0; b < P.band_count(); ++b) {
        for (int j = 1; j <= P.sectors(b); ++j) {
            const RegionId id{b, j};
            a.max_diameter = std::max(a.max_diameter, region_sampled_diameter(P, id, per_edge));
            a.min_inradius = std::min(a.min_inradius, region_sampled_inradius(P, id, per_edge));
            a.area_max_rel_err =
                std::max(a.area_max_rel_err, std::abs(region_area(P, id) - target) / target);
        }
    }
    return a;
}

double region_diameter_audit(const EqualAreaPartition& P, int per_edge) {
    double best = 0.0;
    for (int b = 0; b < P.band_count(); ++b)
        for (int j = 1; j <= P.sectors(b); ++j)
            best = std::max(best, region_sampled_diameter(P, {b, j}, per_edge));
    return best;
}

double region_inradius_audit(const EqualAreaPartition& P, int per_edge) {
    double best = std::numeric_limits<double>::infinity();
    for (int b = 0; b < P.band_count(); ++b)
        for (int j = 1; j <= P.sectors(b); ++j)
            best = std::min(best, region_sampled_inradius(P, {b, j}, per_edge));
    return best;
}

double diameter_bound(int k) { return 7.0 / std::sqrt(static_cast<double>(k)); }
double inradius_bound(int k) { return kInradiusConstant / std::sqrt(static_cast<double>(k)); }

}  // namespace medianqs
