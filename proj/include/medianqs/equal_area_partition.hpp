#pragma once

#include <cstddef>
#include <vector>

#include "medianqs/sphere_geometry.hpp"

namespace medianqs {

/// A region of the partition: `band` in [0, n+1], `sector` in [1, m_band].
struct RegionId {
    int band = 0;
    int sector = 1;

    constexpr bool operator==(const RegionId&) const = default;
};

/// Partition of the sphere into k regions of equal area arranged in latitude
/// bands. Band 0 and band n+1 are the polar caps with 6 sectors each; band i
/// in [1, n] lies between the exact colatitudes theta_{i-1} and theta_i.
///
/// Regions are half-open spherical rectangles
///   [theta_{i-1}, theta_i) x [2 pi (j-1)/m_i, 2 pi j/m_i),
/// with the last band closed at theta = pi.
class EqualAreaPartition {
public:
    int k() const { return k_; }
    /// Number of interior bands (largest odd integer <= sqrt(k/2)).
    int n() const { return n_; }
    int band_count() const { return n_ + 2; }

    /// theta_{-1} = 0, theta_0, ..., theta_n, theta_{n+1} = pi; `upper_latitude(i)` is
    /// theta_i and `lower_latitude(i)` is theta_{i-1}, i.e. the band's colatitude range.
    double lower_latitude(int band) const { return latitudes_[band]; }
    double upper_latitude(int band) const { return latitudes_[band + 1]; }
    /// All n + 3 boundary colatitudes, ascending.
    const std::vector<double>& band_latitudes() const { return latitudes_; }
    /// cos of every entry of band_latitudes(), computed from the cumulative
    /// sector counts (these carry the exact equal-area relation).
    const std::vector<double>& band_cosines() const { return cosines_; }
    /// The arithmetic progression theta'_0, ..., theta'_n between theta_0 and pi - theta_0.
    const std::vector<double>& approx_latitudes() const { return approx_; }
    const std::vector<int>& sector_counts() const { return counts_; }
    int sectors(int band) const { return counts_[band]; }

    bool valid(const RegionId& id) const;

    /// Dense index in [0, k), bands in order then sectors.
    std::size_t flat_index(const RegionId& id) const;
    RegionId region_at(std::size_t flat) const;

    friend EqualAreaPartition build_partition(int k);

private:
    int k_ = 0;
    int n_ = 0;
    std::vector<double> latitudes_;
    std::vector<double> cosines_;
    std::vector<double> approx_;
    std::vector<int> counts_;
    std::vector<std::size_t> offsets_;
};

/// Builds the partition for an odd k >= 237 in O(k); throws ParameterError otherwise.
EqualAreaPartition build_partition(int k);

/// Constant-time point location.
RegionId locate(const EqualAreaPartition& partition, const UnitPoint& p);

/// True iff p lies in the open interior of the region (strictly inside all four sides).
bool in_interior(const EqualAreaPartition& partition, const RegionId& id, const UnitPoint& p);

/// 2 pi (cos theta_{i-1} - cos theta_i) / m_i; throws ParameterError for an invalid id.
double region_area(const EqualAreaPartition& partition, const RegionId& id);

/// The spherical-coordinate center: mid colatitude, mid azimuth. For the polar
/// caps the colatitude is the middle of [0, theta_0] (resp. [pi - theta_0, pi]).
UnitPoint region_center(const EqualAreaPartition& partition, const RegionId& id);

/// Corners plus `per_edge` evenly spaced points on each of the four sides.
std::vector<UnitPoint> region_boundary_samples(const EqualAreaPartition& partition,
                                               const RegionId& id, int per_edge = 32);

/// Max pairwise Euclidean distance between boundary samples of one region.
double region_sampled_diameter(const EqualAreaPartition& partition, const RegionId& id,
                               int per_edge = 32);

/// Euclidean distance from the region center to the nearest boundary sample.
/// The samples are augmented with the exact nearest points on each side.
double region_sampled_inradius(const EqualAreaPartition& partition, const RegionId& id,
                               int per_edge = 32);

struct PartitionAudit {
    double max_diameter = 0.0;
    double min_inradius = 0.0;
    double area_max_rel_err = 0.0;
};

/// Sweeps every region once for diameter, inradius and area.
PartitionAudit audit_partition(const EqualAreaPartition& partition, int per_edge = 32);

double region_diameter_audit(const EqualAreaPartition& partition, int per_edge = 32);
double region_inradius_audit(const EqualAreaPartition& partition, int per_edge = 32);

/// 7 / sqrt(k).
double diameter_bound(int k);
/// 0.77970 / sqrt(k).
double inradius_bound(int k);

inline constexpr double kInradiusConstant = 0.77970;
inline constexpr int kMinRegions = 237;

}  // namespace medianqs
