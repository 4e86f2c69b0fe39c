#pragma once

#include <optional>
#include <vector>

#include "gpsim/orbital.hpp"

namespace gpsim {

/// Walker-style constellation layout. phase_offset_between_planes defaults
/// to even global phasing, 2 pi / (planes * sats_per_plane).
struct ConstellationSpec {
  int num_planes = 6;
  int sats_per_plane = 4;
  double inclination = 55.0 * kDeg;
  double semi_major_axis = 26560e3;
  std::optional<double> raan_spacing;                 // default 2 pi / num_planes
  std::optional<double> phase_offset_between_planes;  // default 2 pi / total

  double effective_raan_spacing() const;
  double effective_phase_offset() const;
  int total() const { return num_planes * sats_per_plane; }
  void validate() const;
  friend bool operator==(const ConstellationSpec&, const ConstellationSpec&) = default;
};

struct GroundPoint {
  double latitude = 0.0;   // rad
  double longitude = 0.0;  // rad, Earth-fixed
  double elevation_mask = 5.0 * kDeg;
};

/// Circular element sets ordered plane by plane.
std::vector<KeplerianElements> build_constellation(const ConstellationSpec& spec);

struct Visibility {
  int count = 0;
  std::vector<double> elevations;  // rad, one per satellite
};

/// Elevation of each satellite above the point's local horizon on a
/// spherical Earth rotated by earth_rotation_angle; count of those at or
/// above the mask.
Visibility visible_count(const GroundPoint& point, const std::vector<StateVector>& sat_states,
                         double earth_rotation_angle, const BodyConstants& body = {});

struct CoverageCell {
  double latitude = 0.0;   // rad
  double longitude = 0.0;  // rad
  int min_visible = 0;
};

struct CoverageMap {
  std::vector<CoverageCell> cells;
  int global_min = 0;
  double worst_latitude = 0.0;
  double worst_longitude = 0.0;
  double worst_epoch = 0.0;
  int epochs_sampled = 0;
};

struct CoverageGrid {
  double lat_step = 10.0 * kDeg;
  double lon_step = 10.0 * kDeg;
  double elevation_mask = 5.0 * kDeg;
};

/// Minimum visible count per grid cell over epochs 0, step, ..., duration.
/// Latitudes run pole to pole inclusive; longitudes cover [-180, 180).
/// Cells are computed independently across `threads` workers and merged in
/// grid order, so the result does not depend on the thread count.
CoverageMap coverage_sweep(const ConstellationSpec& spec, const CoverageGrid& grid,
                           double duration, double step, const BodyConstants& body = {},
                           unsigned threads = 0);

}  // namespace gpsim
