#include "gpsim/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "gpsim/error.hpp"

namespace gpsim {

double ConstellationSpec::effective_raan_spacing() const {
  return raan_spacing.value_or(kTwoPi / num_planes);
}

double ConstellationSpec::effective_phase_offset() const {
  return phase_offset_between_planes.value_or(kTwoPi / total());
}

void ConstellationSpec::validate() const {
  if (num_planes < 1) throw ConfigurationError("constellation.num_planes must be >= 1");
  if (sats_per_plane < 1) throw ConfigurationError("constellation.sats_per_plane must be >= 1");
  if (!(semi_major_axis > 0.0)) throw ConfigurationError("constellation.semi_major_axis must be positive");
  if (!(inclination >= 0.0 && inclination <= kPi)) {
    throw ConfigurationError("constellation.inclination must lie in [0, 180] deg");
  }
}

std::vector<KeplerianElements> build_constellation(const ConstellationSpec& spec) {
  spec.validate();
  std::vector<KeplerianElements> out;
  out.reserve(static_cast<std::size_t>(spec.total()));
  const double raan_step = spec.effective_raan_spacing();
  const double offset = spec.effective_phase_offset();
  for (int p = 0; p < spec.num_planes; ++p) {
    for (int s = 0; s < spec.sats_per_plane; ++s) {
      KeplerianElements el;
      el.a = spec.semi_major_axis;
      el.e = 0.0;
      el.i = spec.inclination;
      el.raan = wrap_two_pi(p * raan_step);
      el.argp = 0.0;
      el.true_anomaly = wrap_two_pi(s * kTwoPi / spec.sats_per_plane + p * offset);
      out.push_back(el);
    }
  }
  return out;
}

namespace {

Vec3 ground_position_inertial(double lat, double lon, double rotation, double radius) {
  const double l = lon + rotation;
  return {radius * std::cos(lat) * std::cos(l), radius * std::cos(lat) * std::sin(l),
          radius * std::sin(lat)};
}

double elevation(const Vec3& site, const Vec3& sat) {
  const Vec3 up = site.normalized();
  const Vec3 los = sat - site;
  return std::asin(std::clamp(dot(los, up) / los.norm(), -1.0, 1.0));
}

}  // namespace

Visibility visible_count(const GroundPoint& point, const std::vector<StateVector>& sat_states,
                         double earth_rotation_angle, const BodyConstants& body) {
  const Vec3 site =
      ground_position_inertial(point.latitude, point.longitude, earth_rotation_angle, body.re);
  Visibility v;
  v.elevations.reserve(sat_states.size());
  for (const auto& s : sat_states) {
    const double el = elevation(site, s.position);
    v.elevations.push_back(el);
    if (el >= point.elevation_mask) ++v.count;
  }
  return v;
}

CoverageMap coverage_sweep(const ConstellationSpec& spec, const CoverageGrid& grid,
                           double duration, double step, const BodyConstants& body,
                           unsigned threads) {
  if (!(grid.lat_step > 0.0) || !(grid.lon_step > 0.0)) {
    throw DomainError("coverage_sweep: grid resolution must be positive");
  }
  if (!(step > 0.0) || !(duration >= 0.0)) {
    throw DomainError("coverage_sweep: step must be positive and duration non-negative");
  }
  const auto elements = build_constellation(spec);

  std::vector<double> epochs;
  for (int k = 0;; ++k) {
    const double t = k * step;
    if (t > duration + 1e-9) break;
    epochs.push_back(t);
  }

  // satellite positions per epoch, shared read-only by the workers
  std::vector<std::vector<StateVector>> states(epochs.size());
  for (std::size_t k = 0; k < epochs.size(); ++k) {
    states[k].reserve(elements.size());
    for (const auto& el : elements) {
      states[k].push_back(elements_to_state(advance_kepler(el, epochs[k], body), body, epochs[k]));
    }
  }

  CoverageMap map;
  map.epochs_sampled = static_cast<int>(epochs.size());
  const double lat_lo = -0.5 * kPi;
  const int n_lat = static_cast<int>(std::floor(kPi / grid.lat_step + 1e-9)) + 1;
  const int n_lon = static_cast<int>(std::ceil(kTwoPi / grid.lon_step - 1e-9));
  for (int i = 0; i < n_lat; ++i) {
    for (int j = 0; j < n_lon; ++j) {
      map.cells.push_back({std::min(lat_lo + i * grid.lat_step, 0.5 * kPi),
                           -kPi + j * grid.lon_step, 0});
    }
  }

  std::vector<std::size_t> worst_epoch(map.cells.size(), 0);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t c = begin; c < map.cells.size(); c += stride) {
      auto& cell = map.cells[c];
      const GroundPoint gp{cell.latitude, cell.longitude, grid.elevation_mask};
      int best = std::numeric_limits<int>::max();
      for (std::size_t k = 0; k < epochs.size(); ++k) {
        const int n = visible_count(gp, states[k], kEarthRotationRate * epochs[k], body).count;
        if (n < best) {
          best = n;
          worst_epoch[c] = k;
        }
      }
      cell.min_visible = epochs.empty() ? 0 : best;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(map.cells.size()));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
  }

  map.global_min = std::numeric_limits<int>::max();
  for (std::size_t c = 0; c < map.cells.size(); ++c) {
    if (map.cells[c].min_visible < map.global_min) {
      map.global_min = map.cells[c].min_visible;
      map.worst_latitude = map.cells[c].latitude;
      map.worst_longitude = map.cells[c].longitude;
      map.worst_epoch = epochs.empty() ? 0.0 : epochs[worst_epoch[c]];
    }
  }
  if (map.cells.empty()) map.global_min = 0;
  return map;
}

}  // namespace gpsim
