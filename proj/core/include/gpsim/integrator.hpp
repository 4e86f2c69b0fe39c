#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gpsim/error.hpp"

namespace gpsim {

namespace detail {

template <class State>
State make_like(const State& s) {
  return s;
}

template <class State>
void check_finite(const State& d, double t) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i])) throw IntegrationError(t, "non-finite state derivative");
  }
}

// out = base + h * k
template <class State>
void axpy(State& out, const State& base, double h, const State& k) {
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + h * k[i];
}

}  // namespace detail

/// One classical fourth-order Runge-Kutta step.
///
/// `State` is any flat real container with size() and operator[]
/// (std::array<double, N> or std::vector<double>). `f(t, x)` returns dx/dt
/// in the same container type. Embedded quaternions are not renormalized
/// here; that is the caller's job.
template <class State, class Derivative>
State rk4_step(Derivative&& f, const State& x, double t, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("rk4_step: dt must be positive and finite");

  const State k1 = f(t, x);
  detail::check_finite(k1, t);
  State tmp = detail::make_like(x);
  detail::axpy(tmp, x, 0.5 * dt, k1);
  const State k2 = f(t + 0.5 * dt, tmp);
  detail::check_finite(k2, t + 0.5 * dt);
  detail::axpy(tmp, x, 0.5 * dt, k2);
  const State k3 = f(t + 0.5 * dt, tmp);
  detail::check_finite(k3, t + 0.5 * dt);
  detail::axpy(tmp, x, dt, k3);
  const State k4 = f(t + dt, tmp);
  detail::check_finite(k4, t + dt);

  State out = detail::make_like(x);
  const double h6 = dt / 6.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x[i] + h6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace gpsim
