#include "mphys/ode_core.hpp"

#include <cmath>

namespace mphys::ode {

void ControlProfile::validate() const {
  if (coefficients.empty())
    throw std::invalid_argument("control profile needs at least one segment");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("control profile needs t_end > 0");
  if (!(u_min <= u_max))
    throw std::invalid_argument("control bounds inverted");
  for (double c : coefficients) {
    if (!std::isfinite(c) || c < u_min || c > u_max)
      throw std::invalid_argument("control coefficient outside [u_min, u_max]");
  }
}

double ControlProfile::value_at(double t) const {
  if (!(t >= 0.0) || t > t_end)
    throw std::domain_error("control time outside [0, t_end]");
  const int n = segments();
  // Segment k is active on ((k-1)*t_end/N, k*t_end/N]; t = 0 maps to k = 1.
  int k = static_cast<int>(std::ceil(static_cast<double>(n) * t / t_end));
  k = std::clamp(k, 1, n);
  return coefficients[static_cast<std::size_t>(k - 1)];
}

ControlProfile ControlProfile::constant(double u, double t_end, int n,
                                        double u_min, double u_max) {
  ControlProfile p;
  p.coefficients.assign(static_cast<std::size_t>(n), u);
  p.u_min = u_min;
  p.u_max = u_max;
  p.t_end = t_end;
  return p;
}

ControlProfile ControlProfile::zero(double t_end, int n, double u_min,
                                    double u_max) {
  return constant(0.0, t_end, n, u_min, u_max);
}

std::vector<double> IntegrationGrid::measurement_times() const {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(n_times));
  for (int k = 1; k <= n_times; ++k)
    times.push_back(static_cast<double>(k) * t_end / n_times);
  return times;
}

}  // namespace mphys::ode
