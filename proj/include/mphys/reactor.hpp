#pragma once

#include <limits>
#include <span>

namespace mphys::reactor {

// The known part of the fed-batch balance equations: yield, maintenance and
// feed substrate concentration. The specific growth rate is pluggable.
struct Constants {
  double y_xs = 0.5;    // biomass yield on substrate (-)
  double m = 0.01;      // maintenance factor (1/h)
  double c_s_in = 50.0; // substrate concentration in the feed (g/l)
};

// Fed-batch balances for x = (C_s, C_x, V) with growth rate mu(C_s) supplied
// by the caller. V <= 0 signals failure through non-finite derivatives so the
// integrator reports it as a SolveOutcome failure.
template <class MuFn>
inline void rhs(MuFn&& mu_of_cs, std::span<const double> x, double u,
                std::span<double> dxdt, const Constants& c) {
  const double cs = x[0];
  const double cx = x[1];
  const double v = x[2];
  if (!(v > 0.0)) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    dxdt[0] = dxdt[1] = dxdt[2] = nan;
    return;
  }
  const double mu = mu_of_cs(cs);
  const double dilution = u / v;
  dxdt[0] = -(mu / c.y_xs + c.m) * cx + dilution * (c.c_s_in - cs);
  dxdt[1] = mu * cx - dilution * cx;
  dxdt[2] = u;
}

}  // namespace mphys::reactor
