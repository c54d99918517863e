#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mphys::ode {

struct Tolerances {
  double rel = 1e-8;
  double abs = 1e-8;
};

// Piecewise-constant control on [0, t_end]. Segment k (1-based) is active on
// ((k-1)*t_end/N, k*t_end/N]; t = 0 takes the first coefficient.
struct ControlProfile {
  std::vector<double> coefficients;
  double u_min = 0.0;
  double u_max = 0.0;
  double t_end = 0.0;

  int segments() const { return static_cast<int>(coefficients.size()); }

  void validate() const;
  double value_at(double t) const;  // throws std::domain_error outside [0, t_end]

  static ControlProfile constant(double u, double t_end, int n, double u_min,
                                 double u_max);
  static ControlProfile zero(double t_end, int n, double u_min, double u_max);
};

// Equally spaced sampling times t_k = k*t_end/N for k = 1..N: the end of the
// experiment is sampled, t = 0 is not.
struct IntegrationGrid {
  double t_end = 0.0;
  int n_times = 0;

  std::vector<double> measurement_times() const;
};

struct Trajectory {
  std::vector<double> times;                 // the requested measurement times
  std::vector<std::vector<double>> states;   // aligned with `times`
  std::vector<double> segment_times;         // every integration restart point
  std::vector<std::vector<double>> segment_states;
};

struct SolveFailure {
  double t_fail = 0.0;
  std::string reason;
};

// Integration failure is an ordinary value so optimization objectives can map
// it to their worst possible value instead of unwinding the caller.
class SolveOutcome {
 public:
  static SolveOutcome success(Trajectory t) { return SolveOutcome(std::move(t)); }
  static SolveOutcome failed(SolveFailure f) { return SolveOutcome(std::move(f)); }

  bool ok() const { return std::holds_alternative<Trajectory>(v_); }
  const Trajectory& trajectory() const { return std::get<Trajectory>(v_); }
  const SolveFailure& failure() const { return std::get<SolveFailure>(v_); }

 private:
  explicit SolveOutcome(Trajectory t) : v_(std::move(t)) {}
  explicit SolveOutcome(SolveFailure f) : v_(std::move(f)) {}
  std::variant<Trajectory, SolveFailure> v_;
};

namespace detail {

// Dormand-Prince 5(4) coefficients.
inline constexpr double kC[7] = {0.0,    1.0 / 5, 3.0 / 10, 4.0 / 5,
                                 8.0 / 9, 1.0,    1.0};
inline constexpr double kA2[1] = {1.0 / 5};
inline constexpr double kA3[2] = {3.0 / 40, 9.0 / 40};
inline constexpr double kA4[3] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
inline constexpr double kA5[4] = {19372.0 / 6561, -25360.0 / 2187,
                                  64448.0 / 6561, -212.0 / 729};
inline constexpr double kA6[5] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247,
                                  49.0 / 176, -5103.0 / 18656};
inline constexpr double kB[6] = {35.0 / 384,     0.0,        500.0 / 1113,
                                 125.0 / 192,    -2187.0 / 6784, 11.0 / 84};
// 5th-order minus 4th-order weights for the embedded error estimate.
inline constexpr double kE[7] = {71.0 / 57600,   0.0,
                                 -71.0 / 16695,  71.0 / 1920,
                                 -17253.0 / 339200, 22.0 / 525,
                                 -1.0 / 40};

inline bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

struct StepperState {
  std::vector<double> y;
  std::vector<double> k[7];
  std::vector<double> ytmp;
  std::vector<double> ynew;

  explicit StepperState(std::span<const double> x0)
      : y(x0.begin(), x0.end()) {
    const std::size_t n = y.size();
    for (auto& ki : k) ki.assign(n, 0.0);
    ytmp.assign(n, 0.0);
    ynew.assign(n, 0.0);
  }
};

// Hairer-style starting step size for the interval [a, b].
template <class Rhs>
double initial_step(Rhs&& rhs, double a, double b, double u,
                    std::span<const double> y, std::span<const double> f0,
                    const Tolerances& tol, std::vector<double>& scratch_y,
                    std::vector<double>& scratch_f) {
  const std::size_t n = y.size();
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = tol.abs + tol.rel * std::abs(y[i]);
    d0 += (y[i] / sc) * (y[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / static_cast<double>(n));
  d1 = std::sqrt(d1 / static_cast<double>(n));

  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
  h0 = std::min(h0, b - a);

  for (std::size_t i = 0; i < n; ++i) scratch_y[i] = y[i] + h0 * f0[i];
  rhs(a + h0, std::span<const double>(scratch_y), u,
      std::span<double>(scratch_f));

  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = tol.abs + tol.rel * std::abs(y[i]);
    const double df = (scratch_f[i] - f0[i]) / sc;
    d2 += df * df;
  }
  d2 = std::sqrt(d2 / static_cast<double>(n)) / h0;
  if (!std::isfinite(d2)) d2 = std::numeric_limits<double>::max();

  double h1;
  const double dmax = std::max(d1, d2);
  if (dmax <= 1e-15) {
    h1 = std::max(1e-6, h0 * 1e-3);
  } else {
    h1 = std::pow(0.01 / dmax, 0.2);
  }
  return std::min({100.0 * h0, h1, b - a});
}

// Advance y from a to b with control value u held constant. Returns true on
// success; on failure fills `fail`.
template <class Rhs>
bool integrate_interval(Rhs&& rhs, double a, double b, double u,
                        StepperState& s, const Tolerances& tol,
                        long& steps_left, SolveFailure& fail) {
  const std::size_t n = s.y.size();
  auto span_of = [](std::vector<double>& v) { return std::span<double>(v); };
  auto cspan_of = [](const std::vector<double>& v) {
    return std::span<const double>(v);
  };

  rhs(a, cspan_of(s.y), u, span_of(s.k[0]));
  if (!all_finite(s.k[0])) {
    fail = {a, "non-finite right-hand side"};
    return false;
  }

  double t = a;
  double h = initial_step(rhs, a, b, u, cspan_of(s.y), cspan_of(s.k[0]), tol,
                          s.ytmp, s.ynew);
  if (!(h > 0.0) || !std::isfinite(h)) h = (b - a) * 1e-6;

  const double hmin_floor = 16.0 * std::numeric_limits<double>::epsilon();

  while (t < b) {
    if (--steps_left <= 0) {
      fail = {t, "step budget exhausted"};
      return false;
    }
    bool last = false;
    if (t + h >= b) {
      h = b - t;
      last = true;
    }
    if (h < hmin_floor * std::max(std::abs(t), 1.0) && !last) {
      fail = {t, "step size underflow"};
      return false;
    }

    // Stages 2..6 (k1 already holds f(t, y)).
    auto stage = [&](int idx, std::span<const double> coef, double c) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < coef.size(); ++j) acc += coef[j] * s.k[j][i];
        s.ytmp[i] = s.y[i] + h * acc;
      }
      rhs(t + c * h, cspan_of(s.ytmp), u, span_of(s.k[idx]));
    };
    stage(1, kA2, kC[1]);
    stage(2, kA3, kC[2]);
    stage(3, kA4, kC[3]);
    stage(4, kA5, kC[4]);
    stage(5, kA6, kC[5]);

    // 5th-order solution; its derivative is stage 7 (FSAL).
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 6; ++j) acc += kB[j] * s.k[j][i];
      s.ynew[i] = s.y[i] + h * acc;
    }
    rhs(t + h, cspan_of(s.ynew), u, span_of(s.k[6]));

    double err = 0.0;
    bool finite = all_finite(s.ynew) && all_finite(s.k[6]);
    if (finite) {
      for (std::size_t i = 0; i < n; ++i) {
        double e = 0.0;
        for (int j = 0; j < 7; ++j) e += kE[j] * s.k[j][i];
        e *= h;
        const double sc =
            tol.abs + tol.rel * std::max(std::abs(s.y[i]), std::abs(s.ynew[i]));
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / static_cast<double>(n));
      if (!std::isfinite(err)) finite = false;
    }

    if (!finite) {
      h *= 0.25;
      if (h < hmin_floor * std::max(std::abs(t), 1.0)) {
        fail = {t, "non-finite state"};
        return false;
      }
      continue;
    }

    if (err <= 1.0) {
      t = last ? b : t + h;
      s.y.swap(s.ynew);
      s.k[0].swap(s.k[6]);  // FSAL
      if (last) break;
    }
    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 10.0);
    h *= factor;
  }
  return true;
}

}  // namespace detail

// Integrate rhs(t, x, u, dxdt) over [0, grid.t_end], restarting at every
// control switch and measurement time so no step straddles a discontinuity.
// Failure (non-finite state, step underflow, step budget) is reported in the
// returned SolveOutcome, never thrown.
template <class Rhs>
SolveOutcome integrate(Rhs&& rhs, std::span<const double> x0,
                       const ControlProfile& profile,
                       const IntegrationGrid& grid,
                       const Tolerances& tol = {}) {
  profile.validate();
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  if (grid.n_times < 1) throw std::invalid_argument("grid needs n_times >= 1");
  if (std::abs(profile.t_end - grid.t_end) >
      1e-9 * std::max(1.0, grid.t_end))
    throw std::invalid_argument("profile and grid duration mismatch");
  if (!detail::all_finite(x0))
    throw std::invalid_argument("initial state must be finite");

  const double t_end = grid.t_end;
  const double merge_eps = 1e-12 * std::max(1.0, t_end);

  // Breakpoints: control-segment boundaries plus measurement times.
  std::vector<double> breaks;
  breaks.push_back(0.0);
  const int np = profile.segments();
  for (int j = 1; j <= np; ++j)
    breaks.push_back(static_cast<double>(j) * t_end / np);
  const std::vector<double> meas = grid.measurement_times();
  breaks.insert(breaks.end(), meas.begin(), meas.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [&](double a, double b) {
                             return std::abs(a - b) <= merge_eps;
                           }),
               breaks.end());

  Trajectory traj;
  traj.times = meas;
  detail::StepperState stepper(x0);
  traj.segment_times.push_back(0.0);
  traj.segment_states.push_back(stepper.y);

  long steps_left = 2'000'000;
  std::size_t next_meas = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const double u = profile.value_at(0.5 * (a + b));
    SolveFailure fail;
    if (!detail::integrate_interval(rhs, a, b, u, stepper, tol, steps_left,
                                    fail)) {
      return SolveOutcome::failed(std::move(fail));
    }
    traj.segment_times.push_back(b);
    traj.segment_states.push_back(stepper.y);
    while (next_meas < meas.size() &&
           std::abs(meas[next_meas] - b) <= merge_eps) {
      traj.states.push_back(stepper.y);
      ++next_meas;
    }
  }
  if (next_meas != meas.size())
    return SolveOutcome::failed({t_end, "measurement time not reached"});
  return SolveOutcome::success(std::move(traj));
}

}  // namespace mphys::ode
