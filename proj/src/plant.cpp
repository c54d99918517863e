#include "mphys/plant.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mphys/errors.hpp"
#include "mphys/rng.hpp"

namespace mphys::plant {

void PlantParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("plant config: ") + what);
  };
  require(mu_max > 0.0, "mu_max must be > 0");
  require(k_s > 0.0, "K_s must be > 0");
  require(consts.y_xs > 0.0, "y_xs must be > 0");
  require(consts.c_s_in > 0.0, "C_s_in must be > 0");
  require(consts.m >= 0.0, "m must be >= 0");
  require(x0[2] > 0.0, "V(0) must be > 0");
  require(x0[0] >= 0.0 && x0[1] >= 0.0, "initial concentrations must be >= 0");
  require(noise_sd >= 0.0, "noise_sd must be >= 0");
  require(t_end > 0.0, "t_end must be > 0");
  require(n_measurements >= 1, "N must be >= 1");
  require(u_min <= u_max, "u_min must be <= u_max");
}

double monod(double cs, double mu_max, double k_s) {
  if (cs < 0.0) throw std::domain_error("monod: negative substrate");
  return mu_max * cs / (k_s + cs);
}

void true_rhs(double t, std::span<const double> x, double u,
              std::span<double> dxdt, const PlantParams& p) {
  (void)t;
  // The growth law is clamped to 0 below cs = 0; trajectories only dip there
  // by solver-roundoff amounts.
  reactor::rhs(
      [&p](double cs) {
        return cs > 0.0 ? p.mu_max * cs / (p.k_s + cs) : 0.0;
      },
      x, u, dxdt, p.consts);
}

ode::SolveOutcome simulate_truth(const PlantParams& p,
                                 const ode::ControlProfile& profile,
                                 const ode::Tolerances& tol) {
  return ode::integrate(
      [&p](double t, std::span<const double> x, double u,
           std::span<double> dxdt) { true_rhs(t, x, u, dxdt, p); },
      std::span<const double>(p.x0), profile, p.grid(), tol);
}

ExperimentRecord run_experiment(const PlantParams& p,
                                const ode::ControlProfile& profile,
                                std::uint64_t seed,
                                const ode::Tolerances& tol) {
  const ode::SolveOutcome outcome = simulate_truth(p, profile, tol);
  if (!outcome.ok()) {
    throw NumericalError("plant integration failed at t = " +
                         std::to_string(outcome.failure().t_fail) + " (" +
                         outcome.failure().reason + ")");
  }
  const ode::Trajectory& traj = outcome.trajectory();

  ExperimentRecord rec;
  rec.profile = profile;
  rec.measurement_times = traj.times;
  rec.rng_seed = seed;
  rec.measured_cs.reserve(traj.states.size());
  rng::GaussianSampler noise(seed);
  for (const auto& state : traj.states)
    rec.measured_cs.push_back(state[0] + p.noise_sd * noise.next());
  return rec;
}

}  // namespace mphys::plant
