#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mphys/ode_core.hpp"
#include "mphys/reactor.hpp"

namespace mphys::plant {

// Ground-truth virtual bioreactor. This module is the only place that knows
// the true growth-rate law and its parameters.
struct PlantParams {
  double mu_max = 0.421;  // 1/h
  double k_s = 4.39;      // g/l
  reactor::Constants consts{};
  std::array<double, 3> x0{1.0, 0.5, 1.0};  // C_s (g/l), C_x (g/l), V (l)
  double noise_sd = 0.1;                    // g/l, on measured C_s
  double t_end = 15.0;                      // h
  int n_measurements = 15;
  double u_min = 0.0;  // l/h
  double u_max = 0.1;  // l/h

  ode::IntegrationGrid grid() const { return {t_end, n_measurements}; }
  void validate() const;  // throws ConfigError on a bad parameter set
};

// Monotone saturating growth law; throws std::domain_error for cs < 0.
double monod(double cs, double mu_max, double k_s);

void true_rhs(double t, std::span<const double> x, double u,
              std::span<double> dxdt, const PlantParams& p);

// One executed experiment: the applied profile and the noisy observations.
struct ExperimentRecord {
  ode::ControlProfile profile;
  std::vector<double> measurement_times;
  std::vector<double> measured_cs;
  std::uint64_t rng_seed = 0;
};

// Noise-free solve of the true dynamics under the given profile.
ode::SolveOutcome simulate_truth(const PlantParams& p,
                                 const ode::ControlProfile& profile,
                                 const ode::Tolerances& tol = {});

// Runs the virtual experiment: integrates the true dynamics and corrupts C_s
// at each measurement time with i.i.d. Gaussian noise of sd `noise_sd`.
// Deterministic given the seed. Throws NumericalError if the plant fails to
// integrate (an admissible profile should never cause that).
ExperimentRecord run_experiment(const PlantParams& p,
                                const ode::ControlProfile& profile,
                                std::uint64_t seed,
                                const ode::Tolerances& tol = {});

}  // namespace mphys::plant
