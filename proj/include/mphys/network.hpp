#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace mphys::ude {

inline constexpr int kHiddenUnits = 5;
inline constexpr int kParamCount = 46;

// 1-5-5-1 feed-forward network: tanh hidden layers, sigmoid output, so the
// predicted growth rate always lies in (0, 1).
//
// Flat layout (row-major per layer):
//   [0,5)   w1 (5x1)     [5,10)  b1
//   [10,35) w2 (5x5)     [35,40) b2
//   [40,45) w3 (1x5)     [45]    b3
struct NetworkParams {
  std::array<double, kParamCount> values{};
};

// Network output for substrate concentration `cs`. Throws std::domain_error
// on a non-finite input.
double network_eval(const NetworkParams& p, double cs);

struct NetworkGradients {
  double value = 0.0;   // network output
  double d_cs = 0.0;    // d output / d cs
  std::array<double, kParamCount> d_theta{};
};

// Forward pass plus reverse-mode derivatives w.r.t. the input and all 46
// parameters.
NetworkGradients network_eval_grad(const NetworkParams& p, double cs);

// Weights i.i.d. uniform on [-0.5, 0.5], biases zero.
NetworkParams random_init(std::uint64_t seed);

}  // namespace mphys::ude
