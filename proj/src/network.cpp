#include "mphys/network.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mphys/rng.hpp"

namespace mphys::ude {

namespace {

constexpr int kW1 = 0, kB1 = 5, kW2 = 10, kB2 = 35, kW3 = 40, kB3 = 45;

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

double network_eval(const NetworkParams& p, double cs) {
  if (!std::isfinite(cs))
    throw std::domain_error("network_eval: non-finite input");
  const auto& v = p.values;
  double a1[kHiddenUnits], a2[kHiddenUnits];
  for (int i = 0; i < kHiddenUnits; ++i)
    a1[i] = std::tanh(v[kW1 + i] * cs + v[kB1 + i]);
  for (int i = 0; i < kHiddenUnits; ++i) {
    double z = v[kB2 + i];
    for (int j = 0; j < kHiddenUnits; ++j) z += v[kW2 + i * kHiddenUnits + j] * a1[j];
    a2[i] = std::tanh(z);
  }
  double z3 = v[kB3];
  for (int i = 0; i < kHiddenUnits; ++i) z3 += v[kW3 + i] * a2[i];
  return sigmoid(z3);
}

NetworkGradients network_eval_grad(const NetworkParams& p, double cs) {
  if (!std::isfinite(cs))
    throw std::domain_error("network_eval_grad: non-finite input");
  const auto& v = p.values;

  double a1[kHiddenUnits], a2[kHiddenUnits];
  for (int i = 0; i < kHiddenUnits; ++i)
    a1[i] = std::tanh(v[kW1 + i] * cs + v[kB1 + i]);
  for (int i = 0; i < kHiddenUnits; ++i) {
    double z = v[kB2 + i];
    for (int j = 0; j < kHiddenUnits; ++j) z += v[kW2 + i * kHiddenUnits + j] * a1[j];
    a2[i] = std::tanh(z);
  }
  double z3 = v[kB3];
  for (int i = 0; i < kHiddenUnits; ++i) z3 += v[kW3 + i] * a2[i];
  const double out = sigmoid(z3);

  NetworkGradients g;
  g.value = out;
  const double s3 = out * (1.0 - out);  // d out / d z3

  g.d_theta[kB3] = s3;
  double delta2[kHiddenUnits];
  for (int i = 0; i < kHiddenUnits; ++i) {
    g.d_theta[kW3 + i] = s3 * a2[i];
    delta2[i] = s3 * v[kW3 + i] * (1.0 - a2[i] * a2[i]);
  }
  double delta1[kHiddenUnits] = {};
  for (int i = 0; i < kHiddenUnits; ++i) {
    g.d_theta[kB2 + i] = delta2[i];
    for (int j = 0; j < kHiddenUnits; ++j) {
      g.d_theta[kW2 + i * kHiddenUnits + j] = delta2[i] * a1[j];
      delta1[j] += delta2[i] * v[kW2 + i * kHiddenUnits + j];
    }
  }
  double d_cs = 0.0;
  for (int j = 0; j < kHiddenUnits; ++j) {
    delta1[j] *= 1.0 - a1[j] * a1[j];
    g.d_theta[kB1 + j] = delta1[j];
    g.d_theta[kW1 + j] = delta1[j] * cs;
    d_cs += delta1[j] * v[kW1 + j];
  }
  g.d_cs = d_cs;
  return g;
}

NetworkParams random_init(std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  NetworkParams p;
  auto fill_weights = [&](int begin, int count) {
    for (int i = 0; i < count; ++i)
      p.values[begin + i] = rng::uniform_in(eng, -0.5, 0.5);
  };
  fill_weights(kW1, 5);
  fill_weights(kW2, 25);
  fill_weights(kW3, 5);
  // biases stay zero
  return p;
}

}  // namespace mphys::ude
