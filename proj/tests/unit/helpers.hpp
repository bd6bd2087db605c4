#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "doctest.h"
#include "hhb/expansion.hpp"
#include "hhb/geometry.hpp"

namespace testutil {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline std::vector<std::vector<double>> random_points(int n, int count, double radius,
                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> out;
  for (int i = 0; i < count; ++i) out.push_back(hhb::random_ball_point(n, radius, rng));
  return out;
}

inline hhb::ScalarField field(const hhb::HHarmonicFunction& f) {
  return [f](std::span<const double> x) { return f(x); };
}

template <class F>
hhb::ScalarField field_of(F f) {
  return [f](std::span<const double> x) { return f(x); };
}

inline std::vector<double> e(int n, int i, double r = 1.0) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  v[static_cast<std::size_t>(i)] = r;
  return v;
}

}  // namespace testutil
