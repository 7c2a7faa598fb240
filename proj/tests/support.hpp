#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "sharpfield/geom.hpp"

namespace testing {

using sharpfield::geom::Vec3;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Vec3 random_vec(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

inline double max_abs(const Vec3& v) { return std::max({std::abs(v.x1), std::abs(v.x2), std::abs(v.x3)}); }

}  // namespace testing
