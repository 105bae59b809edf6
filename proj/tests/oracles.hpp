#pragma once

// Reference computations written independently of the library, used as
// expected values in the tests. Plain arithmetic only.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "ncwit/geometry.hpp"

namespace oracle {

using ncwit::PrepPoint;

inline const double kA = 1.0 / std::sqrt(2.0);

/// Published coordinates of the worked noisy example.
inline const std::array<PrepPoint, 4> kFig1b = {PrepPoint{0.71, 0.636}, PrepPoint{0.574, -0.78},
                                                PrepPoint{-0.76, 0.564}, PrepPoint{-0.54, -0.708}};

struct Crossing {
  double x, y, p, q;
};

// Cramer's rule on p*A + (1-p)*D = q*B + (1-q)*C.
inline Crossing crossing(const std::array<PrepPoint, 4>& s) {
  const PrepPoint A = s[0], B = s[1], C = s[2], D = s[3];
  // p (A - D) - q (B - C) = C - D
  const double a11 = A.x - D.x, a12 = -(B.x - C.x), b1 = C.x - D.x;
  const double a21 = A.y - D.y, a22 = -(B.y - C.y), b2 = C.y - D.y;
  const double det = a11 * a22 - a12 * a21;
  const double p = (b1 * a22 - a12 * b2) / det;
  const double q = (a11 * b2 - b1 * a21) / det;
  return {p * A.x + (1 - p) * D.x, p * A.y + (1 - p) * D.y, p, q};
}

inline double puseyS(const std::array<PrepPoint, 4>& s) {
  const Crossing c = crossing(s);
  const auto [x00, y00] = std::pair{s[0].x, s[0].y};
  const auto [x01, y01] = std::pair{s[1].x, s[1].y};
  const auto [x10, y10] = std::pair{s[2].x, s[2].y};
  const auto [x11, y11] = std::pair{s[3].x, s[3].y};
  return c.p * (x00 + y00 + x11 + y11) + c.q * (x01 - y01 + x10 - y10) + (y10 - x10 - x11 - y11) - 2.0;
}

inline double opDist(PrepPoint a, PrepPoint b) { return 0.5 * std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

inline double epsilon(const std::array<PrepPoint, 4>& s) {
  const PrepPoint plus{(s[0].x + s[3].x) / 2, (s[0].y + s[3].y) / 2};
  const PrepPoint minus{(s[1].x + s[2].x) / 2, (s[1].y + s[2].y) / 2};
  return opDist(plus, minus);
}

/// Random scenario in the box of half-width 2 delta around the ideal points.
inline std::array<PrepPoint, 4> boxScenario(std::mt19937_64& rng, double delta) {
  std::uniform_real_distribution<double> u(-2.0 * delta, 2.0 * delta);
  const std::array<PrepPoint, 4> id = {PrepPoint{kA, kA}, PrepPoint{kA, -kA}, PrepPoint{-kA, kA},
                                       PrepPoint{-kA, -kA}};
  std::array<PrepPoint, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = {std::clamp(id[i].x + u(rng), -1.0, 1.0), std::clamp(id[i].y + u(rng), -1.0, 1.0)};
  return out;
}

}  // namespace oracle
