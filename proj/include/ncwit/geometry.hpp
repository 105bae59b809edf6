#pragma once

// Coordinate algebra for four preparations measured by two binary-outcome
// measurements X and Y. A preparation is the point (x, y) with
// x = P(0|X) - P(1|X) and y = P(0|Y) - P(1|Y), living in the gbit square.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ncwit/errors.hpp"

namespace ncwit {

inline constexpr double kGeomTol = 1e-9;
inline constexpr double kParallelTol = 1e-12;
inline constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

struct PrepPoint {
  double x = 0.0;
  double y = 0.0;

  friend constexpr PrepPoint operator+(PrepPoint a, PrepPoint b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr PrepPoint operator-(PrepPoint a, PrepPoint b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr PrepPoint operator*(double s, PrepPoint a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(PrepPoint, PrepPoint) = default;
};

inline double norm(PrepPoint a) { return std::hypot(a.x, a.y); }
inline constexpr double cross(PrepPoint a, PrepPoint b) { return a.x * b.y - a.y * b.x; }
inline constexpr double dot(PrepPoint a, PrepPoint b) { return a.x * b.x + a.y * b.y; }

inline bool inGbitSquare(PrepPoint p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::abs(p.x) <= 1.0 && std::abs(p.y) <= 1.0;
}

/// Labels of the four preparations; the bit pair (i, j) is the POM input string.
enum class Label : std::size_t { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };

inline constexpr std::array<Label, 4> kLabels = {Label::k00, Label::k01, Label::k10, Label::k11};

inline constexpr std::size_t index(Label l) { return static_cast<std::size_t>(l); }

inline std::string labelName(Label l) {
  static constexpr std::array<const char*, 4> names = {"00", "01", "10", "11"};
  return names[index(l)];
}

/// Coordinates from the probabilities of outcome 0 under X and Y.
inline PrepPoint coordsFromProbs(double p0x, double p0y) {
  auto ok = [](double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; };
  if (!ok(p0x) || !ok(p0y)) {
    throw DomainError("outcome probabilities must lie in [0, 1]");
  }
  return {2.0 * p0x - 1.0, 2.0 * p0y - 1.0};
}

inline double probZeroX(PrepPoint p) { return 0.5 * (1.0 + p.x); }
inline double probZeroY(PrepPoint p) { return 0.5 * (1.0 + p.y); }

/// Largest difference in outcome probabilities over the two measurements.
inline double opDistance(PrepPoint a, PrepPoint b) {
  return 0.5 * std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

/// The quantum-optimal preparations at angles pi/4, 7pi/4, 3pi/4, 5pi/4.
inline constexpr std::array<PrepPoint, 4> kIdealPoints = {
    PrepPoint{kInvSqrt2, kInvSqrt2}, PrepPoint{kInvSqrt2, -kInvSqrt2},
    PrepPoint{-kInvSqrt2, kInvSqrt2}, PrepPoint{-kInvSqrt2, -kInvSqrt2}};

inline constexpr PrepPoint ideal(Label l) { return kIdealPoints[index(l)]; }

/// Parameters locating c on the two diagonals: c = p P00 + (1-p) P11 = q P01 + (1-q) P10.
struct DiagonalCrossing {
  PrepPoint c;
  double p = 0.5;
  double q = 0.5;
};

namespace detail {

// Parameter of the point on segment [from, to] closest to z, and whether z lies on it.
inline bool pointOnSegment(PrepPoint z, PrepPoint from, PrepPoint to, double& param) {
  PrepPoint d = to - from;
  double len2 = dot(d, d);
  if (len2 < kParallelTol * kParallelTol) {
    param = 0.5;
    return norm(z - from) <= kGeomTol;
  }
  param = std::clamp(dot(z - from, d) / len2, 0.0, 1.0);
  return norm(from + param * d - z) <= kGeomTol;
}

// Segments: A = P11 + s (P00 - P11), B = P10 + t (P01 - P10); s is p and t is q.
inline DiagonalCrossing crossDiagonals(const std::array<PrepPoint, 4>& pts) {
  const PrepPoint p00 = pts[0], p01 = pts[1], p10 = pts[2], p11 = pts[3];
  const PrepPoint dA = p00 - p11;
  const PrepPoint dB = p01 - p10;
  const bool degA = norm(dA) < kParallelTol;
  const bool degB = norm(dB) < kParallelTol;

  // A collapsed diagonal is a single point; it must sit on the other diagonal.
  // The weight on the collapsed pair is then arbitrary and fixed at 1/2.
  if (degA || degB) {
    DiagonalCrossing out;
    if (degA) {
      double t = 0.5;
      if (!pointOnSegment(p11, p10, p01, t)) {
        throw DegenerateScenario("collapsed diagonal P00-P11 does not meet diagonal P01-P10");
      }
      out.c = p11;
      out.p = 0.5;
      out.q = degB ? 0.5 : t;
    } else {
      double s = 0.5;
      if (!pointOnSegment(p10, p11, p00, s)) {
        throw DegenerateScenario("collapsed diagonal P01-P10 does not meet diagonal P00-P11");
      }
      out.c = p10;
      out.p = s;
      out.q = 0.5;
    }
    return out;
  }

  // s dA - t dB = P10 - P11
  const PrepPoint rhs = p10 - p11;
  const double det = cross(dB, dA);
  if (std::abs(det) < kParallelTol) {
    throw DegenerateScenario("diagonals are parallel; no a posteriori operational equivalence");
  }
  const double s = cross(dB, rhs) / det;
  const double t = cross(dA, rhs) / det;
  if (s < -kGeomTol || s > 1.0 + kGeomTol || t < -kGeomTol || t > 1.0 + kGeomTol) {
    throw DegenerateScenario("diagonals only meet outside the segments");
  }
  DiagonalCrossing out;
  out.p = std::clamp(s, 0.0, 1.0);
  out.q = std::clamp(t, 0.0, 1.0);
  out.c = p11 + out.p * dA;
  return out;
}

}  // namespace detail

/// Four labeled preparations whose diagonals P00-P11 and P01-P10 meet.
class Scenario {
 public:
  explicit Scenario(const std::array<PrepPoint, 4>& pts) : pts_(pts) {
    for (Label l : kLabels) {
      if (!inGbitSquare(pts_[index(l)])) {
        throw DomainError("preparation " + labelName(l) + " lies outside [-1,1]^2");
      }
    }
    crossing_ = detail::crossDiagonals(pts_);
  }

  Scenario(PrepPoint p00, PrepPoint p01, PrepPoint p10, PrepPoint p11)
      : Scenario(std::array<PrepPoint, 4>{p00, p01, p10, p11}) {}

  static Scenario idealScenario() { return Scenario(kIdealPoints); }

  const PrepPoint& operator[](Label l) const { return pts_[index(l)]; }
  const std::array<PrepPoint, 4>& points() const { return pts_; }
  const DiagonalCrossing& crossing() const { return crossing_; }

  /// Largest operational distance of any preparation from its ideal target.
  double delta() const {
    double d = 0.0;
    for (Label l : kLabels) d = std::max(d, opDistance(pts_[index(l)], ideal(l)));
    return d;
  }

 private:
  std::array<PrepPoint, 4> pts_;
  DiagonalCrossing crossing_;
};

inline double noiseDelta(const Scenario& s) { return s.delta(); }

struct ParityMixtures {
  PrepPoint pPlus;
  PrepPoint pMinus;
  double epsilon = 0.0;
};

inline ParityMixtures parityMixtures(const Scenario& s) {
  ParityMixtures m;
  m.pPlus = 0.5 * (s[Label::k00] + s[Label::k11]);
  m.pMinus = 0.5 * (s[Label::k01] + s[Label::k10]);
  m.epsilon = opDistance(m.pPlus, m.pMinus);
  return m;
}

inline PrepPoint diagonalIntersection(const Scenario& s) { return s.crossing().c; }

struct DecompositionWeights {
  PrepPoint c;
  double p = 0.5;
  double q = 0.5;
  double rPlus = 0.0;
  double rMinus = 0.0;
  double r = 0.0;
  PrepPoint pPlusPrime;
  PrepPoint pMinusPrime;
};

/// Weights of the a posteriori equivalence and the common weight r with
/// c = (1-r) P+ + r P+' = (1-r) P- + r P-'.
inline DecompositionWeights decompositionWeights(const Scenario& s) {
  const DiagonalCrossing& x = s.crossing();
  const ParityMixtures mix = parityMixtures(s);
  DecompositionWeights w;
  w.c = x.c;
  w.p = x.p;
  w.q = x.q;

  auto ratio = [&](PrepPoint mid, PrepPoint far) {
    const double num = norm(mid - x.c);
    const double den = norm(mid - far);
    if (den < kParallelTol) return 0.0;  // collapsed diagonal: c is the midpoint
    return num / den;
  };
  w.rPlus = ratio(mix.pPlus, x.p >= 0.5 ? s[Label::k00] : s[Label::k11]);
  w.rMinus = ratio(mix.pMinus, x.q >= 0.5 ? s[Label::k01] : s[Label::k10]);
  w.r = std::max(w.rPlus, w.rMinus);

  if (w.r <= 0.0) {
    w.pPlusPrime = mix.pPlus;
    w.pMinusPrime = mix.pMinus;
  } else {
    w.pPlusPrime = mix.pPlus + (1.0 / w.r) * (x.c - mix.pPlus);
    w.pMinusPrime = mix.pMinus + (1.0 / w.r) * (x.c - mix.pMinus);
  }
  return w;
}

/// Counter-clockwise convex hull (monotone chain); collinear points dropped.
inline std::vector<PrepPoint> convexHull(std::vector<PrepPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](PrepPoint a, PrepPoint b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<PrepPoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const PrepPoint& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const PrepPoint& p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

/// Point where the ray from `origin` through `through` leaves the convex hull of `vertices`.
inline PrepPoint rayPolytopeExit(PrepPoint origin, PrepPoint through, std::span<const PrepPoint> vertices) {
  const PrepPoint dir = through - origin;
  if (norm(dir) < kParallelTol) throw DomainError("ray direction is zero");
  const std::vector<PrepPoint> hull = convexHull({vertices.begin(), vertices.end()});
  if (hull.size() < 3) throw DomainError("hull has empty interior");

  double tExit = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const PrepPoint a = hull[i];
    const PrepPoint b = hull[(i + 1) % hull.size()];
    const PrepPoint edge = b - a;
    const PrepPoint outward{edge.y, -edge.x};
    const double slack = dot(outward, a - origin);  // > 0 when origin is inside
    if (slack <= kGeomTol * norm(edge)) {
      throw DomainError("ray origin is not strictly inside the hull");
    }
    const double rate = dot(outward, dir);
    if (rate > 0.0) tExit = std::min(tExit, slack / rate);
  }
  return origin + tExit * dir;
}

}  // namespace ncwit
