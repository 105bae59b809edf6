#pragma once

// Two-bit parity-oblivious multiplexing with a noisy parity leak of size epsilon.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "ncwit/errors.hpp"
#include "ncwit/geometry.hpp"
#include "ncwit/ontology.hpp"
#include "ncwit/witnesses.hpp"

namespace ncwit {

/// Average success of Bob guessing bit x_y when preparation P_x is sent and
/// measurement X (y = 0) or Y (y = 1) read as the guess.
inline double pomSuccess(const Scenario& s) {
  auto p0x = [&](Label l) { return probZeroX(s[l]); };
  auto p0y = [&](Label l) { return probZeroY(s[l]); };
  return (p0x(Label::k00) + p0x(Label::k01) + (1.0 - p0x(Label::k10)) + (1.0 - p0x(Label::k11)) +
          p0y(Label::k00) + p0y(Label::k10) + (1.0 - p0y(Label::k01)) + (1.0 - p0y(Label::k11))) /
         8.0;
}

/// Success rewritten as the mean distinguishability of the "first bit" and
/// "second bit" mixture pairs.
inline double pomSuccessViaDistinguishability(const Scenario& s) {
  const PrepPoint firstZero = 0.5 * (s[Label::k00] + s[Label::k01]);
  const PrepPoint firstOne = 0.5 * (s[Label::k10] + s[Label::k11]);
  const PrepPoint secondZero = 0.5 * (s[Label::k00] + s[Label::k10]);
  const PrepPoint secondOne = 0.5 * (s[Label::k01] + s[Label::k11]);
  return 0.5 * operationalDistinguishability(firstZero, firstOne) +
         0.5 * operationalDistinguishability(secondZero, secondOne);
}

namespace detail {

// Bit b of a lookup table stored in an integer.
inline int bitOf(std::uint32_t table, unsigned pos) { return static_cast<int>((table >> pos) & 1U); }

// Encoding table: bit (2 x1 + x2) is the message for input (x1, x2).
inline bool parityOblivious(std::uint32_t enc) {
  const int evenOnes = bitOf(enc, 0) + bitOf(enc, 3);  // inputs 00, 11
  const int oddOnes = bitOf(enc, 1) + bitOf(enc, 2);   // inputs 01, 10
  return evenOnes == oddOnes;
}

}  // namespace detail

/// Best classical success: enumerate every deterministic one-bit encoding that
/// hides the parity, every decoder without the leak, and every decoder that
/// also sees the parity bit (available with probability epsilon).
/// Shared randomness is a convex mixture of these and cannot do better.
inline double classicalBruteForce(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0, 1]");
  double best = 0.0;
  for (std::uint32_t enc = 0; enc < 16; ++enc) {
    if (!detail::parityOblivious(enc)) continue;
    // decoder without parity: bit (2 m + y) -> guess; 16 tables
    int bestPlain = 0;
    for (std::uint32_t dec = 0; dec < 16; ++dec) {
      int wins = 0;
      for (unsigned x = 0; x < 4; ++x) {
        const unsigned m = static_cast<unsigned>(detail::bitOf(enc, x));
        for (unsigned y = 0; y < 2; ++y) {
          const int target = y == 0 ? static_cast<int>(x >> 1) : static_cast<int>(x & 1U);
          wins += detail::bitOf(dec, 2 * m + y) == target;
        }
      }
      bestPlain = std::max(bestPlain, wins);
    }
    // decoder with parity: bit (4 m + 2 parity + y) -> guess; 256 tables
    int bestLeak = 0;
    for (std::uint32_t dec = 0; dec < 256; ++dec) {
      int wins = 0;
      for (unsigned x = 0; x < 4; ++x) {
        const unsigned m = static_cast<unsigned>(detail::bitOf(enc, x));
        const unsigned parity = (x >> 1) ^ (x & 1U);
        for (unsigned y = 0; y < 2; ++y) {
          const int target = y == 0 ? static_cast<int>(x >> 1) : static_cast<int>(x & 1U);
          wins += detail::bitOf(dec, 4 * m + 2 * parity + y) == target;
        }
      }
      bestLeak = std::max(bestLeak, wins);
    }
    best = std::max(best, (1.0 - epsilon) * bestPlain / 8.0 + epsilon * bestLeak / 8.0);
  }
  return best;
}

struct PomOutcome {
  double successProbability = 0.0;
  double epsilon = 0.0;
  double classicalBound = 0.75;
  bool exceedsClassical = false;
  double parityGap = 0.0;
  // exceeding the classical bound must come with a positive parity gap
  bool consistent = true;
};

inline PomOutcome pomAnalysis(const Scenario& s) {
  PomOutcome out;
  out.epsilon = parityMixtures(s).epsilon;
  out.successProbability = pomSuccess(s);
  out.classicalBound = 0.75 + out.epsilon / 4.0;
  out.exceedsClassical = out.successProbability > out.classicalBound + kVerdictTol;
  out.parityGap = minParityTv(s) - out.epsilon;
  out.consistent = !out.exceedsClassical || out.parityGap > kVerdictTol;
  return out;
}

}  // namespace ncwit
