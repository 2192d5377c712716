#pragma once

// Subjective Logic algebra for binomial opinions, plus the multinomial
// uncertainty measures used on a policy's action distribution.
//
// All functions are pure and thread-safe. Comparisons use kTolerance.

#include <span>
#include <vector>

namespace uacim {

inline constexpr double kTolerance = 1e-9;

// Binomial opinion (belief, disbelief, uncertainty, base rate).
// Invariant: b + d + u == 1 and every component lies in [0, 1].
struct Opinion {
  double b = 0.0;
  double d = 0.0;
  double u = 1.0;
  double a = 0.5;

  static Opinion vacuous(double base_rate) { return {0.0, 0.0, 1.0, base_rate}; }

  bool valid(double tol = kTolerance) const;
  bool operator==(const Opinion&) const = default;
};

struct EvidenceCounts {
  double r = 0.0;  // supporting
  double s = 0.0;  // refuting
  double w = 2.0;  // non-informative prior weight
};

struct Projection {
  double belief = 0.0;
  double disbelief = 0.0;
};

// K-ary belief masses with an explicit vacuity and per-class base rates.
struct MultinomialBeliefs {
  std::vector<double> beliefs;
  double vacuity = 0.0;
  std::vector<double> base_rates;

  static MultinomialBeliefs from_probabilities(std::span<const double> probs);
  bool valid(double tol = kTolerance) const;
};

Opinion opinion_from_evidence(const EvidenceCounts& ev, double base_rate);

Projection projected(const Opinion& op);

// Balance of two masses, 1 - |x - y| / (x + y); 0 when x + y == 0.
double balance(double x, double y);

double dissonance(const Opinion& op);
double dissonance(const MultinomialBeliefs& mb);

// Moves as much mass as possible into uncertainty while keeping the projected
// probabilities fixed. Requires a in (0, 1).
Opinion maximize_uncertainty(const Opinion& op);
MultinomialBeliefs maximize_uncertainty(const MultinomialBeliefs& mb);

// Trust discounting of another user's opinion by a trust weight c in [0, 1].
Opinion discount(const Opinion& op, double trust);

// Consensus of `own` with `other` discounted by `trust`.
// Throws FusionDegenerate when both are dogmatic under full trust.
Opinion fuse(const Opinion& own, const Opinion& other, double trust);

// Shannon entropy divided by log(K); 0 log 0 == 0.
double entropy_normalized(std::span<const double> probs);

}  // namespace uacim
