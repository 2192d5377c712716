#include "uacim/opinion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uacim/errors.hpp"

namespace uacim {

namespace {

bool in_unit(double x, double tol) { return x >= -tol && x <= 1.0 + tol; }

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

bool Opinion::valid(double tol) const {
  return in_unit(b, tol) && in_unit(d, tol) && in_unit(u, tol) && in_unit(a, tol) &&
         std::abs(b + d + u - 1.0) <= tol;
}

MultinomialBeliefs MultinomialBeliefs::from_probabilities(std::span<const double> probs) {
  MultinomialBeliefs mb;
  mb.beliefs.assign(probs.begin(), probs.end());
  mb.vacuity = 0.0;
  mb.base_rates.assign(probs.size(), 1.0 / static_cast<double>(probs.size()));
  return mb;
}

bool MultinomialBeliefs::valid(double tol) const {
  if (beliefs.size() < 2 || base_rates.size() != beliefs.size()) return false;
  if (!in_unit(vacuity, tol)) return false;
  for (double x : beliefs) {
    if (!in_unit(x, tol)) return false;
  }
  const double mass = std::accumulate(beliefs.begin(), beliefs.end(), vacuity);
  const double rates = std::accumulate(base_rates.begin(), base_rates.end(), 0.0);
  return std::abs(mass - 1.0) <= tol && std::abs(rates - 1.0) <= tol;
}

Opinion opinion_from_evidence(const EvidenceCounts& ev, double base_rate) {
  if (!(ev.w > 0.0) || ev.r < 0.0 || ev.s < 0.0) {
    throw DomainError("evidence counts require r >= 0, s >= 0, W > 0");
  }
  if (!(base_rate >= 0.0 && base_rate <= 1.0)) {
    throw DomainError("base rate must lie in [0, 1]");
  }
  const double total = ev.r + ev.s + ev.w;
  return {ev.r / total, ev.s / total, ev.w / total, base_rate};
}

Projection projected(const Opinion& op) {
  return {op.b + op.a * op.u, op.d + (1.0 - op.a) * op.u};
}

double balance(double x, double y) {
  const double sum = x + y;
  if (sum <= 0.0) return 0.0;
  return 1.0 - std::abs(x - y) / sum;
}

double dissonance(const Opinion& op) { return (op.b + op.d) * balance(op.b, op.d); }

double dissonance(const MultinomialBeliefs& mb) {
  const auto& beta = mb.beliefs;
  double total = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] <= 0.0) continue;
    double weighted = 0.0;
    double others = 0.0;
    for (std::size_t j = 0; j < beta.size(); ++j) {
      if (j == i) continue;
      weighted += beta[j] * balance(beta[j], beta[i]);
      others += beta[j];
    }
    if (others > 0.0) total += beta[i] * weighted / others;
  }
  return clamp_unit(total);
}

Opinion maximize_uncertainty(const Opinion& op) {
  if (!(op.a > 0.0 && op.a < 1.0)) {
    throw DomainError("uncertainty maximization requires a base rate in (0, 1)");
  }
  const Projection p = projected(op);
  const double u_max = std::min(p.belief / op.a, p.disbelief / (1.0 - op.a));
  Opinion out{p.belief - op.a * u_max, p.disbelief - (1.0 - op.a) * u_max, u_max, op.a};
  // The limiting side is zero analytically; remove rounding residue.
  if (p.belief / op.a <= p.disbelief / (1.0 - op.a)) {
    out.b = 0.0;
  } else {
    out.d = 0.0;
  }
  out.b = clamp_unit(out.b);
  out.d = clamp_unit(out.d);
  out.u = clamp_unit(out.u);
  return out;
}

MultinomialBeliefs maximize_uncertainty(const MultinomialBeliefs& mb) {
  const std::size_t k = mb.beliefs.size();
  if (k < 2 || mb.base_rates.size() != k) {
    throw DomainError("multinomial beliefs need K >= 2 masses and K base rates");
  }
  std::vector<double> projected_mass(k);
  double u_max = 0.0;
  std::size_t limiting = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(mb.base_rates[i] > 0.0)) throw DomainError("base rates must be positive");
    projected_mass[i] = mb.beliefs[i] + mb.base_rates[i] * mb.vacuity;
    const double ratio = projected_mass[i] / mb.base_rates[i];
    if (i == 0 || ratio < u_max) {
      u_max = ratio;
      limiting = i;
    }
  }
  MultinomialBeliefs out;
  out.base_rates = mb.base_rates;
  out.vacuity = clamp_unit(u_max);
  out.beliefs.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.beliefs[i] = i == limiting ? 0.0
                                   : std::max(0.0, projected_mass[i] - mb.base_rates[i] * u_max);
  }
  return out;
}

// 1 - c(1 - u) written as (1 - c) + c u, which keeps full relative precision
// when both c and 1 - u are close to 1.
namespace {
double discounted_uncertainty(double u, double trust) { return (1.0 - trust) + trust * u; }
}  // namespace

Opinion discount(const Opinion& op, double trust) {
  if (!(trust >= 0.0 && trust <= 1.0)) throw DomainError("trust weight must lie in [0, 1]");
  return {trust * op.b, trust * op.d, discounted_uncertainty(op.u, trust), op.a};
}

Opinion fuse(const Opinion& own, const Opinion& other, double trust) {
  if (!(trust >= 0.0 && trust <= 1.0)) throw DomainError("trust weight must lie in [0, 1]");
  const double uo = discounted_uncertainty(other.u, trust);
  const double certain_other = trust * (1.0 - other.u);  // 1 - uo
  // beta = 1 - c(1 - u_i)(1 - u_j) = u_i + uo (1 - u_i); every term is non-negative.
  const double beta = own.u + uo * (1.0 - own.u);
  if (!(beta > 0.0)) {
    throw FusionDegenerate("consensus of two dogmatic opinions under full trust");
  }
  Opinion out;
  out.b = (own.b * uo + trust * other.b * own.u) / beta;
  out.d = (own.d * uo + trust * other.d * own.u) / beta;
  out.u = own.u * uo / beta;

  if (own.a == other.a) {
    out.a = own.a;
  } else {
    // Weighted mean of the two base rates; weights uo (1 - u_i) and u_i (1 - uo).
    const double w_own = uo * (1.0 - own.u);
    const double w_other = own.u * certain_other;
    const double denom = w_own + w_other;
    if (!(denom > 0.0)) {
      // Both sides vacuous: nothing to weigh, keep the receiver's prior.
      out.a = own.a;
    } else {
      out.a = (own.a * w_own + other.a * w_other) / denom;
    }
  }
  out.b = clamp_unit(out.b);
  out.d = clamp_unit(out.d);
  out.u = clamp_unit(out.u);
  out.a = clamp_unit(out.a);
  return out;
}

double entropy_normalized(std::span<const double> probs) {
  if (probs.size() < 2) return 0.0;
  double h = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw DomainError("probabilities must be non-negative");
    if (p > 0.0) h -= p * std::log(p);
  }
  return clamp_unit(h / std::log(static_cast<double>(probs.size())));
}

}  // namespace uacim
