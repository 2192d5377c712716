#include "uacim/users.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uacim/errors.hpp"

namespace uacim {

std::string_view to_string(TrustModelKind kind) {
  switch (kind) {
    case TrustModelKind::kUom: return "UOM";
    case TrustModelKind::kHom: return "HOM";
    case TrustModelKind::kNom: return "NOM";
  }
  return "?";
}

TrustModelKind parse_trust_model(std::string_view name) {
  if (name == "UOM" || name == "uom") return TrustModelKind::kUom;
  if (name == "HOM" || name == "hom") return TrustModelKind::kHom;
  if (name == "NOM" || name == "nom") return TrustModelKind::kNom;
  throw DomainError("unknown opinion model '" + std::string(name) + "'");
}

BehaviorProfile BehaviorProfile::draw(Rng& rng) {
  BehaviorProfile p;
  p.read = kLevels[rng.below(kLevels.size())];
  p.share = kLevels[rng.below(kLevels.size())];
  return p;
}

Opinion initial_opinion(UserRole role, double legitimate_base_rate) {
  switch (role) {
    case UserRole::kTip: return opinion_from_evidence(kTipEvidence, 1.0);
    case UserRole::kFip: return opinion_from_evidence(kFipEvidence, 0.0);
    case UserRole::kLegitimate: break;
  }
  return opinion_from_evidence(kLegitimateEvidence, legitimate_base_rate);
}

UserState init_user(std::uint32_t id, UserRole role, double base_rate, Rng& rng) {
  UserState user;
  user.id = id;
  user.role = role;
  user.opinion = initial_opinion(role, base_rate);
  user.behavior = BehaviorProfile::draw(rng);
  return user;
}

std::optional<double> trust_weight(const TrustModel& model, const Opinion& receiver,
                                   const Opinion& sender) {
  switch (model.kind) {
    case TrustModelKind::kUom:
      return (1.0 - receiver.u) * (1.0 - sender.u);
    case TrustModelKind::kHom: {
      const double norm_r = std::hypot(receiver.b, receiver.d);
      const double norm_s = std::hypot(sender.b, sender.d);
      if (norm_r <= 0.0 || norm_s <= 0.0) return std::nullopt;
      const double cosine = (receiver.b * sender.b + receiver.d * sender.d) / (norm_r * norm_s);
      return std::clamp(cosine, 0.0, 1.0);
    }
    case TrustModelKind::kNom:
      return 1.0;
  }
  return 1.0;
}

void receive_opinion(const TrustModel& model, UserState& receiver, const Opinion& sender) {
  if (receiver.role != UserRole::kLegitimate) return;
  Opinion& own = receiver.opinion;
  if (model.kind == TrustModelKind::kUom && own.u < model.vacuity_threshold &&
      dissonance(own) > model.dissonance_threshold && own.a > 0.0 && own.a < 1.0) {
    own = maximize_uncertainty(own);
  }
  const double c = trust_weight(model, own, sender).value_or(0.0);
  own = fuse(own, sender, c);
}

Affiliation affiliation(const Opinion& op) {
  const Projection p = projected(op);
  if (p.belief > 0.5) return Affiliation::kTrue;
  if (p.disbelief > 0.5) return Affiliation::kFalse;
  return Affiliation::kNeutral;
}

}  // namespace uacim
