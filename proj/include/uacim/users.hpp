#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "uacim/opinion.hpp"
#include "uacim/rng.hpp"

namespace uacim {

enum class UserRole : std::uint8_t { kLegitimate, kTip, kFip };

enum class Affiliation : std::uint8_t { kNeutral, kTrue, kFalse };

enum class TrustModelKind : std::uint8_t { kUom, kHom, kNom };

std::string_view to_string(TrustModelKind kind);
TrustModelKind parse_trust_model(std::string_view name);

// Reading / sharing probabilities, each one of {1, 0.5, 0.25, 0.1}.
struct BehaviorProfile {
  double read = 1.0;
  double share = 1.0;

  static constexpr std::array<double, 4> kLevels{1.0, 0.5, 0.25, 0.1};
  static BehaviorProfile draw(Rng& rng);
  double activity() const { return read * share; }
};

struct UserState {
  std::uint32_t id = 0;
  UserRole role = UserRole::kLegitimate;
  Opinion opinion;
  BehaviorProfile behavior;
};

struct TrustModel {
  TrustModelKind kind = TrustModelKind::kUom;
  double vacuity_threshold = 0.01;     // T_v, UOM only
  double dissonance_threshold = 0.6;   // T_d, UOM only
};

// Evidence triples used to initialize each role.
inline constexpr EvidenceCounts kLegitimateEvidence{1.0, 1.0, 101.0};
inline constexpr EvidenceCounts kTipEvidence{100.0, 1.0, 2.0};
inline constexpr EvidenceCounts kFipEvidence{1.0, 100.0, 2.0};

Opinion initial_opinion(UserRole role, double legitimate_base_rate);

// Fresh user with a role-specific opinion and a behavior profile drawn from rng.
UserState init_user(std::uint32_t id, UserRole role, double base_rate, Rng& rng);

// Trust weight c in [0, 1]. Empty for HOM when either (b, d) vector is zero.
std::optional<double> trust_weight(const TrustModel& model, const Opinion& receiver,
                                   const Opinion& sender);

// Legitimate receiver reads `sender` and updates its opinion in place.
// Seeds never update; calling this on a TIP/FIP is a no-op.
void receive_opinion(const TrustModel& model, UserState& receiver, const Opinion& sender);

Affiliation affiliation(const Opinion& op);

}  // namespace uacim
