#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ertrust {

using UserId = std::uint32_t;

/// Coefficients of the increase / decrease / decay difference equations.
/// Defaults are the reference parameter set used by the simulation study.
struct ExperienceParams {
  double max_exp = 1.0;
  double min_exp = 0.0;
  double exp0 = 0.3;       // bootstrap value of a new relation
  double alpha = 0.1;      // maximum increase
  double beta = 2.0;       // decrease rate relative to the increase
  double theta_co = 0.6;   // qod >= theta_co is cooperative
  double theta_unco = 0.3; // qod <= theta_unco is uncooperative
  double delta = 0.005;    // minimum decay
  double gamma_decay = 0.005;

  /// Throws std::invalid_argument when the parameter set is inconsistent.
  void validate() const;
};

enum class Interaction { Cooperative, Uncooperative, Neutral };

const char* to_string(Interaction kind);

/// Directed trustor -> trustee experience. prev_value holds the value before
/// the most recent update and feeds the decay term.
struct ExperienceRelation {
  UserId trustor = 0;
  UserId trustee = 0;
  double value = 0.0;
  double prev_value = 0.0;
  std::int64_t last_update = -1;

  static ExperienceRelation fresh(UserId trustor, UserId trustee, const ExperienceParams& params);
};

/// Throws std::domain_error when qod is outside [0, 1] (or NaN).
Interaction classify_interaction(double qod, const ExperienceParams& params);

ExperienceRelation apply_increase(ExperienceRelation rel, double qod, const ExperienceParams& params);
ExperienceRelation apply_decrease(ExperienceRelation rel, double qod, const ExperienceParams& params);
ExperienceRelation apply_decay(ExperienceRelation rel, const ExperienceParams& params);

/// Classifies qod and routes to the matching update. Neutral interactions
/// decay the relation once. `step` is recorded as last_update.
ExperienceRelation update_on_interaction(ExperienceRelation rel, double qod,
                                         const ExperienceParams& params, std::int64_t step);

struct CurvePoint {
  std::string_view regime;
  std::size_t step = 0;
  double value = 0.0;
};

/// Experience trajectories of one relation under three scripted regimes:
/// "cooperative" (every step at qod = theta_co), "uncooperative_burst"
/// (cooperative, then `burst` steps at qod = burst_qod, then cooperative
/// again) and "decay" (cooperative up to `switch_step`, no interaction after).
/// Step 0 is the bootstrap value.
std::vector<CurvePoint> experience_curves(const ExperienceParams& params, std::size_t steps,
                                          std::size_t switch_step = 40, std::size_t burst = 5,
                                          double burst_qod = 0.1);

} // namespace ertrust
