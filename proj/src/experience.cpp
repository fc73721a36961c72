#include "ertrust/experience.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ertrust {

namespace {

double increment(double value, const ExperienceParams& p) {
  return p.alpha * (1.0 - value / p.max_exp);
}

} // namespace

void ExperienceParams::validate() const {
  if (!(max_exp == 1.0)) throw std::invalid_argument("experience.max_exp must be 1");
  if (!(min_exp >= 0.0 && min_exp < exp0 && exp0 < max_exp))
    throw std::invalid_argument("experience: require 0 <= min_exp < exp0 < max_exp");
  if (!(alpha > 0.0 && alpha < max_exp)) throw std::invalid_argument("experience.alpha must lie in (0, max_exp)");
  if (!(beta > 1.0)) throw std::invalid_argument("experience.beta must be > 1");
  if (!(theta_unco > 0.0 && theta_unco < theta_co && theta_co < 1.0))
    throw std::invalid_argument("experience: require 0 < theta_unco < theta_co < 1");
  if (!(delta > 0.0)) throw std::invalid_argument("experience.delta must be > 0");
  if (!(gamma_decay > 0.0)) throw std::invalid_argument("experience.gamma_decay must be > 0");
}

const char* to_string(Interaction kind) {
  switch (kind) {
  case Interaction::Cooperative: return "cooperative";
  case Interaction::Uncooperative: return "uncooperative";
  case Interaction::Neutral: return "neutral";
  }
  return "?";
}

ExperienceRelation ExperienceRelation::fresh(UserId trustor, UserId trustee, const ExperienceParams& params) {
  if (trustor == trustee) throw std::invalid_argument("experience relation requires trustor != trustee");
  return {trustor, trustee, params.exp0, params.exp0, -1};
}

Interaction classify_interaction(double qod, const ExperienceParams& params) {
  if (!(qod >= 0.0 && qod <= 1.0)) throw std::domain_error("qod outside [0,1]: " + std::to_string(qod));
  if (qod >= params.theta_co) return Interaction::Cooperative;
  if (qod <= params.theta_unco) return Interaction::Uncooperative;
  return Interaction::Neutral;
}

ExperienceRelation apply_increase(ExperienceRelation rel, double qod, const ExperienceParams& params) {
  const double old = rel.value;
  rel.prev_value = old;
  rel.value = old + qod * increment(old, params);
  return rel;
}

ExperienceRelation apply_decrease(ExperienceRelation rel, double qod, const ExperienceParams& params) {
  const double old = rel.value;
  rel.prev_value = old;
  rel.value = std::max(params.min_exp, old - (1.0 - qod) * params.beta * increment(old, params));
  return rel;
}

ExperienceRelation apply_decay(ExperienceRelation rel, const ExperienceParams& params) {
  const double old = rel.value;
  const double decay = params.delta * (1.0 + params.gamma_decay - rel.prev_value / params.max_exp);
  rel.prev_value = old;
  rel.value = std::max(params.exp0, old - decay);
  return rel;
}

ExperienceRelation update_on_interaction(ExperienceRelation rel, double qod,
                                         const ExperienceParams& params, std::int64_t step) {
  switch (classify_interaction(qod, params)) {
  case Interaction::Cooperative: rel = apply_increase(rel, qod, params); break;
  case Interaction::Uncooperative: rel = apply_decrease(rel, qod, params); break;
  case Interaction::Neutral: rel = apply_decay(rel, params); break;
  }
  rel.last_update = step;
  return rel;
}

std::vector<CurvePoint> experience_curves(const ExperienceParams& params, std::size_t steps,
                                          std::size_t switch_step, std::size_t burst, double burst_qod) {
  params.validate();
  std::vector<CurvePoint> out;
  auto trace = [&](std::string_view regime, auto qod_at) {
    auto rel = ExperienceRelation::fresh(0, 1, params);
    out.push_back({regime, 0, rel.value});
    for (std::size_t s = 1; s <= steps; ++s) {
      const double q = qod_at(s);
      rel = q < 0.0 ? apply_decay(rel, params) : update_on_interaction(rel, q, params, static_cast<std::int64_t>(s));
      out.push_back({regime, s, rel.value});
    }
  };
  trace("cooperative", [&](std::size_t) { return params.theta_co; });
  trace("uncooperative_burst", [&](std::size_t s) {
    return s > switch_step && s <= switch_step + burst ? burst_qod : params.theta_co;
  });
  trace("decay", [&](std::size_t s) { return s <= switch_step ? params.theta_co : -1.0; });
  return out;
}

} // namespace ertrust
