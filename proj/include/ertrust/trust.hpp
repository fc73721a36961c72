#pragma once

#include <vector>

#include "ertrust/graph.hpp"
#include "ertrust/reputation.hpp"

namespace ertrust {

struct TrustParams {
  double w1 = 0.5; // reputation weight
  double w2 = 0.5; // experience weight

  void validate() const;
};

/// w1 * reputation + w2 * experience. Throws std::invalid_argument unless
/// w1, w2 >= 0 and w1 + w2 = 1 within 1e-12.
double trust(double rep_overall, double exp_value, const TrustParams& params);

/// Trust of `requester` toward every user. Missing experience edges count as
/// `default_experience`. The requester's own entry is -infinity so it never
/// ranks as a candidate. Throws std::out_of_range for an unknown requester.
std::vector<double> trust_row(UserId requester, const ExperienceGraph& graph, const ReputationVector& rep,
                              const TrustParams& params, double default_experience, Exec exec = Exec::parallel);

} // namespace ertrust
