#include "ertrust/trust.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace ertrust {

void TrustParams::validate() const {
  if (!(w1 >= 0.0 && w2 >= 0.0)) throw std::invalid_argument("trust weights must be non-negative");
  if (std::abs(w1 + w2 - 1.0) > 1e-12) throw std::invalid_argument("trust weights must satisfy w1 + w2 = 1");
}

double trust(double rep_overall, double exp_value, const TrustParams& params) {
  params.validate();
  return params.w1 * rep_overall + params.w2 * exp_value;
}

std::vector<double> trust_row(UserId requester, const ExperienceGraph& graph, const ReputationVector& rep,
                              const TrustParams& params, double default_experience, Exec exec) {
  params.validate();
  const std::size_t n = graph.size();
  if (requester >= n) throw std::out_of_range("unknown requester id");
  if (rep.size() != n) throw std::invalid_argument("reputation vector size does not match graph");

  std::vector<double> row(n);
  const auto n_signed = static_cast<std::ptrdiff_t>(n);
  const double exp_term = params.w2 * default_experience;
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t u = 0; u < n_signed; ++u) row[u] = params.w1 * rep.overall[u] + exp_term;
  } else {
    for (std::ptrdiff_t u = 0; u < n_signed; ++u) row[u] = params.w1 * rep.overall[u] + exp_term;
  }
  for (const auto& rel : graph.out_edges(requester))
    row[rel.trustee] = params.w1 * rep.overall[rel.trustee] + params.w2 * rel.value;
  row[requester] = -std::numeric_limits<double>::infinity();
  return row;
}

} // namespace ertrust
