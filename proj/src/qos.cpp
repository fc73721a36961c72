#include "ertrust/qos.hpp"

#include <algorithm>
#include <cmath>

namespace ertrust {

double task_qod(std::span<const double> participant_qods) {
  if (participant_qods.empty()) throw std::invalid_argument("sensing task has no participants");
  double sum = 0.0;
  for (double q : participant_qods) sum += q;
  return sum / static_cast<double>(participant_qods.size());
}

double request_qos(std::span<const double> task_qods) {
  if (task_qods.empty()) throw std::invalid_argument("service request has no sensing tasks");
  double log_sum = 0.0;
  for (double q : task_qods) {
    if (std::isnan(q)) throw std::invalid_argument("task qod is NaN");
    log_sum += std::log(std::clamp(q, qod_eps, 1.0 - qod_eps));
  }
  if (std::abs(log_sum) < 1e-12) throw DegenerateQoS("request QoS undefined: |sum ln qod| < 1e-12");
  return static_cast<double>(task_qods.size()) / std::abs(log_sum);
}

} // namespace ertrust
