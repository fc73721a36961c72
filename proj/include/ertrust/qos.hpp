#pragma once

#include <span>
#include <stdexcept>

namespace ertrust {

/// Task and request scores are clamped to [qod_eps, 1 - qod_eps] before the
/// logarithm.
inline constexpr double qod_eps = 1e-9;

class DegenerateQoS : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Mean participant qod of one sensing task. Throws std::invalid_argument
/// for an empty task.
double task_qod(std::span<const double> participant_qods);

/// T / |sum ln(task_qod)|, evaluated in log-sum form.
double request_qos(std::span<const double> task_qods);

} // namespace ertrust
