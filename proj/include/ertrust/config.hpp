#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ertrust/experience.hpp"
#include "ertrust/recruitment.hpp"
#include "ertrust/reputation.hpp"
#include "ertrust/trust.hpp"

namespace ertrust {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Inclusive integer range, written "lo,hi" in config files.
struct IntRange {
  std::size_t lo = 0;
  std::size_t hi = 0;

  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct SimConfig {
  std::uint64_t seed = 1;
  std::size_t n_users = 400;
  double malicious_fraction = 0.10;
  // Unset ("balanced"): non-malicious users split evenly between high and low quality.
  std::optional<double> low_quality_fraction;
  double malicious_mix = 0.7;
  std::size_t n_requests = 160;
  IntRange tasks_per_request{5, 15};
  IntRange participants_per_task{5, 200};
  Scheme scheme = Scheme::trust;
  ExperienceParams experience;
  ReputationParams reputation;
  TrustParams trust;
  std::size_t rep_recompute_every = 1; // in requests
  bool rep_recompute_per_task = false;
  std::size_t reputation_snapshot_every = 0; // 0 disables periodic snapshots
  std::size_t detection_at = 20;             // request after which the detection table is taken; 0 disables
  std::vector<double> detection_buckets{0.025, 0.05, 0.075, 0.10, 0.20};
  double unseen_prior = 0.0; // score of never-recruited users in the average and regression schemes

  std::size_t n_malicious() const;
  std::size_t n_low_quality() const;
  std::size_t n_high_quality() const;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
};

/// Flat key names accepted by parse_config / set_config_value.
std::vector<std::string> config_keys();

/// Applies one `key = value` assignment. Throws ConfigError for unknown keys
/// or unparsable values.
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines on top of `base`. Blank lines and `#` comments
/// are ignored. Does not validate the result.
SimConfig parse_config(std::string_view text, SimConfig base = {});

SimConfig load_config(const std::filesystem::path& path, SimConfig base = {});

/// Canonical `key = value` dump; parse_config(format_config(c)) reproduces c.
std::string format_config(const SimConfig& config);

} // namespace ertrust
