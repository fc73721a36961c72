#include "ertrust/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace ertrust {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "' (expected " +
                    std::string(expected) + ")");
}

double parse_real(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto v = trim(value);
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) bad_value(key, value, "a real number");
  return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto v = trim(value);
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) bad_value(key, value, "a non-negative integer");
  return out;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
  return static_cast<std::size_t>(parse_u64(key, value));
}

bool parse_bool(std::string_view key, std::string_view value) {
  const auto v = trim(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, value, "true|false");
}

IntRange parse_range(std::string_view key, std::string_view value) {
  const auto comma = value.find(',');
  if (comma == std::string_view::npos) bad_value(key, value, "lo,hi");
  return {parse_count(key, value.substr(0, comma)), parse_count(key, value.substr(comma + 1))};
}

std::vector<double> parse_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    out.push_back(parse_real(key, value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Field {
  const char* key;
  std::function<void(SimConfig&, std::string_view key, std::string_view value)> set;
  std::function<std::string(const SimConfig&)> get;
};

#define REAL_FIELD(name, member)                                                                       \
  Field {                                                                                              \
    name, [](SimConfig& c, std::string_view k, std::string_view v) { c.member = parse_real(k, v); }, \
        [](const SimConfig& c) { return real(c.member); }                                             \
  }
#define COUNT_FIELD(name, member)                                                                       \
  Field {                                                                                               \
    name, [](SimConfig& c, std::string_view k, std::string_view v) { c.member = parse_count(k, v); }, \
        [](const SimConfig& c) { return std::to_string(c.member); }                                    \
  }
#define RANGE_FIELD(name, member)                                                                       \
  Field {                                                                                               \
    name, [](SimConfig& c, std::string_view k, std::string_view v) { c.member = parse_range(k, v); }, \
        [](const SimConfig& c) { return std::to_string(c.member.lo) + "," + std::to_string(c.member.hi); } \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      Field{"seed", [](SimConfig& c, std::string_view k, std::string_view v) { c.seed = parse_u64(k, v); },
            [](const SimConfig& c) { return std::to_string(c.seed); }},
      COUNT_FIELD("n_users", n_users),
      REAL_FIELD("malicious_fraction", malicious_fraction),
      Field{"low_quality_fraction",
            [](SimConfig& c, std::string_view k, std::string_view v) {
              if (trim(v) == "balanced")
                c.low_quality_fraction.reset();
              else
                c.low_quality_fraction = parse_real(k, v);
            },
            [](const SimConfig& c) { return c.low_quality_fraction ? real(*c.low_quality_fraction) : "balanced"; }},
      REAL_FIELD("malicious_mix", malicious_mix),
      COUNT_FIELD("n_requests", n_requests),
      RANGE_FIELD("tasks_per_request", tasks_per_request),
      RANGE_FIELD("participants_per_task", participants_per_task),
      Field{"scheme",
            [](SimConfig& c, std::string_view, std::string_view v) {
              try {
                c.scheme = parse_scheme(trim(v));
              } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
              }
            },
            [](const SimConfig& c) { return std::string(to_string(c.scheme)); }},
      REAL_FIELD("experience.max_exp", experience.max_exp),
      REAL_FIELD("experience.min_exp", experience.min_exp),
      REAL_FIELD("experience.exp0", experience.exp0),
      REAL_FIELD("experience.alpha", experience.alpha),
      REAL_FIELD("experience.beta", experience.beta),
      REAL_FIELD("experience.theta_co", experience.theta_co),
      REAL_FIELD("experience.theta_unco", experience.theta_unco),
      REAL_FIELD("experience.delta", experience.delta),
      REAL_FIELD("experience.gamma_decay", experience.gamma_decay),
      REAL_FIELD("reputation.d", reputation.d),
      REAL_FIELD("reputation.theta_split", reputation.theta_split),
      REAL_FIELD("reputation.tol", reputation.tol),
      COUNT_FIELD("reputation.max_iter", reputation.max_iter),
      REAL_FIELD("trust.w1", trust.w1),
      REAL_FIELD("trust.w2", trust.w2),
      COUNT_FIELD("rep_recompute_every", rep_recompute_every),
      Field{"rep_recompute_per_task",
            [](SimConfig& c, std::string_view k, std::string_view v) { c.rep_recompute_per_task = parse_bool(k, v); },
            [](const SimConfig& c) { return std::string(c.rep_recompute_per_task ? "true" : "false"); }},
      COUNT_FIELD("reputation_snapshot_every", reputation_snapshot_every),
      COUNT_FIELD("detection_at", detection_at),
      Field{"detection_buckets",
            [](SimConfig& c, std::string_view k, std::string_view v) { c.detection_buckets = parse_list(k, v); },
            [](const SimConfig& c) {
              std::string out;
              for (std::size_t i = 0; i < c.detection_buckets.size(); ++i)
                out += (i ? "," : "") + real(c.detection_buckets[i]);
              return out;
            }},
      REAL_FIELD("unseen_prior", unseen_prior),
  };
  return table;
}

#undef REAL_FIELD
#undef COUNT_FIELD
#undef RANGE_FIELD

} // namespace

std::size_t SimConfig::n_malicious() const {
  return static_cast<std::size_t>(std::llround(malicious_fraction * static_cast<double>(n_users)));
}

std::size_t SimConfig::n_low_quality() const {
  if (!low_quality_fraction) return (n_users - std::min(n_users, n_malicious())) / 2;
  return static_cast<std::size_t>(std::llround(*low_quality_fraction * static_cast<double>(n_users)));
}

std::size_t SimConfig::n_high_quality() const { return n_users - n_malicious() - n_low_quality(); }

void SimConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (n_users < 2) fail("n_users must be at least 2");
  if (!(malicious_fraction >= 0.0 && malicious_fraction <= 0.25)) fail("malicious_fraction must lie in [0, 0.25]");
  if (low_quality_fraction) {
    const double f = *low_quality_fraction;
    if (!(f >= 0.0 && f <= 1.0)) fail("low_quality_fraction must lie in [0, 1] or be 'balanced'");
    if (malicious_fraction + f > 1.0) fail("malicious_fraction + low_quality_fraction exceeds 1");
  }
  if (n_malicious() + n_low_quality() > n_users) fail("user class counts exceed n_users");
  if (!(malicious_mix > 0.0 && malicious_mix <= 1.0)) fail("malicious_mix must lie in (0, 1]");
  auto check_range = [&](const IntRange& r, const char* name) {
    if (r.lo < 1 || r.lo > r.hi || r.hi > n_users - 1)
      fail(std::string(name) + " must satisfy 1 <= lo <= hi <= n_users - 1");
  };
  check_range(tasks_per_request, "tasks_per_request");
  check_range(participants_per_task, "participants_per_task");
  if (rep_recompute_every == 0) fail("rep_recompute_every must be positive");
  for (double b : detection_buckets)
    if (!(b > 0.0 && b <= 1.0)) fail("detection_buckets entries must lie in (0, 1]");
  if (!(unseen_prior >= 0.0 && unseen_prior <= 1.0)) fail("unseen_prior must lie in [0, 1]");
  try {
    experience.validate();
    reputation.validate();
    trust.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.emplace_back(f.key);
  return keys;
}

void set_config_value(SimConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  const auto& table = fields();
  auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return key == f.key; });
  if (it == table.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  it->set(config, key, trim(value));
}

SimConfig parse_config(std::string_view text, SimConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    try {
      set_config_value(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

SimConfig load_config(const std::filesystem::path& path, SimConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string format_config(const SimConfig& config) {
  std::string out;
  for (const auto& f : fields()) out += std::string(f.key) + " = " + f.get(config) + "\n";
  return out;
}

} // namespace ertrust
