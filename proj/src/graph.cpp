#include "ertrust/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ertrust {

namespace {

auto lower(std::vector<ExperienceRelation>& row, UserId trustee) {
  return std::lower_bound(row.begin(), row.end(), trustee,
                          [](const ExperienceRelation& r, UserId t) { return r.trustee < t; });
}

auto lower(const std::vector<ExperienceRelation>& row, UserId trustee) {
  return std::lower_bound(row.begin(), row.end(), trustee,
                          [](const ExperienceRelation& r, UserId t) { return r.trustee < t; });
}

} // namespace

ExperienceGraph::ExperienceGraph(std::size_t n) : out_(n) {}

void ExperienceGraph::check_pair(UserId trustor, UserId trustee) const {
  if (trustor >= size() || trustee >= size())
    throw std::out_of_range("user id out of range (n=" + std::to_string(size()) + ")");
  if (trustor == trustee) throw std::invalid_argument("self-edges are not allowed");
}

const ExperienceRelation* ExperienceGraph::find(UserId trustor, UserId trustee) const {
  if (trustor >= size()) return nullptr;
  const auto& row = out_[trustor];
  auto it = lower(row, trustee);
  if (it == row.end() || it->trustee != trustee) return nullptr;
  return &*it;
}

std::optional<double> ExperienceGraph::experience(UserId trustor, UserId trustee) const {
  if (const auto* rel = find(trustor, trustee)) return rel->value;
  return std::nullopt;
}

ExperienceRelation& ExperienceGraph::insert(UserId trustor, UserId trustee, const ExperienceRelation& rel) {
  auto& row = out_[trustor];
  auto it = lower(row, trustee);
  if (it != row.end() && it->trustee == trustee) return *it;
  ++edges_;
  return *row.insert(it, rel);
}

ExperienceRelation& ExperienceGraph::relation(UserId trustor, UserId trustee, const ExperienceParams& params) {
  check_pair(trustor, trustee);
  return insert(trustor, trustee, ExperienceRelation::fresh(trustor, trustee, params));
}

void ExperienceGraph::set(UserId trustor, UserId trustee, double value) {
  check_pair(trustor, trustee);
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("edge weight outside [0,1]");
  auto& rel = insert(trustor, trustee, ExperienceRelation{trustor, trustee, value, value, -1});
  rel.value = value;
}

std::span<const ExperienceRelation> ExperienceGraph::out_edges(UserId trustor) const {
  if (trustor >= size()) throw std::out_of_range("user id out of range");
  return out_[trustor];
}

std::size_t ExperienceGraph::decay_stale(std::int64_t step, const ExperienceParams& params) {
  std::size_t touched = 0;
  for (auto& row : out_) {
    for (auto& rel : row) {
      if (rel.last_update == step) continue;
      const auto keep = rel.last_update;
      rel = apply_decay(rel, params);
      rel.last_update = keep;
      ++touched;
    }
  }
  return touched;
}

} // namespace ertrust
