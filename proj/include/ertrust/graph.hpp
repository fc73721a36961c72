#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ertrust/experience.hpp"

namespace ertrust {

/// Sparse directed graph of experience relations over users 0..n-1.
/// Out-edges of each trustor are kept sorted by trustee, so iteration order
/// is deterministic.
class ExperienceGraph {
public:
  explicit ExperienceGraph(std::size_t n = 0);

  std::size_t size() const { return out_.size(); }
  std::size_t edge_count() const { return edges_; }

  std::optional<double> experience(UserId trustor, UserId trustee) const;
  const ExperienceRelation* find(UserId trustor, UserId trustee) const;

  /// Returns the relation, creating it at exp0 on first use.
  ExperienceRelation& relation(UserId trustor, UserId trustee, const ExperienceParams& params);

  /// Inserts or overwrites an edge weight. Throws on self-edges, unknown ids
  /// or weights outside [0, 1].
  void set(UserId trustor, UserId trustee, double value);

  std::span<const ExperienceRelation> out_edges(UserId trustor) const;

  /// Decays every relation whose last_update differs from `step`.
  /// Returns the number of relations touched.
  std::size_t decay_stale(std::int64_t step, const ExperienceParams& params);

  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (const auto& row : out_)
      for (const auto& rel : row) fn(rel);
  }

private:
  void check_pair(UserId trustor, UserId trustee) const;
  ExperienceRelation& insert(UserId trustor, UserId trustee, const ExperienceRelation& rel);

  std::vector<std::vector<ExperienceRelation>> out_;
  std::size_t edges_ = 0;
};

} // namespace ertrust
