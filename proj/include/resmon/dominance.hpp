#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace resmon {

/// (recoverability, durability) in integer steps.
struct ResPair {
  std::int64_t rec = 0;
  std::int64_t dur = 0;

  friend auto operator<=>(const ResPair&, const ResPair&) = default;
  ResPair operator-() const { return {-rec, -dur}; }
};

std::string to_string(const ResPair& p);

enum class DomRelation { succ, prec, non_dominated };

inline int sign(std::int64_t v) { return (v > 0) - (v < 0); }
inline int sign_sum(const ResPair& p) { return sign(p.rec) + sign(p.dur); }

/// Plain Pareto dominance: componentwise >= with at least one >.
inline bool pareto_dominates(const ResPair& x, const ResPair& y) {
  return x.rec >= y.rec && x.dur >= y.dur && x != y;
}

/// Resilience dominance: sign-sums decide first, Pareto dominance breaks ties.
inline DomRelation compare(const ResPair& x, const ResPair& y) {
  const int sx = sign_sum(x), sy = sign_sum(y);
  if (sx > sy) return DomRelation::succ;
  if (sx < sy) return DomRelation::prec;
  if (pareto_dominates(x, y)) return DomRelation::succ;
  if (pareto_dominates(y, x)) return DomRelation::prec;
  return DomRelation::non_dominated;
}

/// True when no member strictly resilience-dominates another.
bool mutually_non_dominated(std::span<const ResPair> pairs);

/// Non-empty, duplicate-free, mutually non-dominated set of pairs, kept
/// sorted by ascending rec.
class ResSet {
 public:
  /// Validates the invariants; throws std::invalid_argument on violation.
  explicit ResSet(std::vector<ResPair> pairs);
  ResSet(std::initializer_list<ResPair> pairs) : ResSet(std::vector<ResPair>(pairs)) {}

  const std::vector<ResPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }
  bool contains(const ResPair& p) const;

  /// Elementwise negation.
  ResSet negated() const;

  friend bool operator==(const ResSet&, const ResSet&) = default;

 private:
  struct Trusted {};
  ResSet(std::vector<ResPair> pairs, Trusted) : pairs_(std::move(pairs)) {}
  friend ResSet max_re(std::span<const ResPair>);
  friend ResSet min_re(std::span<const ResPair>);

  std::vector<ResPair> pairs_;
};

std::string to_string(const ResSet& s);

/// Members of `pairs` that no member strictly dominates (resp. is strictly
/// dominated by), deduplicated. Throws std::invalid_argument on empty input.
ResSet max_re(std::span<const ResPair> pairs);
ResSet min_re(std::span<const ResPair> pairs);

enum class Extremum { max, min };

/// Indices of the max_re / min_re members of `keys`, one index per distinct
/// pair, in ascending rec order. Duplicates resolve to the index whose
/// `rank` is smallest (ties: smallest index). Runs in O(n log n).
template <class Rank>
std::vector<std::size_t> front_indices(std::span<const ResPair> keys, Extremum which, Rank rank);

}  // namespace resmon

#include "resmon/detail/front_impl.hpp"
