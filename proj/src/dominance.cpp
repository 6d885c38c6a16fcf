#include "resmon/dominance.hpp"

#include <algorithm>

#include <fmt/core.h>

namespace resmon {

std::string to_string(const ResPair& p) { return fmt::format("({}, {})", p.rec, p.dur); }

bool mutually_non_dominated(std::span<const ResPair> pairs) {
  for (const auto& x : pairs) {
    for (const auto& y : pairs) {
      if (compare(x, y) != DomRelation::non_dominated) return false;
    }
  }
  return true;
}

ResSet::ResSet(std::vector<ResPair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw std::invalid_argument("a resilience set cannot be empty");
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  if (!mutually_non_dominated(pairs_)) {
    throw std::invalid_argument(
        fmt::format("pairs are not mutually non-dominated: {}", to_string(*this)));
  }
}

bool ResSet::contains(const ResPair& p) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), p);
}

ResSet ResSet::negated() const {
  std::vector<ResPair> out;
  out.reserve(pairs_.size());
  for (auto it = pairs_.rbegin(); it != pairs_.rend(); ++it) out.push_back(-*it);
  return ResSet(std::move(out), Trusted{});
}

std::string to_string(const ResSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.pairs()[i]);
  }
  return out + "}";
}

ResSet max_re(std::span<const ResPair> pairs) {
  const auto idx = front_indices(pairs, Extremum::max, [](std::size_t) { return 0; });
  std::vector<ResPair> out;
  for (const auto i : idx) out.push_back(pairs[i]);
  return ResSet(std::move(out), ResSet::Trusted{});
}

ResSet min_re(std::span<const ResPair> pairs) {
  const auto idx = front_indices(pairs, Extremum::min, [](std::size_t) { return 0; });
  std::vector<ResPair> out;
  for (const auto i : idx) out.push_back(pairs[i]);
  return ResSet(std::move(out), ResSet::Trusted{});
}

}  // namespace resmon
