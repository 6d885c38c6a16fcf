#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace resmon {

template <class Rank>
std::vector<std::size_t> front_indices(std::span<const ResPair> keys, Extremum which, Rank rank) {
  if (keys.empty()) throw std::invalid_argument("resilience set of an empty collection");

  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    const auto ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
  });
  // One representative per distinct pair.
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t a, std::size_t b) { return keys[a] == keys[b]; }),
              order.end());

  // Anything outside the extreme sign-sum class is dominated by anything in it.
  int target = sign_sum(keys[order.front()]);
  for (const auto i : order) {
    const int s = sign_sum(keys[i]);
    target = which == Extremum::max ? std::max(target, s) : std::min(target, s);
  }
  std::erase_if(order, [&](std::size_t i) { return sign_sum(keys[i]) != target; });

  // 2-D Pareto sweep within the class. `order` is sorted by (rec, dur).
  std::vector<std::size_t> front;
  if (which == Extremum::max) {
    auto best_dur = std::numeric_limits<std::int64_t>::min();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (keys[*it].dur > best_dur) {
        best_dur = keys[*it].dur;
        front.push_back(*it);
      }
    }
    std::reverse(front.begin(), front.end());
  } else {
    auto best_dur = std::numeric_limits<std::int64_t>::max();
    for (const auto i : order) {
      if (keys[i].dur < best_dur) {
        best_dur = keys[i].dur;
        front.push_back(i);
      }
    }
  }
  return front;
}

}  // namespace resmon
