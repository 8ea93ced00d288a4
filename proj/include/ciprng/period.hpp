#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <utility>

namespace ciprng {

struct PeriodInfo {
  std::uint64_t period = 0;
  std::uint64_t preperiod = 0;

  friend bool operator==(const PeriodInfo&, const PeriodInfo&) = default;
};

/// Brent's cycle detection on the orbit x0, f(x0), f(f(x0)), ...
/// Returns std::nullopt when no cycle closes within max_steps applications of f.
template <typename State, typename Stepper>
  requires std::equality_comparable<State> && std::invocable<Stepper&, const State&>
std::optional<PeriodInfo> find_period(Stepper&& stepper, const State& initial, std::uint64_t max_steps) {
  std::uint64_t power = 1;
  std::uint64_t lambda = 1;
  std::uint64_t steps = 1;
  State tortoise = initial;
  State hare = stepper(initial);
  while (!(tortoise == hare)) {
    if (steps >= max_steps) return std::nullopt;
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = stepper(hare);
    ++lambda;
    ++steps;
  }

  // Preperiod: walk two pointers lambda apart from the start until they meet.
  State lead = initial;
  for (std::uint64_t i = 0; i < lambda; ++i) lead = stepper(lead);
  State trail = initial;
  std::uint64_t mu = 0;
  while (!(trail == lead)) {
    trail = stepper(trail);
    lead = stepper(lead);
    ++mu;
  }
  return PeriodInfo{lambda, mu};
}

}  // namespace ciprng
