#pragma once

/// @file oracle.hpp
/// @brief Exact solvers used as ground truth for the genetic algorithm.
///
/// Destinations are independent because each candidate names a single
/// destination, so both solvers work one destination at a time.
///
/// Tie-breaking is shared so the two solvers return the same matrix, not
/// only the same value: the greedy ranks candidates by (weight desc, origin
/// asc, position asc), and the enumerator keeps the lexicographically
/// largest prefix tuple among the optima, which is the tuple the greedy
/// ranking produces.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mobility/instance.hpp"
#include "mobility/model.hpp"

namespace mobility {

struct DestinationOptimum {
  SiteId destination;
  double value = 0.0;
  std::vector<int> prefix_lengths;  // ascending origin, destination skipped
};

struct OracleResult {
  AssignmentMatrix best;
  double best_value = 0.0;
  std::vector<DestinationOptimum> per_destination;

  std::vector<PrefixLine> prefix_lines() const;
};

/// Top-C_k selection per destination. Requires a canonical instance.
OracleResult solve_greedy(const Instance& instance);

/// Upper bound on prefix tuples enumerated for one destination.
inline constexpr std::uint64_t kExhaustiveGuard = 10'000'000;

class SearchSpaceTooLarge : public std::runtime_error {
 public:
  SearchSpaceTooLarge(SiteId destination, std::uint64_t bound);
  std::uint64_t bound() const { return bound_; }

 private:
  std::uint64_t bound_;
};

/// Product of (list size + 1) over the lists into `destination`, saturating
/// at the largest uint64 value.
std::uint64_t exhaustive_space(const Instance& instance, SiteId destination);

/// Enumerates every capacity-feasible prefix tuple per destination.
/// Throws SearchSpaceTooLarge when a destination exceeds kExhaustiveGuard.
OracleResult solve_exhaustive(const Instance& instance);

/// True when both solvers agree exactly on the optimum and both solutions
/// pass check_feasibility.
bool cross_validate(const Instance& instance);

}  // namespace mobility
