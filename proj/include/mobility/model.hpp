#pragma once

/// @file model.hpp
/// @brief Assignment decisions, objective evaluation and constraint checks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobility/instance.hpp"

namespace mobility {

class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct BitGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> bits;  // row-major, 0 or 1

  bool at(std::size_t row, std::size_t col) const { return bits[row * cols + col] != 0; }
  void set(std::size_t row, std::size_t col, bool v) { bits[row * cols + col] = v ? 1 : 0; }
  friend bool operator==(const BitGrid&, const BitGrid&) = default;
};

/// Binary decision X: one grid per destination, shaped like the weight grids.
class AssignmentMatrix {
 public:
  AssignmentMatrix() = default;

  /// All-zero matrix shaped for `instance`.
  static AssignmentMatrix zeros(const Instance& instance);

  std::size_t destinations() const { return grids_.size(); }
  const BitGrid& grid(SiteId destination) const { return grids_.at(destination.offset()); }
  BitGrid& grid(SiteId destination) { return grids_.at(destination.offset()); }

  bool selected(SiteId origin, SiteId destination, std::size_t position) const;
  void select(SiteId origin, SiteId destination, std::size_t position, bool value = true);

  friend bool operator==(const AssignmentMatrix&, const AssignmentMatrix&) = default;

 private:
  std::vector<BitGrid> grids_;
};

/// N_k: number of candidates moved into `destination`.
int count_assigned(const AssignmentMatrix& x, SiteId destination);

/// F_k: elementwise inner product of beta_k and X_k.
double destination_weight(const WeightMatrix& beta, const AssignmentMatrix& x, SiteId destination);

/// F(X) = sum over destinations of F_k.
double total_objective(const WeightMatrix& beta, const AssignmentMatrix& x);

enum class ConstraintKind { kCapacity, kPrefix, kUniqueness };

struct Violation {
  ConstraintKind kind;
  std::string location;
  std::string detail;
};

struct FeasibilityReport {
  std::vector<bool> capacity_ok;  // per destination offset
  std::vector<bool> prefix_ok;    // per pair index
  bool uniqueness_ok = true;
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
};

/// Checks capacity, prefix and uniqueness and lists every violation.
/// Requires a canonical instance; throws ShapeError when x does not fit it.
FeasibilityReport check_feasibility(const Instance& instance, const AssignmentMatrix& x);

std::string describe(const Violation& v);

/// Per-destination prefix lengths printed alongside an oracle solution.
struct PrefixLine {
  SiteId destination;
  std::vector<int> lengths;  // ascending origin
};

/// `solution <objective>` header, then per destination a `submatrix <name>`
/// line followed by one `row <origin> <bits...>` line per origin.
std::string write_solution(const Instance& instance, const AssignmentMatrix& x, double objective,
                           const std::vector<PrefixLine>& prefixes = {});

struct ParsedSolution {
  double declared_objective = 0.0;
  AssignmentMatrix x;
};

ParsedSolution parse_solution(const Instance& instance, std::string_view text);

}  // namespace mobility
