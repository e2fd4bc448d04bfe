#pragma once

/// @file instance.hpp
/// @brief Problem instances for inter-site mobility assignment.
///
/// An instance lists NS sites, a capacity per destination, and for every
/// ordered pair (origin, destination) with origin != destination, the
/// candidates who asked for that move. Lists are stored for every ordered
/// pair, including empty ones, sorted by destination then origin. That order
/// is the "pair index" used by chromosomes and weight grids throughout.

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mobility {

/// 1-based site index, as used in instance files and reports.
struct SiteId {
  int index = 1;

  constexpr int offset() const { return index - 1; }
  friend constexpr bool operator==(SiteId, SiteId) = default;
  friend constexpr auto operator<=>(SiteId, SiteId) = default;
};

struct Criterion {
  std::string name;
  double value = 0.0;
};

/// Weighting coefficients and per-criterion scores of one employee.
struct CriteriaProfile {
  std::vector<Criterion> coefficients;  // (alpha_i, name) stored as name/value
  std::vector<Criterion> values;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sum of alpha_i * w_i over the criteria named in `values`.
double aggregate_weight(const CriteriaProfile& profile);

struct Candidate {
  std::string id;
  SiteId origin;
  SiteId destination;
  double weight = 0.0;
  std::optional<CriteriaProfile> criteria;

  friend bool operator==(const Candidate& a, const Candidate& b) {
    return a.id == b.id && a.origin == b.origin &&
           a.destination == b.destination && a.weight == b.weight;
  }
};

struct CandidateList {
  SiteId origin;
  SiteId destination;
  std::vector<Candidate> candidates;

  std::size_t cardinality() const { return candidates.size(); }
  double weight(std::size_t position) const { return candidates[position].weight; }
  friend bool operator==(const CandidateList&, const CandidateList&) = default;
};

class Instance {
 public:
  Instance() = default;

  /// Builds an instance with empty lists for every ordered pair.
  Instance(std::vector<std::string> site_names, std::vector<int> capacities);

  int ns() const { return static_cast<int>(site_names_.size()); }
  const std::vector<std::string>& site_names() const { return site_names_; }
  const std::string& site_name(SiteId s) const { return site_names_.at(s.offset()); }
  std::optional<SiteId> find_site(std::string_view name) const;

  const std::vector<int>& capacities() const { return capacities_; }
  int capacity(SiteId destination) const { return capacities_.at(destination.offset()); }
  void set_capacity(SiteId destination, int value);

  /// All ordered pairs, sorted by (destination, origin).
  const std::vector<CandidateList>& lists() const { return lists_; }
  std::size_t pair_count() const { return lists_.size(); }
  std::size_t pair_index(SiteId origin, SiteId destination) const;
  const CandidateList& list(SiteId origin, SiteId destination) const {
    return lists_[pair_index(origin, destination)];
  }

  /// Pair indices whose destination is `destination`, in ascending origin order.
  std::vector<std::size_t> pairs_to(SiteId destination) const;

  /// Appends a candidate to its (origin, destination) list. Throws
  /// ValidationError on j == k, negative weight, unknown site or a
  /// duplicate id.
  void add_candidate(Candidate candidate);

  std::size_t candidate_count() const;
  double total_weight() const;

  /// True when every list is sorted by non-increasing weight.
  bool is_canonical() const;

  friend bool operator==(const Instance&, const Instance&) = default;
  friend Instance canonicalize(Instance instance);

 private:
  void check_site(SiteId s) const;

  std::vector<std::string> site_names_;
  std::vector<int> capacities_;
  std::vector<CandidateList> lists_;
  std::set<std::string, std::less<>> ids_;
};

enum class ParseErrorKind {
  kMalformedLine,
  kMissingHeader,
  kUnknownSite,
  kOriginEqualsDestination,
  kNegativeWeight,
  kDuplicateCandidate,
  kCapacityCount,
  kMissingCoefficient,
  kBadCoefficient,
};

class ParseError : public ValidationError {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& detail);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

/// Parses the line-oriented instance format. Candidates keep file order.
Instance parse_instance(std::string_view text);
Instance parse_instance(std::string_view text, std::vector<std::string>& warnings);
Instance load_instance(const std::string& path);

/// Writes an instance with direct weights; parse_instance reads it back.
std::string serialize_instance(const Instance& instance);

/// Stable sort of every list by non-increasing weight.
Instance canonicalize(Instance instance);

/// One destination's zero-padded weight grid. Rows follow ascending origin
/// (skipping the destination itself), columns are candidate positions.
struct WeightGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t row, std::size_t col) const { return values[row * cols + col]; }
};

struct WeightMatrix {
  std::vector<WeightGrid> grids;  // indexed by destination offset

  const WeightGrid& grid(SiteId destination) const { return grids.at(destination.offset()); }
};

WeightMatrix build_weight_matrices(const Instance& instance);

/// Row of `origin` inside the grid of `destination`.
constexpr std::size_t grid_row(SiteId origin, SiteId destination) {
  return static_cast<std::size_t>(origin.index < destination.index ? origin.offset()
                                                                   : origin.offset() - 1);
}

/// Inverse of grid_row.
constexpr SiteId grid_origin(std::size_t row, SiteId destination) {
  const int r = static_cast<int>(row);
  return SiteId{r < destination.offset() ? r + 1 : r + 2};
}

/// Shortest decimal form that round-trips (integers print without a point).
std::string format_number(double value);

}  // namespace mobility
