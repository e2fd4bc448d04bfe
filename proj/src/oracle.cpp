#include "mobility/oracle.hpp"

#include <algorithm>
#include <limits>

namespace mobility {

std::vector<PrefixLine> OracleResult::prefix_lines() const {
  std::vector<PrefixLine> out;
  out.reserve(per_destination.size());
  for (const auto& d : per_destination) out.push_back(PrefixLine{d.destination, d.prefix_lengths});
  return out;
}

namespace {

void require_canonical(const Instance& instance) {
  if (!instance.is_canonical()) throw std::invalid_argument("oracle requires a canonicalized instance");
}

OracleResult assemble(const Instance& instance, std::vector<DestinationOptimum> per_destination) {
  OracleResult result;
  result.best = AssignmentMatrix::zeros(instance);
  for (const auto& d : per_destination) {
    BitGrid& g = result.best.grid(d.destination);
    for (std::size_t r = 0; r < d.prefix_lengths.size(); ++r) {
      for (int i = 0; i < d.prefix_lengths[r]; ++i) g.set(r, static_cast<std::size_t>(i), true);
    }
    result.best_value += d.value;
  }
  result.per_destination = std::move(per_destination);
  return result;
}

struct Entry {
  double weight;
  std::size_t row;
  std::size_t position;
};

DestinationOptimum greedy_destination(const Instance& instance, SiteId dest) {
  const auto pairs = instance.pairs_to(dest);
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const CandidateList& list = instance.lists()[pairs[r]];
    for (std::size_t i = 0; i < list.cardinality(); ++i) entries.push_back({list.weight(i), r, i});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.row != b.row) return a.row < b.row;
    return a.position < b.position;
  });

  DestinationOptimum out{dest, 0.0, std::vector<int>(pairs.size(), 0)};
  const std::size_t take = std::min(entries.size(), static_cast<std::size_t>(instance.capacity(dest)));
  for (std::size_t t = 0; t < take; ++t) {
    ++out.prefix_lengths[entries[t].row];
    out.value += entries[t].weight;
  }
  return out;
}

class PrefixEnumerator {
 public:
  PrefixEnumerator(const Instance& instance, SiteId dest) : capacity_(instance.capacity(dest)) {
    for (auto p : instance.pairs_to(dest)) {
      const CandidateList& list = instance.lists()[p];
      std::vector<double> sums(list.cardinality() + 1, 0.0);
      for (std::size_t i = 0; i < list.cardinality(); ++i) sums[i + 1] = sums[i] + list.weight(i);
      sums_.push_back(std::move(sums));
    }
    current_.assign(sums_.size(), 0);
  }

  DestinationOptimum run(SiteId dest) {
    found_ = false;
    visit(0, 0, 0.0);
    return DestinationOptimum{dest, best_value_, best_};
  }

 private:
  void visit(std::size_t row, int used, double value) {
    if (row == sums_.size()) {
      // Tuples arrive in lexicographic order, so >= keeps the largest optimum.
      if (!found_ || value >= best_value_) {
        found_ = true;
        best_value_ = value;
        best_ = current_;
      }
      return;
    }
    const int room = capacity_ - used;
    const int top = std::min(room, static_cast<int>(sums_[row].size()) - 1);
    for (int n = 0; n <= top; ++n) {
      current_[row] = n;
      visit(row + 1, used + n, value + sums_[row][static_cast<std::size_t>(n)]);
    }
    current_[row] = 0;
  }

  int capacity_;
  std::vector<std::vector<double>> sums_;
  std::vector<int> current_;
  std::vector<int> best_;
  double best_value_ = 0.0;
  bool found_ = false;
};

}  // namespace

OracleResult solve_greedy(const Instance& instance) {
  require_canonical(instance);
  std::vector<DestinationOptimum> per(static_cast<std::size_t>(instance.ns()));
  for (int k = 1; k <= instance.ns(); ++k) per[static_cast<std::size_t>(k - 1)] = greedy_destination(instance, SiteId{k});
  return assemble(instance, std::move(per));
}

SearchSpaceTooLarge::SearchSpaceTooLarge(SiteId destination, std::uint64_t bound)
    : std::runtime_error("exhaustive search for destination " + std::to_string(destination.index) +
                         " needs " + std::to_string(bound) + " tuples, guard is " +
                         std::to_string(kExhaustiveGuard)),
      bound_(bound) {}

std::uint64_t exhaustive_space(const Instance& instance, SiteId destination) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t product = 1;
  for (auto p : instance.pairs_to(destination)) {
    const std::uint64_t factor = instance.lists()[p].cardinality() + 1;
    product = product > kMax / factor ? kMax : product * factor;
  }
  return product;
}

OracleResult solve_exhaustive(const Instance& instance) {
  require_canonical(instance);
  const int n = instance.ns();
  for (int k = 1; k <= n; ++k) {
    const std::uint64_t space = exhaustive_space(instance, SiteId{k});
    if (space > kExhaustiveGuard) throw SearchSpaceTooLarge(SiteId{k}, space);
  }
  std::vector<DestinationOptimum> per(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int k = 1; k <= n; ++k) {
    PrefixEnumerator e(instance, SiteId{k});
    per[static_cast<std::size_t>(k - 1)] = e.run(SiteId{k});
  }
  return assemble(instance, std::move(per));
}

bool cross_validate(const Instance& instance) {
  const OracleResult greedy = solve_greedy(instance);
  const OracleResult exhaustive = solve_exhaustive(instance);
  return greedy.best_value == exhaustive.best_value &&
         check_feasibility(instance, greedy.best).feasible() &&
         check_feasibility(instance, exhaustive.best).feasible();
}

}  // namespace mobility
