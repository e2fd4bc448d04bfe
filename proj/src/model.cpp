#include "mobility/model.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <system_error>

namespace mobility {

AssignmentMatrix AssignmentMatrix::zeros(const Instance& instance) {
  AssignmentMatrix x;
  const int n = instance.ns();
  x.grids_.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const auto pairs = instance.pairs_to(SiteId{k});
    BitGrid& g = x.grids_[static_cast<std::size_t>(k - 1)];
    g.rows = pairs.size();
    for (auto p : pairs) g.cols = std::max(g.cols, instance.lists()[p].cardinality());
    g.bits.assign(g.rows * g.cols, 0);
  }
  return x;
}

bool AssignmentMatrix::selected(SiteId origin, SiteId destination, std::size_t position) const {
  const BitGrid& g = grid(destination);
  const std::size_t row = grid_row(origin, destination);
  if (origin == destination || row >= g.rows || position >= g.cols) {
    throw ShapeError("cell out of range");
  }
  return g.at(row, position);
}

void AssignmentMatrix::select(SiteId origin, SiteId destination, std::size_t position, bool value) {
  BitGrid& g = grid(destination);
  const std::size_t row = grid_row(origin, destination);
  if (origin == destination || row >= g.rows || position >= g.cols) {
    throw ShapeError("cell out of range");
  }
  g.set(row, position, value);
}

namespace {

void check_destination(const AssignmentMatrix& x, SiteId k) {
  if (k.index < 1 || static_cast<std::size_t>(k.index) > x.destinations()) {
    throw ShapeError("destination " + std::to_string(k.index) + " out of range");
  }
}

void check_shape(const WeightGrid& w, const BitGrid& x) {
  if (w.rows != x.rows || w.cols != x.cols) {
    throw ShapeError("grid shape " + std::to_string(x.rows) + "x" + std::to_string(x.cols) +
                     " does not match weights " + std::to_string(w.rows) + "x" +
                     std::to_string(w.cols));
  }
}

}  // namespace

int count_assigned(const AssignmentMatrix& x, SiteId destination) {
  check_destination(x, destination);
  const auto& bits = x.grid(destination).bits;
  return static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

double destination_weight(const WeightMatrix& beta, const AssignmentMatrix& x, SiteId destination) {
  check_destination(x, destination);
  if (beta.grids.size() != x.destinations()) throw ShapeError("destination count mismatch");
  const WeightGrid& w = beta.grid(destination);
  const BitGrid& g = x.grid(destination);
  check_shape(w, g);
  double total = 0.0;
  for (std::size_t i = 0; i < g.bits.size(); ++i) {
    if (g.bits[i]) total += w.values[i];
  }
  return total;
}

double total_objective(const WeightMatrix& beta, const AssignmentMatrix& x) {
  if (beta.grids.size() != x.destinations()) throw ShapeError("destination count mismatch");
  double total = 0.0;
  for (std::size_t k = 1; k <= x.destinations(); ++k) {
    total += destination_weight(beta, x, SiteId{static_cast<int>(k)});
  }
  return total;
}

FeasibilityReport check_feasibility(const Instance& instance, const AssignmentMatrix& x) {
  if (!instance.is_canonical()) {
    throw std::invalid_argument("prefix feasibility requires a canonicalized instance");
  }
  const int n = instance.ns();
  if (x.destinations() != static_cast<std::size_t>(n)) throw ShapeError("destination count mismatch");

  FeasibilityReport report;
  report.capacity_ok.assign(static_cast<std::size_t>(n), true);
  report.prefix_ok.assign(instance.pair_count(), true);
  std::set<std::string_view> seen_ids;

  for (int k = 1; k <= n; ++k) {
    const SiteId dest{k};
    const auto pairs = instance.pairs_to(dest);
    const BitGrid& g = x.grid(dest);
    std::size_t cols = 0;
    for (auto p : pairs) cols = std::max(cols, instance.lists()[p].cardinality());
    if (g.rows != pairs.size() || g.cols != cols) {
      throw ShapeError("grid for " + instance.site_name(dest) + " has the wrong shape");
    }

    for (std::size_t r = 0; r < pairs.size(); ++r) {
      const CandidateList& list = instance.lists()[pairs[r]];
      const std::string where = instance.site_name(list.origin) + "->" + instance.site_name(dest);
      for (std::size_t i = list.cardinality(); i < cols; ++i) {
        if (g.at(r, i)) throw ShapeError("padded position " + std::to_string(i + 1) + " set in " + where);
      }
      // Smallest l with X_l = 1 but some earlier position unselected.
      bool gap = false;
      for (std::size_t i = 0; i < list.cardinality(); ++i) {
        if (!g.at(r, i)) {
          gap = true;
        } else if (gap) {
          report.prefix_ok[pairs[r]] = false;
          report.violations.push_back({ConstraintKind::kPrefix, where,
                                       "position " + std::to_string(i + 1) +
                                           " selected but an earlier position is not"});
          break;
        }
      }
      for (std::size_t i = 0; i < list.cardinality(); ++i) {
        if (g.at(r, i) && !seen_ids.insert(list.candidates[i].id).second) {
          report.uniqueness_ok = false;
          report.violations.push_back({ConstraintKind::kUniqueness, list.candidates[i].id,
                                       "candidate selected more than once"});
        }
      }
    }

    const int assigned = count_assigned(x, dest);
    if (assigned > instance.capacity(dest)) {
      report.capacity_ok[dest.offset()] = false;
      report.violations.push_back({ConstraintKind::kCapacity, instance.site_name(dest),
                                   std::to_string(assigned) + " assigned, capacity " +
                                       std::to_string(instance.capacity(dest))});
    }
  }
  return report;
}

std::string describe(const Violation& v) {
  const char* kind = v.kind == ConstraintKind::kCapacity ? "capacity"
                     : v.kind == ConstraintKind::kPrefix ? "prefix"
                                                         : "uniqueness";
  return std::string(kind) + " violation at " + v.location + ": " + v.detail;
}

std::string write_solution(const Instance& instance, const AssignmentMatrix& x, double objective,
                           const std::vector<PrefixLine>& prefixes) {
  std::ostringstream out;
  out << "solution " << format_number(objective) << '\n';
  for (int k = 1; k <= instance.ns(); ++k) {
    const SiteId dest{k};
    const BitGrid& g = x.grid(dest);
    out << "submatrix " << instance.site_name(dest) << '\n';
    for (std::size_t r = 0; r < g.rows; ++r) {
      out << "row " << instance.site_name(grid_origin(r, dest));
      for (std::size_t c = 0; c < g.cols; ++c) out << ' ' << (g.at(r, c) ? '1' : '0');
      out << '\n';
    }
    for (const auto& p : prefixes) {
      if (p.destination != dest) continue;
      out << "prefixes " << instance.site_name(dest);
      for (int n : p.lengths) out << ' ' << n;
      out << '\n';
    }
  }
  return out.str();
}

ParsedSolution parse_solution(const Instance& instance, std::string_view text) {
  ParsedSolution result;
  result.x = AssignmentMatrix::zeros(instance);
  bool have_header = false;
  std::optional<SiteId> current;
  std::vector<std::vector<bool>> rows_seen(static_cast<std::size_t>(instance.ns()));

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> ValidationError {
    return ValidationError("solution line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;

    if (keyword == "solution") {
      std::string value;
      if (!(ls >> value)) throw fail("missing objective");
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), result.declared_objective);
      if (ec != std::errc() || ptr != value.data() + value.size()) throw fail("bad objective '" + value + "'");
      have_header = true;
    } else if (keyword == "submatrix") {
      std::string name;
      ls >> name;
      current = instance.find_site(name);
      if (!current) throw fail("unknown site '" + name + "'");
      rows_seen[current->offset()].assign(static_cast<std::size_t>(instance.ns() - 1), false);
    } else if (keyword == "row") {
      if (!current) throw fail("row outside a submatrix");
      std::string name;
      ls >> name;
      auto origin = instance.find_site(name);
      if (!origin || *origin == *current) throw fail("bad origin '" + name + "'");
      BitGrid& g = result.x.grid(*current);
      const std::size_t r = grid_row(*origin, *current);
      if (rows_seen[current->offset()][r]) throw fail("duplicate row for '" + name + "'");
      rows_seen[current->offset()][r] = true;
      std::string bit;
      std::size_t c = 0;
      while (ls >> bit) {
        if (bit != "0" && bit != "1") throw fail("expected 0 or 1, got '" + bit + "'");
        if (c >= g.cols) throw ShapeError("solution line " + std::to_string(line_no) + ": too many columns");
        g.set(r, c++, bit == "1");
      }
      if (c != g.cols) {
        throw ShapeError("solution line " + std::to_string(line_no) + ": expected " +
                         std::to_string(g.cols) + " columns, got " + std::to_string(c));
      }
    } else if (keyword == "prefixes") {
      continue;
    } else {
      throw fail("unknown keyword '" + keyword + "'");
    }
  }
  if (!have_header) throw ValidationError("solution: missing 'solution <objective>' header");
  for (int k = 1; k <= instance.ns(); ++k) {
    const auto& seen = rows_seen[static_cast<std::size_t>(k - 1)];
    if (seen.empty() || !std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
      throw ShapeError("solution: incomplete submatrix for " + instance.site_name(SiteId{k}));
    }
  }
  return result;
}

}  // namespace mobility
