#include "mobility/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

namespace mobility {

double aggregate_weight(const CriteriaProfile& profile) {
  bool any_positive = false;
  for (const auto& c : profile.coefficients) {
    if (c.value < 0.0) throw ValidationError("negative coefficient for criterion '" + c.name + "'");
    any_positive = any_positive || c.value > 0.0;
  }
  if (!any_positive) throw ValidationError("no positive coefficient");

  double total = 0.0;
  for (const auto& v : profile.values) {
    if (v.value < 0.0) throw ValidationError("negative score for criterion '" + v.name + "'");
    auto it = std::find_if(profile.coefficients.begin(), profile.coefficients.end(),
                           [&](const Criterion& c) { return c.name == v.name; });
    if (it == profile.coefficients.end()) {
      throw ValidationError("missing coefficient for criterion '" + v.name + "'");
    }
    total += it->value * v.value;
  }
  return total;
}

Instance::Instance(std::vector<std::string> site_names, std::vector<int> capacities)
    : site_names_(std::move(site_names)), capacities_(std::move(capacities)) {
  if (site_names_.size() < 2) throw ValidationError("an instance needs at least 2 sites");
  if (capacities_.size() != site_names_.size()) {
    throw ValidationError("expected " + std::to_string(site_names_.size()) + " capacities, got " +
                          std::to_string(capacities_.size()));
  }
  std::set<std::string> seen;
  for (const auto& name : site_names_) {
    if (!seen.insert(name).second) throw ValidationError("duplicate site name '" + name + "'");
  }
  for (int c : capacities_) {
    if (c < 0) throw ValidationError("negative capacity");
  }
  const int n = ns();
  lists_.reserve(static_cast<std::size_t>(n * (n - 1)));
  for (int k = 1; k <= n; ++k) {
    for (int j = 1; j <= n; ++j) {
      if (j != k) lists_.push_back(CandidateList{SiteId{j}, SiteId{k}, {}});
    }
  }
}

std::optional<SiteId> Instance::find_site(std::string_view name) const {
  auto it = std::find(site_names_.begin(), site_names_.end(), name);
  if (it == site_names_.end()) return std::nullopt;
  return SiteId{static_cast<int>(it - site_names_.begin()) + 1};
}

void Instance::check_site(SiteId s) const {
  if (s.index < 1 || s.index > ns()) {
    throw ValidationError("site index " + std::to_string(s.index) + " out of range [1, " +
                          std::to_string(ns()) + "]");
  }
}

void Instance::set_capacity(SiteId destination, int value) {
  check_site(destination);
  if (value < 0) throw ValidationError("negative capacity");
  capacities_[destination.offset()] = value;
}

std::size_t Instance::pair_index(SiteId origin, SiteId destination) const {
  check_site(origin);
  check_site(destination);
  if (origin == destination) throw ValidationError("origin equals destination");
  return static_cast<std::size_t>(destination.offset()) * static_cast<std::size_t>(ns() - 1) +
         grid_row(origin, destination);
}

std::vector<std::size_t> Instance::pairs_to(SiteId destination) const {
  check_site(destination);
  std::vector<std::size_t> out(static_cast<std::size_t>(ns() - 1));
  const std::size_t base = static_cast<std::size_t>(destination.offset()) * out.size();
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = base + r;
  return out;
}

void Instance::add_candidate(Candidate candidate) {
  check_site(candidate.origin);
  check_site(candidate.destination);
  if (candidate.origin == candidate.destination) {
    throw ValidationError("origin equals destination for candidate '" + candidate.id + "'");
  }
  if (!(candidate.weight >= 0.0)) {
    throw ValidationError("negative weight for candidate '" + candidate.id + "'");
  }
  if (ids_.count(candidate.id)) throw ValidationError("duplicate candidate id '" + candidate.id + "'");
  ids_.insert(candidate.id);
  lists_[pair_index(candidate.origin, candidate.destination)].candidates.push_back(
      std::move(candidate));
}

std::size_t Instance::candidate_count() const {
  std::size_t n = 0;
  for (const auto& l : lists_) n += l.cardinality();
  return n;
}

double Instance::total_weight() const {
  double w = 0.0;
  for (const auto& l : lists_) {
    for (const auto& c : l.candidates) w += c.weight;
  }
  return w;
}

bool Instance::is_canonical() const {
  return std::all_of(lists_.begin(), lists_.end(), [](const CandidateList& l) {
    return std::is_sorted(l.candidates.begin(), l.candidates.end(),
                          [](const Candidate& a, const Candidate& b) { return a.weight > b.weight; });
  });
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string kind_label(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedLine: return "malformed line";
    case ParseErrorKind::kMissingHeader: return "missing header";
    case ParseErrorKind::kUnknownSite: return "unknown site";
    case ParseErrorKind::kOriginEqualsDestination: return "origin equals destination";
    case ParseErrorKind::kNegativeWeight: return "negative weight";
    case ParseErrorKind::kDuplicateCandidate: return "duplicate candidate id";
    case ParseErrorKind::kCapacityCount: return "capacity count mismatch";
    case ParseErrorKind::kMissingCoefficient: return "missing coefficient";
    case ParseErrorKind::kBadCoefficient: return "bad coefficient";
  }
  return "error";
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<long> to_long(std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// "a=1,b=2" -> criteria
std::vector<Criterion> parse_assignments(std::string_view text, int line) {
  std::vector<Criterion> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    std::size_t eq = item.find('=');
    if (item.empty() || eq == std::string_view::npos || eq == 0) {
      throw ParseError(ParseErrorKind::kMalformedLine, line, "expected name=value, got '" + std::string(item) + "'");
    }
    auto value = to_double(item.substr(eq + 1));
    if (!value) {
      throw ParseError(ParseErrorKind::kMalformedLine, line, "bad number in '" + std::string(item) + "'");
    }
    out.push_back(Criterion{std::string(item.substr(0, eq)), *value});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct PendingCandidate {
  Candidate candidate;
  int line = 0;
  bool needs_aggregation = false;
};

}  // namespace

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& detail)
    : ValidationError("line " + std::to_string(line) + ": " + kind_label(kind) +
                      (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      line_(line) {}

Instance parse_instance(std::string_view text) {
  std::vector<std::string> warnings;
  return parse_instance(text, warnings);
}

Instance parse_instance(std::string_view text, std::vector<std::string>& warnings) {
  std::optional<std::vector<std::string>> names;
  std::optional<std::vector<int>> capacities;
  int capacity_line = 0;
  std::vector<Criterion> alpha;
  int alpha_line = 0;
  std::vector<PendingCandidate> pending;
  std::set<std::string> ids;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;

    const std::string_view keyword = tok[0];
    if (keyword == "sites") {
      if (names) throw ParseError(ParseErrorKind::kMalformedLine, line_no, "repeated sites line");
      auto count = tok.size() >= 2 ? to_long(tok[1]) : std::nullopt;
      if (!count || *count < 2) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'sites <NS> <names...>' with NS >= 2");
      }
      if (tok.size() != static_cast<std::size_t>(*count) + 2) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no,
                         "declared " + std::to_string(*count) + " sites but named " +
                             std::to_string(tok.size() - 2));
      }
      names.emplace();
      for (std::size_t i = 2; i < tok.size(); ++i) {
        if (std::find(names->begin(), names->end(), tok[i]) != names->end()) {
          throw ParseError(ParseErrorKind::kMalformedLine, line_no, "duplicate site name '" + std::string(tok[i]) + "'");
        }
        names->emplace_back(tok[i]);
      }
    } else if (keyword == "capacity") {
      if (capacities) throw ParseError(ParseErrorKind::kMalformedLine, line_no, "repeated capacity line");
      capacities.emplace();
      capacity_line = line_no;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        auto v = to_long(tok[i]);
        if (!v || *v < 0) {
          throw ParseError(ParseErrorKind::kMalformedLine, line_no, "bad capacity '" + std::string(tok[i]) + "'");
        }
        capacities->push_back(static_cast<int>(*v));
      }
    } else if (keyword == "alpha") {
      if (tok.size() != 2) throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'alpha name=coef,...'");
      alpha = parse_assignments(tok[1], line_no);
      alpha_line = line_no;
      for (const auto& a : alpha) {
        if (a.value < 0.0) {
          throw ParseError(ParseErrorKind::kBadCoefficient, line_no, "negative coefficient for '" + a.name + "'");
        }
      }
    } else if (keyword == "cand") {
      if (!names) throw ParseError(ParseErrorKind::kMissingHeader, line_no, "'sites' must precede candidates");
      // cand <id> <origin> <dest> <weight>
      // cand <id> <origin> <dest> criteria <a=..,..>
      // cand <id> <origin> <dest> <weight> criteria <a=..,..>
      if (tok.size() != 5 && tok.size() != 6 && tok.size() != 7) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'cand <id> <origin> <dest> <weight>'");
      }
      PendingCandidate pc;
      pc.line = line_no;
      pc.candidate.id = std::string(tok[1]);
      auto site = [&](std::string_view name) {
        auto it = std::find(names->begin(), names->end(), name);
        if (it == names->end()) throw ParseError(ParseErrorKind::kUnknownSite, line_no, "'" + std::string(name) + "'");
        return SiteId{static_cast<int>(it - names->begin()) + 1};
      };
      pc.candidate.origin = site(tok[2]);
      pc.candidate.destination = site(tok[3]);
      if (pc.candidate.origin == pc.candidate.destination) {
        throw ParseError(ParseErrorKind::kOriginEqualsDestination, line_no, "candidate '" + pc.candidate.id + "'");
      }

      std::size_t next = 4;
      bool has_weight = false;
      if (tok[next] != "criteria") {
        auto w = to_double(tok[next]);
        if (!w) throw ParseError(ParseErrorKind::kMalformedLine, line_no, "bad weight '" + std::string(tok[next]) + "'");
        if (!(*w >= 0.0)) throw ParseError(ParseErrorKind::kNegativeWeight, line_no, "candidate '" + pc.candidate.id + "'");
        pc.candidate.weight = *w;
        has_weight = true;
        ++next;
      }
      if (next < tok.size()) {
        if (tok[next] != "criteria" || next + 2 != tok.size()) {
          throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'criteria name=value,...'");
        }
        CriteriaProfile profile;
        profile.values = parse_assignments(tok[next + 1], line_no);
        for (const auto& v : profile.values) {
          if (v.value < 0.0) throw ParseError(ParseErrorKind::kNegativeWeight, line_no, "criterion '" + v.name + "'");
        }
        pc.candidate.criteria = std::move(profile);
        if (has_weight) {
          warnings.push_back("line " + std::to_string(line_no) + ": candidate '" + pc.candidate.id +
                             "' has both a weight and criteria; using the weight");
        } else {
          pc.needs_aggregation = true;
        }
      } else if (!has_weight) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no, "missing weight");
      }

      if (!ids.insert(pc.candidate.id).second) {
        throw ParseError(ParseErrorKind::kDuplicateCandidate, line_no, "'" + pc.candidate.id + "'");
      }
      pending.push_back(std::move(pc));
    } else {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "unknown keyword '" + std::string(keyword) + "'");
    }
  }

  if (!names) throw ParseError(ParseErrorKind::kMissingHeader, line_no, "no 'sites' line");
  if (!capacities) throw ParseError(ParseErrorKind::kCapacityCount, line_no, "no 'capacity' line");
  if (capacities->size() != names->size()) {
    throw ParseError(ParseErrorKind::kCapacityCount, capacity_line,
                     "expected " + std::to_string(names->size()) + " values, got " +
                         std::to_string(capacities->size()));
  }
  if (!alpha.empty() &&
      std::none_of(alpha.begin(), alpha.end(), [](const Criterion& c) { return c.value > 0.0; })) {
    throw ParseError(ParseErrorKind::kBadCoefficient, alpha_line, "at least one coefficient must be positive");
  }

  Instance instance(std::move(*names), std::move(*capacities));
  for (auto& pc : pending) {
    if (pc.needs_aggregation) {
      pc.candidate.criteria->coefficients = alpha;
      for (const auto& v : pc.candidate.criteria->values) {
        bool known = std::any_of(alpha.begin(), alpha.end(), [&](const Criterion& a) { return a.name == v.name; });
        if (!known) throw ParseError(ParseErrorKind::kMissingCoefficient, pc.line, "criterion '" + v.name + "'");
      }
      if (alpha.empty()) throw ParseError(ParseErrorKind::kMissingCoefficient, pc.line, "no 'alpha' line");
      pc.candidate.weight = aggregate_weight(*pc.candidate.criteria);
    }
    instance.add_candidate(std::move(pc.candidate));
  }
  return instance;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "sites " << instance.ns();
  for (const auto& n : instance.site_names()) out << ' ' << n;
  out << "\ncapacity";
  for (int c : instance.capacities()) out << ' ' << c;
  out << '\n';
  for (const auto& l : instance.lists()) {
    for (const auto& c : l.candidates) {
      out << "cand " << c.id << ' ' << instance.site_name(c.origin) << ' '
          << instance.site_name(c.destination) << ' ' << format_number(c.weight) << '\n';
    }
  }
  return out.str();
}

Instance canonicalize(Instance instance) {
  for (auto& l : instance.lists_) {
    std::stable_sort(l.candidates.begin(), l.candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.weight > b.weight; });
  }
  return instance;
}

WeightMatrix build_weight_matrices(const Instance& instance) {
  WeightMatrix beta;
  const int n = instance.ns();
  beta.grids.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const SiteId dest{k};
    const auto pairs = instance.pairs_to(dest);
    WeightGrid& g = beta.grids[dest.offset()];
    g.rows = pairs.size();
    for (auto p : pairs) g.cols = std::max(g.cols, instance.lists()[p].cardinality());
    g.values.assign(g.rows * g.cols, 0.0);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      const auto& l = instance.lists()[pairs[r]];
      for (std::size_t i = 0; i < l.cardinality(); ++i) g.values[r * g.cols + i] = l.weight(i);
    }
  }
  return beta;
}

}  // namespace mobility
