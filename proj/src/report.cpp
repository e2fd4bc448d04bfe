#include "mobility/report.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace mobility {

InfeasibleSolution::InfeasibleSolution(FeasibilityReport report)
    : std::runtime_error(report.violations.empty() ? std::string("infeasible solution")
                                                   : describe(report.violations.front())),
      report_(std::move(report)) {}

FlowSummary flow_summary(const Instance& instance, const AssignmentMatrix& x) {
  FeasibilityReport feasibility = check_feasibility(instance, x);
  if (!feasibility.feasible()) throw InfeasibleSolution(std::move(feasibility));

  FlowSummary summary;
  for (int s = 1; s <= instance.ns(); ++s) {
    summary.outflow[SiteId{s}] = 0;
    summary.inflow[SiteId{s}] = 0;
  }
  for (const CandidateList& list : instance.lists()) {
    const BitGrid& g = x.grid(list.destination);
    const std::size_t row = grid_row(list.origin, list.destination);
    int count = 0;
    for (std::size_t i = 0; i < list.cardinality(); ++i) count += g.at(row, i) ? 1 : 0;
    if (list.cardinality() == 0) continue;
    summary.rows.push_back(FlowRow{list.origin, list.destination, count});
    summary.outflow[list.origin] += count;
    summary.inflow[list.destination] += count;
  }
  return summary;
}

NetFlowGraph net_flow_graph(const FlowSummary& summary) {
  NetFlowGraph graph;
  for (const auto& [site, out] : summary.outflow) graph.nodes.push_back(site);

  std::map<std::pair<SiteId, SiteId>, int> gross;
  for (const auto& r : summary.rows) gross[{r.origin, r.destination}] += r.assigned_in;

  for (std::size_t a = 0; a < graph.nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < graph.nodes.size(); ++b) {
      const SiteId u = graph.nodes[a];
      const SiteId v = graph.nodes[b];
      const int forward = gross.count({u, v}) ? gross[{u, v}] : 0;
      const int backward = gross.count({v, u}) ? gross[{v, u}] : 0;
      if (forward > backward) graph.edges.push_back(FlowEdge{u, v, forward - backward});
      if (backward > forward) graph.edges.push_back(FlowEdge{v, u, backward - forward});
    }
  }

  if (graph.nodes.size() > static_cast<std::size_t>(kMaxCycleSites)) {
    graph.cycles_enumerated = false;
    return graph;
  }

  std::map<SiteId, std::vector<SiteId>> adjacency;
  for (const auto& e : graph.edges) adjacency[e.from].push_back(e.to);
  for (auto& [from, targets] : adjacency) std::sort(targets.begin(), targets.end());

  // Each cycle is found once, from its smallest site; only larger sites are
  // visited along the way.
  std::vector<SiteId> path;
  std::function<void(SiteId, SiteId)> walk = [&](SiteId start, SiteId at) {
    for (SiteId next : adjacency[at]) {
      if (next == start) {
        graph.cycles.push_back(path);
      } else if (next > start && std::find(path.begin(), path.end(), next) == path.end()) {
        path.push_back(next);
        walk(start, next);
        path.pop_back();
      }
    }
  };
  for (SiteId start : graph.nodes) {
    path.assign(1, start);
    walk(start, start);
  }
  return graph;
}

namespace {

struct Column {
  std::string header;
  bool right_aligned;
};

std::string render_table(const std::vector<Column>& columns,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    width[c] = columns[c].header.size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) line += "  ";
      const std::string pad(width[c] - cells[c].size(), ' ');
      line += columns[c].right_aligned ? pad + cells[c] : cells[c] + pad;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  std::vector<std::string> header;
  for (const auto& c : columns) header.push_back(c.header);
  emit(header);
  for (const auto& r : rows) emit(r);
  return out.str();
}

}  // namespace

std::string render_report(const Instance& instance, const FlowSummary& summary,
                          const NetFlowGraph& graph) {
  std::ostringstream out;

  std::vector<std::vector<std::string>> flow_rows;
  for (const auto& r : summary.rows) {
    flow_rows.push_back({instance.site_name(r.origin), instance.site_name(r.destination),
                         std::to_string(r.assigned_in)});
  }
  out << render_table({{"origin", false}, {"destination", false}, {"assigned", true}}, flow_rows);
  out << '\n';

  std::vector<std::vector<std::string>> site_rows;
  for (const auto& [site, out_count] : summary.outflow) {
    site_rows.push_back({instance.site_name(site), std::to_string(summary.inflow.at(site)),
                         std::to_string(out_count)});
  }
  out << render_table({{"site", false}, {"in", true}, {"out", true}}, site_rows);
  out << '\n';

  for (const auto& e : graph.edges) {
    out << "edge " << instance.site_name(e.from) << ' ' << instance.site_name(e.to) << ' '
        << e.count << '\n';
  }
  if (!graph.cycles_enumerated) {
    out << "# cycle enumeration skipped: more than " << kMaxCycleSites << " sites\n";
  }
  for (const auto& cycle : graph.cycles) {
    out << "cycle";
    for (SiteId s : cycle) out << ' ' << instance.site_name(s);
    out << ' ' << instance.site_name(cycle.front()) << '\n';
  }
  return out.str();
}

}  // namespace mobility
