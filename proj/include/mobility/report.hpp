#pragma once

/// @file report.hpp
/// @brief Flow summaries and the net-flow site graph of an assignment.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobility/instance.hpp"
#include "mobility/model.hpp"

namespace mobility {

class InfeasibleSolution : public std::runtime_error {
 public:
  explicit InfeasibleSolution(FeasibilityReport report);
  const FeasibilityReport& report() const { return report_; }

 private:
  FeasibilityReport report_;
};

struct FlowRow {
  SiteId origin;
  SiteId destination;
  int assigned_in = 0;
};

struct FlowSummary {
  std::vector<FlowRow> rows;      // ascending destination, then origin
  std::map<SiteId, int> outflow;  // every site, including zero
  std::map<SiteId, int> inflow;   // N_k per destination
};

/// Throws InfeasibleSolution when x violates a constraint.
FlowSummary flow_summary(const Instance& instance, const AssignmentMatrix& x);

struct FlowEdge {
  SiteId from;
  SiteId to;
  int count = 0;

  friend bool operator==(const FlowEdge&, const FlowEdge&) = default;
};

struct NetFlowGraph {
  std::vector<SiteId> nodes;
  std::vector<FlowEdge> edges;
  /// Simple directed cycles, each starting at its smallest site and listed
  /// without repeating the start. Empty when enumeration was refused.
  std::vector<std::vector<SiteId>> cycles;
  bool cycles_enumerated = true;
};

inline constexpr int kMaxCycleSites = 12;

/// Cancels opposite flows per site pair and enumerates simple cycles.
NetFlowGraph net_flow_graph(const FlowSummary& summary);

/// Aligned text table of the summary, then `edge` and `cycle` lines.
std::string render_report(const Instance& instance, const FlowSummary& summary,
                          const NetFlowGraph& graph);

}  // namespace mobility
