#include "mobility/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "mobility/ga.hpp"
#include "mobility/instance.hpp"
#include "mobility/model.hpp"
#include "mobility/oracle.hpp"
#include "mobility/report.hpp"

namespace mobility {

namespace {

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(std::string("cannot open ") + what + " '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

Instance read_instance(const std::string& path, std::ostream& err) {
  std::vector<std::string> warnings;
  Instance instance = parse_instance(read_file(path, "instance file"), warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  return canonicalize(std::move(instance));
}

void print_violations(const FeasibilityReport& report, std::ostream& out) {
  out << "infeasible\n";
  for (const auto& v : report.violations) out << describe(v) << '\n';
}

struct Options {
  std::string instance;
  std::string solution;
  std::string config;
  std::string out;
  std::string trace;
  std::string method = "greedy";
  int threads = 0;
};

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance instance = read_instance(o.instance, err);
  GAConfig config = o.config.empty() ? GAConfig{} : parse_ga_config(read_file(o.config, "config file"));
  config.workers = o.threads;
  const SolveResult result = evolve(instance, config);

  const std::string solution = write_solution(instance, result.best, result.best_value);
  if (o.out.empty()) {
    out << solution;
  } else {
    write_file(o.out, solution);
  }
  if (!o.trace.empty()) write_file(o.trace, write_trace_csv(result));
  (o.out.empty() ? err : out) << "best " << format_number(result.best_value) << " after "
                              << result.generations_run << " generations\n";
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance instance = read_instance(o.instance, err);
  const OracleResult result =
      o.method == "exhaustive" ? solve_exhaustive(instance) : solve_greedy(instance);
  out << "optimum " << format_number(result.best_value) << '\n';
  out << write_solution(instance, result.best, result.best_value, result.prefix_lines());
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance instance = read_instance(o.instance, err);
  const ParsedSolution parsed = parse_solution(instance, read_file(o.solution, "solution file"));
  const FeasibilityReport report = check_feasibility(instance, parsed.x);
  if (!report.feasible()) {
    print_violations(report, out);
    return kExitInfeasible;
  }
  const double objective = total_objective(build_weight_matrices(instance), parsed.x);
  if (objective != parsed.declared_objective) {
    err << "error: solution declares objective " << format_number(parsed.declared_objective)
        << " but its assignment is worth " << format_number(objective) << '\n';
    return kExitValidation;
  }
  out << "feasible, objective " << format_number(objective) << '\n';
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance instance = read_instance(o.instance, err);
  const ParsedSolution parsed = parse_solution(instance, read_file(o.solution, "solution file"));
  try {
    const FlowSummary summary = flow_summary(instance, parsed.x);
    out << render_report(instance, summary, net_flow_graph(summary));
  } catch (const InfeasibleSolution& e) {
    print_violations(e.report(), out);
    return kExitInfeasible;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inter-site mobility assignment: genetic solver, exact oracle, reports", "mobility"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Run the genetic algorithm");
  solve->add_option("instance", o.instance, "Instance file")->required();
  solve->add_option("--config", o.config, "GA config file (key = value)");
  solve->add_option("--out", o.out, "Write the solution here instead of stdout");
  solve->add_option("--trace", o.trace, "Write the fitness trace CSV here");
  solve->add_option("--threads", o.threads, "Worker threads (0 = default)")->check(CLI::NonNegativeNumber);

  auto* oracle = app.add_subcommand("oracle", "Solve exactly");
  oracle->add_option("instance", o.instance, "Instance file")->required();
  oracle->add_option("--method", o.method, "greedy or exhaustive")
      ->check(CLI::IsMember({"greedy", "exhaustive"}));

  auto* verify = app.add_subcommand("verify", "Check a solution and recompute its objective");
  verify->add_option("instance", o.instance, "Instance file")->required();
  verify->add_option("solution", o.solution, "Solution file")->required();

  auto* report = app.add_subcommand("report", "Flow summary and net-flow graph of a solution");
  report->add_option("instance", o.instance, "Instance file")->required();
  report->add_option("solution", o.solution, "Solution file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, out, err);
    if (oracle->parsed()) return cmd_oracle(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    return cmd_report(o, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const SearchSpaceTooLarge& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitValidation;
}

}  // namespace mobility
