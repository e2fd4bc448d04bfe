#include "mobility/ga.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "mobility/ga_kernels.hpp"

namespace mobility {

void validate(const GAConfig& config) {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  };
  require(config.population_size >= 2, "population must be at least 2");
  require(config.crossover_probability >= 0.0 && config.crossover_probability <= 1.0,
          "px must lie in [0, 1]");
  require(config.mutation_probability >= 0.0 && config.mutation_probability <= 1.0,
          "pm must lie in [0, 1]");
  require(config.tournament_size >= 1, "tournament_size must be positive");
  require(config.max_generations >= 1, "max_generations must be positive");
  require(config.stagnation_limit >= 1, "stagnation must be positive");
  require(config.stagnation_limit <= config.max_generations,
          "stagnation must not exceed max_generations");
  require(config.workers >= 0, "workers must be non-negative");
}

std::string_view to_string(SelectionMethod method) {
  switch (method) {
    case SelectionMethod::kRank: return "rank";
    case SelectionMethod::kRoulette: return "roulette";
    case SelectionMethod::kTournament: return "tournament";
  }
  return "tournament";
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, int line) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ValidationError("config line " + std::to_string(line) + ": bad value '" + value +
                          "' for " + key);
  }
  return out;
}

}  // namespace

GAConfig parse_ga_config(std::string_view text) {
  GAConfig config;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    if (trim(raw).empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(raw).substr(0, eq));
    const std::string value = trim(std::string_view(raw).substr(eq + 1));
    if (key == "population") {
      config.population_size = parse_number<int>(key, value, line);
    } else if (key == "px") {
      config.crossover_probability = parse_number<double>(key, value, line);
    } else if (key == "pm") {
      config.mutation_probability = parse_number<double>(key, value, line);
    } else if (key == "selection") {
      if (value == "rank") {
        config.selection = SelectionMethod::kRank;
      } else if (value == "roulette") {
        config.selection = SelectionMethod::kRoulette;
      } else if (value == "tournament") {
        config.selection = SelectionMethod::kTournament;
      } else {
        throw ValidationError("config line " + std::to_string(line) + ": unknown selection '" + value + "'");
      }
    } else if (key == "tournament_size") {
      config.tournament_size = parse_number<int>(key, value, line);
    } else if (key == "max_generations") {
      config.max_generations = parse_number<int>(key, value, line);
    } else if (key == "stagnation") {
      config.stagnation_limit = parse_number<int>(key, value, line);
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(key, value, line);
    } else {
      throw ValidationError("config line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return config;
}

GAConfig load_ga_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ga_config(buf.str());
}

Chromosome empty_chromosome(const Instance& instance) {
  return Chromosome{std::vector<int>(instance.pair_count(), 0)};
}

AssignmentMatrix decode(const Chromosome& c, const Instance& instance) {
  if (c.genes.size() != instance.pair_count()) throw ValidationError("chromosome size mismatch");
  AssignmentMatrix x = AssignmentMatrix::zeros(instance);
  for (std::size_t p = 0; p < c.genes.size(); ++p) {
    const CandidateList& list = instance.lists()[p];
    const int n = c.genes[p];
    if (n < 0 || static_cast<std::size_t>(n) > list.cardinality()) {
      throw ValidationError("gene for " + instance.site_name(list.origin) + "->" +
                            instance.site_name(list.destination) + " out of bounds");
    }
    BitGrid& g = x.grid(list.destination);
    const std::size_t row = grid_row(list.origin, list.destination);
    for (int i = 0; i < n; ++i) g.set(row, static_cast<std::size_t>(i), true);
  }
  return x;
}

Chromosome encode(const AssignmentMatrix& x, const Instance& instance) {
  Chromosome c = empty_chromosome(instance);
  if (x.destinations() != static_cast<std::size_t>(instance.ns())) throw ShapeError("destination count mismatch");
  for (std::size_t p = 0; p < instance.pair_count(); ++p) {
    const CandidateList& list = instance.lists()[p];
    const BitGrid& g = x.grid(list.destination);
    const std::size_t row = grid_row(list.origin, list.destination);
    if (row >= g.rows) throw ShapeError("missing row");
    std::size_t n = 0;
    while (n < g.cols && g.at(row, n)) ++n;
    for (std::size_t i = n; i < g.cols; ++i) {
      if (g.at(row, i)) throw ValidationError("row is not prefix-shaped");
    }
    if (n > list.cardinality()) throw ShapeError("selection beyond list end");
    c.genes[p] = static_cast<int>(n);
  }
  return c;
}

Chromosome repair(Chromosome c, const Instance& instance) {
  const PrefixTable table(instance);
  table.check_bounds(c);
  table.repair(c);
  return c;
}

double fitness(const Chromosome& c, const Instance& instance) {
  const PrefixTable table(instance);
  table.check_bounds(c);
  Chromosome repaired = c;
  table.repair(repaired);
  return table.value(repaired);
}

std::pair<std::size_t, std::size_t> select_parents(std::span<const double> values,
                                                   SelectionMethod method, int tournament_size,
                                                   Rng& rng) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("cannot select from an empty population");

  auto pick = [&]() -> std::size_t {
    switch (method) {
      case SelectionMethod::kTournament: {
        // Distinct entrants, so a full-size tournament always sees the best.
        const std::size_t size = std::min<std::size_t>(static_cast<std::size_t>(tournament_size), n);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::size_t winner = n;
        for (std::size_t t = 0; t < size; ++t) {
          const std::size_t j = t + static_cast<std::size_t>(rng.below(n - t));
          std::swap(order[t], order[j]);
          const std::size_t cand = order[t];
          if (winner == n || values[cand] > values[winner] ||
              (values[cand] == values[winner] && cand < winner)) {
            winner = cand;
          }
        }
        return winner;
      }
      case SelectionMethod::kRoulette: {
        const double total = std::accumulate(values.begin(), values.end(), 0.0);
        if (!(total > 0.0)) return static_cast<std::size_t>(rng.below(n));
        const double r = rng.uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          acc += values[i];
          if (values[i] > 0.0 && r < acc) return i;
        }
        // Rounding left r at the top edge: take the last positive slice.
        for (std::size_t i = n; i-- > 0;) {
          if (values[i] > 0.0) return i;
        }
        return n - 1;
      }
      case SelectionMethod::kRank: {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        // Worst has rank 1, best rank n.
        const std::uint64_t total = static_cast<std::uint64_t>(n) * (n + 1) / 2;
        std::uint64_t r = rng.below(total);
        for (std::size_t pos = 0; pos < n; ++pos) {
          const std::uint64_t rank = pos + 1;
          if (r < rank) return order[pos];
          r -= rank;
        }
        return order.back();
      }
    }
    return 0;
  };

  const std::size_t first = pick();
  const std::size_t second = pick();
  return {first, second};
}

namespace detail {

std::pair<Chromosome, Chromosome> crossover(const PrefixTable& table, const Chromosome& a,
                                            const Chromosome& b, double p_x, Rng& rng) {
  Chromosome c1 = a;
  Chromosome c2 = b;
  if (rng.bernoulli(p_x)) {
    for (std::size_t g = 0; g < c1.genes.size(); ++g) {
      if (rng.below(2) == 1) std::swap(c1.genes[g], c2.genes[g]);
    }
  }
  table.repair(c1);
  table.repair(c2);
  return {std::move(c1), std::move(c2)};
}

Chromosome mutate(const PrefixTable& table, Chromosome c, double p_m, Rng& rng) {
  for (std::size_t g = 0; g < c.genes.size(); ++g) {
    if (!rng.bernoulli(p_m)) continue;
    const int step = rng.below(2) == 0 ? -1 : 1;
    c.genes[g] = std::clamp(c.genes[g] + step, 0, table.limit(g));
  }
  table.repair(c);
  return c;
}

}  // namespace detail

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, double p_x,
                                            const Instance& instance, Rng& rng) {
  const PrefixTable table(instance);
  table.check_bounds(a);
  table.check_bounds(b);
  return detail::crossover(table, a, b, p_x, rng);
}

Chromosome mutate(Chromosome c, double p_m, const Instance& instance, Rng& rng) {
  const PrefixTable table(instance);
  table.check_bounds(c);
  return detail::mutate(table, std::move(c), p_m, rng);
}

namespace {

std::size_t argmax(std::span<const double> values) {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

TracePoint trace_point(int generation, std::span<const double> values) {
  const double best = *std::max_element(values.begin(), values.end());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  return TracePoint{generation, best, mean};
}

}  // namespace

SolveResult evolve(const Instance& instance, const GAConfig& config,
                   const GenerationObserver& observer) {
  validate(config);
  const PrefixTable table(instance);
  const auto n = static_cast<std::size_t>(config.population_size);

  std::vector<Chromosome> population(n);
  std::vector<double> values(n);
  initialize_population(table, config, population);
  evaluate_population(table, population, values, config.workers);

  SolveResult result;
  int generation = 1;
  if (observer) observer(generation, population, values);
  result.fitness_trace.push_back(trace_point(generation, values));

  std::size_t best_index = argmax(values);
  Chromosome best = population[best_index];
  double best_value = values[best_index];
  int stagnant = 0;

  std::vector<Chromosome> children(n);
  std::vector<double> child_values(n);
  const bool nothing_to_choose = instance.candidate_count() == 0;

  while (!nothing_to_choose && generation < config.max_generations &&
         stagnant < config.stagnation_limit) {
    ++generation;
    breed(table, config, generation, population, values, children);
    evaluate_population(table, children, child_values, config.workers);

    // Elitist insertion: the incumbent replaces the weakest child when no
    // child matches it.
    const std::size_t child_best = argmax(child_values);
    if (child_values[child_best] < best_value) {
      const auto worst = static_cast<std::size_t>(
          std::min_element(child_values.begin(), child_values.end()) - child_values.begin());
      children[worst] = best;
      child_values[worst] = best_value;
    }
    population.swap(children);
    values.swap(child_values);

    if (observer) observer(generation, population, values);
    result.fitness_trace.push_back(trace_point(generation, values));

    best_index = argmax(values);
    if (values[best_index] > best_value) {
      best = population[best_index];
      best_value = values[best_index];
      stagnant = 0;
    } else {
      ++stagnant;
    }
  }

  result.best = decode(best, instance);
  result.best_chromosome = std::move(best);
  result.best_value = best_value;
  result.generations_run = generation;
  result.final_population_values = values;
  std::sort(result.final_population_values.begin(), result.final_population_values.end());
  return result;
}

std::string write_trace_csv(const SolveResult& result) {
  std::ostringstream out;
  out << "generation,best,mean\n";
  for (const auto& t : result.fitness_trace) {
    out << t.generation << ',' << format_number(t.best) << ',' << format_number(t.mean) << '\n';
  }
  return out.str();
}

}  // namespace mobility
