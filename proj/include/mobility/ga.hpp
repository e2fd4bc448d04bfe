#pragma once

/// @file ga.hpp
/// @brief Genetic algorithm over prefix-length chromosomes.
///
/// A chromosome holds one gene per ordered (origin, destination) pair: the
/// number n_jk of leading candidates selected from that weight-sorted list.
/// Decoding therefore always satisfies the prefix constraint, and every
/// operator finishes with `repair`, which trims the cheapest tails until each
/// destination is within capacity. Fitness is the plain objective of the
/// repaired phenotype; infeasible individuals are never scored.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mobility/instance.hpp"
#include "mobility/model.hpp"
#include "mobility/rng.hpp"

namespace mobility {

struct Chromosome {
  std::vector<int> genes;  // indexed by Instance pair index

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

enum class SelectionMethod { kRank, kRoulette, kTournament };

struct GAConfig {
  int population_size = 30;
  double crossover_probability = 0.8;
  double mutation_probability = 0.1;
  SelectionMethod selection = SelectionMethod::kTournament;
  int tournament_size = 2;
  int max_generations = 200;
  int stagnation_limit = 50;
  std::uint64_t seed = 1;
  /// Threads for breeding and evaluation; 0 uses the OpenMP default.
  /// Results do not depend on this value.
  int workers = 0;
};

/// Throws std::invalid_argument when a field is out of range.
void validate(const GAConfig& config);

/// `key = value` lines: population, px, pm, selection, tournament_size,
/// max_generations, stagnation, seed. Unset keys keep their defaults.
GAConfig parse_ga_config(std::string_view text);
GAConfig load_ga_config(const std::string& path);

std::string_view to_string(SelectionMethod method);

struct TracePoint {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
};

struct SolveResult {
  AssignmentMatrix best;
  Chromosome best_chromosome;
  double best_value = 0.0;
  int generations_run = 0;
  std::vector<TracePoint> fitness_trace;
  std::vector<double> final_population_values;  // ascending
};

/// All-zero chromosome sized for `instance`.
Chromosome empty_chromosome(const Instance& instance);

/// Throws ValidationError when a gene is outside [0, list size].
AssignmentMatrix decode(const Chromosome& c, const Instance& instance);

/// Inverse of decode on prefix-shaped matrices; throws ValidationError otherwise.
Chromosome encode(const AssignmentMatrix& x, const Instance& instance);

Chromosome repair(Chromosome c, const Instance& instance);
double fitness(const Chromosome& c, const Instance& instance);

/// Indices of two parents drawn from `values`.
std::pair<std::size_t, std::size_t> select_parents(std::span<const double> values,
                                                   SelectionMethod method, int tournament_size,
                                                   Rng& rng);

/// Uniform gene exchange with probability p_x, copies otherwise; both children repaired.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, double p_x,
                                            const Instance& instance, Rng& rng);

/// Each gene moves by +-1 with probability p_m, clamped to its list; result repaired.
Chromosome mutate(Chromosome c, double p_m, const Instance& instance, Rng& rng);

/// Called once per generation with the evaluated population.
using GenerationObserver =
    std::function<void(int generation, std::span<const Chromosome>, std::span<const double>)>;

SolveResult evolve(const Instance& instance, const GAConfig& config,
                   const GenerationObserver& observer = {});

/// `generation,best,mean` CSV.
std::string write_trace_csv(const SolveResult& result);

}  // namespace mobility
