#include "mobility/ga_kernels.hpp"

#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mobility {

PrefixTable::PrefixTable(const Instance& instance)
    : by_destination_(static_cast<std::size_t>(instance.ns())), capacities_(instance.capacities()) {
  if (!instance.is_canonical()) throw std::invalid_argument("GA requires a canonicalized instance");
  weights_.reserve(instance.pair_count());
  sums_.reserve(instance.pair_count());
  for (std::size_t p = 0; p < instance.pair_count(); ++p) {
    const CandidateList& list = instance.lists()[p];
    std::vector<double> w(list.cardinality());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = list.weight(i);
    std::vector<double> s(w.size() + 1, 0.0);
    std::partial_sum(w.begin(), w.end(), s.begin() + 1);
    weights_.push_back(std::move(w));
    sums_.push_back(std::move(s));
    by_destination_[list.destination.offset()].push_back(p);
  }
}

void PrefixTable::check_bounds(const Chromosome& c) const {
  if (c.genes.size() != weights_.size()) {
    throw ValidationError("chromosome has " + std::to_string(c.genes.size()) + " genes, expected " +
                          std::to_string(weights_.size()));
  }
  for (std::size_t g = 0; g < c.genes.size(); ++g) {
    if (c.genes[g] < 0 || c.genes[g] > limit(g)) {
      throw ValidationError("gene " + std::to_string(g) + " = " + std::to_string(c.genes[g]) +
                            " outside [0, " + std::to_string(limit(g)) + "]");
    }
  }
}

void PrefixTable::repair(Chromosome& c) const {
  for (std::size_t k = 0; k < by_destination_.size(); ++k) {
    const auto& genes = by_destination_[k];
    int assigned = 0;
    for (auto g : genes) assigned += c.genes[g];
    while (assigned > capacities_[k]) {
      // Cheapest last-selected candidate; on ties the later (higher) origin.
      std::size_t victim = genes.size();
      double cheapest = 0.0;
      for (std::size_t r = 0; r < genes.size(); ++r) {
        const int n = c.genes[genes[r]];
        if (n == 0) continue;
        const double tail = weights_[genes[r]][static_cast<std::size_t>(n - 1)];
        if (victim == genes.size() || tail <= cheapest) {
          victim = r;
          cheapest = tail;
        }
      }
      --c.genes[genes[victim]];
      --assigned;
    }
  }
}

double PrefixTable::value(const Chromosome& c) const {
  double total = 0.0;
  for (std::size_t g = 0; g < c.genes.size(); ++g) total += prefix_sum(g, c.genes[g]);
  return total;
}

namespace {

int thread_count(int workers) {
#ifdef _OPENMP
  return workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
  return 1;
#endif
}

Chromosome random_individual(const PrefixTable& table, Rng rng) {
  Chromosome c;
  c.genes.resize(table.genes());
  for (std::size_t g = 0; g < c.genes.size(); ++g) {
    c.genes[g] = static_cast<int>(rng.below(static_cast<std::uint64_t>(table.limit(g)) + 1));
  }
  table.repair(c);
  return c;
}

void breed_slot(const PrefixTable& table, const GAConfig& config, int generation,
                std::span<const Chromosome> parents, std::span<const double> values,
                std::span<Chromosome> children, std::size_t slot) {
  Rng rng = Rng::substream(config.seed, static_cast<std::uint64_t>(generation), slot);
  auto [ia, ib] = select_parents(values, config.selection, config.tournament_size, rng);
  auto [c1, c2] = detail::crossover(table, parents[ia], parents[ib], config.crossover_probability, rng);
  children[2 * slot] = detail::mutate(table, std::move(c1), config.mutation_probability, rng);
  if (2 * slot + 1 < children.size()) {
    children[2 * slot + 1] = detail::mutate(table, std::move(c2), config.mutation_probability, rng);
  }
}

}  // namespace

void initialize_population(const PrefixTable& table, const GAConfig& config,
                           std::span<Chromosome> out) {
  const auto n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) num_threads(thread_count(config.workers))
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        random_individual(table, Rng::substream(config.seed, 0, static_cast<std::uint64_t>(i)));
  }
}

void initialize_population_serial(const PrefixTable& table, const GAConfig& config,
                                  std::span<Chromosome> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = random_individual(table, Rng::substream(config.seed, 0, i));
  }
}

void evaluate_population(const PrefixTable& table, std::span<const Chromosome> population,
                         std::span<double> values, int workers) {
  const auto n = static_cast<long>(population.size());
#pragma omp parallel for schedule(static) num_threads(thread_count(workers))
  for (long i = 0; i < n; ++i) {
    values[static_cast<std::size_t>(i)] = table.value(population[static_cast<std::size_t>(i)]);
  }
}

void evaluate_population_serial(const PrefixTable& table, std::span<const Chromosome> population,
                                std::span<double> values) {
  for (std::size_t i = 0; i < population.size(); ++i) values[i] = table.value(population[i]);
}

void breed(const PrefixTable& table, const GAConfig& config, int generation,
           std::span<const Chromosome> parents, std::span<const double> values,
           std::span<Chromosome> children) {
  const auto slots = static_cast<long>((children.size() + 1) / 2);
#pragma omp parallel for schedule(static) num_threads(thread_count(config.workers))
  for (long s = 0; s < slots; ++s) {
    breed_slot(table, config, generation, parents, values, children, static_cast<std::size_t>(s));
  }
}

void breed_serial(const PrefixTable& table, const GAConfig& config, int generation,
                  std::span<const Chromosome> parents, std::span<const double> values,
                  std::span<Chromosome> children) {
  const std::size_t slots = (children.size() + 1) / 2;
  for (std::size_t s = 0; s < slots; ++s) {
    breed_slot(table, config, generation, parents, values, children, s);
  }
}

}  // namespace mobility
