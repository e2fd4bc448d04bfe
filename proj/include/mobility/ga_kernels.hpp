#pragma once

// Population-wide kernels behind evolve(). Each has an OpenMP version and a
// serial reference; both must produce identical outputs for any thread count
// because every slot draws from its own Rng substream.

#include <cstddef>
#include <span>
#include <vector>

#include "mobility/ga.hpp"
#include "mobility/instance.hpp"

namespace mobility {

/// Weights and prefix sums per pair, shared read-only by all kernels.
class PrefixTable {
 public:
  explicit PrefixTable(const Instance& instance);

  std::size_t genes() const { return weights_.size(); }
  int limit(std::size_t gene) const { return static_cast<int>(weights_[gene].size()); }
  double prefix_sum(std::size_t gene, int n) const { return sums_[gene][static_cast<std::size_t>(n)]; }

  void check_bounds(const Chromosome& c) const;
  void repair(Chromosome& c) const;
  double value(const Chromosome& c) const;

 private:
  std::vector<std::vector<double>> weights_;
  std::vector<std::vector<double>> sums_;
  std::vector<std::vector<std::size_t>> by_destination_;  // gene indices per destination
  std::vector<int> capacities_;
};

/// Random repaired individuals; slot i uses substream (seed, 0, i).
void initialize_population(const PrefixTable& table, const GAConfig& config,
                           std::span<Chromosome> out);
void initialize_population_serial(const PrefixTable& table, const GAConfig& config,
                                  std::span<Chromosome> out);

void evaluate_population(const PrefixTable& table, std::span<const Chromosome> population,
                         std::span<double> values, int workers = 0);
void evaluate_population_serial(const PrefixTable& table, std::span<const Chromosome> population,
                                std::span<double> values);

/// Children of `parents` for one generation. Slot p fills children 2p and
/// 2p+1 using substream (seed, generation, p).
void breed(const PrefixTable& table, const GAConfig& config, int generation,
           std::span<const Chromosome> parents, std::span<const double> values,
           std::span<Chromosome> children);
void breed_serial(const PrefixTable& table, const GAConfig& config, int generation,
                  std::span<const Chromosome> parents, std::span<const double> values,
                  std::span<Chromosome> children);

namespace detail {

std::pair<Chromosome, Chromosome> crossover(const PrefixTable& table, const Chromosome& a,
                                            const Chromosome& b, double p_x, Rng& rng);
Chromosome mutate(const PrefixTable& table, Chromosome c, double p_m, Rng& rng);

}  // namespace detail

}  // namespace mobility
