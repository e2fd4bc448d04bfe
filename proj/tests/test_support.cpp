#include "test_support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mobility::testing {

std::string data_path(const std::string& name) { return std::string(MOBILITY_DATA_DIR) + "/" + name; }

std::string golden_path(const std::string& name) {
  return std::string(MOBILITY_GOLDEN_DIR) + "/" + name;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Instance sample_instance() { return canonicalize(load_instance(data_path("sample_instance"))); }

Instance random_instance(Rng& rng, const RandomInstanceParams& params) {
  const int ns = params.min_sites +
                 static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_sites - params.min_sites + 1)));
  std::vector<std::string> names;
  std::vector<int> capacities;
  for (int s = 1; s <= ns; ++s) {
    names.push_back("S" + std::to_string(s));
    capacities.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_capacity + 1))));
  }
  Instance instance(names, capacities);
  int next_id = 0;
  for (int k = 1; k <= ns; ++k) {
    for (int j = 1; j <= ns; ++j) {
      if (j == k) continue;
      const int size = static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_list + 1)));
      for (int i = 0; i < size; ++i) {
        Candidate c;
        c.id = "c" + std::to_string(next_id++);
        c.origin = SiteId{j};
        c.destination = SiteId{k};
        c.weight = static_cast<double>(rng.below(static_cast<std::uint64_t>(params.max_weight + 1)));
        instance.add_candidate(std::move(c));
      }
    }
  }
  return canonicalize(std::move(instance));
}

double brute_force_optimum(const Instance& instance) {
  struct Item {
    std::size_t list;
    std::size_t position;
    int destination;
    double weight;
  };
  std::vector<Item> items;
  for (std::size_t l = 0; l < instance.lists().size(); ++l) {
    const auto& list = instance.lists()[l];
    for (std::size_t i = 0; i < list.cardinality(); ++i) {
      items.push_back({l, i, list.destination.offset(), list.weight(i)});
    }
  }
  if (items.size() > 20) throw std::invalid_argument("brute force limited to 20 candidates");

  double best = 0.0;
  const std::uint32_t subsets = 1u << items.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::vector<int> per_destination(static_cast<std::size_t>(instance.ns()), 0);
    bool ok = true;
    double value = 0.0;
    for (std::size_t t = 0; t < items.size() && ok; ++t) {
      if (!(mask >> t & 1u)) continue;
      value += items[t].weight;
      ++per_destination[static_cast<std::size_t>(items[t].destination)];
      // Prefix: the item just before in the same list must be chosen too.
      if (items[t].position > 0 && !(mask >> (t - 1) & 1u)) ok = false;
    }
    for (int k = 0; k < instance.ns() && ok; ++k) {
      if (per_destination[static_cast<std::size_t>(k)] > instance.capacities()[static_cast<std::size_t>(k)]) ok = false;
    }
    if (ok && value > best) best = value;
  }
  return best;
}

AssignmentMatrix prefix_matrix(const Instance& instance, std::initializer_list<PrefixSpec> spec) {
  AssignmentMatrix x = AssignmentMatrix::zeros(instance);
  for (const auto& s : spec) {
    for (int i = 0; i < s.length; ++i) {
      x.select(SiteId{s.origin}, SiteId{s.destination}, static_cast<std::size_t>(i));
    }
  }
  return x;
}

}  // namespace mobility::testing
