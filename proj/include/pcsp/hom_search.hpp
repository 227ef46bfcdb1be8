#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pcsp/core.hpp"

namespace pcsp {

/**
 * Backtracking search for homomorphisms into a small target (at most 64
 * values) with generalized arc consistency.
 *
 * Variables are branched on in index order and values in increasing order, so
 * solutions are produced in lexicographic order. Propagation only removes
 * values that belong to no solution extending the current partial
 * assignment, which keeps that order intact.
 */
class HomSearch {
 public:
  HomSearch(int num_variables, int domain_size);

  /// Registers a relation over the target domain and returns its id.
  int add_relation(std::vector<Tuple> tuples);
  void add_constraint(int relation, Tuple scope);
  /// Restricts a variable to the values set in `mask`.
  void restrict(int variable, std::uint64_t mask);

  std::optional<std::vector<int>> first_solution();
  /// Calls `visit` for every solution in order until it returns false.
  void for_each_solution(const std::function<bool(const std::vector<int>&)>& visit);

  std::uint64_t nodes_visited() const { return nodes_; }

 private:
  struct Item {
    int relation;
    Tuple scope;
    std::vector<std::pair<int, int>> equal_positions;
  };

  bool propagate(std::vector<std::uint64_t>& domains, std::vector<int> queue) const;
  bool revise(const Item& item, std::vector<std::uint64_t>& domains,
              std::vector<int>& changed) const;
  bool search(std::vector<std::uint64_t>& domains, int next,
              const std::function<bool(const std::vector<int>&)>& visit);

  int num_variables_;
  int domain_size_;
  std::vector<std::vector<Tuple>> relations_;
  std::vector<Item> items_;
  std::vector<std::vector<int>> watch_;
  std::vector<std::uint64_t> initial_;
  std::uint64_t nodes_ = 0;
};

}  // namespace pcsp
