#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcsp/core.hpp"

namespace pcsp {

/** Counts of each domain value among a function's arguments. */
using Histogram = std::vector<std::int64_t>;

/// All histograms with `parts` entries summing to `total`, lexicographic.
std::vector<Histogram> enumerate_histograms(int total, int parts);
/// Position of `h` in enumerate_histograms(sum(h), h.size()).
std::int64_t histogram_rank(std::span<const std::int64_t> h);
/// Number of histograms with `parts` entries summing to `total`.
std::int64_t histogram_count(std::int64_t total, int parts);

/** A map pi : [L] -> [L'], stored 0-based. */
struct MinorMap {
  int target_arity = 0;
  std::vector<int> images;

  int source_arity() const { return static_cast<int>(images.size()); }
  /// Throws ValidationError when an image is outside [0, target_arity).
  void validate() const;
  static MinorMap identity(int arity);
  /// The map i -> outer(inner(i)).
  static MinorMap compose(const MinorMap& outer, const MinorMap& inner);
  bool is_bijection() const;

  bool operator==(const MinorMap&) const = default;
};

/**
 * An explicit map A^L -> B. Arguments are value indices; the table is indexed
 * in mixed radix |A| with the first argument most significant.
 */
class FunctionTable {
 public:
  FunctionTable(int arity, int domain_size, int codomain_size, std::vector<int> table);
  static FunctionTable from_function(int arity, int domain_size, int codomain_size,
                                     const std::function<int(std::span<const int>)>& fn);

  int arity() const { return arity_; }
  int domain_size() const { return domain_size_; }
  int codomain_size() const { return codomain_size_; }
  const std::vector<int>& table() const { return table_; }

  int operator()(std::span<const int> args) const;

  bool operator==(const FunctionTable&) const = default;

 private:
  int arity_;
  int domain_size_;
  int codomain_size_;
  std::vector<int> table_;
};

enum class Family { Majority, Parity, Min, Max, Plurality, AlternatingThreshold };

std::string family_name(Family family);
std::optional<Family> parse_family(std::string_view name);
/// Whether the family is defined (and used) at this arity: odd arities for
/// majority, parity and alternating threshold; every arity otherwise.
bool family_arity_available(Family family, std::int64_t arity);

/**
 * A symmetric map A^L -> B given by its value on each histogram, either as a
 * table (indexed by histogram rank) or as a closed-form family.
 *
 * Families compute a value of A (Boolean families use index 0 for "0" and
 * index 1 for "1") which `output_map` then sends into B:
 *   - Majority:  1 iff more than half of the arguments are 1 (odd L)
 *   - Parity:    number of 1s mod 2
 *   - Min:       smallest value present
 *   - Max:       largest value present
 *   - Plurality: most frequent value, ties to the smallest index
 */
class SymmetricFunction {
 public:
  static SymmetricFunction from_table(int arity, int domain_size, int codomain_size,
                                      std::vector<int> values);
  static SymmetricFunction from_family(Family family, std::int64_t arity, int domain_size,
                                       std::vector<int> output_map, int codomain_size);

  std::int64_t arity() const { return arity_; }
  int domain_size() const { return domain_size_; }
  int codomain_size() const { return codomain_size_; }
  std::optional<Family> family() const { return family_; }
  const std::vector<int>& values() const { return values_; }

  int evaluate(std::span<const std::int64_t> histogram) const;
  int operator()(std::span<const int> args) const;
  /// Requires a small arity.
  FunctionTable to_table() const;

  bool operator==(const SymmetricFunction&) const = default;

 private:
  SymmetricFunction() = default;

  std::int64_t arity_ = 0;
  int domain_size_ = 0;
  int codomain_size_ = 0;
  std::optional<Family> family_;
  std::vector<int> values_;      // table form
  std::vector<int> output_map_;  // family form
};

/**
 * A map invariant under permutations inside each block of a partition of
 * its coordinates. Evaluated on one histogram per block.
 */
class BlockSymmetricFunction {
 public:
  /// `values` is indexed by the mixed-radix rank of the per-block histogram
  /// ranks, block 0 most significant.
  static BlockSymmetricFunction from_table(std::vector<std::vector<int>> blocks, int domain_size,
                                           int codomain_size, std::vector<int> values);
  /// Alternating threshold 1[x1 - x2 + x3 - ... >= 1] of odd arity over a
  /// Boolean domain; blocks are the odd and the even positions.
  static BlockSymmetricFunction alternating_threshold(std::int64_t arity,
                                                      std::vector<int> output_map,
                                                      int codomain_size);

  std::int64_t arity() const { return arity_; }
  int domain_size() const { return domain_size_; }
  int codomain_size() const { return codomain_size_; }
  std::optional<Family> family() const { return family_; }
  std::size_t num_blocks() const { return block_sizes_.size(); }
  const std::vector<std::int64_t>& block_sizes() const { return block_sizes_; }
  /// Explicit positions; empty for closed forms too large to list.
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  int evaluate(std::span<const Histogram> per_block) const;
  int operator()(std::span<const int> args) const;
  FunctionTable to_table() const;

  bool operator==(const BlockSymmetricFunction&) const = default;

 private:
  BlockSymmetricFunction() = default;

  std::int64_t arity_ = 0;
  int domain_size_ = 0;
  int codomain_size_ = 0;
  std::vector<std::int64_t> block_sizes_;
  std::vector<std::vector<int>> blocks_;
  std::optional<Family> family_;
  std::vector<int> values_;
  std::vector<int> output_map_;
};

/// Maps A's value indices into B by label; throws if a label is missing.
std::vector<int> label_map(const PromiseTemplate& tmpl);

SymmetricFunction family_function(const PromiseTemplate& tmpl, Family family,
                                  std::int64_t arity);
BlockSymmetricFunction alternating_threshold(const PromiseTemplate& tmpl, std::int64_t arity);

struct PolymorphismLimits {
  /// Maximum number of row matrices / multisets examined per check.
  std::int64_t max_checks = 20'000'000;
};

/// Enumerates all L-row matrices over every R^A (sequences).
bool is_polymorphism(const FunctionTable& f, const PromiseTemplate& tmpl,
                     PolymorphismLimits limits = {});
/// Enumerates multisets of rows (histograms over R^A).
bool is_polymorphism(const SymmetricFunction& f, const PromiseTemplate& tmpl,
                     PolymorphismLimits limits = {});
/// Enumerates one multiset of rows per block.
bool is_polymorphism(const BlockSymmetricFunction& f, const PromiseTemplate& tmpl,
                     PolymorphismLimits limits = {});

/// g(x_1..x_L') = f(x_pi(1), ..., x_pi(L)).
FunctionTable take_minor(const FunctionTable& f, const MinorMap& pi);
FunctionTable take_minor(const SymmetricFunction& f, const MinorMap& pi);
FunctionTable take_minor(const BlockSymmetricFunction& f, const MinorMap& pi);

/// The minor of f in which argument i is repeated counts[i] times.
FunctionTable repetition_minor(const SymmetricFunction& f, std::span<const std::int64_t> counts);

struct EnumerationLimits {
  std::int64_t max_constraints = 5'000'000;
  std::int64_t max_results = 1'000'000;
};

/// All symmetric polymorphisms of arity L, tables in lexicographic order.
std::vector<SymmetricFunction> enumerate_symmetric_polymorphisms(const PromiseTemplate& tmpl,
                                                                 int arity,
                                                                 EnumerationLimits limits = {});

/// All polymorphisms symmetric within consecutive blocks of the given sizes.
std::vector<BlockSymmetricFunction> enumerate_block_symmetric_polymorphisms(
    const PromiseTemplate& tmpl, const std::vector<int>& block_sizes,
    EnumerationLimits limits = {});

/// Throws ValidationError unless `blocks` partitions [0, arity).
void validate_partition(const std::vector<std::vector<int>>& blocks, int arity);

/// True iff f is invariant under every permutation preserving each block.
bool check_block_symmetry(const FunctionTable& f, const std::vector<std::vector<int>>& blocks);

}  // namespace pcsp
