#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pcsp/core.hpp"
#include "pcsp/decide.hpp"
#include "pcsp/polymorphism.hpp"

namespace pcsp {

/** Ground truth and relaxation outcomes for one instance. */
struct Classification {
  bool sat_in_a = false;
  bool sat_in_b = false;
  bool lp = false;
  bool affine_unrefined = false;
  Decision blpaff;

  /// sat_in_a implies every relaxation holds; Accept implies lp.
  bool consistent() const;
};

Classification classify(const PromiseTemplate& tmpl, const Instance& instance,
                        BruteForceLimits limits = {});

/// One record per line, e.g. "A=false B=false lp=true affine=false blpaff=REJECT(affine)".
std::string format_classification(const Classification& c);

/// n variables and m constraints, symbols and scopes drawn uniformly
/// (scopes may repeat variables).
Instance random_instance(const Signature& signature, int n, int m, std::mt19937_64& rng);

struct FoolingSearchLimits {
  int max_vars = 4;
  int max_constraints = 4;
  /// Candidate instances examined before giving up with SizeGuardError.
  std::int64_t max_instances = 5'000'000;
};

struct FoolingSearchResult {
  std::optional<Instance> instance;
  std::int64_t examined = 0;    ///< canonical instances enumerated
  std::int64_t unsat_in_b = 0;  ///< of which unsatisfiable in B (and so decided)
  FoolingSearchLimits limits;
};

/**
 * Looks for an instance accepted by decide() but unsatisfiable in B.
 * Instances are sets of distinct constraints in which every variable occurs,
 * enumerated by number of constraints, then number of variables, then
 * lexicographically, one representative per variable renaming.
 */
FoolingSearchResult search_fooling_instance(const PromiseTemplate& tmpl, FoolingSearchLimits limits);

struct BlockSearchEntry {
  std::vector<int> block_sizes;
  std::int64_t polymorphisms = 0;
};

struct NoWideBlockSymmetricReport {
  int max_total_arity = 0;
  /// Every partition (non-increasing block sizes, all >= 2) of every total
  /// arity 2..max_total_arity, with the number of polymorphisms found.
  std::vector<BlockSearchEntry> wide;
  /// Number of unary polymorphisms (width 1).
  std::int64_t unary = 0;

  bool holds() const;
};

/// Exhaustive block-symmetric polymorphism search for a template expected to
/// have none of width at least 2 (e.g. the 2-cycle + 3-cycle digraph).
NoWideBlockSymmetricReport verify_no_wide_block_symmetric(const PromiseTemplate& tmpl,
                                                          int max_total_arity,
                                                          EnumerationLimits limits = {});

}  // namespace pcsp
