#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcsp {

/** Base class of every error raised by the library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Malformed input: bad signature, unknown symbol, partial map, mismatched
 *  domains, and similar contract violations. */
class ValidationError : public Error {
 public:
  using Error::Error;
};

/** An enumeration would exceed its configured size bound. */
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/** Tuple of positional indices (domain values or variables). */
using Tuple = std::vector<int>;

struct Symbol {
  std::string name;
  int arity = 0;

  bool operator==(const Symbol&) const = default;
};

/** Ordered list of relation symbols with unique names and positive arities. */
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }

  std::optional<int> find(std::string_view name) const;
  /// Throws ValidationError("unknown relation symbol ...") if absent.
  int index_of(std::string_view name) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

/**
 * A finite domain of string labels together with one relation per signature
 * symbol. Values are referred to by their position in the domain list, and
 * every relation is kept sorted and duplicate-free so membership is a binary
 * search.
 */
class RelationalStructure {
 public:
  RelationalStructure() = default;
  RelationalStructure(std::vector<std::string> domain, Signature signature,
                      std::vector<std::vector<Tuple>> relations);

  const std::vector<std::string>& domain() const { return domain_; }
  int domain_size() const { return static_cast<int>(domain_.size()); }
  const Signature& signature() const { return signature_; }

  const std::vector<Tuple>& relation(int symbol) const { return relations_[symbol]; }
  const std::vector<Tuple>& relation(std::string_view name) const {
    return relations_[signature_.index_of(name)];
  }
  const std::vector<std::vector<Tuple>>& relations() const { return relations_; }

  bool contains(int symbol, std::span<const int> tuple) const;

  std::optional<int> find_value(std::string_view label) const;
  int value_index(std::string_view label) const;

  bool operator==(const RelationalStructure&) const = default;

 private:
  std::vector<std::string> domain_;
  Signature signature_;
  std::vector<std::vector<Tuple>> relations_;
};

/// True iff `map` (indexed by src values) sends every src tuple into dst.
bool check_homomorphism(const RelationalStructure& src,
                        const RelationalStructure& dst, std::span<const int> map);

/// Lexicographically first homomorphism src -> dst, if any.
std::optional<std::vector<int>> find_homomorphism(const RelationalStructure& src,
                                                  const RelationalStructure& dst);

/**
 * A pair (A, B) over one signature with a homomorphism A -> B. When no
 * witness is supplied one is searched for; construction fails if none exists.
 */
class PromiseTemplate {
 public:
  PromiseTemplate(std::string name, RelationalStructure a, RelationalStructure b,
                  std::optional<std::vector<int>> witness = std::nullopt);

  const std::string& name() const { return name_; }
  const RelationalStructure& a() const { return a_; }
  const RelationalStructure& b() const { return b_; }
  const Signature& signature() const { return a_.signature(); }
  /// The validated homomorphism A -> B (given or found).
  const std::vector<int>& witness() const { return witness_; }

  bool operator==(const PromiseTemplate&) const = default;

 private:
  std::string name_;
  RelationalStructure a_;
  RelationalStructure b_;
  std::vector<int> witness_;
};

struct Constraint {
  int symbol = 0;   ///< index into the instance signature
  Tuple scope;      ///< variable indices

  bool operator==(const Constraint&) const = default;
};

/**
 * Variables plus a list of constraints. Duplicate constraints are kept as
 * given; variables that occur in no constraint are allowed.
 */
class Instance {
 public:
  Instance() = default;
  Instance(Signature signature, std::vector<std::string> variables,
           std::vector<Constraint> constraints);

  /// Builds from symbol and variable names.
  static Instance from_names(
      Signature signature, std::vector<std::string> variables,
      const std::vector<std::pair<std::string, std::vector<std::string>>>& constraints);

  const Signature& signature() const { return signature_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }

  /// The instance viewed as a relational structure over its variables.
  RelationalStructure as_structure() const;
  static Instance from_structure(const RelationalStructure& x);

  bool operator==(const Instance&) const = default;

 private:
  Signature signature_;
  std::vector<std::string> variables_;
  std::vector<Constraint> constraints_;
};

/// Maps each instance symbol to the structure symbol of the same name;
/// throws on unknown symbols and arity mismatches.
std::vector<int> bind_symbols(const Instance& instance, const RelationalStructure& s);

/** Total assignment; values[i] is a domain index of the target structure. */
struct Assignment {
  std::vector<int> values;

  bool operator==(const Assignment&) const = default;
};

bool check_satisfies(const Instance& instance, const RelationalStructure& s,
                     const Assignment& assignment);

struct BruteForceLimits {
  /// Upper bound on n * log2(|domain|).
  double max_bits = 48.0;
};

/// Lexicographically first satisfying assignment (variable 0 most
/// significant, values in domain order), or nullopt.
std::optional<Assignment> brute_force_satisfiable(const Instance& instance,
                                                  const RelationalStructure& s,
                                                  BruteForceLimits limits = {});

/// Assignment composed with a value map (e.g. a homomorphism A -> B).
Assignment compose(const Assignment& assignment, std::span<const int> map);

std::string format_assignment(const Instance& instance, const RelationalStructure& s,
                              const Assignment& assignment);

}  // namespace pcsp
