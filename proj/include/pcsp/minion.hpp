#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcsp/core.hpp"
#include "pcsp/polymorphism.hpp"
#include "pcsp/rational.hpp"

namespace pcsp {

enum class MinionKind { Qconv, MBlpAff, Zaff };

std::string minion_kind_name(MinionKind kind);

/**
 * An object of one of the concrete minions:
 *   Qconv:   w : [L] -> Q>=0 with sum w = 1                      (r empty)
 *   MBlpAff: (w, r) with sum w = 1, sum r = 1, w(i) = 0 => r(i) = 0
 *   Zaff:    r : [L] -> Z with sum r = 1                         (w empty)
 * The factories validate; the constructor-free aggregate is for internal use.
 */
struct MinionObject {
  MinionKind kind = MinionKind::Qconv;
  std::vector<BigRational> w;
  std::vector<BigInt> r;

  static MinionObject qconv(std::vector<BigRational> w);
  static MinionObject mblpaff(std::vector<BigRational> w, std::vector<BigInt> r);
  static MinionObject zaff(std::vector<BigInt> r);

  int arity() const;
  bool is_member() const;
  /// Compact text such as "w=(1/2,1/2);r=(1,0)".
  std::string label() const;

  bool operator==(const MinionObject&) const = default;
  bool operator<(const MinionObject& other) const;
};

/// w'(i') = sum of w(i) over pi(i) = i', likewise for r.
MinionObject minor(const MinionObject& obj, const MinorMap& pi);

/// Arity 2L+1 with w = 1/(2L+1) everywhere and r alternating 1, -1, ..., 1.
MinionObject two_block_witness(int L);

/**
 * Finite truncation of a minion: objects of arity at most `max_arity` whose
 * weights have denominators dividing `ell` and whose integer parts satisfy
 * sum |r| <= `bound`. Closed under minors within the arity bound.
 */
struct TruncatedMinion {
  MinionKind kind = MinionKind::Qconv;
  int ell = 1;
  int bound = 1;
  int max_arity = 8;
  std::int64_t max_objects = 200'000;

  bool contains(const MinionObject& obj) const;
  /// Every member of the given arity, in a fixed deterministic order.
  std::vector<MinionObject> objects(int arity) const;
};

/**
 * The map (w, r) -> minor of f repeating coordinate i exactly
 * W_i = u*ell*w(i) + v*r(i) times, where arity(f) = u*ell + v, 0 <= v < ell.
 * Defined on the (ell, bound) truncation of MBlpAff.
 */
class SymmetricMinionHom {
 public:
  /// Throws ValidationError when arity(f) < bound * ell^2.
  SymmetricMinionHom(SymmetricFunction f, int ell, int bound);

  std::int64_t u() const { return u_; }
  std::int64_t v() const { return v_; }
  const SymmetricFunction& function() const { return f_; }

  /// The repetition counts W; throws for objects outside the truncation.
  std::vector<std::int64_t> counts(const MinionObject& obj) const;
  FunctionTable operator()(const MinionObject& obj) const;

 private:
  SymmetricFunction f_;
  int ell_;
  int bound_;
  std::int64_t u_ = 0;
  std::int64_t v_ = 0;
};

SymmetricMinionHom hom_from_symmetric_polymorphism(const SymmetricFunction& f, int ell, int bound);

/**
 * The free structure of A over a truncated minion: domain = objects of arity
 * |A| (labelled by MinionObject::label), and (w_1..w_k) in R iff some object p
 * of arity |R^A| has p/pi_i = w_i, where pi_i projects R^A onto coordinate i.
 */
RelationalStructure build_free_structure(const TruncatedMinion& minion, const RelationalStructure& a);

}  // namespace pcsp
