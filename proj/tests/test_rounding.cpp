#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcsp/corpus.hpp"
#include "pcsp/decide.hpp"
#include "pcsp/oracle.hpp"
#include "pcsp/rounding.hpp"

using namespace pcsp;

namespace {

BlpPoint half_point() {
  return BlpPoint{{{BigRational(1, 2), BigRational(1, 2)}}, {}};
}

AffinePoint unit_point() { return AffinePoint{{{0, 1}}, {}}; }

bool odd(std::int64_t l) { return l % 2 == 1; }

// Repetition counts computed straight from the formula, then the function
// applied to an explicit argument list.
int reference_value(const RoundingParams& p, const std::vector<BigRational>& w, const std::vector<BigInt>& r,
                    const std::function<int(const std::vector<int>&)>& f) {
  std::vector<int> args;
  for (std::size_t a = 0; a < w.size(); ++a) {
    BigRational count = BigRational(p.u * p.ell) * w[a] + BigRational(p.v) * BigRational(r[a]);
    REQUIRE(denominator_of(count) == 1);
    for (int k = 0; k < numerator_of(count).convert_to<int>(); ++k) args.push_back(static_cast<int>(a));
  }
  return f(args);
}

std::vector<std::vector<BigRational>> scaled(const std::vector<std::vector<std::int64_t>>& counts, std::int64_t L) {
  std::vector<std::vector<BigRational>> out;
  for (const auto& row : counts) {
    out.emplace_back();
    for (auto c : row) out.back().push_back(BigRational(c, L));
  }
  return out;
}

}  // namespace

TEST_SUITE("rounding") {
  TEST_CASE("parameters") {
    auto blp = half_point();
    auto aff = unit_point();
    CHECK(witness_denominator(blp) == 2);
    CHECK(witness_magnitude(aff) == 1);
    CHECK(witness_magnitude(AffinePoint{{{0, 0}}, {}}) == 1);
    CHECK(witness_magnitude(AffinePoint{{{-3, 4}}, {}}) == 4);
    auto p = rounding_params(blp, aff, odd);
    CHECK(p == RoundingParams{2, 1, 5, 2, 1});
    CHECK(p.min_arity() == 4);
    CHECK(rounding_params(blp, aff, [](std::int64_t) { return true; }).L == 4);
    CHECK_THROWS_AS(rounding_params_for_arity(blp, aff, 3), ArityUnavailable);
    CHECK_THROWS_AS(rounding_params(blp, aff, [](std::int64_t) { return false; }, 100), ArityUnavailable);

    BlpPoint integral{{{0, 1}}, {}};
    auto q = rounding_params_for_arity(integral, aff, 1);
    CHECK(q == RoundingParams{1, 1, 1, 1, 0});
  }

  TEST_CASE("counts on a forced instance") {
    auto t = corpus_template("2sat");
    auto inst = Instance::from_names(t.signature(), {"x"}, {{"t", {"x"}}});
    auto d = decide(t, inst);
    REQUIRE(d.accepted());
    auto p = rounding_params_for_arity(*d.lp_witness, *d.affine_witness, 3);
    auto c = compute_counts(p, *d.lp_witness, *d.affine_witness, inst, t.a());
    CHECK(c.total == 3);
    CHECK(c.W == std::vector<std::vector<std::int64_t>>{{0, 3}});
    CHECK(c.P == std::vector<std::vector<std::int64_t>>{{3}});
  }

  TEST_CASE("counts are integral, sum to L and agree on marginals") {
    std::mt19937_64 rng(51);
    for (const char* name : {"2sat", "3lin", "1in3-nae", "horn"}) {
      auto t = corpus_template(name);
      for (int k = 0; k < 30; ++k) {
        auto inst = random_instance(t.signature(), 1 + rng() % 4, 1 + rng() % 4, rng);
        auto d = decide(t, inst);
        if (!d.accepted()) continue;
        const auto& w = *d.lp_witness;
        const auto& r = *d.affine_witness;
        auto base = rounding_params(w, r, [](std::int64_t) { return true; });
        for (std::int64_t extra : {0, 1, 3}) {
          auto p = rounding_params_for_arity(w, r, base.L + extra);
          CHECK(p.u * p.ell + p.v == p.L);
          CHECK(p.v < p.ell);
          auto c = compute_counts(p, w, r, inst, t.a());
          for (int i = 0; i < inst.num_variables(); ++i) {
            std::int64_t sum = 0;
            for (int a = 0; a < t.a().domain_size(); ++a) {
              BigRational expect = BigRational(p.u * p.ell) * w.w[i][a] + BigRational(p.v) * BigRational(r.r[i][a]);
              CHECK(expect == BigRational(c.W[i][a]));
              sum += c.W[i][a];
            }
            CHECK(sum == p.L);
          }
          CHECK(oracle::relaxation_holds(inst, t.a(), scaled(c.W, p.L), scaled(c.P, p.L), true));
        }
      }
    }
  }

  TEST_CASE("symmetric rounding produces assignments satisfying B") {
    std::mt19937_64 rng(53);
    struct Case {
      const char* name;
      Family family;
      std::function<int(const std::vector<int>&)> closed;
    };
    std::vector<Case> cases{
        {"2sat", Family::Majority, oracle::majority},
        {"3lin", Family::Parity, oracle::parity},
        {"horn", Family::Min, [](const std::vector<int>& x) { return *std::min_element(x.begin(), x.end()); }},
        {"dualhorn", Family::Max, [](const std::vector<int>& x) { return *std::max_element(x.begin(), x.end()); }},
    };
    int rounded = 0;
    for (const auto& cs : cases) {
      auto t = corpus_template(cs.name);
      for (int k = 0; k < 40; ++k) {
        auto inst = random_instance(t.signature(), 1 + rng() % 5, 1 + rng() % 6, rng);
        auto d = decide(t, inst);
        if (!d.accepted()) continue;
        auto p = rounding_params(*d.lp_witness, *d.affine_witness,
                                 [&](std::int64_t l) { return family_arity_available(cs.family, l); });
        auto f = family_function(t, cs.family, p.L);
        auto x = round(t, inst, *d.lp_witness, *d.affine_witness, f, RoundOptions{false, {}});
        CHECK(oracle::satisfies(inst, t.b(), x.values));
        for (int i = 0; i < inst.num_variables(); ++i)
          CHECK(x.values[i] == reference_value(p, d.lp_witness->w[i], d.affine_witness->r[i], cs.closed));
        ++rounded;
      }
    }
    CHECK(rounded > 40);
  }

  TEST_CASE("block rounding with alternating threshold") {
    std::mt19937_64 rng(57);
    auto t = corpus_template("1in3-nae");
    int rounded = 0;
    for (int k = 0; k < 60; ++k) {
      auto inst = random_instance(t.signature(), 1 + rng() % 5, 1 + rng() % 4, rng);
      auto d = decide(t, inst);
      if (!d.accepted()) continue;
      const std::int64_t m = witness_magnitude(*d.affine_witness), ell = witness_denominator(*d.lp_witness);
      auto f = alternating_threshold(t, 2 * m * ell * ell + 1);
      auto x = round(t, inst, *d.lp_witness, *d.affine_witness, f, RoundOptions{false, {}});
      CHECK(oracle::satisfies(inst, t.b(), x.values));
      ++rounded;
    }
    CHECK(rounded > 10);
  }

  TEST_CASE("errors") {
    auto t = corpus_template("1in3-nae");
    auto inst = Instance::from_names(t.signature(), {"x", "y", "z"}, {{"r", {"x", "y", "z"}}});
    auto d = decide(t, inst);
    REQUIRE(d.accepted());
    const std::int64_t bound = rounding_params(*d.lp_witness, *d.affine_witness, odd).L;
    auto maj = family_function(t, Family::Majority, bound);
    CHECK_THROWS_AS(round(t, inst, *d.lp_witness, *d.affine_witness, maj), NotPolymorphism);
    auto small = family_function(t, Family::Majority, 1);
    CHECK_THROWS_AS(round(t, inst, *d.lp_witness, *d.affine_witness, small), ArityUnavailable);
    auto at = alternating_threshold(t, 3);
    CHECK_THROWS_AS(round(t, inst, *d.lp_witness, *d.affine_witness, at), ArityUnavailable);
    auto three = SymmetricFunction::from_family(Family::Plurality, 9, 3, {0, 1, 2}, 3);
    CHECK_THROWS_AS(round(t, inst, *d.lp_witness, *d.affine_witness, three), ValidationError);
  }
}
