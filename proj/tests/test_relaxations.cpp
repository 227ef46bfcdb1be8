#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcsp/affine.hpp"
#include "pcsp/blp.hpp"
#include "pcsp/corpus.hpp"
#include "pcsp/decide.hpp"
#include "pcsp/oracle.hpp"

using namespace pcsp;

namespace {

Instance odd_parity_triple(const PromiseTemplate& t) {
  return Instance::from_names(t.signature(), {"x", "y", "z"},
                              {{"e0", {"x", "y", "z"}}, {"e1", {"x", "y", "z"}}});
}

Instance horn_contradiction(const PromiseTemplate& t) {
  return Instance::from_names(t.signature(), {"x", "y"},
                              {{"t", {"x"}}, {"nand2", {"x", "y"}}, {"t", {"y"}}});
}

}  // namespace

TEST_SUITE("relaxations") {
  TEST_CASE("layout sizes") {
    auto t = corpus_template("2sat");
    auto inst = Instance::from_names(t.signature(), {"x", "y", "z"}, {{"or2", {"x", "y"}}, {"t", {"z"}}});
    auto layout = build_layout(inst, t.a());
    CHECK(layout.num_columns == 3 * 2 + 3 + 1);
    // 3 variable rows, 2 constraint rows, marginals 2*2 + 1*2.
    CHECK(layout.rows.size() == 3 + 2 + 6);
    Instance empty(t.signature(), {}, {});
    CHECK(build_blp(empty, t.a()).layout.num_columns == 0);
    CHECK(build_affine(empty, t.a()).layout.rows.empty());
  }

  TEST_CASE("unknown relation symbol is rejected") {
    auto t = corpus_template("2sat");
    auto k3 = corpus_template("k3");
    auto inst = Instance::from_names(k3.signature(), {"x", "y"}, {{"e", {"x", "y"}}});
    CHECK_THROWS_AS(build_blp(inst, t.a()), ValidationError);
    CHECK_THROWS_AS(build_affine(inst, t.a()), ValidationError);
    CHECK_THROWS_AS(decide(t, inst), ValidationError);
  }

  TEST_CASE("single variable, single value: the point is forced") {
    auto t = corpus_template("2sat");
    auto inst = Instance::from_names(t.signature(), {"x"}, {{"t", {"x"}}});
    auto sys = build_blp(inst, t.a());
    auto p = relative_interior_point(sys);
    REQUIRE(p);
    CHECK(p->w[0] == std::vector<BigRational>{0, 1});
    auto aff = affine_feasible(refine(build_affine(inst, t.a()), *p));
    REQUIRE(aff);
    CHECK(aff->r[0] == std::vector<BigInt>{0, 1});
    CHECK(aff->q[0] == std::vector<BigInt>{1});
  }

  TEST_CASE("refine with full support leaves the system unchanged") {
    auto t = corpus_template("3lin");
    auto inst = odd_parity_triple(t);
    auto blp = build_blp(inst, t.a());
    auto p = relative_interior_point(blp);
    REQUIRE(p);
    for (const auto& row : p->w)
      for (const auto& x : row) CHECK(x > 0);
    auto aff = build_affine(inst, t.a());
    CHECK(refine(aff, *p).zero_fixed == aff.zero_fixed);
    BlpPoint wrong = *p;
    wrong.w.pop_back();
    CHECK_THROWS_AS(refine(aff, wrong), ValidationError);
  }

  TEST_CASE("odd parity triple: LP feasible, affine infeasible") {
    auto t = corpus_template("3lin");
    auto inst = odd_parity_triple(t);
    REQUIRE(relative_interior_point(build_blp(inst, t.a())).has_value());
    CHECK_FALSE(affine_feasible(build_affine(inst, t.a())).has_value());
    auto d = decide(t, inst);
    CHECK(verdict_text(d) == "REJECT(affine)");
  }

  TEST_CASE("horn contradiction: affine alone feasible with a negative weight") {
    auto t = corpus_template("horn");
    auto inst = horn_contradiction(t);
    CHECK_FALSE(relative_interior_point(build_blp(inst, t.a())).has_value());
    auto aff = affine_feasible(build_affine(inst, t.a()));
    REQUIRE(aff);
    CHECK(oracle::relaxation_holds(inst, t.a(), aff->r, aff->q, false));
    // nand2 tuples are 00, 01, 10; both marginals force weight -1 on 00.
    CHECK(aff->q[1][0] == -1);
    CHECK(verdict_text(decide(t, inst)) == "REJECT(lp)");
  }

  TEST_CASE("relative interior point has maximal support") {
    std::mt19937_64 rng(21);
    for (const char* name : {"2sat", "horn", "3lin", "1in3-nae"}) {
      auto t = corpus_template(name);
      for (int k = 0; k < 25; ++k) {
        auto inst = random_instance(t.signature(), 1 + rng() % 4, 1 + rng() % 5, rng);
        auto sys = build_blp(inst, t.a());
        auto p = relative_interior_point(sys);
        auto check = lp_feasible(sys.lp);
        REQUIRE(p.has_value() == check.feasible);
        if (!p) continue;
        auto flat = p->flatten(sys.layout);
        CHECK(sys.lp.satisfied_by(flat));
        CHECK(oracle::relaxation_holds(inst, t.a(), p->w, p->p, true));
        // A column is positive somewhere in the polytope iff its maximum is > 0.
        for (int c = 0; c < sys.layout.num_columns; ++c)
          CHECK((flat[c] > 0) == (lp_maximize(sys.lp, c).first > 0));
      }
    }
  }

  TEST_CASE("both interior strategies agree on support") {
    std::mt19937_64 rng(4);
    auto t = corpus_template("2sat");
    for (int k = 0; k < 30; ++k) {
      auto inst = random_instance(t.signature(), 1 + rng() % 4, 1 + rng() % 5, rng);
      auto sys = build_blp(inst, t.a());
      auto a = relative_interior_point(sys, InteriorStrategy::Covering);
      auto b = relative_interior_point(sys, InteriorStrategy::EveryColumn);
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(a->support(sys.layout) == b->support(sys.layout));
    }
  }

  TEST_CASE("accept witnesses satisfy the equations exactly and respect refinement") {
    std::mt19937_64 rng(8);
    for (const char* name : {"2sat", "horn", "dualhorn", "3lin", "1in3-nae", "k3"}) {
      auto t = corpus_template(name);
      for (int k = 0; k < 20; ++k) {
        auto inst = random_instance(t.signature(), 1 + rng() % 4, 1 + rng() % 5, rng);
        auto d = decide(t, inst);
        if (!d.accepted()) continue;
        CHECK(oracle::relaxation_holds(inst, t.a(), d.lp_witness->w, d.lp_witness->p, true));
        CHECK(oracle::relaxation_holds(inst, t.a(), d.affine_witness->r, d.affine_witness->q, false));
        CHECK(oracle::refinement_holds(*d.lp_witness, *d.affine_witness));
      }
    }
  }

  TEST_CASE("decide matches brute force on tractable templates") {
    std::mt19937_64 rng(13);
    for (const char* name : {"2sat", "horn", "dualhorn", "3lin"}) {
      auto t = corpus_template(name);
      for (int k = 0; k < 40; ++k) {
        auto inst = random_instance(t.signature(), 1 + rng() % 5, rng() % 8, rng);
        bool sat = oracle::naive_solve(inst, t.a()).has_value();
        CHECK(decide(t, inst).accepted() == sat);
      }
    }
  }

  TEST_CASE("decide ignores B") {
    auto t = corpus_template("1in3-nae");
    PromiseTemplate same("1in3", t.a(), t.a());
    std::mt19937_64 rng(17);
    for (int k = 0; k < 20; ++k) {
      auto inst = random_instance(t.signature(), 1 + rng() % 5, 1 + rng() % 5, rng);
      CHECK(decide(t, inst) == decide(same, inst));
    }
  }
}
