#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcsp/corpus.hpp"
#include "pcsp/oracle.hpp"

using namespace pcsp;

TEST_SUITE("oracle") {
  TEST_CASE("classification examples") {
    auto lin = corpus_template("3lin");
    auto odd = Instance::from_names(lin.signature(), {"x", "y", "z"},
                                    {{"e0", {"x", "y", "z"}}, {"e1", {"x", "y", "z"}}});
    auto c = classify(lin, odd);
    CHECK(format_classification(c) == "A=false B=false lp=true affine=false blpaff=REJECT(affine)");
    CHECK(c.consistent());

    auto horn = corpus_template("horn");
    auto contra = Instance::from_names(horn.signature(), {"x", "y"},
                                       {{"t", {"x"}}, {"nand2", {"x", "y"}}, {"t", {"y"}}});
    CHECK(format_classification(classify(horn, contra)) ==
          "A=false B=false lp=false affine=true blpaff=REJECT(lp)");
  }

  TEST_CASE("classification is consistent and complete on random instances") {
    std::mt19937_64 rng(61);
    for (const auto& name : corpus_names()) {
      auto t = corpus_template(name);
      for (int k = 0; k < 20; ++k) {
        auto inst = random_instance(t.signature(), 1 + rng() % 4, rng() % 5, rng);
        auto c = classify(t, inst);
        CHECK(c.consistent());
        CHECK(c.sat_in_a == oracle::naive_solve(inst, t.a()).has_value());
        CHECK(c.sat_in_b == oracle::naive_solve(inst, t.b()).has_value());
        if (c.sat_in_a) CHECK((c.lp && c.affine_unrefined && c.blpaff.accepted()));
        if (c.blpaff.accepted()) CHECK(c.lp);
      }
    }
  }

  TEST_CASE("random instances are reproducible and well formed") {
    auto t = corpus_template("horn");
    std::mt19937_64 a(5), b(5);
    auto x = random_instance(t.signature(), 4, 6, a);
    auto y = random_instance(t.signature(), 4, 6, b);
    CHECK(x == y);
    CHECK(x.num_variables() == 4);
    CHECK(x.num_constraints() == 6);
  }

  TEST_CASE("no fooling instance for templates with suitable polymorphisms") {
    for (const char* name : {"2sat", "horn", "3lin", "1in3-nae"}) {
      auto r = search_fooling_instance(corpus_template(name), FoolingSearchLimits{3, 3, 5'000'000});
      CHECK_FALSE(r.instance.has_value());
      CHECK(r.examined > 0);
    }
  }

  TEST_CASE("a fooling instance exists for the two cycles") {
    auto t = corpus_template("cycles23");
    auto r = search_fooling_instance(t, FoolingSearchLimits{4, 4, 5'000'000});
    REQUIRE(r.instance.has_value());
    CHECK(decide(t, *r.instance).accepted());
    CHECK_FALSE(oracle::naive_solve(*r.instance, t.b()).has_value());
    CHECK(r.unsat_in_b >= 1);
  }

  TEST_CASE("fooling search honours its budget") {
    auto t = corpus_template("2sat");
    CHECK_THROWS_AS(search_fooling_instance(t, FoolingSearchLimits{4, 4, 10}), SizeGuardError);
  }

  TEST_CASE("no wide block-symmetric polymorphism of the two cycles") {
    auto t = corpus_template("cycles23");
    auto report = verify_no_wide_block_symmetric(t, 5);
    CHECK(report.holds());
    CHECK(report.unary > 0);
    bool saw_22 = false, saw_2 = false;
    for (const auto& e : report.wide) {
      CHECK(e.polymorphisms == 0);
      saw_22 |= e.block_sizes == std::vector<int>{2, 2};
      saw_2 |= e.block_sizes == std::vector<int>{2};
    }
    CHECK(saw_22);
    CHECK(saw_2);
    CHECK(enumerate_symmetric_polymorphisms(t, 2).empty());
    CHECK(enumerate_symmetric_polymorphisms(t, 1).size() == static_cast<std::size_t>(report.unary));
  }

  TEST_CASE("templates with wide block-symmetric polymorphisms fail the report") {
    auto report = verify_no_wide_block_symmetric(corpus_template("2sat"), 3);
    CHECK_FALSE(report.holds());
  }
}
