#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "ascent/bipartite.hpp"
#include "oracles.hpp"

using namespace ascent;

namespace {

ClimberRecord make_climber(std::string id, std::optional<int> age, Sex sex, bool o2a,
                           bool o2d, bool hired) {
  ClimberRecord c;
  c.climber_id = std::move(id);
  c.expedition_id = "E1";
  c.age = age;
  c.sex = sex;
  c.o2_ascent = o2a;
  c.o2_descent = o2d;
  c.hired = hired;
  return c;
}

Dataset fixture_dataset(int n_members, int missing_age_index = -1) {
  std::vector<ExpeditionRecord> exps(1);
  exps[0].expedition_id = "E1";
  exps[0].peak_id = "EVEREST";
  exps[0].peak_height = 8849;
  exps[0].year = 2015;
  std::vector<ClimberRecord> climbers;
  for (int i = 0; i < n_members; ++i) {
    auto c = make_climber(
        "c" + std::to_string(i),
        i == missing_age_index ? std::optional<int>{} : std::optional<int>{30 + i},
        i % 2 ? Sex::Male : Sex::Female, i % 3 == 0, false, i % 4 == 0);
    climbers.push_back(c);
  }
  return link_and_validate(std::move(exps), std::move(climbers));
}

}  // namespace

TEST_CASE("binarize: age below median sets bit 0, ties go to 0", "[bipartite]") {
  auto young = make_climber("a", 39, Sex::Female, false, false, false);
  auto at_median = make_climber("b", 40, Sex::Female, false, false, false);
  CHECK(binarize(young, 40.0, 0)[0] == 1);
  CHECK(binarize(at_median, 40.0, 0)[0] == 0);

  SECTION("direction flips with the age_above_median option") {
    BinarizeOptions opt;
    opt.age_above_median = true;
    CHECK(binarize(young, 40.0, 0, opt)[0] == 0);
    CHECK(binarize(at_median, 40.0, 0, opt)[0] == 1);
  }
}

TEST_CASE("binarize: experienced male sherpa with O2 both ways is all-ones",
          "[bipartite]") {
  auto c = make_climber("a", 35, Sex::Male, true, true, true);
  CHECK(binarize(c, 40.0, 2) == FeatureVector{1, 1, 1, 1, 1, 1});
}

TEST_CASE("binarize: missing age names the field in the error", "[bipartite]") {
  auto c = make_climber("a", std::nullopt, Sex::Male, false, false, false);
  CHECK_THROWS_WITH(binarize(c, 40.0, 0), Catch::Matchers::ContainsSubstring("age"));
}

TEST_CASE("binarize: experience bit thresholds at one prior climb", "[bipartite]") {
  auto c = make_climber("a", 50, Sex::Female, false, false, false);
  CHECK(binarize(c, 40.0, 0)[5] == 0);
  CHECK(binarize(c, 40.0, 1)[5] == 1);
  CHECK(binarize(c, 40.0, 7)[5] == 1);
}

TEST_CASE("build_bipartite: rows in stable climber order", "[bipartite]") {
  Dataset ds = fixture_dataset(2);
  BipartiteGraph p = build_bipartite(ds.expeditions[0], ds, 40.0);
  REQUIRE(p.climber_count() == 2);
  CHECK(p.climber_ids == std::vector<std::string>{"c0", "c1"});
  CHECK(p.incidence(0, 0) == 1.0);  // c0: age 30, below median
  CHECK(p.incidence(0, 1) == 0.0);  // c0: female
  CHECK(p.incidence(0, 2) == 1.0);  // c0: o2 on ascent
  CHECK(p.incidence(0, 4) == 1.0);  // c0: hired
  CHECK(p.incidence(1, 1) == 1.0);  // c1: male
}

TEST_CASE("build_bipartite: missing-age climber excluded with diagnostic",
          "[bipartite]") {
  Dataset ds = fixture_dataset(3, 1);
  std::vector<Diagnostic> excluded;
  BipartiteGraph p = build_bipartite(ds.expeditions[0], ds, 40.0, {}, &excluded);
  CHECK(p.climber_count() == 2);
  REQUIRE(excluded.size() == 1);
  CHECK(excluded[0].id == "c1");
}

TEST_CASE("build_bipartite: 12-member fixture gives a 12x6 matrix", "[bipartite]") {
  Dataset ds = fixture_dataset(12);
  BipartiteGraph p = build_bipartite(ds.expeditions[0], ds, 40.0);
  CHECK(p.incidence.rows() == 12);
  CHECK(p.incidence.cols() == kFeatureCount);
}

TEST_CASE("build_bipartite: zero binarizable members is an error", "[bipartite]") {
  Dataset ds = fixture_dataset(1, 0);
  CHECK_THROWS_AS(build_bipartite(ds.expeditions[0], ds, 40.0), AnalysisError);
}

TEST_CASE("project: reduced 2x3 example", "[bipartite]") {
  BipartiteGraph p;
  p.expedition_id = "X";
  p.incidence = Matrix(2, 3);
  p.incidence(0, 0) = 1; p.incidence(0, 2) = 1;
  p.incidence(1, 0) = 1; p.incidence(1, 1) = 1;
  IntraExpeditionGraph g = project(p);
  Matrix expected(3, 3);
  expected(0, 0) = 2; expected(0, 1) = 1; expected(0, 2) = 1;
  expected(1, 0) = 1; expected(1, 1) = 1; expected(1, 2) = 0;
  expected(2, 0) = 1; expected(2, 1) = 0; expected(2, 2) = 1;
  CHECK(g.weights == expected);
  CHECK(g.climber_count == 2);
}

TEST_CASE("project: all-zero and rank-one identities", "[bipartite]") {
  BipartiteGraph zeros;
  zeros.incidence = Matrix(3, 4);
  CHECK(project(zeros).weights.all_zero());

  BipartiteGraph one;
  one.incidence = Matrix(1, 4);
  one.incidence(0, 1) = 1;
  one.incidence(0, 3) = 1;
  IntraExpeditionGraph g = project(one);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      CHECK(g.weights(a, b) == one.incidence(0, a) * one.incidence(0, b));
}

TEST_CASE("project matches brute-force co-occurrence on random bipartite graphs",
          "[bipartite]") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t m = 1 + rng() % 50;
    BipartiteGraph p;
    p.incidence = oracles::random_binary(rng, m, kFeatureCount);
    IntraExpeditionGraph g = project(p);
    Matrix expected = oracles::cooccurrence_counts(p.incidence);
    CHECK(g.weights == expected);  // exact integer equality
  }
}

TEST_CASE("project output is symmetric PSD with dominant diagonal", "[bipartite]") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    BipartiteGraph p;
    p.incidence = oracles::random_binary(rng, 2 + rng() % 30, kFeatureCount, 0.4);
    IntraExpeditionGraph g = project(p);
    CHECK(g.weights.is_symmetric(0.0));
    // I = P'P, so x'Ix >= 0; probe with random vectors.
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int probe = 0; probe < 10; ++probe) {
      std::vector<double> x(kFeatureCount);
      for (double& v : x) v = u(rng);
      double quad = 0.0;
      for (std::size_t a = 0; a < kFeatureCount; ++a)
        for (std::size_t b = 0; b < kFeatureCount; ++b)
          quad += x[a] * g.weights(a, b) * x[b];
      CHECK(quad >= -1e-9);
    }
    for (std::size_t a = 0; a < kFeatureCount; ++a)
      for (std::size_t b = 0; b < kFeatureCount; ++b)
        CHECK(g.weights(a, a) >= g.weights(a, b));
  }
}

TEST_CASE("normalize_by_size divides by climber count and keeps argmax order",
          "[bipartite]") {
  std::mt19937_64 rng(31);
  BipartiteGraph p;
  p.incidence = oracles::random_binary(rng, 12, kFeatureCount, 0.6);
  IntraExpeditionGraph g = project(p);
  IntraExpeditionGraph norm = normalize_by_size(g);
  CHECK(norm.normalized);
  for (std::size_t a = 0; a < kFeatureCount; ++a)
    for (std::size_t b = 0; b < kFeatureCount; ++b) {
      CHECK(norm.weights(a, b) == Catch::Approx(g.weights(a, b) / 12.0));
      CHECK(norm.weights(a, b) >= 0.0);
      CHECK(norm.weights(a, b) <= 1.0);
    }
  std::size_t raw_arg = 0, norm_arg = 0;
  for (std::size_t k = 0; k < 36; ++k) {
    if (g.weights.data()[k] > g.weights.data()[raw_arg]) raw_arg = k;
    if (norm.weights.data()[k] > norm.weights.data()[norm_arg]) norm_arg = k;
  }
  CHECK(raw_arg == norm_arg);

  SECTION("max entry m maps to 1 for an all-ones incidence") {
    BipartiteGraph ones;
    ones.incidence = Matrix(5, kFeatureCount, 1.0);
    IntraExpeditionGraph full = normalize_by_size(project(ones));
    CHECK(full.weights.max_entry() == 1.0);
  }
}
