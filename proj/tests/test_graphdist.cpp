#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ascent/graphdist.hpp"
#include "oracles.hpp"

using namespace ascent;

namespace {

IntraExpeditionGraph wrap(Matrix m, std::string id = "g") {
  IntraExpeditionGraph g;
  g.expedition_id = std::move(id);
  g.weights = std::move(m);
  g.climber_count = 1;
  g.normalized = true;
  return g;
}

// Brute-force L1 distance over the 21 unique entries of a 6x6 pair.
double l1_unique_entries(const Matrix& a, const Matrix& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) sum += std::fabs(a(i, j) - b(i, j));
  return sum;
}

}  // namespace

TEST_CASE("edit_distance: identity and single-substitution", "[graphdist]") {
  std::mt19937_64 rng(1);
  Matrix a = oracles::random_symmetric(rng, 6);
  CHECK(edit_distance(wrap(a), wrap(a)) == 0.0);

  Matrix zero(6, 6);
  Matrix single(6, 6);
  single(1, 4) = single(4, 1) = 0.5;  // mirrored entries count once
  CHECK(edit_distance(wrap(zero), wrap(single)) == Catch::Approx(0.5));
}

TEST_CASE("edit_distance: shape mismatch is an error", "[graphdist]") {
  CHECK_THROWS_AS(edit_distance(wrap(Matrix(6, 6)), wrap(Matrix(3, 3))), AnalysisError);
}

TEST_CASE("edit_distance matches brute force over unique entries", "[graphdist]") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix a = oracles::random_symmetric(rng, 6);
    Matrix b = oracles::random_symmetric(rng, 6);
    CHECK(edit_distance(wrap(a), wrap(b)) == Catch::Approx(l1_unique_entries(a, b)));
  }
}

TEST_CASE("edit_distance satisfies metric axioms on 1000 seeded triples",
          "[graphdist]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = wrap(oracles::random_symmetric(rng, 6));
    auto b = wrap(oracles::random_symmetric(rng, 6));
    auto c = wrap(oracles::random_symmetric(rng, 6));
    double ab = edit_distance(a, b);
    double ba = edit_distance(b, a);
    double ac = edit_distance(a, c);
    double cb = edit_distance(c, b);
    REQUIRE(ab >= 0.0);
    REQUIRE(ab == ba);
    REQUIRE(edit_distance(a, a) == 0.0);
    REQUIRE(ab <= ac + cb + 1e-12);
  }
}

TEST_CASE("pairwise_distances: structure and per-pair agreement", "[graphdist]") {
  std::mt19937_64 rng(4);
  std::vector<IntraExpeditionGraph> graphs;
  for (int i = 0; i < 3; ++i)
    graphs.push_back(wrap(oracles::random_symmetric(rng, 6), "E" + std::to_string(i)));

  DistanceMatrix d = pairwise_distances(graphs);
  CHECK(d.expedition_ids == std::vector<std::string>{"E0", "E1", "E2"});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(d.distances(i, i) == 0.0);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(d.distances(i, j) == d.distances(j, i));
      if (i != j)
        CHECK(d.distances(i, j) == Catch::Approx(edit_distance(graphs[i], graphs[j])));
    }
  }

  SECTION("two identical graphs give the zero matrix") {
    DistanceMatrix z = pairwise_distances({graphs[0], graphs[0]});
    CHECK(z.distances.all_zero());
  }

  SECTION("fewer than two graphs is an error") {
    CHECK_THROWS_AS(pairwise_distances({graphs[0]}), AnalysisError);
  }
}

TEST_CASE("normalize_unit: unit max, degenerate flag, order preservation",
          "[graphdist]") {
  std::mt19937_64 rng(5);
  std::vector<IntraExpeditionGraph> graphs;
  for (int i = 0; i < 6; ++i)
    graphs.push_back(wrap(oracles::random_symmetric(rng, 6), "E" + std::to_string(i)));
  DistanceMatrix d = pairwise_distances(graphs);
  DistanceMatrix norm = normalize_unit(d);

  CHECK(norm.distances.max_entry() == Catch::Approx(1.0).margin(1e-12));
  CHECK_FALSE(norm.degenerate_normalization);

  SECTION("a specific max entry 4.0 becomes exactly 1.0") {
    DistanceMatrix manual;
    manual.expedition_ids = {"A", "B"};
    manual.distances = Matrix(2, 2);
    manual.distances(0, 1) = manual.distances(1, 0) = 4.0;
    DistanceMatrix n = normalize_unit(manual);
    CHECK(n.distances(0, 1) == 1.0);
  }

  SECTION("normalization preserves the ordering of all pairs") {
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = 0; k < 6; ++k)
          for (std::size_t l = 0; l < 6; ++l) {
            bool raw_less = d.distances(i, j) < d.distances(k, l);
            bool norm_less = norm.distances(i, j) < norm.distances(k, l);
            REQUIRE(raw_less == norm_less);
          }
  }

  SECTION("all-zero matrix is returned unchanged with the degenerate flag") {
    DistanceMatrix z = pairwise_distances({graphs[0], graphs[0], graphs[0]});
    DistanceMatrix n = normalize_unit(z);
    CHECK(n.degenerate_normalization);
    CHECK(n.distances.all_zero());
  }
}

TEST_CASE("to_similarity: affine complement with zero diagonal", "[graphdist]") {
  DistanceMatrix d;
  d.expedition_ids = {"A", "B", "C"};
  d.distances = Matrix(3, 3);
  d.distances(0, 1) = d.distances(1, 0) = 0.0;
  d.distances(0, 2) = d.distances(2, 0) = 1.0;
  d.distances(1, 2) = d.distances(2, 1) = 0.25;

  Matrix s = to_similarity(d);
  CHECK(s(0, 1) == 1.0);
  CHECK(s(0, 2) == 0.0);
  CHECK(s(1, 2) == 0.75);
  for (std::size_t i = 0; i < 3; ++i) CHECK(s(i, i) == 0.0);

  SECTION("distance mode keeps the normalized distances") {
    Matrix raw = to_similarity(d, true);
    CHECK(raw(0, 2) == 1.0);
    CHECK(raw(1, 2) == 0.25);
  }

  SECTION("entries stay in [0,1] after the full chain") {
    std::mt19937_64 rng(6);
    std::vector<IntraExpeditionGraph> graphs;
    for (int i = 0; i < 5; ++i)
      graphs.push_back(wrap(oracles::random_symmetric(rng, 6)));
    Matrix sim = to_similarity(normalize_unit(pairwise_distances(graphs)));
    for (double v : sim.data()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}
