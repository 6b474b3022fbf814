#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "ascent/community.hpp"
#include "oracles.hpp"

using namespace ascent;

namespace {

// k cliques of `size` nodes, intra weight 1, inter weight `bridge`.
Matrix planted_cliques(int k, int size, double bridge = 0.0) {
  std::size_t n = static_cast<std::size_t>(k * size);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool same = (i / size) == (j / size);
      m(i, j) = same ? 1.0 : bridge;
    }
  return m;
}

std::vector<int> planted_labels(int k, int size) {
  std::vector<int> labels;
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < size; ++i) labels.push_back(c);
  return labels;
}

}  // namespace

TEST_CASE("modularity: two disconnected 5-cliques at components give 0.5",
          "[community]") {
  Matrix g = planted_cliques(2, 5);
  CHECK(modularity(g, planted_labels(2, 5)) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("modularity: the all-in-one partition scores 0", "[community]") {
  std::mt19937_64 rng(61);
  Matrix g = oracles::random_symmetric(rng, 8, true);
  std::vector<int> one(8, 0);
  CHECK(modularity(g, one) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("modularity matches the direct-formula oracle on random partitions",
          "[community]") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix g = oracles::random_symmetric(rng, 10, true, 0.6);
    if (g.all_zero()) continue;
    std::vector<int> labels(10);
    for (int& l : labels) l = static_cast<int>(rng() % 4);
    CHECK(modularity(g, labels) ==
          Catch::Approx(oracles::modularity_direct(g, labels)).margin(1e-12));
  }
}

TEST_CASE("modularity: zero-weight graph is an error", "[community]") {
  CHECK_THROWS_AS(modularity(Matrix(4, 4), std::vector<int>(4, 0)), AnalysisError);
}

TEST_CASE("louvain: two disconnected cliques are recovered exactly", "[community]") {
  Matrix g = planted_cliques(2, 5);
  Partition part = louvain(g, 1);
  CHECK(part.community_count() == 2);
  CHECK(part.modularity == Catch::Approx(0.5).margin(1e-12));
  for (int i = 0; i < 5; ++i) {
    CHECK(part.labels[i] == part.labels[0]);
    CHECK(part.labels[5 + i] == part.labels[5]);
  }
  CHECK(part.labels[0] != part.labels[5]);
}

TEST_CASE("louvain: three planted 10-cliques with weak bridges recover exactly",
          "[community]") {
  Matrix g = planted_cliques(3, 10, 0.01);
  std::vector<int> truth = planted_labels(3, 10);
  for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
    Partition part = louvain(g, seed);
    REQUIRE(part.community_count() == 3);
    CHECK(oracles::adjusted_rand(part.labels, truth) == 1.0);
  }
}

TEST_CASE("louvain: Q never below the singleton or all-in-one baselines",
          "[community]") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix g = oracles::random_symmetric(rng, 12, true, 0.5);
    if (g.all_zero()) continue;
    Partition part = louvain(g, trial);
    std::vector<int> singleton(12);
    std::iota(singleton.begin(), singleton.end(), 0);
    CHECK(part.modularity >= modularity(g, singleton) - 1e-12);
    CHECK(part.modularity >= modularity(g, std::vector<int>(12, 0)) - 1e-12);
  }
}

TEST_CASE("louvain: deterministic for a fixed seed", "[community]") {
  std::mt19937_64 rng(73);
  Matrix g = oracles::random_symmetric(rng, 20, true, 0.4);
  Partition a = louvain(g, 123);
  Partition b = louvain(g, 123);
  CHECK(a.labels == b.labels);
  CHECK(a.modularity == b.modularity);
}

TEST_CASE("louvain: labels are contiguous from zero", "[community]") {
  std::mt19937_64 rng(79);
  Matrix g = oracles::random_symmetric(rng, 15, true, 0.3);
  Partition part = louvain(g, 5);
  std::vector<bool> seen(part.community_count(), false);
  for (int l : part.labels) {
    REQUIRE(l >= 0);
    REQUIRE(static_cast<std::size_t>(l) < part.community_count());
    seen[static_cast<std::size_t>(l)] = true;
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("louvain never beats the exhaustive optimum on small graphs",
          "[community]") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g = oracles::random_symmetric(rng, 8, true, 0.5);
    if (g.all_zero()) continue;
    double best = oracles::exhaustive_max_modularity(g);
    Partition part = louvain(g, trial);
    CHECK(part.modularity <= best + 1e-9);
  }

  SECTION("and attains it on the planted micro-fixture") {
    Matrix g = planted_cliques(2, 4, 0.05);
    double best = oracles::exhaustive_max_modularity(g);
    Partition part = louvain(g, 11);
    CHECK(part.modularity == Catch::Approx(best).margin(1e-9));
  }
}

TEST_CASE("louvain: seed stability on a noisy planted benchmark", "[community]") {
  std::mt19937_64 rng(89);
  Matrix g = planted_cliques(3, 10, 0.0);
  std::uniform_real_distribution<double> u(0.0, 0.15);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i + 1; j < g.cols(); ++j) {
      double noise = u(rng);
      g(i, j) += noise;
      g(j, i) += noise;
    }
  std::vector<double> qs;
  for (std::uint64_t seed = 0; seed < 8; ++seed)
    qs.push_back(louvain(g, seed).modularity);
  for (double q : qs) CHECK(std::fabs(q - qs[0]) < 0.02);
}

TEST_CASE("community_profiles: single community equals the global means",
          "[community]") {
  std::mt19937_64 rng(97);
  std::vector<ExpeditionRecord> exps;
  std::vector<IntraExpeditionGraph> intra;
  std::vector<double> success;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 8; ++i) {
    ExpeditionRecord e;
    e.expedition_id = "E" + std::to_string(i);
    e.days_to_summit = 10 + i;
    e.camps_above_bc = i;
    e.n_members = 10 + i;
    e.n_hired = 2;
    exps.push_back(e);
    IntraExpeditionGraph g;
    g.expedition_id = e.expedition_id;
    g.weights = oracles::random_symmetric(rng, 6);
    g.climber_count = 10;
    intra.push_back(g);
    success.push_back(u(rng));
  }
  Dataset ds = link_and_validate(exps, {});
  Partition part;
  part.labels.assign(8, 0);
  auto profiles = community_profiles(part, ds, intra, success);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].size == 8);
  double mean_days = 0.0, mean_success = 0.0;
  for (int i = 0; i < 8; ++i) {
    mean_days += 10 + i;
    mean_success += success[static_cast<std::size_t>(i)];
  }
  CHECK(*profiles[0].factor_means[0] == Catch::Approx(mean_days / 8.0));
  CHECK(profiles[0].mean_success_rate == Catch::Approx(mean_success / 8.0));

  SECTION("profile means recompute from a direct group-by pass") {
    part.labels = {0, 1, 0, 1, 0, 1, 0, 1};
    auto split = community_profiles(part, ds, intra, success);
    REQUIRE(split.size() == 2);
    for (const auto& prof : split) {
      double expect_days = 0.0;
      std::size_t count = 0;
      double expect_success = 0.0;
      // group-by on the ORIGINAL labels; profiles are sorted by success, so
      // match on size+success identity instead of order.
      for (int label = 0; label < 2; ++label) {
        expect_days = 0.0; expect_success = 0.0; count = 0;
        for (std::size_t i = 0; i < 8; ++i) {
          if (part.labels[i] != label) continue;
          expect_days += ds.expeditions[i].days_to_summit;
          expect_success += success[i];
          ++count;
        }
        if (prof.label == label) {
          CHECK(*prof.factor_means[0] == Catch::Approx(expect_days / count));
          CHECK(prof.mean_success_rate == Catch::Approx(expect_success / count));
        }
      }
    }
  }
}

TEST_CASE("community_profiles: ordering and centrality averaging modes",
          "[community]") {
  std::mt19937_64 rng(101);
  std::vector<ExpeditionRecord> exps;
  std::vector<IntraExpeditionGraph> intra;
  std::vector<double> success;
  for (int i = 0; i < 9; ++i) {
    ExpeditionRecord e;
    e.expedition_id = "E" + std::to_string(i);
    e.days_to_summit = 10;
    e.camps_above_bc = 3;
    e.n_members = 12;
    e.n_hired = 3;
    exps.push_back(e);
    IntraExpeditionGraph g;
    g.expedition_id = e.expedition_id;
    g.weights = oracles::random_symmetric(rng, 6);
    g.climber_count = 12;
    intra.push_back(g);
    success.push_back(i < 3 ? 0.9 : (i < 6 ? 0.1 : 0.5));
  }
  Dataset ds = link_and_validate(exps, {});
  Partition part;
  part.labels = {0, 0, 0, 1, 1, 1, 2, 2, 2};

  auto profiles = community_profiles(part, ds, intra, success);
  REQUIRE(profiles.size() == 3);
  CHECK(profiles[0].mean_success_rate <= profiles[1].mean_success_rate);
  CHECK(profiles[1].mean_success_rate <= profiles[2].mean_success_rate);
  CHECK(profiles[0].label == 1);  // the 0.1-success community sorts first
  for (const auto& prof : profiles) REQUIRE(prof.mean_centrality.size() == 6);

  SECTION("mean-graph centrality mode differs but stays normalized") {
    CommunityProfileOptions opt;
    opt.centrality_of_mean_graph = true;
    auto alt = community_profiles(part, ds, intra, success, opt);
    for (const auto& prof : alt) {
      double norm = 0.0;
      for (double v : prof.mean_centrality) norm += v * v;
      CHECK(std::sqrt(norm) == Catch::Approx(1.0).margin(1e-9));
    }
  }
}
