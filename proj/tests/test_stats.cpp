#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ascent/stats.hpp"
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

std::vector<IntraExpeditionGraph> random_graphs(std::mt19937_64& rng, std::size_t n) {
  std::vector<IntraExpeditionGraph> graphs;
  for (std::size_t i = 0; i < n; ++i)
    graphs.push_back(wrap(oracles::random_symmetric(rng, 6), "E" + std::to_string(i)));
  return graphs;
}

}  // namespace

TEST_CASE("vectorize_graph: diagonal indices and frozen order", "[stats]") {
  Matrix m(6, 6);
  for (std::size_t i = 0; i < 6; ++i) m(i, i) = 1.0;
  std::vector<double> v = vectorize_graph(m);
  REQUIRE(v.size() == 21);
  for (std::size_t idx : {0u, 6u, 11u, 15u, 18u, 20u}) CHECK(v[idx] == 1.0);
  int ones = 0;
  for (double x : v) ones += x == 1.0 ? 1 : 0;
  CHECK(ones == 6);

  SECTION("all-ones matrix vectorizes to 21 ones") {
    Matrix ones_m(6, 6, 1.0);
    std::vector<double> w = vectorize_graph(ones_m);
    for (double x : w) CHECK(x == 1.0);
  }

  SECTION("random symmetric matrix matches the index oracle") {
    std::mt19937_64 rng(17);
    Matrix g = oracles::random_symmetric(rng, 6);
    std::vector<double> w = vectorize_graph(g);
    std::size_t k = 0;
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = a; b < 6; ++b) CHECK(w[k++] == g(a, b));
  }

  SECTION("asymmetry is rejected") {
    Matrix bad(6, 6);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(vectorize_graph(bad), AnalysisError);
  }

  SECTION("off-diagonal-only mode gives 15 entries") {
    Matrix g(6, 6, 2.0);
    CHECK(vectorize_graph(g, false).size() == 15);
  }
}

TEST_CASE("fit_projection recovers an exact linear relationship", "[stats]") {
  std::mt19937_64 rng(23);
  auto graphs = random_graphs(rng, 60);
  std::vector<double> c_star(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& c : c_star) c = u(rng);
  double b_star = 0.37;
  std::vector<double> y;
  for (const auto& g : graphs) {
    std::vector<double> x = vectorize_graph(g.weights);
    double val = b_star;
    for (std::size_t k = 0; k < 21; ++k) val += x[k] * c_star[k];
    y.push_back(val);
  }
  RegressionProjection proj = fit_projection(graphs, y);
  REQUIRE(proj.coefficients.size() == 21);
  for (std::size_t k = 0; k < 21; ++k)
    CHECK(proj.coefficients[k] == Catch::Approx(c_star[k]).margin(1e-8));
  CHECK(proj.intercept == Catch::Approx(b_star).margin(1e-8));
  CHECK(proj.fit_residual < 1e-10);

  SECTION("project reproduces the targets on an exact fit") {
    for (std::size_t i = 0; i < graphs.size(); ++i)
      CHECK(project(graphs[i], proj) == Catch::Approx(y[i]).margin(1e-8));
  }
}

TEST_CASE("fit_projection: constant target gives zero coefficients", "[stats]") {
  std::mt19937_64 rng(29);
  auto graphs = random_graphs(rng, 40);
  std::vector<double> y(40, 0.625);
  RegressionProjection proj = fit_projection(graphs, y);
  for (double c : proj.coefficients) CHECK(c == Catch::Approx(0.0).margin(1e-10));
  CHECK(proj.intercept == Catch::Approx(0.625).margin(1e-12));
}

TEST_CASE("fit_projection: identical graphs are rank deficient, minimum norm",
          "[stats]") {
  std::mt19937_64 rng(31);
  Matrix g = oracles::random_symmetric(rng, 6);
  std::vector<IntraExpeditionGraph> graphs(10, wrap(g));
  std::vector<double> y = {0.2, 0.4, 0.3, 0.5, 0.1, 0.2, 0.4, 0.3, 0.5, 0.1};
  RegressionProjection proj = fit_projection(graphs, y);
  CHECK(proj.rank_deficient);
  for (double c : proj.coefficients) CHECK(c == Catch::Approx(0.0).margin(1e-10));
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= y.size();
  CHECK(proj.intercept == Catch::Approx(mean).margin(1e-12));
}

TEST_CASE("fit_projection matches a normal-equations oracle on noisy data", "[stats]") {
  std::mt19937_64 rng(37);
  auto graphs = random_graphs(rng, 80);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c_star(21);
  for (double& c : c_star) c = u(rng);
  std::vector<double> y;
  std::vector<std::vector<double>> design;
  for (const auto& g : graphs) {
    std::vector<double> x = vectorize_graph(g.weights);
    double val = 0.1;
    for (std::size_t k = 0; k < 21; ++k) val += x[k] * c_star[k];
    val += noise(rng);
    y.push_back(val);
    design.push_back(x);
  }
  RegressionProjection proj = fit_projection(graphs, y);
  std::vector<double> beta = oracles::normal_equations_fit(design, y);
  for (std::size_t k = 0; k < 21; ++k)
    CHECK(proj.coefficients[k] == Catch::Approx(beta[k]).margin(1e-8));
  CHECK(proj.intercept == Catch::Approx(beta[21]).margin(1e-8));

  SECTION("residual matches the oracle's residual") {
    double oracle_sse = 0.0, fitted_sse = 0.0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      double oracle_pred = beta[21];
      for (std::size_t k = 0; k < 21; ++k) oracle_pred += design[i][k] * beta[k];
      oracle_sse += (oracle_pred - y[i]) * (oracle_pred - y[i]);
      double pred = project(graphs[i], proj);
      fitted_sse += (pred - y[i]) * (pred - y[i]);
    }
    CHECK(std::sqrt(fitted_sse / graphs.size()) ==
          Catch::Approx(std::sqrt(oracle_sse / graphs.size())).margin(1e-8));
    CHECK(proj.fit_residual ==
          Catch::Approx(std::sqrt(fitted_sse / graphs.size())).margin(1e-10));
  }
}

TEST_CASE("project: zero coefficients give the intercept", "[stats]") {
  RegressionProjection proj;
  proj.coefficients.assign(21, 0.0);
  proj.intercept = 0.42;
  std::mt19937_64 rng(41);
  CHECK(project(wrap(oracles::random_symmetric(rng, 6)), proj) == Catch::Approx(0.42));
}

TEST_CASE("pearson: perfect correlations and the formula oracle", "[stats]") {
  std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> y;
  for (double v : x) y.push_back(2.0 * v + 1.0);
  CHECK(pearson(x, y) == Catch::Approx(1.0));
  std::vector<double> neg;
  for (double v : x) neg.push_back(-v);
  CHECK(pearson(x, neg) == Catch::Approx(-1.0));

  SECTION("20-point fixture matches the direct formula") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> a(20), b(20);
    for (std::size_t i = 0; i < 20; ++i) {
      a[i] = u(rng);
      b[i] = 0.7 * a[i] + u(rng);
    }
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < 20; ++i) { ma += a[i]; mb += b[i]; }
    ma /= 20; mb /= 20;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < 20; ++i) {
      sab += (a[i] - ma) * (b[i] - mb);
      saa += (a[i] - ma) * (a[i] - ma);
      sbb += (b[i] - mb) * (b[i] - mb);
    }
    CHECK(pearson(a, b) == Catch::Approx(sab / std::sqrt(saa * sbb)).margin(1e-12));
  }

  SECTION("constant input and tiny samples are errors") {
    CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), AnalysisError);
    CHECK_THROWS_AS(pearson({1, 2}, {1, 2}), AnalysisError);
  }

  SECTION("invariance under positive affine maps, sign flip under negation") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(15), b(15);
    for (std::size_t i = 0; i < 15; ++i) { a[i] = u(rng); b[i] = u(rng); }
    double r = pearson(a, b);
    std::vector<double> scaled;
    for (double v : a) scaled.push_back(3.5 * v + 11.0);
    CHECK(std::fabs(pearson(scaled, b) - r) < 1e-12);
    std::vector<double> negated;
    for (double v : a) negated.push_back(-v);
    CHECK(pearson(negated, b) == Catch::Approx(-r).margin(1e-12));
  }
}

TEST_CASE("p_value: exact endpoints and the quadrature oracle", "[stats]") {
  CHECK(p_value(0.0, 10) == 1.0);
  CHECK(p_value(1.0, 10) == 0.0);
  CHECK(p_value(-1.0, 10) == 0.0);

  SECTION("matches numerical integration of the t-density") {
    for (auto [r, n] : std::vector<std::pair<double, std::size_t>>{
             {0.3, 10}, {0.5, 20}, {0.8, 50}, {0.5, 4}, {-0.6, 12}}) {
      double df = static_cast<double>(n - 2);
      double t = r * std::sqrt(df / (1.0 - r * r));
      double expected = oracles::t_pvalue_quadrature(t, df);
      CHECK(p_value(r, n) == Catch::Approx(expected).margin(1e-8));
    }
  }

  SECTION("monotone decreasing in |r| for fixed n, and in n for fixed r") {
    double prev = 1.1;
    for (double r : {0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 0.99}) {
      double p = p_value(r, 20);
      CHECK(p < prev);
      prev = p;
    }
    prev = 1.1;
    for (std::size_t n : {5u, 10u, 20u, 50u, 100u}) {
      double p = p_value(0.4, n);
      CHECK(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("layer_success_correlations: planted signs and eta dominance", "[stats]") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ExpeditionRecord> exps;
  std::vector<IntraExpeditionGraph> intra;
  std::vector<double> success;
  for (int i = 0; i < 60; ++i) {
    ExpeditionRecord e;
    e.expedition_id = "E" + std::to_string(i);
    e.peak_id = "EVEREST";
    e.peak_height = 8849;
    e.year = 2015;
    double quality = u(rng);
    e.n_members = 8 + static_cast<int>(30 * quality);  // size grows with success
    e.n_hired = 2;
    e.days_to_summit = 40.0 - 25.0 * quality + 2.0 * u(rng);  // days shrink
    e.camps_above_bc = static_cast<int>(rng() % 6);
    exps.push_back(e);
    intra.push_back(wrap(oracles::random_symmetric(rng, 6), e.expedition_id));
    success.push_back(std::clamp(quality + 0.1 * (u(rng) - 0.5), 0.0, 1.0));
  }
  Dataset ds = link_and_validate(exps, {});
  CorrelationReport report = layer_success_correlations(ds, intra, success);
  REQUIRE(report.layers.size() == kLayerCount);
  CHECK(report.layers[0].kind == LayerKind::DaysToSummit);
  CHECK(report.layers[0].r < -0.5);
  CHECK(report.layers[0].p < 0.01);
  CHECK(report.layers[3].kind == LayerKind::ExpeditionSize);
  CHECK(report.layers[3].r > 0.5);
  CHECK(report.layers[3].p < 0.01);
  for (const auto& layer : report.layers) {
    CHECK(layer.r >= -1.0);
    CHECK(layer.r <= 1.0);
    CHECK(layer.p >= 0.0);
    CHECK(layer.p <= 1.0);
  }

  SECTION("in-sample corr(eta, y) dominates any single vectorized feature") {
    double eta_r = pearson(report.eta, success);
    for (std::size_t k = 0; k < 21; ++k) {
      std::vector<double> feature;
      for (const auto& g : intra) feature.push_back(vectorize_graph(g.weights)[k]);
      bool constant = true;
      for (double v : feature)
        if (v != feature.front()) { constant = false; break; }
      if (constant) continue;
      CHECK(eta_r + 1e-9 >= std::fabs(pearson(feature, success)));
    }
  }

  SECTION("exact linear targets give corr(eta, y) == 1") {
    std::vector<double> y_exact;
    for (const auto& g : intra)
      y_exact.push_back(vectorize_graph(g.weights)[4] * 0.5 + 0.2);
    CorrelationReport exact = layer_success_correlations(ds, intra, y_exact);
    CHECK(pearson(exact.eta, y_exact) == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("layer_success_correlations drops undefined ratio pairs", "[stats]") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ExpeditionRecord> exps;
  std::vector<IntraExpeditionGraph> intra;
  std::vector<double> success;
  for (int i = 0; i < 12; ++i) {
    ExpeditionRecord e;
    e.expedition_id = "E" + std::to_string(i);
    e.days_to_summit = 10 + i;
    e.camps_above_bc = i % 5;
    e.n_members = 10 + i;
    e.n_hired = i < 4 ? 0 : 3;  // four undefined ratios
    exps.push_back(e);
    intra.push_back(wrap(oracles::random_symmetric(rng, 6), e.expedition_id));
    success.push_back(u(rng));
  }
  Dataset ds = link_and_validate(exps, {});
  CorrelationReport report = layer_success_correlations(ds, intra, success);
  CHECK(report.layers[2].kind == LayerKind::MemberToHiredRatio);
  CHECK(report.layers[2].n == 8);
  CHECK(report.layers[0].n == 12);
}
