// stats.hpp -- graph-to-scalar regression projection, Pearson correlation
// and Student-t p-values
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ascent/bipartite.hpp"
#include "ascent/matrix.hpp"
#include "ascent/multiplex.hpp"

namespace ascent {

// Unique entries of a symmetric matrix: row-major upper triangle including
// the diagonal, frozen order. For f=6 the diagonal lands at indices
// {0, 6, 11, 15, 18, 20}.
inline std::vector<double> vectorize_graph(const Matrix& m, bool include_diagonal = true) {
  if (!m.is_square()) throw AnalysisError("vectorize_graph: matrix is not square");
  if (!m.is_symmetric(1e-12))
    throw AnalysisError("vectorize_graph: matrix is not symmetric");
  std::vector<double> out;
  std::size_t f = m.rows();
  out.reserve(include_diagonal ? f * (f + 1) / 2 : f * (f - 1) / 2);
  for (std::size_t a = 0; a < f; ++a)
    for (std::size_t b = include_diagonal ? a : a + 1; b < f; ++b)
      out.push_back(m(a, b));
  return out;
}

struct RegressionProjection {
  std::vector<double> coefficients;  // one per unique matrix entry
  double intercept = 0.0;
  double fit_residual = 0.0;  // RMSE over the fitting sample
  bool include_diagonal = true;
  bool rank_deficient = false;
  bool underdetermined = false;  // fewer samples than unknowns
  int rank = 0;
};

// Least-squares fit mapping vectorized graphs to success rates. Columns and
// targets are centered, the coefficient solve uses a complete orthogonal
// decomposition (minimum-norm on rank deficiency), and the intercept is
// recovered from the means -- so a constant target yields zero coefficients
// and intercept = mean(y).
inline RegressionProjection fit_projection(const std::vector<IntraExpeditionGraph>& graphs,
                                           const std::vector<double>& success_rates,
                                           bool include_diagonal = true) {
  if (graphs.empty()) throw AnalysisError("fit_projection: no graphs");
  if (graphs.size() != success_rates.size())
    throw AnalysisError("fit_projection: graphs and success rates differ in length");

  const std::size_t n = graphs.size();
  std::vector<double> first = vectorize_graph(graphs[0].weights, include_diagonal);
  const std::size_t p = first.size();

  Eigen::MatrixXd design(n, p);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row =
        i == 0 ? first : vectorize_graph(graphs[i].weights, include_diagonal);
    if (row.size() != p) throw AnalysisError("fit_projection: graph shape mismatch");
    for (std::size_t j = 0; j < p; ++j) design(i, j) = row[j];
    y(i) = success_rates[i];
  }

  Eigen::RowVectorXd col_means = design.colwise().mean();
  double y_mean = y.mean();
  Eigen::MatrixXd centered = design.rowwise() - col_means;
  Eigen::VectorXd y_centered = y.array() - y_mean;

  // Constant predictors center to floating-point dust, which defeats the
  // decomposition's relative rank threshold; drop them outright (their
  // minimum-norm coefficient is 0).
  std::vector<Eigen::Index> active;
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(p); ++j) {
    double scale = 1.0 + std::fabs(col_means(j));
    if (centered.col(j).norm() > 1e-10 * scale * std::sqrt(static_cast<double>(n)))
      active.push_back(j);
  }
  Eigen::MatrixXd reduced(n, static_cast<Eigen::Index>(active.size()));
  for (std::size_t k = 0; k < active.size(); ++k)
    reduced.col(static_cast<Eigen::Index>(k)) = centered.col(active[k]);

  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  Eigen::Index rank = 0;
  if (!active.empty()) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(reduced);
    Eigen::VectorXd c_reduced = cod.solve(y_centered);
    rank = cod.rank();
    for (std::size_t k = 0; k < active.size(); ++k)
      c(active[k]) = c_reduced(static_cast<Eigen::Index>(k));
  }

  RegressionProjection proj;
  proj.include_diagonal = include_diagonal;
  proj.coefficients.assign(c.data(), c.data() + c.size());
  proj.intercept = y_mean - col_means.dot(c);
  proj.rank = static_cast<int>(rank);
  proj.rank_deficient = rank < static_cast<Eigen::Index>(p);
  proj.underdetermined = n < p + 1;

  Eigen::VectorXd residual = design * c;
  residual.array() += proj.intercept;
  residual -= y;
  proj.fit_residual = std::sqrt(residual.squaredNorm() / static_cast<double>(n));
  return proj;
}

// eta = vectorized graph . c + intercept.
inline double project(const IntraExpeditionGraph& graph, const RegressionProjection& proj) {
  std::vector<double> x = vectorize_graph(graph.weights, proj.include_diagonal);
  if (x.size() != proj.coefficients.size())
    throw AnalysisError("project: graph does not match fitted projection");
  double eta = proj.intercept;
  for (std::size_t i = 0; i < x.size(); ++i) eta += x[i] * proj.coefficients[i];
  return eta;
}

// Sample Pearson correlation. Requires n >= 3 and nonconstant inputs.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw AnalysisError("pearson: length mismatch");
  std::size_t n = x.size();
  if (n < 3) throw AnalysisError("pearson: need at least 3 samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx;
    double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw AnalysisError("pearson: correlation undefined for constant input");
  return sxy / std::sqrt(sxx * syy);
}

namespace detail {

// Continued-fraction core of the regularized incomplete beta function
// (modified Lentz).
inline double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double eps = 1e-16;
  const int max_iter = 500;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0)
    throw AnalysisError("regularized_incomplete_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                     a * std::log(x) + b * std::log(1.0 - x);
  double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_cf(a, b, x) / a;
  return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        b * std::log(1.0 - x) + a * std::log(x)) *
                   detail::beta_cf(b, a, 1.0 - x) / b;
}

// Two-sided p-value of a Pearson correlation under the null, via the exact
// identity 2 P(T_{n-2} > |t|) = I_{1-r^2}(df/2, 1/2).
inline double p_value(double r, std::size_t n) {
  if (n < 3) throw AnalysisError("p_value: need n >= 3");
  if (std::fabs(r) > 1.0) throw AnalysisError("p_value: |r| must be <= 1");
  if (std::fabs(r) == 1.0) return 0.0;
  if (r == 0.0) return 1.0;
  double df = static_cast<double>(n - 2);
  return regularized_incomplete_beta(df / 2.0, 0.5, 1.0 - r * r);
}

struct LayerCorrelation {
  LayerKind kind = LayerKind::DaysToSummit;
  double r = 0.0;
  double p = 1.0;
  std::size_t n = 0;
};

struct CorrelationReport {
  std::vector<LayerCorrelation> layers;  // in reporting order
  RegressionProjection projection;
  std::vector<double> eta;  // per expedition, aligned with the dataset
};

// Pearson correlation of each layer with expedition success rate. Factor
// layers use their raw per-expedition values (pairs with undefined values
// are dropped); the feature-graph layer uses the regression projection eta.
inline CorrelationReport layer_success_correlations(
    const Dataset& ds, const std::vector<IntraExpeditionGraph>& intra_graphs,
    const std::vector<double>& success_rates, bool include_diagonal = true) {
  if (ds.expeditions.size() != success_rates.size())
    throw AnalysisError("layer_success_correlations: success rates misaligned");
  if (ds.expeditions.size() != intra_graphs.size())
    throw AnalysisError("layer_success_correlations: intra graphs misaligned");

  CorrelationReport report;
  report.projection = fit_projection(intra_graphs, success_rates, include_diagonal);
  report.eta.reserve(intra_graphs.size());
  for (const auto& g : intra_graphs) report.eta.push_back(project(g, report.projection));

  for (LayerKind kind : kLayerReportOrder) {
    LayerCorrelation entry;
    entry.kind = kind;
    std::vector<double> xs, ys;
    if (kind == LayerKind::IntraExpeditionSimilarity) {
      xs = report.eta;
      ys = success_rates;
    } else {
      LayerValues vals = layer_values(ds, kind);
      for (std::size_t i = 0; i < vals.values.size(); ++i) {
        if (!vals.values[i]) continue;
        xs.push_back(*vals.values[i]);
        ys.push_back(success_rates[i]);
      }
    }
    entry.n = xs.size();
    entry.r = pearson(xs, ys);
    entry.p = p_value(entry.r, entry.n);
    report.layers.push_back(entry);
  }
  return report;
}

}  // namespace ascent
