// centrality.hpp -- eigenvector centrality of feature graphs and
// summit/no-summit group comparisons
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ascent/bipartite.hpp"
#include "ascent/matrix.hpp"

namespace ascent {

struct CentralityVector {
  std::vector<double> values;  // nonnegative, L2 norm 1
  bool converged = false;
  std::size_t iterations = 0;
};

// Dominant eigenvector of a symmetric nonnegative matrix, by power iteration
// from the uniform start vector. Iterates A + cI rather than A itself: graphs
// with bipartite structure (a path, say) give A two dominant eigenvalues of
// equal magnitude and opposite sign, and the unshifted iteration oscillates
// forever between two accumulation points. The shift leaves eigenvectors
// unchanged and makes the Perron root strictly dominant in magnitude.
inline CentralityVector eigenvector_centrality(const Matrix& graph, double tol = 1e-10,
                                               std::size_t max_iter = 100000) {
  require_symmetric_nonnegative(graph, "eigenvector_centrality");
  std::size_t n = graph.rows();
  if (n == 0 || graph.all_zero())
    throw AnalysisError("eigenvector_centrality: graph has no edges");

  const double shift = 1.0;
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n, 0.0);

  CentralityVector result;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = shift * x[i];
      for (std::size_t j = 0; j < n; ++j) s += graph(i, j) * x[j];
      next[i] = s;
    }
    double norm = 0.0;
    for (double v : next) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : next) v /= norm;

    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += (next[i] - x[i]) * (next[i] - x[i]);
    x = next;
    result.iterations = iter + 1;
    if (std::sqrt(delta) < tol) {
      result.converged = true;
      break;
    }
  }
  for (double& v : x)
    if (v < 0.0 && v > -1e-14) v = 0.0;
  result.values = std::move(x);
  return result;
}

// Per-expedition graphs of one outcome group, size-normalized.
struct OutcomeGraphs {
  std::vector<IntraExpeditionGraph> success;
  std::vector<IntraExpeditionGraph> nosummit;
};

// Within each expedition, partitions the binarizable members by summit
// outcome and projects each side separately. A side with fewer than two
// climbers contributes no graph.
inline OutcomeGraphs split_by_outcome(const Dataset& ds, double median_age,
                                      const BipartiteBuildOptions& opt = {},
                                      std::vector<Diagnostic>* excluded = nullptr) {
  OutcomeGraphs out;
  for (const auto& exp : ds.expeditions) {
    struct Side {
      std::vector<std::size_t> rows;
    } yes, no;
    for (std::size_t row : exp.member_rows) {
      const auto& climber = ds.climbers[row];
      if (!opt.include_hired && climber.hired) continue;
      if (!climber.age) {
        if (excluded)
          excluded->push_back({"bipartite", 0, climber.climber_id,
                               "missing age; excluded from outcome graphs of " +
                                   exp.expedition_id});
        continue;
      }
      (climber.summited ? yes : no).rows.push_back(row);
    }
    auto build_side = [&](const Side& side, std::vector<IntraExpeditionGraph>& sink) {
      if (side.rows.size() < 2) return;
      ExpeditionRecord sub = exp;
      sub.member_rows = side.rows;
      sub.members.clear();
      for (std::size_t row : side.rows) sub.members.push_back(ds.climbers[row].climber_id);
      BipartiteGraph p = build_bipartite(sub, ds, median_age, opt, nullptr);
      sink.push_back(normalize_by_size(project(p)));
    };
    build_side(yes, out.success);
    build_side(no, out.nosummit);
  }
  return out;
}

struct GroupCentralityRow {
  std::string feature;
  double mean_success = 0.0;
  double stderr_success = 0.0;
  double mean_nosummit = 0.0;
  double stderr_nosummit = 0.0;

  double difference() const { return mean_success - mean_nosummit; }
};

// Rows indexed by feature; serialization orders them by ascending
// (mean_success - mean_nosummit).
struct GroupCentralityTable {
  std::vector<GroupCentralityRow> rows;
  std::size_t n_success = 0;
  std::size_t n_nosummit = 0;

  std::vector<GroupCentralityRow> sorted_by_difference() const {
    std::vector<GroupCentralityRow> out = rows;
    std::stable_sort(out.begin(), out.end(),
                     [](const GroupCentralityRow& a, const GroupCentralityRow& b) {
                       return a.difference() < b.difference();
                     });
    return out;
  }
};

namespace detail {

// Mean and standard error per feature across a group of graphs. Standard
// error is sample-stddev / sqrt(n); defined as 0 for n < 2.
inline void group_stats(const std::vector<IntraExpeditionGraph>& graphs,
                        std::vector<double>& mean, std::vector<double>& stderr_out) {
  std::size_t f = graphs.front().weights.rows();
  std::vector<std::vector<double>> samples(f);
  for (const auto& g : graphs) {
    CentralityVector c = eigenvector_centrality(g.weights);
    for (std::size_t k = 0; k < f; ++k) samples[k].push_back(c.values[k]);
  }
  mean.assign(f, 0.0);
  stderr_out.assign(f, 0.0);
  for (std::size_t k = 0; k < f; ++k) {
    double m = 0.0;
    for (double v : samples[k]) m += v;
    m /= static_cast<double>(samples[k].size());
    mean[k] = m;
    std::size_t n = samples[k].size();
    if (n >= 2) {
      double ss = 0.0;
      for (double v : samples[k]) ss += (v - m) * (v - m);
      stderr_out[k] = std::sqrt(ss / static_cast<double>(n - 1)) /
                      std::sqrt(static_cast<double>(n));
    }
  }
}

}  // namespace detail

// Per-feature mean centrality and standard error for each outcome group.
inline GroupCentralityTable group_centrality(
    const std::vector<IntraExpeditionGraph>& success_graphs,
    const std::vector<IntraExpeditionGraph>& nosummit_graphs) {
  if (success_graphs.empty() || nosummit_graphs.empty())
    throw AnalysisError("group_centrality: both outcome groups must be nonempty");
  std::vector<double> mean_s, se_s, mean_n, se_n;
  detail::group_stats(success_graphs, mean_s, se_s);
  detail::group_stats(nosummit_graphs, mean_n, se_n);

  GroupCentralityTable table;
  table.n_success = success_graphs.size();
  table.n_nosummit = nosummit_graphs.size();
  for (std::size_t k = 0; k < mean_s.size(); ++k) {
    GroupCentralityRow row;
    row.feature = k < kFeatureCount ? kFeatureNames[k] : "feature_" + std::to_string(k);
    row.mean_success = mean_s[k];
    row.stderr_success = se_s[k];
    row.mean_nosummit = mean_n[k];
    row.stderr_nosummit = se_n[k];
    table.rows.push_back(std::move(row));
  }
  return table;
}

// Entrywise mean of a group of (size-normalized) graphs.
inline IntraExpeditionGraph aggregate_group(const std::vector<IntraExpeditionGraph>& graphs) {
  if (graphs.empty()) throw AnalysisError("aggregate_group: empty group");
  IntraExpeditionGraph out;
  out.expedition_id = "aggregate";
  out.normalized = graphs.front().normalized;
  out.weights = graphs.front().weights;
  for (std::size_t i = 1; i < graphs.size(); ++i) {
    if (!graphs[i].weights.same_shape(out.weights))
      throw AnalysisError("aggregate_group: graph shape mismatch");
    out.weights += graphs[i].weights;
  }
  out.weights *= 1.0 / static_cast<double>(graphs.size());
  return out;
}

}  // namespace ascent
