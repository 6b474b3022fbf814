// community.hpp -- weighted modularity, Louvain community detection and
// per-community profiles
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "ascent/centrality.hpp"
#include "ascent/matrix.hpp"
#include "ascent/multiplex.hpp"
#include "ascent/records.hpp"

namespace ascent {

// Newman-Girvan modularity of a labeled partition on a weighted undirected
// graph (zero diagonal at the finest level; coarse graphs carry self-loops).
inline double modularity(const Matrix& graph, const std::vector<int>& labels,
                         double resolution = 1.0) {
  require_symmetric_nonnegative(graph, "modularity");
  std::size_t n = graph.rows();
  if (labels.size() != n) throw AnalysisError("modularity: label count mismatch");

  double m2 = 0.0;  // sum over ordered pairs, diagonal once
  std::vector<double> degree(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = row_sum(graph, i);
    m2 += degree[i];
  }
  if (m2 <= 0.0) throw AnalysisError("modularity: graph has zero total weight");

  int max_label = 0;
  for (int l : labels) max_label = std::max(max_label, l);
  std::vector<double> w_in(static_cast<std::size_t>(max_label) + 1, 0.0);
  std::vector<double> tot(static_cast<std::size_t>(max_label) + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    tot[static_cast<std::size_t>(labels[i])] += degree[i];
    for (std::size_t j = 0; j < n; ++j)
      if (labels[i] == labels[j]) w_in[static_cast<std::size_t>(labels[i])] += graph(i, j);
  }
  double q = 0.0;
  for (std::size_t c = 0; c < w_in.size(); ++c)
    q += w_in[c] / m2 - resolution * (tot[c] / m2) * (tot[c] / m2);
  return q;
}

struct Partition {
  std::vector<int> labels;  // contiguous from 0, aligned with node order
  std::unordered_map<std::string, int> assignment;  // filled when ids are known
  double modularity = 0.0;
  std::uint64_t seed = 0;

  std::size_t community_count() const {
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    return static_cast<std::size_t>(max_label + 1);
  }
};

namespace detail {

constexpr double kLouvainGainTolerance = 1e-9;

// One local-move phase. Returns true when at least one node moved.
inline bool louvain_local_moves(const Matrix& graph, std::vector<int>& node_comm,
                                double resolution, std::mt19937_64& rng) {
  std::size_t n = graph.rows();
  std::vector<double> degree(n, 0.0);
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = row_sum(graph, i);
    m2 += degree[i];
  }

  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    tot[static_cast<std::size_t>(node_comm[i])] += degree[i];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  bool any_move = false;
  bool moved_in_sweep = true;
  std::vector<double> weight_to(n, 0.0);
  while (moved_in_sweep) {
    moved_in_sweep = false;
    for (std::size_t i : order) {
      int old_comm = node_comm[i];
      // Connection weight from i to each community (self-loop excluded).
      std::vector<int> touched;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || graph(i, j) == 0.0) continue;
        int c = node_comm[j];
        if (std::find(touched.begin(), touched.end(), c) == touched.end())
          touched.push_back(c);
        weight_to[static_cast<std::size_t>(c)] += graph(i, j);
      }
      tot[static_cast<std::size_t>(old_comm)] -= degree[i];

      // Insertion gain into community c (common terms dropped):
      //   2*w(i,c)/m2 - 2*resolution*degree_i*tot_c/m2^2
      auto gain = [&](int c) {
        return 2.0 * weight_to[static_cast<std::size_t>(c)] / m2 -
               2.0 * resolution * degree[i] * tot[static_cast<std::size_t>(c)] / (m2 * m2);
      };
      if (std::find(touched.begin(), touched.end(), old_comm) == touched.end())
        touched.push_back(old_comm);
      std::sort(touched.begin(), touched.end());

      // Scanning labels in ascending order and replacing only on a gain
      // strictly above tolerance makes equal-gain ties resolve to the
      // lowest community label.
      int best_comm = touched.front();
      double best_gain = gain(best_comm);
      for (std::size_t t = 1; t < touched.size(); ++t) {
        double g = gain(touched[t]);
        if (g > best_gain + kLouvainGainTolerance) {
          best_gain = g;
          best_comm = touched[t];
        }
      }
      double stay_gain = gain(old_comm);
      if (best_comm == old_comm || best_gain <= stay_gain + kLouvainGainTolerance)
        best_comm = old_comm;

      tot[static_cast<std::size_t>(best_comm)] += degree[i];
      for (int c : touched) weight_to[static_cast<std::size_t>(c)] = 0.0;
      if (best_comm != old_comm) {
        node_comm[i] = best_comm;
        moved_in_sweep = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

// Renumbers labels to 0..K-1 by first appearance in node order.
inline std::size_t compact_labels(std::vector<int>& labels) {
  std::unordered_map<int, int> remap;
  for (int& l : labels) {
    auto [it, inserted] = remap.emplace(l, static_cast<int>(remap.size()));
    l = it->second;
  }
  return remap.size();
}

// Community graph: edge weights summed; intra-community weight becomes a
// self-loop so modularity is preserved across levels.
inline Matrix coarsen(const Matrix& graph, const std::vector<int>& labels,
                      std::size_t n_comms) {
  Matrix coarse = Matrix::square(n_comms);
  std::size_t n = graph.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      coarse(static_cast<std::size_t>(labels[i]), static_cast<std::size_t>(labels[j])) +=
          graph(i, j);
  return coarse;
}

}  // namespace detail

// Two-phase Louvain on a weighted similarity graph: seeded-random local
// moves until no move improves modularity by more than 1e-9, then
// coarsening; repeated until quiescent. Deterministic for a fixed seed.
inline Partition louvain(const Matrix& graph, std::uint64_t seed, double resolution = 1.0,
                         const std::vector<std::string>* ids = nullptr) {
  require_symmetric_nonnegative(graph, "louvain");
  std::size_t n = graph.rows();
  if (n == 0) throw AnalysisError("louvain: empty graph");

  std::mt19937_64 rng(seed);
  std::vector<int> final_labels(n);
  std::iota(final_labels.begin(), final_labels.end(), 0);

  Matrix level_graph = graph;
  double current_q = modularity(graph, final_labels, resolution);

  while (true) {
    std::vector<int> node_comm(level_graph.rows());
    std::iota(node_comm.begin(), node_comm.end(), 0);
    bool moved = detail::louvain_local_moves(level_graph, node_comm, resolution, rng);
    if (!moved) break;

    std::size_t n_comms = detail::compact_labels(node_comm);
    for (int& l : final_labels)
      l = node_comm[static_cast<std::size_t>(l)];

    double new_q = modularity(graph, final_labels, resolution);
    if (new_q - current_q <= detail::kLouvainGainTolerance) break;
    current_q = new_q;

    if (n_comms == level_graph.rows()) break;
    level_graph = detail::coarsen(level_graph, node_comm, n_comms);
  }

  detail::compact_labels(final_labels);
  Partition part;
  part.labels = std::move(final_labels);
  part.seed = seed;
  part.modularity = modularity(graph, part.labels, resolution);
  if (ids) {
    if (ids->size() != n) throw AnalysisError("louvain: id count mismatch");
    for (std::size_t i = 0; i < n; ++i) part.assignment.emplace((*ids)[i], part.labels[i]);
  }
  return part;
}

struct CommunityProfile {
  int label = 0;
  std::size_t size = 0;
  double mean_success_rate = 0.0;
  // Factor means in reporting order: days, camps, ratio, size. The ratio is
  // absent when undefined for every member expedition.
  std::array<std::optional<double>, 4> factor_means;
  std::vector<double> mean_centrality;  // per feature
};

struct CommunityProfileOptions {
  // Average per-expedition centrality vectors (default), or compute the
  // centrality of the community-mean graph instead.
  bool centrality_of_mean_graph = false;
};

// Per-community means of success rate, raw factor values and feature
// centralities, ordered by ascending mean success rate.
inline std::vector<CommunityProfile> community_profiles(
    const Partition& partition, const Dataset& ds,
    const std::vector<IntraExpeditionGraph>& intra_graphs,
    const std::vector<double>& success_rates, const CommunityProfileOptions& opt = {}) {
  std::size_t n = ds.expeditions.size();
  if (partition.labels.size() != n || intra_graphs.size() != n || success_rates.size() != n)
    throw AnalysisError("community_profiles: misaligned inputs");

  std::size_t n_comms = partition.community_count();
  std::vector<CommunityProfile> profiles(n_comms);
  std::vector<std::vector<std::size_t>> members(n_comms);
  for (std::size_t i = 0; i < n; ++i)
    members[static_cast<std::size_t>(partition.labels[i])].push_back(i);

  constexpr std::array<LayerKind, 4> factor_order = {
      LayerKind::DaysToSummit, LayerKind::CampsAboveBC, LayerKind::MemberToHiredRatio,
      LayerKind::ExpeditionSize};

  for (std::size_t c = 0; c < n_comms; ++c) {
    CommunityProfile& prof = profiles[c];
    prof.label = static_cast<int>(c);
    prof.size = members[c].size();
    if (members[c].empty()) continue;

    double success_sum = 0.0;
    for (std::size_t i : members[c]) success_sum += success_rates[i];
    prof.mean_success_rate = success_sum / static_cast<double>(members[c].size());

    for (std::size_t f = 0; f < factor_order.size(); ++f) {
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t i : members[c]) {
        auto v = layer_value(ds.expeditions[i], factor_order[f]);
        if (v) { sum += *v; ++count; }
      }
      if (count > 0) prof.factor_means[f] = sum / static_cast<double>(count);
    }

    if (opt.centrality_of_mean_graph) {
      std::vector<IntraExpeditionGraph> group;
      for (std::size_t i : members[c]) group.push_back(intra_graphs[i]);
      prof.mean_centrality = eigenvector_centrality(aggregate_group(group).weights).values;
    } else {
      std::size_t f = intra_graphs[members[c][0]].weights.rows();
      prof.mean_centrality.assign(f, 0.0);
      for (std::size_t i : members[c]) {
        CentralityVector cv = eigenvector_centrality(intra_graphs[i].weights);
        for (std::size_t k = 0; k < f; ++k) prof.mean_centrality[k] += cv.values[k];
      }
      for (double& v : prof.mean_centrality) v /= static_cast<double>(members[c].size());
    }
  }

  std::stable_sort(profiles.begin(), profiles.end(),
                   [](const CommunityProfile& a, const CommunityProfile& b) {
                     return a.mean_success_rate < b.mean_success_rate;
                   });
  return profiles;
}

}  // namespace ascent
