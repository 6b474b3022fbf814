// multiplex.hpp -- the five-layer expedition-similarity multiplex and its
// aggregation
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ascent/graphdist.hpp"
#include "ascent/matrix.hpp"
#include "ascent/records.hpp"

namespace ascent {

enum class LayerKind {
  DaysToSummit,
  CampsAboveBC,
  ExpeditionSize,
  MemberToHiredRatio,
  IntraExpeditionSimilarity,
};

inline constexpr std::size_t kLayerCount = 5;

inline constexpr std::array<LayerKind, kLayerCount> kAllLayers = {
    LayerKind::DaysToSummit, LayerKind::CampsAboveBC, LayerKind::ExpeditionSize,
    LayerKind::MemberToHiredRatio, LayerKind::IntraExpeditionSimilarity};

// Reporting order: days, camps, ratio, size, feature graph.
inline constexpr std::array<LayerKind, kLayerCount> kLayerReportOrder = {
    LayerKind::DaysToSummit, LayerKind::CampsAboveBC, LayerKind::MemberToHiredRatio,
    LayerKind::ExpeditionSize, LayerKind::IntraExpeditionSimilarity};

inline const char* to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::DaysToSummit: return "days_to_summit";
    case LayerKind::CampsAboveBC: return "camps_above_bc";
    case LayerKind::ExpeditionSize: return "expedition_size";
    case LayerKind::MemberToHiredRatio: return "member_hired_ratio";
    case LayerKind::IntraExpeditionSimilarity: return "intra_expedition_graph";
  }
  return "unknown";
}

constexpr std::size_t layer_index(LayerKind kind) { return static_cast<std::size_t>(kind); }

// Raw factor value of one expedition in a threshold layer. The ratio is
// undefined when an expedition has no hired personnel.
inline std::optional<double> layer_value(const ExpeditionRecord& exp, LayerKind kind) {
  switch (kind) {
    case LayerKind::DaysToSummit: return exp.days_to_summit;
    case LayerKind::CampsAboveBC: return static_cast<double>(exp.camps_above_bc);
    case LayerKind::ExpeditionSize:
      return static_cast<double>(exp.n_members + exp.n_hired);
    case LayerKind::MemberToHiredRatio:
      if (exp.n_hired == 0) return std::nullopt;
      return static_cast<double>(exp.n_members) / static_cast<double>(exp.n_hired);
    case LayerKind::IntraExpeditionSimilarity:
      throw AnalysisError("layer_value: similarity layer has no scalar factor");
  }
  return std::nullopt;
}

// Values follow the dataset's expedition order; undefined entries are
// reported so callers can log them.
struct LayerValues {
  LayerKind kind = LayerKind::DaysToSummit;
  std::vector<std::optional<double>> values;
  std::vector<std::string> undefined_ids;

  std::size_t defined_count() const {
    std::size_t n = 0;
    for (const auto& v : values)
      if (v) ++n;
    return n;
  }

  double mean() const {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : values)
      if (v) { sum += *v; ++n; }
    if (n == 0) throw AnalysisError("layer mean undefined: no defined values");
    return sum / static_cast<double>(n);
  }
};

inline LayerValues layer_values(const Dataset& ds, LayerKind kind) {
  LayerValues out;
  out.kind = kind;
  out.values.reserve(ds.expeditions.size());
  for (const auto& exp : ds.expeditions) {
    auto v = layer_value(exp, kind);
    if (!v) out.undefined_ids.push_back(exp.expedition_id);
    out.values.push_back(v);
  }
  return out;
}

// Binary factor layer: edge (i, j), i != j, iff both values strictly exceed
// the layer mean. Expeditions with undefined values stay isolated.
inline Matrix threshold_layer(const std::vector<std::optional<double>>& values, double mean) {
  std::size_t n = values.size();
  Matrix layer = Matrix::square(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!values[i] || !(*values[i] > mean)) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!values[j] || !(*values[j] > mean)) continue;
      layer(i, j) = 1.0;
      layer(j, i) = 1.0;
    }
  }
  return layer;
}

struct MultiplexGraph {
  std::array<Matrix, kLayerCount> layers;  // indexed by layer_index(kind)
  std::vector<std::string> expedition_ids;
  std::array<std::optional<double>, kLayerCount> layer_means;  // unset for similarity layer
  std::vector<std::string> ratio_undefined_ids;
  bool degenerate_distance_normalization = false;

  std::size_t size() const { return expedition_ids.size(); }
  const Matrix& layer(LayerKind kind) const { return layers[layer_index(kind)]; }
};

struct MultiplexOptions {
  // Connect the feature-graph layer by normalized distance instead of its
  // complement.
  bool similarity_layer_uses_distance = false;
};

// Builds all five layers over a filtered dataset plus its per-expedition
// size-normalized feature graphs (aligned with ds.expeditions order).
inline MultiplexGraph build_multiplex(const Dataset& ds,
                                      const std::vector<IntraExpeditionGraph>& intra_graphs,
                                      const MultiplexOptions& opt = {}) {
  if (ds.expeditions.size() < 2)
    throw AnalysisError("build_multiplex: need at least 2 expeditions");
  if (intra_graphs.size() != ds.expeditions.size())
    throw AnalysisError("build_multiplex: intra graph count does not match expeditions");
  for (std::size_t i = 0; i < intra_graphs.size(); ++i)
    if (intra_graphs[i].expedition_id != ds.expeditions[i].expedition_id)
      throw AnalysisError("build_multiplex: intra graph order does not match expeditions");

  MultiplexGraph out;
  out.expedition_ids.reserve(ds.expeditions.size());
  for (const auto& exp : ds.expeditions) out.expedition_ids.push_back(exp.expedition_id);

  for (LayerKind kind : {LayerKind::DaysToSummit, LayerKind::CampsAboveBC,
                         LayerKind::ExpeditionSize, LayerKind::MemberToHiredRatio}) {
    LayerValues vals = layer_values(ds, kind);
    double mu = vals.mean();
    out.layer_means[layer_index(kind)] = mu;
    out.layers[layer_index(kind)] = threshold_layer(vals.values, mu);
    if (kind == LayerKind::MemberToHiredRatio)
      out.ratio_undefined_ids = vals.undefined_ids;
  }

  DistanceMatrix normalized = normalize_unit(pairwise_distances(intra_graphs));
  out.degenerate_distance_normalization = normalized.degenerate_normalization;
  out.layers[layer_index(LayerKind::IntraExpeditionSimilarity)] =
      to_similarity(normalized, opt.similarity_layer_uses_distance);
  return out;
}

struct SimilarityGraph {
  Matrix weights;  // n x n, entries in [0,1], zero diagonal
  std::array<double, kLayerCount> weights_used{};
  std::vector<std::string> expedition_ids;
};

inline constexpr std::array<double, kLayerCount> kUniformLayerWeights = {0.2, 0.2, 0.2,
                                                                         0.2, 0.2};

// S = sum_l w_l E^l with nonnegative weights summing to 1 (uniform 1/5 by
// default).
inline SimilarityGraph aggregate(const MultiplexGraph& e,
                                 const std::array<double, kLayerCount>& weights =
                                     kUniformLayerWeights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw AnalysisError("aggregate: layer weights must be nonnegative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw AnalysisError("aggregate: layer weights must sum to 1");

  SimilarityGraph out;
  out.weights_used = weights;
  out.expedition_ids = e.expedition_ids;
  std::size_t n = e.size();
  out.weights = Matrix::square(n);
  for (std::size_t l = 0; l < kLayerCount; ++l) {
    if (weights[l] == 0.0) continue;
    const Matrix& layer = e.layers[l];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out.weights(i, j) += weights[l] * layer(i, j);
  }
  return out;
}

}  // namespace ascent
