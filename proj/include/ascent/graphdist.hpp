// graphdist.hpp -- edit distance between intra-expedition graphs and the
// similarity layer derived from it
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ascent/bipartite.hpp"
#include "ascent/matrix.hpp"

namespace ascent {

// Edit distance between two feature graphs on the same labeled node set.
// With identical labeled nodes no insertion/deletion/matching search exists;
// the cost reduces to L1 substitution over the unique entries (upper
// triangle including the diagonal, which carries feature prevalence).
inline double edit_distance(const IntraExpeditionGraph& a, const IntraExpeditionGraph& b) {
  if (!a.weights.same_shape(b.weights))
    throw AnalysisError("edit_distance: graph shape mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.weights.rows(); ++i)
    for (std::size_t j = i; j < a.weights.cols(); ++j)
      sum += std::fabs(a.weights(i, j) - b.weights(i, j));
  return sum;
}

struct DistanceMatrix {
  Matrix distances;  // n x n, symmetric, zero diagonal
  std::vector<std::string> expedition_ids;
  bool degenerate_normalization = false;  // all-zero matrix hit normalize_unit
};

inline DistanceMatrix pairwise_distances(const std::vector<IntraExpeditionGraph>& graphs) {
  if (graphs.size() < 2)
    throw AnalysisError("pairwise_distances: need at least 2 graphs");
  std::size_t n = graphs.size();
  DistanceMatrix out;
  out.distances = Matrix::square(n);
  out.expedition_ids.reserve(n);
  for (const auto& g : graphs) out.expedition_ids.push_back(g.expedition_id);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = edit_distance(graphs[i], graphs[j]);
      out.distances(i, j) = d;
      out.distances(j, i) = d;
    }
  return out;
}

// Scales distances so the max entry is 1. An all-zero matrix is returned
// unchanged with the degenerate flag set.
inline DistanceMatrix normalize_unit(const DistanceMatrix& d) {
  DistanceMatrix out = d;
  double max = d.distances.max_entry();
  if (max <= 0.0) {
    out.degenerate_normalization = true;
    return out;
  }
  out.distances *= 1.0 / max;
  return out;
}

// Similarity layer from normalized distances: S_ij = 1 - D_ij off-diagonal,
// zero diagonal (no self-loops in layers). Set use_distance to connect by
// the normalized distance itself instead of its complement.
inline Matrix to_similarity(const DistanceMatrix& normalized, bool use_distance = false) {
  std::size_t n = normalized.distances.rows();
  Matrix s = Matrix::square(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double d = normalized.distances(i, j);
      s(i, j) = use_distance ? d : 1.0 - d;
    }
  return s;
}

}  // namespace ascent
