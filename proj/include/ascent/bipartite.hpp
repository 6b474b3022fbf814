// bipartite.hpp -- climber-feature bipartite network and its projection to
// the intra-expedition feature graph
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ascent/matrix.hpp"
#include "ascent/records.hpp"

namespace ascent {

inline constexpr std::size_t kFeatureCount = 6;

// Frozen public feature order; bit 0 encodes youth (age strictly below the
// median) so that a high age-node centrality reads as a young group.
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "age_below_median", "male",         "o2_ascent",
    "o2_descent",       "hired_sherpa", "experience_above_8000m"};

using FeatureVector = std::array<std::uint8_t, kFeatureCount>;

struct BinarizeOptions {
  // Flip bit 0 to encode age >= median instead of age < median.
  bool age_above_median = false;
};

// Binarized climber profile. Ties at the median binarize to 0.
inline FeatureVector binarize(const ClimberRecord& climber, double median_age,
                              int experience_count, const BinarizeOptions& opt = {}) {
  if (!climber.age)
    throw AnalysisError("binarize: climber " + climber.climber_id +
                        " is missing field 'age'");
  FeatureVector v{};
  bool below = static_cast<double>(*climber.age) < median_age;
  v[0] = (opt.age_above_median ? !below : below) ? 1 : 0;
  v[1] = climber.sex == Sex::Male ? 1 : 0;
  v[2] = climber.o2_ascent ? 1 : 0;
  v[3] = climber.o2_descent ? 1 : 0;
  v[4] = climber.hired ? 1 : 0;
  v[5] = experience_count >= 1 ? 1 : 0;
  return v;
}

struct BipartiteGraph {
  std::string expedition_id;
  Matrix incidence;  // m climbers x f features, entries in {0,1}
  std::vector<std::string> climber_ids;

  std::size_t climber_count() const { return incidence.rows(); }
};

struct BipartiteBuildOptions {
  BinarizeOptions binarize;
  bool include_hired = true;  // hired personnel appear as rows of P
};

// Builds P for one expedition. Rows follow stable (climber_id, row) order;
// climbers that cannot be binarized are skipped and reported via
// `excluded`, they still count toward expedition size and success rate.
inline BipartiteGraph build_bipartite(const ExpeditionRecord& exp, const Dataset& ds,
                                      double median_age,
                                      const BipartiteBuildOptions& opt = {},
                                      std::vector<Diagnostic>* excluded = nullptr) {
  struct RowEntry {
    std::string id;
    std::size_t row;
    FeatureVector bits;
  };
  std::vector<RowEntry> entries;
  for (std::size_t row : exp.member_rows) {
    const auto& climber = ds.climbers[row];
    if (!opt.include_hired && climber.hired) continue;
    if (!climber.age) {
      if (excluded)
        excluded->push_back({"bipartite", 0, climber.climber_id,
                             "missing age; excluded from feature graph of " +
                                 exp.expedition_id});
      continue;
    }
    entries.push_back({climber.climber_id, row,
                       binarize(climber, median_age, climber.experience_above_8000,
                                opt.binarize)});
  }
  if (entries.empty())
    throw AnalysisError("build_bipartite: expedition " + exp.expedition_id +
                        " has no binarizable members");
  std::sort(entries.begin(), entries.end(), [](const RowEntry& a, const RowEntry& b) {
    return a.id != b.id ? a.id < b.id : a.row < b.row;
  });

  BipartiteGraph graph;
  graph.expedition_id = exp.expedition_id;
  graph.incidence = Matrix(entries.size(), kFeatureCount);
  graph.climber_ids.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    graph.climber_ids.push_back(entries[i].id);
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      graph.incidence(i, f) = entries[i].bits[f];
  }
  return graph;
}

// Feature co-occurrence graph of one expedition.
struct IntraExpeditionGraph {
  std::string expedition_id;
  Matrix weights;  // f x f, symmetric, nonnegative
  int climber_count = 0;
  bool normalized = false;
};

// I = P^T P: entry (a, b) counts climbers possessing both features.
inline IntraExpeditionGraph project(const BipartiteGraph& p) {
  if (p.incidence.rows() == 0)
    throw AnalysisError("project: empty bipartite graph");
  std::size_t f = p.incidence.cols();
  IntraExpeditionGraph out;
  out.expedition_id = p.expedition_id;
  out.climber_count = static_cast<int>(p.incidence.rows());
  out.weights = Matrix(f, f);
  for (std::size_t a = 0; a < f; ++a)
    for (std::size_t b = a; b < f; ++b) {
      double sum = 0.0;
      for (std::size_t i = 0; i < p.incidence.rows(); ++i)
        sum += p.incidence(i, a) * p.incidence(i, b);
      out.weights(a, b) = sum;
      out.weights(b, a) = sum;
    }
  return out;
}

// Relative edge weights: every entry divided by the climber count.
inline IntraExpeditionGraph normalize_by_size(const IntraExpeditionGraph& graph) {
  if (graph.climber_count < 1)
    throw AnalysisError("normalize_by_size: climber count must be >= 1");
  IntraExpeditionGraph out = graph;
  out.weights *= 1.0 / static_cast<double>(graph.climber_count);
  out.normalized = true;
  return out;
}

}  // namespace ascent
