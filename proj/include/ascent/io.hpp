// io.hpp -- JSON and CSV serialization of module outputs
#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ascent/centrality.hpp"
#include "ascent/community.hpp"
#include "ascent/csv.hpp"
#include "ascent/graphdist.hpp"
#include "ascent/multiplex.hpp"
#include "ascent/partners.hpp"
#include "ascent/records.hpp"
#include "ascent/stats.hpp"

namespace ascent {

inline constexpr int kSchemaVersion = 1;

// Shortest round-trip decimal form; keeps repeated runs byte-identical.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
  std::size_t rows = j.size();
  std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
  return m;
}

// --- intra-expedition graphs -------------------------------------------------

inline nlohmann::json intra_graph_to_json(const IntraExpeditionGraph& g) {
  nlohmann::json j;
  j["expedition_id"] = g.expedition_id;
  j["m"] = g.climber_count;
  j["normalized"] = g.normalized;
  nlohmann::json order = nlohmann::json::array();
  for (const char* name : kFeatureNames) order.push_back(name);
  j["feature_order"] = std::move(order);
  nlohmann::json flat = nlohmann::json::array();  // row-major
  for (std::size_t i = 0; i < g.weights.rows(); ++i)
    for (std::size_t k = 0; k < g.weights.cols(); ++k) flat.push_back(g.weights(i, k));
  j["matrix"] = std::move(flat);
  return j;
}

inline nlohmann::json intra_graphs_to_json(const std::vector<IntraExpeditionGraph>& graphs) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : graphs) arr.push_back(intra_graph_to_json(g));
  j["graphs"] = std::move(arr);
  return j;
}

// --- group centrality (fig2) -------------------------------------------------

inline std::string group_centrality_to_csv(const GroupCentralityTable& table) {
  std::ostringstream out;
  write_csv_row(out, {"feature", "mean_success", "stderr_success", "mean_nosummit",
                      "stderr_nosummit"});
  for (const auto& row : table.sorted_by_difference())
    write_csv_row(out, {row.feature, format_double(row.mean_success),
                        format_double(row.stderr_success), format_double(row.mean_nosummit),
                        format_double(row.stderr_nosummit)});
  return out.str();
}

inline nlohmann::json group_centrality_to_json(const GroupCentralityTable& table) {
  nlohmann::json j;
  j["n_success_graphs"] = table.n_success;
  j["n_nosummit_graphs"] = table.n_nosummit;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.sorted_by_difference()) {
    rows.push_back({{"feature", row.feature},
                    {"mean_success", row.mean_success},
                    {"stderr_success", row.stderr_success},
                    {"mean_nosummit", row.mean_nosummit},
                    {"stderr_nosummit", row.stderr_nosummit},
                    {"difference", row.difference()}});
  }
  j["rows"] = std::move(rows);
  return j;
}

// --- distance matrix ----------------------------------------------------------

inline std::string distance_matrix_to_csv(const DistanceMatrix& d) {
  std::ostringstream out;
  std::vector<std::string> header = {"expedition_id"};
  header.insert(header.end(), d.expedition_ids.begin(), d.expedition_ids.end());
  write_csv_row(out, header);
  for (std::size_t i = 0; i < d.distances.rows(); ++i) {
    std::vector<std::string> row = {d.expedition_ids[i]};
    for (std::size_t j = 0; j < d.distances.cols(); ++j)
      row.push_back(format_double(d.distances(i, j)));
    write_csv_row(out, row);
  }
  return out.str();
}

// --- multiplex ------------------------------------------------------------------

inline nlohmann::json multiplex_to_json(const MultiplexGraph& e) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["expedition_ids"] = e.expedition_ids;
  nlohmann::json means;
  for (LayerKind kind : kLayerReportOrder) {
    auto mu = e.layer_means[layer_index(kind)];
    if (mu) means[to_string(kind)] = *mu;
    else means[to_string(kind)] = nullptr;
  }
  j["layer_means"] = std::move(means);
  nlohmann::json layers;
  for (LayerKind kind : kLayerReportOrder) {
    const Matrix& layer = e.layer(kind);
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t i = 0; i < layer.rows(); ++i)
      for (std::size_t k = i + 1; k < layer.cols(); ++k)
        if (layer(i, k) != 0.0)
          edges.push_back(nlohmann::json::array({i, k, layer(i, k)}));
    layers[to_string(kind)] = std::move(edges);
  }
  j["layers"] = std::move(layers);
  j["ratio_undefined_ids"] = e.ratio_undefined_ids;
  return j;
}

// --- correlations (fig4) ---------------------------------------------------------

inline std::string correlations_to_csv(const CorrelationReport& report) {
  std::ostringstream out;
  write_csv_row(out, {"layer", "r", "p", "n"});
  for (const auto& layer : report.layers)
    write_csv_row(out, {to_string(layer.kind), format_double(layer.r),
                        format_double(layer.p), std::to_string(layer.n)});
  return out.str();
}

inline nlohmann::json correlations_to_json(const CorrelationReport& report) {
  nlohmann::json j;
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : report.layers)
    layers.push_back({{"layer", to_string(layer.kind)},
                      {"r", layer.r},
                      {"p", layer.p},
                      {"n", layer.n}});
  j["layers"] = std::move(layers);
  j["fit_residual"] = report.projection.fit_residual;
  j["regression_rank"] = report.projection.rank;
  j["rank_deficient"] = report.projection.rank_deficient;
  return j;
}

inline nlohmann::json coefficients_to_json(const RegressionProjection& proj) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["include_diagonal"] = proj.include_diagonal;
  j["coefficients"] = proj.coefficients;
  j["intercept"] = proj.intercept;
  j["fit_residual"] = proj.fit_residual;
  j["rank"] = proj.rank;
  j["rank_deficient"] = proj.rank_deficient;
  j["underdetermined"] = proj.underdetermined;
  return j;
}

// --- communities (fig5) -----------------------------------------------------------

inline std::string partition_to_csv(const Partition& partition,
                                    const std::vector<std::string>& ids) {
  std::ostringstream out;
  write_csv_row(out, {"expedition_id", "community"});
  for (std::size_t i = 0; i < ids.size(); ++i)
    write_csv_row(out, {ids[i], std::to_string(partition.labels[i])});
  return out.str();
}

inline std::string profiles_to_csv(const std::vector<CommunityProfile>& profiles) {
  std::ostringstream out;
  std::vector<std::string> header = {"community",       "size",
                                     "success_rate",    "days_to_summit",
                                     "camps_above_bc",  "member_hired_ratio",
                                     "expedition_size"};
  for (const char* name : kFeatureNames) header.push_back(std::string("centrality_") + name);
  write_csv_row(out, header);
  for (const auto& prof : profiles) {
    std::vector<std::string> row = {std::to_string(prof.label), std::to_string(prof.size),
                                    format_double(prof.mean_success_rate)};
    for (const auto& factor : prof.factor_means)
      row.push_back(factor ? format_double(*factor) : "");
    for (double c : prof.mean_centrality) row.push_back(format_double(c));
    write_csv_row(out, row);
  }
  return out.str();
}

inline nlohmann::json profiles_to_json(const std::vector<CommunityProfile>& profiles) {
  nlohmann::json arr = nlohmann::json::array();
  static const std::array<const char*, 4> factor_names = {
      "days_to_summit", "camps_above_bc", "member_hired_ratio", "expedition_size"};
  for (const auto& prof : profiles) {
    nlohmann::json j;
    j["community"] = prof.label;
    j["size"] = prof.size;
    j["success_rate"] = prof.mean_success_rate;
    for (std::size_t f = 0; f < factor_names.size(); ++f) {
      if (prof.factor_means[f]) j[factor_names[f]] = *prof.factor_means[f];
      else j[factor_names[f]] = nullptr;
    }
    nlohmann::json cent;
    for (std::size_t k = 0; k < prof.mean_centrality.size(); ++k)
      cent[kFeatureNames[k]] = prof.mean_centrality[k];
    j["mean_centrality"] = std::move(cent);
    arr.push_back(std::move(j));
  }
  return arr;
}

// --- partner effects (fig1) ---------------------------------------------------------

inline std::string partner_effect_to_csv(const PartnerEffectTable& table) {
  std::ostringstream out;
  write_csv_row(out, {"bin", "category", "ratio", "n_climbers"});
  for (const auto& bin : table.bins) {
    for (FailureCause cat : kPartnerCategories) {
      auto it = bin.cells.find(cat);
      const PartnerEffectCell* cell = it == bin.cells.end() ? nullptr : &it->second;
      write_csv_row(out, {bin.label(), to_string(cat),
                          cell && cell->ratio ? format_double(*cell->ratio) : "",
                          std::to_string(cell ? cell->n_climbers : 0)});
    }
  }
  return out.str();
}

inline nlohmann::json partner_effect_to_json(const PartnerEffectTable& table) {
  nlohmann::json j;
  j["pooled"] = table.pooled;
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& bin : table.bins) {
    nlohmann::json jb;
    jb["bin"] = bin.label();
    jb["climbs_min"] = bin.climbs_min;
    jb["climbs_max"] = bin.climbs_max;
    jb["n_climbers"] = bin.n_climbers;
    nlohmann::json cells;
    for (FailureCause cat : kPartnerCategories) {
      auto it = bin.cells.find(cat);
      nlohmann::json cell;
      if (it != bin.cells.end() && it->second.ratio) {
        cell["ratio"] = *it->second.ratio;
        cell["n_climbers"] = it->second.n_climbers;
      } else {
        cell["ratio"] = nullptr;
        cell["n_climbers"] = it != bin.cells.end() ? it->second.n_climbers : 0;
      }
      cells[to_string(cat)] = std::move(cell);
    }
    jb["cells"] = std::move(cells);
    bins.push_back(std::move(jb));
  }
  j["bins"] = std::move(bins);
  return j;
}

// --- dataset cache --------------------------------------------------------------------

inline nlohmann::json dataset_to_json(const Dataset& ds) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["source"] = ds.source;

  nlohmann::json exps = nlohmann::json::array();
  for (const auto& e : ds.expeditions) {
    exps.push_back({{"exp_id", e.expedition_id},
                    {"peak_id", e.peak_id},
                    {"peak_height_m", e.peak_height},
                    {"year", e.year},
                    {"days_to_summit", e.days_to_summit},
                    {"camps_above_bc", e.camps_above_bc},
                    {"n_members", e.n_members},
                    {"n_hired", e.n_hired},
                    {"any_death", e.any_death}});
  }
  j["expeditions"] = std::move(exps);

  nlohmann::json climbers = nlohmann::json::array();
  for (const auto& c : ds.climbers) {
    nlohmann::json jc = {{"climber_id", c.climber_id},
                         {"exp_id", c.expedition_id},
                         {"sex", c.sex == Sex::Male ? "M" : (c.sex == Sex::Female ? "F" : "U")},
                         {"nationality", c.nationality},
                         {"o2_ascent", c.o2_ascent},
                         {"o2_descent", c.o2_descent},
                         {"hired", c.hired},
                         {"summited", c.summited},
                         {"termination_code", c.termination_code},
                         {"missing_fields", c.missing_fields}};
    if (c.age) jc["age"] = *c.age;
    else jc["age"] = nullptr;
    climbers.push_back(std::move(jc));
  }
  j["climbers"] = std::move(climbers);

  nlohmann::json code_map;
  {
    std::vector<std::string> keys;
    for (const auto& [code, cause] : ds.code_map) keys.push_back(code);
    std::sort(keys.begin(), keys.end());
    for (const auto& key : keys) code_map[key] = to_string(ds.code_map.at(key));
  }
  j["code_map"] = std::move(code_map);

  nlohmann::json log = nlohmann::json::array();
  for (const auto& entry : ds.filter_log)
    log.push_back({{"kind", entry.kind}, {"id", entry.id}, {"reason", entry.reason}});
  j["filter_log"] = std::move(log);

  nlohmann::json diags = nlohmann::json::array();
  for (const auto& d : ds.diagnostics)
    diags.push_back({{"source", d.source}, {"row", d.row}, {"id", d.id},
                     {"message", d.message}});
  j["diagnostics"] = std::move(diags);
  return j;
}

inline Dataset dataset_from_json(const nlohmann::json& j) {
  if (j.value("schema_version", 0) != kSchemaVersion)
    throw InputError("dataset cache: unsupported schema_version");

  std::vector<ExpeditionRecord> exps;
  for (const auto& je : j.at("expeditions")) {
    ExpeditionRecord e;
    e.expedition_id = je.at("exp_id").get<std::string>();
    e.peak_id = je.at("peak_id").get<std::string>();
    e.peak_height = je.at("peak_height_m").get<double>();
    e.year = je.at("year").get<int>();
    e.days_to_summit = je.at("days_to_summit").get<double>();
    e.camps_above_bc = je.at("camps_above_bc").get<int>();
    e.n_members = je.at("n_members").get<int>();
    e.n_hired = je.at("n_hired").get<int>();
    e.any_death = je.at("any_death").get<bool>();
    exps.push_back(std::move(e));
  }

  std::vector<ClimberRecord> climbers;
  for (const auto& jc : j.at("climbers")) {
    ClimberRecord c;
    c.climber_id = jc.at("climber_id").get<std::string>();
    c.expedition_id = jc.at("exp_id").get<std::string>();
    if (!jc.at("age").is_null()) c.age = jc.at("age").get<int>();
    std::string sex = jc.at("sex").get<std::string>();
    c.sex = sex == "M" ? Sex::Male : (sex == "F" ? Sex::Female : Sex::Unknown);
    c.nationality = jc.at("nationality").get<std::string>();
    c.o2_ascent = jc.at("o2_ascent").get<bool>();
    c.o2_descent = jc.at("o2_descent").get<bool>();
    c.hired = jc.at("hired").get<bool>();
    c.summited = jc.at("summited").get<bool>();
    c.termination_code = jc.at("termination_code").get<std::string>();
    c.missing_fields = jc.value("missing_fields", false);
    climbers.push_back(std::move(c));
  }

  CodeMap code_map;
  for (const auto& [code, cause] : j.at("code_map").items()) {
    auto parsed = failure_cause_from_string(cause.get<std::string>());
    if (!parsed) throw InputError("dataset cache: unknown cause for code " + code);
    code_map.emplace(code, *parsed);
  }

  Dataset ds = link_and_validate(std::move(exps), std::move(climbers), std::move(code_map),
                                 j.value("source", std::string{}));
  ds.filter_log.clear();
  for (const auto& entry : j.at("filter_log"))
    ds.filter_log.push_back({entry.at("kind").get<std::string>(),
                             entry.at("id").get<std::string>(),
                             entry.at("reason").get<std::string>()});
  ds.diagnostics.clear();
  for (const auto& d : j.at("diagnostics"))
    ds.diagnostics.push_back({d.at("source").get<std::string>(), d.at("row").get<std::size_t>(),
                              d.at("id").get<std::string>(), d.at("message").get<std::string>()});
  return ds;
}

inline std::string diagnostics_to_csv(const std::vector<Diagnostic>& diags) {
  std::ostringstream out;
  write_csv_row(out, {"source", "row", "id", "message"});
  for (const auto& d : diags)
    write_csv_row(out, {d.source, std::to_string(d.row), d.id, d.message});
  return out.str();
}

}  // namespace ascent
