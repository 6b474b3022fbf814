// pipeline.hpp -- run configuration, end-to-end orchestration and the
// published-value comparison mode
#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "ascent/centrality.hpp"
#include "ascent/community.hpp"
#include "ascent/io.hpp"
#include "ascent/multiplex.hpp"
#include "ascent/partners.hpp"
#include "ascent/records.hpp"
#include "ascent/stats.hpp"

namespace ascent {

// Published reference values from the original Himalayan Database analysis,
// in layer reporting order (days, camps, ratio, size, feature graph).
inline constexpr std::array<double, kLayerCount> kPublishedLayerCorrelations = {
    -0.45, -0.36, -0.12, 0.57, 0.84};
inline constexpr std::array<double, kLayerCount> kPublishedLayerPValues = {
    5.5e-10, 1.15e-6, 0.1, 5.7e-16, 8.9e-47};
inline constexpr std::array<double, 3> kPublishedCommunitySuccessRates = {0.28, 0.32,
                                                                          0.68};

struct RunConfig {
  std::string expeditions_csv;
  std::string members_csv;
  std::string code_map_csv;  // empty: use the shipped default mapping
  std::string output_dir = "out";

  std::string peak_id = "EVEREST";  // empty: no peak filter
  int min_size = 12;
  bool exclude_death = true;
  std::optional<double> median_age_override;

  std::array<double, kLayerCount> layer_weights = kUniformLayerWeights;
  std::uint64_t louvain_seed = 42;
  double louvain_resolution = 1.0;

  int partner_min_climbs = 15;
  int partner_bin_width = 5;
  int partner_max_climbs = 40;

  // Documented toggles; defaults are the library's resolved conventions.
  bool age_above_median = false;       // bit 0 encodes age >= median
  bool layer_use_distance = false;     // feature layer carries distance, not 1-distance
  bool regression_offdiag_only = false;
  bool include_hired_rows = true;      // hired personnel appear in bipartite graphs
  bool include_hired_in_success = true;
  bool pooled_partner_ratios = false;
  bool partners_on_filtered = false;   // run partner analysis after the peak/size filter
  bool centrality_of_mean_graph = false;
  bool real_data = false;              // inputs are a real Himalayan Database export
};

namespace detail {

inline bool parse_bool(const std::string& raw, const std::string& key) {
  std::string v = to_lower(trim(raw));
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InputError("config: key '" + key + "' expects a boolean, got '" + raw + "'");
}

inline double parse_num(const std::string& raw, const std::string& key) {
  auto v = detail::parse_double(raw);
  if (!v) throw InputError("config: key '" + key + "' expects a number, got '" + raw + "'");
  return *v;
}

}  // namespace detail

// Applies one key=value setting. Unknown keys are errors so that typos in
// checked-in configs fail loudly.
inline void apply_config_entry(RunConfig& cfg, const std::string& key,
                               const std::string& value) {
  if (key == "expeditions_csv") cfg.expeditions_csv = value;
  else if (key == "members_csv") cfg.members_csv = value;
  else if (key == "code_map_csv") cfg.code_map_csv = value;
  else if (key == "output_dir") cfg.output_dir = value;
  else if (key == "peak_id") cfg.peak_id = value;
  else if (key == "min_size") cfg.min_size = static_cast<int>(detail::parse_num(value, key));
  else if (key == "exclude_death") cfg.exclude_death = detail::parse_bool(value, key);
  else if (key == "median_age") {
    if (trim(value).empty()) cfg.median_age_override.reset();
    else cfg.median_age_override = detail::parse_num(value, key);
  } else if (key == "layer_weights") {
    auto parts = split(value, ',');
    if (parts.size() != kLayerCount)
      throw InputError("config: layer_weights expects 5 comma-separated values");
    for (std::size_t i = 0; i < kLayerCount; ++i)
      cfg.layer_weights[i] = detail::parse_num(parts[i], key);
  } else if (key == "louvain_seed")
    cfg.louvain_seed = static_cast<std::uint64_t>(detail::parse_num(value, key));
  else if (key == "louvain_resolution") cfg.louvain_resolution = detail::parse_num(value, key);
  else if (key == "partner_min_climbs")
    cfg.partner_min_climbs = static_cast<int>(detail::parse_num(value, key));
  else if (key == "partner_bin_width")
    cfg.partner_bin_width = static_cast<int>(detail::parse_num(value, key));
  else if (key == "partner_max_climbs")
    cfg.partner_max_climbs = static_cast<int>(detail::parse_num(value, key));
  else if (key == "age_above_median") cfg.age_above_median = detail::parse_bool(value, key);
  else if (key == "layer_use_distance")
    cfg.layer_use_distance = detail::parse_bool(value, key);
  else if (key == "regression_offdiag_only")
    cfg.regression_offdiag_only = detail::parse_bool(value, key);
  else if (key == "include_hired_rows")
    cfg.include_hired_rows = detail::parse_bool(value, key);
  else if (key == "include_hired_in_success")
    cfg.include_hired_in_success = detail::parse_bool(value, key);
  else if (key == "pooled_partner_ratios")
    cfg.pooled_partner_ratios = detail::parse_bool(value, key);
  else if (key == "partners_on_filtered")
    cfg.partners_on_filtered = detail::parse_bool(value, key);
  else if (key == "centrality_of_mean_graph")
    cfg.centrality_of_mean_graph = detail::parse_bool(value, key);
  else if (key == "real_data") cfg.real_data = detail::parse_bool(value, key);
  else throw InputError("config: unknown key '" + key + "'");
}

// Flat key=value file; '#' starts a comment, blank lines ignored.
inline RunConfig parse_run_config(std::istream& in, RunConfig base = {}) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw InputError("config: line " + std::to_string(line_no) +
                       " is not a key=value entry");
    apply_config_entry(base, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return base;
}

inline RunConfig load_run_config(const std::string& path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open '" + path + "'");
  return parse_run_config(in, std::move(base));
}

// Canonical serialization, used for the provenance hash and written next to
// the report for reproduction.
inline std::string canonical_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "age_above_median=" << (cfg.age_above_median ? "true" : "false") << '\n'
      << "centrality_of_mean_graph=" << (cfg.centrality_of_mean_graph ? "true" : "false")
      << '\n'
      << "code_map_csv=" << cfg.code_map_csv << '\n'
      << "exclude_death=" << (cfg.exclude_death ? "true" : "false") << '\n'
      << "expeditions_csv=" << cfg.expeditions_csv << '\n'
      << "include_hired_in_success=" << (cfg.include_hired_in_success ? "true" : "false")
      << '\n'
      << "include_hired_rows=" << (cfg.include_hired_rows ? "true" : "false") << '\n'
      << "layer_use_distance=" << (cfg.layer_use_distance ? "true" : "false") << '\n'
      << "layer_weights=";
  for (std::size_t i = 0; i < kLayerCount; ++i)
    out << (i ? "," : "") << format_double(cfg.layer_weights[i]);
  out << '\n'
      << "louvain_resolution=" << format_double(cfg.louvain_resolution) << '\n'
      << "louvain_seed=" << cfg.louvain_seed << '\n'
      << "median_age="
      << (cfg.median_age_override ? format_double(*cfg.median_age_override) : "") << '\n'
      << "members_csv=" << cfg.members_csv << '\n'
      << "min_size=" << cfg.min_size << '\n'
      << "partner_bin_width=" << cfg.partner_bin_width << '\n'
      << "partner_max_climbs=" << cfg.partner_max_climbs << '\n'
      << "partner_min_climbs=" << cfg.partner_min_climbs << '\n'
      << "partners_on_filtered=" << (cfg.partners_on_filtered ? "true" : "false") << '\n'
      << "peak_id=" << cfg.peak_id << '\n'
      << "pooled_partner_ratios=" << (cfg.pooled_partner_ratios ? "true" : "false") << '\n'
      << "real_data=" << (cfg.real_data ? "true" : "false") << '\n'
      << "regression_offdiag_only=" << (cfg.regression_offdiag_only ? "true" : "false")
      << '\n';
  return out.str();
}

struct AnalysisReport {
  std::string tool_version = kVersion;
  std::string config_hash;
  std::string dataset_hash;
  std::uint64_t louvain_seed = 0;
  double median_age_used = 0.0;
  bool real_data = false;

  std::size_t n_expeditions_ingested = 0;
  std::size_t n_climbers_ingested = 0;
  std::size_t n_expeditions_analyzed = 0;

  PartnerEffectTable partner_effects;
  GroupCentralityTable group_centrality;
  IntraExpeditionGraph success_aggregate;
  IntraExpeditionGraph nosummit_aggregate;
  CorrelationReport correlations;
  Partition partition;
  std::vector<CommunityProfile> profiles;
  std::vector<std::string> analyzed_expedition_ids;
  std::vector<std::string> notes;
};

namespace detail {

inline std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(std::string(what) + ": cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Keeps only expeditions with at least one binarizable member so that graph
// stages stay aligned; drops are logged.
inline Dataset keep_analyzable(const Dataset& ds, bool include_hired,
                               std::vector<std::string>* notes) {
  std::vector<std::string> drop;
  for (const auto& exp : ds.expeditions) {
    bool any = false;
    for (std::size_t row : exp.member_rows) {
      const auto& c = ds.climbers[row];
      if (!include_hired && c.hired) continue;
      if (c.age) { any = true; break; }
    }
    if (!any) drop.push_back(exp.expedition_id);
  }
  if (drop.empty()) return ds;

  // Rebuild without the dropped expeditions. Climber rows are copied, not
  // re-linked, so the experience enrichment from the full dataset survives.
  std::unordered_set<std::string> dropped(drop.begin(), drop.end());
  Dataset out;
  out.code_map = ds.code_map;
  out.source = ds.source;
  out.filter_log = ds.filter_log;
  out.diagnostics = ds.diagnostics;
  for (const auto& exp : ds.expeditions) {
    if (dropped.count(exp.expedition_id)) continue;
    ExpeditionRecord copy = exp;
    copy.members.clear();
    copy.member_rows.clear();
    out.expedition_index.emplace(copy.expedition_id, out.expeditions.size());
    out.expeditions.push_back(std::move(copy));
  }
  for (const auto& c : ds.climbers) {
    auto it = out.expedition_index.find(c.expedition_id);
    if (it == out.expedition_index.end()) continue;
    std::size_t row = out.climbers.size();
    out.expeditions[it->second].members.push_back(c.climber_id);
    out.expeditions[it->second].member_rows.push_back(row);
    out.climbs_of[c.climber_id].push_back(row);
    out.climbers.push_back(c);
  }
  for (const auto& id : drop) {
    out.filter_log.push_back({"expedition", id, "no binarizable members"});
    if (notes)
      notes->push_back("expedition " + id + " excluded from graph analysis: no "
                       "binarizable members");
  }
  return out;
}

}  // namespace detail

struct PipelineData {
  Dataset linked;    // full linked dataset (partner analysis scope)
  Dataset analyzed;  // filtered + analyzable (graph analysis scope)
  double median_age = 40.0;
  std::vector<IntraExpeditionGraph> intra_raw;
  std::vector<IntraExpeditionGraph> intra_normalized;
  std::vector<double> success_rates;
  std::string dataset_hash;
  std::vector<std::string> notes;
};

// Ingest + filter + per-expedition graphs; shared by run() and the staged
// CLI subcommands.
inline PipelineData prepare(const RunConfig& cfg) {
  PipelineData data;
  std::string exp_bytes = detail::read_file(cfg.expeditions_csv, "expeditions");
  std::string mem_bytes = detail::read_file(cfg.members_csv, "members");
  std::uint64_t hash = fnv1a(exp_bytes);
  hash = fnv1a(mem_bytes, hash);

  std::istringstream exp_in(exp_bytes);
  std::istringstream mem_in(mem_bytes);
  auto exps = parse_expeditions(exp_in);
  auto mems = parse_members(mem_in);

  CodeMap code_map = default_code_map();
  if (!cfg.code_map_csv.empty()) {
    std::string code_bytes = detail::read_file(cfg.code_map_csv, "code_map");
    hash = fnv1a(code_bytes, hash);
    std::istringstream code_in(code_bytes);
    auto parsed = parse_code_map(code_in);
    code_map.clear();
    for (const auto& [code, cause] : parsed.records) code_map[code] = cause;
  }
  data.dataset_hash = hex64(hash);

  data.linked = link_and_validate(std::move(exps.records), std::move(mems.records),
                                  std::move(code_map), cfg.expeditions_csv);
  for (auto& d : exps.diagnostics) data.linked.diagnostics.push_back(std::move(d));
  for (auto& d : mems.diagnostics) data.linked.diagnostics.push_back(std::move(d));

  FilterCriteria criteria;
  if (!cfg.peak_id.empty()) criteria.peak_id = cfg.peak_id;
  criteria.min_size = cfg.min_size;
  criteria.exclude_death = cfg.exclude_death;
  Dataset filtered = filter_expeditions(data.linked, criteria);
  data.analyzed = detail::keep_analyzable(filtered, cfg.include_hired_rows, &data.notes);
  if (data.analyzed.expeditions.empty())
    throw AnalysisError("no expeditions remain after filtering (peak_id=" +
                        (criteria.peak_id ? *criteria.peak_id : std::string("any")) +
                        ", min_size=" + std::to_string(criteria.min_size) + ")");

  data.median_age = cfg.median_age_override ? *cfg.median_age_override
                                            : median_age(data.analyzed);

  BipartiteBuildOptions opt;
  opt.binarize.age_above_median = cfg.age_above_median;
  opt.include_hired = cfg.include_hired_rows;
  for (const auto& exp : data.analyzed.expeditions) {
    BipartiteGraph p =
        build_bipartite(exp, data.analyzed, data.median_age, opt,
                        &data.analyzed.diagnostics);
    IntraExpeditionGraph raw = project(p);
    data.intra_raw.push_back(raw);
    data.intra_normalized.push_back(normalize_by_size(raw));
    data.success_rates.push_back(
        success_rate(exp, data.analyzed, cfg.include_hired_in_success));
  }
  return data;
}

inline nlohmann::json report_to_json(const AnalysisReport& report) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = report.tool_version;
  j["provenance"] = {{"config_hash", report.config_hash},
                     {"dataset_hash", report.dataset_hash},
                     {"louvain_seed", report.louvain_seed},
                     {"median_age_used", report.median_age_used},
                     {"real_data", report.real_data},
                     {"n_expeditions_ingested", report.n_expeditions_ingested},
                     {"n_climbers_ingested", report.n_climbers_ingested},
                     {"n_expeditions_analyzed", report.n_expeditions_analyzed}};
  j["partner_effects"] = partner_effect_to_json(report.partner_effects);
  j["group_centrality"] = group_centrality_to_json(report.group_centrality);
  j["group_graphs"] = {{"success", intra_graph_to_json(report.success_aggregate)},
                       {"nosummit", intra_graph_to_json(report.nosummit_aggregate)}};
  j["correlations"] = correlations_to_json(report.correlations);
  j["coefficients"] = coefficients_to_json(report.correlations.projection);
  nlohmann::json partition = nlohmann::json::array();
  for (std::size_t i = 0; i < report.analyzed_expedition_ids.size(); ++i)
    partition.push_back({{"expedition_id", report.analyzed_expedition_ids[i]},
                         {"community", report.partition.labels[i]}});
  j["partition"] = {{"assignment", std::move(partition)},
                    {"modularity", report.partition.modularity},
                    {"seed", report.partition.seed},
                    {"n_communities", report.partition.community_count()}};
  j["community_profiles"] = profiles_to_json(report.profiles);
  j["notes"] = report.notes;
  return j;
}

inline std::string summary_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << "ascent " << report.tool_version << " analysis summary\n"
      << "=========================================\n"
      << "dataset hash     " << report.dataset_hash << "\n"
      << "config hash      " << report.config_hash << "\n"
      << "expeditions      " << report.n_expeditions_ingested << " ingested, "
      << report.n_expeditions_analyzed << " analyzed\n"
      << "climbers         " << report.n_climbers_ingested << "\n"
      << "median age used  " << format_double(report.median_age_used) << "\n\n";

  out << "layer-success correlations (Pearson r, p, n):\n";
  for (const auto& layer : report.correlations.layers)
    out << "  " << to_string(layer.kind) << ": r=" << format_double(layer.r)
        << " p=" << format_double(layer.p) << " n=" << layer.n << "\n";

  out << "\ncommunities (by ascending success rate): " << report.profiles.size() << "\n";
  for (const auto& prof : report.profiles) {
    out << "  community " << prof.label << ": size=" << prof.size
        << " success=" << format_double(prof.mean_success_rate);
    static const std::array<const char*, 4> names = {"days", "camps", "ratio", "size"};
    for (std::size_t f = 0; f < names.size(); ++f)
      if (prof.factor_means[f])
        out << " " << names[f] << "=" << format_double(*prof.factor_means[f]);
    out << "\n";
  }
  out << "modularity Q = " << format_double(report.partition.modularity)
      << " (seed " << report.partition.seed << ")\n";

  out << "\ngroup centrality (ascending success-minus-nosummit difference):\n";
  for (const auto& row : report.group_centrality.sorted_by_difference())
    out << "  " << row.feature << ": success=" << format_double(row.mean_success)
        << " nosummit=" << format_double(row.mean_nosummit) << "\n";

  out << "\npartner-effect ratios (repeat-partner rate / individual average):\n";
  for (const auto& bin : report.partner_effects.bins) {
    out << "  climbs " << bin.label() << " (n=" << bin.n_climbers << "):";
    for (FailureCause cat : kPartnerCategories) {
      auto it = bin.cells.find(cat);
      if (it != bin.cells.end() && it->second.ratio)
        out << " " << to_string(cat) << "=" << format_double(*it->second.ratio);
    }
    out << "\n";
  }
  for (const auto& note : report.notes) out << "note: " << note << "\n";
  return out.str();
}

// Full pipeline: ingest -> partners -> filter -> feature graphs -> outcome
// group centralities -> multiplex -> correlations -> aggregate -> Louvain ->
// profiles, with every artifact written under cfg.output_dir.
inline AnalysisReport run(const RunConfig& cfg) {
  PipelineData data = prepare(cfg);

  AnalysisReport report;
  report.notes = data.notes;
  report.config_hash = hex64(fnv1a(canonical_config(cfg)));
  report.dataset_hash = data.dataset_hash;
  report.louvain_seed = cfg.louvain_seed;
  report.median_age_used = data.median_age;
  report.real_data = cfg.real_data;
  report.n_expeditions_ingested = data.linked.expeditions.size();
  report.n_climbers_ingested = data.linked.climbers.size();
  report.n_expeditions_analyzed = data.analyzed.expeditions.size();
  report.analyzed_expedition_ids.reserve(data.analyzed.expeditions.size());
  for (const auto& exp : data.analyzed.expeditions)
    report.analyzed_expedition_ids.push_back(exp.expedition_id);

  PartnerEffectOptions partner_opt;
  partner_opt.min_climbs = cfg.partner_min_climbs;
  partner_opt.bin_width = cfg.partner_bin_width;
  partner_opt.max_climbs = cfg.partner_max_climbs;
  partner_opt.pooled = cfg.pooled_partner_ratios;
  report.partner_effects =
      partner_effect(cfg.partners_on_filtered ? data.analyzed : data.linked, partner_opt);

  BipartiteBuildOptions opt;
  opt.binarize.age_above_median = cfg.age_above_median;
  opt.include_hired = cfg.include_hired_rows;
  OutcomeGraphs groups = split_by_outcome(data.analyzed, data.median_age, opt, nullptr);
  report.group_centrality = group_centrality(groups.success, groups.nosummit);
  report.success_aggregate = aggregate_group(groups.success);
  report.success_aggregate.expedition_id = "success_group";
  report.nosummit_aggregate = aggregate_group(groups.nosummit);
  report.nosummit_aggregate.expedition_id = "nosummit_group";

  MultiplexOptions multiplex_opt;
  multiplex_opt.similarity_layer_uses_distance = cfg.layer_use_distance;
  MultiplexGraph multiplex = build_multiplex(data.analyzed, data.intra_normalized,
                                             multiplex_opt);
  for (const auto& id : multiplex.ratio_undefined_ids)
    report.notes.push_back("expedition " + id +
                           ": member/hired ratio undefined (no hired personnel); "
                           "isolated in that layer");

  report.correlations = layer_success_correlations(
      data.analyzed, data.intra_normalized, data.success_rates,
      !cfg.regression_offdiag_only);

  SimilarityGraph similarity = aggregate(multiplex, cfg.layer_weights);
  report.partition = louvain(similarity.weights, cfg.louvain_seed, cfg.louvain_resolution,
                             &similarity.expedition_ids);

  CommunityProfileOptions prof_opt;
  prof_opt.centrality_of_mean_graph = cfg.centrality_of_mean_graph;
  report.profiles = community_profiles(report.partition, data.analyzed,
                                       data.intra_normalized, data.success_rates, prof_opt);

  // Artifacts.
  namespace fs = std::filesystem;
  fs::path out_dir(cfg.output_dir);
  fs::create_directories(out_dir);
  auto write = [&](const char* name, const std::string& content) {
    std::ofstream out(out_dir / name, std::ios::binary);
    if (!out) throw InputError("cannot write output file " + (out_dir / name).string());
    out << content;
  };

  write("fig1_partner_effect.csv", partner_effect_to_csv(report.partner_effects));
  write("fig2_centrality.csv", group_centrality_to_csv(report.group_centrality));
  write("fig2_group_graphs.json",
        nlohmann::json({{"schema_version", kSchemaVersion},
                        {"success", intra_graph_to_json(report.success_aggregate)},
                        {"nosummit", intra_graph_to_json(report.nosummit_aggregate)}})
                .dump(2) +
            "\n");
  write("fig4_correlations.csv", correlations_to_csv(report.correlations));
  write("fig5_profiles.csv", profiles_to_csv(report.profiles));
  write("partition.csv", partition_to_csv(report.partition, report.analyzed_expedition_ids));
  write("multiplex.json", multiplex_to_json(multiplex).dump(2) + "\n");
  write("coefficients.json",
        coefficients_to_json(report.correlations.projection).dump(2) + "\n");
  write("intra_graphs.json", intra_graphs_to_json(data.intra_normalized).dump(2) + "\n");
  write("dataset.json", dataset_to_json(data.linked).dump(2) + "\n");
  write("diagnostics.csv", diagnostics_to_csv(data.linked.diagnostics));
  write("config.txt", canonical_config(cfg));
  write("report.json", report_to_json(report).dump(2) + "\n");
  write("summary.txt", summary_text(report));
  return report;
}

// --- comparison against published values ------------------------------------------

struct ComparisonRow {
  std::string metric;
  std::optional<double> computed;
  double published = 0.0;

  std::optional<double> abs_diff() const {
    if (!computed) return std::nullopt;
    return std::fabs(*computed - published);
  }
};

struct ComparisonTable {
  bool reference_dataset = false;  // banner shown when false
  std::vector<ComparisonRow> rows;
};

// Side-by-side table of computed vs published values. Emits every published
// target; no pass/fail judgment is attached (dataset versions drift).
inline ComparisonTable compare_to_published(const AnalysisReport& report) {
  if (report.correlations.layers.empty())
    throw AnalysisError("compare_to_published: report has no correlation section");

  ComparisonTable table;
  table.reference_dataset = report.real_data;
  for (std::size_t i = 0; i < kLayerCount; ++i) {
    const auto& layer = report.correlations.layers[i];
    ComparisonRow r_row;
    r_row.metric = std::string("r(") + to_string(layer.kind) + ")";
    r_row.computed = layer.r;
    r_row.published = kPublishedLayerCorrelations[i];
    table.rows.push_back(r_row);
  }
  for (std::size_t i = 0; i < kLayerCount; ++i) {
    const auto& layer = report.correlations.layers[i];
    ComparisonRow p_row;
    p_row.metric = std::string("p(") + to_string(layer.kind) + ")";
    p_row.computed = layer.p;
    p_row.published = kPublishedLayerPValues[i];
    table.rows.push_back(p_row);
  }
  for (std::size_t i = 0; i < kPublishedCommunitySuccessRates.size(); ++i) {
    ComparisonRow row;
    row.metric = "community_success_rate_" + std::to_string(i);
    if (i < report.profiles.size()) row.computed = report.profiles[i].mean_success_rate;
    row.published = kPublishedCommunitySuccessRates[i];
    table.rows.push_back(row);
  }
  return table;
}

inline std::string comparison_to_csv(const ComparisonTable& table) {
  std::ostringstream out;
  write_csv_row(out, {"metric", "computed", "published", "abs_diff"});
  for (const auto& row : table.rows)
    write_csv_row(out, {row.metric, row.computed ? format_double(*row.computed) : "",
                        format_double(row.published),
                        row.abs_diff() ? format_double(*row.abs_diff()) : ""});
  return out.str();
}

inline std::string comparison_to_text(const ComparisonTable& table) {
  std::ostringstream out;
  if (!table.reference_dataset)
    out << "NOTE: not the reference dataset -- computed values are not expected to "
           "match the published ones.\n";
  out << "metric                          computed      published     |diff|\n";
  for (const auto& row : table.rows) {
    out << "  ";
    out.width(30);
    out.setf(std::ios::left, std::ios::adjustfield);
    out << row.metric;
    out.unsetf(std::ios::adjustfield);
    out << (row.computed ? format_double(*row.computed) : "-") << "  "
        << format_double(row.published) << "  "
        << (row.abs_diff() ? format_double(*row.abs_diff()) : "-") << "\n";
  }
  return out.str();
}

}  // namespace ascent
