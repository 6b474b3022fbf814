// ascent_cli.cpp -- command-line front end for the expedition-network
// analysis pipeline
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ascent/ascent.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
  std::string config_file;
  std::optional<std::string> expeditions, members, code_map, out_dir, peak;
  std::optional<int> min_size;
  std::optional<std::uint64_t> louvain_seed;
  std::optional<double> median_age;
  std::optional<bool> real_data;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_file, "flat key=value run config file");
  cmd->add_option("--expeditions", args.expeditions, "expeditions.csv path");
  cmd->add_option("--members", args.members, "members.csv path");
  cmd->add_option("--code-map", args.code_map, "code_map.csv path");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--peak", args.peak, "peak_id filter (empty string disables)");
  cmd->add_option("--min-size", args.min_size, "minimum expedition size");
  cmd->add_option("--louvain-seed", args.louvain_seed, "community detection seed");
  cmd->add_option("--median-age", args.median_age, "override the computed median age");
  cmd->add_flag("--real-data", [&args](std::int64_t) { args.real_data = true; },
                "inputs are a real Himalayan Database export");
}

ascent::RunConfig resolve_config(const CommonArgs& args) {
  ascent::RunConfig cfg;
  if (!args.config_file.empty()) cfg = ascent::load_run_config(args.config_file, cfg);
  if (args.expeditions) cfg.expeditions_csv = *args.expeditions;
  if (args.members) cfg.members_csv = *args.members;
  if (args.code_map) cfg.code_map_csv = *args.code_map;
  if (args.out_dir) cfg.output_dir = *args.out_dir;
  if (args.peak) cfg.peak_id = *args.peak;
  if (args.min_size) cfg.min_size = *args.min_size;
  if (args.louvain_seed) cfg.louvain_seed = *args.louvain_seed;
  if (args.median_age) cfg.median_age_override = *args.median_age;
  if (args.real_data) cfg.real_data = *args.real_data;
  if (cfg.expeditions_csv.empty() || cfg.members_csv.empty())
    throw ascent::InputError("expeditions_csv and members_csv are required "
                             "(via --config or flags)");
  return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ascent::InputError("cannot write " + path.string());
  out << content;
}

ascent::Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ascent::InputError("cannot open dataset cache '" + path + "'");
  nlohmann::json j;
  in >> j;
  return ascent::dataset_from_json(j);
}

// Stage helpers reuse prepare() so cached and direct inputs agree.
ascent::PipelineData prepare_from(const ascent::RunConfig& cfg) {
  return ascent::prepare(cfg);
}

int dispatch(const std::string& command, const CommonArgs& args,
             const std::string& synth_out, std::uint64_t synth_seed,
             const std::string& synth_config, const std::string& dataset_path,
             const std::string& report_path, const std::string& compare_out) {
  using nlohmann::json;

  if (command == "synth") {
    ascent::SynthConfig cfg = ascent::default_synth_config();
    if (!synth_config.empty()) {
      std::ifstream in(synth_config);
      if (!in) throw ascent::InputError("cannot open synth config '" + synth_config + "'");
      json j;
      in >> j;
      cfg = ascent::synth_config_from_json(j);
    }
    if (synth_seed != 0) cfg.seed = synth_seed;
    ascent::SynthData data = ascent::generate(cfg);
    data.write_files(synth_out);
    std::cout << "wrote synthetic dataset (" << cfg.total_expeditions()
              << " community expeditions) to " << synth_out << "\n";
    return 0;
  }

  if (command == "compare") {
    std::ifstream in(report_path);
    if (!in) throw ascent::InputError("cannot open report '" + report_path + "'");
    json j;
    in >> j;
    ascent::AnalysisReport report;
    report.real_data = j.at("provenance").at("real_data").get<bool>();
    for (const auto& layer : j.at("correlations").at("layers")) {
      ascent::LayerCorrelation c;
      std::string name = layer.at("layer").get<std::string>();
      for (ascent::LayerKind kind : ascent::kAllLayers)
        if (name == ascent::to_string(kind)) c.kind = kind;
      c.r = layer.at("r").get<double>();
      c.p = layer.at("p").get<double>();
      c.n = layer.at("n").get<std::size_t>();
      report.correlations.layers.push_back(c);
    }
    for (const auto& prof : j.at("community_profiles")) {
      ascent::CommunityProfile p;
      p.label = prof.at("community").get<int>();
      p.size = prof.at("size").get<std::size_t>();
      p.mean_success_rate = prof.at("success_rate").get<double>();
      report.profiles.push_back(p);
    }
    ascent::ComparisonTable table = ascent::compare_to_published(report);
    std::cout << ascent::comparison_to_text(table);
    if (!compare_out.empty()) write_file(compare_out, ascent::comparison_to_csv(table));
    return 0;
  }

  ascent::RunConfig cfg = resolve_config(args);
  fs::path out_dir(cfg.output_dir);

  if (command == "report") {
    ascent::AnalysisReport report = ascent::run(cfg);
    std::cout << ascent::summary_text(report);
    std::cout << "artifacts written to " << out_dir.string() << "\n";
    return 0;
  }

  if (command == "ingest") {
    ascent::PipelineData data = prepare_from(cfg);
    fs::create_directories(out_dir);
    write_file(out_dir / "dataset.json", ascent::dataset_to_json(data.linked).dump(2) + "\n");
    write_file(out_dir / "diagnostics.csv",
               ascent::diagnostics_to_csv(data.linked.diagnostics));
    std::cout << "ingested " << data.linked.expeditions.size() << " expeditions, "
              << data.linked.climbers.size() << " climber records ("
              << data.linked.diagnostics.size() << " diagnostics)\n";
    return 0;
  }

  // Remaining stages run from a dataset cache when given, else from the CSVs.
  ascent::PipelineData data;
  if (!dataset_path.empty()) {
    ascent::Dataset linked = load_dataset(dataset_path);
    // Rebuild the staged fields the way prepare() would.
    ascent::RunConfig staged = cfg;
    data.linked = std::move(linked);
    ascent::FilterCriteria criteria;
    if (!staged.peak_id.empty()) criteria.peak_id = staged.peak_id;
    criteria.min_size = staged.min_size;
    criteria.exclude_death = staged.exclude_death;
    ascent::Dataset filtered = ascent::filter_expeditions(data.linked, criteria);
    data.analyzed =
        ascent::detail::keep_analyzable(filtered, staged.include_hired_rows, &data.notes);
    data.median_age = staged.median_age_override ? *staged.median_age_override
                                                 : ascent::median_age(data.analyzed);
    ascent::BipartiteBuildOptions opt;
    opt.binarize.age_above_median = staged.age_above_median;
    opt.include_hired = staged.include_hired_rows;
    for (const auto& exp : data.analyzed.expeditions) {
      auto p = ascent::build_bipartite(exp, data.analyzed, data.median_age, opt, nullptr);
      auto raw = ascent::project(p);
      data.intra_raw.push_back(raw);
      data.intra_normalized.push_back(ascent::normalize_by_size(raw));
      data.success_rates.push_back(
          ascent::success_rate(exp, data.analyzed, staged.include_hired_in_success));
    }
  } else {
    data = prepare_from(cfg);
  }
  fs::create_directories(out_dir);

  if (command == "partners") {
    ascent::PartnerEffectOptions opt;
    opt.min_climbs = cfg.partner_min_climbs;
    opt.bin_width = cfg.partner_bin_width;
    opt.max_climbs = cfg.partner_max_climbs;
    opt.pooled = cfg.pooled_partner_ratios;
    auto table = ascent::partner_effect(
        cfg.partners_on_filtered ? data.analyzed : data.linked, opt);
    write_file(out_dir / "fig1_partner_effect.csv", ascent::partner_effect_to_csv(table));
    write_file(out_dir / "partner_effect.json",
               ascent::partner_effect_to_json(table).dump(2) + "\n");
    std::cout << "partner-effect table written (" << table.bins.size() << " bins)\n";
    return 0;
  }

  if (command == "centrality") {
    ascent::BipartiteBuildOptions opt;
    opt.binarize.age_above_median = cfg.age_above_median;
    opt.include_hired = cfg.include_hired_rows;
    auto groups = ascent::split_by_outcome(data.analyzed, data.median_age, opt, nullptr);
    auto table = ascent::group_centrality(groups.success, groups.nosummit);
    auto success_agg = ascent::aggregate_group(groups.success);
    auto nosummit_agg = ascent::aggregate_group(groups.nosummit);
    success_agg.expedition_id = "success_group";
    nosummit_agg.expedition_id = "nosummit_group";
    write_file(out_dir / "fig2_centrality.csv", ascent::group_centrality_to_csv(table));
    write_file(out_dir / "fig2_group_graphs.json",
               nlohmann::json({{"schema_version", ascent::kSchemaVersion},
                               {"success", ascent::intra_graph_to_json(success_agg)},
                               {"nosummit", ascent::intra_graph_to_json(nosummit_agg)}})
                       .dump(2) +
                   "\n");
    std::cout << "group centrality written (" << groups.success.size() << " success / "
              << groups.nosummit.size() << " no-summit graphs)\n";
    return 0;
  }

  if (command == "multiplex") {
    ascent::MultiplexOptions opt;
    opt.similarity_layer_uses_distance = cfg.layer_use_distance;
    auto multiplex = ascent::build_multiplex(data.analyzed, data.intra_normalized, opt);
    write_file(out_dir / "multiplex.json", ascent::multiplex_to_json(multiplex).dump(2) + "\n");
    auto distances = ascent::normalize_unit(ascent::pairwise_distances(data.intra_normalized));
    write_file(out_dir / "distances.csv", ascent::distance_matrix_to_csv(distances));
    write_file(out_dir / "intra_graphs.json",
               ascent::intra_graphs_to_json(data.intra_normalized).dump(2) + "\n");
    std::cout << "multiplex written (" << multiplex.size() << " expeditions)\n";
    return 0;
  }

  if (command == "correlate") {
    auto report = ascent::layer_success_correlations(data.analyzed, data.intra_normalized,
                                                     data.success_rates,
                                                     !cfg.regression_offdiag_only);
    write_file(out_dir / "fig4_correlations.csv", ascent::correlations_to_csv(report));
    write_file(out_dir / "coefficients.json",
               ascent::coefficients_to_json(report.projection).dump(2) + "\n");
    std::cout << "layer correlations written\n";
    return 0;
  }

  if (command == "communities") {
    ascent::MultiplexOptions opt;
    opt.similarity_layer_uses_distance = cfg.layer_use_distance;
    auto multiplex = ascent::build_multiplex(data.analyzed, data.intra_normalized, opt);
    auto similarity = ascent::aggregate(multiplex, cfg.layer_weights);
    auto partition = ascent::louvain(similarity.weights, cfg.louvain_seed,
                                     cfg.louvain_resolution, &similarity.expedition_ids);
    ascent::CommunityProfileOptions prof_opt;
    prof_opt.centrality_of_mean_graph = cfg.centrality_of_mean_graph;
    auto profiles = ascent::community_profiles(partition, data.analyzed,
                                               data.intra_normalized, data.success_rates,
                                               prof_opt);
    write_file(out_dir / "partition.csv",
               ascent::partition_to_csv(partition, similarity.expedition_ids));
    write_file(out_dir / "fig5_profiles.csv", ascent::profiles_to_csv(profiles));
    write_file(out_dir / "profiles.json", ascent::profiles_to_json(profiles).dump(2) + "\n");
    std::cout << "community detection done: " << partition.community_count()
              << " communities, Q=" << ascent::format_double(partition.modularity) << "\n";
    return 0;
  }

  throw ascent::InputError("unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiscale expedition-network analysis"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string synth_out = "synth_out";
  std::uint64_t synth_seed = 0;
  std::string synth_config;
  std::string dataset_path;
  std::string report_path;
  std::string compare_out;

  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("--out", synth_out, "output directory");
  synth->add_option("--seed", synth_seed, "override the generator seed");
  synth->add_option("--synth-config", synth_config, "generator config JSON");

  for (const char* name : {"ingest", "partners", "centrality", "multiplex", "correlate",
                           "communities", "report"}) {
    auto* cmd = app.add_subcommand(name, std::string("run the ") + name + " stage");
    add_common(cmd, args);
    if (std::string(name) != "ingest" && std::string(name) != "report")
      cmd->add_option("--dataset", dataset_path, "dataset.json cache from 'ingest'");
  }

  auto* compare = app.add_subcommand("compare",
                                     "compare a report against published values");
  compare->add_option("--report", report_path, "report.json path")->required();
  compare->add_option("--out", compare_out, "also write the comparison as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), args, synth_out, synth_seed,
                    synth_config, dataset_path, report_path, compare_out);
  } catch (const ascent::InputError& e) {
    std::cerr << "input/config error: " << e.what() << "\n";
    return 2;
  } catch (const ascent::AnalysisError& e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
