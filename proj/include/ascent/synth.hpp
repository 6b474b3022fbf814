// synth.hpp -- seeded synthetic dataset generator: planted expedition
// communities, planted factor-success correlations and planted
// repeat-partner effects, in the ingestion CSV schema
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ascent/common.hpp"
#include "ascent/records.hpp"

namespace ascent {

struct CommunitySpec {
  std::string name;
  int n_expeditions = 40;
  int size_min = 12;
  int size_max = 15;
  double days_mean = 40.0;
  double days_sd = 4.0;
  double camps_mean = 2.0;
  double camps_sd = 0.6;
  double hired_fraction = 0.45;   // fraction of the roster that is hired
  double success_base = 0.23;     // per-climber success before feature bonuses
  double age_mean = 46.0;
  double age_sd = 5.0;
  double male_p = 0.85;
  double o2_ascent_p = 0.2;
  double o2_descent_p = 0.1;
  double veteran_p = 0.10;        // chance a roster slot is a pool veteran
  int veteran_pool = 15;
};

// Dedicated stratum for the repeat-partner analysis: many small expeditions
// led by "anchor" climbers whose dedicated buddy joins a controlled fraction
// of their climbs. Keeping that fraction near one third matters: the
// partner-effect ratio is measured against the climber's own overall
// average, which already contains the partner climbs, so a climber whose
// climbs nearly all have repeat partners measures a ratio near 1 regardless
// of the planted multiplier.
struct PartnerStratumSpec {
  bool enabled = true;
  std::string peak_id = "LHOTSE";
  double peak_height = 8516.0;
  int n_anchors = 340;            // anchors with climbs_min..climbs_max climbs
  int climbs_min = 26;
  int climbs_max = 40;
  int n_casual_anchors = 16;      // thin low-experience bins, for table texture
  int casual_climbs_min = 16;
  int casual_climbs_max = 25;
  double buddy_prob = 0.30;       // fraction of an anchor's climbs the buddy joins
  int roster_min = 5;
  int roster_max = 7;
  double success_p = 0.45;
  // Failure-cause weights, conditional on failure.
  double w_altitude = 0.15;
  double w_logistics = 0.15;
  double w_fatigue = 0.55;
  double w_accident = 0.08;
  double w_other = 0.07;
};

struct PartnerEffectMultipliers {
  double altitude = 1.0;
  double logistics = 1.0;
  double fatigue = 1.0;
  double accident = 1.0;
  double other = 1.0;

  double of(FailureCause c) const {
    switch (c) {
      case FailureCause::Altitude: return altitude;
      case FailureCause::Logistics: return logistics;
      case FailureCause::Fatigue: return fatigue;
      case FailureCause::Accident: return accident;
      case FailureCause::Other: return other;
      case FailureCause::Success: return 1.0;
    }
    return 1.0;
  }
};

struct SynthConfig {
  std::uint64_t seed = 42;
  std::string peak_id = "EVEREST";
  double peak_height = 8849.0;
  int year_min = 1990;
  int year_max = 2019;
  std::vector<CommunitySpec> communities;
  PartnerStratumSpec partner_stratum;
  // Multipliers applied to a climb's failure-cause probabilities when the
  // climb has a repeat partner; the probability mass removed (or added) is
  // absorbed by the success probability, so a multiplier of 0.5 halves that
  // cause's per-climb rate exactly.
  PartnerEffectMultipliers partner_effect;
  double success_youth_bonus = 0.10;
  double success_o2_bonus = 0.08;

  int total_expeditions() const {
    int n = 0;
    for (const auto& c : communities) n += c.n_expeditions;
    return n;
  }
};

// Three planted communities with one dominant threshold layer each (days ->
// community 0, ratio -> community 1, size and camps -> community 2), a
// positive size-success plant, a negative days-success plant, and a 0.5
// fatigue multiplier for repeat-partner climbs.
inline SynthConfig default_synth_config() {
  SynthConfig cfg;
  cfg.communities.resize(3);

  CommunitySpec& slow = cfg.communities[0];
  slow.name = "long_haul_small";
  slow.n_expeditions = 40;
  slow.size_min = 12; slow.size_max = 15;
  slow.days_mean = 40.0; slow.days_sd = 4.0;
  slow.camps_mean = 2.0; slow.camps_sd = 0.6;
  slow.hired_fraction = 0.45;
  slow.success_base = 0.22;
  slow.age_mean = 46.0; slow.age_sd = 5.0;
  slow.male_p = 0.85;
  slow.o2_ascent_p = 0.20; slow.o2_descent_p = 0.10;
  slow.veteran_p = 0.10; slow.veteran_pool = 12;

  CommunitySpec& lean = cfg.communities[1];
  lean.name = "lean_experienced";
  lean.n_expeditions = 40;
  lean.size_min = 16; lean.size_max = 20;
  lean.days_mean = 22.0; lean.days_sd = 3.0;
  lean.camps_mean = 3.0; lean.camps_sd = 0.6;
  lean.hired_fraction = 0.15;
  lean.success_base = 0.30;
  lean.age_mean = 41.0; lean.age_sd = 5.0;
  lean.male_p = 0.70;
  lean.o2_ascent_p = 0.55; lean.o2_descent_p = 0.35;
  lean.veteran_p = 0.50; lean.veteran_pool = 25;

  CommunitySpec& big = cfg.communities[2];
  big.name = "large_fast";
  big.n_expeditions = 40;
  big.size_min = 28; big.size_max = 36;
  big.days_mean = 10.0; big.days_sd = 2.0;
  big.camps_mean = 6.5; big.camps_sd = 0.8;
  big.hired_fraction = 0.30;
  big.success_base = 0.52;
  big.age_mean = 30.0; big.age_sd = 4.0;
  big.male_p = 0.55;
  big.o2_ascent_p = 0.90; big.o2_descent_p = 0.80;
  big.veteran_p = 0.25; big.veteran_pool = 18;

  cfg.partner_effect.fatigue = 0.5;
  return cfg;
}

struct SynthData {
  std::string expeditions_csv;
  std::string members_csv;
  std::string ground_truth_json;

  void write_files(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    auto dump = [&](const char* name, const std::string& content) {
      std::ofstream out(dir / name, std::ios::binary);
      if (!out) throw InputError("synth: cannot write " + (dir / name).string());
      out << content;
    };
    dump("expeditions.csv", expeditions_csv);
    dump("members.csv", members_csv);
    dump("ground_truth.json", ground_truth_json);
  }
};

namespace detail {

struct SynthRow {
  std::string climber_id;
  int age = 0;
  char sex = 'M';
  std::string nationality;
  bool o2_ascent = false;
  bool o2_descent = false;
  bool hired = false;
  bool summited = false;
  std::string termination_code;
  double success_p = 0.5;  // pre-partner-effect success probability
  std::array<double, 5> cause_weights{};  // altitude, logistics, fatigue, accident, other
};

struct SynthExpedition {
  std::string expedition_id;
  std::string peak_id;
  double peak_height = 0.0;
  int year = 0;
  int days = 0;
  int camps = 0;
  int n_members = 0;
  int n_hired = 0;
  int community = -1;  // -1 for the partner stratum
  std::vector<SynthRow> rows;
};

inline int clamp_int(double v, int lo, int hi) {
  int r = static_cast<int>(std::llround(v));
  return std::max(lo, std::min(hi, r));
}

inline const char* code_for(FailureCause c) {
  switch (c) {
    case FailureCause::Success: return "success";
    case FailureCause::Altitude: return "ams symptoms";
    case FailureCause::Logistics: return "lack of supplies";
    case FailureCause::Fatigue: return "exhaustion";
    case FailureCause::Accident: return "injury";
    case FailureCause::Other: return "route conditions";
  }
  return "route conditions";
}

inline void validate(const SynthConfig& cfg) {
  if (cfg.communities.empty()) throw InputError("synth: need at least one community");
  for (const auto& c : cfg.communities) {
    if (c.n_expeditions < 1) throw InputError("synth: community needs >= 1 expedition");
    if (c.size_min < 1 || c.size_max < c.size_min)
      throw InputError("synth: bad expedition size range in community " + c.name);
    for (double p : {c.hired_fraction, c.success_base, c.male_p, c.o2_ascent_p,
                     c.o2_descent_p, c.veteran_p})
      if (p < 0.0 || p > 1.0)
        throw InputError("synth: probability out of [0,1] in community " + c.name);
  }
  const auto& ps = cfg.partner_stratum;
  if (ps.enabled) {
    if (ps.roster_min < 2 || ps.roster_max < ps.roster_min)
      throw InputError("synth: bad partner-stratum roster range");
    if (ps.climbs_min < 1 || ps.climbs_max < ps.climbs_min)
      throw InputError("synth: bad partner-stratum climb range");
    if (ps.buddy_prob < 0.0 || ps.buddy_prob > 1.0)
      throw InputError("synth: buddy_prob out of [0,1]");
  }
}

}  // namespace detail

// Deterministic per seed: one RNG, fixed draw order, integer-only CSV
// fields.
inline SynthData generate(const SynthConfig& cfg) {
  detail::validate(cfg);
  std::mt19937_64 rng(cfg.seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto normal = [&](double mean, double sd) {
    return std::normal_distribution<double>(mean, sd)(rng);
  };
  auto bernoulli = [&](double p) { return uniform(0.0, 1.0) < p; };

  static const std::array<const char*, 6> kNations = {"NPL", "USA", "GBR",
                                                      "JPN", "IND", "FRA"};

  std::vector<detail::SynthExpedition> expeditions;

  // --- community stratum ---------------------------------------------------
  const std::array<double, 5> community_cause_weights = {0.30, 0.25, 0.25, 0.10, 0.10};
  for (std::size_t c = 0; c < cfg.communities.size(); ++c) {
    const CommunitySpec& spec = cfg.communities[c];
    struct Veteran {
      int age;
      char sex;
      std::string nationality;
    };
    std::vector<Veteran> pool;
    for (int v = 0; v < spec.veteran_pool; ++v)
      pool.push_back({detail::clamp_int(normal(spec.age_mean, spec.age_sd), 18, 80),
                      bernoulli(spec.male_p) ? 'M' : 'F',
                      kNations[static_cast<std::size_t>(uniform_int(0, 5))]});

    for (int k = 0; k < spec.n_expeditions; ++k) {
      detail::SynthExpedition exp;
      exp.expedition_id = "SYN-C" + std::to_string(c) + "-" + std::to_string(k);
      exp.peak_id = cfg.peak_id;
      exp.peak_height = cfg.peak_height;
      exp.year = uniform_int(cfg.year_min, cfg.year_max);
      int size = uniform_int(spec.size_min, spec.size_max);
      exp.days = detail::clamp_int(normal(spec.days_mean, spec.days_sd), 1, 120);
      exp.camps = detail::clamp_int(normal(spec.camps_mean, spec.camps_sd), 0, 12);
      exp.n_hired = std::max(1, detail::clamp_int(size * spec.hired_fraction, 1, size - 1));
      exp.n_members = size - exp.n_hired;
      exp.community = static_cast<int>(c);

      std::vector<int> used_veterans;
      for (int slot = 0; slot < size; ++slot) {
        detail::SynthRow row;
        bool veteran = false;
        if (bernoulli(spec.veteran_p) && !pool.empty()) {
          int pick = uniform_int(0, static_cast<int>(pool.size()) - 1);
          if (std::find(used_veterans.begin(), used_veterans.end(), pick) ==
              used_veterans.end()) {
            used_veterans.push_back(pick);
            row.climber_id = "VET-C" + std::to_string(c) + "-" + std::to_string(pick);
            row.age = pool[static_cast<std::size_t>(pick)].age;
            row.sex = pool[static_cast<std::size_t>(pick)].sex;
            row.nationality = pool[static_cast<std::size_t>(pick)].nationality;
            veteran = true;
          }
        }
        if (!veteran) {
          row.climber_id = "CLM-C" + std::to_string(c) + "-" + std::to_string(k) + "-" +
                           std::to_string(slot);
          row.age = detail::clamp_int(normal(spec.age_mean, spec.age_sd), 18, 80);
          row.sex = bernoulli(spec.male_p) ? 'M' : 'F';
          row.nationality = kNations[static_cast<std::size_t>(uniform_int(0, 5))];
        }
        row.o2_ascent = bernoulli(spec.o2_ascent_p);
        row.o2_descent = bernoulli(spec.o2_descent_p);
        row.hired = slot < exp.n_hired;
        double p = spec.success_base;
        if (row.age < 40) p += cfg.success_youth_bonus;
        if (row.o2_ascent) p += cfg.success_o2_bonus;
        row.success_p = std::clamp(p, 0.02, 0.98);
        row.cause_weights = community_cause_weights;
        exp.rows.push_back(std::move(row));
      }
      expeditions.push_back(std::move(exp));
    }
  }

  // --- partner stratum ------------------------------------------------------
  const auto& ps = cfg.partner_stratum;
  if (ps.enabled) {
    const std::array<double, 5> cause_weights = {ps.w_altitude, ps.w_logistics,
                                                 ps.w_fatigue, ps.w_accident, ps.w_other};
    int total_anchors = ps.n_anchors + ps.n_casual_anchors;
    for (int a = 0; a < total_anchors; ++a) {
      bool casual = a >= ps.n_anchors;
      int climbs = casual ? uniform_int(ps.casual_climbs_min, ps.casual_climbs_max)
                          : uniform_int(ps.climbs_min, ps.climbs_max);
      int base_year = 1950 + (a % 17);
      std::string anchor_id = "ANC-" + std::to_string(a);
      std::string buddy_id = "BUD-" + std::to_string(a);
      int anchor_age = detail::clamp_int(normal(38.0, 7.0), 20, 70);
      int buddy_age = detail::clamp_int(normal(36.0, 7.0), 20, 70);
      char anchor_sex = bernoulli(0.8) ? 'M' : 'F';
      char buddy_sex = bernoulli(0.8) ? 'M' : 'F';

      int joint = static_cast<int>(std::llround(ps.buddy_prob * climbs));
      std::vector<int> indices(static_cast<std::size_t>(climbs));
      std::iota(indices.begin(), indices.end(), 0);
      std::shuffle(indices.begin(), indices.end(), rng);
      indices.resize(static_cast<std::size_t>(std::min(joint, climbs)));
      std::sort(indices.begin(), indices.end());

      for (int t = 0; t < climbs; ++t) {
        detail::SynthExpedition exp;
        exp.expedition_id = "SYB-" + std::to_string(a) + "-" + std::to_string(t);
        exp.peak_id = ps.peak_id;
        exp.peak_height = ps.peak_height;
        exp.year = base_year + t;
        exp.days = uniform_int(3, 10);
        exp.camps = uniform_int(1, 3);
        exp.community = -1;
        int roster = uniform_int(ps.roster_min, ps.roster_max);
        bool buddy_joins = std::binary_search(indices.begin(), indices.end(), t);

        auto make_row = [&](const std::string& id, int age, char sex) {
          detail::SynthRow row;
          row.climber_id = id;
          row.age = age;
          row.sex = sex;
          row.nationality = kNations[static_cast<std::size_t>(uniform_int(0, 5))];
          row.o2_ascent = bernoulli(0.3);
          row.o2_descent = bernoulli(0.2);
          row.success_p = ps.success_p;
          row.cause_weights = cause_weights;
          return row;
        };
        exp.rows.push_back(make_row(anchor_id, anchor_age, anchor_sex));
        if (buddy_joins) exp.rows.push_back(make_row(buddy_id, buddy_age, buddy_sex));
        int fresh = roster - static_cast<int>(exp.rows.size());
        for (int s = 0; s < fresh; ++s) {
          exp.rows.push_back(make_row(
              "FRS-" + std::to_string(a) + "-" + std::to_string(t) + "-" + std::to_string(s),
              detail::clamp_int(normal(34.0, 8.0), 18, 70), bernoulli(0.75) ? 'M' : 'F'));
        }
        exp.n_hired = 1;
        exp.rows.back().hired = true;
        exp.n_members = static_cast<int>(exp.rows.size()) - exp.n_hired;
        expeditions.push_back(std::move(exp));
      }
    }
  }

  // --- outcomes, in year order so repeat-partner status is known ------------
  std::vector<std::size_t> outcome_order(expeditions.size());
  std::iota(outcome_order.begin(), outcome_order.end(), std::size_t{0});
  std::sort(outcome_order.begin(), outcome_order.end(), [&](std::size_t a, std::size_t b) {
    if (expeditions[a].year != expeditions[b].year)
      return expeditions[a].year < expeditions[b].year;
    return expeditions[a].expedition_id < expeditions[b].expedition_id;
  });

  std::map<std::pair<std::string, std::string>, int> first_shared_year;
  auto pair_of = [](const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  const std::array<FailureCause, 5> cause_order = {FailureCause::Altitude,
                                                   FailureCause::Logistics,
                                                   FailureCause::Fatigue,
                                                   FailureCause::Accident,
                                                   FailureCause::Other};

  for (std::size_t idx : outcome_order) {
    detail::SynthExpedition& exp = expeditions[idx];
    for (std::size_t i = 0; i < exp.rows.size(); ++i) {
      bool flagged = false;
      for (std::size_t j = 0; j < exp.rows.size() && !flagged; ++j) {
        if (i == j) continue;
        auto it = first_shared_year.find(
            pair_of(exp.rows[i].climber_id, exp.rows[j].climber_id));
        if (it != first_shared_year.end() && it->second < exp.year) flagged = true;
      }
      detail::SynthRow& row = exp.rows[i];
      std::array<double, 6> probs{};  // success + 5 failure causes
      for (std::size_t k = 0; k < 5; ++k) {
        double p = (1.0 - row.success_p) * row.cause_weights[k];
        if (flagged) p *= cfg.partner_effect.of(cause_order[k]);
        probs[k + 1] = p;
      }
      double failure_total = probs[1] + probs[2] + probs[3] + probs[4] + probs[5];
      if (failure_total >= 0.999) {
        for (std::size_t k = 1; k < 6; ++k) probs[k] *= 0.999 / failure_total;
        failure_total = 0.999;
      }
      probs[0] = 1.0 - failure_total;

      double draw = uniform(0.0, 1.0);
      std::size_t picked = 0;
      double acc = 0.0;
      for (std::size_t k = 0; k < 6; ++k) {
        acc += probs[k];
        if (draw < acc) { picked = k; break; }
      }
      if (picked == 0) {
        row.summited = true;
        row.termination_code = detail::code_for(FailureCause::Success);
      } else {
        row.summited = false;
        row.termination_code = detail::code_for(cause_order[picked - 1]);
      }
    }
    for (std::size_t i = 0; i < exp.rows.size(); ++i)
      for (std::size_t j = i + 1; j < exp.rows.size(); ++j) {
        auto key = pair_of(exp.rows[i].climber_id, exp.rows[j].climber_id);
        auto [it, inserted] = first_shared_year.emplace(key, exp.year);
        if (!inserted && exp.year < it->second) it->second = exp.year;
      }
  }

  // --- serialization ---------------------------------------------------------
  std::ostringstream exp_csv;
  exp_csv << "exp_id,peak_id,peak_height_m,year,days_to_summit,camps_above_bc,"
             "n_members,n_hired,any_death\n";
  std::ostringstream mem_csv;
  mem_csv << "climber_id,exp_id,age,sex,nationality,o2_ascent,o2_descent,hired,"
             "summited,termination_code\n";
  for (const auto& exp : expeditions) {
    exp_csv << exp.expedition_id << ',' << exp.peak_id << ','
            << static_cast<long long>(exp.peak_height) << ',' << exp.year << ','
            << exp.days << ',' << exp.camps << ',' << exp.n_members << ','
            << exp.n_hired << ",0\n";
    for (const auto& row : exp.rows) {
      mem_csv << row.climber_id << ',' << exp.expedition_id << ',' << row.age << ','
              << row.sex << ',' << row.nationality << ',' << (row.o2_ascent ? 1 : 0)
              << ',' << (row.o2_descent ? 1 : 0) << ',' << (row.hired ? 1 : 0) << ','
              << (row.summited ? 1 : 0) << ',' << row.termination_code << '\n';
    }
  }

  nlohmann::json truth;
  truth["schema_version"] = 1;
  truth["seed"] = cfg.seed;
  nlohmann::json communities = nlohmann::json::object();
  for (const auto& exp : expeditions)
    if (exp.community >= 0) communities[exp.expedition_id] = exp.community;
  truth["community_of"] = std::move(communities);
  truth["planted"] = {
      {"size_success_correlation", "positive"},
      {"days_success_correlation", "negative"},
  };
  truth["partner_multipliers"] = {{"altitude", cfg.partner_effect.altitude},
                                  {"logistics", cfg.partner_effect.logistics},
                                  {"fatigue", cfg.partner_effect.fatigue},
                                  {"accident", cfg.partner_effect.accident},
                                  {"other", cfg.partner_effect.other}};
  truth["n_expeditions"] = expeditions.size();

  SynthData data;
  data.expeditions_csv = exp_csv.str();
  data.members_csv = mem_csv.str();
  data.ground_truth_json = truth.dump(2) + "\n";
  return data;
}

// JSON round-trip for generator configs. Absent keys keep their defaults.
inline void from_json_into(const nlohmann::json& j, CommunitySpec& c) {
  c.name = j.value("name", c.name);
  c.n_expeditions = j.value("n_expeditions", c.n_expeditions);
  c.size_min = j.value("size_min", c.size_min);
  c.size_max = j.value("size_max", c.size_max);
  c.days_mean = j.value("days_mean", c.days_mean);
  c.days_sd = j.value("days_sd", c.days_sd);
  c.camps_mean = j.value("camps_mean", c.camps_mean);
  c.camps_sd = j.value("camps_sd", c.camps_sd);
  c.hired_fraction = j.value("hired_fraction", c.hired_fraction);
  c.success_base = j.value("success_base", c.success_base);
  c.age_mean = j.value("age_mean", c.age_mean);
  c.age_sd = j.value("age_sd", c.age_sd);
  c.male_p = j.value("male_p", c.male_p);
  c.o2_ascent_p = j.value("o2_ascent_p", c.o2_ascent_p);
  c.o2_descent_p = j.value("o2_descent_p", c.o2_descent_p);
  c.veteran_p = j.value("veteran_p", c.veteran_p);
  c.veteran_pool = j.value("veteran_pool", c.veteran_pool);
}

inline SynthConfig synth_config_from_json(const nlohmann::json& j) {
  SynthConfig cfg = default_synth_config();
  cfg.seed = j.value("seed", cfg.seed);
  cfg.peak_id = j.value("peak_id", cfg.peak_id);
  cfg.peak_height = j.value("peak_height_m", cfg.peak_height);
  cfg.year_min = j.value("year_min", cfg.year_min);
  cfg.year_max = j.value("year_max", cfg.year_max);
  if (j.contains("communities")) {
    cfg.communities.clear();
    for (const auto& jc : j.at("communities")) {
      CommunitySpec spec;
      from_json_into(jc, spec);
      cfg.communities.push_back(spec);
    }
  }
  if (j.contains("partner_stratum")) {
    const auto& jp = j.at("partner_stratum");
    auto& ps = cfg.partner_stratum;
    ps.enabled = jp.value("enabled", ps.enabled);
    ps.peak_id = jp.value("peak_id", ps.peak_id);
    ps.peak_height = jp.value("peak_height_m", ps.peak_height);
    ps.n_anchors = jp.value("n_anchors", ps.n_anchors);
    ps.climbs_min = jp.value("climbs_min", ps.climbs_min);
    ps.climbs_max = jp.value("climbs_max", ps.climbs_max);
    ps.n_casual_anchors = jp.value("n_casual_anchors", ps.n_casual_anchors);
    ps.casual_climbs_min = jp.value("casual_climbs_min", ps.casual_climbs_min);
    ps.casual_climbs_max = jp.value("casual_climbs_max", ps.casual_climbs_max);
    ps.buddy_prob = jp.value("buddy_prob", ps.buddy_prob);
    ps.roster_min = jp.value("roster_min", ps.roster_min);
    ps.roster_max = jp.value("roster_max", ps.roster_max);
    ps.success_p = jp.value("success_p", ps.success_p);
    ps.w_altitude = jp.value("w_altitude", ps.w_altitude);
    ps.w_logistics = jp.value("w_logistics", ps.w_logistics);
    ps.w_fatigue = jp.value("w_fatigue", ps.w_fatigue);
    ps.w_accident = jp.value("w_accident", ps.w_accident);
    ps.w_other = jp.value("w_other", ps.w_other);
  }
  if (j.contains("partner_effect")) {
    const auto& jp = j.at("partner_effect");
    cfg.partner_effect.altitude = jp.value("altitude", cfg.partner_effect.altitude);
    cfg.partner_effect.logistics = jp.value("logistics", cfg.partner_effect.logistics);
    cfg.partner_effect.fatigue = jp.value("fatigue", cfg.partner_effect.fatigue);
    cfg.partner_effect.accident = jp.value("accident", cfg.partner_effect.accident);
    cfg.partner_effect.other = jp.value("other", cfg.partner_effect.other);
  }
  cfg.success_youth_bonus = j.value("success_youth_bonus", cfg.success_youth_bonus);
  cfg.success_o2_bonus = j.value("success_o2_bonus", cfg.success_o2_bonus);
  return cfg;
}

}  // namespace ascent
