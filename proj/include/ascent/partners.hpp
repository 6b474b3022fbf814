// partners.hpp -- repeat-partner detection and failure-rate ratios against
// individual baselines
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ascent/records.hpp"

namespace ascent {

// Categories reported in the partner-effect table (Other is tracked in the
// per-climber rates but not tabulated).
inline constexpr std::array<FailureCause, 5> kPartnerCategories = {
    FailureCause::Success, FailureCause::Altitude, FailureCause::Logistics,
    FailureCause::Fatigue, FailureCause::Accident};

// One flag per climber row: true iff some co-member of that expedition
// shared an expedition with the climber in a strictly earlier year.
inline std::vector<bool> repeat_partner_flags(const Dataset& ds) {
  std::unordered_map<std::string, std::uint32_t> climber_no;
  climber_no.reserve(ds.climbs_of.size());
  for (const auto& c : ds.climbers)
    climber_no.emplace(c.climber_id, static_cast<std::uint32_t>(climber_no.size()));

  // Earliest shared year per co-member pair.
  std::unordered_map<std::uint64_t, int> first_shared_year;
  auto pair_key = [](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  };
  for (const auto& exp : ds.expeditions) {
    for (std::size_t i = 0; i < exp.member_rows.size(); ++i)
      for (std::size_t j = i + 1; j < exp.member_rows.size(); ++j) {
        std::uint32_t a = climber_no.at(ds.climbers[exp.member_rows[i]].climber_id);
        std::uint32_t b = climber_no.at(ds.climbers[exp.member_rows[j]].climber_id);
        if (a == b) continue;  // duplicate listing of one climber
        auto [it, inserted] = first_shared_year.emplace(pair_key(a, b), exp.year);
        if (!inserted && exp.year < it->second) it->second = exp.year;
      }
  }

  std::vector<bool> flags(ds.climbers.size(), false);
  for (const auto& exp : ds.expeditions) {
    for (std::size_t i = 0; i < exp.member_rows.size(); ++i) {
      std::size_t row = exp.member_rows[i];
      std::uint32_t self = climber_no.at(ds.climbers[row].climber_id);
      for (std::size_t j = 0; j < exp.member_rows.size() && !flags[row]; ++j) {
        if (i == j) continue;
        std::uint32_t other = climber_no.at(ds.climbers[exp.member_rows[j]].climber_id);
        if (other == self) continue;
        auto it = first_shared_year.find(pair_key(self, other));
        if (it != first_shared_year.end() && it->second < exp.year) flags[row] = true;
      }
    }
  }
  return flags;
}

struct OutcomeRates {
  std::map<FailureCause, double> rates;  // sums to 1 over all six categories
  std::size_t n_climbs = 0;

  double rate(FailureCause c) const {
    auto it = rates.find(c);
    return it == rates.end() ? 0.0 : it->second;
  }
};

// Per-category outcome fractions over a climber's expeditions, optionally
// restricted to a subset of their rows.
inline OutcomeRates climber_outcome_rates(const std::string& climber_id, const Dataset& ds,
                                          const std::vector<std::size_t>* subset = nullptr) {
  auto it = ds.climbs_of.find(climber_id);
  if (it == ds.climbs_of.end())
    throw AnalysisError("climber_outcome_rates: unknown climber " + climber_id);
  const std::vector<std::size_t>& rows = subset ? *subset : it->second;
  if (rows.empty())
    throw AnalysisError("climber_outcome_rates: empty subset for " + climber_id);

  OutcomeRates out;
  out.n_climbs = rows.size();
  std::map<FailureCause, std::size_t> counts;
  for (std::size_t row : rows) ++counts[climb_outcome(ds.climbers[row], ds.code_map)];
  for (auto& [cause, count] : counts)
    out.rates[cause] = static_cast<double>(count) / static_cast<double>(rows.size());
  return out;
}

struct PartnerEffectCell {
  std::optional<double> ratio;  // repeat-partner rate over individual average
  std::size_t n_climbers = 0;   // climbers contributing to this cell
};

struct PartnerEffectBin {
  int climbs_min = 0;
  int climbs_max = 0;
  std::size_t n_climbers = 0;  // climbers in the bin with >=1 repeat-partner climb
  std::map<FailureCause, PartnerEffectCell> cells;

  std::string label() const {
    return std::to_string(climbs_min) + "-" + std::to_string(climbs_max);
  }
};

struct PartnerEffectTable {
  std::vector<PartnerEffectBin> bins;
  bool pooled = false;
};

struct PartnerEffectOptions {
  int min_climbs = 15;  // climbers must have strictly more climbs than this
  int bin_width = 5;
  int max_climbs = 40;
  // Pool counts across climbers instead of averaging per-climber ratios.
  bool pooled = false;
};

// Experience-binned partner-effect ratios. Default: per-climber ratio of
// repeat-partner rate to individual average, then mean over climbers.
// Climbers without repeat-partner climbs, and cells with a zero individual
// baseline, are excluded (never reported as 0 or infinity).
inline PartnerEffectTable partner_effect(const Dataset& ds,
                                         const PartnerEffectOptions& opt = {}) {
  std::vector<bool> flags = repeat_partner_flags(ds);

  PartnerEffectTable table;
  table.pooled = opt.pooled;
  for (int lo = opt.min_climbs + 1; lo + opt.bin_width - 1 <= opt.max_climbs;
       lo += opt.bin_width) {
    PartnerEffectBin bin;
    bin.climbs_min = lo;
    bin.climbs_max = lo + opt.bin_width - 1;
    table.bins.push_back(bin);
  }
  if (table.bins.empty()) throw AnalysisError("partner_effect: empty bin layout");

  struct Pooled {
    std::map<FailureCause, std::size_t> partner_counts, all_counts;
    std::size_t partner_climbs = 0, all_climbs = 0;
  };
  std::vector<Pooled> pooled(table.bins.size());
  std::vector<std::map<FailureCause, std::pair<double, std::size_t>>> ratio_acc(
      table.bins.size());

  // Stable climber order for deterministic accumulation.
  std::vector<std::string> climber_ids;
  climber_ids.reserve(ds.climbs_of.size());
  for (const auto& [id, rows] : ds.climbs_of) climber_ids.push_back(id);
  std::sort(climber_ids.begin(), climber_ids.end());

  for (const auto& id : climber_ids) {
    const auto& rows = ds.climbs_of.at(id);
    int total = static_cast<int>(rows.size());
    int bin_idx = -1;
    for (std::size_t b = 0; b < table.bins.size(); ++b)
      if (total >= table.bins[b].climbs_min && total <= table.bins[b].climbs_max)
        bin_idx = static_cast<int>(b);
    if (bin_idx < 0) continue;

    std::vector<std::size_t> partner_rows;
    for (std::size_t row : rows)
      if (flags[row]) partner_rows.push_back(row);
    if (partner_rows.empty()) continue;  // no repeat-partner climbs

    table.bins[static_cast<std::size_t>(bin_idx)].n_climbers += 1;
    OutcomeRates with_partner = climber_outcome_rates(id, ds, &partner_rows);
    OutcomeRates baseline = climber_outcome_rates(id, ds);

    auto& pool = pooled[static_cast<std::size_t>(bin_idx)];
    pool.partner_climbs += partner_rows.size();
    pool.all_climbs += rows.size();
    for (std::size_t row : rows) {
      FailureCause outcome = climb_outcome(ds.climbers[row], ds.code_map);
      ++pool.all_counts[outcome];
      if (flags[row]) ++pool.partner_counts[outcome];
    }

    for (FailureCause cat : kPartnerCategories) {
      double base = baseline.rate(cat);
      if (base <= 0.0) continue;  // zero baseline: undefined, skip cell
      auto& [sum, count] = ratio_acc[static_cast<std::size_t>(bin_idx)][cat];
      sum += with_partner.rate(cat) / base;
      count += 1;
    }
  }

  for (std::size_t b = 0; b < table.bins.size(); ++b) {
    for (FailureCause cat : kPartnerCategories) {
      PartnerEffectCell cell;
      if (opt.pooled) {
        const auto& pool = pooled[b];
        if (pool.partner_climbs > 0 && pool.all_climbs > 0) {
          auto count_of = [](const std::map<FailureCause, std::size_t>& m, FailureCause c) {
            auto it = m.find(c);
            return it == m.end() ? std::size_t{0} : it->second;
          };
          double base = static_cast<double>(count_of(pool.all_counts, cat)) /
                        static_cast<double>(pool.all_climbs);
          if (base > 0.0) {
            double with = static_cast<double>(count_of(pool.partner_counts, cat)) /
                          static_cast<double>(pool.partner_climbs);
            cell.ratio = with / base;
            cell.n_climbers = table.bins[b].n_climbers;
          }
        }
      } else {
        auto it = ratio_acc[b].find(cat);
        if (it != ratio_acc[b].end() && it->second.second > 0) {
          cell.ratio = it->second.first / static_cast<double>(it->second.second);
          cell.n_climbers = it->second.second;
        }
      }
      table.bins[b].cells[cat] = cell;
    }
  }
  return table;
}

}  // namespace ascent
