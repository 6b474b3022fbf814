// records.hpp -- expedition and climber record ingestion, validation,
// filtering and enrichment
#pragma once

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ascent/common.hpp"
#include "ascent/csv.hpp"

namespace ascent {

enum class Sex { Male, Female, Unknown };

enum class FailureCause { Success, Altitude, Logistics, Fatigue, Accident, Other };

inline const char* to_string(FailureCause c) {
  switch (c) {
    case FailureCause::Success: return "success";
    case FailureCause::Altitude: return "altitude";
    case FailureCause::Logistics: return "logistics";
    case FailureCause::Fatigue: return "fatigue";
    case FailureCause::Accident: return "accident";
    case FailureCause::Other: return "other";
  }
  return "other";
}

inline std::optional<FailureCause> failure_cause_from_string(const std::string& s) {
  std::string k = to_lower(trim(s));
  if (k == "success") return FailureCause::Success;
  if (k == "altitude") return FailureCause::Altitude;
  if (k == "logistics") return FailureCause::Logistics;
  if (k == "fatigue") return FailureCause::Fatigue;
  if (k == "accident") return FailureCause::Accident;
  if (k == "other") return FailureCause::Other;
  return std::nullopt;
}

struct ClimberRecord {
  std::string climber_id;
  std::string expedition_id;
  std::optional<int> age;         // [10, 100] when present
  Sex sex = Sex::Unknown;
  std::string nationality;
  bool o2_ascent = false;
  bool o2_descent = false;
  bool hired = false;             // sherpa / hired personnel
  bool summited = false;
  std::string termination_code;
  bool missing_fields = false;    // some optional field absent
  int experience_above_8000 = 0;  // filled in by link_and_validate
};

struct ExpeditionRecord {
  std::string expedition_id;
  std::string peak_id;
  double peak_height = 0.0;  // meters
  int year = 0;
  double days_to_summit = 0.0;
  int camps_above_bc = 0;
  int n_members = 0;  // paying, from the expedition row
  int n_hired = 0;
  bool any_death = false;
  // Populated from climber rows at link time. The member list drives
  // per-climber analysis; n_members/n_hired drive layer values.
  std::vector<std::string> members;
  std::vector<std::size_t> member_rows;  // indices into Dataset::climbers
};

// Row-level problem found while parsing or linking. The record involved is
// excluded but the problem is never silently dropped.
struct Diagnostic {
  std::string source;  // "expeditions", "members", "link", ...
  std::size_t row = 0; // 1-based data row, 0 when not row-specific
  std::string id;
  std::string message;
};

struct FilterLogEntry {
  std::string kind;  // "expedition" | "climber"
  std::string id;
  std::string reason;
};

using CodeMap = std::unordered_map<std::string, FailureCause>;

// Shipped default mapping for the termination codes the category taxonomy
// names. Lookup is case-insensitive on the trimmed code.
inline CodeMap default_code_map() {
  CodeMap m;
  auto put = [&](const char* code, FailureCause c) { m.emplace(code, c); };
  put("success", FailureCause::Success);
  // Altitude related
  put("ams symptoms", FailureCause::Altitude);
  put("breathing problems", FailureCause::Altitude);
  put("frostbite", FailureCause::Altitude);
  put("snowblindness", FailureCause::Altitude);
  put("coldness", FailureCause::Altitude);
  // Logistics / planning
  put("lack of supplies", FailureCause::Logistics);
  put("lack of support", FailureCause::Logistics);
  put("equipment problems", FailureCause::Logistics);
  put("o2 system failure", FailureCause::Logistics);
  put("too late in day", FailureCause::Logistics);
  put("too slow", FailureCause::Logistics);
  put("insufficient time", FailureCause::Logistics);
  // Fatigue
  put("exhaustion", FailureCause::Fatigue);
  put("fatigue", FailureCause::Fatigue);
  put("weakness", FailureCause::Fatigue);
  put("lack of motivation", FailureCause::Fatigue);
  // Accident
  put("death", FailureCause::Accident);
  put("injury", FailureCause::Accident);
  put("accident", FailureCause::Accident);
  return m;
}

struct Dataset {
  std::vector<ExpeditionRecord> expeditions;
  std::vector<ClimberRecord> climbers;
  std::unordered_map<std::string, std::size_t> expedition_index;        // id -> index
  std::unordered_map<std::string, std::vector<std::size_t>> climbs_of;  // climber -> rows
  CodeMap code_map;
  std::string source;
  std::vector<FilterLogEntry> filter_log;
  std::vector<Diagnostic> diagnostics;

  const ExpeditionRecord& expedition(const std::string& id) const {
    auto it = expedition_index.find(id);
    if (it == expedition_index.end())
      throw AnalysisError("unknown expedition id: " + id);
    return expeditions[it->second];
  }
};

namespace detail {

inline std::optional<double> parse_double(const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::optional<long> parse_long(const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::optional<bool> parse_flag(const std::string& raw) {
  std::string s = trim(raw);
  if (s == "0") return false;
  if (s == "1") return true;
  return std::nullopt;
}

inline Sex parse_sex(const std::string& raw) {
  std::string s = to_lower(trim(raw));
  if (s == "m" || s == "male") return Sex::Male;
  if (s == "f" || s == "female") return Sex::Female;
  return Sex::Unknown;
}

struct ColumnSet {
  const CsvTable& table;
  std::unordered_map<std::string, std::size_t> index;

  ColumnSet(const CsvTable& t, const std::vector<std::string>& required,
            const char* what)
      : table(t) {
    for (const auto& name : required) {
      auto col = t.column(name);
      if (!col)
        throw InputError(std::string(what) + ": missing required column '" + name + "'");
      index.emplace(name, *col);
    }
  }

  const std::string& get(const std::vector<std::string>& row, const std::string& name) const {
    static const std::string empty;
    std::size_t i = index.at(name);
    return i < row.size() ? row[i] : empty;
  }
};

}  // namespace detail

template <typename Record>
struct ParseOutput {
  std::vector<Record> records;
  std::vector<Diagnostic> diagnostics;
};

// Parses expeditions.csv. Malformed rows become diagnostics, never silent
// drops; a missing column is a schema error.
inline ParseOutput<ExpeditionRecord> parse_expeditions(std::istream& in) {
  CsvTable table = read_csv(in);
  detail::ColumnSet cols(table,
                         {"exp_id", "peak_id", "peak_height_m", "year", "days_to_summit",
                          "camps_above_bc", "n_members", "n_hired", "any_death"},
                         "expeditions.csv");
  ParseOutput<ExpeditionRecord> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    std::string id = trim(cols.get(row, "exp_id"));
    auto fail = [&](const std::string& msg) {
      out.diagnostics.push_back({"expeditions", r + 1, id, msg});
    };
    if (id.empty()) { fail("empty exp_id"); continue; }

    ExpeditionRecord rec;
    rec.expedition_id = id;
    rec.peak_id = trim(cols.get(row, "peak_id"));
    auto height = detail::parse_double(cols.get(row, "peak_height_m"));
    auto year = detail::parse_long(cols.get(row, "year"));
    auto days = detail::parse_double(cols.get(row, "days_to_summit"));
    auto camps = detail::parse_long(cols.get(row, "camps_above_bc"));
    auto members = detail::parse_long(cols.get(row, "n_members"));
    auto hired = detail::parse_long(cols.get(row, "n_hired"));
    auto death = detail::parse_flag(cols.get(row, "any_death"));

    if (!height) { fail("unparseable peak_height_m"); continue; }
    if (!year) { fail("unparseable year"); continue; }
    if (!days) { fail("unparseable days_to_summit"); continue; }
    if (!camps) { fail("unparseable camps_above_bc"); continue; }
    if (!members) { fail("unparseable n_members"); continue; }
    if (!hired) { fail("unparseable n_hired"); continue; }
    if (!death) { fail("any_death must be 0 or 1"); continue; }
    if (*days < 0) { fail("days_to_summit must be >= 0"); continue; }
    if (*camps < 0) { fail("camps_above_bc must be >= 0"); continue; }
    if (*members < 0 || *hired < 0) { fail("member counts must be >= 0"); continue; }

    rec.peak_height = *height;
    rec.year = static_cast<int>(*year);
    rec.days_to_summit = *days;
    rec.camps_above_bc = static_cast<int>(*camps);
    rec.n_members = static_cast<int>(*members);
    rec.n_hired = static_cast<int>(*hired);
    rec.any_death = *death;
    out.records.push_back(std::move(rec));
  }
  return out;
}

// Parses members.csv. Age is the one optional field: an absent age keeps the
// record (flagged); an age outside [10, 100] rejects it.
inline ParseOutput<ClimberRecord> parse_members(std::istream& in) {
  CsvTable table = read_csv(in);
  detail::ColumnSet cols(table,
                         {"climber_id", "exp_id", "age", "sex", "nationality", "o2_ascent",
                          "o2_descent", "hired", "summited", "termination_code"},
                         "members.csv");
  ParseOutput<ClimberRecord> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    std::string id = trim(cols.get(row, "climber_id"));
    auto fail = [&](const std::string& msg) {
      out.diagnostics.push_back({"members", r + 1, id, msg});
    };
    if (id.empty()) { fail("empty climber_id"); continue; }

    ClimberRecord rec;
    rec.climber_id = id;
    rec.expedition_id = trim(cols.get(row, "exp_id"));
    if (rec.expedition_id.empty()) { fail("empty exp_id"); continue; }

    const std::string& age_raw = cols.get(row, "age");
    if (trim(age_raw).empty()) {
      rec.missing_fields = true;
    } else {
      auto age = detail::parse_long(age_raw);
      if (!age) { fail("unparseable age"); continue; }
      if (*age < 10 || *age > 100) { fail("age out of range [10, 100]"); continue; }
      rec.age = static_cast<int>(*age);
    }

    rec.sex = detail::parse_sex(cols.get(row, "sex"));
    rec.nationality = trim(cols.get(row, "nationality"));
    auto o2a = detail::parse_flag(cols.get(row, "o2_ascent"));
    auto o2d = detail::parse_flag(cols.get(row, "o2_descent"));
    auto hired = detail::parse_flag(cols.get(row, "hired"));
    auto summited = detail::parse_flag(cols.get(row, "summited"));
    if (!o2a) { fail("o2_ascent must be 0 or 1"); continue; }
    if (!o2d) { fail("o2_descent must be 0 or 1"); continue; }
    if (!hired) { fail("hired must be 0 or 1"); continue; }
    if (!summited) { fail("summited must be 0 or 1"); continue; }
    rec.o2_ascent = *o2a;
    rec.o2_descent = *o2d;
    rec.hired = *hired;
    rec.summited = *summited;
    rec.termination_code = trim(cols.get(row, "termination_code"));
    out.records.push_back(std::move(rec));
  }
  return out;
}

// Parses code_map.csv (termination_code, cause).
inline ParseOutput<std::pair<std::string, FailureCause>> parse_code_map(std::istream& in) {
  CsvTable table = read_csv(in);
  detail::ColumnSet cols(table, {"termination_code", "cause"}, "code_map.csv");
  ParseOutput<std::pair<std::string, FailureCause>> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    std::string code = to_lower(trim(cols.get(row, "termination_code")));
    auto cause = failure_cause_from_string(cols.get(row, "cause"));
    if (code.empty()) {
      out.diagnostics.push_back({"code_map", r + 1, "", "empty termination_code"});
      continue;
    }
    if (!cause) {
      out.diagnostics.push_back({"code_map", r + 1, code, "unknown cause"});
      continue;
    }
    out.records.emplace_back(code, *cause);
  }
  return out;
}

// Maps a raw termination code to its failure category. Total and
// deterministic: every unmapped code is Other.
inline FailureCause classify_failure(const std::string& termination_code,
                                     const CodeMap& code_map) {
  auto it = code_map.find(to_lower(trim(termination_code)));
  return it == code_map.end() ? FailureCause::Other : it->second;
}

// Outcome category of one climb: Success when summited, else the mapped
// failure cause.
inline FailureCause climb_outcome(const ClimberRecord& c, const CodeMap& code_map) {
  if (c.summited) return FailureCause::Success;
  FailureCause cause = classify_failure(c.termination_code, code_map);
  return cause == FailureCause::Success ? FailureCause::Other : cause;
}

// Links climbers to expeditions, rejects dangling references, fills member
// lists and enriches each climber row with its prior >=8000m expedition
// count (strictly earlier year).
inline Dataset link_and_validate(std::vector<ExpeditionRecord> expeditions,
                                 std::vector<ClimberRecord> climbers,
                                 CodeMap code_map = default_code_map(),
                                 std::string source = "") {
  Dataset ds;
  ds.code_map = std::move(code_map);
  ds.source = std::move(source);

  for (auto& exp : expeditions) {
    if (ds.expedition_index.count(exp.expedition_id))
      throw InputError("duplicate expedition_id: " + exp.expedition_id);
    ds.expedition_index.emplace(exp.expedition_id, ds.expeditions.size());
    exp.members.clear();
    exp.member_rows.clear();
    ds.expeditions.push_back(std::move(exp));
  }

  for (auto& climber : climbers) {
    auto it = ds.expedition_index.find(climber.expedition_id);
    if (it == ds.expedition_index.end()) {
      ds.diagnostics.push_back({"link", 0, climber.climber_id,
                                "references unknown expedition '" +
                                    climber.expedition_id + "'"});
      continue;
    }
    std::size_t row = ds.climbers.size();
    ds.expeditions[it->second].members.push_back(climber.climber_id);
    ds.expeditions[it->second].member_rows.push_back(row);
    ds.climbs_of[climber.climber_id].push_back(row);
    ds.climbers.push_back(std::move(climber));
  }

  // Experience enrichment: count this climber's expeditions on >=8000m peaks
  // in strictly earlier years.
  for (auto& climber : ds.climbers) {
    const auto& this_exp = ds.expeditions[ds.expedition_index.at(climber.expedition_id)];
    int count = 0;
    for (std::size_t other_row : ds.climbs_of.at(climber.climber_id)) {
      const auto& other = ds.climbers[other_row];
      if (other.expedition_id == climber.expedition_id) continue;
      const auto& exp = ds.expeditions[ds.expedition_index.at(other.expedition_id)];
      if (exp.year < this_exp.year && exp.peak_height >= 8000.0) ++count;
    }
    climber.experience_above_8000 = count;
  }
  return ds;
}

// Prior >=8000m expeditions of a climber strictly before `before_year`.
inline int experience_above_8000(const std::string& climber_id, const Dataset& ds,
                                 int before_year) {
  auto it = ds.climbs_of.find(climber_id);
  if (it == ds.climbs_of.end())
    throw AnalysisError("unknown climber id: " + climber_id);
  int count = 0;
  for (std::size_t row : it->second) {
    const auto& exp = ds.expeditions[ds.expedition_index.at(ds.climbers[row].expedition_id)];
    if (exp.year < before_year && exp.peak_height >= 8000.0) ++count;
  }
  return count;
}

struct FilterCriteria {
  std::optional<std::string> peak_id;
  int min_size = 12;
  bool exclude_death = true;
};

// Keeps expeditions matching the criteria; removed expeditions and their
// climber rows each get one filter-log entry.
inline Dataset filter_expeditions(const Dataset& ds, const FilterCriteria& criteria) {
  Dataset out;
  out.code_map = ds.code_map;
  out.source = ds.source;
  out.filter_log = ds.filter_log;
  out.diagnostics = ds.diagnostics;

  std::unordered_set<std::size_t> kept_exp;
  for (std::size_t i = 0; i < ds.expeditions.size(); ++i) {
    const auto& exp = ds.expeditions[i];
    std::string reason;
    if (criteria.peak_id && exp.peak_id != *criteria.peak_id)
      reason = "peak_id != " + *criteria.peak_id;
    else if (static_cast<int>(exp.members.size()) < criteria.min_size)
      reason = "fewer than " + std::to_string(criteria.min_size) + " climbers";
    else if (criteria.exclude_death && exp.any_death)
      reason = "expedition resulted in death";
    if (!reason.empty()) {
      out.filter_log.push_back({"expedition", exp.expedition_id, reason});
      for (const auto& member : exp.members)
        out.filter_log.push_back({"climber", member + "@" + exp.expedition_id,
                                  "member of excluded expedition"});
      continue;
    }
    kept_exp.insert(i);
  }

  for (std::size_t i = 0; i < ds.expeditions.size(); ++i) {
    if (!kept_exp.count(i)) continue;
    ExpeditionRecord exp = ds.expeditions[i];
    exp.members.clear();
    exp.member_rows.clear();
    out.expedition_index.emplace(exp.expedition_id, out.expeditions.size());
    out.expeditions.push_back(std::move(exp));
  }
  for (const auto& climber : ds.climbers) {
    auto it = out.expedition_index.find(climber.expedition_id);
    if (it == out.expedition_index.end()) continue;
    std::size_t row = out.climbers.size();
    out.expeditions[it->second].members.push_back(climber.climber_id);
    out.expeditions[it->second].member_rows.push_back(row);
    out.climbs_of[climber.climber_id].push_back(row);
    out.climbers.push_back(climber);
  }
  return out;
}

// Fraction of an expedition's listed members that summited. Hired personnel
// count toward the denominator unless include_hired is false.
inline double success_rate(const ExpeditionRecord& exp, const Dataset& ds,
                           bool include_hired = true) {
  int total = 0;
  int summited = 0;
  for (std::size_t row : exp.member_rows) {
    const auto& c = ds.climbers[row];
    if (!include_hired && c.hired) continue;
    ++total;
    if (c.summited) ++summited;
  }
  if (total == 0)
    throw AnalysisError("success_rate undefined: expedition " + exp.expedition_id +
                        " has no members" + (include_hired ? "" : " after excluding hired"));
  return static_cast<double>(summited) / static_cast<double>(total);
}

// Median age over all climber rows that carry an age; falls back to the
// reference value 40 when the population is empty.
inline double median_age(const Dataset& ds, double fallback = 40.0) {
  std::vector<int> ages;
  for (const auto& c : ds.climbers)
    if (c.age) ages.push_back(*c.age);
  if (ages.empty()) return fallback;
  std::sort(ages.begin(), ages.end());
  std::size_t n = ages.size();
  if (n % 2 == 1) return static_cast<double>(ages[n / 2]);
  return (static_cast<double>(ages[n / 2 - 1]) + static_cast<double>(ages[n / 2])) / 2.0;
}

}  // namespace ascent
