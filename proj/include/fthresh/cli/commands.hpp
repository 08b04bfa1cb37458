#pragma once

#include <algorithm>
#include <chrono>
#include <exception>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "fthresh/cli/record.hpp"
#include "fthresh/fthresh.hpp"

namespace fthresh::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_parse = 1,
  exit_precondition = 2,
  exit_resource = 3,
  exit_batch_failed = 4,
};

inline const std::vector<std::string> &command_names() {
  static const std::vector<std::string> names{
      "nu", "threshold", "fpt", "fedder", "testideal", "jumps", "verify"};
  return names;
}

/// Maps an exception escaping a command to its exit code.
inline int exit_code_for(const std::exception &e) {
  if (dynamic_cast<const ParseError *>(&e) || dynamic_cast<const ConfigError *>(&e))
    return exit_parse;
  if (dynamic_cast<const PreconditionError *>(&e))
    return exit_precondition;
  if (dynamic_cast<const ResourceError *>(&e) || dynamic_cast<const OverflowError *>(&e))
    return exit_resource;
  return exit_parse;
}

namespace detail {

inline PRational parse_rational_param(const std::string &name,
                                      const std::optional<std::string> &value) {
  if (!value)
    throw ConfigError("missing required parameter " + name);
  PRational r;
  try {
    r = PRational::parse(*value);
  } catch (const ParseError &) {
    throw ConfigError("parameter " + name + " = '" + *value +
                      "' is not a rational a/b");
  }
  if (r < PRational(0))
    throw ConfigError("parameter " + name + " must be >= 0");
  return r;
}

/// Largest e with p^e below 2^32.
inline unsigned max_level(std::uint64_t p) {
  unsigned e = 0;
  for (std::uint64_t q = p; q <= 0xffffffffull; q *= p)
    ++e;
  return e;
}

inline Poly parse_field(const std::string &what, const std::string &text,
                        const RingPtr &ring, const Budget &budget) {
  try {
    return parse_poly(text, ring, budget);
  } catch (const ParseError &e) {
    std::string msg = e.what();
    msg = msg.substr(0, msg.rfind(" at column"));
    throw ParseError("parse error in " + what + " at line 1, column " +
                         std::to_string(e.column()) + ": " + msg,
                     e.column(), true);
  }
}

inline Ideal parse_ideal_field(const std::string &what, const std::string &text,
                               const RingPtr &ring, const Budget &budget) {
  try {
    return Ideal(ring, parse_generators(text, ring, budget));
  } catch (const ParseError &e) {
    std::string msg = e.what();
    msg = msg.substr(0, msg.rfind(" at column"));
    throw ParseError("parse error in " + what + " at line 1, column " +
                         std::to_string(e.column()) + ": " + msg,
                     e.column(), true);
  }
}

inline json ideal_json(const Ideal &I) {
  json gens = json::array();
  for (const auto &g : groebner_basis(I).basis())
    gens.push_back(g.to_string());
  return gens;
}

inline json estimate_json(const ThresholdEstimate &est) {
  return json{{"e", est.level},
              {"nu", est.nu},
              {"lower", est.lower.to_string()},
              {"upper", est.upper.to_string()}};
}

inline json check_group_json(const CheckGroup &g) {
  return json{{"passed", g.passed}, {"witnesses", g.witnesses}};
}

inline const char *status_name(FamilyStatus s) {
  switch (s) {
  case FamilyStatus::ok:
    return "ok";
  case FamilyStatus::degenerate:
    return "degenerate";
  case FamilyStatus::not_in_radical:
    return "not_in_radical";
  }
  return "unknown";
}

} // namespace detail

/// Range checks on everything a command reads, before any computation.
inline void validate(const JobSpec &job) {
  const auto &names = command_names();
  if (std::find(names.begin(), names.end(), job.command) == names.end())
    throw ConfigError("unknown command '" + job.command + "'");
  if (job.prime < 2 || job.prime >= PrimeField::max_prime ||
      !PrimeField::is_prime(job.prime))
    throw ConfigError("-p must be a prime below 2^31, got " +
                      std::to_string(job.prime));
  if (job.vars.empty())
    throw ConfigError("-v needs at least one variable");
  if (job.f.empty())
    throw ConfigError("-f is required");
  if (job.degree_budget == 0)
    throw ConfigError("--degree-budget must be positive");
  const unsigned cap = detail::max_level(job.prime);
  if (job.max_e < 1 || job.max_e > cap)
    throw ConfigError("--max-e must be in [1, " + std::to_string(cap) + "]");
  if ((job.command == "nu" || job.command == "threshold") && job.ideals.size() != 1)
    throw ConfigError(job.command + " needs exactly one -J ideal");
  if (job.command == "verify" && job.ideals.empty())
    throw ConfigError("verify needs at least one -J ideal");
  if (job.command == "nu") {
    if (!job.e)
      throw ConfigError("nu needs -e");
    if (*job.e > cap)
      throw ConfigError("-e must be at most " + std::to_string(cap));
  }
  if (job.command == "testideal")
    detail::parse_rational_param("-t", job.t);
  if (job.command == "jumps" || job.command == "verify") {
    detail::parse_rational_param("--t-max", job.t_max);
    if (!job.grid_level)
      throw ConfigError(job.command + " needs -E");
    if (*job.grid_level > cap || *job.grid_level + 1 > job.max_e)
      throw ConfigError("-E must be below --max-e (test ideal chains need at "
                        "least one level beyond the grid)");
  }
  if (job.command == "testideal" && job.window < 1)
    throw ConfigError("--window must be at least 1");
}

/// Runs a validated job and returns its record. Library errors propagate.
inline ResultRecord run_command(const JobSpec &job) {
  validate(job);
  auto started = std::chrono::steady_clock::now();

  auto ring = make_ring(job.prime, job.vars);
  Budget budget{job.degree_budget};
  Poly f = detail::parse_field("-f", job.f, ring, budget);
  std::vector<Ideal> ideals;
  for (std::size_t i = 0; i < job.ideals.size(); ++i)
    ideals.push_back(detail::parse_ideal_field(
        "-J #" + std::to_string(i + 1), job.ideals[i], ring, budget));

  ThresholdOptions th;
  th.budget = budget;
  TestIdealOptions ti;
  ti.budget = budget;
  ti.max_e = job.max_e;
  ti.window = job.window;

  json result;
  if (job.command == "nu") {
    FrobeniusLevel level(ring->characteristic(), *job.e);
    auto n = nu(f, ideals[0], level, th);
    auto est = estimate_from_nu(n, level);
    result = json{{"nu", n.value},
                  {"degenerate", n.degenerate},
                  {"e", level.e()},
                  {"q", level.q()},
                  {"lower", est.lower.to_string()},
                  {"upper", est.upper.to_string()}};
  } else if (job.command == "threshold") {
    auto series = threshold_series(f, ideals[0], job.max_e, th);
    json levels = json::array();
    for (const auto &est : series)
      levels.push_back(detail::estimate_json(est));
    result = json{{"levels", levels},
                  {"lower", series.back().lower.to_string()},
                  {"upper", series.back().upper.to_string()},
                  {"degenerate", series.back().degenerate}};
  } else if (job.command == "fpt") {
    auto r = fpt(f, job.max_e, th);
    json levels = json::array();
    for (const auto &est : r.series)
      levels.push_back(detail::estimate_json(est));
    result = json{{"levels", levels},
                  {"lower", r.estimate.lower.to_string()},
                  {"upper", r.estimate.upper.to_string()},
                  {"guess", r.guess.to_string()}};
  } else if (job.command == "fedder") {
    result = json{{"f_pure", fedder_fpure(f, budget)}};
  } else if (job.command == "testideal") {
    auto t = detail::parse_rational_param("-t", job.t);
    auto r = test_ideal_chain(f, t, ti);
    json chain = json::array();
    for (const auto &link : r.chain)
      chain.push_back(json{{"e", link.level},
                           {"exponent", link.exponent},
                           {"ideal", detail::ideal_json(link.ideal)}});
    result = json{{"t", t.to_string()},
                  {"ideal", detail::ideal_json(r.ideal)},
                  {"e", r.level},
                  {"chain", chain}};
  } else if (job.command == "jumps") {
    auto t_max = detail::parse_rational_param("--t-max", job.t_max);
    auto profile = jumping_numbers(f, t_max, *job.grid_level, ti);
    json entries = json::array(), jumps = json::array();
    for (const auto &[t, ideal] : profile.entries)
      entries.push_back(json{{"t", t.to_string()}, {"ideal", detail::ideal_json(ideal)}});
    for (const auto &j : profile.jumps)
      jumps.push_back(json{{"left", j.left.to_string()},
                           {"right", j.right.to_string()},
                           {"guess", j.guess.to_string()}});
    result = json{{"E", profile.level}, {"entries", entries}, {"jumps", jumps}};
  } else if (job.command == "verify") {
    auto t_max = detail::parse_rational_param("--t-max", job.t_max);
    VerifyOptions vo;
    vo.threshold = th;
    vo.test_ideal = ti;
    vo.include_jump_ideals = job.jump_ideals;
    vo.retry = job.retry;
    auto report = verify_correspondence(f, ideals, t_max, *job.grid_level, vo);
    json family = json::array(), jumps = json::array();
    for (const auto &entry : report.family) {
      json item{{"ideal", detail::ideal_json(entry.ideal)},
                {"status", detail::status_name(entry.status)},
                {"contains_test_ideal", entry.contains_test_ideal},
                {"matched_jump", entry.matched_jump}};
      if (entry.estimate) {
        item["lower"] = entry.estimate->lower.to_string();
        item["upper"] = entry.estimate->upper.to_string();
      }
      family.push_back(item);
    }
    for (const auto &j : report.profile.jumps)
      jumps.push_back(json{{"left", j.left.to_string()},
                           {"right", j.right.to_string()},
                           {"guess", j.guess.to_string()}});
    result = json{
        {"passed", report.passed()},
        {"E", report.level},
        {"requested_E", report.requested_level},
        {"retried", report.retried},
        {"family", family},
        {"jumps", jumps},
        {"groups",
         {{"a_containment", detail::check_group_json(report.containment)},
          {"b_test_ideal_threshold", detail::check_group_json(report.test_ideal_threshold)},
          {"c_jumps_are_thresholds", detail::check_group_json(report.jumps_are_thresholds)}}}};
  }

  ResultRecord record;
  record.job = job;
  record.result = std::move(result);
  record.hash = content_hash(job, record.result);
  record.timing_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  return record;
}

namespace detail {

inline std::string ideal_text(const json &gens) {
  std::string out = "(";
  for (std::size_t i = 0; i < gens.size(); ++i)
    out += (i ? ", " : "") + gens[i].get<std::string>();
  return out + ")";
}

inline std::string table(const std::vector<std::vector<std::string>> &rows) {
  std::vector<std::size_t> width;
  for (const auto &row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c)
        width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::ostringstream out;
  for (const auto &row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      if (c + 1 < row.size())
        out << "  ";
    }
    out << '\n';
  }
  return out.str();
}

inline std::string levels_table(const json &levels) {
  std::vector<std::vector<std::string>> rows{{"e", "nu", "lower", "upper"}};
  for (const auto &l : levels)
    rows.push_back({std::to_string(l.at("e").get<unsigned>()),
                    std::to_string(l.at("nu").get<std::uint64_t>()),
                    l.at("lower").get<std::string>(),
                    l.at("upper").get<std::string>()});
  return table(rows);
}

inline std::string group_text(const std::string &name, const json &g) {
  std::string out = name + ": " + (g.at("passed").get<bool>() ? "pass" : "FAIL") + "\n";
  for (const auto &w : g.at("witnesses"))
    out += "  " + w.get<std::string>() + "\n";
  return out;
}

} // namespace detail

/// Human-readable rendering of a record's outputs.
inline std::string render_text(const ResultRecord &record) {
  const auto &r = record.result;
  const auto &cmd = record.job.command;
  if (cmd == "nu") {
    std::string out = "nu=" + std::to_string(r.at("nu").get<std::uint64_t>()) + "\n";
    if (r.at("degenerate").get<bool>())
      out += "note: J is the unit ideal; nu=0 by convention\n";
    return out;
  }
  if (cmd == "threshold")
    return detail::levels_table(r.at("levels")) + "c^J(f) in [" +
           r.at("lower").get<std::string>() + ", " +
           r.at("upper").get<std::string>() + "]\n";
  if (cmd == "fpt")
    return detail::levels_table(r.at("levels")) + "fpt(f) in [" +
           r.at("lower").get<std::string>() + ", " +
           r.at("upper").get<std::string>() + "]\nguess (heuristic): " +
           r.at("guess").get<std::string>() + "\n";
  if (cmd == "fedder")
    return std::string("F-pure: ") + (r.at("f_pure").get<bool>() ? "true" : "false") + "\n";
  if (cmd == "testideal")
    return "tau(f^" + r.at("t").get<std::string>() + ") = " +
           detail::ideal_text(r.at("ideal")) + "   (stable from e=" +
           std::to_string(r.at("e").get<unsigned>()) + ")\n";
  if (cmd == "jumps") {
    std::vector<std::vector<std::string>> rows{{"jump in", "guess"}};
    for (const auto &j : r.at("jumps"))
      rows.push_back({"(" + j.at("left").get<std::string>() + ", " +
                          j.at("right").get<std::string>() + "]",
                      j.at("guess").get<std::string>()});
    return detail::table(rows);
  }
  if (cmd == "verify") {
    std::string out = std::string("correspondence: ") +
                      (r.at("passed").get<bool>() ? "pass" : "FAIL") + " at E=" +
                      std::to_string(r.at("E").get<unsigned>()) +
                      (r.at("retried").get<bool>() ? " (retried)" : "") + "\n";
    const auto &g = r.at("groups");
    out += detail::group_text("(a) tau(f^c^J) in J", g.at("a_containment"));
    out += detail::group_text("(b) c^tau(f^alpha) <= alpha", g.at("b_test_ideal_threshold"));
    out += detail::group_text("(c) jumps <-> thresholds", g.at("c_jumps_are_thresholds"));
    return out;
  }
  return r.dump(2) + "\n";
}

} // namespace fthresh::cli
