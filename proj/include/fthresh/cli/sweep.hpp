#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fthresh/cli/commands.hpp"
#include "fthresh/cli/record.hpp"

namespace fthresh::cli {

/// Parsed sweep configuration. Text format, one `key = value` per line, `#`
/// starts a comment:
///
///   primes = 2, 3, 5          # required
///   vars = x, y               # required
///   poly = x^2+y^3            # required, repeatable
///   ideal = x, y              # required, repeatable; "@m" = all variables
///   e_min = 1                 # optional, default 1
///   e_max = 3                 # required
///   output = results.jsonl    # required; relative to the config file
///   degree_budget = 1000000   # optional
///   jobs = 4                  # optional; --jobs overrides
struct SweepConfig {
  std::vector<std::uint64_t> primes;
  std::vector<std::string> vars;
  std::vector<std::string> polys;
  std::vector<std::string> ideals;
  unsigned e_min = 1;
  unsigned e_max = 0;
  std::filesystem::path output;
  std::size_t degree_budget = 1'000'000;
  std::optional<unsigned> jobs;
};

namespace detail {

inline std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

inline std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (auto t = trim(item); !t.empty())
      out.push_back(t);
  return out;
}

template <typename Int>
Int parse_int(const std::string &value, std::size_t line, const std::string &key) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(value, &used);
    if (used != value.size())
      throw std::invalid_argument(value);
    return static_cast<Int>(v);
  } catch (const std::exception &) {
    throw ConfigError("config line " + std::to_string(line) + ": " + key +
                      " expects an integer, got '" + value + "'");
  }
}

} // namespace detail

inline SweepConfig parse_sweep_config(std::istream &in,
                                      const std::filesystem::path &base_dir) {
  SweepConfig cfg;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    auto text = detail::trim(raw);
    if (text.empty())
      continue;
    auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line) +
                        ": expected 'key = value'");
    auto key = detail::trim(text.substr(0, eq));
    auto value = detail::trim(text.substr(eq + 1));
    if (key == "primes") {
      for (const auto &p : detail::split_list(value))
        cfg.primes.push_back(detail::parse_int<std::uint64_t>(p, line, key));
    } else if (key == "vars") {
      cfg.vars = detail::split_list(value);
    } else if (key == "poly") {
      cfg.polys.push_back(value);
    } else if (key == "ideal") {
      cfg.ideals.push_back(value);
    } else if (key == "e_min") {
      cfg.e_min = detail::parse_int<unsigned>(value, line, key);
    } else if (key == "e_max") {
      cfg.e_max = detail::parse_int<unsigned>(value, line, key);
    } else if (key == "output") {
      std::filesystem::path out(value);
      cfg.output = out.is_absolute() ? out : base_dir / out;
    } else if (key == "degree_budget") {
      cfg.degree_budget = detail::parse_int<std::size_t>(value, line, key);
    } else if (key == "jobs") {
      cfg.jobs = detail::parse_int<unsigned>(value, line, key);
    } else {
      throw ConfigError("config line " + std::to_string(line) +
                        ": unknown key '" + key + "'");
    }
  }
  auto require = [](bool ok, const char *what) {
    if (!ok)
      throw ConfigError(std::string("config is missing ") + what);
  };
  require(!cfg.primes.empty(), "primes");
  require(!cfg.vars.empty(), "vars");
  require(!cfg.polys.empty(), "poly");
  require(!cfg.ideals.empty(), "ideal");
  require(cfg.e_max >= 1, "e_max (>= 1)");
  require(!cfg.output.empty(), "output");
  if (cfg.e_min > cfg.e_max)
    throw ConfigError("config: e_min exceeds e_max");
  return cfg;
}

inline SweepConfig load_sweep_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read sweep config " + path.string());
  return parse_sweep_config(in, path.parent_path());
}

/// Jobs in deterministic order: prime, polynomial, ideal, level.
inline std::vector<JobSpec> expand_jobs(const SweepConfig &cfg) {
  std::vector<JobSpec> jobs;
  for (auto p : cfg.primes)
    for (const auto &f : cfg.polys)
      for (const auto &J : cfg.ideals)
        for (unsigned e = cfg.e_min; e <= cfg.e_max; ++e) {
          JobSpec job;
          job.command = "nu";
          job.prime = p;
          job.vars = cfg.vars;
          job.f = f;
          job.ideals = {J};
          job.e = e;
          job.degree_budget = cfg.degree_budget;
          jobs.push_back(std::move(job));
        }
  return jobs;
}

struct SweepSummary {
  std::size_t jobs = 0;
  std::size_t skipped = 0;
  std::size_t records = 0;
  std::size_t errors = 0;

  int exit_code() const {
    return (errors > 0 && records == 0) ? exit_batch_failed : exit_ok;
  }
};

/// job_hash values already present in a line-delimited store.
inline std::set<std::string> existing_job_hashes(const std::filesystem::path &store) {
  std::set<std::string> seen;
  std::ifstream in(store);
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty())
      continue;
    auto j = json::parse(line, nullptr, false);
    if (!j.is_discarded() && j.contains("job_hash"))
      seen.insert(j.at("job_hash").get<std::string>());
  }
  return seen;
}

/// Runs every job not yet in the store on `workers` threads and appends one
/// line per job (record or error entry) in job order through a single writer.
inline SweepSummary run_sweep(const SweepConfig &cfg, unsigned workers) {
  auto all = expand_jobs(cfg);
  auto seen = existing_job_hashes(cfg.output);
  SweepSummary summary;
  summary.jobs = all.size();
  std::vector<JobSpec> todo;
  for (auto &job : all) {
    if (seen.count(job_hash(job)))
      ++summary.skipped;
    else
      todo.push_back(std::move(job));
  }
  if (todo.empty())
    return summary;

  if (cfg.output.has_parent_path())
    std::filesystem::create_directories(cfg.output.parent_path());
  std::ofstream out(cfg.output, std::ios::app);
  if (!out)
    throw ConfigError("cannot open output " + cfg.output.string());

  std::vector<std::optional<std::pair<bool, std::string>>> done(todo.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      auto i = next.fetch_add(1);
      if (i >= todo.size())
        return;
      std::pair<bool, std::string> line;
      try {
        line = {true, run_command(todo[i]).to_json().dump()};
      } catch (const std::exception &e) {
        line = {false, error_entry(todo[i], exit_code_for(e), e.what()).dump()};
      }
      {
        std::lock_guard lock(mutex);
        done[i] = std::move(line);
      }
      ready.notify_one();
    }
  };

  workers = std::max(1u, std::min<unsigned>(workers, todo.size()));
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back(worker);

  for (std::size_t i = 0; i < todo.size(); ++i) {
    std::pair<bool, std::string> line;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return done[i].has_value(); });
      line = std::move(*done[i]);
      done[i].reset();
    }
    out << line.second << '\n';
    out.flush();
    (line.first ? summary.records : summary.errors) += 1;
  }
  return summary;
}

} // namespace fthresh::cli
