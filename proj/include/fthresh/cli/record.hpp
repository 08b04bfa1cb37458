#pragma once

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

#include "fthresh/error.hpp"

namespace fthresh::cli {

using json = nlohmann::json;

inline constexpr const char *schema_id = "fthresh/1";
inline constexpr const char *tool_version = "0.1.0";

/// Invalid command-line parameters or sweep configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Everything needed to reproduce one computation.
struct JobSpec {
  std::string command;
  std::uint64_t prime = 0;
  std::vector<std::string> vars;
  std::string f;
  std::vector<std::string> ideals;

  std::optional<unsigned> e;
  unsigned max_e = 6;
  std::optional<std::string> t;
  std::optional<std::string> t_max;
  std::optional<unsigned> grid_level; // -E
  unsigned window = 2;
  bool jump_ideals = false;
  bool retry = true;
  std::size_t degree_budget = 1'000'000;

  /// Echo of the job: only the parameters the command reads.
  json to_json() const {
    json params = json::object();
    params["degree_budget"] = degree_budget;
    if (command == "nu")
      params["e"] = e.value_or(0);
    if (command == "threshold" || command == "fpt" || command == "testideal" ||
        command == "jumps" || command == "verify")
      params["max_e"] = max_e;
    if (command == "testideal") {
      params["t"] = t.value_or("");
      params["window"] = window;
    }
    if (command == "jumps" || command == "verify") {
      params["t_max"] = t_max.value_or("");
      params["E"] = grid_level.value_or(0);
      params["window"] = window;
    }
    if (command == "verify") {
      params["jump_ideals"] = jump_ideals;
      params["retry"] = retry;
    }
    return json{{"command", command}, {"prime", prime}, {"vars", vars},
                {"f", f},             {"J", ideals},    {"params", params}};
  }

  static JobSpec from_json(const json &j) {
    JobSpec s;
    s.command = j.at("command").get<std::string>();
    s.prime = j.at("prime").get<std::uint64_t>();
    s.vars = j.at("vars").get<std::vector<std::string>>();
    s.f = j.at("f").get<std::string>();
    s.ideals = j.at("J").get<std::vector<std::string>>();
    const auto &p = j.at("params");
    s.degree_budget = p.value("degree_budget", s.degree_budget);
    if (p.contains("e"))
      s.e = p.at("e").get<unsigned>();
    s.max_e = p.value("max_e", s.max_e);
    if (p.contains("t"))
      s.t = p.at("t").get<std::string>();
    if (p.contains("t_max"))
      s.t_max = p.at("t_max").get<std::string>();
    if (p.contains("E"))
      s.grid_level = p.at("E").get<unsigned>();
    s.window = p.value("window", s.window);
    s.jump_ideals = p.value("jump_ideals", s.jump_ideals);
    s.retry = p.value("retry", s.retry);
    return s;
  }
};

inline std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i)
    out << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  return out.str();
}

/// Hash of the job alone; identifies work already done in a result store.
inline std::string job_hash(const JobSpec &job) {
  return sha256_hex(json{{"schema", schema_id}, {"job", job.to_json()}}.dump());
}

/// Hash over schema, job and outputs. Keys are serialized in sorted order, so
/// the digest is independent of construction order; timing is excluded.
inline std::string content_hash(const JobSpec &job, const json &result) {
  return sha256_hex(
      json{{"schema", schema_id}, {"job", job.to_json()}, {"result", result}}
          .dump());
}

struct ResultRecord {
  JobSpec job;
  json result;
  double timing_ms = 0.0;
  std::string version = tool_version;
  std::string hash;

  json to_json() const {
    return json{{"schema", schema_id},
                {"kind", "result"},
                {"version", version},
                {"job", job.to_json()},
                {"job_hash", job_hash(job)},
                {"result", result},
                {"timing_ms", timing_ms},
                {"hash", hash}};
  }

  static ResultRecord from_json(const json &j) {
    if (j.at("schema").get<std::string>() != schema_id)
      throw ConfigError("unsupported record schema " + j.at("schema").dump());
    ResultRecord r;
    r.job = JobSpec::from_json(j.at("job"));
    r.result = j.at("result");
    r.timing_ms = j.at("timing_ms").get<double>();
    r.version = j.at("version").get<std::string>();
    r.hash = j.at("hash").get<std::string>();
    return r;
  }
};

/// Per-job failure entry written to a result store.
inline json error_entry(const JobSpec &job, int exit_code,
                        const std::string &message) {
  return json{{"schema", schema_id},
              {"kind", "error"},
              {"version", tool_version},
              {"job", job.to_json()},
              {"job_hash", job_hash(job)},
              {"error", {{"exit_code", exit_code}, {"message", message}}}};
}

} // namespace fthresh::cli
