#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "regret_frontier/instances.hpp"
#include "regret_frontier/lower_bound.hpp"
#include "regret_frontier/mdp.hpp"
#include "regret_frontier/semi_bandit.hpp"
#include "regret_frontier/ucbvi.hpp"

namespace regret_frontier {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Finite doubles as numbers, +-inf and nan as the strings "inf", "-inf", "nan".
Json json_number(double x);
double number_from_json(const Json& j);

/// printf %.17g.
std::string format_double(double x);

struct LoadedMdp {
  Mdp mdp;
  std::optional<TreeSpec> tree;
};

Json mdp_to_json(const Mdp& m, const std::optional<TreeSpec>& tree = std::nullopt);
/// Throws kInvalidInput on schema problems and kInvalidMdp on invalid data.
LoadedMdp mdp_from_json(const Json& j);
LoadedMdp load_mdp(const std::filesystem::path& path);
void save_mdp(const std::filesystem::path& path, const Mdp& m,
              const std::optional<TreeSpec>& tree = std::nullopt);

Json to_json(const AllocationEta& alloc);
Json to_json(const BoundReport& report);
Json to_json(const AllocationOmega& alloc, const SemiBanditProblem& problem);

struct TraceRow {
  std::uint64_t seed = 0;
  std::uint64_t k = 0;
  double cum_regret = 0.0;
  std::uint64_t m_k = 0;
  std::uint64_t optimism_violations = 0;
};

/// Columns seed,k,cum_regret,m_k,optimism_violations.
void write_trace_csv(const std::filesystem::path& path, const std::vector<SimTrace>& traces);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);
/// 16 hex digits of the FNV-1a hash of the file contents.
std::string file_hash(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::map<std::string, std::string> input_hashes;   // path -> hash
  std::vector<std::uint64_t> seeds;
  std::string version = kVersion;
  std::string created_at;                            // UTC, ISO 8601
  std::map<std::string, std::string> output_hashes;  // path -> hash
  Json parameters = Json::object();
};

Json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const Json& j);
std::string utc_timestamp();

}  // namespace regret_frontier
