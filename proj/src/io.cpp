#include "regret_frontier/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "regret_frontier/error.hpp"

namespace regret_frontier {
namespace {

const char* family_name(RewardFamily f) {
  return f == RewardFamily::kBernoulli ? "bernoulli" : "gaussian_unit";
}

RewardFamily family_from(const std::string& name) {
  if (name == "bernoulli") return RewardFamily::kBernoulli;
  if (name == "gaussian_unit") return RewardFamily::kGaussianUnitVariance;
  throw Error(ErrorCode::kInvalidInput, "unknown reward family '" + name + "'");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kInvalidInput, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

// Flattens a nested array of the given shape, row-major.
template <typename T>
void flatten(const Json& j, const std::vector<int>& shape, std::size_t depth, std::vector<T>& out) {
  if (depth == shape.size()) {
    if (!j.is_number()) throw Error(ErrorCode::kInvalidInput, "expected a number");
    out.push_back(j.get<T>());
    return;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != shape[depth]) {
    throw Error(ErrorCode::kDimensionMismatch, "array shape does not match S, A, H");
  }
  for (const auto& x : j) flatten(x, shape, depth + 1, out);
}

template <typename T>
Json nest(const std::vector<T>& flat, const std::vector<int>& shape, std::size_t depth,
          std::size_t& pos) {
  Json arr = Json::array();
  for (int i = 0; i < shape[depth]; ++i) {
    if (depth + 1 == shape.size()) {
      arr.push_back(flat[pos++]);
    } else {
      arr.push_back(nest(flat, shape, depth + 1, pos));
    }
  }
  return arr;
}

template <typename T>
Json nest(const std::vector<T>& flat, const std::vector<int>& shape) {
  std::size_t pos = 0;
  return nest(flat, shape, 0, pos);
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidInput, "bad " + what + " '" + s + "'");
  }
}

}  // namespace

Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorCode::kInvalidInput, "expected a number");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json mdp_to_json(const Mdp& m, const std::optional<TreeSpec>& tree) {
  const int S = m.num_states(), A = m.num_actions(), H = m.horizon();
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "mdp";
  j["S"] = S;
  j["A"] = A;
  j["H"] = H;
  j["reward_family"] = family_name(m.reward_family());
  j["initial"] = Json(std::vector<double>(m.initial().begin(), m.initial().end()));
  j["rewards"] = nest(m.reward_means(), {H, S, A});
  j["transitions"] = nest(m.transitions(), {H, S, A, S});
  if (!m.all_available()) {
    std::vector<int> mask(m.availability().begin(), m.availability().end());
    j["available"] = nest(mask, {H, S, A});
  }
  if (tree) {
    j["tree"] = {{"depth", tree->depth},
                 {"m", tree->leaf_actions},
                 {"eps", tree->eps},
                 {"kappa", tree->kappa}};
    j["state_layout"] = "breadth-first binary tree, root 0, children 2s+1 (L) and 2s+2 (R)";
  }
  return j;
}

LoadedMdp mdp_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidInput, "MDP document must be an object");
  if (field(j, "schema_version") != kSchemaVersion) {
    throw Error(ErrorCode::kInvalidInput, "unsupported schema_version");
  }
  const int S = field(j, "S").get<int>();
  const int A = field(j, "A").get<int>();
  const int H = field(j, "H").get<int>();
  if (S < 1 || A < 1 || H < 1) throw Error(ErrorCode::kInvalidInput, "S, A, H must be positive");
  const RewardFamily family = family_from(field(j, "reward_family").get<std::string>());
  std::vector<double> initial, rewards, transitions;
  flatten(field(j, "initial"), {S}, 0, initial);
  flatten(field(j, "rewards"), {H, S, A}, 0, rewards);
  flatten(field(j, "transitions"), {H, S, A, S}, 0, transitions);
  std::vector<std::uint8_t> available;
  if (j.contains("available")) {
    std::vector<int> mask;
    flatten(j.at("available"), {H, S, A}, 0, mask);
    available.assign(mask.begin(), mask.end());
  }
  LoadedMdp out{Mdp(S, A, H, std::move(transitions), family, std::move(rewards),
                    std::move(initial), std::move(available)),
                std::nullopt};
  if (j.contains("tree")) {
    const auto& t = j.at("tree");
    TreeSpec spec;
    spec.depth = field(t, "depth").get<int>();
    spec.leaf_actions = field(t, "m").get<int>();
    spec.eps = field(t, "eps").get<double>();
    spec.kappa = field(t, "kappa").get<double>();
    if (!(tree_mdp(spec) == out.mdp)) {
      throw Error(ErrorCode::kInvalidSpec, "tree parameters do not match the MDP data");
    }
    out.tree = spec;
  }
  return out;
}

LoadedMdp load_mdp(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, path.string() + ": " + e.what());
  }
  try {
    return mdp_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, path.string() + ": " + e.what());
  }
}

void save_mdp(const std::filesystem::path& path, const Mdp& m, const std::optional<TreeSpec>& tree) {
  write_file(path, mdp_to_json(m, tree).dump(2) + "\n");
}

Json to_json(const AllocationEta& alloc) {
  Json j;
  j["alpha"] = alloc.alpha;
  j["value"] = json_number(alloc.value);
  j["dynamics_residual"] = json_number(alloc.dynamics_residual);
  j["satisfies_dynamics"] = alloc.satisfies_dynamics;
  Json entries = Json::array();
  const int S = alloc.num_states, A = alloc.num_actions;
  for (std::size_t i = 0; i < alloc.eta.size(); ++i) {
    if (alloc.eta[i] == 0.0 && !alloc.unbounded[i]) continue;
    const int a = static_cast<int>(i % A);
    const int s = static_cast<int>((i / A) % S);
    const int h = static_cast<int>(i / (static_cast<std::size_t>(A) * S));
    entries.push_back({{"h", h}, {"s", s}, {"a", a},
                       {"eta", alloc.unbounded[i] ? Json("inf") : Json(alloc.eta[i])}});
  }
  j["eta"] = std::move(entries);
  return j;
}

Json to_json(const BoundReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = bound_kind_name(report.kind);
  j["value"] = json_number(report.value);
  for (const auto& [key, value] : report.extras) j["extras"][key] = json_number(value);
  if (!report.per_triplet.empty()) {
    Json rows = Json::array();
    for (const auto& c : report.per_triplet) {
      rows.push_back({{"h", c.h}, {"s", c.s}, {"a", c.a}, {"gap", c.gap},
                      {"complexity", json_number(c.complexity)},
                      {"contribution", json_number(c.contribution)}});
    }
    j["per_triplet"] = std::move(rows);
  }
  if (report.allocation) j["allocation"] = to_json(*report.allocation);
  return j;
}

Json to_json(const AllocationOmega& alloc, const SemiBanditProblem& problem) {
  Json j;
  j["value"] = json_number(alloc.value);
  j["worst_constraint_slack"] = json_number(alloc.worst_constraint_slack);
  j["duality_gap"] = json_number(alloc.duality_gap);
  j["newton_steps"] = alloc.newton_steps;
  Json rows = Json::array();
  for (std::size_t i = 0; i < problem.policies.size(); ++i) {
    const auto& p = problem.policies[i];
    rows.push_back({{"id", p.id},
                    {"gap", p.gap},
                    {"omega", alloc.unbounded[i] ? Json("inf") : Json(alloc.omega[i])},
                    {"constraint_lhs", alloc.unbounded[i] ? Json(nullptr)
                                                          : json_number(constraint_lhs(problem, alloc, i))},
                    {"actions", p.policy.table()}});
  }
  j["omega"] = std::move(rows);
  return j;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<SimTrace>& traces) {
  std::string out = "seed,k,cum_regret,m_k,optimism_violations\n";
  for (const auto& t : traces) {
    for (const auto& p : t.series) {
      out += std::to_string(t.seed) + ',' + std::to_string(p.k) + ',' + format_double(p.cum_regret) +
             ',' + std::to_string(p.m_k) + ',' + std::to_string(p.optimism_violations) + '\n';
    }
  }
  write_file(path, out);
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || line != "seed,k,cum_regret,m_k,optimism_violations") {
    throw Error(ErrorCode::kInvalidInput, path.string() + ": unexpected CSV header");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) throw Error(ErrorCode::kInvalidInput, path.string() + ": bad row");
    TraceRow r;
    r.seed = parse_u64(cells[0], "seed");
    r.k = parse_u64(cells[1], "episode");
    try {
      r.cum_regret = std::stod(cells[2]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidInput, path.string() + ": bad regret value");
    }
    r.m_k = parse_u64(cells[3], "m_k");
    r.optimism_violations = parse_u64(cells[4], "violation count");
    rows.push_back(r);
  }
  return rows;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string file_hash(const std::filesystem::path& path) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(read_file(path))));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

Json to_json(const RunManifest& m) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "run_manifest";
  j["command"] = m.command;
  j["arguments"] = m.arguments;
  j["input_hashes"] = m.input_hashes;
  j["seeds"] = m.seeds;
  j["version"] = m.version;
  j["created_at"] = m.created_at;
  j["output_hashes"] = m.output_hashes;
  j["parameters"] = m.parameters;
  return j;
}

RunManifest manifest_from_json(const Json& j) {
  if (field(j, "schema_version") != kSchemaVersion || field(j, "kind") != "run_manifest") {
    throw Error(ErrorCode::kInvalidInput, "not a run manifest");
  }
  RunManifest m;
  try {
    m.command = field(j, "command").get<std::string>();
    m.arguments = field(j, "arguments").get<std::vector<std::string>>();
    m.input_hashes = field(j, "input_hashes").get<std::map<std::string, std::string>>();
    m.seeds = field(j, "seeds").get<std::vector<std::uint64_t>>();
    m.version = field(j, "version").get<std::string>();
    m.created_at = field(j, "created_at").get<std::string>();
    m.output_hashes = field(j, "output_hashes").get<std::map<std::string, std::string>>();
    if (j.contains("parameters")) m.parameters = j.at("parameters");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("manifest: ") + e.what());
  }
  return m;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace regret_frontier
