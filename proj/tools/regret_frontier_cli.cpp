#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "regret_frontier/error.hpp"
#include "regret_frontier/instances.hpp"
#include "regret_frontier/io.hpp"
#include "regret_frontier/kl.hpp"
#include "regret_frontier/lower_bound.hpp"
#include "regret_frontier/optimality.hpp"
#include "regret_frontier/ordering.hpp"
#include "regret_frontier/rng.hpp"
#include "regret_frontier/semi_bandit.hpp"
#include "regret_frontier/ucbvi.hpp"

namespace fs = std::filesystem;
using namespace regret_frontier;

namespace {

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto number = [&](std::string s) {
    if (!s.empty() && (s[0] == 's' || s[0] == 'S')) s.erase(0, 1);
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used);
      if (used == s.size() && !s.empty()) return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::kInvalidInput, "bad seed '" + s + "'");
  };
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(number(item));
      continue;
    }
    const auto lo = number(item.substr(0, dots)), hi = number(item.substr(dots + 2));
    if (hi < lo || hi - lo > 100000) throw Error(ErrorCode::kInvalidInput, "bad seed range");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw Error(ErrorCode::kInvalidInput, "no seeds given");
  return seeds;
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("REGRET_FRONTIER_THREADS")) {
    try {
      n = static_cast<unsigned>(std::max(1, std::stoi(env)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidInput, "REGRET_FRONTIER_THREADS must be a positive integer");
    }
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

// One trace per seed, in seed order regardless of scheduling.
std::vector<SimTrace> simulate_seeds(const Mdp& m, UcbviConfig cfg,
                                     const std::vector<std::uint64_t>& seeds) {
  std::vector<SimTrace> traces(seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t i; (i = next++) < seeds.size();) {
      try {
        UcbviConfig c = cfg;
        c.seed = seeds[i];
        traces[i] = run(m, c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = worker_count(seeds.size());
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return traces;
}

struct SimulateArgs {
  std::string mdp;
  std::uint64_t episodes = 1024;
  std::string seeds = "0";
  std::string out = "trace.csv";
  std::string manifest;
  std::uint64_t record_every = 1;
  double delta = 0.0;
  bool deterministic_rewards = false;
};

RunManifest simulate(const SimulateArgs& a, const std::vector<std::string>& argv) {
  const auto loaded = load_mdp(a.mdp);
  UcbviConfig cfg;
  cfg.episodes = a.episodes;
  cfg.record_every = a.record_every;
  cfg.deterministic_rewards = a.deterministic_rewards;
  if (a.delta > 0.0) cfg.delta = a.delta;
  validate_config(cfg);
  const auto seeds = parse_seeds(a.seeds);
  const auto traces = simulate_seeds(loaded.mdp, cfg, seeds);
  for (const auto& t : traces) {
    if (!regret_identity_check(t, loaded.mdp).holds) {
      throw Error(ErrorCode::kNumericalFailure, "regret decomposition identity failed");
    }
  }
  write_trace_csv(a.out, traces);

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.arguments = argv;
  manifest.input_hashes[a.mdp] = file_hash(a.mdp);
  manifest.seeds = seeds;
  manifest.created_at = utc_timestamp();
  manifest.output_hashes[a.out] = file_hash(a.out);
  manifest.parameters = {{"mdp", a.mdp},
                         {"episodes", a.episodes},
                         {"seeds", a.seeds},
                         {"out", a.out},
                         {"record_every", a.record_every},
                         {"delta", cfg.effective_delta()},
                         {"delta_given", a.delta > 0.0},
                         {"deterministic_rewards", a.deterministic_rewards}};
  return manifest;
}

std::string svg_chart(const std::vector<std::pair<std::uint64_t, double>>& curve) {
  const double w = 640, h = 400, pad = 50;
  const double x0 = std::log(static_cast<double>(curve.front().first));
  const double x1 = std::max(x0 + 1e-9, std::log(static_cast<double>(curve.back().first)));
  double y1 = 0.0;
  for (const auto& p : curve) y1 = std::max(y1, p.second);
  if (y1 <= 0.0) y1 = 1.0;
  std::string pts;
  for (const auto& p : curve) {
    const double x = pad + (std::log(static_cast<double>(p.first)) - x0) / (x1 - x0) * (w - 2 * pad);
    const double y = h - pad - p.second / y1 * (h - 2 * pad);
    pts += format_double(x) + "," + format_double(y) + " ";
  }
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\">\n";
  svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<line x1=\"50\" y1=\"350\" x2=\"590\" y2=\"350\" stroke=\"black\"/>\n";
  svg += "<line x1=\"50\" y1=\"50\" x2=\"50\" y2=\"350\" stroke=\"black\"/>\n";
  svg += "<text x=\"320\" y=\"385\" text-anchor=\"middle\">log k</text>\n";
  svg += "<text x=\"15\" y=\"200\" transform=\"rotate(-90 15 200)\" text-anchor=\"middle\">mean cumulative regret (max " +
         format_double(y1) + ")</text>\n";
  svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  svg += "</svg>\n";
  return svg;
}

struct ReportArgs {
  std::string traces;
  std::string mdp;
  double alpha = 0.0;
  std::string svg;
  std::string out;
};

Json report(const ReportArgs& a) {
  if (!fs::is_directory(a.traces)) {
    throw Error(ErrorCode::kInvalidInput, a.traces + " is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(a.traces)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::uint64_t, std::map<std::uint64_t, TraceRow>> by_seed;
  for (const auto& f : files) {
    for (const auto& r : read_trace_csv(f)) by_seed[r.seed][r.k] = r;
  }
  if (by_seed.empty()) throw Error(ErrorCode::kEmptyInput, "no trace rows under " + a.traces);

  // Episodes recorded for every seed.
  std::vector<std::uint64_t> ks;
  for (const auto& [k, row] : by_seed.begin()->second) {
    bool everywhere = true;
    for (const auto& [seed, rows] : by_seed) everywhere = everywhere && rows.count(k);
    if (everywhere) ks.push_back(k);
  }
  if (ks.empty()) throw Error(ErrorCode::kEmptyInput, "traces share no episode index");
  const double n = static_cast<double>(by_seed.size());
  std::vector<double> mean(ks.size(), 0.0);
  Json curve = Json::array();
  std::vector<std::pair<std::uint64_t, double>> points;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    for (const auto& [seed, rows] : by_seed) mean[i] += rows.at(ks[i]).cum_regret / n;
    curve.push_back({{"k", ks[i]}, {"mean_cum_regret", mean[i]}});
    points.emplace_back(ks[i], mean[i]);
  }
  const std::uint64_t K = ks.back();
  double mean_mk = 0.0, violations = 0.0;
  Json seeds = Json::array();
  for (const auto& [seed, rows] : by_seed) {
    seeds.push_back(seed);
    mean_mk += static_cast<double>(rows.at(K).m_k) / n;
    violations += static_cast<double>(rows.at(K).optimism_violations);
  }

  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "regret_report";
  j["seeds"] = seeds;
  j["episodes"] = K;
  j["mean_curve"] = curve;
  try {
    const auto fit = log_regret_fit(ks, mean, K);
    j["log_fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2},
                    {"points", fit.points}};
  } catch (const Error& e) {
    j["log_fit"] = {{"error", e.what()}};
  }
  j["final"] = {{"mean_cum_regret", mean.back()},
                {"mean_suboptimal_episodes", mean_mk},
                {"optimism_violation_rate", violations / (n * static_cast<double>(K))}};

  if (!a.mdp.empty()) {
    const auto loaded = load_mdp(a.mdp);
    const double gmin = min_positive_policy_gap(loaded.mdp);
    const double bound = expected_regret_bound(loaded.mdp, K, gmin);
    j["bound_constant_check"] = {{"gamma_min", gmin},
                                 {"expected_regret_bound", bound},
                                 {"mean_cum_regret", mean.back()},
                                 {"holds", mean.back() <= bound}};
    const auto ord = verify_bound_ordering(loaded.mdp, a.alpha);
    Json table;
    table["no_dynamics"] = ord.no_dynamics;
    if (ord.exact) table["exact"] = *ord.exact;
    if (ord.closed_form) table["closed_form"] = *ord.closed_form;
    if (ord.tree && ord.tree->kappa > 0.0) table["cap"] = 12.0 * ord.sa_over_delta_max;
    table["sa_over_delta_min"] = ord.sa_over_delta_min;
    table["sa_over_delta_max"] = ord.sa_over_delta_max;
    table["empirical_regret"] = mean.back();
    Json lines = Json::array();
    for (const auto& c : ord.checks) {
      lines.push_back({{"check", c.name},
                       {"line", format_double(c.lhs) + " <= " + format_double(c.rhs)},
                       {"holds", c.holds}});
    }
    table["checks"] = lines;
    j["ordering"] = table;
  }
  if (!a.svg.empty()) write_file(a.svg, svg_chart(points));
  return j;
}

// Brute-force cross-checks on small random instances.
int selftest() {
  int failures = 0;
  const auto line = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  bool values = true, inclusion = true, on_support = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Mdp m = random_mdp(seed, 2, 2, 2);
    const auto sol = backward_induction(m);
    double best = -1e300;
    for (const auto& pi : enumerate_policies(m)) best = std::max(best, policy_value(m, pi).value0);
    values = values && std::abs(best - sol.v0star) <= 1e-9;
    const auto sets = optimal_policy_sets(m, sol);
    for (const auto& pi : sets.bellman_optimal) {
      inclusion = inclusion && std::find(sets.return_optimal.begin(), sets.return_optimal.end(),
                                         pi) != sets.return_optimal.end();
    }
    on_support = on_support && check_opt_act_vs_rho(m, sol);
  }
  line("optimal value equals best enumerated policy value", values);
  line("Bellman-optimal policies are return-optimal", inclusion);
  line("optimal actions on visited states of optimal policies", on_support);

  SplitMix64 rng(7);
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const double p0 = 0.05 + 0.9 * rng.uniform();
    const std::vector<double> p{p0, 1.0 - p0}, v{rng.uniform(), 1.0 + rng.uniform()};
    const double mean = p0 * v[0] + (1 - p0) * v[1];
    const double c = mean + (0.01 + 0.98 * rng.uniform()) * (v[1] - mean);
    // Two-point support: the mean constraint pins q_1 and kl is monotone beyond it.
    const double q1 = std::min(1.0, (c - v[0]) / (v[1] - v[0]));
    const std::vector<double> q{1.0 - q1, q1};
    worst = std::max(worst, std::abs(kinf_transition(p, v, c).value - kl_categorical(p, q)));
  }
  line("Kinf matches two-point closed form", worst <= 1e-8);

  TreeSpec spec;
  spec.eps = 0.05;
  spec.kappa = 0.2;
  const Mdp tree = tree_mdp(spec);
  UcbviConfig cfg;
  cfg.episodes = 256;
  cfg.seed = 3;
  line("regret decomposition identity on a short run",
       regret_identity_check(run(tree, cfg), tree).holds);
  line("tree closed form equals 245 at depth 3, m 2, eps 0.1",
       tree_closed_form(TreeSpec{}, 0.0).value == 245.0);
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Problem-dependent regret lower bounds and UCBVI simulation for tabular MDPs"};
  app.require_subcommand(1);
  std::string out;

  auto* gen = app.add_subcommand("gen", "Write an MDP instance as JSON");
  gen->require_subcommand(1);
  TreeSpec tree_spec;
  auto* gen_tree = gen->add_subcommand("tree", "Binary-tree instance");
  gen_tree->add_option("--depth", tree_spec.depth, "Horizon H (tree depth)")->capture_default_str();
  gen_tree->add_option("--m", tree_spec.leaf_actions, "Actions at the leaves")->capture_default_str();
  gen_tree->add_option("--eps", tree_spec.eps, "Reward of the leftmost leaf")->capture_default_str();
  gen_tree->add_option("--kappa", tree_spec.kappa, "Reward of the rightmost leaf, 0 or >= 2 eps")
      ->capture_default_str();
  gen_tree->add_option("--out", out, "Output path, stdout when omitted");

  std::uint64_t seed = 0;
  int S = 2, A = 2, H = 2;
  std::string family = "gaussian";
  bool full_support = false;
  auto* gen_random = gen->add_subcommand("random", "Seeded random MDP");
  gen_random->add_option("--seed", seed)->capture_default_str();
  gen_random->add_option("--S", S)->capture_default_str();
  gen_random->add_option("--A", A)->capture_default_str();
  gen_random->add_option("--H", H)->capture_default_str();
  gen_random->add_option("--family", family, "gaussian or bernoulli")
      ->check(CLI::IsMember({"gaussian", "bernoulli"}));
  gen_random->add_flag("--full-support", full_support,
                       "Mix transitions with uniform and redraw rewards until certified");
  gen_random->add_option("--out", out);

  auto* bound = app.add_subcommand("bound", "Evaluate a lower or upper bound");
  bound->require_subcommand(1);
  std::string mdp_path;
  double alpha = 0.0;
  const auto mdp_options = [&](CLI::App* sub, bool with_alpha) {
    sub->add_option("--mdp", mdp_path, "MDP JSON file")->required()->check(CLI::ExistingFile);
    if (with_alpha) sub->add_option("--alpha", alpha, "Exponent in [0, 1)")->capture_default_str();
    sub->add_option("--out", out);
  };
  auto* b_full = bound->add_subcommand("full-support", "Closed form for full-support MDPs");
  mdp_options(b_full, true);
  bool remaining = false;
  auto* b_pinsker = bound->add_subcommand("pinsker", "Sum of 2 (H - h)^2 / gap");
  mdp_options(b_pinsker, false);
  b_pinsker->add_flag("--remaining-stages", remaining, "Use 2 (H - h + 1)^2 / gap");
  bool known_dynamics = false;
  auto* b_nodyn = bound->add_subcommand("no-dynamics", "Decoupled bound without flow constraints");
  mdp_options(b_nodyn, true);
  b_nodyn->add_flag("--known-dynamics", known_dynamics,
                    "Reward-only complexity on the optimal state support");
  bool no_dynamics = false;
  auto* b_semi = bound->add_subcommand("semibandit", "Known-dynamics policy program");
  mdp_options(b_semi, true);
  b_semi->add_flag("--no-dynamics", no_dynamics, "Solve the decoupled variant instead");
  auto* b_tree = bound->add_subcommand("tree-exact", "Closed form for the tree instance");
  b_tree->add_option("--depth", tree_spec.depth)->capture_default_str();
  b_tree->add_option("--m", tree_spec.leaf_actions)->capture_default_str();
  b_tree->add_option("--eps", tree_spec.eps)->capture_default_str();
  b_tree->add_option("--kappa", tree_spec.kappa)->capture_default_str();
  b_tree->add_option("--alpha", alpha)->capture_default_str();
  b_tree->add_option("--out", out);
  auto* b_order = bound->add_subcommand("ordering", "Compare the bounds on one instance");
  mdp_options(b_order, true);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run UCBVI over several seeds");
  simulate_cmd->add_option("--mdp", sim.mdp)->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--episodes", sim.episodes, "K")->capture_default_str();
  simulate_cmd->add_option("--seeds", sim.seeds, "e.g. 0..19 or 1,2,5")->capture_default_str();
  simulate_cmd->add_option("--out", sim.out, "CSV trace path")->capture_default_str();
  simulate_cmd->add_option("--manifest", sim.manifest, "Manifest path, <out>.manifest.json by default");
  simulate_cmd->add_option("--record-every", sim.record_every)->capture_default_str();
  simulate_cmd->add_option("--delta", sim.delta, "Confidence, 1/K when omitted");
  simulate_cmd->add_flag("--deterministic-rewards", sim.deterministic_rewards);

  ReportArgs rep;
  auto* report_cmd = app.add_subcommand("report", "Aggregate CSV traces");
  report_cmd->add_option("--traces", rep.traces, "Directory of CSV traces")->required();
  report_cmd->add_option("--mdp", rep.mdp, "Adds the bound check and the ordering table");
  report_cmd->add_option("--alpha", rep.alpha)->capture_default_str();
  report_cmd->add_option("--svg", rep.svg, "Write a regret vs log k chart");
  report_cmd->add_option("--out", rep.out);

  auto* selftest_cmd = app.add_subcommand("selftest", "Brute-force cross-checks");

  std::string manifest_path;
  std::string replay_out;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a simulate manifest and compare outputs");
  replay_cmd->add_option("--manifest", manifest_path)->required()->check(CLI::ExistingFile);
  replay_cmd->add_option("--out", replay_out, "Where to write the re-run trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen_tree) {
      const Mdp m = tree_mdp(tree_spec);
      if (out.empty()) std::cout << mdp_to_json(m, tree_spec).dump(2) << "\n";
      else save_mdp(out, m, tree_spec);
    } else if (*gen_random) {
      const RewardFamily f =
          family == "bernoulli" ? RewardFamily::kBernoulli : RewardFamily::kGaussianUnitVariance;
      const Mdp m = full_support ? full_support_mdp(seed, S, A, H, f).mdp : random_mdp(seed, S, A, H, f);
      if (out.empty()) std::cout << mdp_to_json(m).dump(2) << "\n";
      else save_mdp(out, m);
    } else if (*b_tree) {
      emit(to_json(tree_closed_form(tree_spec, alpha)), out);
    } else if (*bound) {
      const auto loaded = load_mdp(mdp_path);
      const Mdp& m = loaded.mdp;
      if (*b_full) {
        emit(to_json(full_support_bound(m, alpha)), out);
      } else if (*b_pinsker) {
        emit(to_json(pinsker_upper_bound(
                 m, remaining ? PinskerFactor::kRemainingStages : PinskerFactor::kAsPrinted)),
             out);
      } else if (*b_nodyn) {
        emit(to_json(no_dynamics_bound(
                 m, alpha, known_dynamics ? NoDynamicsMode::kKnownDynamics : NoDynamicsMode::kGeneral)),
             out);
      } else if (*b_semi) {
        const auto problem = build_problem(m, alpha);
        Json j;
        j["schema_version"] = kSchemaVersion;
        if (no_dynamics) {
          const auto eta = solve_no_dynamics(m, problem);
          j["kind"] = "semi_bandit_no_dynamics";
          j["value"] = eta.value;
          j["eta"] = to_json(eta);
        } else {
          const auto omega = solve(problem);
          j["kind"] = bound_kind_name(BoundKind::kSemiBanditExact);
          j["value"] = omega.value;
          j["residuals"] = {{"worst_constraint_slack", omega.worst_constraint_slack},
                            {"duality_gap", omega.duality_gap}};
          j["allocation"] = to_json(omega, problem);
        }
        emit(j, out);
      } else if (*b_order) {
        const auto ord = verify_bound_ordering(m, alpha);
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["kind"] = "bound_ordering";
        j["no_dynamics"] = ord.no_dynamics;
        if (ord.exact) j["exact"] = *ord.exact;
        if (ord.closed_form) j["closed_form"] = *ord.closed_form;
        j["sa_over_delta_min"] = ord.sa_over_delta_min;
        j["sa_over_delta_max"] = ord.sa_over_delta_max;
        Json checks = Json::array();
        for (const auto& c : ord.checks) {
          checks.push_back({{"check", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
        }
        j["checks"] = checks;
        j["all_hold"] = ord.all_hold();
        emit(j, out);
        if (!ord.all_hold()) return 3;
      }
    } else if (*simulate_cmd) {
      const auto manifest = simulate(sim, std::vector<std::string>(argv, argv + argc));
      const std::string path = sim.manifest.empty() ? sim.out + ".manifest.json" : sim.manifest;
      write_file(path, to_json(manifest).dump(2) + "\n");
    } else if (*report_cmd) {
      emit(report(rep), rep.out);
    } else if (*selftest_cmd) {
      return selftest();
    } else if (*replay_cmd) {
      const auto manifest = manifest_from_json(Json::parse(read_file(manifest_path)));
      if (manifest.command != "simulate") {
        throw Error(ErrorCode::kInvalidInput, "only simulate manifests can be replayed");
      }
      const auto& p = manifest.parameters;
      SimulateArgs a;
      a.mdp = p.at("mdp").get<std::string>();
      a.episodes = p.at("episodes").get<std::uint64_t>();
      a.seeds = p.at("seeds").get<std::string>();
      a.record_every = p.at("record_every").get<std::uint64_t>();
      if (p.at("delta_given").get<bool>()) a.delta = p.at("delta").get<double>();
      a.deterministic_rewards = p.at("deterministic_rewards").get<bool>();
      const std::string original = p.at("out").get<std::string>();
      a.out = replay_out.empty() ? original + ".replay.csv" : replay_out;
      if (file_hash(a.mdp) != manifest.input_hashes.at(a.mdp)) {
        throw Error(ErrorCode::kInvalidInput, "input MDP changed since the manifest was written");
      }
      const auto rerun = simulate(a, {});
      const std::string expected = manifest.output_hashes.at(original);
      const std::string actual = rerun.output_hashes.at(a.out);
      Json j{{"schema_version", kSchemaVersion},
             {"kind", "replay"},
             {"output", a.out},
             {"expected_hash", expected},
             {"actual_hash", actual},
             {"reproduced", expected == actual}};
      std::cout << j.dump(2) << "\n";
      if (expected != actual) return 3;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error [InvalidInput]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
