#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "regret_frontier/error.hpp"
#include "regret_frontier/io.hpp"

using namespace regret_frontier;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "regret_frontier_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(JsonNumber, NonFiniteAsStrings) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(json_number(inf), Json("inf"));
  EXPECT_EQ(json_number(-inf), Json("-inf"));
  EXPECT_EQ(json_number(std::nan("")), Json("nan"));
  EXPECT_EQ(number_from_json(Json("inf")), inf);
  EXPECT_TRUE(std::isnan(number_from_json(Json("nan"))));
  EXPECT_EQ(number_from_json(json_number(0.1)), 0.1);
  EXPECT_THROW(number_from_json(Json("seven")), Error);
}

TEST(MdpJson, RandomRoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Mdp m = random_mdp(seed, 3, 2, 4, seed % 2 ? RewardFamily::kBernoulli
                                                     : RewardFamily::kGaussianUnitVariance);
    const auto text = mdp_to_json(m).dump();
    const auto back = mdp_from_json(Json::parse(text));
    EXPECT_EQ(back.mdp.reward_means(), m.reward_means());
    EXPECT_EQ(back.mdp.reward_family(), m.reward_family());
    EXPECT_EQ(back.mdp.initial().size(), m.initial().size());
    for (int h = 0; h < 4; ++h) {
      for (int s = 0; s < 3; ++s) {
        for (int a = 0; a < 2; ++a) {
          const auto r1 = m.transition(h, s, a), r2 = back.mdp.transition(h, s, a);
          EXPECT_TRUE(std::equal(r1.begin(), r1.end(), r2.begin()));
        }
      }
    }
    EXPECT_FALSE(back.tree.has_value());
  }
}

TEST(MdpJson, TreeKeepsSpecAndMask) {
  const TreeSpec spec{3, 3, 0.05, 0.2};
  const auto path = scratch("tree.json");
  save_mdp(path, tree_mdp(spec), spec);
  const auto back = load_mdp(path);
  ASSERT_TRUE(back.tree.has_value());
  EXPECT_EQ(*back.tree, spec);
  const Mdp ref = tree_mdp(spec);
  for (int h = 0; h < 3; ++h) {
    for (int s = 0; s < 7; ++s) {
      for (int a = 0; a < 3; ++a) EXPECT_EQ(back.mdp.available(h, s, a), ref.available(h, s, a));
    }
  }
}

TEST(MdpJson, SchemaErrors) {
  Json j = mdp_to_json(random_mdp(0, 2, 2, 2));
  j["schema_version"] = 99;
  EXPECT_THROW(mdp_from_json(j), Error);
  j = mdp_to_json(random_mdp(0, 2, 2, 2));
  j["transitions"][0][0][0] = Json::array({0.7, 0.7});
  try {
    mdp_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidMdp);
  }
  j = mdp_to_json(random_mdp(0, 2, 2, 2));
  j.erase("rewards");
  EXPECT_THROW(mdp_from_json(j), Error);
}

TEST(TraceCsv, RoundTrip) {
  SimTrace a;
  a.seed = 3;
  a.series = {{1, 0.1, 1, 0}, {2, 0.30000000000000004, 2, 1}};
  SimTrace b;
  b.seed = 4;
  b.series = {{1, 0.0, 0, 0}};
  const auto path = scratch("trace.csv");
  write_trace_csv(path, {a, b});
  const auto rows = read_trace_csv(path);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[1].seed, 3U);
  EXPECT_EQ(rows[1].cum_regret, 0.30000000000000004);
  EXPECT_EQ(rows[1].optimism_violations, 1U);
  EXPECT_EQ(rows[2].seed, 4U);
  EXPECT_TRUE(read_file(path).starts_with("seed,k,cum_regret,m_k,optimism_violations\n"));
}

TEST(TraceCsv, RejectsBadHeader) {
  const auto path = scratch("bad.csv");
  write_file(path, "a,b\n1,2\n");
  EXPECT_THROW(read_trace_csv(path), Error);
  EXPECT_THROW(read_trace_csv(scratch("missing.csv")), Error);
}

TEST(Hash, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  const auto path = scratch("hash.txt");
  write_file(path, "a");
  EXPECT_EQ(file_hash(path), "af63dc4c8601ec8c");
}

TEST(Manifest, RoundTrip) {
  RunManifest m;
  m.command = "simulate";
  m.arguments = {"--episodes", "16"};
  m.input_hashes = {{"x.json", "0123456789abcdef"}};
  m.seeds = {0, 1, 2};
  m.created_at = utc_timestamp();
  m.output_hashes = {{"t.csv", "fedcba9876543210"}};
  m.parameters = Json{{"episodes", 16}};
  const auto back = manifest_from_json(Json::parse(to_json(m).dump()));
  EXPECT_EQ(back.command, m.command);
  EXPECT_EQ(back.arguments, m.arguments);
  EXPECT_EQ(back.input_hashes, m.input_hashes);
  EXPECT_EQ(back.seeds, m.seeds);
  EXPECT_EQ(back.version, kVersion);
  EXPECT_EQ(back.created_at, m.created_at);
  EXPECT_EQ(back.output_hashes, m.output_hashes);
  EXPECT_EQ(back.parameters, m.parameters);
  EXPECT_EQ(m.created_at.size(), 20U);
  EXPECT_EQ(m.created_at.back(), 'Z');
}

TEST(BoundJson, UnboundedEntriesAreStrings) {
  const Mdp m = tree_mdp(TreeSpec{});
  const auto p = build_problem(m, 0.0);
  const auto j = to_json(solve(p), p);
  EXPECT_NEAR(j["value"].get<double>(), 220.0, 1e-3);
  EXPECT_NE(j.dump().find("\"inf\""), std::string::npos);
}
