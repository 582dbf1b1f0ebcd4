#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "rigidity/report.hpp"

using namespace rigidity;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("rigidity_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

const json& check(const Report& r, const std::string& suite, const std::string& name) {
  for (const auto& c : r.json.at("suites").at(suite).at("checks"))
    if (c.at("name") == name) return c;
  throw std::runtime_error("missing check " + suite + "/" + name);
}

ExperimentConfig config(std::uint32_t ch, int vars, int trunc, std::uint32_t p, const std::string& suite,
                        const std::filesystem::path& cache) {
  ExperimentConfig c;
  c.characteristic = ch;
  c.vars = vars;
  c.trunc = trunc;
  c.prime = p;
  c.suite = suite;
  c.cache_dir = cache.string();
  return c;
}

}  // namespace

TEST(Report, UnitsExample) {
  auto r = run_suite(config(7, 1, 2, 3, "units", scratch("units")));
  const auto& c = check(r, "units", "hensel_kernel");
  EXPECT_EQ(c.at("status"), "pass");
  EXPECT_EQ(c.at("data").at("units"), 42);
  EXPECT_EQ(c.at("data").at("kernel_size"), 14);
  EXPECT_EQ(c.at("data").at("pth_powers_size"), 14);
  EXPECT_EQ(r.failures, 0u);
}

TEST(Report, QuotientComplexIsReported) {
  auto cfg = config(5, 1, 2, 3, "qcomplex", scratch("q"));
  cfg.dmax = 2;
  auto r = run_suite(cfg);
  const auto& h = check(r, "qcomplex", "quotient_homology");
  EXPECT_EQ(h.at("status"), "reported");
  EXPECT_EQ(h.at("data").at("dims").size(), 2u);
  EXPECT_EQ(check(r, "qcomplex", "subcomplex").at("status"), "pass");
  EXPECT_EQ(check(r, "qcomplex", "quotient_boundary_squared").at("status"), "pass");
}

TEST(Report, ByteIdenticalReruns) {
  auto dir = scratch("det");
  auto cfg = config(5, 1, 2, 3, "all", dir);
  cfg.dmax = 2;
  cfg.seed = 77;
  auto a = run_suite(cfg).text();
  auto b = run_suite(cfg).text();
  EXPECT_EQ(a, b);
  cfg.seed = 78;
  auto c = run_suite(cfg);
  EXPECT_NE(c.text(), a);  // suite seeds are echoed
  EXPECT_EQ(c.failures, 0u);
}

TEST(Report, CacheHitDoesNotChangeValues) {
  auto dir = scratch("cache");
  auto cfg = config(5, 1, 2, 3, "orbits", dir);
  cfg.dmax = 2;
  cfg.timings = true;
  auto miss = run_suite(cfg);
  auto hit = run_suite(cfg);
  EXPECT_EQ(miss.json.at("timings").at("orbits").at("notes").at("orbits_cache"), "miss");
  EXPECT_EQ(hit.json.at("timings").at("orbits").at("notes").at("orbits_cache"), "hit");
  miss.json.erase("timings");
  hit.json.erase("timings");
  EXPECT_EQ(miss.text(), hit.text());
  auto file = cache_file(dir, CacheKind::Orbits, *Ring::make(5, 1, 2));
  EXPECT_TRUE(std::filesystem::exists(file));
}

TEST(Report, StaleCacheIsRebuilt) {
  auto dir = scratch("stale");
  auto r = Ring::make(5, 1, 2);
  auto file = cache_file(dir, CacheKind::P1, *r);
  {
    std::ofstream out(file, std::ios::binary);
    out << "not a cache file";
  }
  auto fresh = cached_gp_bases(dir, r, 2);
  EXPECT_FALSE(fresh.hit);
  auto again = cached_gp_bases(dir, r, 2);
  EXPECT_TRUE(again.hit);
  ASSERT_EQ(again.bases.size(), fresh.bases.size());
  for (std::size_t d = 0; d < fresh.bases.size(); ++d) EXPECT_EQ(again.bases[d].flat, fresh.bases[d].flat);
  // a shallower request is served from a deeper file
  auto shallow = cached_gp_bases(dir, r, 1);
  EXPECT_TRUE(shallow.hit);
  EXPECT_EQ(shallow.bases.size(), 2u);
  // a deeper request rebuilds
  EXPECT_FALSE(cached_gp_bases(dir, r, 3).hit);
  // another ring never reads this file
  EXPECT_NE(cache_file(dir, CacheKind::P1, *Ring::make(7, 1, 2)), file);
}

TEST(Report, CacheDirFromEnvironment) {
  ::setenv("RIGIDITY_CACHE_DIR", "/tmp/rigidity_env_cache", 1);
  EXPECT_EQ(resolve_cache_dir(), std::filesystem::path("/tmp/rigidity_env_cache"));
  EXPECT_EQ(resolve_cache_dir("/x"), std::filesystem::path("/x"));
  ::unsetenv("RIGIDITY_CACHE_DIR");
  EXPECT_EQ(resolve_cache_dir(), std::filesystem::path("cache"));
}

TEST(Report, ConfigValidation) {
  ExperimentConfig c;
  c.characteristic = 6;
  EXPECT_THROW(run_suite(c), ConfigError);
  c = {};
  c.prime = 4;
  try {
    run_suite(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_STREQ(e.what(), "--prime must be prime, got 4");
  }
  c = {};
  c.suite = "nope";
  EXPECT_THROW(run_suite(c), ConfigError);
  c = {};
  c.vars = 0;
  EXPECT_THROW(run_suite(c), ConfigError);
  c = {};
  c.characteristic = 101;
  c.ext = 3;
  EXPECT_THROW(run_suite(c), ConfigError);
}

TEST(Report, PrimeEqualToCharIsSkippedNotFailed) {
  auto r = run_suite(config(3, 1, 2, 3, "units", scratch("pchar")));
  for (const auto& c : r.json.at("suites").at("units").at("checks")) EXPECT_EQ(c.at("status"), "skipped");
  EXPECT_EQ(r.failures, 0u);
}

TEST(Report, GuardDowngradesToSkipped) {
  auto cfg = config(7, 2, 3, 2, "abelian", scratch("guard"));
  auto r = run_suite(cfg);
  EXPECT_EQ(check(r, "abelian", "abelianization").at("status"), "skipped");
  EXPECT_EQ(r.failures, 0u);
}

TEST(Report, SuiteSeedsAreFixedSplits) {
  EXPECT_EQ(suite_seed(1, 0), splitmix64(1 + 0x9e3779b97f4a7c15ULL));
  EXPECT_NE(suite_seed(1, 0), suite_seed(1, 1));
  auto r = run_suite(config(5, 1, 2, 3, "units", scratch("seed")));
  EXPECT_EQ(r.json.at("suites").at("units").at("seed"), suite_seed(1, 0));
}

TEST(Report, KeysAreSorted) {
  auto r = run_suite(config(5, 0, 1, 3, "bloch", scratch("keys")));
  auto text = r.text();
  EXPECT_LT(text.find("\"config\""), text.find("\"seed\""));
  EXPECT_LT(text.find("\"seed\""), text.find("\"suites\""));
  EXPECT_EQ(text.find("timings"), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}
