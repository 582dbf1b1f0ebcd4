#pragma once

// Suite driver behind the command line tool. A report is canonical JSON:
// object keys sorted, arrays in enumeration order, no floating point.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rigidity/abelian_homology.hpp"
#include "rigidity/bloch.hpp"
#include "rigidity/cache.hpp"
#include "rigidity/congruence.hpp"
#include "rigidity/pgl2_orbit.hpp"
#include "rigidity/proj_complex.hpp"
#include "rigidity/unit_group.hpp"

namespace rigidity {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr std::array<const char*, 9> kSuites{"units", "p1",   "complex",    "orbits", "qcomplex",
                                                   "e1",    "bloch", "congruence", "abelian"};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::uint32_t characteristic = 5;
  int ext = 1;
  int vars = 1;
  int trunc = 2;
  std::uint32_t prime = 3;
  std::size_t n = 2;
  int dmax = 3;
  std::uint64_t seed = 1;
  std::string suite = "all";
  std::string out;
  std::string cache_dir;
  std::optional<std::uint32_t> second_prime;
  bool timings = false;
};

inline void validate(const ExperimentConfig& c) {
  if (!is_prime(c.characteristic))
    throw ConfigError("--char must be prime, got " + std::to_string(c.characteristic));
  if (c.ext < 1 || c.ext > 3) throw ConfigError("--ext must be in [1, 3], got " + std::to_string(c.ext));
  if (c.vars < 0 || c.vars > 3) throw ConfigError("--vars must be in [0, 3], got " + std::to_string(c.vars));
  if (c.trunc < 1 || c.trunc > 8) throw ConfigError("--trunc must be in [1, 8], got " + std::to_string(c.trunc));
  if (c.vars == 0 && c.trunc != 1) throw ConfigError("--trunc must be 1 when --vars is 0");
  if (c.vars > 0 && c.trunc < 2) throw ConfigError("--trunc must be at least 2 when --vars is positive");
  if (!is_prime(c.prime)) throw ConfigError("--prime must be prime, got " + std::to_string(c.prime));
  if (c.second_prime && !is_prime(*c.second_prime))
    throw ConfigError("--second-prime must be prime, got " + std::to_string(*c.second_prime));
  if (c.n < 1 || c.n > 4) throw ConfigError("--n must be in [1, 4], got " + std::to_string(c.n));
  if (c.dmax < 1 || c.dmax > 6) throw ConfigError("--dmax must be in [1, 6], got " + std::to_string(c.dmax));
  bool known = c.suite == "all";
  for (auto s : kSuites) known = known || c.suite == s;
  if (!known) throw ConfigError("unknown --suite '" + c.suite + "'");
  try {
    FiniteField f(c.characteristic, c.ext, {});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of suite number i in kSuites order.
inline std::uint64_t suite_seed(std::uint64_t master, std::size_t i) {
  return splitmix64(master + 0x9e3779b97f4a7c15ULL * (i + 1));
}

namespace report_detail {

using nlohmann::json;

inline json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}
inline json big(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(big(x));
  return a;
}
inline json sizes(const std::vector<TupleBasis>& b) {
  json a = json::array();
  for (const auto& x : b) a.push_back(x.size());
  return a;
}

struct Outcome {
  std::string status;
  json data = json::object();
};
inline Outcome verdict(bool ok, json data = json::object()) { return {ok ? "pass" : "fail", std::move(data)}; }
inline Outcome reported(json data) { return {"reported", std::move(data)}; }

class SuiteRun {
 public:
  void run(const std::string& name, const std::function<Outcome()>& f) {
    json rec{{"name", name}};
    try {
      auto o = f();
      rec["status"] = o.status;
      rec["data"] = std::move(o.data);
    } catch (const GuardExceeded& e) {
      rec["status"] = "skipped";
      rec["reason"] = std::string("guard: ") + e.what();
    } catch (const std::exception& e) {
      rec["status"] = "fail";
      rec["reason"] = e.what();
    }
    checks_.push_back(std::move(rec));
  }
  void skip(const std::string& name, const std::string& reason) {
    checks_.push_back({{"name", name}, {"status", "skipped"}, {"reason", reason}});
  }
  json take() { return std::move(checks_); }

 private:
  json checks_ = json::array();
};

struct Context {
  const ExperimentConfig& cfg;
  RingPtr R, k;
  std::filesystem::path cache;
  std::mt19937_64 rng;
  json timing_notes = json::object();
};

inline const char* p_is_char = "coefficient prime equals the characteristic";

inline void units_suite(Context& cx, SuiteRun& s) {
  const auto p = cx.cfg.prime;
  const std::vector<std::string> names{"unit_group", "hensel_kernel", "roots_of_unity", "unit_homology",
                                       "homology_formula_oracle"};
  if (p == cx.R->field().characteristic()) {
    for (const auto& n : names) s.skip(n, p_is_char);
    return;
  }
  std::optional<UnitGroupData> uR, uk;
  s.run("unit_group", [&] {
    uR.emplace(cx.R);
    uk.emplace(cx.k);
    return reported({{"order", uR->order()},
                     {"invariant_factors", uR->invariant_factors()},
                     {"residue_split", uR->residue_split_factors()}});
  });
  if (!uR) {
    for (std::size_t i = 1; i < names.size(); ++i) s.skip(names[i], "unit group unavailable");
    return;
  }
  auto rep = unit_prime_report(*uR, p);
  s.run("hensel_kernel", [&] {
    return verdict(rep.hensel_matches_kernel() && rep.kernel_is_pth_powers(),
                   {{"units", uR->order()},
                    {"kernel_size", rep.kernel_pi.size()},
                    {"pth_powers_size", rep.pth_powers.size()},
                    {"hensel_successes", rep.hensel_roots.size()}});
  });
  s.run("roots_of_unity", [&] {
    return verdict(rep.roots_of_unity_constant(), {{"mu_p", rep.mu_p}, {"mu_p_residue", rep.mu_p_residue}});
  });
  s.run("unit_homology", [&] {
    auto c = unit_homology_compare(*uk, *uR, p);
    return verdict(c.equal, {{"dims_residue", c.dims_k}, {"dims_ring", c.dims_R}});
  });
  s.run("homology_formula_oracle", [&] {
    bool ok = true;
    json factors = json::array();
    for (const auto* u : {&*uk, &*uR})
      for (auto d : u->invariant_factors()) {
        ok = ok && homology_dims_formula(FiniteAbelianGroup({d}), p, kDefaultHomologyDegree) ==
                       cyclic_oracle(d, p, kDefaultHomologyDegree);
        factors.push_back(d);
      }
    return verdict(ok, {{"factors", factors}, {"degrees", kDefaultHomologyDegree}});
  });
}

inline void p1_suite(Context& cx, SuiteRun& s) {
  std::optional<ProjectiveLine> line;
  s.run("p1_size", [&] {
    line.emplace(cx.R);
    const std::uint64_t a = *cx.R->size();
    return verdict(line->size() == a + a / cx.R->q(), {{"size", line->size()}, {"ring_size", a}});
  });
  if (!line) {
    s.skip("residue_fibers", "P^1 unavailable");
    s.skip("gp_basis_sizes", "P^1 unavailable");
    return;
  }
  s.run("residue_fibers", [&] {
    std::vector<std::uint64_t> fiber(cx.R->q() + 1, 0);
    for (std::size_t i = 0; i < line->size(); ++i) ++fiber.at(line->residue_class(i));
    const std::uint64_t want = *cx.R->size() / cx.R->q();
    bool ok = std::all_of(fiber.begin(), fiber.end(), [&](auto f) { return f == want; });
    return verdict(ok, {{"fibers", fiber.size()}, {"fiber_size", want}});
  });
  s.run("gp_basis_sizes", [&] {
    auto c = cached_gp_bases(cx.cache, cx.R, cx.cfg.dmax);
    cx.timing_notes["p1_cache"] = c.hit ? "hit" : "miss";
    const std::uint64_t q = cx.R->q(), f = *cx.R->size() / q;
    bool ok = true;
    std::uint64_t expect = 1;
    for (std::size_t d = 0; d < c.bases.size(); ++d) {
      expect = d > q ? 0 : expect * (q + 1 - d) * f;
      ok = ok && c.bases[d].size() == expect;
    }
    return verdict(ok, {{"sizes", sizes(c.bases)}});
  });
}

inline void complex_suite(Context& cx, SuiteRun& s) {
  std::optional<GPComplex> c;
  const std::uint32_t p = cx.cfg.prime;
  s.run("boundary_squared", [&] {
    auto b = cached_gp_bases(cx.cache, cx.R, cx.cfg.dmax);
    cx.timing_notes["p1_cache"] = b.hit ? "hit" : "miss";
    c = GPComplex::assemble(cx.R, ProjectiveLine(cx.R).points(), std::move(b.bases), p);
    return verdict(c->boundaries_compose_to_zero(), {{"sizes", sizes(c->basis)}});
  });
  const std::vector<std::string> rest{"reduced_homology", "backend_agreement", "second_prime"};
  if (!c) {
    for (const auto& n : rest) s.skip(n, "complex unavailable");
    return;
  }
  const int through = asserted_degree_limit(cx.R, cx.cfg.dmax);
  if (through < 0) {
    for (const auto& n : rest) s.skip(n, "no degree inside the finite residue field window");
    return;
  }
  std::vector<std::size_t> h;
  s.run("reduced_homology", [&] {
    h = c->homology_dims(through);
    auto all = c->homology_dims(c->dmax() - 1);
    bool ok = std::all_of(h.begin(), h.end(), [](auto v) { return v == 0; });
    return verdict(ok, {{"asserted_through", through}, {"dims", all}});
  });
  s.run("backend_agreement", [&] {
    constexpr std::uint64_t kDenseCells = 50'000'000;
    for (int d = 1; d <= through + 1; ++d)
      if (static_cast<std::uint64_t>(c->boundary[d].rows()) * c->boundary[d].cols() > kDenseCells)
        throw GuardExceeded("dense rank too large");
    auto dense = c->homology_dims(through, RankBackend::Dense);
    return verdict(dense == h, {{"dense", dense}});
  });
  if (!cx.cfg.second_prime) {
    s.skip("second_prime", "no --second-prime given");
    return;
  }
  s.run("second_prime", [&] {
    auto c2 = GPComplex::assemble(cx.R, c->vertices, c->basis, *cx.cfg.second_prime);
    auto h2 = c2.homology_dims(through);
    return verdict(h2 == h, {{"prime", *cx.cfg.second_prime}, {"dims", c2.homology_dims(c2.dmax() - 1)}});
  });
}

inline OrbitComplex cached_orbit_complex(Context& cx, const RingPtr& r, const char* note) {
  auto b = cached_orbit_bases(cx.cache, r, cx.cfg.dmax);
  cx.timing_notes[note] = b.hit ? "hit" : "miss";
  return assemble_orbit_complex(r, std::move(b.bases), cx.cfg.prime);
}

inline void orbits_suite(Context& cx, SuiteRun& s) {
  std::optional<OrbitComplex> oc;
  s.run("d0_size", [&] {
    oc = cached_orbit_complex(cx, cx.R, "orbits_cache");
    const std::uint64_t want = (cx.R->q() - 2) * (*cx.R->size() / cx.R->q());
    return verdict(oc->basis_size(0) == want, {{"sizes", sizes(oc->basis)}});
  });
  if (oc) {
    s.run("boundary_squared", [&] { return verdict(oc->boundaries_compose_to_zero()); });
    s.run("rational_face_closed", [&] { return verdict(oc->rational_face_closed); });
    s.run("orbit_homology", [&] { return reported({{"dims", oc->homology_dims(oc->dmax() - 1)}}); });
  } else {
    for (auto n : {"boundary_squared", "rational_face_closed", "orbit_homology"}) s.skip(n, "orbit complex unavailable");
  }
  s.run("five_term_faces", [&] {
    auto f = face_five_term_crosscheck(cx.R);
    return verdict(f.pass(), {{"pairs", f.pairs}, {"matched", f.matched}});
  });
  s.run("frame_invariance", [&] {
    ProjectiveLine line(cx.R);
    const std::size_t len = std::min<std::size_t>(cx.R->q() + 1, 5);
    constexpr int trials = 1000;
    int ok = 0;
    for (int t = 0; t < trials; ++t) {
      auto tup = random_gp_tuple(line, len, cx.rng);
      auto g = random_pgl2(cx.R, cx.rng);
      std::vector<ProjPoint> moved;
      for (const auto& v : tup) moved.push_back(g.apply(v));
      auto a = canonical_frame(tup).alphas, b = canonical_frame(moved).alphas;
      ok += a == b;
    }
    return verdict(ok == trials, {{"trials", trials}, {"tuple_length", len}});
  });
  s.run("stabilizers", [&] {
    auto st = stabilizer_orders(cx.R);
    return verdict(st.matches(), {{"group_order", st.group_order},
                                  {"orbit_counts", st.orbit_counts},
                                  {"stabilizers", {st.point, st.pair, st.triple}}});
  });
}

inline void qcomplex_suite(Context& cx, SuiteRun& s) {
  if (cx.R->vars() == 0) {
    for (auto n : {"subcomplex", "quotient_boundary_squared", "quotient_homology"})
      s.skip(n, "ring equals its residue field");
    return;
  }
  std::optional<QuotientComplex> q;
  s.run("subcomplex", [&] {
    auto dk = cached_orbit_complex(cx, cx.k, "orbits_cache_residue");
    auto dR = cached_orbit_complex(cx, cx.R, "orbits_cache");
    q = build_quotient_complex(dk, dR);
    json kept = json::array();
    for (const auto& v : q->keep) kept.push_back(v.size());
    return verdict(q->subcomplex_verified, {{"quotient_sizes", kept}});
  });
  if (!q) {
    s.skip("quotient_boundary_squared", "quotient unavailable");
    s.skip("quotient_homology", "quotient unavailable");
    return;
  }
  s.run("quotient_boundary_squared", [&] { return verdict(q->boundaries_compose_to_zero()); });
  s.run("quotient_homology", [&] { return reported({{"dims", q->homology}}); });
}

inline void e1_suite(Context& cx, SuiteRun& s) {
  const auto p = cx.cfg.prime;
  if (p == cx.R->field().characteristic()) {
    s.skip("e1_low_columns", p_is_char);
    return;
  }
  s.run("e1_low_columns", [&] {
    constexpr int rows = 4, pmax = 4;
    UnitGroupData uk(cx.k), uR(cx.R);
    auto a = e1_page(uk, p, rows, pmax), b = e1_page(uR, p, rows, pmax);
    bool ok = true;
    for (int c = 0; c <= 2; ++c) ok = ok && a.dims[c] == b.dims[c];
    return verdict(ok, {{"residue", a.dims}, {"ring", b.dims}, {"compared_columns", 2}, {"rows", rows}});
  });
}

inline void bloch_suite(Context& cx, SuiteRun& s) {
  const auto p = cx.cfg.prime;
  std::optional<UnitGroupData> uR, uk;
  std::optional<BlochResult> bR, bk;
  s.run("phi_kills_relations", [&] {
    uR.emplace(cx.R);
    bR = compute_bloch(*uR, p);
    return verdict(true, {{"generators", bR->pre.generators.size()}, {"relations", bR->pre.relations.rows()}});
  });
  if (!bR) {
    for (auto n : {"kernel_maps_to_zero", "pre_bloch", "bloch", "comparison_naturality", "comparison_mod_p"})
      s.skip(n, "Bloch group unavailable");
    return;
  }
  s.run("kernel_maps_to_zero", [&] {
    bool ok = true;
    for (std::size_t i = 0; i < bR->bloch.inclusion.rows(); ++i)
      ok = ok && bR->target.group.is_zero(bR->phi.left_multiply(bR->bloch.inclusion.row(i)));
    return verdict(ok, {{"kernel_generators", bR->bloch.inclusion.rows()}});
  });
  s.run("pre_bloch", [&] { return reported({{"invariant_factors", big(bR->pre_bloch_factors())}}); });
  s.run("bloch", [&] {
    return reported({{"invariant_factors", big(bR->bloch_factors())}, {"dim_mod_p", bR->bloch_mod_p()}});
  });
  std::optional<BlochComparison> cmp;
  s.run("comparison_naturality", [&] {
    uk.emplace(cx.k);
    bk = compute_bloch(*uk, p);
    cmp = bloch_comparison_mod_p(*uk, *bk, *uR, *bR);
    return verdict(cmp->verified(), {{"relations_preserved", cmp->relations_preserved},
                                     {"natural", cmp->natural},
                                     {"carries_kernel", cmp->carries_kernel}});
  });
  if (!cmp) {
    s.skip("comparison_mod_p", "comparison unavailable");
    return;
  }
  s.run("comparison_mod_p", [&] {
    return reported({{"dim_residue", cmp->dim_k},
                     {"dim_ring", cmp->dim_R},
                     {"image_dim", cmp->image_dim},
                     {"injective", cmp->injective()},
                     {"surjective", cmp->surjective()}});
  });
}

inline void congruence_suite(Context& cx, SuiteRun& s) {
  const std::vector<std::string> names{"rho_additivity", "commutator_inclusion", "layer_iso", "pth_root",
                                       "layer_acyclicity"};
  if (cx.R->vars() == 0) {
    for (const auto& n : names) s.skip(n, "no congruence filtration over a field");
    return;
  }
  const auto& R = cx.R;
  const std::size_t n = cx.cfg.n;
  const int L = R->trunc();
  const auto p = cx.cfg.prime;
  s.run("rho_additivity", [&] {
    json layers = json::array();
    bool ok = true;
    for (int i = 1; i < L; ++i) {
      auto r = rho_additivity_check(R, n, i, i == 1 ? 10000 : 1000, cx.rng);
      ok = ok && r.pass();
      layers.push_back({{"layer", i}, {"trials", r.trials}, {"additive", r.additive}, {"trace_zero", r.trace_zero}});
    }
    return verdict(ok, {{"layers", layers}});
  });
  s.run("commutator_inclusion", [&] {
    json pairs = json::array();
    bool ok = true;
    for (int i = 1; i < L; ++i)
      for (int j = i; j < L; ++j) {
        auto r = commutator_check(R, n, i, j, i == 1 && j == 1 ? 10000 : 1000, cx.rng);
        ok = ok && r.pass();
        pairs.push_back({{"i", i}, {"j", j}, {"trials", r.trials}, {"level_ok", r.level_ok}, {"leading_ok", r.leading_ok}});
      }
    return verdict(ok, {{"pairs", pairs}});
  });
  s.run("layer_iso", [&] {
    json layers = json::array();
    bool ok = true;
    for (int i = 1; i < L; ++i) {
      auto r = layer_iso_check(R, n, i, cx.rng);
      ok = ok && r.pass();
      json rec{{"layer", i},
               {"log_char_size", r.log_char_size},
               {"mode", r.exhaustive ? "exhaustive" : "sampled"},
               {"witnesses_ok", r.witnesses_ok},
               {"kernel_ok", r.kernel_ok}};
      if (r.counted_ratio_log) rec["counted_log_char"] = *r.counted_ratio_log;
      layers.push_back(std::move(rec));
    }
    return verdict(ok, {{"layers", layers}});
  });
  if (p == R->field().characteristic()) {
    s.skip("pth_root", p_is_char);
    s.skip("layer_acyclicity", p_is_char);
    return;
  }
  s.run("pth_root", [&] {
    auto r = pth_root_check(R, n, p, 1000, cx.rng);
    return verdict(r.pass(), {{"samples", r.samples}, {"ok", r.ok}, {"exponent_bound", r.exponent_bound}, {"s", r.s}});
  });
  s.run("layer_acyclicity", [&] {
    auto r = layer_acyclicity(R, n, L, p);
    json data{{"layer_elementary", r.layer_elementary}, {"log_char_quotient", r.log_char_quotient}};
    data["h1_mod_p"] = r.h1_mod_p ? json(*r.h1_mod_p) : json(nullptr);
    return verdict(r.pass(), data);
  });
}

inline void abelian_suite(Context& cx, SuiteRun& s) {
  const std::vector<std::string> names{"abelianization", "gamma_in_filtration", "lower_central_series",
                                       "h1_mod_p"};
  if (cx.R->vars() == 0) {
    for (const auto& n : names) s.skip(n, "no congruence filtration over a field");
    return;
  }
  std::optional<AbelianizationReport> ab;
  const auto& R = cx.R;
  s.run("abelianization", [&] {
    ab = abelianization_small(R, cx.cfg.n);
    std::vector<std::uint64_t> layer(layer_log_char(R, cx.cfg.n, 1), R->field().characteristic());
    json data{{"order", ab->order},
              {"invariant_factors", ab->invariant_factors},
              {"expected", layer},
              {"exception_case", ab->klingenberg_exception}};
    if (ab->klingenberg_exception) return reported(data);
    return verdict(ab->invariant_factors == layer, data);
  });
  if (!ab) {
    for (std::size_t i = 1; i < names.size(); ++i) s.skip(names[i], "abelianization unavailable");
    return;
  }
  s.run("gamma_in_filtration", [&] { return verdict(ab->gamma_in_filtration); });
  s.run("lower_central_series", [&] {
    json data{{"gamma_sizes", ab->gamma_sizes},
              {"filtration_sizes", ab->filtration_sizes},
              {"commutator_equals_c2", ab->commutator_equals_c2}};
    if (ab->klingenberg_exception) return reported(data);
    return verdict(ab->lower_central_matches() && ab->commutator_equals_c2, data);
  });
  const auto p = cx.cfg.prime;
  if (p == R->field().characteristic()) {
    s.skip("h1_mod_p", p_is_char);
    return;
  }
  s.run("h1_mod_p", [&] {
    std::size_t dim = 0;
    for (auto d : ab->invariant_factors) dim += d % p == 0;
    return verdict(dim == 0, {{"dim", dim}});
  });
}

}  // namespace report_detail

struct Report {
  nlohmann::json json;
  std::size_t failures = 0;

  std::string text() const { return json.dump(2) + "\n"; }
};

inline Report run_suite(const ExperimentConfig& cfg) {
  using report_detail::json;
  validate(cfg);
  auto R = Ring::make(FiniteField(cfg.characteristic, cfg.ext, {}), cfg.vars, cfg.trunc);
  auto k = Ring::make(R->field(), 0, 1);

  json config{{"char", cfg.characteristic}, {"ext", cfg.ext},   {"vars", cfg.vars},
              {"trunc", cfg.trunc},         {"prime", cfg.prime}, {"n", cfg.n},
              {"dmax", cfg.dmax},           {"suite", cfg.suite}, {"ring", R->descriptor()}};
  config["second_prime"] = cfg.second_prime ? json(*cfg.second_prime) : json(nullptr);

  json suites = json::object(), timings = json::object();
  std::map<std::string, std::size_t> counts{{"pass", 0}, {"fail", 0}, {"reported", 0}, {"skipped", 0}};
  const std::array<void (*)(report_detail::Context&, report_detail::SuiteRun&), kSuites.size()> fns{
      report_detail::units_suite,    report_detail::p1_suite,         report_detail::complex_suite,
      report_detail::orbits_suite,   report_detail::qcomplex_suite,   report_detail::e1_suite,
      report_detail::bloch_suite,    report_detail::congruence_suite, report_detail::abelian_suite};

  for (std::size_t i = 0; i < kSuites.size(); ++i) {
    if (cfg.suite != "all" && cfg.suite != kSuites[i]) continue;
    const std::uint64_t seed = suite_seed(cfg.seed, i);
    report_detail::Context cx{cfg, R, k, resolve_cache_dir(cfg.cache_dir), std::mt19937_64(seed)};
    report_detail::SuiteRun run;
    auto t0 = std::chrono::steady_clock::now();
    fns[i](cx, run);
    auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
    json checks = run.take();
    for (const auto& c : checks) ++counts[c["status"].get<std::string>()];
    suites[kSuites[i]] = {{"seed", seed}, {"checks", std::move(checks)}};
    timings[kSuites[i]] = {{"us", static_cast<std::int64_t>(us.count())}, {"notes", cx.timing_notes}};
  }

  Report r;
  r.failures = counts["fail"];
  r.json = {{"tool", {{"name", "rigidity"}, {"version", kToolVersion}}},
            {"config", config},
            {"seed", cfg.seed},
            {"suites", suites},
            {"summary", counts}};
  if (cfg.timings) r.json["timings"] = timings;
  return r;
}

}  // namespace rigidity
