#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rigidity/report.hpp"

int main(int argc, char** argv) {
  rigidity::ExperimentConfig cfg;
  CLI::App app{"rigidity: exact checks over truncated local rings"};
  app.add_option("--char", cfg.characteristic, "residue characteristic");
  app.add_option("--ext", cfg.ext, "extension degree of the residue field");
  app.add_option("--vars", cfg.vars, "number of variables m");
  app.add_option("--trunc", cfg.trunc, "truncation l, the ring is F[t_1..t_m]/m^l");
  app.add_option("--prime", cfg.prime, "coefficient prime p");
  app.add_option("--n", cfg.n, "matrix size for SL_n");
  app.add_option("--dmax", cfg.dmax, "top simplicial degree");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--suite", cfg.suite, "units|p1|complex|orbits|qcomplex|e1|bloch|congruence|abelian|all");
  app.add_option("--out", cfg.out, "report path, stdout when omitted");
  app.add_option("--cache-dir", cfg.cache_dir, "enumeration cache directory");
  std::uint32_t second = 0;
  auto* sp = app.add_option("--second-prime", second, "second coefficient prime for homology ranks");
  app.add_flag("--timings", cfg.timings, "include wall-clock timings and cache notes");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (*sp) cfg.second_prime = second;

  rigidity::Report rep;
  try {
    rep = rigidity::run_suite(cfg);
  } catch (const rigidity::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  const std::string text = rep.text();
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return 2;
    }
  }
  return rep.failures == 0 ? 0 : 1;
}
