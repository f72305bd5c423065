#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

#include "sparsesos/generators.hpp"
#include "sparsesos/polynomial.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Benchmark polynomial generators"};
  app.require_subcommand(1);

  int m = 1;
  auto* bm = app.add_subcommand("bm", "The B_m family in 3m+2 variables");
  bm->add_option("m", m, "Family index")->required()->check(CLI::PositiveNumber);

  std::size_t n = 4, k = 3;
  int d = 2;
  double p = 0.3;
  std::uint64_t seed = 1;
  auto* rp = app.add_subcommand("randpoly", "A random sparse sum of k squares");
  rp->add_option("--n", n, "Number of variables")->check(CLI::PositiveNumber);
  rp->add_option("--d", d, "Degree of each square's base polynomial")->check(CLI::NonNegativeNumber);
  rp->add_option("--k", k, "Number of squares")->check(CLI::PositiveNumber);
  rp->add_option("--p", p, "Monomial inclusion probability")->check(CLI::Range(0.0, 1.0));
  rp->add_option("--seed", seed, "Generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bm) {
      std::cout << sparsesos::format(sparsesos::gen_bm(m)) << '\n';
    } else {
      std::cerr << "seed: " << seed << '\n';
      std::cout << sparsesos::format(sparsesos::gen_randpoly(n, d, k, p, seed)) << '\n';
    }
  } catch (const sparsesos::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
