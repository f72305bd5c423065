#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sparsesos/sparsesos.hpp"

namespace {

std::string human_report(const sparsesos::PipelineResult& res, bool quiet) {
  using namespace sparsesos;
  const RunReport& r = res.report;
  std::ostringstream os;
  if (quiet) {
    os << r.input << ": " << to_string(r.verdict) << '\n';
    return os.str();
  }
  os << "input:     " << r.input << '\n';
  if (r.verdict == Verdict::InputError) {
    os << "error:     " << r.message << '\n' << "result:    " << to_string(r.verdict) << '\n';
    return os.str();
  }
  os << "variables: " << r.nvars << "   #supp: " << r.nsupp << "   basis: " << r.basis_size << '\n';
  if (!r.blocks.empty()) os << "#block:    " << block_notation(r.blocks) << "   (" << r.strategy << ")\n";
  if (r.solver_status != "none")
    os << "solver:    " << r.solver_status << "   t* = " << r.t_star << "   iterations = " << r.iterations << '\n';
  if (!r.message.empty()) os << "note:      " << r.message << '\n';
  os << "result:    " << to_string(r.verdict) << '\n';
  if (r.verdict == Verdict::Sos) {
    os << "residual:  " << r.residual << '\n';
    os << "f =";
    if (res.certificate.gs.empty()) os << " 0";
    for (std::size_t i = 0; i < res.certificate.gs.size(); ++i)
      os << (i ? "\n  + " : "\n    ") << "(" << format(res.certificate.gs[i]) << ")^2";
    os << '\n';
  }
  os << "time:      " << r.times.total << " s\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify polynomials as sums of squares using cross sparsity patterns"};
  std::vector<std::string> files;
  std::string extension = "components";
  std::string basis = "newton";
  double gap_tol = 1e-8;
  int max_iter = 200;
  bool stats = false, quiet = false, verbose = false;
  app.add_option("files", files, "Polynomial files")->required();
  app.add_option("--extension", extension, "Chordal extension: components, chordal or dense")
      ->check(CLI::IsMember({"components", "chordal", "dense"}));
  app.add_option("--basis", basis, "Monomial basis: newton (reduced) or full")
      ->check(CLI::IsMember({"newton", "full"}));
  app.add_option("--tol", gap_tol, "Relative duality gap tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", max_iter, "Interior-point iteration limit")->check(CLI::PositiveNumber);
  app.add_flag("--stats", stats, "Print one JSON report per input instead of the text report");
  app.add_flag("--quiet", quiet, "Print only the verdict");
  app.add_flag("--verbose", verbose, "Log interior-point iterations to stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 3;
  }

  sparsesos::PipelineOptions opt;
  opt.extension = sparsesos::parse_extension(extension);
  opt.basis = sparsesos::parse_basis_mode(basis);
  opt.solver.gap_tol = gap_tol;
  opt.solver.max_iter = max_iter;
  opt.solver.verbose = verbose;

  std::vector<std::future<sparsesos::PipelineResult>> jobs;
  for (const auto& f : files)
    jobs.push_back(std::async(files.size() > 1 ? std::launch::async : std::launch::deferred,
                              [f, opt] { return sparsesos::run_is_sos(f, opt); }));

  int worst = 0;
  for (auto& j : jobs) {
    const auto res = j.get();
    if (stats)
      std::cout << sparsesos::to_json(res.report).dump() << '\n';
    else
      std::cout << human_report(res, quiet);
    worst = std::max(worst, res.report.exit_code());
  }
  return worst;
}
