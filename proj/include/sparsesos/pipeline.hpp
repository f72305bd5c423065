#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sparsesos/basis.hpp"
#include "sparsesos/certificate.hpp"
#include "sparsesos/error.hpp"
#include "sparsesos/graph.hpp"
#include "sparsesos/parser.hpp"
#include "sparsesos/polynomial.hpp"
#include "sparsesos/sdp.hpp"

namespace sparsesos {

enum class Extension { Components, Chordal, Dense };

inline Extension parse_extension(const std::string& s) {
  if (s == "components") return Extension::Components;
  if (s == "chordal") return Extension::Chordal;
  if (s == "dense") return Extension::Dense;
  throw Error("unknown extension '" + s + "'");
}

inline std::string_view to_string(Extension e) {
  switch (e) {
    case Extension::Components: return "components";
    case Extension::Chordal: return "chordal";
    case Extension::Dense: return "dense";
  }
  return "?";
}

// Process exit codes.
enum class Verdict : int { Sos = 0, Unknown = 1, NotNonnegative = 2, InputError = 3 };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Sos: return "sos";
    case Verdict::Unknown: return "unknown";
    case Verdict::NotNonnegative: return "not nonnegative (odd Newton vertex)";
    case Verdict::InputError: return "input error";
  }
  return "?";
}

// Newton: half Newton polytope plus diagonal elimination.  Full: every
// monomial of degree <= deg(f)/2, unreduced.
enum class BasisMode { Newton, Full };

inline BasisMode parse_basis_mode(const std::string& s) {
  if (s == "newton") return BasisMode::Newton;
  if (s == "full") return BasisMode::Full;
  throw Error("unknown basis mode '" + s + "'");
}

struct PipelineOptions {
  Extension extension = Extension::Components;
  BasisMode basis = BasisMode::Newton;
  SolverConfig solver{};
  double eig_tol = 1e-9;
  // A certificate is accepted when residual <= verify_tol * max(1, max |c|).
  double verify_tol = 1e-6;
};

struct StageTimes {
  double parse = 0, basis = 0, graph = 0, sdp = 0, certify = 0, total = 0;
};

/// Block multiset as (size -> count).
using BlockMultiset = std::map<std::size_t, std::size_t, std::greater<>>;

/// "i x j" terms (i blocks of size j), largest blocks first, joined by ", ".
inline std::string block_notation(const BlockMultiset& ms) {
  std::string s;
  for (const auto& [size, count] : ms) {
    if (!s.empty()) s += ", ";
    s += std::to_string(count) + " x " + std::to_string(size);
  }
  return s;
}

inline BlockMultiset block_multiset(const CliqueCover& c) {
  BlockMultiset ms;
  for (const auto& k : c.cliques) ++ms[k.size()];
  return ms;
}

struct RunReport {
  std::string input;
  std::size_t nvars = 0;
  std::size_t nsupp = 0;
  std::size_t basis_size = 0;
  std::string strategy;
  BlockMultiset blocks;
  std::string solver_status = "none";
  double t_star = 0.0;
  double residual = 0.0;
  int iterations = 0;
  StageTimes times;
  Verdict verdict = Verdict::InputError;
  std::string message;

  int exit_code() const { return static_cast<int>(verdict); }
};

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& [size, count] : r.blocks) blocks.push_back({{"count", count}, {"size", size}});
  return {
      {"input", r.input},
      {"nvars", r.nvars},
      {"nsupp", r.nsupp},
      {"basis_size", r.basis_size},
      {"strategy", r.strategy},
      {"blocks", block_notation(r.blocks)},
      {"block_multiset", blocks},
      {"status", std::string(to_string(r.verdict))},
      {"solver_status", r.solver_status},
      {"t_star", r.t_star},
      {"residual", r.residual},
      {"iterations", r.iterations},
      {"exit_code", r.exit_code()},
      {"message", r.message},
      {"times", {{"parse", r.times.parse},
                 {"basis", r.times.basis},
                 {"graph", r.times.graph},
                 {"sdp", r.times.sdp},
                 {"certify", r.times.certify},
                 {"total", r.times.total}}},
  };
}

/// Every intermediate artifact of one run.
struct PipelineResult {
  RunReport report;
  SupportSet support;
  VertexSet vertices;
  MonomialBasis basis;
  SparsityGraph graph;
  CliqueCover cover;
  BlockSDP problem;
  GramSolution solution;
  Certificate certificate;
};

namespace detail {
class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};
}  // namespace detail

/// basis -> cross sparsity graph -> extension -> blocked SDP -> certificate.
inline PipelineResult certify(const Polynomial& f, const PipelineOptions& opt = {}) {
  PipelineResult res;
  RunReport& rep = res.report;
  detail::Stopwatch sw;
  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](Verdict v) {
    rep.verdict = v;
    rep.times.total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  rep.nvars = f.nvars();
  rep.strategy = std::string(to_string(opt.extension));
  res.support = support(f);
  rep.nsupp = res.support.size();
  if (f.is_zero()) {
    rep.solver_status = "feasible";
    rep.message = "zero polynomial";
    finish(Verdict::Sos);
    return res;
  }

  res.vertices = newton_vertices(res.support);
  if (!even_vertex_check(res.vertices)) {
    rep.times.basis = sw.lap();
    for (const auto& v : res.vertices)
      if (!v.is_even()) {
        rep.message = "odd Newton vertex " + format_monomial(v, f.varnames());
        break;
      }
    finish(Verdict::NotNonnegative);
    return res;
  }
  if (opt.basis == BasisMode::Full)
    res.basis = full_basis(f.nvars(), f.degree() / 2);
  else
    res.basis = reduce_basis(initial_basis(res.vertices), res.support);
  rep.basis_size = res.basis.size();
  rep.times.basis = sw.lap();

  res.graph = build_graph(res.support, res.basis);
  switch (opt.extension) {
    case Extension::Components:
      res.cover = components_extension(res.graph).second;
      break;
    case Extension::Chordal: {
      auto ext = md_chordal_extension(res.graph);
      res.cover = maximal_cliques(ext.graph, ext.order);
      break;
    }
    case Extension::Dense:
      res.cover = dense_cover(res.basis.size());
      break;
  }
  rep.blocks = block_multiset(res.cover);
  rep.times.graph = sw.lap();

  try {
    res.problem = assemble(f, res.cover, res.basis);
  } catch (const StructuralInfeasible& e) {
    rep.solver_status = "infeasible";
    rep.message = e.what();
    rep.times.sdp = sw.lap();
    finish(Verdict::Unknown);
    return res;
  }
  res.solution = solve(res.problem, opt.solver);
  rep.solver_status = std::string(to_string(res.solution.status));
  rep.t_star = res.solution.t_star;
  rep.iterations = res.solution.iterations;
  rep.message = res.solution.message;
  rep.times.sdp = sw.lap();
  if (res.solution.status != SolveStatus::Feasible) {
    finish(Verdict::Unknown);
    return res;
  }

  res.certificate = extract(f, res.solution, res.cover, res.basis, opt.eig_tol);
  rep.residual = res.certificate.residual;
  rep.times.certify = sw.lap();
  double cmax = 1.0;
  for (const auto& [e, c] : f.terms()) cmax = std::max(cmax, std::abs(c));
  if (!(rep.residual <= opt.verify_tol * cmax)) {
    rep.message = "certificate failed verification";
    finish(Verdict::Unknown);
    return res;
  }
  finish(Verdict::Sos);
  return res;
}

/// Reads, parses and certifies one file; input problems map to InputError.
inline PipelineResult run_is_sos(const std::string& path, const PipelineOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  Polynomial f;
  try {
    f = parse_file(path);
  } catch (const Error& e) {
    PipelineResult res;
    res.report.input = path;
    res.report.strategy = std::string(to_string(opt.extension));
    res.report.verdict = Verdict::InputError;
    res.report.message = e.what();
    return res;
  }
  const double parse_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  PipelineResult res;
  try {
    res = certify(f, opt);
  } catch (const LatticeTooLarge& e) {
    res.report.verdict = Verdict::InputError;
    res.report.message = e.what();
  }
  res.report.input = path;
  res.report.times.parse = parse_time;
  res.report.times.total += parse_time;
  return res;
}

}  // namespace sparsesos
