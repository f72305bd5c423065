#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstddef>
#include <vector>

#include "sparsesos/basis.hpp"
#include "sparsesos/error.hpp"
#include "sparsesos/graph.hpp"
#include "sparsesos/polynomial.hpp"
#include "sparsesos/sdp.hpp"

namespace sparsesos {

/// Explicit decomposition f ~ sum_i g_i^2.
struct Certificate {
  std::vector<Polynomial> gs;
  std::vector<std::size_t> block_of;  // clique index each g_i came from
  double residual = 0.0;
};

/// Spectral factorization of every Gram block: each eigenpair with
/// lambda > eig_tol contributes sqrt(lambda) * v' x^{B_k}.
inline Certificate extract(const Polynomial& f, const GramSolution& sol, const CliqueCover& cover,
                           const MonomialBasis& B, double eig_tol = 1e-9) {
  if (sol.status != SolveStatus::Feasible) throw Error("cannot extract a certificate from a non-feasible solution");
  if (sol.Qs.size() != cover.cliques.size()) throw DimensionMismatch("Gram blocks do not match the clique cover");
  Certificate cert;
  for (std::size_t k = 0; k < cover.cliques.size(); ++k) {
    const auto& clique = cover.cliques[k];
    const Eigen::MatrixXd& Q = sol.Qs[k];
    if (static_cast<std::size_t>(Q.rows()) != clique.size()) throw DimensionMismatch("Gram block has wrong size");
    if (clique.empty()) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
    if (es.info() != Eigen::Success) throw EigenFailure("eigendecomposition did not converge");
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
      const double lam = es.eigenvalues()(j);
      if (lam <= eig_tol) continue;
      const double s = std::sqrt(lam);
      Polynomial g(f.varnames());
      for (std::size_t a = 0; a < clique.size(); ++a) g.add_term(B[clique[a]], s * es.eigenvectors()(static_cast<Eigen::Index>(a), j));
      if (g.is_zero()) continue;
      cert.gs.push_back(std::move(g));
      cert.block_of.push_back(k);
    }
  }
  cert.residual = residual(f, cert.gs);
  return cert;
}

}  // namespace sparsesos
