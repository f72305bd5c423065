#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sparsesos/basis.hpp"
#include "sparsesos/error.hpp"
#include "sparsesos/graph.hpp"
#include "sparsesos/polynomial.hpp"

namespace sparsesos {

/// One Gram entry (i <= j, block-local) entering a coefficient equation with
/// the given weight: 1 on the diagonal, 2 off it.
struct GramEntry {
  std::size_t block;
  std::size_t i, j;
  double weight;
};

/// sum over entries of weight * Q_block(i, j) == rhs, for the monomial gamma.
struct CoefficientConstraint {
  Exponent gamma;
  std::vector<GramEntry> entries;
  double rhs = 0.0;
};

/// Blocked Gram feasibility problem
///   find Q_k >= 0 with  f = sum_k (x^{B_k})^T Q_k x^{B_k}.
struct BlockSDP {
  std::vector<std::vector<std::size_t>> blocks;  // basis indices of each block
  std::vector<CoefficientConstraint> constraints;

  std::size_t block_size(std::size_t k) const { return blocks[k].size(); }
};

struct SolverConfig {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iter = 200;
  // Accept t* >= -t_accept; t is measured on f scaled to unit max coefficient.
  double t_accept = 1e-7;
  bool verbose = false;  // iteration log on stderr
};

enum class SolveStatus { Feasible, Infeasible, Indeterminate };

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

struct GramSolution {
  SolveStatus status = SolveStatus::Indeterminate;
  std::vector<Eigen::MatrixXd> Qs;
  double t_star = 0.0;     // in units of f's coefficients
  double dual_bound = 0.0;  // t* <= dual_bound when the dual iterate is feasible
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double gap = 0.0;
  int iterations = 0;
  std::string message;
};

/// One coefficient-matching equation per gamma in  U_k (B_k + B_k)  plus
/// supp(f); constraints are ordered by `Grlex` on gamma.
inline BlockSDP assemble(const Polynomial& f, const CliqueCover& cover, const MonomialBasis& B) {
  BlockSDP P;
  P.blocks = cover.cliques;
  std::map<Exponent, std::size_t, Grlex> slot;
  std::vector<CoefficientConstraint> cons;
  for (std::size_t k = 0; k < P.blocks.size(); ++k) {
    const auto& blk = P.blocks[k];
    for (std::size_t a = 0; a < blk.size(); ++a)
      for (std::size_t b = a; b < blk.size(); ++b) {
        if (blk[a] >= B.size() || blk[b] >= B.size()) throw DimensionMismatch("clique index outside basis");
        Exponent g = B[blk[a]] + B[blk[b]];
        auto [it, inserted] = slot.try_emplace(g, cons.size());
        if (inserted) cons.push_back(CoefficientConstraint{g, {}, 0.0});
        cons[it->second].entries.push_back(GramEntry{k, a, b, a == b ? 1.0 : 2.0});
      }
  }
  for (const auto& [e, c] : f.terms()) {
    auto it = slot.find(e);
    if (it == slot.end())
      throw StructuralInfeasible("term " + format_monomial(e, f.varnames()) + " is not a product of two monomials in any block");
    cons[it->second].rhs = c;
  }
  P.constraints.reserve(cons.size());
  for (const auto& [g, idx] : slot) P.constraints.push_back(std::move(cons[idx]));
  return P;
}

namespace detail {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Largest alpha with  X + alpha dX >= 0, given the Cholesky factor of X.
inline double max_step(const Eigen::LLT<Mat>& chol, const Mat& dX) {
  const Mat L = chol.matrixL();
  const Mat T = L.triangularView<Eigen::Lower>().solve(L.triangularView<Eigen::Lower>().solve(dX).transpose());
  const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (T + T.transpose()), Eigen::EigenvaluesOnly).eigenvalues()(0);
  return lmin < 0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

/// Infeasible primal-dual path following with Nesterov-Todd scaling and a
/// Mehrotra predictor-corrector, for
///
///   min  -t   s.t.  A(X) + t a = b,  X >= 0          (X = Q - t I)
///   max  b'y  s.t.  A*(y) + Z = 0,  a'y = -1,  Z >= 0
///
/// where a = A(I).  t is a free variable handled by bordering the Schur
/// complement system.  Blocks are dense.
class InteriorPoint {
 public:
  InteriorPoint(const BlockSDP& P, const SolverConfig& cfg) : P_(P), cfg_(cfg) {
    const std::size_t m = P.constraints.size();
    nb_ = P.blocks.size();
    block_entries_.resize(nb_);
    b_ = Vec::Zero(static_cast<Eigen::Index>(m));
    a_ = Vec::Zero(static_cast<Eigen::Index>(m));
    norm2_ = Vec::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t p = 0; p < m; ++p) {
      const auto& con = P.constraints[p];
      b_(p) = con.rhs;
      for (const auto& e : con.entries) {
        block_entries_[e.block].push_back(Entry{p, e.i, e.j, e.weight});
        if (e.i == e.j) a_(p) += e.weight;
        norm2_(p) += e.i == e.j ? 1.0 : 2.0;
      }
    }
    scale_ = b_.cwiseAbs().maxCoeff();
    if (!(scale_ > 0)) scale_ = 1.0;
    b_ /= scale_;
    for (std::size_t k = 0; k < nb_; ++k) dim_total_ += P.block_size(k);
  }

  GramSolution run() {
    GramSolution sol;
    const auto m = static_cast<Eigen::Index>(P_.constraints.size());
    std::vector<Mat> X(nb_), Z(nb_);
    for (std::size_t k = 0; k < nb_; ++k) {
      const auto s = static_cast<Eigen::Index>(P_.block_size(k));
      X[k] = Mat::Identity(s, s);
      Z[k] = Mat::Identity(s, s);
    }
    Vec y = Vec::Zero(m);
    double u = 0.0;

    for (int it = 0;; ++it) {
      sol.iterations = it;
      // Residuals.
      const Vec rp = b_ - apply(X) - a_ * u;
      std::vector<Mat> Rd(nb_);
      double dinf = std::abs(-1.0 - a_.dot(y));
      const double rf = -1.0 - a_.dot(y);
      {
        auto Ay = adjoint(y);
        for (std::size_t k = 0; k < nb_; ++k) {
          Rd[k] = -Ay[k] - Z[k];
          if (Rd[k].size()) dinf = std::max(dinf, Rd[k].cwiseAbs().maxCoeff());
        }
      }
      double xz = 0.0;
      for (std::size_t k = 0; k < nb_; ++k) xz += (X[k].cwiseProduct(Z[k])).sum();
      const double pobj = -u, dobj = b_.dot(y);
      const double pinf = (m ? rp.cwiseAbs().maxCoeff() : 0.0) / (1.0 + b_.cwiseAbs().maxCoeff());
      dinf /= 2.0;
      const double relgap = xz / (1.0 + std::abs(pobj) + std::abs(dobj));
      sol.primal_infeasibility = pinf;
      sol.dual_infeasibility = dinf;
      sol.gap = relgap;
      if (cfg_.verbose)
        std::fprintf(stderr, "%3d  t=% .10e  dual=% .10e  pinf=%.2e  dinf=%.2e  gap=%.2e\n", it, u * scale_,
                     -dobj * scale_, pinf, dinf, relgap);

      if (pinf <= cfg_.feas_tol && dinf <= cfg_.feas_tol && relgap <= cfg_.gap_tol) {
        finish(sol, X, y, u, SolveStatus::Feasible);
        return sol;
      }
      if (it >= cfg_.max_iter) {
        sol.message = "iteration limit reached";
        finish(sol, X, y, u, SolveStatus::Indeterminate);
        return sol;
      }

      // NT scaling per block: W = G G', G^{-1} X G^{-T} = G' Z G = diag(v).
      std::vector<Mat> G(nb_), Ginv(nb_), W(nb_);
      std::vector<Vec> v(nb_);
      std::vector<Eigen::LLT<Mat>> cx(nb_), cz(nb_);
      for (std::size_t k = 0; k < nb_; ++k) {
        cx[k].compute(X[k]);
        cz[k].compute(Z[k]);
        if (cx[k].info() != Eigen::Success || cz[k].info() != Eigen::Success) return breakdown(sol, X, y, u, "iterate left the cone");
        const Mat L = cx[k].matrixL();
        const Mat T = L.transpose() * Z[k] * L;
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (T + T.transpose()));
        if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0) return breakdown(sol, X, y, u, "scaling failed");
        const Vec lam = es.eigenvalues();
        const Vec qr = lam.array().pow(-0.25).matrix();
        G[k] = L * es.eigenvectors() * qr.asDiagonal();
        Ginv[k] = lam.array().pow(0.25).matrix().asDiagonal() * es.eigenvectors().transpose() *
                  L.triangularView<Eigen::Lower>().solve(Mat::Identity(L.rows(), L.cols()));
        W[k] = G[k] * G[k].transpose();
        v[k] = lam.array().sqrt().matrix();
      }

      // Schur complement M_pq = <A_p, W A_q W>.
      Mat M = Mat::Zero(m, m);
      for (std::size_t k = 0; k < nb_; ++k) {
        const auto& ents = block_entries_[k];
        const Mat& Wk = W[k];
        for (std::size_t s = 0; s < ents.size(); ++s) {
          const auto& e = ents[s];
          for (std::size_t q = s; q < ents.size(); ++q) {
            const auto& f = ents[q];
            const double val = e.w * f.w * 0.5 * (Wk(e.i, f.i) * Wk(e.j, f.j) + Wk(e.i, f.j) * Wk(e.j, f.i));
            M(e.p, f.p) += val;
            if (q != s) M(f.p, e.p) += val;
          }
        }
      }
      Eigen::LLT<Mat> chol(M);
      if (chol.info() != Eigen::Success) {
        const double reg = 1e-14 * std::max(1.0, M.diagonal().maxCoeff());
        chol.compute(M + reg * Mat::Identity(m, m));
        if (chol.info() != Eigen::Success) return breakdown(sol, X, y, u, "Schur complement not positive definite");
      }
      const Vec Minv_a = chol.solve(a_);
      const double aMa = a_.dot(Minv_a);
      if (!(aMa > 0)) return breakdown(sol, X, y, u, "degenerate free-variable system");

      std::vector<Mat> WRdW(nb_);
      for (std::size_t k = 0; k < nb_; ++k) WRdW[k] = W[k] * Rd[k] * W[k];
      const Vec A_WRdW = apply(WRdW);

      // Direction from block right-hand sides S (scaled complementarity).
      struct Dir {
        std::vector<Mat> dX, dZ;
        Vec dy;
        double du = 0;
      };
      auto direction = [&](const std::vector<Mat>& S) {
        Dir d;
        std::vector<Mat> H(nb_);
        for (std::size_t k = 0; k < nb_; ++k) H[k] = G[k] * S[k] * G[k].transpose();
        const Vec r1 = rp - apply(H) + A_WRdW;
        const Vec Minv_r1 = chol.solve(r1);
        d.du = (a_.dot(Minv_r1) - rf) / aMa;
        d.dy = Minv_r1 - Minv_a * d.du;
        const auto Ady = adjoint(d.dy);
        d.dX.resize(nb_);
        d.dZ.resize(nb_);
        for (std::size_t k = 0; k < nb_; ++k) {
          d.dZ[k] = Rd[k] - Ady[k];
          Mat dx = H[k] - W[k] * d.dZ[k] * W[k];
          d.dX[k] = 0.5 * (dx + dx.transpose());
        }
        return d;
      };
      auto steps = [&](const Dir& d) {
        double ap = std::numeric_limits<double>::infinity(), ad = ap;
        for (std::size_t k = 0; k < nb_; ++k) {
          ap = std::min(ap, max_step(cx[k], d.dX[k]));
          ad = std::min(ad, max_step(cz[k], d.dZ[k]));
        }
        return std::pair{ap, ad};
      };

      const double mu = xz / static_cast<double>(dim_total_);

      // Predictor.
      std::vector<Mat> S(nb_);
      for (std::size_t k = 0; k < nb_; ++k) S[k] = Mat((-v[k]).asDiagonal());
      Dir pred = direction(S);
      auto [app, adp] = steps(pred);
      app = std::min(1.0, app);
      adp = std::min(1.0, adp);
      double xz_aff = 0.0;
      for (std::size_t k = 0; k < nb_; ++k)
        xz_aff += ((X[k] + app * pred.dX[k]).cwiseProduct(Z[k] + adp * pred.dZ[k])).sum();
      const double sigma = std::clamp(std::pow(std::max(xz_aff, 0.0) / xz, 3.0), 0.0, 1.0);

      // Corrector: V o (dX~ + dZ~) = sigma mu I - V^2 - dX~_p o dZ~_p.
      for (std::size_t k = 0; k < nb_; ++k) {
        const Mat dXs = Ginv[k] * pred.dX[k] * Ginv[k].transpose();
        const Mat dZs = G[k].transpose() * pred.dZ[k] * G[k];
        Mat R = -0.5 * (dXs * dZs + dZs * dXs);
        for (Eigen::Index i = 0; i < R.rows(); ++i) R(i, i) += sigma * mu - v[k](i) * v[k](i);
        Mat Sk(R.rows(), R.cols());
        for (Eigen::Index i = 0; i < R.rows(); ++i)
          for (Eigen::Index j = 0; j < R.cols(); ++j) Sk(i, j) = 2.0 * R(i, j) / (v[k](i) + v[k](j));
        S[k] = Sk;
      }
      Dir corr = direction(S);
      auto [ap, ad] = steps(corr);
      constexpr double tau = 0.98;
      ap = std::min(1.0, tau * ap);
      ad = std::min(1.0, tau * ad);
      if (ap < 1e-12 && ad < 1e-12) return breakdown(sol, X, y, u, "step length collapsed");

      for (std::size_t k = 0; k < nb_; ++k) {
        X[k] += ap * corr.dX[k];
        Z[k] += ad * corr.dZ[k];
        X[k] = 0.5 * (X[k] + X[k].transpose()).eval();
        Z[k] = 0.5 * (Z[k] + Z[k].transpose()).eval();
      }
      u += ap * corr.du;
      y += ad * corr.dy;
    }
  }

 private:
  struct Entry {
    std::size_t p, i, j;
    double w;
  };

  Vec apply(const std::vector<Mat>& X) const {
    Vec r = Vec::Zero(static_cast<Eigen::Index>(P_.constraints.size()));
    for (std::size_t k = 0; k < nb_; ++k)
      for (const auto& e : block_entries_[k]) r(e.p) += e.w * X[k](e.i, e.j);
    return r;
  }

  std::vector<Mat> adjoint(const Vec& y) const {
    std::vector<Mat> out(nb_);
    for (std::size_t k = 0; k < nb_; ++k) {
      const auto s = static_cast<Eigen::Index>(P_.block_size(k));
      out[k] = Mat::Zero(s, s);
      for (const auto& e : block_entries_[k]) {
        if (e.i == e.j) {
          out[k](e.i, e.i) += e.w * y(e.p);
        } else {
          out[k](e.i, e.j) += 0.5 * e.w * y(e.p);
          out[k](e.j, e.i) += 0.5 * e.w * y(e.p);
        }
      }
    }
    return out;
  }

  GramSolution& breakdown(GramSolution& sol, const std::vector<Mat>& X, const Vec& y, double u, std::string msg) {
    sol.message = "numerical breakdown: " + std::move(msg);
    finish(sol, X, y, u, SolveStatus::Indeterminate);
    return sol;
  }

  // Gram blocks Q_k = X_k + t I.  On boundary instances the shift t is
  // slightly negative; alternate the least-squares correction onto the
  // coefficient equations with the projection onto the PSD cone so the
  // returned blocks are PSD and match f as closely as the data allows.
  void finish(GramSolution& sol, const std::vector<Mat>& X, const Vec& y, double u, SolveStatus converged) {
    sol.t_star = u * scale_;
    sol.dual_bound = -b_.dot(y) * scale_;
    std::vector<Mat> Q(nb_);
    for (std::size_t k = 0; k < nb_; ++k) Q[k] = X[k] + u * Mat::Identity(X[k].rows(), X[k].cols());
    if (converged == SolveStatus::Feasible) {
      double prev = std::numeric_limits<double>::infinity();
      for (int round = 0; round < 50; ++round) {
        project_psd(Q);
        const Vec r = b_ - apply(Q);
        const double err = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
        if (err < 1e-15 || err > 0.5 * prev) break;
        prev = err;
        correct(Q, r);
      }
      project_psd(Q);
    }
    sol.Qs.resize(nb_);
    for (std::size_t k = 0; k < nb_; ++k) sol.Qs[k] = Q[k] * scale_;
    if (converged != SolveStatus::Feasible) {
      sol.status = converged;
      return;
    }
    sol.status = u >= -cfg_.t_accept ? SolveStatus::Feasible : SolveStatus::Infeasible;
  }

  static void project_psd(std::vector<Mat>& Q) {
    for (auto& q : Q) {
      if (q.size() == 0) continue;
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (q + q.transpose()));
      if (es.info() != Eigen::Success) continue;
      if (es.eigenvalues()(0) < 0) {
        const Vec lam = es.eigenvalues().cwiseMax(0.0);
        q = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
      }
      q = 0.5 * (q + q.transpose()).eval();
    }
  }

  // Minimum-norm change with A(Q + dQ) = b; A A* is diagonal because every
  // entry belongs to exactly one equation.
  void correct(std::vector<Mat>& Q, const Vec& r) const {
    for (std::size_t k = 0; k < nb_; ++k)
      for (const auto& e : block_entries_[k]) {
        const double s = r(e.p) / norm2_(e.p);
        if (e.i == e.j) {
          Q[k](e.i, e.i) += s;
        } else {
          Q[k](e.i, e.j) += s;
          Q[k](e.j, e.i) += s;
        }
      }
  }

  const BlockSDP& P_;
  SolverConfig cfg_;
  std::size_t nb_ = 0;
  std::size_t dim_total_ = 0;
  std::vector<std::vector<Entry>> block_entries_;
  Vec b_, a_, norm2_;
  double scale_ = 1.0;
};

}  // namespace detail

/// Maximizes t subject to the coefficient equations and Q_k - t I >= 0.
/// Feasible when the optimum t* is at least -t_accept.
inline GramSolution solve(const BlockSDP& P, const SolverConfig& cfg = {}) {
  if (cfg.gap_tol <= 0 || cfg.feas_tol <= 0 || cfg.t_accept <= 0 || cfg.max_iter < 1)
    throw Error("invalid solver configuration");
  GramSolution sol;
  if (P.constraints.empty()) {
    sol.status = SolveStatus::Feasible;
    for (std::size_t k = 0; k < P.blocks.size(); ++k)
      sol.Qs.push_back(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(P.block_size(k)), static_cast<Eigen::Index>(P.block_size(k))));
    return sol;
  }
  return detail::InteriorPoint(P, cfg).run();
}

}  // namespace sparsesos
