#include "gspline/constrained_ls.hpp"

#include <algorithm>
#include <sstream>

#include "gspline/errors.hpp"

namespace gspline {

ConstrainedLeastSquares::ConstrainedLeastSquares(const Eigen::MatrixXd& G, const Eigen::MatrixXd& F,
                                                 double rank_tol)
    : G_(G), F_(F), n_(std::max(G.cols(), F.cols())) {
  if (G.rows() > 0 && F.rows() > 0 && G.cols() != F.cols())
    throw DomainError("constraint and objective matrices disagree on the unknown count");

  if (G_.rows() == 0) {
    Q2_ = Eigen::MatrixXd::Identity(n_, n_);
    Q1_.resize(n_, 0);
  } else {
    // G^T P = Q R; retained constraints are the first `rank_` pivots.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(G_.transpose());
    const Eigen::MatrixXd R = qr.matrixR().template triangularView<Eigen::Upper>();
    const double r00 = R.rows() > 0 && R.cols() > 0 ? std::abs(R(0, 0)) : 0.0;
    rank_ = 0;
    for (Eigen::Index i = 0; i < std::min(R.rows(), R.cols()); ++i)
      if (std::abs(R(i, i)) > rank_tol * r00 && r00 > 0.0) ++rank_;
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n_, n_);
    Q1_ = Q.leftCols(rank_);
    Q2_ = Q.rightCols(n_ - rank_);
    R11_ = R.topLeftCorner(rank_, rank_);
    perm_ = qr.colsPermutation().indices();
  }

  if (F_.rows() > 0 && Q2_.cols() > 0) {
    fz_.compute(F_ * Q2_);
    have_fz_ = true;
  }
}

Eigen::MatrixXd ConstrainedLeastSquares::solve(const Eigen::MatrixXd& g, const Eigen::MatrixXd& f) const {
  const Eigen::Index k = std::max(g.cols(), f.cols());
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n_, k);
  if (rank_ > 0) {
    Eigen::MatrixXd gp(rank_, k);
    for (int i = 0; i < rank_; ++i) gp.row(i) = g.row(perm_[i]);
    const Eigen::MatrixXd z = R11_.transpose().template triangularView<Eigen::Lower>().solve(gp);
    x = Q1_ * z;
  }
  if (have_fz_) {
    const Eigen::MatrixXd rhs = (f.cols() == k ? f : Eigen::MatrixXd(f.replicate(1, k))) - F_ * x;
    x += Q2_ * fz_.solve(rhs);
  }

  if (G_.rows() > 0) {
    for (Eigen::Index c = 0; c < k; ++c) {
      const auto bad = inconsistent_rows(g.col(c), x.col(c));
      if (!bad.empty()) {
        std::ostringstream msg;
        msg << "inconsistent equality constraints (rows";
        for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 12); ++i) msg << ' ' << bad[i];
        if (bad.size() > 12) msg << " ...";
        msg << ')';
        throw InfeasibleConstraintError(msg.str());
      }
    }
  }
  return x;
}

Eigen::VectorXd ConstrainedLeastSquares::solve(const Eigen::VectorXd& g, const Eigen::VectorXd& f) const {
  Eigen::MatrixXd gm = g, fm = f;
  if (gm.size() == 0) gm.resize(0, 1);
  if (fm.size() == 0) fm.resize(0, 1);
  return solve(gm, fm).col(0);
}

std::vector<int> ConstrainedLeastSquares::inconsistent_rows(const Eigen::VectorXd& g,
                                                            const Eigen::VectorXd& x) const {
  std::vector<int> bad;
  const Eigen::VectorXd r = G_ * x - g;
  const double scale = std::max({1.0, g.size() ? g.cwiseAbs().maxCoeff() : 0.0,
                                 G_.size() ? G_.cwiseAbs().maxCoeff() * x.cwiseAbs().maxCoeff() : 0.0});
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (!(std::abs(r[i]) <= 1e-9 * scale)) bad.push_back(static_cast<int>(i));
  return bad;
}

Eigen::VectorXd solve_constrained_ls(const Eigen::MatrixXd& G, const Eigen::VectorXd& g,
                                     const Eigen::MatrixXd& F, const Eigen::VectorXd& f,
                                     double rank_tol) {
  return ConstrainedLeastSquares(G, F, rank_tol).solve(g, f);
}

}  // namespace gspline
