#include <random>

#include "doctest.h"
#include "gspline/constrained_ls.hpp"
#include "gspline/errors.hpp"
#include "oracles/bspline_oracle.hpp"

using namespace gspline;

TEST_CASE("constrained ls: agrees with the KKT solution") {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> M(1, 12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 20, m = M(rng);
    const Eigen::MatrixXd G = Eigen::MatrixXd::Random(m, n);
    const Eigen::MatrixXd F = Eigen::MatrixXd::Random(30, n);
    const Eigen::VectorXd g = Eigen::VectorXd::Random(m), f = Eigen::VectorXd::Random(30);
    const Eigen::VectorXd x = solve_constrained_ls(G, g, F, f);
    const Eigen::VectorXd y = oracle::kkt_solve(G, g, F, f);
    CHECK((x - y).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((G * x - g).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("constrained ls: duplicated rows change nothing") {
  const Eigen::MatrixXd G = Eigen::MatrixXd::Random(5, 15);
  const Eigen::MatrixXd F = Eigen::MatrixXd::Random(20, 15);
  const Eigen::VectorXd g = Eigen::VectorXd::Random(5), f = Eigen::VectorXd::Random(20);
  Eigen::MatrixXd G2(8, 15);
  G2 << G, G.row(1), 2.0 * G.row(3) - G.row(0), G.row(4);
  Eigen::VectorXd g2(8);
  g2 << g, g[1], 2.0 * g[3] - g[0], g[4];
  ConstrainedLeastSquares ls(G2, F);
  CHECK(ls.rank() == 5);
  CHECK((ls.solve(g2, f) - solve_constrained_ls(G, g, F, f)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("constrained ls: inconsistent rows are reported") {
  const Eigen::MatrixXd G = Eigen::MatrixXd::Random(3, 10);
  Eigen::MatrixXd G2(4, 10);
  G2 << G, G.row(2);
  Eigen::VectorXd g2(4);
  g2 << 1, 2, 3, 4;
  const Eigen::MatrixXd F = Eigen::MatrixXd::Identity(10, 10);
  CHECK_THROWS_AS(solve_constrained_ls(G2, g2, F, Eigen::VectorXd::Zero(10)), InfeasibleConstraintError);
}

TEST_CASE("constrained ls: rank-deficient fairing takes the smallest norm") {
  // F annihilates constants; with no constraints the minimizer is unique up
  // to a constant, and the smallest-norm one has zero mean.
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(5, 6);
  for (int i = 0; i < 5; ++i) {
    F(i, i) = -1;
    F(i, i + 1) = 1;
  }
  Eigen::VectorXd f = Eigen::VectorXd::Random(5);
  const Eigen::VectorXd x = solve_constrained_ls(Eigen::MatrixXd(0, 6), Eigen::VectorXd(0), F, f);
  CHECK(std::abs(x.sum()) < 1e-12);
  CHECK((F * x - f).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("constrained ls: several right-hand sides at once") {
  const Eigen::MatrixXd G = Eigen::MatrixXd::Random(4, 12), F = Eigen::MatrixXd::Random(16, 12);
  const Eigen::MatrixXd g = Eigen::MatrixXd::Random(4, 3), f = Eigen::MatrixXd::Random(16, 3);
  const ConstrainedLeastSquares ls(G, F);
  const Eigen::MatrixXd X = ls.solve(g, f);
  for (int c = 0; c < 3; ++c) {
    const Eigen::VectorXd gc = g.col(c), fc = f.col(c);
    CHECK((X.col(c) - ls.solve(gc, fc)).cwiseAbs().maxCoeff() < 1e-13);
  }
}
