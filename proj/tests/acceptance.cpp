// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/Geometry>

#include "gspline/constrained_ls.hpp"
#include "gspline/continuity.hpp"
#include "gspline/eigen_solver.hpp"
#include "gspline/g1.hpp"
#include "gspline/galerkin.hpp"
#include "gspline/nets.hpp"
#include "gspline/quality.hpp"
#include "gspline/refine.hpp"
#include "oracles/bspline_oracle.hpp"

using namespace gspline;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const Variant kAll[] = {Variant::C0, Variant::G1P, Variant::G1R};
const Variant kG1[] = {Variant::G1P, Variant::G1R};

struct Named {
  std::string name;
  ControlNet net;
};

// Nets for the continuity, partition-of-unity and independence criteria.
std::vector<Named> test_nets() {
  return {{"fan3", fan_net(3, 3, true)},
          {"fan5", fan_net(5, 3, true)},
          {"fan6", fan_net(6, 3, true)},
          {"boundary-fan3", lift_z(fan_net(3, 3, false, 2.5), 0.2)},
          {"flipped-square", lift_z(flipped_square(6), 0.3)},
          {"cube", cube_net(1)},
          {"open-box", open_box_net(2)}};
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
  const int n = 4;
  const ControlNet net = structured_grid(n, n);
  const auto m = sine_solution();
  double map_err = 0.0, sol_err = 0.0;
  for (int level = 0; level < 2; ++level) {
    const int k = n << level;
    // x and y of a uniform grid are reproduced exactly, so a mapped point
    // carries its own parameter and element order does not matter.
    const ControlNet flat = level ? refine_n(net, level) : net;
    const ControlNet lifted = lift_z(flat, 0.4);
    const Eigen::VectorXd oracle_sol = oracle::poisson_iga(k, m.source);
    // oracle control values: z of the lifted net at its own grid position
    Eigen::VectorXd zoracle((k + 1) * (k + 1));
    for (std::size_t a = 0; a < lifted.positions.size(); ++a) {
      const Vec3& p = lifted.positions[a];
      const long i = std::lround(p.x() * k), j = std::lround(p.y() * k);
      zoracle[j * (k + 1) + i] = p.z();
    }
    for (Variant v : kAll) {
      const GSplineSurface sl = build_surface(lifted, v);
      for (std::size_t e = 0; e < sl.num_elements(); ++e)
        for (double xi : {0.0, 0.35, 1.0})
          for (double eta : {0.2, 0.9}) {
            const Vec3 x = map_point(sl, static_cast<int>(e), xi, eta).x;
            const auto t = oracle::tensor_basis(k, k, std::clamp(x.x(), 0.0, 1.0), std::clamp(x.y(), 0.0, 1.0));
            map_err = std::max(map_err, std::abs(x.z() - t.N.dot(zoracle)));
          }
      const GSplineSurface s = build_surface(flat, v);
      const Eigen::VectorXd c = solve_poisson(assemble_poisson(s, m));
      for (std::size_t e = 0; e < s.num_elements(); ++e) {
        const PhysicalEval pe = physical_basis(s, static_cast<int>(e), 0.4, 0.7);
        double mine = 0.0;
        for (std::size_t r = 0; r < s.elements[e].basis.size(); ++r) mine += pe.N[r] * c[s.elements[e].basis[r]];
        const auto t = oracle::tensor_basis(k, k, pe.x, pe.y);
        sol_err = std::max(sol_err, std::abs(mine - t.N.dot(oracle_sol)));
      }
    }
  }
  o.require(map_err < 1e-10, "surface vs tensor oracle");
  o.require(sol_err < 1e-10, "Poisson vs tensor oracle");
  o.detail << "map err " << map_err << ", solution err " << sol_err << ";";
  for (Variant v : kAll) {
    const ConvergenceReport r = convergence_study(net, v, 4);
    const auto& last = r.orders.back();
    o.detail << " " << to_string(v) << " orders L2 " << last[0] << " H1 " << last[2];
    o.require(std::abs(last[0] - 4.0) <= 0.2, std::string(to_string(v)) + " L2 order");
    o.require(std::abs(last[2] - 3.0) <= 0.2, std::string(to_string(v)) + " H1 order");
  }
}

void criterion2(Outcome& o) {
  std::map<int, int> eps_per_face;
  std::set<std::pair<int, bool>> ep_kinds;  // (valence, boundary)
  double g1 = 0.0, c1 = 0.0, wt = 0.0;
  for (const auto& [name, net] : test_nets()) {
    std::vector<int> count(net.cnet.num_faces(), 0);
    for (int ep : extraordinary_vertices(net.cnet)) {
      ep_kinds.insert({net.cnet.valence(ep), net.cnet.is_boundary_vertex(ep)});
      for (const Corner& c : net.cnet.fan(ep)) ++count[c.face];
    }
    for (int c : count) ++eps_per_face[c];
    for (Variant v : kG1) {
      const CheckReport r = check_surface(build_surface(net, v));
      g1 = std::max(g1, r.max_g1);
      c1 = std::max(c1, r.max_c1);
      wt = std::max(wt, r.max_watertight);
      o.require(r.max_g1 < 1e-8 && r.max_c1 < 1e-9 && r.max_watertight < 1e-9, name + " " + to_string(v));
    }
  }
  for (auto kind : {std::pair{3, false}, std::pair{5, false}, std::pair{6, false}, std::pair{3, true}})
    o.require(ep_kinds.count(kind) > 0, "EP coverage");
  for (int k : {2, 3, 4}) o.require(eps_per_face[k] > 0, "face with " + std::to_string(k) + " EPs");
  o.detail << test_nets().size() << " nets; max G1 " << g1 << ", C1 " << c1 << ", C0 gap " << wt;
}

void criterion3(Outcome& o) {
  double cs = 0.0, pu = 0.0, dmin = 1e300;
  for (const auto& [name, net] : test_nets()) {
    const GSplineSurface p = build_surface(net, Variant::G1P);
    const GSplineSurface r = build_surface(net, Variant::G1R);
    cs = std::max(cs, column_sum_error(p));
    pu = std::max(pu, partition_of_unity_error(r, true));
    dmin = std::min(dmin, denominator_range(r).first);
  }
  o.require(cs <= 1e-10, "G1P column sums");
  o.require(dmin > 0.0, "G1R denominator");
  o.require(pu < 1e-13, "G1R rationalized sums");
  o.detail << "G1P column sum err " << cs << "; G1R min denominator " << dmin << ", rational sum err " << pu;
}

void criterion4(Outcome& o) {
  double worst = 1e300;
  for (const auto& [name, net] : test_nets())
    for (Variant v : kAll) {
      const double r = collocation_rank_ratio(build_surface(net, v));
      worst = std::min(worst, r);
      o.require(r > 1e-8, name + " " + to_string(v));
    }
  o.detail << "smallest singular value ratio " << worst;
}

void criterion5(Outcome& o) {
  const ControlNet net = flipped_square(6);
  std::map<Variant, ConvergenceReport> rep;
  for (Variant v : kAll) rep[v] = convergence_study(net, v, 4);
  const char* norm_name[3] = {"L2", "Linf", "H1"};
  auto norm = [](const ErrorNorms& e, int i) { return i == 0 ? e.l2 : i == 1 ? e.linf : e.h1; };
  for (Variant v : kAll)
    for (std::size_t l = 1; l < rep[v].levels.size(); ++l)
      for (int i = 0; i < 3; ++i)
        o.require(norm(rep[v].levels[l].error, i) < norm(rep[v].levels[l - 1].error, i),
                  std::string(to_string(v)) + " " + norm_name[i] + " decrease");
  double worst_rel[3] = {0, 0, 0};
  for (std::size_t l = 0; l < 4; ++l) {
    const ErrorNorms &p = rep[Variant::G1P].levels[l].error, &r = rep[Variant::G1R].levels[l].error,
                     &c = rep[Variant::C0].levels[l].error;
    for (int i = 0; i < 3; ++i) {
      const double rel = std::abs(norm(p, i) - norm(r, i)) / std::max(norm(p, i), norm(r, i));
      worst_rel[i] = std::max(worst_rel[i], rel);
      o.require(rel <= 0.05, std::string("G1P/G1R ") + norm_name[i] + " level " + std::to_string(l));
    }
    o.require(p.l2 <= c.l2, "G1P L2 <= C0 L2 level " + std::to_string(l));
  }
  o.detail << "G1P vs G1R worst relative gap L2 " << worst_rel[0] << ", Linf " << worst_rel[1] << ", H1 "
           << worst_rel[2] << "; finest L2 C0/G1P/G1R " << rep[Variant::C0].levels.back().error.l2 << "/"
           << rep[Variant::G1P].levels.back().error.l2 << "/" << rep[Variant::G1R].levels.back().error.l2;
}

void criterion6(Outcome& o) {
  const QualityReport flat = min_invalid_thickness(build_surface(structured_grid(4, 4), Variant::C0));
  o.require(std::isinf(flat.t_star), "flat plate");

  // A circular cylinder of radius R: det(a - 2 zeta b) = 0 at zeta = R / 2,
  // which the outer Lobatto point t / 2 reaches at t = R.
  const double R = 1.0;
  const ControlNet cyl = cylinder_net(16, 6, R, 3.0);
  const QualityReport rc = min_invalid_thickness(build_surface(cyl, Variant::C0));
  o.require(std::abs(rc.t_star - R) <= 0.05 * R, "cylinder vs analytic");
  o.detail << "cylinder t* " << rc.t_star << " (analytic " << R << ");";

  Eigen::Matrix3d Q = Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  const Vec3 shift(3.0, -1.0, 0.5);
  const double k = 3.0;
  double rigid = 0.0, scale = 0.0;
  for (const ControlNet& net : {cyl, lift_z(flipped_square(6), 0.2)}) {
    for (Variant v : kAll) {
      const QualityReport a = min_invalid_thickness(build_surface(net, v));
      const QualityReport b = min_invalid_thickness(build_surface(transform(net, Q, shift), v));
      const QualityReport c = min_invalid_thickness(build_surface(transform(net, k * Eigen::Matrix3d::Identity(), shift), v),
                                                    k * 0.01, k * 100.0, k * 0.005);
      rigid = std::max(rigid, std::abs(a.t_star - b.t_star));
      scale = std::max(scale, std::abs(c.t_star / k - a.t_star) / a.t_star);
    }
  }
  o.require(rigid <= 1e-9, "rigid-motion invariance");
  o.require(scale <= 1e-6, "scale covariance");
  o.detail << " rigid diff " << rigid << ", scale rel diff " << scale << ";";

  const std::vector<Named> ep_nets{{"flipped-square", lift_z(flipped_square(6), 0.2)},
                                   {"fan3", lift_z(fan_net(3, 3, true), 0.2)},
                                   {"boundary-fan3", lift_z(fan_net(3, 3, false, 2.5), 0.2)}};
  for (const auto& [name, net] : ep_nets) {
    const double c0 = min_invalid_thickness(build_surface(net, Variant::C0)).t_star;
    o.detail << " " << name << " t* C0 " << c0;
    for (Variant v : kG1) {
      const double t = min_invalid_thickness(build_surface(net, v)).t_star;
      const double ratio = t / c0;
      o.detail << " " << to_string(v) << "/C0 " << ratio;
      o.require(std::isfinite(c0) && std::abs(ratio - 1.0) <= 0.10, name + " " + to_string(v) + " within 10%");
    }
    o.detail << ";";
  }
}

ControlNet torus(int n, int m) {
  std::vector<Quad> faces;
  auto id = [&](int i, int j) { return ((j + m) % m) * n + (i + n) % n; };
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<Vec3> p(n * m);
  for (auto& x : p) x = Vec3(U(rng), U(rng), U(rng));
  CNet cn(p.size(), std::move(faces));
  return ControlNet(std::move(cn), std::move(p));
}

void criterion7(Outcome& o) {
  for (const ControlNet& net : {flipped_square(6), open_box_net(2), fan_net(3, 3, false, 2.5), cube_net(1)}) {
    std::vector<RefineLevel> log;
    refine_n(net, 3, &log);
    for (const auto& l : log) o.require(l.extraordinary == log[0].extraordinary, "EP count");
  }

  const int n = 8, m = 6;
  const ControlNet t = torus(n, m);
  const ControlNet fine = refine(t);
  double mask = 0.0;
  for (int c = 0; c < 3; ++c) {
    Eigen::MatrixXd P(m, n);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i) P(j, i) = t.positions[j * n + i][c];
    const Eigen::MatrixXd B = oracle::subdivide_curve_closed(oracle::subdivide_curve_closed(P.transpose()).transpose());
    for (int J = 0; J < 2 * m; ++J)
      for (int I = 0; I < 2 * n; ++I) {
        const int i = I / 2, j = J / 2, v = j * n + i;
        int idx = v;
        if (I % 2 && J % 2) idx = n * m + v;
        else if (I % 2) idx = 2 * n * m + t.cnet.find_edge(v, j * n + (i + 1) % n);
        else if (J % 2) idx = 2 * n * m + t.cnet.find_edge(v, ((j + 1) % m) * n + i);
        mask = std::max(mask, std::abs(fine.positions[idx][c] - B(J, I)));
      }
  }
  o.require(mask < 1e-13, "regular masks");

  const ControlNet grid = lift_z(structured_grid(3, 3), 0.5);
  double surf = 0.0;
  ControlNet cur = grid;
  for (int level = 1; level <= 3; ++level) {
    const ControlNet next = refine(cur);
    const BezierMeshSample a = sample_bezier_mesh(build_surface(cur, Variant::C0), 4);
    const BezierMeshSample b = sample_bezier_mesh(build_surface(next, Variant::C0), 2);
    for (const Vec3& p : a.points) {
      double best = 1e300;
      for (const Vec3& q : b.points) best = std::min(best, (p - q).norm());
      surf = std::max(surf, best);
    }
    cur = next;
  }
  o.require(surf < 1e-10, "structured surface invariance");

  Eigen::Matrix3d A;
  A << 1.2, 0.3, -0.1, 0.0, 0.9, 0.4, 0.2, -0.3, 1.1;
  const Vec3 sh(0.5, -2.0, 3.0);
  double aff = 0.0;
  for (const ControlNet& net : {flipped_square(6), open_box_net(2), fan_net(5, 3, true)}) {
    const ControlNet x = refine_n(transform(net, A, sh), 2), y = transform(refine_n(net, 2), A, sh);
    for (std::size_t i = 0; i < x.positions.size(); ++i) aff = std::max(aff, (x.positions[i] - y.positions[i]).norm());
  }
  o.require(aff < 1e-12, "affine equivariance");
  o.detail << "mask err " << mask << ", surface err " << surf << ", affine err " << aff;
}

void criterion8(Outcome& o) {
  const std::vector<std::pair<std::string, std::pair<ControlNet, Variant>>> cases{
      {"grid", {structured_grid(4, 4), Variant::C0}},
      {"EP G1P", {flipped_square(4), Variant::G1P}},
      {"EP G1R", {flipped_square(4), Variant::G1R}}};
  for (const auto& [name, c] : cases) {
    std::vector<EigenReport> lumped;
    EigenReport consistent;
    for (int level = 1; level <= 3; ++level) {
      const GSplineSurface s = build_surface(refine_n(c.first, level), c.second);
      lumped.push_back(membrane_eigenvalues(s, 6, MassKind::Lumped));
      if (level == 3) consistent = membrane_eigenvalues(s, 6, MassKind::Consistent);
    }
    double worst = 0.0;
    for (double e : consistent.relative_error) worst = std::max(worst, e);
    o.require(worst < 0.005, name + " consistent level 3");
    double lumped_last = 0.0;
    for (int i = 0; i < 6; ++i) {
      for (std::size_t l = 1; l < lumped.size(); ++l)
        o.require(lumped[l].relative_error[i] < lumped[l - 1].relative_error[i], name + " lumped convergence");
      lumped_last = std::max(lumped_last, lumped.back().relative_error[i]);
    }
    o.detail << " " << name << ": consistent max rel err " << worst << ", lumped level 1/3 lambda1 err "
             << lumped.front().relative_error[0] << "/" << lumped.back().relative_error[0] << ";";
  }
}

void criterion9(Outcome& o) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> N(2, 30);
  double kkt = 0.0, redundant = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = N(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const int rank = std::uniform_int_distribution<int>(1, m)(rng);
    // rank-deficient G of the requested rank, right-hand side in its range
    const Eigen::MatrixXd G = Eigen::MatrixXd::Random(m, rank) * Eigen::MatrixXd::Random(rank, n);
    const Eigen::VectorXd g = G * Eigen::VectorXd::Random(n);
    const Eigen::MatrixXd F = Eigen::MatrixXd::Random(n + 4, n);
    const Eigen::VectorXd f = Eigen::VectorXd::Random(n + 4);
    const Eigen::VectorXd x = solve_constrained_ls(G, g, F, f);
    // independent rows for the KKT oracle, which needs a nonsingular system
    Eigen::FullPivLU<Eigen::MatrixXd> lu(G.transpose());
    const Eigen::MatrixXd basis = lu.image(G.transpose()).transpose();
    const Eigen::VectorXd gb = basis * G.completeOrthogonalDecomposition().solve(g);
    const Eigen::VectorXd y = oracle::kkt_solve(basis, gb, F, f);
    kkt = std::max(kkt, (x - y).cwiseAbs().maxCoeff() / std::max(1.0, y.cwiseAbs().maxCoeff()));

    Eigen::MatrixXd G2(m + 2, n);
    G2 << G, G.row(0) + 2.0 * G.row(m - 1), G.row(m / 2);
    Eigen::VectorXd g2(m + 2);
    g2 << g, g[0] + 2.0 * g[m - 1], g[m / 2];
    const Eigen::VectorXd x2 = solve_constrained_ls(G2, g2, F, f);
    redundant = std::max(redundant, (x - x2).cwiseAbs().maxCoeff() / std::max(1.0, x.cwiseAbs().maxCoeff()));
  }
  o.require(kkt < 1e-9, "KKT agreement");
  // Redundant rows are removed by the rank cut; what is left differs from the
  // original factorization only by rounding.
  o.require(redundant < 1e-12, "redundant-row invariance");
  o.detail << "100 systems; max rel diff vs KKT " << kkt << ", redundant rows " << redundant;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"B-spline reduction", criterion1},       {"continuity suite", criterion2},
      {"partition of unity", criterion3},       {"numerical linear independence", criterion4},
      {"convergence pattern", criterion5},      {"quality metric", criterion6},
      {"refinement", criterion7},               {"membrane eigenvalues", criterion8},
      {"constrained least squares", criterion9}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu (%s, %.1f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, sec,
                o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
