#include "gspline/g1.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gspline/c0.hpp"
#include "gspline/constrained_ls.hpp"
#include "gspline/errors.hpp"

namespace gspline {

namespace {
constexpr int kP = 5;
constexpr int kN = 36;
constexpr double kDropTol = 1e-12;
}  // namespace

Eigen::MatrixXd elevate_irregular(const ElementExtraction& c0_element) {
  static const Eigen::MatrixXd E = elevation_matrix(3, kP);
  if (c0_element.degree != 3) throw InternalError("elevation expects a bi-cubic extraction");
  return c0_element.coeffs * E.transpose();
}

Eigen::Matrix<double, 7, 72> g1_edge_equations(const EdgeFrame& fr) {
  Eigen::Matrix<double, 7, 72> A = Eigen::Matrix<double, 7, 72>::Zero();
  auto P = [&](int a, int b) { return corner_frame_index(kP, fr.corner_prev, a, b); };
  auto E = [&](int a, int b) { return kN + corner_frame_index(kP, fr.corner_cur, a, b); };

  // Bernstein coefficients of the cubic tangent d_xi N^{cur}(v, 0), valid when
  // the boundary curve is quartic: e_j = sum_m T(j, m) c_m with c_m = c(m, 0).
  Eigen::Matrix<double, 4, 6> T = Eigen::Matrix<double, 4, 6>::Zero();
  T(0, 0) = -5.0;
  T(0, 1) = 5.0;
  T(1, 0) = 5.0 / 3.0;
  T(1, 1) = -25.0 / 3.0;
  T(1, 2) = 20.0 / 3.0;
  T(2, 3) = -20.0 / 3.0;
  T(2, 4) = 25.0 / 3.0;
  T(2, 5) = -5.0 / 3.0;
  T(3, 4) = -5.0;
  T(3, 5) = 5.0;
  const double b[3] = {-2.0 * fr.omega1, 0.0, 2.0 * fr.omega2};

  for (int m = 0; m <= kP; ++m) {
    A(m, P(1, m)) += 5.0;
    A(m, P(0, m)) -= 5.0;
    A(m, E(m, 1)) += 5.0;
    A(m, E(m, 0)) -= 5.0;
    // Degree-5 coefficient m of b(v) times the cubic tangent.
    for (int i = 0; i <= 2; ++i) {
      const int j = m - i;
      if (j < 0 || j > 3) continue;
      const double w = binomial(2, i) * binomial(3, j) / binomial(5, m) * b[i];
      if (w == 0.0) continue;
      for (int c = 0; c <= kP; ++c) A(m, E(c, 0)) += w * T(j, c);
    }
  }
  const double quartic[6] = {-1.0, 5.0, -10.0, 10.0, -5.0, 1.0};
  for (int c = 0; c <= kP; ++c) A(6, E(c, 0)) = quartic[c];
  return A;
}

std::array<int, 12> interface_indices(int side) {
  std::array<int, 12> idx{};
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a <= kP; ++a) idx[b * 6 + a] = corner_frame_index(kP, side, a, b);
  return idx;
}

Eigen::Matrix<double, 12, 36> c1_interface_equations(int side) {
  Eigen::Matrix<double, 12, 36> S = Eigen::Matrix<double, 12, 36>::Zero();
  const auto idx = interface_indices(side);
  for (int r = 0; r < 12; ++r) S(r, idx[r]) = 1.0;
  return S;
}

Eigen::Matrix<double, 60, 36> fairing_equations() {
  Eigen::Matrix<double, 60, 36> F = Eigen::Matrix<double, 60, 36>::Zero();
  int r = 0;
  for (int j = 0; j <= kP; ++j)
    for (int i = 0; i < kP; ++i, ++r) {
      F(r, bezier_index(kP, i, j)) = 1.0;
      F(r, bezier_index(kP, i + 1, j)) = -1.0;
    }
  for (int i = 0; i <= kP; ++i)
    for (int j = 0; j < kP; ++j, ++r) {
      F(r, bezier_index(kP, i, j)) = 1.0;
      F(r, bezier_index(kP, i, j + 1)) = -1.0;
    }
  return F;
}

std::vector<int> irregular_blocks(const CNet& cnet, const std::vector<ElementClass>& classes) {
  const int nf = static_cast<int>(cnet.num_faces());
  std::vector<int> parent(nf);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : spoke_edges(cnet)) {
    const Edge& ed = cnet.edge(e);
    if (ed.half[1] < 0) continue;
    const int a = find(ed.half[0] / 4), b = find(ed.half[1] / 4);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> block(nf, -1);
  std::map<int, int> ids;
  for (int f = 0; f < nf; ++f) {
    if (classes[f] != ElementClass::Irregular) continue;
    const int root = find(f);
    auto it = ids.try_emplace(root, static_cast<int>(ids.size())).first;
    block[f] = it->second;
  }
  return block;
}

namespace {

// Shared bi-quintic coefficients of a set of elements: vertex, edge and
// interior nodes, so that coefficients on a common edge are one unknown.
class NodeLayout {
public:
  NodeLayout(const CNet& cnet, const std::vector<int>& elements) : elements_(elements) {
    std::map<std::array<int, 3>, int> ids;
    map_.resize(elements.size());
    for (std::size_t s = 0; s < elements.size(); ++s) {
      const int e = elements[s];
      slot_[e] = static_cast<int>(s);
      for (int j = 0; j <= kP; ++j)
        for (int i = 0; i <= kP; ++i) {
          const auto key = node_key(cnet, e, i, j);
          map_[s][bezier_index(kP, i, j)] = ids.try_emplace(key, static_cast<int>(ids.size())).first->second;
        }
    }
    size_ = static_cast<int>(ids.size());
  }

  int size() const { return size_; }
  int node(int slot, int k) const { return map_[slot][k]; }
  int slot_of(int element) const {
    auto it = slot_.find(element);
    return it == slot_.end() ? -1 : it->second;
  }
  const std::vector<int>& elements() const { return elements_; }

private:
  static std::array<int, 3> node_key(const CNet& cnet, int e, int i, int j) {
    const bool ei = i == 0 || i == kP, ej = j == 0 || j == kP;
    if (ei && ej) {
      const int corner = j == 0 ? (i == 0 ? 0 : 1) : (i == kP ? 2 : 3);
      return {0, cnet.face(e)[corner], 0};
    }
    if (ei || ej) {
      int side = 0, t = 0;
      if (j == 0) side = 0, t = i;
      else if (i == kP) side = 1, t = j;
      else if (j == kP) side = 2, t = kP - i;
      else side = 3, t = kP - j;
      const int h = 4 * e + side;
      const int edge = cnet.edge_of(h);
      const int pos = cnet.half_origin(h) == cnet.edge(edge).v0 ? t : kP - t;
      return {1, edge, pos};
    }
    return {2, e, bezier_index(kP, i, j)};
  }

  std::vector<int> elements_;
  std::vector<std::array<int, kN>> map_;
  std::unordered_map<int, int> slot_;
  int size_ = 0;
};

struct LocalSystem {
  NodeLayout layout;
  Eigen::MatrixXd G1;    // G1 rows
  Eigen::MatrixXd Pin;   // selection rows
  std::vector<bool> pin_to_zero;  // pinned to 0 instead of the C0 value
  Eigen::MatrixXd F;
  std::vector<int> g1_edges;
};

LocalSystem assemble(const CNet& cnet, const std::vector<int>& elements, const std::set<int>& spokes) {
  LocalSystem sys{NodeLayout(cnet, elements), {}, {}, {}, {}, {}};
  const NodeLayout& L = sys.layout;
  const int n = L.size();

  std::vector<int> edges;
  std::set<int> pinned, zeroed;
  for (std::size_t s = 0; s < elements.size(); ++s) {
    const int e = elements[s];
    for (int side = 0; side < 4; ++side) {
      const int h = 4 * e + side;
      const int t = cnet.twin(h);
      if (t < 0) continue;
      const int edge = cnet.edge_of(h);
      const bool other_in = L.slot_of(t / 4) >= 0;
      if (spokes.count(edge) && other_in) {
        edges.push_back(edge);
        continue;
      }
      // A spoke edge on the rim of the element set borders a face where the
      // function vanishes; its two outer rows must vanish too.
      const bool rim = spokes.count(edge) > 0;
      for (int k : interface_indices(side)) {
        pinned.insert(L.node(static_cast<int>(s), k));
        if (rim) zeroed.insert(L.node(static_cast<int>(s), k));
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  sys.g1_edges = edges;

  sys.G1 = Eigen::MatrixXd::Zero(7 * static_cast<Eigen::Index>(edges.size()), n);
  for (std::size_t q = 0; q < edges.size(); ++q) {
    const EdgeFrame fr = spoke_edge_frame(cnet, edges[q]);
    const auto A = g1_edge_equations(fr);
    const int sp = L.slot_of(fr.face_prev), sc = L.slot_of(fr.face_cur);
    for (int r = 0; r < 7; ++r)
      for (int k = 0; k < kN; ++k) {
        sys.G1(7 * q + r, L.node(sp, k)) += A(r, k);
        sys.G1(7 * q + r, L.node(sc, k)) += A(r, kN + k);
      }
  }

  sys.Pin = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(pinned.size()), n);
  int r = 0;
  for (int node : pinned) {
    sys.pin_to_zero.push_back(zeroed.count(node) > 0);
    sys.Pin(r++, node) = 1.0;
  }

  static const Eigen::Matrix<double, 60, 36> Fe = fairing_equations();
  sys.F = Eigen::MatrixXd::Zero(60 * static_cast<Eigen::Index>(elements.size()), n);
  for (std::size_t s = 0; s < elements.size(); ++s)
    for (int q = 0; q < 60; ++q)
      for (int k = 0; k < kN; ++k)
        if (Fe(q, k) != 0.0) sys.F(60 * s + q, L.node(static_cast<int>(s), k)) += Fe(q, k);
  return sys;
}

// Node values of the elevated C0 functions; one column per function.
Eigen::MatrixXd initial_values(const LocalSystem& sys, const std::vector<int>& functions,
                               const std::vector<ElementExtraction>& c0,
                               const std::vector<Eigen::MatrixXd>& elevated) {
  const NodeLayout& L = sys.layout;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(L.size(), static_cast<Eigen::Index>(functions.size()));
  for (std::size_t s = 0; s < L.elements().size(); ++s) {
    const int e = L.elements()[s];
    for (std::size_t a = 0; a < functions.size(); ++a) {
      const int row = c0[e].row_of(functions[a]);
      if (row < 0) continue;
      for (int k = 0; k < kN; ++k) C(L.node(static_cast<int>(s), k), a) = elevated[e](row, k);
    }
  }
  return C;
}

struct SolvedSystem {
  Eigen::MatrixXd C;  // node values, one column per function
  int rank = 0;
  int constraints = 0;
  Eigen::VectorXd ls_residual;
  Eigen::VectorXd constraint_residual;
};

SolvedSystem solve_system(const LocalSystem& sys, const Eigen::MatrixXd& C0vals, const CNet& cnet) {
  const Eigen::Index n = sys.layout.size(), m = C0vals.cols();
  Eigen::MatrixXd G(sys.G1.rows() + sys.Pin.rows(), n);
  G << sys.G1, sys.Pin;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(G.rows(), m);
  g.topRows(sys.G1.rows()) = -sys.G1 * C0vals;
  for (Eigen::Index r = 0; r < sys.Pin.rows(); ++r)
    if (sys.pin_to_zero[r]) g.row(sys.G1.rows() + r) = -sys.Pin.row(r) * C0vals;
  const Eigen::MatrixXd f = Eigen::MatrixXd::Zero(sys.F.rows(), m);

  ConstrainedLeastSquares ls(G, sys.F);
  Eigen::MatrixXd D;
  try {
    D = ls.solve(g, f);
  } catch (const InfeasibleConstraintError& err) {
    std::ostringstream msg;
    msg << err.what() << "; spoke edges";
    for (int e : sys.g1_edges) {
      const Edge& ed = cnet.edge(e);
      msg << " (" << ed.v0 << ',' << ed.v1 << ')';
    }
    throw InfeasibleConstraintError(msg.str());
  }
  SolvedSystem out;
  out.C = C0vals + D;
  out.rank = ls.rank();
  out.constraints = static_cast<int>(G.rows());
  out.ls_residual = (sys.F * D).colwise().norm().transpose();
  out.constraint_residual = (G * D - g).cwiseAbs().colwise().maxCoeff().transpose();
  if (G.rows() == 0) out.constraint_residual = Eigen::VectorXd::Zero(m);
  return out;
}

// Element coefficient rows (36 columns) of one solved system.
Eigen::MatrixXd element_rows(const LocalSystem& sys, int slot, const Eigen::MatrixXd& C) {
  Eigen::MatrixXd R(C.cols(), kN);
  for (int k = 0; k < kN; ++k) R.col(k) = C.row(sys.layout.node(slot, k)).transpose();
  return R;
}

void for_each(int n, ExecPolicy policy, const std::function<void(int)>& body) {
  if (policy == ExecPolicy::Serial) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

GSplineSurface build_g1(const GSplineSurface& c0, Variant variant, ExecPolicy policy) {
  if (c0.variant != Variant::C0) throw DomainError("G1 upgrade expects a C0 surface");
  GSplineSurface s = c0;
  s.variant = variant;
  s.diagnostics = {};
  if (variant == Variant::C0) return s;

  const CNet& cnet = c0.net.cnet;
  const std::set<int> spokes = spoke_edges(cnet);
  const int nf = static_cast<int>(cnet.num_faces());
  std::vector<Eigen::MatrixXd> elevated(nf);
  std::vector<int> irregular;
  for (int f = 0; f < nf; ++f)
    if (c0.element_class[f] == ElementClass::Irregular) {
      irregular.push_back(f);
      elevated[f] = elevate_irregular(c0.elements[f]);
    }
  if (irregular.empty()) return s;

  // Per irregular element: (function, 36 coefficients) pairs.
  std::vector<std::vector<std::pair<int, Eigen::VectorXd>>> rows(nf);

  if (variant == Variant::G1P) {
    const std::vector<int> block = irregular_blocks(cnet, c0.element_class);
    const int nb = *std::max_element(block.begin(), block.end()) + 1;
    std::vector<std::vector<int>> members(nb);
    for (int f : irregular) members[block[f]].push_back(f);
    std::vector<BlockDiagnostics> bdiag(nb);
    std::vector<std::vector<BasisDiagnostics>> fdiag(nb);

    for_each(nb, policy, [&](int b) {
      const LocalSystem sys = assemble(cnet, members[b], spokes);
      std::set<int> fs;
      for (int f : members[b])
        for (int a : c0.elements[f].basis) fs.insert(a);
      const std::vector<int> functions(fs.begin(), fs.end());
      const SolvedSystem sol = solve_system(sys, initial_values(sys, functions, c0.elements, elevated), cnet);

      for (std::size_t slot = 0; slot < members[b].size(); ++slot) {
        const Eigen::MatrixXd R = element_rows(sys, static_cast<int>(slot), sol.C);
        auto& out = rows[members[b][slot]];
        for (std::size_t a = 0; a < functions.size(); ++a)
          if (R.row(a).cwiseAbs().maxCoeff() >= kDropTol) out.emplace_back(functions[a], R.row(a).transpose());
      }
      bdiag[b] = {b, static_cast<int>(members[b].size()), sys.layout.size(), sol.constraints, sol.rank,
                  static_cast<int>(sys.g1_edges.size())};
      for (std::size_t a = 0; a < functions.size(); ++a) {
        int support = 0;
        for (std::size_t slot = 0; slot < members[b].size(); ++slot)
          if (element_rows(sys, static_cast<int>(slot), sol.C.col(a)).cwiseAbs().maxCoeff() >= kDropTol)
            ++support;
        fdiag[b].push_back({functions[a], b, sys.layout.size(), sol.constraints, sol.rank, support,
                            sol.ls_residual[a], sol.constraint_residual[a]});
      }
    });
    s.diagnostics.blocks = std::move(bdiag);
    for (auto& d : fdiag)
      s.diagnostics.basis.insert(s.diagnostics.basis.end(), d.begin(), d.end());
  } else {
    // Irregular elements of each function's C0 support.
    std::map<int, std::vector<int>> support;
    for (int f : irregular)
      for (int a : c0.elements[f].basis) support[a].push_back(f);
    std::vector<int> functions;
    for (const auto& [a, els] : support) functions.push_back(a);
    const int n = static_cast<int>(functions.size());
    std::vector<std::vector<std::pair<int, Eigen::VectorXd>>> per(n);
    std::vector<BasisDiagnostics> fdiag(n);

    for_each(n, policy, [&](int i) {
      const int a = functions[i];
      const std::vector<int>& els = support.at(a);
      const LocalSystem sys = assemble(cnet, els, spokes);
      const SolvedSystem sol = solve_system(sys, initial_values(sys, {a}, c0.elements, elevated), cnet);
      int nonzero = 0;
      for (std::size_t slot = 0; slot < els.size(); ++slot) {
        const Eigen::VectorXd r = element_rows(sys, static_cast<int>(slot), sol.C).row(0).transpose();
        per[i].emplace_back(els[slot], r);
        if (r.cwiseAbs().maxCoeff() >= kDropTol) ++nonzero;
      }
      fdiag[i] = {a, -1, sys.layout.size(), sol.constraints, sol.rank, nonzero, sol.ls_residual[0],
                  sol.constraint_residual[0]};
    });
    for (int i = 0; i < n; ++i)
      for (auto& [f, r] : per[i])
        if (r.cwiseAbs().maxCoeff() >= kDropTol) rows[f].emplace_back(functions[i], std::move(r));
    s.diagnostics.basis = std::move(fdiag);
  }

  for (int f : irregular) {
    auto& list = rows[f];
    std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    ElementExtraction& ext = s.elements[f];
    ext.degree = kP;
    ext.rational = variant == Variant::G1R;
    ext.basis.clear();
    ext.coeffs.resize(static_cast<Eigen::Index>(list.size()), kN);
    for (std::size_t r = 0; r < list.size(); ++r) {
      ext.basis.push_back(list[r].first);
      ext.coeffs.row(r) = list[r].second.transpose();
    }
  }
  s.update_geometry();
  return s;
}

GSplineSurface build_surface(const ControlNet& net, Variant variant, ExecPolicy policy) {
  GSplineSurface c0 = build_c0(net);
  if (variant == Variant::C0) return c0;
  return build_g1(c0, variant, policy);
}

}  // namespace gspline
