#include "gspline/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "gspline/c0.hpp"
#include "gspline/errors.hpp"
#include "gspline/quadrature.hpp"

namespace gspline {

double vertex_omega(const CNet& cnet, int v) {
  const double a = cnet.is_boundary_vertex(v) ? 1.0 : 2.0;
  return std::cos(a * std::numbers::pi / cnet.valence(v));
}

EdgeFrame edge_frame(const CNet& cnet, int edge, int vertex1) {
  const Edge& ed = cnet.edge(edge);
  if (ed.half[1] < 0)
    throw DomainError("edge " + std::to_string(edge) + " lies on the boundary");
  if (vertex1 != ed.v0 && vertex1 != ed.v1) throw DomainError("vertex is not an endpoint of the edge");
  const int h0 = cnet.half_origin(ed.half[0]) == vertex1 ? ed.half[0] : ed.half[1];
  const int h1 = cnet.twin(h0);
  EdgeFrame fr;
  fr.edge = edge;
  fr.v1 = vertex1;
  fr.v2 = vertex1 == ed.v0 ? ed.v1 : ed.v0;
  fr.face_cur = h0 / 4;
  fr.corner_cur = h0 % 4;
  fr.face_prev = h1 / 4;
  fr.corner_prev = (h1 % 4 + 1) % 4;
  fr.omega1 = vertex_omega(cnet, fr.v1);
  fr.omega2 = vertex_omega(cnet, fr.v2);
  return fr;
}

EdgeFrame spoke_edge_frame(const CNet& cnet, int edge) {
  const Edge& ed = cnet.edge(edge);
  const auto vc = classify_vertices(cnet);
  int v1 = ed.v0;
  if (!vc[ed.v0].is_extraordinary && vc[ed.v1].is_extraordinary) v1 = ed.v1;
  return edge_frame(cnet, edge, v1);
}

namespace {

// Basis of one element in the frame of one of its corners, keyed by global id.
struct LocalEval {
  const ElementExtraction* ext;
  BasisEval b;
};

LocalEval eval_in_frame(const GSplineSurface& s, int face, int corner, double u, double w) {
  const ElementExtraction& ext = s.elements[face];
  const Eigen::Vector2d uv = corner_frame_point(corner, u, w);
  const double xi = std::clamp(uv.x(), 0.0, 1.0), eta = std::clamp(uv.y(), 0.0, 1.0);
  return {&ext, to_corner_frame(evaluate_element_basis(ext, xi, eta), corner)};
}

// Union of basis ids on two elements; value -1 marks absence.
std::map<int, std::pair<int, int>> paired_rows(const ElementExtraction& a, const ElementExtraction& b) {
  std::map<int, std::pair<int, int>> rows;
  for (std::size_t r = 0; r < a.basis.size(); ++r) rows[a.basis[r]] = {static_cast<int>(r), -1};
  for (std::size_t r = 0; r < b.basis.size(); ++r) {
    auto it = rows.find(b.basis[r]);
    if (it == rows.end())
      rows[b.basis[r]] = {-1, static_cast<int>(r)};
    else
      it->second.second = static_cast<int>(r);
  }
  return rows;
}

double at(const Eigen::VectorXd& v, int r) { return r < 0 ? 0.0 : v[r]; }

}  // namespace

double geometry_continuity_residual(const GSplineSurface& s, int edge, int order, int samples) {
  if (order < 0 || order > 2) throw DomainError("continuity order must be 0, 1 or 2");
  const CNet& cnet = s.net.cnet;
  const EdgeFrame fr = edge_frame(cnet, edge, cnet.edge(edge).v0);
  const auto rows = paired_rows(s.elements[fr.face_prev], s.elements[fr.face_cur]);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = samples == 1 ? 0.5 : double(i) / (samples - 1);
    const LocalEval p = eval_in_frame(s, fr.face_prev, fr.corner_prev, 0.0, v);
    const LocalEval c = eval_in_frame(s, fr.face_cur, fr.corner_cur, v, 0.0);
    for (const auto& [id, rc] : rows) {
      const auto [rp, rq] = rc;
      double jump = 0.0;
      switch (order) {
        case 0: jump = at(p.b.value, rp) - at(c.b.value, rq); break;
        case 1: jump = at(p.b.d_xi, rp) + at(c.b.d_eta, rq); break;
        default: jump = at(p.b.d_xixi, rp) - at(c.b.d_etaeta, rq); break;
      }
      worst = std::max(worst, std::abs(jump));
    }
  }
  return worst;
}

double g1_residual(const GSplineSurface& s, int edge, int samples) {
  const EdgeFrame fr = spoke_edge_frame(s.net.cnet, edge);
  const auto rows = paired_rows(s.elements[fr.face_prev], s.elements[fr.face_cur]);
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = samples == 1 ? 0.5 : double(i) / (samples - 1);
    const double bv = -2.0 * fr.omega1 * (1 - v) * (1 - v) + 2.0 * fr.omega2 * v * v;
    const LocalEval p = eval_in_frame(s, fr.face_prev, fr.corner_prev, 0.0, v);
    const LocalEval c = eval_in_frame(s, fr.face_cur, fr.corner_cur, v, 0.0);
    for (const auto& [id, rc] : rows) {
      const auto [rp, rq] = rc;
      const double r = at(p.b.d_xi, rp) + bv * at(c.b.d_xi, rq) + at(c.b.d_eta, rq);
      worst = std::max(worst, std::abs(r));
      scale = std::max({scale, std::abs(at(p.b.d_xi, rp)), std::abs(at(p.b.d_eta, rp)),
                        std::abs(at(c.b.d_xi, rq)), std::abs(at(c.b.d_eta, rq))});
    }
  }
  return scale > 0.0 ? worst / scale : worst;
}

namespace {

std::pair<MapEval, MapEval> edge_maps(const GSplineSurface& s, const EdgeFrame& fr, double v) {
  const Eigen::Vector2d up = corner_frame_point(fr.corner_prev, 0.0, v);
  const Eigen::Vector2d uc = corner_frame_point(fr.corner_cur, v, 0.0);
  return {map_point(s, fr.face_prev, std::clamp(up.x(), 0.0, 1.0), std::clamp(up.y(), 0.0, 1.0)),
          map_point(s, fr.face_cur, std::clamp(uc.x(), 0.0, 1.0), std::clamp(uc.y(), 0.0, 1.0))};
}

}  // namespace

double normal_jump(const GSplineSurface& s, int edge, int samples) {
  const CNet& cnet = s.net.cnet;
  const EdgeFrame fr = edge_frame(cnet, edge, cnet.edge(edge).v0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = samples == 1 ? 0.5 : double(i) / (samples - 1);
    const auto [mp, mc] = edge_maps(s, fr, v);
    const Vec3 np = mp.x_xi.cross(mp.x_eta);
    const Vec3 nc = mc.x_xi.cross(mc.x_eta);
    if (np.norm() == 0.0 || nc.norm() == 0.0) continue;  // degenerate tangent plane at an EP
    const double ang = std::atan2(np.cross(nc).norm(), np.dot(nc));
    worst = std::max(worst, ang);
  }
  return worst;
}

double watertight_residual(const GSplineSurface& s, int edge, int samples) {
  const CNet& cnet = s.net.cnet;
  const EdgeFrame fr = edge_frame(cnet, edge, cnet.edge(edge).v0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = samples == 1 ? 0.5 : double(i) / (samples - 1);
    const auto [mp, mc] = edge_maps(s, fr, v);
    worst = std::max(worst, (mp.x - mc.x).norm());
  }
  return worst;
}

double partition_of_unity_error(const GSplineSurface& s, bool rationalized) {
  double worst = 0.0;
  for (const ElementExtraction& ext : s.elements) {
    const QuadratureRule q = gauss_legendre(ext.degree + 1);
    for (double eta : q.points)
      for (double xi : q.points) {
        const BasisEval b =
            rationalized ? evaluate_element_basis(ext, xi, eta) : evaluate_basis(ext, xi, eta);
        worst = std::max(worst, std::abs(b.value.sum() - 1.0));
      }
  }
  return worst;
}

std::pair<double, double> denominator_range(const GSplineSurface& s) {
  double lo = 1.0, hi = 1.0;
  for (const ElementExtraction& ext : s.elements) {
    if (!ext.rational) continue;
    const QuadratureRule q = gauss_legendre(ext.degree + 1);
    for (double eta : q.points)
      for (double xi : q.points) {
        const double w = evaluate_basis(ext, xi, eta).value.sum();
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
  }
  return {lo, hi};
}

double column_sum_error(const GSplineSurface& s) {
  double worst = 0.0;
  for (const ElementExtraction& ext : s.elements)
    worst = std::max(worst, (column_sums(ext).array() - 1.0).abs().maxCoeff());
  return worst;
}

double collocation_rank_ratio(const GSplineSurface& s) {
  const int per = 4;
  const Eigen::Index rows = static_cast<Eigen::Index>(s.num_elements()) * per * per;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(s.num_basis()));
  Eigen::Index r = 0;
  for (const ElementExtraction& ext : s.elements)
    for (int j = 0; j < per; ++j)
      for (int i = 0; i < per; ++i, ++r) {
        const BasisEval b = evaluate_element_basis(ext, (i + 0.5) / per, (j + 0.5) / per);
        for (std::size_t a = 0; a < ext.basis.size(); ++a) A(r, ext.basis[a]) = b.value[a];
      }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0.0;
  return sv[sv.size() - 1] / sv[0];
}

CheckReport check_surface(const GSplineSurface& s) {
  const CNet& cnet = s.net.cnet;
  const auto spokes = spoke_edges(cnet);
  CheckReport rep;
  for (int e = 0; e < static_cast<int>(cnet.num_edges()); ++e) {
    if (cnet.is_boundary_edge(e)) continue;
    const Edge& ed = cnet.edge(e);
    const int f0 = ed.half[0] / 4, f1 = ed.half[1] / 4;
    const bool irr0 = s.element_class[f0] == ElementClass::Irregular;
    const bool irr1 = s.element_class[f1] == ElementClass::Irregular;
    rep.max_watertight = std::max(rep.max_watertight, watertight_residual(s, e));
    if (spokes.count(e)) {
      const double nj = normal_jump(s, e);
      rep.normal.push_back({e, nj});
      rep.max_normal_jump = std::max(rep.max_normal_jump, nj);
      if (s.variant != Variant::C0) {
        const double g = g1_residual(s, e);
        rep.g1.push_back({e, g});
        rep.max_g1 = std::max(rep.max_g1, g);
      }
    } else if (irr0 || irr1) {
      const double c = geometry_continuity_residual(s, e, 1);
      rep.c1.push_back({e, c});
      rep.max_c1 = std::max(rep.max_c1, c);
    } else {
      const double c = geometry_continuity_residual(s, e, 2);
      rep.c2.push_back({e, c});
      rep.max_c2 = std::max(rep.max_c2, c);
    }
  }
  rep.column_sum_error = column_sum_error(s);
  rep.partition_of_unity_error = partition_of_unity_error(s, true);
  std::tie(rep.denominator_min, rep.denominator_max) = denominator_range(s);
  rep.rank_ratio = collocation_rank_ratio(s);
  return rep;
}

}  // namespace gspline
