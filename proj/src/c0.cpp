#include "gspline/c0.hpp"

#include <map>

#include "gspline/errors.hpp"

namespace gspline {

namespace {

using Accum = std::map<int, double>;

Stencil finish(const Accum& acc) {
  Stencil s;
  s.reserve(acc.size());
  for (const auto& [v, w] : acc)
    if (w != 0.0) s.emplace_back(v, w);
  return s;
}

void add(Accum& acc, const Accum& other, double scale) {
  for (const auto& [v, w] : other) acc[v] += scale * w;
}

class StencilBuilder {
public:
  explicit StencilBuilder(const CNet& cnet) : cnet_(cnet) {}

  // Face Bezier point next to corner k: the uniform bi-cubic B-spline weights
  // 4/9 (own corner), 2/9 (edge neighbours), 1/9 (opposite corner).
  Accum face_point(int f, int k) const {
    const Quad& q = cnet_.face(f);
    Accum a;
    a[q[k]] += 4.0 / 9.0;
    a[q[(k + 1) % 4]] += 2.0 / 9.0;
    a[q[(k + 3) % 4]] += 2.0 / 9.0;
    a[q[(k + 2) % 4]] += 1.0 / 9.0;
    return a;
  }

  // Edge Bezier point on half-edge h, next to the origin vertex of h.
  Accum edge_point_near_origin(int h) const {
    const int t = cnet_.twin(h);
    Accum a;
    if (t < 0) {
      a[cnet_.half_origin(h)] += 2.0 / 3.0;
      a[cnet_.half_target(h)] += 1.0 / 3.0;
      return a;
    }
    // The origin of h is the target of its twin, i.e. corner (t+1) of that face.
    add(a, face_point(h / 4, h % 4), 0.5);
    add(a, face_point(t / 4, (t % 4 + 1) % 4), 0.5);
    return a;
  }

  Accum vertex_point(int v) const {
    Accum a;
    if (!cnet_.is_boundary_vertex(v)) {
      const auto fan = cnet_.fan(v);
      const double w = 1.0 / static_cast<double>(fan.size());
      for (const Corner& c : fan) add(a, face_point(c.face, c.corner), w);
      return a;
    }
    if (cnet_.valence(v) == 1) {
      a[v] = 1.0;
      return a;
    }
    // Average of the boundary edge points adjacent to v.
    for (int e : cnet_.vertex_edges(v)) {
      if (!cnet_.is_boundary_edge(e)) continue;
      const Edge& ed = cnet_.edge(e);
      const int other = ed.v0 == v ? ed.v1 : ed.v0;
      a[v] += 0.5 * 2.0 / 3.0;
      a[other] += 0.5 * 1.0 / 3.0;
    }
    return a;
  }

private:
  const CNet& cnet_;
};

}  // namespace

std::vector<std::array<Stencil, 16>> c0_bezier_stencils(const CNet& cnet) {
  StencilBuilder sb(cnet);
  std::vector<Accum> vertex_points(cnet.num_vertices());
  for (std::size_t v = 0; v < cnet.num_vertices(); ++v)
    vertex_points[v] = sb.vertex_point(static_cast<int>(v));

  std::vector<std::array<Stencil, 16>> out(cnet.num_faces());
  for (std::size_t f = 0; f < cnet.num_faces(); ++f) {
    const int fi = static_cast<int>(f);
    for (int k = 0; k < 4; ++k) {
      // Local frame at corner k: (0,0) vertex, (1,0) and (0,1) edge points,
      // (1,1) face point.
      const int outgoing = 4 * fi + k;
      const int incoming = 4 * fi + (k + 3) % 4;
      out[f][corner_frame_index(3, k, 0, 0)] = finish(vertex_points[cnet.face(fi)[k]]);
      out[f][corner_frame_index(3, k, 1, 1)] = finish(sb.face_point(fi, k));
      out[f][corner_frame_index(3, k, 1, 0)] = finish(sb.edge_point_near_origin(outgoing));
      // The incoming half-edge ends at this corner, so use its twin when it
      // exists; on the boundary the curve formula is symmetric.
      const int t = cnet.twin(incoming);
      if (t >= 0) {
        out[f][corner_frame_index(3, k, 0, 1)] = finish(sb.edge_point_near_origin(t));
      } else {
        Accum a;
        a[cnet.face(fi)[k]] += 2.0 / 3.0;
        a[cnet.face(fi)[(k + 3) % 4]] += 1.0 / 3.0;
        out[f][corner_frame_index(3, k, 0, 1)] = finish(a);
      }
    }
  }
  return out;
}

GSplineSurface build_c0(const ControlNet& net) {
  const CNet& cnet = net.cnet;
  const auto stencils = c0_bezier_stencils(cnet);
  GSplineSurface s;
  s.net = net;
  s.variant = Variant::C0;
  s.element_class = classify_elements(cnet);
  s.elements.resize(cnet.num_faces());
  for (std::size_t f = 0; f < cnet.num_faces(); ++f) {
    std::map<int, int> rows;
    for (const Stencil& st : stencils[f])
      for (const auto& [v, w] : st) rows.emplace(v, 0);
    ElementExtraction& ext = s.elements[f];
    ext.element = static_cast<int>(f);
    ext.degree = 3;
    int r = 0;
    for (auto& [v, row] : rows) {
      row = r++;
      ext.basis.push_back(v);
    }
    ext.coeffs = Eigen::MatrixXd::Zero(r, 16);
    for (int k = 0; k < 16; ++k)
      for (const auto& [v, w] : stencils[f][k]) ext.coeffs(rows[v], k) += w;
  }
  s.update_geometry();
  return s;
}

}  // namespace gspline
