#include "gspline/refine.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "gspline/errors.hpp"

namespace gspline {

namespace {

double cos_pi_over(int mu) { return std::cos(std::numbers::pi / mu); }

Stencil compact(std::map<int, double> acc) {
  Stencil s;
  double sum = 0.0;
  for (const auto& [v, w] : acc) {
    sum += w;
    if (w != 0.0) s.emplace_back(v, w);
  }
  if (std::abs(sum - 1.0) > 1e-14) throw InternalError("refinement mask does not sum to one");
  return s;
}

}  // namespace

RefinementMasks refinement_masks(const CNet& cnet) {
  const int nv = static_cast<int>(cnet.num_vertices());
  const int nf = static_cast<int>(cnet.num_faces());
  const int ne = static_cast<int>(cnet.num_edges());
  RefinementMasks out;
  out.n_vertices = static_cast<std::size_t>(nv + nf + ne);
  out.masks.resize(out.n_vertices);

  for (int v = 0; v < nv; ++v) {
    std::map<int, double> m;
    const int mu = cnet.valence(v);
    if (cnet.is_boundary_vertex(v)) {
      if (mu == 1) {
        m[v] = 1.0;
      } else {
        m[v] += 0.75;
        for (int e : cnet.vertex_edges(v)) {
          if (!cnet.is_boundary_edge(e)) continue;
          const Edge& ed = cnet.edge(e);
          m[ed.v0 == v ? ed.v1 : ed.v0] += 0.125;
        }
      }
    } else {
      const double mu2 = double(mu) * mu;
      m[v] += 1.0 - 7.0 / (4.0 * mu);
      for (const Corner& c : cnet.fan(v)) {
        const Quad& q = cnet.face(c.face);
        m[q[(c.corner + 1) % 4]] += 3.0 / (2.0 * mu2);
        m[q[(c.corner + 2) % 4]] += 1.0 / (4.0 * mu2);
      }
    }
    out.masks[v] = compact(std::move(m));
  }

  for (int f = 0; f < nf; ++f) {
    std::map<int, double> m;
    for (int v : cnet.face(f)) m[v] += 0.25;
    out.masks[nv + f] = compact(std::move(m));
  }

  for (int e = 0; e < ne; ++e) {
    const Edge& ed = cnet.edge(e);
    std::map<int, double> m;
    if (cnet.is_boundary_edge(e)) {
      m[ed.v0] += 0.5;
      m[ed.v1] += 0.5;
    } else {
      double w0 = 0.375, w1 = 0.375;
      if (cnet.is_boundary_vertex(ed.v0)) {
        const double c = 0.25 * cos_pi_over(cnet.valence(ed.v0));
        w0 += c;
        w1 -= c;
      }
      if (cnet.is_boundary_vertex(ed.v1)) {
        const double c = 0.25 * cos_pi_over(cnet.valence(ed.v1));
        w1 += c;
        w0 -= c;
      }
      m[ed.v0] += w0;
      m[ed.v1] += w1;
      for (int h : ed.half) {
        const Quad& q = cnet.face(h / 4);
        m[q[(h + 2) % 4]] += 1.0 / 16.0;
        m[q[(h + 3) % 4]] += 1.0 / 16.0;
      }
    }
    out.masks[nv + nf + e] = compact(std::move(m));
  }

  out.faces.reserve(4 * static_cast<std::size_t>(nf));
  for (int f = 0; f < nf; ++f) {
    const Quad& q = cnet.face(f);
    for (int k = 0; k < 4; ++k) {
      const int next = nv + nf + cnet.edge_of(4 * f + k);
      const int prev = nv + nf + cnet.edge_of(4 * f + (k + 3) % 4);
      out.faces.push_back({q[k], next, nv + f, prev});
    }
  }
  return out;
}

ControlNet refine(const ControlNet& net, ExecPolicy policy) {
  RefinementMasks rm = refinement_masks(net.cnet);
  const int n = static_cast<int>(rm.n_vertices);
  std::vector<Vec3> pos(n, Vec3::Zero());
  auto apply = [&](int i) {
    Vec3 p = Vec3::Zero();
    for (const auto& [v, w] : rm.masks[i]) p += w * net.positions[v];
    pos[i] = p;
  };
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) apply(i);
  } else {
    for (int i = 0; i < n; ++i) apply(i);
  }
  return ControlNet(CNet(rm.n_vertices, std::move(rm.faces)), std::move(pos));
}

ControlNet refine_n(const ControlNet& net, int levels, std::vector<RefineLevel>* log, ExecPolicy policy) {
  if (levels < 0) throw DomainError("refinement level count must be nonnegative");
  if (levels > 8) throw ResourceError("more than 8 refinement levels requested");
  auto record = [&](int level, const ControlNet& n) {
    if (log)
      log->push_back({level, n.cnet.num_vertices(), n.cnet.num_faces(),
                      extraordinary_vertices(n.cnet).size()});
  };
  ControlNet cur = net;
  record(0, cur);
  for (int l = 1; l <= levels; ++l) {
    cur = refine(cur, policy);
    record(l, cur);
  }
  return cur;
}

}  // namespace gspline
