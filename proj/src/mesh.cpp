#include "gspline/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gspline/errors.hpp"

namespace gspline {

namespace {

long long edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<long long>(a) << 32) | static_cast<unsigned int>(b);
}

}  // namespace

CNet::CNet(std::size_t n_vertices, std::vector<Quad> faces)
    : n_vertices_(n_vertices), faces_(std::move(faces)) {
  if (faces_.empty()) throw EmptyError("control net has no faces");
  const int nf = static_cast<int>(faces_.size());
  for (int f = 0; f < nf; ++f) {
    const Quad& q = faces_[f];
    for (int k = 0; k < 4; ++k) {
      if (q[k] < 0 || static_cast<std::size_t>(q[k]) >= n_vertices_)
        throw TopologyError("face " + std::to_string(f) + " references vertex out of range");
      for (int l = k + 1; l < 4; ++l)
        if (q[k] == q[l])
          throw TopologyError("face " + std::to_string(f) + " repeats a vertex");
    }
  }

  // Directed half-edges must be unique, otherwise two faces traverse an edge
  // in the same direction (orientation flip) or the edge is non-manifold.
  std::map<std::pair<int, int>, int> directed;
  for (int h = 0; h < 4 * nf; ++h) {
    auto [it, inserted] = directed.emplace(std::make_pair(half_origin(h), half_target(h)), h);
    if (!inserted) {
      std::ostringstream msg;
      msg << "edge (" << half_origin(h) << ", " << half_target(h)
          << ") traversed twice in the same direction (faces " << it->second / 4 << " and "
          << h / 4 << ")";
      throw TopologyError(msg.str());
    }
  }

  twin_.assign(4 * nf, -1);
  half_edge_.assign(4 * nf, -1);
  std::map<long long, int> edge_index;
  for (int h = 0; h < 4 * nf; ++h) {
    const int a = half_origin(h);
    const int b = half_target(h);
    auto rev = directed.find({b, a});
    if (rev != directed.end()) twin_[h] = rev->second;
    auto [it, inserted] = edge_index.emplace(edge_key(a, b), static_cast<int>(edges_.size()));
    if (inserted) {
      Edge e;
      e.v0 = std::min(a, b);
      e.v1 = std::max(a, b);
      e.half = {h, twin_[h]};
      edges_.push_back(e);
    }
    half_edge_[h] = it->second;
  }

  // Ordered fans. Rotating counterclockwise around v goes from corner (f, k)
  // across the incoming edge (f, k-1) to the face on its other side.
  std::vector<std::vector<Corner>> corners(n_vertices_);
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < 4; ++k) corners[faces_[f][k]].push_back({f, k});

  fans_.assign(n_vertices_, {});
  boundary_vertex_.assign(n_vertices_, false);
  vertex_edges_.assign(n_vertices_, {});
  for (std::size_t v = 0; v < n_vertices_; ++v) {
    const auto& cs = corners[v];
    if (cs.empty())
      throw TopologyError("vertex " + std::to_string(v) + " is not used by any face");
    Corner start = cs.front();
    bool boundary = false;
    for (const Corner& c : cs) {
      if (twin_[4 * c.face + c.corner] < 0) {
        start = c;
        boundary = true;
        break;
      }
    }
    std::vector<Corner> fan;
    Corner cur = start;
    while (true) {
      fan.push_back(cur);
      if (fan.size() > cs.size()) break;
      const int incoming = 4 * cur.face + (cur.corner + 3) % 4;
      const int t = twin_[incoming];
      if (t < 0) break;
      Corner next{t / 4, t % 4};
      if (next.face == start.face && next.corner == start.corner) break;
      cur = next;
    }
    if (fan.size() != cs.size())
      throw TopologyError("vertex " + std::to_string(v) + " has a non-manifold face fan");
    boundary_vertex_[v] = boundary;
    fans_[v] = std::move(fan);

    // Incident edges: the outgoing edge of every fan corner, plus the final
    // incoming boundary edge of an open fan.
    auto& ve = vertex_edges_[v];
    for (const Corner& c : fans_[v]) ve.push_back(half_edge_[4 * c.face + c.corner]);
    if (boundary) {
      const Corner& last = fans_[v].back();
      ve.push_back(half_edge_[4 * last.face + (last.corner + 3) % 4]);
    }
  }

  // An edge shared by more than two faces would have produced a repeated
  // directed half-edge above; this catches the remaining pinched cases.
  for (std::size_t v = 0; v < n_vertices_; ++v) {
    int nb = 0;
    for (int e : vertex_edges_[v])
      if (is_boundary_edge(e)) ++nb;
    if (boundary_vertex_[v] && nb != 2)
      throw TopologyError("boundary vertex " + std::to_string(v) + " is not a manifold boundary");
  }
}

int CNet::find_edge(int a, int b) const {
  if (a < 0 || static_cast<std::size_t>(a) >= n_vertices_) return -1;
  for (int e : vertex_edges_[a]) {
    const Edge& ed = edges_[e];
    if ((ed.v0 == a && ed.v1 == b) || (ed.v1 == a && ed.v0 == b)) return e;
  }
  return -1;
}

ControlNet::ControlNet(CNet c, std::vector<Vec3> p) : cnet(std::move(c)), positions(std::move(p)) {
  if (positions.size() != cnet.num_vertices())
    throw TopologyError("number of positions does not match number of vertices");
  for (const Vec3& x : positions)
    if (!x.allFinite()) throw FormatError("non-finite control point coordinate");
}

const char* to_string(ElementClass c) {
  switch (c) {
    case ElementClass::Irregular: return "irregular";
    case ElementClass::Transition: return "transition";
    case ElementClass::Regular: return "regular";
  }
  return "?";
}

std::vector<VertexClass> classify_vertices(const CNet& cnet) {
  std::vector<VertexClass> out(cnet.num_vertices());
  for (std::size_t v = 0; v < out.size(); ++v) {
    VertexClass& c = out[v];
    c.valence = cnet.valence(static_cast<int>(v));
    c.is_boundary = cnet.is_boundary_vertex(static_cast<int>(v));
    c.is_corner = c.is_boundary && c.valence == 1;
    c.is_extraordinary = c.is_boundary ? c.valence > 2 : c.valence != 4;
  }
  return out;
}

std::vector<int> extraordinary_vertices(const CNet& cnet) {
  std::vector<int> eps;
  const auto classes = classify_vertices(cnet);
  for (std::size_t v = 0; v < classes.size(); ++v)
    if (classes[v].is_extraordinary) eps.push_back(static_cast<int>(v));
  return eps;
}

namespace {

// Face layers 1..max_m around a vertex; layer[m-1] holds the m-ring faces.
std::vector<std::set<int>> face_layers(const CNet& cnet, int ep, int max_m) {
  std::vector<std::set<int>> layers;
  std::set<int> seen;
  std::set<int> current;
  for (const Corner& c : cnet.fan(ep)) current.insert(c.face);
  for (int m = 1; m <= max_m; ++m) {
    if (m > 1) {
      std::set<int> next;
      for (int f : layers.back())
        for (int v : cnet.face(f))
          for (const Corner& c : cnet.fan(v))
            if (!seen.count(c.face)) next.insert(c.face);
      current = std::move(next);
    }
    seen.insert(current.begin(), current.end());
    layers.push_back(current);
  }
  return layers;
}

void check_vertex(const CNet& cnet, int v) {
  if (v < 0 || static_cast<std::size_t>(v) >= cnet.num_vertices())
    throw DomainError("vertex index out of range");
}

}  // namespace

std::set<int> ring_faces(const CNet& cnet, int ep, int m) {
  check_vertex(cnet, ep);
  if (m < 1) throw DomainError("0-ring faces are undefined");
  return face_layers(cnet, ep, m).back();
}

std::set<int> ring_vertices(const CNet& cnet, int ep, int m) {
  check_vertex(cnet, ep);
  if (m < 0) throw DomainError("negative ring index");
  if (m == 0) return {ep};
  const auto layers = face_layers(cnet, ep, m);
  std::set<int> lower{ep};
  std::set<int> ring;
  for (int k = 1; k <= m; ++k) {
    ring.clear();
    for (int f : layers[k - 1])
      for (int v : cnet.face(f))
        if (!lower.count(v)) ring.insert(v);
    lower.insert(ring.begin(), ring.end());
  }
  return ring;
}

std::vector<ElementClass> classify_elements(const CNet& cnet) {
  std::vector<ElementClass> out(cnet.num_faces(), ElementClass::Regular);
  for (int ep : extraordinary_vertices(cnet)) {
    const auto layers = face_layers(cnet, ep, 2);
    for (int f : layers[1])
      if (out[f] == ElementClass::Regular) out[f] = ElementClass::Transition;
    for (int f : layers[0]) out[f] = ElementClass::Irregular;
  }
  return out;
}

std::set<int> spoke_edges(const CNet& cnet) {
  std::set<int> out;
  for (int ep : extraordinary_vertices(cnet))
    for (int e : cnet.vertex_edges(ep)) out.insert(e);
  return out;
}

std::set<int> irregular_basis_vertices(const CNet& cnet) {
  std::set<int> out;
  for (int ep : extraordinary_vertices(cnet))
    for (int m = 0; m <= 2; ++m) {
      const auto r = ring_vertices(cnet, ep, m);
      out.insert(r.begin(), r.end());
    }
  return out;
}

}  // namespace gspline
