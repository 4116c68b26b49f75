#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace gspline {

using Vec3 = Eigen::Vector3d;
using Quad = std::array<int, 4>;

/// One corner of a face: the face index and the position (0..3) of the
/// vertex inside the face's counterclockwise vertex list.
struct Corner {
  int face = -1;
  int corner = -1;
};

/// Undirected edge. `v0 < v1`. `half[1]` is -1 on boundary edges.
struct Edge {
  int v0 = -1;
  int v1 = -1;
  std::array<int, 2> half{-1, -1};
};

/// Pure quadrilateral connectivity (the C-net).
///
/// Half-edge `4 * f + k` runs from `face(f)[k]` to `face(f)[(k + 1) % 4]`.
/// Construction validates quad faces, manifoldness and consistent
/// orientation; the object is immutable afterwards.
class CNet {
public:
  CNet() = default;
  CNet(std::size_t n_vertices, std::vector<Quad> faces);

  std::size_t num_vertices() const { return n_vertices_; }
  std::size_t num_faces() const { return faces_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const Quad& face(int f) const { return faces_[f]; }
  const std::vector<Quad>& faces() const { return faces_; }
  const Edge& edge(int e) const { return edges_[e]; }

  int half_origin(int h) const { return faces_[h / 4][h % 4]; }
  int half_target(int h) const { return faces_[h / 4][(h + 1) % 4]; }
  int twin(int h) const { return twin_[h]; }
  int edge_of(int h) const { return half_edge_[h]; }
  /// Edge joining two vertices, or -1.
  int find_edge(int a, int b) const;

  int valence(int v) const { return static_cast<int>(fans_[v].size()); }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }
  bool is_boundary_edge(int e) const { return edges_[e].half[1] < 0; }

  /// Faces around a vertex in counterclockwise order. Boundary fans start at
  /// the face whose outgoing edge lies on the boundary.
  std::span<const Corner> fan(int v) const { return fans_[v]; }
  std::span<const int> vertex_edges(int v) const { return vertex_edges_[v]; }

private:
  std::size_t n_vertices_ = 0;
  std::vector<Quad> faces_;
  std::vector<int> twin_;
  std::vector<int> half_edge_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Corner>> fans_;
  std::vector<std::vector<int>> vertex_edges_;
  std::vector<bool> boundary_vertex_;
};

/// C-net plus one control point per vertex.
struct ControlNet {
  CNet cnet;
  std::vector<Vec3> positions;

  ControlNet() = default;
  ControlNet(CNet c, std::vector<Vec3> p);
};

struct VertexClass {
  int valence = 0;
  bool is_boundary = false;
  bool is_extraordinary = false;
  bool is_corner = false;
};

enum class ElementClass { Irregular, Transition, Regular };

const char* to_string(ElementClass c);

std::vector<VertexClass> classify_vertices(const CNet& cnet);
std::vector<int> extraordinary_vertices(const CNet& cnet);

/// m-ring faces of an extraordinary vertex (breadth-first layers, m >= 1).
std::set<int> ring_faces(const CNet& cnet, int ep, int m);
/// m-ring vertices (m = 0 is the vertex itself).
std::set<int> ring_vertices(const CNet& cnet, int ep, int m);

/// Per face: Irregular if in the 1-ring of any EP, Transition if in the
/// 2-ring of any EP, Regular otherwise (minimum ring index wins).
std::vector<ElementClass> classify_elements(const CNet& cnet);
std::set<int> spoke_edges(const CNet& cnet);
/// Vertices in the 0-, 1- or 2-ring of some EP.
std::set<int> irregular_basis_vertices(const CNet& cnet);

/// Wavefront OBJ. Only `v` and `f` records are read.
ControlNet load_obj(std::istream& in);
ControlNet load_obj_file(const std::string& path);
void write_obj(std::ostream& out, const ControlNet& net);
void write_obj_file(const std::string& path, const ControlNet& net);

}  // namespace gspline
