#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "gspline/errors.hpp"
#include "gspline/mesh.hpp"
#include "gspline/nets.hpp"

using namespace gspline;

namespace {

// Faces sharing a vertex with `faces`, brute force over the face list.
std::set<int> touching(const CNet& c, const std::set<int>& faces) {
  std::set<int> verts;
  for (int f : faces)
    for (int v : c.face(f)) verts.insert(v);
  std::set<int> out;
  for (std::size_t f = 0; f < c.num_faces(); ++f)
    for (int v : c.face(static_cast<int>(f)))
      if (verts.count(v)) out.insert(static_cast<int>(f));
  return out;
}

std::vector<std::set<int>> brute_rings(const CNet& c, int ep, int m) {
  std::vector<std::set<int>> rings;
  std::set<int> first;
  for (std::size_t f = 0; f < c.num_faces(); ++f)
    for (int v : c.face(static_cast<int>(f)))
      if (v == ep) first.insert(static_cast<int>(f));
  rings.push_back(first);
  std::set<int> seen = first;
  for (int k = 2; k <= m; ++k) {
    std::set<int> next;
    for (int f : touching(c, rings.back()))
      if (!seen.count(f)) next.insert(f);
    seen.insert(next.begin(), next.end());
    rings.push_back(next);
  }
  return rings;
}

}  // namespace

TEST_CASE("obj: single quad") {
  const ControlNet net = load_obj_file(std::string(GSPLINE_TEST_DATA) + "/quad.obj");
  CHECK(net.cnet.num_vertices() == 4);
  CHECK(net.cnet.num_faces() == 1);
  CHECK(net.cnet.num_edges() == 4);
  const auto vc = classify_vertices(net.cnet);
  for (const auto& v : vc) {
    CHECK(v.is_boundary);
    CHECK(v.is_corner);
    CHECK_FALSE(v.is_extraordinary);
  }
  for (int e = 0; e < 4; ++e) CHECK(net.cnet.is_boundary_edge(e));
}

TEST_CASE("obj: triangle rejected") {
  CHECK_THROWS_AS(load_obj_file(std::string(GSPLINE_TEST_DATA) + "/triangle.obj"), FormatError);
}

TEST_CASE("obj: 3x3 grid") {
  const ControlNet net = load_obj_file(std::string(GSPLINE_TEST_DATA) + "/grid3.obj");
  CHECK(net.cnet.num_vertices() == 16);
  CHECK(extraordinary_vertices(net.cnet).empty());
  CHECK(net.cnet.valence(5) == 4);
  CHECK_FALSE(net.cnet.is_boundary_vertex(5));
  const auto vc = classify_vertices(net.cnet);
  CHECK(std::count_if(vc.begin(), vc.end(), [](const VertexClass& v) { return v.is_corner; }) == 4);
}

TEST_CASE("obj: errors") {
  std::istringstream empty("v 0 0 0\n");
  CHECK_THROWS_AS(load_obj(empty), EmptyError);
  std::istringstream flipped("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 2 0 0\nv 2 1 0\nf 1 2 3 4\nf 2 3 6 5\n");
  CHECK_THROWS_AS(load_obj(flipped), TopologyError);
  std::istringstream nonmanifold(
      "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 2 0 0\nv 2 1 0\nv 1 0 1\nv 1 1 1\n"
      "f 1 2 3 4\nf 2 5 6 3\nf 3 8 7 2\n");
  CHECK_THROWS_AS(load_obj(nonmanifold), TopologyError);
  std::istringstream badnum("v 0 0 x\n");
  CHECK_THROWS_AS(load_obj(badnum), FormatError);
}

TEST_CASE("obj: round trip keeps positions exactly") {
  const ControlNet net = lift_z(flipped_square(6), 0.3);
  std::ostringstream out;
  write_obj(out, net);
  std::istringstream in(out.str());
  const ControlNet back = load_obj(in);
  REQUIRE(back.positions.size() == net.positions.size());
  for (std::size_t i = 0; i < net.positions.size(); ++i) CHECK(back.positions[i] == net.positions[i]);
  CHECK(back.cnet.faces() == net.cnet.faces());
}

TEST_CASE("classify: cube and grid") {
  const ControlNet cube = cube_net(1);
  CHECK(cube.cnet.num_vertices() == 8);
  for (const auto& v : classify_vertices(cube.cnet)) {
    CHECK(v.valence == 3);
    CHECK_FALSE(v.is_boundary);
    CHECK(v.is_extraordinary);
  }
  for (auto c : classify_elements(cube.cnet)) CHECK(c == ElementClass::Irregular);

  const ControlNet grid = structured_grid(3, 3);
  const auto vc = classify_vertices(grid.cnet);
  CHECK(std::none_of(vc.begin(), vc.end(), [](const VertexClass& v) { return v.is_extraordinary; }));
  for (auto c : classify_elements(grid.cnet)) CHECK(c == ElementClass::Regular);
  CHECK(spoke_edges(grid.cnet).empty());
}

TEST_CASE("classify: boundary valence-3 EP") {
  const ControlNet fan = fan_net(3, 3, false, 2.5);
  const auto eps = extraordinary_vertices(fan.cnet);
  REQUIRE(eps.size() == 1);
  CHECK(fan.cnet.is_boundary_vertex(eps[0]));
  CHECK(fan.cnet.valence(eps[0]) == 3);
  // four incident edges, two of them on the boundary
  CHECK(fan.cnet.vertex_edges(eps[0]).size() == 4);
}

TEST_CASE("rings: valence-5 EP matches brute force") {
  const ControlNet fan = fan_net(5, 4, true);
  const int ep = extraordinary_vertices(fan.cnet).at(0);
  CHECK(ring_faces(fan.cnet, ep, 1).size() == 5);
  const auto brute = brute_rings(fan.cnet, ep, 3);
  for (int m = 1; m <= 3; ++m) CHECK(ring_faces(fan.cnet, ep, m) == brute[m - 1]);
  // rings are disjoint
  for (int a = 1; a <= 3; ++a)
    for (int b = a + 1; b <= 3; ++b) {
      const auto ra = ring_faces(fan.cnet, ep, a), rb = ring_faces(fan.cnet, ep, b);
      std::vector<int> both;
      std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(both));
      CHECK(both.empty());
    }
  CHECK_THROWS_AS(ring_faces(fan.cnet, ep, 0), DomainError);
  CHECK(spoke_edges(fan.cnet).size() == 5);
}

TEST_CASE("rings: adjacent EPs computed independently") {
  const ControlNet net = flipped_square(6, 0);
  const auto eps = extraordinary_vertices(net.cnet);
  REQUIRE(eps.size() == 4);
  for (int ep : eps) {
    const auto brute = brute_rings(net.cnet, ep, 2);
    CHECK(ring_faces(net.cnet, ep, 1) == brute[0]);
    CHECK(ring_faces(net.cnet, ep, 2) == brute[1]);
  }
  // shared spoke edges are counted once
  std::set<int> all;
  for (int ep : eps)
    for (int e : net.cnet.vertex_edges(ep)) all.insert(e);
  CHECK(spoke_edges(net.cnet) == all);
}

TEST_CASE("classify elements: single valence-3 EP") {
  const ControlNet fan = fan_net(3, 4, true);
  const int ep = extraordinary_vertices(fan.cnet).at(0);
  const auto rings = brute_rings(fan.cnet, ep, 2);
  const auto cls = classify_elements(fan.cnet);
  int irr = 0;
  for (std::size_t f = 0; f < cls.size(); ++f) {
    const int fi = static_cast<int>(f);
    const ElementClass want = rings[0].count(fi)   ? ElementClass::Irregular
                              : rings[1].count(fi) ? ElementClass::Transition
                                                   : ElementClass::Regular;
    CHECK(cls[f] == want);
    irr += cls[f] == ElementClass::Irregular;
  }
  CHECK(irr == 3);
}

TEST_CASE("irregular basis vertices: brute-force ring expansion") {
  for (const ControlNet& net : {fan_net(3, 4, true), flipped_square(6, 0), fan_net(3, 3, false, 2.5)}) {
    std::set<int> want;
    for (int ep : extraordinary_vertices(net.cnet)) {
      const auto rings = brute_rings(net.cnet, ep, 2);
      want.insert(ep);
      for (int m = 0; m < 2; ++m)
        for (int f : rings[m])
          for (int v : net.cnet.face(f)) want.insert(v);
    }
    CHECK(irregular_basis_vertices(net.cnet) == want);
  }
}

TEST_CASE("property: handshake identity on closed nets") {
  for (const ControlNet& net : {cube_net(1), cube_net(3)}) {
    int total = 0;
    for (std::size_t v = 0; v < net.cnet.num_vertices(); ++v) total += net.cnet.valence(static_cast<int>(v));
    CHECK(total == 4 * static_cast<int>(net.cnet.num_faces()));
  }
}

TEST_CASE("property: every spoke edge touches an irregular element") {
  for (const ControlNet& net : {flipped_square(6, 0), open_box_net(2), fan_net(3, 3, false, 2.5)}) {
    const auto cls = classify_elements(net.cnet);
    for (int e : spoke_edges(net.cnet)) {
      const Edge& ed = net.cnet.edge(e);
      bool irr = false;
      for (int h : ed.half)
        if (h >= 0 && cls[h / 4] == ElementClass::Irregular) irr = true;
      CHECK(irr);
    }
  }
}

TEST_CASE("property: element classes invariant under vertex relabeling") {
  const ControlNet net = flipped_square(6, 0);
  std::vector<int> perm(net.cnet.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Quad> faces;
    for (const Quad& q : net.cnet.faces()) faces.push_back({perm[q[0]], perm[q[1]], perm[q[2]], perm[q[3]]});
    const CNet relabeled(net.cnet.num_vertices(), faces);
    CHECK(classify_elements(relabeled) == classify_elements(net.cnet));
    const auto a = classify_vertices(net.cnet), b = classify_vertices(relabeled);
    for (std::size_t v = 0; v < a.size(); ++v) CHECK(a[v].is_extraordinary == b[perm[v]].is_extraordinary);
  }
}
