#include "gspline/nets.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "gspline/errors.hpp"

namespace gspline {

ControlNet structured_grid(int nx, int ny, double lx, double ly) {
  if (nx < 1 || ny < 1) throw DomainError("grid needs at least one face per direction");
  std::vector<Vec3> p;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) p.emplace_back(lx * i / nx, ly * j / ny, 0.0);
  std::vector<Quad> f;
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  CNet cn(p.size(), std::move(f));
  return ControlNet(std::move(cn), std::move(p));
}

ControlNet fan_net(int sectors, int n, bool closed, double angle, double radius) {
  if (sectors < 1 || n < 1) throw DomainError("fan needs at least one sector and one face");
  if (closed && sectors < 3) throw DomainError("closed fan needs at least three sectors");
  const int rays = closed ? sectors : sectors + 1;
  const double span = closed ? 2.0 * std::numbers::pi : angle;
  std::vector<Vec3> p{Vec3::Zero()};
  std::vector<Eigen::Vector2d> dir(rays);
  // ray r vertex i (1..n)
  std::vector<std::vector<int>> ray(rays, std::vector<int>(n + 1, 0));
  for (int r = 0; r < rays; ++r) {
    const double th = span * r / sectors;
    dir[r] = Eigen::Vector2d(std::cos(th), std::sin(th));
    for (int i = 1; i <= n; ++i) {
      ray[r][i] = static_cast<int>(p.size());
      p.emplace_back(radius * i / n * dir[r].x(), radius * i / n * dir[r].y(), 0.0);
    }
  }
  std::vector<Quad> f;
  for (int s = 0; s < sectors; ++s) {
    const int r0 = s, r1 = (s + 1) % rays;
    std::vector<std::vector<int>> g(n + 1, std::vector<int>(n + 1, 0));
    for (int i = 0; i <= n; ++i) g[i][0] = ray[r0][i];
    for (int j = 0; j <= n; ++j) g[0][j] = ray[r1][j];
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        g[i][j] = static_cast<int>(p.size());
        const Eigen::Vector2d q = radius * (double(i) / n * dir[r0] + double(j) / n * dir[r1]);
        p.emplace_back(q.x(), q.y(), 0.0);
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f.push_back({g[i][j], g[i + 1][j], g[i + 1][j + 1], g[i][j + 1]});
  }
  CNet cn(p.size(), std::move(f));
  return ControlNet(std::move(cn), std::move(p));
}

namespace {

// Welds coincident points of a box assembled from grid patches.
class Welder {
public:
  int id(const Vec3& q) {
    const std::array<long long, 3> key{std::llround(q.x() * 1e6), std::llround(q.y() * 1e6),
                                       std::llround(q.z() * 1e6)};
    auto [it, fresh] = ids_.try_emplace(key, static_cast<int>(points.size()));
    if (fresh) points.push_back(q);
    return it->second;
  }
  std::vector<Vec3> points;

private:
  std::map<std::array<long long, 3>, int> ids_;
};

ControlNet box(int n, bool top) {
  if (n < 1) throw DomainError("box needs at least one face per side");
  Welder w;
  std::vector<Quad> f;
  // Each side: origin o, axes u, v with u x v pointing outward.
  struct Side {
    Vec3 o, u, v;
  };
  std::vector<Side> sides = {
      {Vec3(0, 0, 0), Vec3(0, 1, 0), Vec3(1, 0, 0)},   // bottom z = 0, normal -z
      {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 1)},   // y = 0, normal -y
      {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)},   // x = 1, normal +x
      {Vec3(1, 1, 0), Vec3(-1, 0, 0), Vec3(0, 0, 1)},  // y = 1, normal +y
      {Vec3(0, 1, 0), Vec3(0, -1, 0), Vec3(0, 0, 1)},  // x = 0, normal -x
  };
  if (top) sides.push_back({Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(0, 1, 0)});
  for (const Side& s : sides)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        auto at = [&](int a, int b) { return w.id(s.o + s.u * (double(a) / n) + s.v * (double(b) / n)); };
        f.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
      }
  CNet cn(w.points.size(), std::move(f));
  return ControlNet(std::move(cn), std::move(w.points));
}

}  // namespace

ControlNet cube_net(int n) { return box(n, true); }
ControlNet open_box_net(int n) { return box(n, false); }

ControlNet flip_edge(const ControlNet& net, int a, int b) {
  const CNet& c = net.cnet;
  const int e = c.find_edge(a, b);
  if (e < 0 || c.is_boundary_edge(e)) throw DomainError("flip needs an interior edge");
  const Edge& ed = c.edge(e);
  // h0 runs a -> b in f0 = (a, b, p, q); h1 runs b -> a in f1 = (b, a, r, s).
  int h0 = ed.half[0], h1 = ed.half[1];
  if (c.half_origin(h0) != a) std::swap(h0, h1);
  const Quad& f0 = c.face(h0 / 4);
  const Quad& f1 = c.face(h1 / 4);
  const int p = f0[(h0 % 4 + 2) % 4], q = f0[(h0 % 4 + 3) % 4];
  const int r = f1[(h1 % 4 + 2) % 4], s = f1[(h1 % 4 + 3) % 4];
  std::vector<Quad> faces = c.faces();
  faces[h0 / 4] = {r, s, b, p};
  faces[h1 / 4] = {p, q, a, r};
  return ControlNet(CNet(c.num_vertices(), std::move(faces)), net.positions);
}

ControlNet smooth(const ControlNet& net, int iterations) {
  const CNet& c = net.cnet;
  std::vector<Vec3> p = net.positions;
  for (int it = 0; it < iterations; ++it) {
    std::vector<Vec3> next = p;
    for (int v = 0; v < static_cast<int>(c.num_vertices()); ++v) {
      if (c.is_boundary_vertex(v)) continue;
      Vec3 sum = Vec3::Zero();
      int k = 0;
      for (int e : c.vertex_edges(v)) {
        const Edge& ed = c.edge(e);
        sum += p[ed.v0 == v ? ed.v1 : ed.v0];
        ++k;
      }
      next[v] = sum / k;
    }
    p = std::move(next);
  }
  return ControlNet(c, std::move(p));
}

ControlNet lift_z(const ControlNet& net, double amplitude) {
  std::vector<Vec3> p = net.positions;
  for (Vec3& q : p) q.z() += amplitude * std::sin(std::numbers::pi * q.x()) * std::sin(std::numbers::pi * q.y());
  return ControlNet(net.cnet, std::move(p));
}

ControlNet flipped_square(int n, int smoothing) {
  if (n < 4 || n % 2) throw DomainError("flipped square needs an even n >= 4");
  const ControlNet g = structured_grid(n, n);
  const int centre = (n / 2) * (n + 1) + n / 2;
  const int above = centre + (n + 1);
  return smooth(flip_edge(g, centre, above), smoothing);
}

ControlNet cylinder_net(int around, int along, double radius, double length) {
  if (around < 3 || along < 1) throw DomainError("cylinder needs >= 3 faces around and >= 1 along");
  const double th = 2.0 * std::numbers::pi / around;
  const double rc = radius * 6.0 / (4.0 + 2.0 * std::cos(th));
  std::vector<Vec3> p;
  for (int j = 0; j <= along; ++j)
    for (int i = 0; i < around; ++i)
      p.emplace_back(rc * std::cos(i * th), rc * std::sin(i * th), length * j / along);
  std::vector<Quad> f;
  auto id = [&](int i, int j) { return j * around + (i % around); };
  for (int j = 0; j < along; ++j)
    for (int i = 0; i < around; ++i) f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  CNet cn(p.size(), std::move(f));
  return ControlNet(std::move(cn), std::move(p));
}

ControlNet transform(const ControlNet& net, const Eigen::Matrix3d& A, const Vec3& t) {
  std::vector<Vec3> p = net.positions;
  for (Vec3& q : p) q = A * q + t;
  return ControlNet(net.cnet, std::move(p));
}

}  // namespace gspline
