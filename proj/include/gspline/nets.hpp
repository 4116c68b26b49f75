#pragma once

#include "gspline/mesh.hpp"

namespace gspline {

/// nx x ny faces covering [0, lx] x [0, ly] in the plane z = 0.
ControlNet structured_grid(int nx, int ny, double lx = 1.0, double ly = 1.0);

/// `sectors` blocks of n x n faces around a central vertex. A closed fan
/// gives an interior vertex of valence `sectors`; an open fan spanning
/// `angle` radians gives a boundary vertex of valence `sectors`.
ControlNet fan_net(int sectors, int n, bool closed, double angle = 0.0, double radius = 1.0);

/// Unit cube surface, each side split into n x n faces (8 valence-3 EPs).
ControlNet cube_net(int n);
/// Cube without its top side (4 interior valence-3 EPs on the bottom).
ControlNet open_box_net(int n);

/// Replaces the two faces sharing edge (a, b) by the two quads across the
/// other diagonal of their hexagon. Endpoints lose one valence, the two
/// hexagon vertices on the new edge gain one.
ControlNet flip_edge(const ControlNet& net, int a, int b);

/// Jacobi Laplacian smoothing of interior vertices (boundary fixed).
ControlNet smooth(const ControlNet& net, int iterations);

/// Adds amplitude * sin(pi x) sin(pi y) to z.
ControlNet lift_z(const ControlNet& net, double amplitude);

/// Planar unit square, n x n faces, with the vertical edge above the centre
/// vertex flipped and the result smoothed: two valence-3 and two valence-5
/// EPs, two faces away from the boundary for n >= 6.
ControlNet flipped_square(int n = 6, int smoothing = 20);

/// Open tube of radius about `radius` along z: `around` x `along` faces.
/// Control radius chosen so the uniform cubic ring passes through `radius`
/// at its control vertices' parameter values.
ControlNet cylinder_net(int around, int along, double radius, double length);

/// Affine image p -> A p + t of the control points.
ControlNet transform(const ControlNet& net, const Eigen::Matrix3d& A, const Vec3& t);

}  // namespace gspline
