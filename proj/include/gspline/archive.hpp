#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gspline/continuity.hpp"
#include "gspline/eigen_solver.hpp"
#include "gspline/galerkin.hpp"
#include "gspline/quality.hpp"
#include "gspline/refine.hpp"
#include "gspline/surface.hpp"

namespace gspline {

using Json = nlohmann::ordered_json;

inline constexpr int kArchiveVersion = 1;

/// Self-contained surface archive: net, extractions, variant, diagnostics.
Json surface_to_json(const GSplineSurface& s);
/// Throws FormatError on a malformed or unsupported archive.
GSplineSurface surface_from_json(const Json& j);

Json net_to_json(const ControlNet& net);
ControlNet net_from_json(const Json& j);

/// [{element, degree, points: [[x, y, z], ...]}]
Json bezier_points_json(const GSplineSurface& s);

Json diagnostics_to_json(const SurfaceDiagnostics& d);
Json to_json(const QualityReport& r);
Json to_json(const ConvergenceReport& r);
Json to_json(const EigenReport& r);
Json to_json(const CheckReport& r);
Json to_json(const std::vector<RefineLevel>& levels);

/// variant,t_star,element,xi,eta,zeta,monotone_verified
std::string quality_csv_header();
std::string quality_csv_row(const QualityReport& r);
/// One row per level: level,elements,dofs,h,e_l2,e_linf,e_h1
std::string convergence_csv(const ConvergenceReport& r);
/// Whitespace separated h and the three errors, one level per line.
std::string convergence_dat(const ConvergenceReport& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gspline
