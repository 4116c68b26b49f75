#include "gspline/archive.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gspline/errors.hpp"

namespace gspline {

namespace {

Json number(double v) {
  // JSON has no infinity; reports use null for an unbounded thickness.
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json vec3(const Vec3& p) { return Json::array({p.x(), p.y(), p.z()}); }

}  // namespace

Json net_to_json(const ControlNet& net) {
  Json j;
  Json v = Json::array();
  for (const Vec3& p : net.positions) v.push_back(vec3(p));
  Json f = Json::array();
  for (const Quad& q : net.cnet.faces()) f.push_back(Json::array({q[0], q[1], q[2], q[3]}));
  j["vertices"] = std::move(v);
  j["faces"] = std::move(f);
  return j;
}

ControlNet net_from_json(const Json& j) {
  try {
    std::vector<Vec3> p;
    for (const auto& v : j.at("vertices")) p.emplace_back(v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>());
    std::vector<Quad> f;
    for (const auto& q : j.at("faces")) {
      if (q.size() != 4) throw FormatError("archive face is not a quad");
      f.push_back({q[0].get<int>(), q[1].get<int>(), q[2].get<int>(), q[3].get<int>()});
    }
    if (f.empty()) throw EmptyError("archive has no faces");
    CNet cn(p.size(), std::move(f));
    return ControlNet(std::move(cn), std::move(p));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed control net: ") + e.what());
  }
}

Json diagnostics_to_json(const SurfaceDiagnostics& d) {
  Json j;
  Json blocks = Json::array();
  for (const auto& b : d.blocks)
    blocks.push_back({{"block", b.block}, {"elements", b.elements}, {"unknowns", b.unknowns},
                      {"constraints", b.constraints}, {"rank", b.rank}, {"spoke_edges", b.spoke_edges}});
  Json basis = Json::array();
  for (const auto& b : d.basis)
    basis.push_back({{"basis", b.basis}, {"block", b.block}, {"unknowns", b.unknowns},
                     {"constraints", b.constraints}, {"rank", b.rank},
                     {"support_elements", b.support_elements}, {"ls_residual", b.ls_residual},
                     {"constraint_residual", b.constraint_residual}});
  j["blocks"] = std::move(blocks);
  j["basis"] = std::move(basis);
  return j;
}

Json surface_to_json(const GSplineSurface& s) {
  Json j;
  j["format_version"] = kArchiveVersion;
  j["variant"] = to_string(s.variant);
  j["net"] = net_to_json(s.net);
  Json els = Json::array();
  for (const ElementExtraction& e : s.elements) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < e.coeffs.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index k = 0; k < e.coeffs.cols(); ++k) row.push_back(e.coeffs(r, k));
      rows.push_back(std::move(row));
    }
    els.push_back({{"element", e.element}, {"degree", e.degree}, {"rational", e.rational},
                   {"class", to_string(s.element_class[e.element])}, {"basis", e.basis},
                   {"coeffs", std::move(rows)}});
  }
  j["elements"] = std::move(els);
  const auto eps = extraordinary_vertices(s.net.cnet);
  j["extraordinary_vertices"] = eps;
  j["diagnostics"] = diagnostics_to_json(s.diagnostics);
  return j;
}

GSplineSurface surface_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("format_version"))
      throw FormatError("not a surface archive (missing format_version)");
    if (j.at("format_version").get<int>() != kArchiveVersion)
      throw FormatError("unsupported archive format version");
    GSplineSurface s;
    s.net = net_from_json(j.at("net"));
    s.variant = parse_variant(j.at("variant").get<std::string>());
    s.element_class = classify_elements(s.net.cnet);
    const auto& els = j.at("elements");
    if (els.size() != s.net.cnet.num_faces()) throw FormatError("archive element count differs from face count");
    s.elements.resize(els.size());
    for (const auto& e : els) {
      const int id = e.at("element").get<int>();
      if (id < 0 || id >= static_cast<int>(els.size())) throw FormatError("archive element id out of range");
      ElementExtraction& x = s.elements[id];
      x.element = id;
      x.degree = e.at("degree").get<int>();
      if (x.degree != 3 && x.degree != 5) throw FormatError("archive element degree must be 3 or 5");
      x.rational = e.at("rational").get<bool>();
      x.basis = e.at("basis").get<std::vector<int>>();
      const auto& rows = e.at("coeffs");
      if (rows.size() != x.basis.size()) throw FormatError("archive coefficient rows differ from basis count");
      x.coeffs.resize(static_cast<Eigen::Index>(rows.size()), x.num_bernstein());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != static_cast<std::size_t>(x.num_bernstein()))
          throw FormatError("archive coefficient row has the wrong length");
        for (int k = 0; k < x.num_bernstein(); ++k) x.coeffs(r, k) = rows[r][k].get<double>();
      }
      for (int b : x.basis)
        if (b < 0 || b >= static_cast<int>(s.net.positions.size())) throw FormatError("archive basis id out of range");
    }
    if (j.contains("diagnostics")) {
      const auto& d = j.at("diagnostics");
      for (const auto& b : d.value("blocks", Json::array()))
        s.diagnostics.blocks.push_back({b.at("block").get<int>(), b.at("elements").get<int>(),
                                        b.at("unknowns").get<int>(), b.at("constraints").get<int>(),
                                        b.at("rank").get<int>(), b.at("spoke_edges").get<int>()});
      for (const auto& b : d.value("basis", Json::array()))
        s.diagnostics.basis.push_back({b.at("basis").get<int>(), b.at("block").get<int>(),
                                       b.at("unknowns").get<int>(), b.at("constraints").get<int>(),
                                       b.at("rank").get<int>(), b.at("support_elements").get<int>(),
                                       b.at("ls_residual").get<double>(),
                                       b.at("constraint_residual").get<double>()});
    }
    s.update_geometry();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed surface archive: ") + e.what());
  }
}

Json bezier_points_json(const GSplineSurface& s) {
  Json out = Json::array();
  for (std::size_t e = 0; e < s.num_elements(); ++e) {
    Json pts = Json::array();
    for (Eigen::Index k = 0; k < s.bezier[e].rows(); ++k) pts.push_back(vec3(s.bezier[e].row(k).transpose()));
    Json item{{"element", e}, {"degree", s.elements[e].degree}, {"points", std::move(pts)}};
    if (s.elements[e].rational) {
      item["weights"] = Json::array();
      for (Eigen::Index k = 0; k < s.weights[e].size(); ++k) item["weights"].push_back(s.weights[e][k]);
    }
    out.push_back(std::move(item));
  }
  return out;
}

Json to_json(const QualityReport& r) {
  Json j;
  j["variant"] = to_string(r.variant);
  j["t_lo"] = r.t_lo;
  j["t_hi"] = r.t_hi;
  j["tol"] = r.tol;
  j["t_star"] = number(r.t_star);
  j["bounded"] = std::isfinite(r.t_star);
  if (std::isfinite(r.t_star))
    j["first_invalid"] = {{"element", r.first_invalid.element}, {"xi", r.first_invalid.xi},
                          {"eta", r.first_invalid.eta}, {"zeta", r.first_invalid.zeta},
                          {"det", r.first_invalid.det}};
  j["monotone_verified"] = r.monotone_verified;
  j["bisection_steps"] = r.bisection_steps;
  Json m = Json::array();
  for (double v : r.element_min_det) m.push_back(number(v));
  j["element_min_det"] = std::move(m);
  return j;
}

Json to_json(const ConvergenceReport& r) {
  Json j;
  j["variant"] = to_string(r.variant);
  Json lv = Json::array();
  for (const auto& l : r.levels)
    lv.push_back({{"level", l.level}, {"elements", l.elements}, {"dofs", l.dofs}, {"h", l.h},
                  {"e_l2", l.error.l2}, {"e_linf", l.error.linf}, {"e_h1", l.error.h1}});
  j["levels"] = std::move(lv);
  Json od = Json::array();
  for (const auto& o : r.orders) od.push_back({{"l2", o[0]}, {"linf", o[1]}, {"h1", o[2]}});
  j["orders"] = std::move(od);
  return j;
}

Json to_json(const EigenReport& r) {
  Json j;
  j["variant"] = to_string(r.variant);
  j["mass"] = r.mass == MassKind::Lumped ? "lumped" : "consistent";
  j["dofs"] = r.dofs;
  j["iterations"] = r.iterations;
  j["values"] = r.values;
  j["exact"] = r.exact;
  j["relative_error"] = r.relative_error;
  j["residuals"] = r.residuals;
  return j;
}

Json to_json(const CheckReport& r) {
  auto edges = [](const std::vector<EdgeResidual>& v) {
    Json a = Json::array();
    for (const auto& e : v) a.push_back({{"edge", e.edge}, {"value", e.value}});
    return a;
  };
  Json j;
  j["max_g1_residual"] = r.max_g1;
  j["max_normal_jump"] = r.max_normal_jump;
  j["max_c1_residual"] = r.max_c1;
  j["max_c2_residual"] = r.max_c2;
  j["max_watertight"] = r.max_watertight;
  j["column_sum_error"] = r.column_sum_error;
  j["partition_of_unity_error"] = r.partition_of_unity_error;
  j["denominator_range"] = {r.denominator_min, r.denominator_max};
  j["collocation_rank_ratio"] = r.rank_ratio;
  j["g1_edges"] = edges(r.g1);
  j["normal_edges"] = edges(r.normal);
  j["c1_edges"] = edges(r.c1);
  j["c2_edges"] = edges(r.c2);
  return j;
}

Json to_json(const std::vector<RefineLevel>& levels) {
  Json a = Json::array();
  for (const auto& l : levels)
    a.push_back({{"level", l.level}, {"vertices", l.vertices}, {"faces", l.faces},
                 {"extraordinary", l.extraordinary}});
  return a;
}

std::string quality_csv_header() { return "variant,t_star,element,xi,eta,zeta,monotone_verified\n"; }

std::string quality_csv_row(const QualityReport& r) {
  std::ostringstream o;
  o << std::setprecision(10) << to_string(r.variant) << ',';
  if (std::isfinite(r.t_star))
    o << r.t_star << ',' << r.first_invalid.element << ',' << r.first_invalid.xi << ',' << r.first_invalid.eta
      << ',' << r.first_invalid.zeta;
  else
    o << "inf,,,,";
  o << ',' << (r.monotone_verified ? "true" : "false") << '\n';
  return o.str();
}

std::string convergence_csv(const ConvergenceReport& r) {
  std::ostringstream o;
  o << std::setprecision(12) << "level,elements,dofs,h,e_l2,e_linf,e_h1\n";
  for (const auto& l : r.levels)
    o << l.level << ',' << l.elements << ',' << l.dofs << ',' << l.h << ',' << l.error.l2 << ','
      << l.error.linf << ',' << l.error.h1 << '\n';
  return o.str();
}

std::string convergence_dat(const ConvergenceReport& r) {
  std::ostringstream o;
  o << std::setprecision(12) << "# h e_l2 e_linf e_h1 (" << to_string(r.variant) << ")\n";
  for (const auto& l : r.levels) o << l.h << ' ' << l.error.l2 << ' ' << l.error.linf << ' ' << l.error.h1 << '\n';
  return o.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

}  // namespace gspline
