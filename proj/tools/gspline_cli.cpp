#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gspline/archive.hpp"
#include "gspline/continuity.hpp"
#include "gspline/eigen_solver.hpp"
#include "gspline/errors.hpp"
#include "gspline/g1.hpp"
#include "gspline/galerkin.hpp"
#include "gspline/nets.hpp"
#include "gspline/quality.hpp"
#include "gspline/refine.hpp"

using namespace gspline;

namespace {

bool is_archive(const std::string& path) { return std::filesystem::path(path).extension() == ".json"; }

struct Input {
  ControlNet net;
  std::optional<GSplineSurface> surface;  // set for archives
};

Input load_input(const std::string& path) {
  if (is_archive(path)) {
    GSplineSurface s = surface_from_json(read_json_file(path));
    ControlNet net = s.net;
    return {std::move(net), std::move(s)};
  }
  return {load_obj_file(path), std::nullopt};
}

GSplineSurface surface_of(const Input& in, const std::string& variant) {
  if (in.surface && (variant.empty() || parse_variant(variant) == in.surface->variant)) return *in.surface;
  return build_surface(in.net, parse_variant(variant.empty() ? "g1p" : variant));
}

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(out, j);
}

void error_json(const std::string& kind, const std::string& message, int code) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  std::cerr << j.dump() << '\n';
}

const std::vector<std::string> kVariants{"c0", "g1p", "g1r", "C0", "G1P", "G1R"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"G-spline surface construction and analysis"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0: hardware count; GSPLINE_THREADS overrides)");

  std::string in, out, variant;
  int levels = 1, k = 6, gen_n = 6, sectors = 5, smoothing = 20;
  double t_lo = 0.01, t_hi = 100.0, tol = 0.005, amplitude = 0.0;
  std::string csv, dat, mass = "consistent", gen_name;

  auto* build = app.add_subcommand("build", "OBJ control net to surface archive");
  build->add_option("input", in, "OBJ file")->required();
  build->add_option("--variant", variant, "c0, g1p or g1r")->check(CLI::IsMember(kVariants));
  build->add_option("-o,--output", out, "archive path")->required();

  auto* refine_cmd = app.add_subcommand("refine", "uniform refinement of a net or archive");
  refine_cmd->add_option("input", in, "OBJ or archive")->required();
  refine_cmd->add_option("--levels", levels)->required();
  refine_cmd->add_option("-o,--output", out, "OBJ or archive path (by extension)")->required();

  auto* quality = app.add_subcommand("quality", "smallest invalid shell thickness");
  quality->add_option("input", in, "archive or OBJ")->required();
  quality->add_option("--variant", variant)->check(CLI::IsMember(kVariants));
  quality->add_option("--t-lo", t_lo);
  quality->add_option("--t-hi", t_hi);
  quality->add_option("--tol", tol);
  quality->add_option("--csv", csv, "append a CSV row to this file");
  quality->add_option("-o,--output", out);

  auto* poisson = app.add_subcommand("poisson", "convergence study of the sine Poisson problem");
  poisson->add_option("input", in, "archive or OBJ")->required();
  poisson->add_option("--levels", levels);
  poisson->add_option("--variant", variant)->check(CLI::IsMember(kVariants));
  poisson->add_option("--csv", csv);
  poisson->add_option("--dat", dat);
  poisson->add_option("-o,--output", out);

  auto* eigen = app.add_subcommand("eigen", "membrane eigenvalues");
  eigen->add_option("input", in, "archive or OBJ")->required();
  eigen->add_option("--variant", variant)->check(CLI::IsMember(kVariants));
  eigen->add_option("--k", k);
  eigen->add_option("--mass", mass)->check(CLI::IsMember({"consistent", "lumped"}));
  eigen->add_option("-o,--output", out);

  auto* check = app.add_subcommand("check", "continuity, partition of unity and rank diagnostics");
  check->add_option("input", in, "archive or OBJ")->required();
  check->add_option("--variant", variant)->check(CLI::IsMember(kVariants));
  check->add_option("-o,--output", out);

  auto* generate = app.add_subcommand("generate", "write a synthetic control net");
  generate->add_option("name", gen_name, "grid, fan, bfan, cube, box, flipped, cylinder")
      ->required()
      ->check(CLI::IsMember({"grid", "fan", "bfan", "cube", "box", "flipped", "cylinder"}));
  generate->add_option("--n", gen_n);
  generate->add_option("--sectors", sectors);
  generate->add_option("--smoothing", smoothing);
  generate->add_option("--lift", amplitude, "add amplitude * sin(pi x) sin(pi y) to z");
  generate->add_option("-o,--output", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    error_json("Usage", e.what(), 2);
    return 2;
  }

  try {
    configure_threads(threads);

    if (*build) {
      const ControlNet net = load_obj_file(in);
      const GSplineSurface s = build_surface(net, parse_variant(variant.empty() ? "g1p" : variant));
      write_json_file(out, surface_to_json(s));
    } else if (*refine_cmd) {
      const Input input = load_input(in);
      std::vector<RefineLevel> log;
      const ControlNet fine = refine_n(input.net, levels, &log);
      if (is_archive(out)) {
        const Variant v = input.surface ? input.surface->variant : Variant::G1P;
        write_json_file(out, surface_to_json(build_surface(fine, v)));
      } else {
        write_obj_file(out, fine);
      }
      std::cout << to_json(log).dump(2) << '\n';
    } else if (*quality) {
      const GSplineSurface s = surface_of(load_input(in), variant);
      const QualityReport r = min_invalid_thickness(s, t_lo, t_hi, tol);
      if (!csv.empty()) {
        const bool fresh = !std::filesystem::exists(csv);
        std::ofstream f(csv, std::ios::app);
        if (!f) throw FormatError("cannot write " + csv);
        if (fresh) f << quality_csv_header();
        f << quality_csv_row(r);
      }
      emit(to_json(r), out);
    } else if (*poisson) {
      const Input input = load_input(in);
      const Variant v = !variant.empty() ? parse_variant(variant) : input.surface ? input.surface->variant : Variant::G1P;
      const ConvergenceReport r = convergence_study(input.net, v, levels);
      if (!csv.empty()) write_text_file(csv, convergence_csv(r));
      if (!dat.empty()) write_text_file(dat, convergence_dat(r));
      emit(to_json(r), out);
    } else if (*eigen) {
      const GSplineSurface s = surface_of(load_input(in), variant);
      emit(to_json(membrane_eigenvalues(s, k, mass == "lumped" ? MassKind::Lumped : MassKind::Consistent)), out);
    } else if (*check) {
      emit(to_json(check_surface(surface_of(load_input(in), variant))), out);
    } else if (*generate) {
      ControlNet net;
      if (gen_name == "grid") net = structured_grid(gen_n, gen_n);
      else if (gen_name == "fan") net = fan_net(sectors, gen_n, true);
      else if (gen_name == "bfan") net = fan_net(sectors, gen_n, false, 2.5);
      else if (gen_name == "cube") net = cube_net(gen_n);
      else if (gen_name == "box") net = open_box_net(gen_n);
      else if (gen_name == "flipped") net = flipped_square(gen_n, smoothing);
      else net = cylinder_net(4 * gen_n, gen_n, 1.0, 3.0);
      if (amplitude != 0.0) net = lift_z(net, amplitude);
      if (is_archive(out))
        write_json_file(out, net_to_json(net));
      else
        write_obj_file(out, net);
    }
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    error_json(to_string(e.kind()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    error_json("Internal", e.what(), 5);
    return 5;
  }
  return 0;
}
