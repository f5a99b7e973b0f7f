// conicpen command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conicpen/conicpen.h"

namespace {

bool read_input(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return true;
}

bool write_file(const std::string& path, const char* data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << data;
  return static_cast<bool>(out);
}

// Writes the JSON and artifact, reports the diagnostic, frees the handle.
int finish(cp_status status, cp_result* result, const std::string& output, const std::string& artifact_path) {
  if (!result) {
    std::cerr << "conicpen: " << cp_status_name(status) << "\n";
    return static_cast<int>(status);
  }
  int code = static_cast<int>(status);
  if (output.empty() || output == "-") {
    std::fputs(cp_result_json(result), stdout);
  } else if (!write_file(output, cp_result_json(result))) {
    std::cerr << "conicpen: cannot write " << output << "\n";
    code = CP_INPUT_ERROR;
  }
  if (!artifact_path.empty()) {
    if (const char* art = cp_result_artifact(result)) {
      if (!write_file(artifact_path, art)) {
        std::cerr << "conicpen: cannot write " << artifact_path << "\n";
        code = CP_INPUT_ERROR;
      }
    }
  }
  if (status != CP_OK) std::cerr << "conicpen: " << cp_status_name(status) << ": " << cp_result_error(result) << "\n";
  cp_result_free(result);
  return code;
}

bool parse_vertex_order(const std::string& text, int (&order)[9]) {
  std::string s = text;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<int> v;
  for (int x; in >> x;) v.push_back(x);
  if (!in.eof() || v.size() != 9) return false;
  for (int i = 0; i < 9; ++i) order[i] = v[i];
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conics, quadrics and cone placements from point sets"};
  app.set_version_flag("--version", std::string(cp_version()));
  app.require_subcommand(1);

  std::string input, output, artifact;

  cp_conic_options conic;
  cp_conic_options_init(&conic);
  bool conic_oracle = false;
  auto* c5 = app.add_subcommand("conic5", "Conic through five points by the pencil construction");
  c5->add_option("input", input, "Point document, '-' for stdin")->required();
  c5->add_flag("--oracle", conic_oracle, "Also build the determinant conic and compare");
  c5->add_option("--plot", artifact, "Write an SVG plot");
  c5->add_option("--samples", conic.plot_samples, "Marching-squares grid size")->check(CLI::Range(2, 8192));
  c5->add_option("-o,--output", output, "Result document path (default stdout)");

  cp_quadric_options quadric;
  cp_quadric_options_init(&quadric);
  bool quadric_oracle = false;
  std::string vertex_order;
  auto* q9 = app.add_subcommand("quadric9", "Quadric through nine points from four plane pairs");
  q9->add_option("input", input, "Point document, '-' for stdin")->required();
  q9->add_flag("--oracle", quadric_oracle, "Also build the determinant quadric and compare");
  q9->add_option("--pairing", quadric.pairing, "Plane-pair choice index 0..209")->check(CLI::Range(0, 209));
  q9->add_option("--vertex-order", vertex_order, "Nine comma-separated input indices for A..F and the extra points");
  q9->add_option("--mesh", artifact, "Write an OBJ mesh");
  q9->add_option("--resolution", quadric.resolution, "Grid cells per axis")->check(CLI::Range(1, 512));
  q9->add_option("-o,--output", output, "Result document path (default stdout)");

  cp_solver_options solver;
  cp_solver_options_init(&solver);
  auto* pc = app.add_subcommand("place-cone", "Place five coplanar points on the right cone");
  pc->add_option("input", input, "Point document, '-' for stdin")->required();
  pc->add_option("--seed", solver.seed, "Random seed for the start points");
  pc->add_option("--max-starts", solver.max_starts, "Start budget")->check(CLI::PositiveNumber);
  pc->add_option("--tol", solver.tol_residual, "Residual tolerance for convergence")->check(CLI::PositiveNumber);
  pc->add_option("--tol-dedup", solver.tol_dedup, "Distance below which solutions are merged")->check(CLI::PositiveNumber);
  pc->add_option("--early-stop", solver.early_stop_window, "Stop after this many starts without a new class")
      ->check(CLI::PositiveNumber);
  pc->add_option("-o,--output", output, "Result document path (default stdout)");

  cp_cone_pair_options pair;
  cp_cone_pair_options_init(&pair);
  auto* cp = app.add_subcommand("cone-pair", "Recover the translated cone through mapped points");
  cp->add_option("input", input, "Point document, '-' for stdin")->required();
  cp->add_option("--tol", pair.conic_tol, "Shared-conic residual bound")->check(CLI::PositiveNumber);
  cp->add_option("--cone-tol", pair.cone_tol, "Allowed cone residual of the first three points")
      ->check(CLI::PositiveNumber);
  cp->add_option("--mesh", artifact, "Write an OBJ scene");
  cp->add_option("-o,--output", output, "Result document path (default stdout)");

  auto* sc = app.add_subcommand("selfcheck", "Run the built-in worked examples");
  sc->add_option("-o,--output", output, "Result document path (default stdout)");

  auto* vf = app.add_subcommand("verify", "Re-verify a result document");
  vf->add_option("input", input, "Result document, '-' for stdin")->required();
  vf->add_option("-o,--output", output, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return CP_INPUT_ERROR;
  }

  if (*sc) {
    cp_result* r = nullptr;
    const cp_status s = cp_selfcheck(&r);
    return finish(s, r, output, "");
  }

  std::string text;
  if (!read_input(input, text)) {
    std::cerr << "conicpen: cannot read " << input << "\n";
    return CP_INPUT_ERROR;
  }

  cp_result* r = nullptr;
  cp_status s = CP_INTERNAL_ERROR;
  if (*c5) {
    conic.oracle = conic_oracle ? 1 : 0;
    conic.plot = artifact.empty() ? 0 : 1;
    s = cp_conic5(text.data(), text.size(), &conic, &r);
  } else if (*q9) {
    quadric.oracle = quadric_oracle ? 1 : 0;
    quadric.mesh = artifact.empty() ? 0 : 1;
    if (!vertex_order.empty()) {
      if (!parse_vertex_order(vertex_order, quadric.vertex_order)) {
        std::cerr << "conicpen: --vertex-order needs nine integers\n";
        return CP_INPUT_ERROR;
      }
      quadric.has_vertex_order = 1;
    }
    s = cp_quadric9(text.data(), text.size(), &quadric, &r);
  } else if (*pc) {
    s = cp_place_cone(text.data(), text.size(), &solver, &r);
  } else if (*cp) {
    pair.scene = artifact.empty() ? 0 : 1;
    s = cp_cone_pair(text.data(), text.size(), &pair, &r);
  } else if (*vf) {
    s = cp_verify_result(text.data(), text.size(), &r);
  }
  return finish(s, r, output, artifact);
}
