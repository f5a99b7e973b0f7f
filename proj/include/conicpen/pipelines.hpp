#pragma once

// End-to-end commands behind the C API: parse a point document, run one
// construction, re-verify the result, and render a JSON result document plus
// an optional plot file.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conicpen/cone_pair.hpp"
#include "conicpen/cone_solver.hpp"

namespace conicpen {

enum class Status { Ok = 0, InputError = 1, Degenerate = 2, BudgetExhausted = 3, Internal = 4 };

const char* status_name(Status s);

struct PipelineOutput {
  Status status = Status::Ok;
  std::string json;           // result document; error document on failure
  std::string artifact;       // SVG or OBJ text, empty when not requested
  std::string artifact_kind;  // "svg", "obj" or empty
  std::string message;        // diagnostic for non-Ok status
};

struct ConicOptions {
  bool oracle = false;
  bool plot = false;
  int plot_samples = 512;
};

struct QuadricOptions {
  bool oracle = false;
  int pairing = -1;  // index into the 210 choices; -1 selects the default covering
  std::optional<std::array<int, 9>> vertex_order;  // input index for each of A..F, then the three extra points
  bool mesh = false;
  int resolution = 64;
};

struct PlaceConeOptions {
  SolverConfig solver;
};

struct ConePairOptions {
  double cone_tol = kConeTol;
  double conic_tol = 2e-2;
  bool scene = false;
};

PipelineOutput run_conic5(std::string_view document, const ConicOptions& opts = {});
PipelineOutput run_quadric9(std::string_view document, const QuadricOptions& opts = {});
PipelineOutput run_place_cone(std::string_view document, const PlaceConeOptions& opts = {});
PipelineOutput run_cone_pair(std::string_view document, const ConePairOptions& opts = {});

/// Built-in worked examples; status Internal if any check fails.
PipelineOutput run_selfcheck();

struct VerifyReport {
  bool ok = false;
  int checks = 0;
  std::vector<std::string> problems;
};

/// Recomputes every residual recorded in a result document from its echoed
/// input and reported coefficients, and compares against the recorded value.
VerifyReport verify_result_document(std::string_view json);

}  // namespace conicpen
