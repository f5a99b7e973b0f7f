#include "conicpen/conicpen.h"

#include <new>
#include <string>
#include <string_view>

#include <json.hpp>

#include "conicpen/pipelines.hpp"

struct cp_result {
  conicpen::PipelineOutput out;
};

namespace {

cp_status to_c(conicpen::Status s) { return static_cast<cp_status>(static_cast<int>(s)); }

cp_status deliver(conicpen::PipelineOutput&& out, cp_result** dst) {
  const cp_status s = to_c(out.status);
  if (dst == nullptr) return s;
  *dst = new (std::nothrow) cp_result{std::move(out)};
  return *dst ? s : CP_INTERNAL_ERROR;
}

cp_status reject(const char* what, cp_result** dst) {
  conicpen::PipelineOutput out;
  out.status = conicpen::Status::InputError;
  out.message = what;
  out.json = nlohmann::ordered_json{{"status", "input_error"}, {"error", {{"code", "InvalidArgument"}, {"message", what}}}}
                 .dump(2) +
             "\n";
  return deliver(std::move(out), dst);
}

template <class Fn>
cp_status shielded(cp_result** dst, Fn&& fn) {
  try {
    return deliver(fn(), dst);
  } catch (const std::exception& e) {
    conicpen::PipelineOutput out;
    out.status = conicpen::Status::Internal;
    out.message = e.what();
    return deliver(std::move(out), dst);
  } catch (...) {
    return CP_INTERNAL_ERROR;
  }
}

}  // namespace

extern "C" {

void cp_conic_options_init(cp_conic_options* opts) {
  if (!opts) return;
  *opts = cp_conic_options{0, 0, 512};
}

void cp_quadric_options_init(cp_quadric_options* opts) {
  if (!opts) return;
  *opts = cp_quadric_options{};
  opts->pairing = -1;
  for (int i = 0; i < 9; ++i) opts->vertex_order[i] = i;
  opts->resolution = 64;
}

void cp_solver_options_init(cp_solver_options* opts) {
  if (!opts) return;
  const conicpen::SolverConfig d;
  *opts = cp_solver_options{d.seed, d.max_starts, d.tol_residual, d.tol_dedup, d.early_stop_window};
}

void cp_cone_pair_options_init(cp_cone_pair_options* opts) {
  if (!opts) return;
  const conicpen::ConePairOptions d;
  *opts = cp_cone_pair_options{d.cone_tol, d.conic_tol, 0};
}

cp_status cp_conic5(const char* document, size_t length, const cp_conic_options* opts, cp_result** out) {
  if (!document) return reject("document is NULL", out);
  cp_conic_options o;
  cp_conic_options_init(&o);
  if (opts) o = *opts;
  if (o.plot_samples < 2 || o.plot_samples > 8192) return reject("plot_samples must be in [2, 8192]", out);
  return shielded(out, [&] {
    return conicpen::run_conic5(std::string_view(document, length), {o.oracle != 0, o.plot != 0, o.plot_samples});
  });
}

cp_status cp_quadric9(const char* document, size_t length, const cp_quadric_options* opts, cp_result** out) {
  if (!document) return reject("document is NULL", out);
  cp_quadric_options o;
  cp_quadric_options_init(&o);
  if (opts) o = *opts;
  if (o.resolution < 1 || o.resolution > 512) return reject("resolution must be in [1, 512]", out);
  conicpen::QuadricOptions q;
  q.oracle = o.oracle != 0;
  q.pairing = o.pairing;
  q.mesh = o.mesh != 0;
  q.resolution = o.resolution;
  if (o.has_vertex_order) {
    std::array<int, 9> order;
    for (int i = 0; i < 9; ++i) order[i] = o.vertex_order[i];
    q.vertex_order = order;
  }
  return shielded(out, [&] { return conicpen::run_quadric9(std::string_view(document, length), q); });
}

cp_status cp_place_cone(const char* document, size_t length, const cp_solver_options* opts, cp_result** out) {
  if (!document) return reject("document is NULL", out);
  cp_solver_options o;
  cp_solver_options_init(&o);
  if (opts) o = *opts;
  conicpen::PlaceConeOptions p;
  p.solver.seed = o.seed;
  p.solver.max_starts = o.max_starts;
  p.solver.tol_residual = o.tol_residual;
  p.solver.tol_dedup = o.tol_dedup;
  p.solver.early_stop_window = o.early_stop_window;
  return shielded(out, [&] { return conicpen::run_place_cone(std::string_view(document, length), p); });
}

cp_status cp_cone_pair(const char* document, size_t length, const cp_cone_pair_options* opts, cp_result** out) {
  if (!document) return reject("document is NULL", out);
  cp_cone_pair_options o;
  cp_cone_pair_options_init(&o);
  if (opts) o = *opts;
  if (!(o.cone_tol > 0) || !(o.conic_tol > 0)) return reject("tolerances must be positive", out);
  return shielded(out, [&] {
    return conicpen::run_cone_pair(std::string_view(document, length), {o.cone_tol, o.conic_tol, o.scene != 0});
  });
}

cp_status cp_selfcheck(cp_result** out) {
  return shielded(out, [] { return conicpen::run_selfcheck(); });
}

cp_status cp_verify_result(const char* json, size_t length, cp_result** out) {
  if (!json) return reject("document is NULL", out);
  return shielded(out, [&] {
    const conicpen::VerifyReport rep = conicpen::verify_result_document(std::string_view(json, length));
    conicpen::PipelineOutput res;
    res.status = rep.ok ? conicpen::Status::Ok : conicpen::Status::InputError;
    nlohmann::ordered_json doc{{"command", "verify"}, {"ok", rep.ok}, {"checks", rep.checks}, {"problems", rep.problems}};
    res.json = doc.dump(2) + "\n";
    if (!rep.ok) res.message = rep.problems.empty() ? "nothing to verify" : rep.problems.front();
    return res;
  });
}

cp_status cp_result_status(const cp_result* r) { return r ? to_c(r->out.status) : CP_INTERNAL_ERROR; }

const char* cp_result_json(const cp_result* r) { return r ? r->out.json.c_str() : ""; }

const char* cp_result_artifact(const cp_result* r) {
  return r && !r->out.artifact.empty() ? r->out.artifact.c_str() : nullptr;
}

const char* cp_result_artifact_kind(const cp_result* r) {
  return r && !r->out.artifact_kind.empty() ? r->out.artifact_kind.c_str() : nullptr;
}

const char* cp_result_error(const cp_result* r) { return r ? r->out.message.c_str() : "null result"; }

void cp_result_free(cp_result* r) { delete r; }

const char* cp_status_name(cp_status s) { return conicpen::status_name(static_cast<conicpen::Status>(s)); }

const char* cp_version(void) { return "1.0.0"; }

}  // extern "C"
