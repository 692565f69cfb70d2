// flexspan: command-line driver for flexible suspension construction,
// flexion sweeps and validation. Every run prints one JSON document.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flexspan/construction.hpp"
#include "flexspan/errors.hpp"
#include "flexspan/fixtures.hpp"
#include "flexspan/flexion.hpp"
#include "flexspan/io.hpp"
#include "flexspan/parameterization.hpp"
#include "flexspan/validation.hpp"

using json = nlohmann::ordered_json;
using namespace flexspan;

namespace {

struct Source {
  std::string params_file;
  std::string fixture_id;
  int completion = -1;
};

struct Problem {
  ParameterSet params;
  std::vector<CapGeometry> geometries;
  const Fixture* fixture = nullptr;
};

double deg5(double rad) { return std::round(to_deg(rad) * 1e5) / 1e5; }

void add_source_options(CLI::App* cmd, Source& src) {
  auto* p = cmd->add_option("--params", src.params_file, "Parameter file");
  auto* f = cmd->add_option("--fixture", src.fixture_id, "Built-in fixture id, e.g. III-OAE#8");
  p->excludes(f);
  cmd->add_option("--completion", src.completion, "Completion index for third-type parameter sets");
}

bool matches_fixture(const CapGeometry& g, const Fixture& f) {
  for (size_t i = 0; i < f.beta_deg.size(); ++i)
    if (std::abs(to_deg(g.beta(3 + static_cast<int>(i))) - f.beta_deg[i]) > 1e-4) return false;
  return true;
}

Problem load(const Source& src) {
  Problem pb;
  if (!src.fixture_id.empty()) {
    try {
      pb.fixture = &fixture(src.fixture_id);
    } catch (const std::out_of_range&) {
      throw ConstraintViolation("fixture", "unknown fixture '" + src.fixture_id + "'");
    }
    pb.params = pb.fixture->params;
  } else if (!src.params_file.empty()) {
    pb.params = parse_params_file(src.params_file);
  } else {
    throw ConstraintViolation("params", "one of --params or --fixture is required");
  }
  if (is_type12(pb.params.subtype)) {
    pb.geometries.push_back(expand_type12(pb.params));
  } else {
    pb.geometries = complete_suspension(pb.params);
  }
  return pb;
}

// The geometry a single-folding command operates on.
const CapGeometry& pick(const Problem& pb, int completion) {
  if (pb.geometries.empty()) throw NoCompletion("no realizable completion");
  if (completion >= 0) {
    if (completion >= static_cast<int>(pb.geometries.size()))
      throw ConstraintViolation("completion", "index out of range (have " + std::to_string(pb.geometries.size()) + ")");
    return pb.geometries[static_cast<size_t>(completion)];
  }
  if (pb.fixture && is_type3(pb.params.subtype)) {
    for (const auto& g : pb.geometries)
      if (matches_fixture(g, *pb.fixture)) return g;
  }
  if (pb.geometries.size() > 1)
    throw ConstraintViolation("completion", std::to_string(pb.geometries.size()) + " completions; choose one");
  return pb.geometries.front();
}

DihedralIdentifier resolve_di(const Problem& pb, const CapGeometry& g, const std::string& text) {
  if (!text.empty()) return DihedralIdentifier(parse_di_value(text), g.N());
  if (pb.fixture && pb.fixture->di) return DihedralIdentifier(pb.fixture->di, g.N());
  throw ConstraintViolation("di", "a dihedral identifier is required");
}

json angles_json(const CapGeometry& g) {
  json alpha = json::array(), beta = json::array(), gamma = json::array(), A = json::array(), B = json::array(),
       G = json::array();
  for (int k = 1; k <= g.N(); ++k) {
    alpha.push_back(deg5(g.alpha(k)));
    beta.push_back(deg5(g.beta(k)));
    gamma.push_back(deg5(g.gamma(k)));
    A.push_back(deg5(g.A(k)));
    B.push_back(deg5(g.B(k)));
    G.push_back(deg5(g.Gamma(k)));
  }
  return json{{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"A", A}, {"B", B}, {"Gamma", G}};
}

json lengths_json(const CapGeometry& g) {
  json l = json::array(), m = json::array(), L = json::array();
  for (int k = 1; k <= g.N(); ++k) {
    l.push_back(g.l(k));
    m.push_back(g.m(k));
    L.push_back(g.L(k));
  }
  return json{{"l", l}, {"m", m}, {"L", L}};
}

json di_json(DihedralIdentifier di) { return json{{"value", di.value}, {"hex", di.hex()}}; }

json range_json(const FlexionRange& r) {
  json iv = json::array();
  for (const auto& i : r.intervals) iv.push_back(json::array({deg5(i.lo), deg5(i.hi)}));
  return json{{"form", to_string(r.form)}, {"intervals_deg", iv}, {"width_deg", deg5(r.total_width())}};
}

json dihedrals_json(const Dihedrals& d) {
  json delta = json::array(), Delta = json::array(), eps = json::array();
  for (double x : d.delta) delta.push_back(deg5(x));
  for (double x : d.Delta) Delta.push_back(deg5(x));
  for (double x : d.eps) eps.push_back(deg5(x));
  return json{{"delta", delta}, {"Delta", Delta}, {"eps", eps}};
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json source_json(const Problem& pb) {
  json j{{"subtype", to_string(pb.params.subtype)}, {"N", pb.params.N}};
  if (pb.fixture) j["fixture"] = pb.fixture->id;
  return j;
}

json report_json(const ValidationReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back(json{{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass()}});
  return json{{"samples", rep.samples.size()}, {"pass", rep.pass()}, {"checks", checks}};
}

int cmd_complete(const Source& src, bool exhaustive) {
  const Problem pb = load(src);
  json out{{"command", "complete"}, {"source", source_json(pb)}};
  json list = json::array();
  EnumerateOptions opts;
  opts.exhaustive = exhaustive;
  for (size_t i = 0; i < pb.geometries.size(); ++i) {
    const CapGeometry& g = pb.geometries[i];
    json c{{"index", i}, {"angles_deg", angles_json(g)}, {"lengths", lengths_json(g)}};
    if (pb.fixture && is_type3(pb.params.subtype)) c["matches_fixture"] = matches_fixture(g, *pb.fixture);
    json folds = json::array();
    for (const auto& f : enumerate_foldings(g, opts)) folds.push_back(json{{"di", di_json(f.di)}, {"range", range_json(f.range)}});
    c["flexible"] = !folds.empty();
    c["foldings"] = folds;
    list.push_back(c);
  }
  out["completions"] = list;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_enumerate(const Source& src, bool exhaustive) {
  const Problem pb = load(src);
  const CapGeometry& g = pick(pb, src.completion);
  EnumerateOptions opts;
  opts.exhaustive = exhaustive;
  json folds = json::array();
  for (const auto& f : enumerate_foldings(g, opts)) folds.push_back(json{{"di", di_json(f.di)}, {"range", range_json(f.range)}});
  json out{{"command", "enumerate"}, {"source", source_json(pb)}, {"exhaustive", exhaustive}, {"count", folds.size()},
           {"foldings", folds}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_construct(const Source& src, double eps1_deg, const std::string& di_text, const std::string& out_dir) {
  const Problem pb = load(src);
  const CapGeometry& g = pick(pb, src.completion);
  const DihedralIdentifier di = resolve_di(pb, g, di_text);
  const Embedding e = construct(g, wrap_two_pi(to_rad(eps1_deg)), di);
  json verts = json::object();
  verts["u"] = vec_json(e.u);
  verts["w"] = vec_json(e.w);
  for (int k = 1; k <= e.N(); ++k) verts["v" + std::to_string(k)] = vec_json(e.vk(k));
  json out{{"command", "construct"},
           {"source", source_json(pb)},
           {"eps1_deg", eps1_deg},
           {"di", di_json(e.di)},
           {"closes", closes(g, e)},
           {"closure_residual", e.closure_residual},
           {"vertices", verts},
           {"dihedrals_deg", dihedrals_json(measure_dihedrals(e))}};
  if (closes(g, e)) {
    const FlexState s = measure_state(g, e);
    out["closing_rate"] = std::isfinite(s.closing_rate) ? json(s.closing_rate) : json(nullptr);
    out["volume"] = oriented_volume(e);
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / "embedding.obj";
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path.string());
    write_obj(f, mesh_of(e), "eps1 = " + format_number(eps1_deg) + " deg, di = " + e.di.hex());
    out["mesh"] = path.string();
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const Source& src, const std::string& di_text, double step, const std::string& out_dir, int frames) {
  const Problem pb = load(src);
  const CapGeometry& g = pick(pb, src.completion);
  const DihedralIdentifier di = resolve_di(pb, g, di_text);
  SweepOptions so;
  so.step_deg = step;
  const FlexionRange r = find_flexion_range(g, di, so);
  json out{{"command", "sweep"}, {"source", source_json(pb)}, {"di", di_json(di)}, {"range", range_json(r)}};
  if (!out_dir.empty()) {
    const ExportResult ex = export_mesh_frames(g, di, r, frames, out_dir);
    out["frames"] = ex.meshes.size();
    out["trace"] = ex.trace.string();
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_validate(const Source& src, const std::string& di_text, double step) {
  const Problem pb = load(src);
  const CapGeometry& g = pick(pb, src.completion);
  const DihedralIdentifier di = resolve_di(pb, g, di_text);
  SweepOptions so;
  const FlexionRange r = find_flexion_range(g, di, so);
  ValidateOptions vo;
  vo.step_deg = step;
  const ValidationReport rep = validate_full(g, di, r, vo);
  json out{{"command", "validate"}, {"source", source_json(pb)}, {"di", di_json(di)}, {"range", range_json(r)},
           {"report", report_json(rep)}};
  std::cout << out.dump(2) << "\n";
  return rep.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexible suspension construction and flexion analysis"};
  app.require_subcommand(1);

  Source src;
  double eps1 = 75.0, step = 1.0;
  std::string di, out_dir;
  bool exhaustive = false;
  int frames = 37;

  auto* complete = app.add_subcommand("complete", "List completions of a parameter set with their flexible foldings");
  add_source_options(complete, src);
  complete->add_flag("--exhaustive", exhaustive, "Scan every branch identifier");

  auto* construct_cmd = app.add_subcommand("construct", "Build the embedding for one identifier and eps1");
  add_source_options(construct_cmd, src);
  construct_cmd->add_option("--eps1", eps1, "Dihedral eps1 in degrees")->capture_default_str();
  construct_cmd->add_option("--di", di, "Dihedral identifier, decimal or hex (0x..)");
  construct_cmd->add_option("--out", out_dir, "Directory for the OBJ mesh");

  auto* sweep = app.add_subcommand("sweep", "Flexion range of one folding, with optional mesh frames");
  add_source_options(sweep, src);
  sweep->add_option("--di", di, "Dihedral identifier, decimal or hex (0x..)");
  sweep->add_option("--step", step, "Sweep step in degrees")->capture_default_str();
  sweep->add_option("--out", out_dir, "Directory for mesh frames and trace.csv");
  sweep->add_option("--frames", frames, "Number of exported frames")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Invariant battery over the full flexion range");
  add_source_options(validate, src);
  validate->add_option("--di", di, "Dihedral identifier, decimal or hex (0x..)");
  validate->add_option("--step", step, "Sample step in degrees")->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "All flexible foldings of one geometry");
  add_source_options(enumerate, src);
  enumerate->add_flag("--exhaustive", exhaustive, "Scan every branch identifier");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*complete) return cmd_complete(src, exhaustive);
    if (*construct_cmd) return cmd_construct(src, eps1, di, out_dir);
    if (*sweep) return cmd_sweep(src, di, step, out_dir, frames);
    if (*validate) return cmd_validate(src, di, step);
    if (*enumerate) return cmd_enumerate(src, exhaustive);
  } catch (const std::exception& e) {
    json err{{"error", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "flexspan: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
