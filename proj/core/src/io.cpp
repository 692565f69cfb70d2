#include "flexspan/io.hpp"

#include <charconv>
#include <cmath>
#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "flexspan/errors.hpp"
#include "flexspan/validation.hpp"

namespace flexspan {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line, const std::string& key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ParseError(line, "invalid number '" + t + "' for " + key);
  return v;
}

int parse_int(const std::string& text, int line, const std::string& key) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ParseError(line, "invalid integer '" + t + "' for " + key);
  return v;
}

std::vector<double> parse_list(const std::string& text, int line, const std::string& key) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, line, key));
  return out;
}

std::string join(const std::vector<double>& xs, bool degrees) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += degrees ? format_degrees(xs[i]) : format_number(xs[i]);
  }
  return s;
}

std::string shortest(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double position_distance(const Embedding& a, const Embedding& b) {
  double d = (a.u - b.u).norm() + (a.w - b.w).norm();
  for (size_t i = 0; i < a.v.size(); ++i) d += (a.v[i] - b.v[i]).norm();
  return d;
}

std::vector<Embedding> frame_candidates(const CapGeometry& g, DihedralIdentifier di, double eps1) {
  std::vector<Embedding> out;
  const double e1 = wrap_two_pi(eps1);
  for (double offset : {0.0, 1e-7, -1e-7}) {
    for (const DihedralIdentifier& label : {di, di.mirror()}) {
      auto e = try_construct(g, wrap_two_pi(e1 + offset), label);
      if (auto s = try_construct(g, wrap_two_pi(e1 + offset), label, 1e-10);
          s && (!e || s->closure_residual < e->closure_residual))
        e = std::move(s);
      if (e && closes(g, *e)) {
        e->eps1 = eps1 + offset;
        out.push_back(std::move(*e));
      }
    }
    if (!out.empty()) return out;
    if (offset == 0.0 && is_type3(g.subtype())) {
      for (double flat : {0.0, kPi}) {
        if (std::abs(wrap_pi(e1 - flat)) > 1e-12) continue;
        Embedding e = flat_folding(g, flat);
        if (!closes(g, e)) continue;
        e.eps1 = eps1;
        e.di = di;
        out.push_back(std::move(e));
      }
      if (!out.empty()) return out;
    }
  }
  return out;
}

}  // namespace

ParameterSet parse_params(std::istream& in) {
  ParameterSet p;
  std::map<std::string, std::pair<std::string, int>> kv;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    const std::string t = trim(raw);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ParseError(line, "missing key");
    if (kv.count(key)) throw ParseError(line, "duplicate key '" + key + "'");
    kv[key] = {t.substr(eq + 1), line};
  }

  auto take = [&](const std::string& key) -> const std::pair<std::string, int>* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto need = [&](const std::string& key) -> const std::pair<std::string, int>& {
    const auto* v = take(key);
    if (!v) throw ConstraintViolation(key, "required field missing");
    return *v;
  };

  {
    const auto& [v, ln] = need("subtype");
    try {
      p.subtype = subtype_from_string(trim(v));
    } catch (const Error&) {
      throw ParseError(ln, "unknown subtype '" + trim(v) + "'");
    }
  }
  {
    const auto& [v, ln] = need("N");
    p.N = parse_int(v, ln, "N");
  }
  if (p.N < 4 || p.N % 2 != 0) throw ConstraintViolation("N", "N must be an even integer >= 4");

  std::vector<std::string> known{"subtype", "N"};
  auto degrees = [&](const std::string& key) {
    known.push_back(key);
    const auto& [v, ln] = need(key);
    return to_rad(parse_number(v, ln, key));
  };
  auto lengths = [&](const std::string& key) {
    known.push_back(key);
    const auto& [v, ln] = need(key);
    return parse_list(v, ln, key);
  };

  if (is_type12(p.subtype)) {
    p.l = lengths("l");
    if (p.subtype == SubType::II_OEE) p.m = lengths("m");
    p.base = lengths("base");
  } else {
    known.push_back("l1");
    const auto& [lv, lln] = need("l1");
    p.l1 = parse_number(lv, lln, "l1");
    p.alpha1 = degrees("alpha1");
    p.beta1 = degrees("beta1");
    p.alpha2 = degrees("alpha2");
    p.beta2 = degrees("beta2");
    known.push_back("alpha_odd");
    if (const auto* v = take("alpha_odd")) {
      for (double d : parse_list(v->first, v->second, "alpha_odd")) p.odd_alpha.push_back(to_rad(d));
    }
    if (p.subtype == SubType::III_OAE) {
      known.push_back("L");
      const auto& [v, ln] = need("L");
      p.L = parse_int(v, ln, "L");
    } else {
      known.push_back("K");
      const auto& [v, ln] = need("K");
      p.K = parse_int(v, ln, "K");
    }
  }
  for (const auto& [key, v] : kv) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError(v.second, "unexpected key '" + key + "' for " + to_string(p.subtype));
  }
  p.validate();
  return p;
}

ParameterSet parse_params_string(const std::string& text) {
  std::istringstream in(text);
  return parse_params(in);
}

ParameterSet parse_params_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open parameter file " + path.string());
  return parse_params(in);
}

std::string format_number(double x) { return shortest(x); }

std::string format_degrees(double rad) {
  const double deg = to_deg(rad);
  for (int digits = 1; digits <= 17; ++digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, deg);
    double back = 0.0;
    std::from_chars(buf, buf + std::strlen(buf), back);
    if (to_rad(back) == rad) return buf;
  }
  // Degree values whose conversion is not invertible: scan neighbouring doubles.
  double lo = deg, hi = deg;
  for (int i = 0; i < 64; ++i) {
    lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
    hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    if (to_rad(lo) == rad) return shortest(lo);
    if (to_rad(hi) == rad) return shortest(hi);
  }
  return shortest(deg);
}

std::string serialize_params(const ParameterSet& p) {
  std::ostringstream out;
  out << "subtype = " << to_string(p.subtype) << "\n";
  out << "N = " << p.N << "\n";
  if (is_type12(p.subtype)) {
    out << "l = " << join(p.l, false) << "\n";
    if (p.subtype == SubType::II_OEE) out << "m = " << join(p.m, false) << "\n";
    out << "base = " << join(p.base, false) << "\n";
    return out.str();
  }
  if (p.subtype == SubType::III_OAE) out << "L = " << p.L << "\n";
  if (p.subtype == SubType::III_OAS) out << "K = " << p.K << "\n";
  out << "l1 = " << format_number(p.l1) << "\n";
  out << "alpha1 = " << format_degrees(p.alpha1) << "\n";
  out << "beta1 = " << format_degrees(p.beta1) << "\n";
  out << "alpha2 = " << format_degrees(p.alpha2) << "\n";
  out << "beta2 = " << format_degrees(p.beta2) << "\n";
  if (!p.odd_alpha.empty()) out << "alpha_odd = " << join(p.odd_alpha, true) << "\n";
  return out.str();
}

Mesh mesh_of(const Embedding& e) {
  const int N = e.N();
  Mesh m;
  m.vertices.push_back(e.u);
  m.vertices.push_back(e.w);
  for (const auto& v : e.v) m.vertices.push_back(v);
  auto vi = [N](int k) { return 2 + ((k - 1) % N + N) % N; };
  for (int k = 1; k <= N; ++k) {
    m.faces.push_back({0, vi(k + 1), vi(k)});
    m.faces.push_back({1, vi(k), vi(k + 1)});
  }
  return m;
}

void write_obj(std::ostream& out, const Mesh& mesh, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices) out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
  for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

Mesh read_obj(std::istream& in) {
  Mesh m;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) throw ParseError(line, "malformed vertex");
      m.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      for (int& i : f) {
        std::string tok;
        if (!(ls >> tok)) throw ParseError(line, "malformed face");
        i = std::stoi(tok.substr(0, tok.find('/'))) - 1;
        if (i < 0 || i >= static_cast<int>(m.vertices.size())) throw ParseError(line, "face index out of range");
      }
      m.faces.push_back(f);
    }
  }
  return m;
}

void write_trace_csv(std::ostream& out, const CapGeometry& g, const std::vector<FlexState>& trace) {
  const int N = g.N();
  out << "eps1";
  for (const char* fam : {"delta", "Delta", "eps"})
    for (int k = 1; k <= N; ++k) out << "," << fam << k;
  out << ",volume,mean_curvature\n";
  out << std::setprecision(9);
  for (const auto& s : trace) {
    out << to_deg(s.eps1);
    for (const auto* fam : {&s.adjusted.delta, &s.adjusted.Delta, &s.adjusted.eps})
      for (double x : *fam) out << "," << to_deg(x);
    out << "," << oriented_volume(s.emb) << "," << total_mean_curvature(s, g) << "\n";
  }
}

Embedding frame_embedding(const CapGeometry& g, DihedralIdentifier di, double eps1) {
  auto cs = frame_candidates(g, di, eps1);
  if (cs.empty()) throw NotFlexible("no closed embedding at eps1 = " + shortest(to_deg(eps1)) + " deg");
  return cs.front();
}

ExportResult export_mesh_frames(const CapGeometry& g, DihedralIdentifier di, const FlexionRange& range, int count,
                                const std::filesystem::path& dir) {
  if (count < 1) throw ConstraintViolation("count", "at least one frame required");
  if (range.intervals.empty()) throw NotFlexible("empty flexion range");
  std::filesystem::create_directories(dir);
  ExportResult r;
  const double total = range.total_width();
  for (int i = 0; i < count; ++i) {
    double t = count == 1 ? 0.0 : total * i / (count - 1);
    for (const auto& iv : range.intervals) {
      const double w = iv.hi - iv.lo;
      if (t <= w + 1e-15 || &iv == &range.intervals.back()) {
        r.eps1.push_back(iv.lo + std::min(t, w));
        break;
      }
      t -= w;
    }
  }

  std::vector<FlexState> trace;
  const Embedding* prev = nullptr;
  std::vector<Embedding> chosen;
  chosen.reserve(r.eps1.size());
  for (double x : r.eps1) {
    auto cs = frame_candidates(g, di, x);
    if (cs.empty()) throw NotFlexible("no closed embedding at eps1 = " + shortest(to_deg(x)) + " deg");
    size_t best = 0;
    if (prev) {
      double bd = std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < cs.size(); ++j)
        if (const double d = position_distance(cs[j], *prev); d < bd) {
          bd = d;
          best = j;
        }
    }
    chosen.push_back(cs[best]);
    prev = &chosen.back();
  }

  for (size_t i = 0; i < chosen.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03zu.obj", i);
    const auto path = dir / name;
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_obj(out, mesh_of(chosen[i]),
              "eps1 = " + shortest(to_deg(r.eps1[i])) + " deg, di = " + chosen[i].di.hex());
    r.meshes.push_back(path);
    trace.push_back(measure_state(g, chosen[i]));
    trace.back().eps1 = r.eps1[i];
  }
  continuity_adjust(trace);
  r.trace = dir / "trace.csv";
  std::ofstream out(r.trace);
  if (!out) throw Error("cannot write " + r.trace.string());
  write_trace_csv(out, g, trace);
  return r;
}

}  // namespace flexspan
