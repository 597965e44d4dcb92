#include "gaugekit_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gaugekit/error.hpp"

namespace gaugekit::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

const json* member(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number");
  return d;
}

std::size_t count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

std::pair<double, double> range(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected [lo, hi]");
  const double lo = number(v[0], path + "[0]");
  const double hi = number(v[1], path + "[1]");
  if (!(lo <= hi)) fail(path, "expected lo <= hi");
  return {lo, hi};
}

Point4 four(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 4) fail(path, "expected 4 numbers");
  Point4 out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = number(v[i], path + "[" + std::to_string(i) + "]");
  return out;
}

Expr expression(const json& v, const std::string& path, const ParamSet& params) {
  if (v.is_number()) return Expr(number(v, path));
  if (!v.is_string()) fail(path, "expected an expression string");
  Expr e;
  try {
    e = parse(v.get<std::string>());
  } catch (const ParseError& err) {
    fail(path, err.what());
  }
  std::set<std::string> names;
  e.collect_parameters(names);
  for (const auto& n : names) {
    if (!params.contains(n)) fail(path, MissingParameterError(n).what());
  }
  return e;
}

LieAlgebra algebra_from(const json& v, const std::string& path) {
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    if (name == "su2") return LieAlgebra::su2();
    if (name == "u1") return LieAlgebra::u1();
    fail(path, "unknown algebra \"" + name + "\" (expected su2, u1 or an object)");
  }
  if (!v.is_object()) fail(path, "expected an algebra name or object");
  const json* dim = member(v, "dimension");
  if (!dim) fail(path + ".dimension", "missing");
  const std::size_t n = count(*dim, path + ".dimension");
  if (n < 1) fail(path + ".dimension", "must be positive");
  std::vector<double> f(n * n * n, 0.0);
  if (const json* sc = member(v, "structure_constants")) {
    if (!sc->is_array()) fail(path + ".structure_constants", "expected a list of [a, b, c, value]");
    for (std::size_t i = 0; i < sc->size(); ++i) {
      const std::string p = path + ".structure_constants[" + std::to_string(i) + "]";
      const json& e = (*sc)[i];
      if (!e.is_array() || e.size() != 4) fail(p, "expected [a, b, c, value] with 1-based a, b, c");
      std::size_t idx[3];
      for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t one_based = count(e[k], p + "[" + std::to_string(k) + "]");
        if (one_based < 1 || one_based > n) fail(p, "index outside 1.." + std::to_string(n));
        idx[k] = one_based - 1;
      }
      f[(idx[0] * n + idx[1]) * n + idx[2]] = number(e[3], p + "[3]");
    }
  }
  return LieAlgebra(static_cast<int>(n), std::move(f));
}

std::vector<Expr> lie_valued(const json& v, const std::string& path, std::size_t n, const ParamSet& params) {
  if (!v.is_array() || v.size() != 4) fail(path, "expected 4 rows (mu = 0..3) of " + std::to_string(n) + " expressions");
  std::vector<Expr> out;
  out.reserve(4 * n);
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const std::string row = path + "[" + std::to_string(mu) + "]";
    const json& r = v[mu];
    if (!r.is_array() || r.size() != n) fail(row, "expected " + std::to_string(n) + " expressions");
    for (std::size_t a = 0; a < n; ++a) out.push_back(expression(r[a], row + "[" + std::to_string(a) + "]", params));
  }
  return out;
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("config", "expected a JSON object");
  reject_unknown(root, "", {"version", "field", "parameters", "exclusions", "verification", "simulation", "output"});

  const json* version = member(root, "version");
  if (!version) fail("version", "missing (expected 1)");
  if (!version->is_number_integer() || version->get<long long>() != 1) fail("version", "unsupported (expected 1)");

  RunConfig cfg;
  cfg.digest = fnv1a_hex(text);

  if (const json* p = member(root, "parameters")) {
    if (!p->is_object()) fail("parameters", "expected an object of name: value");
    for (const auto& [name, value] : p->items()) {
      try {
        cfg.params.set(name, number(value, "parameters." + name));
      } catch (const std::invalid_argument& e) {
        fail("parameters." + name, e.what());
      }
    }
  }

  const json* field = member(root, "field");
  if (!field || !field->is_object()) fail("field", "missing or not an object");
  reject_unknown(*field, "field", {"kind", "potential", "coupling", "algebra", "gauge_term"});
  const json* kind = member(*field, "kind");
  if (!kind || !kind->is_string()) fail("field.kind", "expected \"abelian\" or \"yangmills\"");
  if (*kind == "abelian") {
    cfg.kind = FieldKind::abelian;
  } else if (*kind == "yangmills") {
    cfg.kind = FieldKind::yangmills;
  } else {
    fail("field.kind", "expected \"abelian\" or \"yangmills\"");
  }
  if (const json* g = member(*field, "coupling")) cfg.coupling = number(*g, "field.coupling");

  const json* potential = member(*field, "potential");
  if (!potential) fail("field.potential", "missing");
  if (cfg.kind == FieldKind::abelian) {
    if (member(*field, "algebra")) fail("field.algebra", "only valid for yangmills fields");
    if (member(*field, "gauge_term")) fail("field.gauge_term", "only valid for yangmills fields");
    if (!potential->is_array() || potential->size() != 4) fail("field.potential", "expected 4 expressions A_0..A_3");
    for (std::size_t mu = 0; mu < 4; ++mu) {
      cfg.abelian_potential[mu] =
          expression((*potential)[mu], "field.potential[" + std::to_string(mu) + "]", cfg.params);
    }
  } else {
    const json* alg = member(*field, "algebra");
    if (!alg) fail("field.algebra", "missing");
    cfg.algebra = algebra_from(*alg, "field.algebra");
    const auto n = static_cast<std::size_t>(cfg.algebra->dimension());
    cfg.ym_potential = lie_valued(*potential, "field.potential", n, cfg.params);
    if (const json* g = member(*field, "gauge_term")) cfg.gauge_term = lie_valued(*g, "field.gauge_term", n, cfg.params);
  }

  if (const json* ex = member(root, "exclusions")) {
    if (!ex->is_array()) fail("exclusions", "expected a list");
    for (std::size_t i = 0; i < ex->size(); ++i) {
      const std::string p = "exclusions[" + std::to_string(i) + "]";
      const json& e = (*ex)[i];
      if (!e.is_object()) fail(p, "expected {center, radius, time?}");
      reject_unknown(e, p, {"center", "radius", "time"});
      SingularRegion r;
      const json* c = member(e, "center");
      if (!c || !c->is_array() || c->size() != 3) fail(p + ".center", "expected 3 numbers (x1, x2, x3)");
      for (std::size_t k = 0; k < 3; ++k) r.center[k] = number((*c)[k], p + ".center[" + std::to_string(k) + "]");
      const json* rad = member(e, "radius");
      if (!rad) fail(p + ".radius", "missing");
      r.radius = number(*rad, p + ".radius");
      if (r.radius < 0.0) fail(p + ".radius", "must be non-negative");
      if (const json* t = member(e, "time")) r.time = range(*t, p + ".time");
      cfg.exclusions.push_back(r);
    }
  }

  if (const json* v = member(root, "verification")) {
    if (!v->is_object()) fail("verification", "expected an object");
    reject_unknown(*v, "verification", {"points", "phase_points", "bounds", "momentum_range", "isospin_range", "seed"});
    VerificationSpec& s = cfg.verification;
    if (const json* x = member(*v, "points")) s.points = count(*x, "verification.points");
    if (const json* x = member(*v, "phase_points")) s.phase_points = count(*x, "verification.phase_points");
    if (const json* x = member(*v, "bounds")) {
      if (!x->is_array() || x->size() != 4) fail("verification.bounds", "expected 4 [lo, hi] pairs");
      for (std::size_t mu = 0; mu < 4; ++mu) {
        s.box.bounds[mu] = range((*x)[mu], "verification.bounds[" + std::to_string(mu) + "]");
      }
    }
    if (const json* x = member(*v, "momentum_range")) s.momentum_range = range(*x, "verification.momentum_range");
    if (const json* x = member(*v, "isospin_range")) s.isospin_range = range(*x, "verification.isospin_range");
    if (const json* x = member(*v, "seed")) {
      if (!x->is_number_unsigned()) fail("verification.seed", "expected a non-negative integer");
      s.seed = x->get<std::uint64_t>();
    }
  }

  if (const json* sim = member(root, "simulation")) {
    if (!sim->is_object()) fail("simulation", "expected an object");
    reject_unknown(*sim, "simulation", {"mass", "x0", "u0", "isospin", "dtau", "steps", "renormalize"});
    SimulationSpec s;
    if (const json* x = member(*sim, "mass")) s.mass = number(*x, "simulation.mass");
    if (!(s.mass > 0.0)) fail("simulation.mass", "must be positive");
    if (const json* x = member(*sim, "x0")) s.x0 = four(*x, "simulation.x0");
    if (const json* x = member(*sim, "u0")) s.u0 = four(*x, "simulation.u0");
    const double uu = s.u0[0] * s.u0[0] - s.u0[1] * s.u0[1] - s.u0[2] * s.u0[2] - s.u0[3] * s.u0[3];
    if (!(std::fabs(uu - 1.0) <= 1e-9)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "u.u must equal 1 within 1e-9 (got " << uu << ")";
      fail("simulation.u0", msg.str());
    }
    if (const json* x = member(*sim, "isospin")) {
      if (!x->is_array()) fail("simulation.isospin", "expected a list of numbers");
      for (std::size_t i = 0; i < x->size(); ++i) {
        s.isospin.push_back(number((*x)[i], "simulation.isospin[" + std::to_string(i) + "]"));
      }
    }
    if (cfg.kind == FieldKind::yangmills &&
        s.isospin.size() != static_cast<std::size_t>(cfg.algebra->dimension())) {
      fail("simulation.isospin", "expected " + std::to_string(cfg.algebra->dimension()) + " components");
    }
    if (cfg.kind == FieldKind::abelian && !s.isospin.empty()) fail("simulation.isospin", "only valid for yangmills fields");
    if (const json* x = member(*sim, "dtau")) s.dtau = number(*x, "simulation.dtau");
    if (!(s.dtau > 0.0)) fail("simulation.dtau", "must be positive");
    if (const json* x = member(*sim, "steps")) s.steps = count(*x, "simulation.steps");
    if (const json* x = member(*sim, "renormalize")) {
      if (!x->is_boolean()) fail("simulation.renormalize", "expected true or false");
      s.renormalize = x->get<bool>();
    }
    cfg.simulation = std::move(s);
  }

  if (const json* out = member(root, "output")) {
    if (!out->is_object()) fail("output", "expected an object");
    reject_unknown(*out, "output", {"path", "format"});
    if (const json* x = member(*out, "path")) {
      if (!x->is_string()) fail("output.path", "expected a string");
      cfg.output.path = x->get<std::string>();
    }
    if (const json* x = member(*out, "format")) {
      if (!x->is_string() || (*x != "csv" && *x != "json")) fail("output.format", "expected \"csv\" or \"json\"");
      cfg.output.format = x->get<std::string>();
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open configuration file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace gaugekit::cli
