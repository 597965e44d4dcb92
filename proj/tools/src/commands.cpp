#include "gaugekit_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gaugekit/abelian.hpp"
#include "gaugekit/bracket.hpp"
#include "gaugekit/dynamics.hpp"
#include "gaugekit/error.hpp"
#include "gaugekit/lie.hpp"
#include "gaugekit/nonabelian.hpp"
#include "gaugekit/version.hpp"

namespace gaugekit::cli {

using nlohmann::json;

namespace {

constexpr double kIdentityTolerance = 1e-11;
constexpr double kReductionTolerance = 1e-15;
constexpr std::size_t kSpotCheckPoints = 20;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string point_string(const Point4& x) {
  return "(" + fmt(x[0]) + ", " + fmt(x[1]) + ", " + fmt(x[2]) + ", " + fmt(x[3]) + ")";
}

template <class F>
CheckResult point_check(std::string name, std::span<const Point4> points, double tolerance, F residual_at) {
  CheckResult c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  c.samples = points.size();
  for (const Point4& x : points) {
    try {
      const double n = residual_at(x).normalized();
      if (!c.worst_point || !(n <= c.residual)) {
        c.residual = n;
        c.worst_point = x;
      }
    } catch (const DomainError& e) {
      if (c.domain_errors++ == 0) c.note = std::string("domain error at ") + point_string(x) + ": " + e.what();
    }
  }
  return c;
}

template <class F>
CheckResult phase_check(std::string name, std::span<const PhasePoint> samples, double tolerance, F sweep) {
  CheckResult c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  c.samples = samples.size();
  try {
    const SampleResidual r = sweep();
    c.residual = r.worst.normalized();
    if (!samples.empty()) c.worst_point = samples[r.sample].x;
  } catch (const DomainError& e) {
    c.domain_errors = 1;
    c.note = std::string("domain error: ") + e.what();
  }
  return c;
}

CheckResult identity_check(const IdentityCheck& id, double tolerance) {
  CheckResult c;
  c.name = "algebra-" + id.name;
  c.residual = id.worst_value;
  c.tolerance = tolerance;
  if (!id.worst_index.empty()) {
    std::string idx;
    for (int i : id.worst_index) idx += (idx.empty() ? "" : ",") + std::to_string(i + 1);
    c.note = "worst indices (" + idx + ")";
  }
  return c;
}

Residual tensor_difference(const CovariantTensor& a, const CovariantTensor& b) {
  Residual r;
  r.scale = std::max(a.max_abs(), b.max_abs());
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) r.value = std::max(r.value, std::fabs(a(mu, nu) - b(mu, nu)));
  }
  return r;
}

void abelian_checks(const RunConfig& cfg, double scale, Rng& rng, VerificationReport& report) {
  const AbelianField field(cfg.abelian_potential, cfg.params, cfg.coupling);
  const VerificationSpec& v = cfg.verification;
  const std::vector<Point4> pts = sample_points(v.box, cfg.exclusions, v.points, rng);
  const double tol = kIdentityTolerance * scale;

  report.checks.push_back(point_check("bianchi", pts, tol, [&](const Point4& x) { return bianchi_residual(field, x); }));
  report.checks.push_back(
      point_check("continuity", pts, tol, [&](const Point4& x) { return continuity_residual(field, x); }));
  report.checks.push_back(point_check("faraday", pts, tol, [&](const Point4& x) { return faraday_residual(field, x); }));
  report.checks.push_back(point_check("div-h", pts, tol, [&](const Point4& x) { return div_h_residual(field, x); }));

  const AbelianField transformed = gauge_transformed(field, parse("sin(x0 + 2*x1)*x3 + x2^2*x1"));
  const std::span<const Point4> spot(pts.data(), std::min(pts.size(), kSpotCheckPoints));
  report.checks.push_back(point_check("gauge-invariance", spot, tol, [&](const Point4& x) {
    return tensor_difference(field_strength(field, x), field_strength(transformed, x));
  }));

  const std::vector<PhasePoint> phase =
      sample_phase_points(v.box, cfg.exclusions, v.momentum_range, 0, v.isospin_range, v.phase_points, rng);
  const MinimalCoupling coupling(field, 1.0);
  report.checks.push_back(phase_check("bracket-px", phase, tol, [&] { return verify_px(coupling, phase); }));
  report.checks.push_back(
      phase_check("bracket-vs-curl", phase, tol, [&] { return field_strength_consistency(coupling, phase); }));
  report.checks.push_back(phase_check("bracket-jacobi", phase, tol, [&] {
    return jacobi_residual(coupling.velocity(1), coupling.velocity(2), coupling.velocity(3), std::nullopt, phase,
                           coupling.params());
  }));
}

void yang_mills_checks(const RunConfig& cfg, double scale, Rng& rng, VerificationReport& report) {
  const AlgebraValidation validation = validate(*cfg.algebra);
  report.checks.push_back(identity_check(validation.antisymmetry, kAlgebraTolerance * scale));
  report.checks.push_back(identity_check(validation.jacobi, kAlgebraTolerance * scale));
  if (!validation.passed()) return;

  const YangMillsField field(*cfg.algebra, cfg.ym_potential, cfg.params, cfg.coupling);
  const int n = field.dimension();
  const VerificationSpec& v = cfg.verification;
  const std::vector<Point4> pts = sample_points(v.box, cfg.exclusions, v.points, rng);
  const double tol = kIdentityTolerance * scale;

  report.checks.push_back(
      point_check("ym-bianchi", pts, tol, [&](const Point4& x) { return ym_bianchi_residual(field, x); }));

  if (cfg.gauge_term) {
    const GaugeTerm g(n, *cfg.gauge_term, cfg.params);
    report.checks.push_back(point_check("gauge-term", pts, kGaugeTermTolerance * scale,
                                        [&](const Point4& x) { return gauge_term_residual(field, g, x); }));
  }

  const std::vector<PhasePoint> phase =
      sample_phase_points(v.box, cfg.exclusions, v.momentum_range, n, v.isospin_range, v.phase_points, rng);
  const MinimalCoupling coupling(field, 1.0);
  report.checks.push_back(phase_check("bracket-px", phase, tol, [&] { return verify_px(coupling, phase); }));
  report.checks.push_back(phase_check("bracket-ib", phase, tol, [&] { return verify_ib(coupling, phase); }));
  report.checks.push_back(
      phase_check("isospin-algebra", phase, tol, [&] { return verify_isospin_algebra(field.algebra(), phase); }));
  report.checks.push_back(
      phase_check("bracket-vs-curl", phase, tol, [&] { return field_strength_consistency(coupling, phase); }));

  // Same components over n copies of u(1) against the Abelian operators.
  const YangMillsField reduced(LieAlgebra::abelian(n), cfg.ym_potential, cfg.params, cfg.coupling);
  std::vector<AbelianField> parts;
  for (int a = 0; a < n; ++a) parts.push_back(abelian_component(reduced, a));
  const std::span<const Point4> spot(pts.data(), std::min(pts.size(), kSpotCheckPoints));
  report.checks.push_back(point_check("abelian-reduction", spot, kReductionTolerance * scale, [&](const Point4& x) {
    const LieValuedTensor f = ym_field_strength(reduced, x);
    Residual r;
    for (int a = 0; a < n; ++a) {
      const Residual d = tensor_difference(f.component(a), field_strength(parts[static_cast<std::size_t>(a)], x));
      r.value = std::max(r.value, d.value);
      r.scale = std::max(r.scale, d.scale);
    }
    return r;
  }));
}

struct Destination {
  std::ofstream file;
  std::ostream* stream = nullptr;
  bool to_file = false;
};

void open_destination(const std::string& path, std::ostream& fallback, Destination& d) {
  if (path.empty()) {
    d.stream = &fallback;
    return;
  }
  d.file.open(path, std::ios::binary | std::ios::trunc);
  if (!d.file) throw ConfigError("output: cannot open " + path + " for writing");
  d.stream = &d.file;
  d.to_file = true;
}

std::string resolve_format(const RunConfig& cfg, const CommandOptions& opt) {
  const std::string f = opt.format.value_or(cfg.output.format);
  if (f != "csv" && f != "json") throw ConfigError("--format: expected csv or json");
  return f;
}

RunConfig load(const std::string& path, const CommandOptions& opt) {
  RunConfig cfg = load_config(path);
  if (opt.seed) cfg.verification.seed = *opt.seed;
  if (!(opt.tolerance_scale > 0.0) || !std::isfinite(opt.tolerance_scale)) {
    throw ConfigError("--tolerance-scale: must be a positive number");
  }
  return cfg;
}

json metadata(const RunConfig& cfg, const std::string& command) {
  return json{{"command", command},
              {"config_digest", cfg.digest},
              {"seed", cfg.verification.seed},
              {"version", kVersion},
              {"prng", "mt19937_64"}};
}

// Columns plus rows of numbers, written as CSV or as JSON with metadata.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_table(const Table& t, const std::string& format, const json& meta, const json& extra, std::ostream& os) {
  if (format == "csv") {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
      os << '\n';
    }
    return;
  }
  json doc;
  doc["metadata"] = meta;
  doc["columns"] = t.columns;
  doc["rows"] = t.rows;
  for (const auto& [k, v] : extra.items()) doc[k] = v;
  os << doc.dump(2) << '\n';
}

Table trajectory_table(const Trajectory& traj, int isospin_dimension) {
  Table t;
  t.columns = {"tau", "x0", "x1", "x2", "x3", "u0", "u1", "u2", "u3"};
  for (int a = 1; a <= isospin_dimension; ++a) t.columns.push_back("I" + std::to_string(a));
  t.columns.insert(t.columns.end(), {"uu", "H"});
  if (isospin_dimension > 0) t.columns.push_back("casimir");
  for (const auto& s : traj.samples) {
    std::vector<double> row{s.tau};
    row.insert(row.end(), s.x.c.begin(), s.x.c.end());
    row.insert(row.end(), s.u.c.begin(), s.u.c.end());
    row.insert(row.end(), s.isospin.begin(), s.isospin.end());
    row.push_back(s.monitors.uu);
    row.push_back(s.monitors.hamiltonian);
    if (isospin_dimension > 0) row.push_back(*s.monitors.casimir);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<Point4> certification_points(const RunConfig& cfg) {
  Rng rng(cfg.verification.seed);
  return sample_points(cfg.verification.box, cfg.exclusions, cfg.verification.points, rng);
}

constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

std::string pair_name(const char* prefix, int mu, int nu) {
  return prefix + std::to_string(mu) + std::to_string(nu);
}

}  // namespace

bool VerificationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

VerificationReport run_verification(const RunConfig& config, double tolerance_scale) {
  VerificationReport report;
  Rng rng(config.verification.seed);
  if (config.kind == FieldKind::abelian) {
    abelian_checks(config, tolerance_scale, rng, report);
  } else {
    yang_mills_checks(config, tolerance_scale, rng, report);
  }
  return report;
}

double GridAxis::at(std::size_t i) const {
  if (count <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::array<GridAxis, 4> parse_grid(const std::string& spec) {
  std::array<GridAxis, 4> axes;
  std::stringstream ss(spec);
  std::string item;
  std::size_t k = 0;
  const auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(d)) {
      throw ConfigError("--grid: \"" + s + "\" is not a number");
    }
    return d;
  };
  while (std::getline(ss, item, ',')) {
    if (k >= 4) throw ConfigError("--grid: expected 4 comma-separated axes (x0,x1,x2,x3)");
    GridAxis& ax = axes[k++];
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      ax.lo = ax.hi = to_double(item);
      ax.count = 1;
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError("--grid: axis \"" + item + "\" must be value or lo:hi:count");
    ax.lo = to_double(item.substr(0, c1));
    ax.hi = to_double(item.substr(c1 + 1, c2 - c1 - 1));
    const std::string n = item.substr(c2 + 1);
    if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos || std::stoul(n) < 1) {
      throw ConfigError("--grid: count in \"" + item + "\" must be a positive integer");
    }
    ax.count = std::stoul(n);
  }
  if (k != 4) throw ConfigError("--grid: expected 4 comma-separated axes (x0,x1,x2,x3)");
  return axes;
}

int cmd_verify(const std::string& config_path, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = load(config_path, opt);
    const std::string format = opt.output ? resolve_format(cfg, opt) : "csv";
    const VerificationReport report = run_verification(cfg, opt.tolerance_scale);

    std::ostringstream text;
    for (const auto& c : report.checks) {
      text << (c.passed() ? "PASS " : "FAIL ") << c.name << "  residual=" << short_fmt(c.residual)
           << "  tol=" << short_fmt(c.tolerance);
      if (c.worst_point) text << "  worst=" << point_string(*c.worst_point);
      if (c.domain_errors) text << "  domain_errors=" << c.domain_errors;
      if (!c.note.empty()) text << "  [" << c.note << "]";
      text << '\n';
    }
    text << (report.passed() ? "overall: PASS" : "overall: FAIL") << '\n';

    if (opt.output) {
      Destination d;
      open_destination(*opt.output, out, d);
      if (format == "csv") {
        *d.stream << "check,passed,residual,tolerance,samples,domain_errors,worst_x0,worst_x1,worst_x2,worst_x3\n";
        for (const auto& c : report.checks) {
          *d.stream << c.name << ',' << (c.passed() ? 1 : 0) << ',' << fmt(c.residual) << ',' << fmt(c.tolerance)
                    << ',' << c.samples << ',' << c.domain_errors;
          for (int mu = 0; mu < 4; ++mu) *d.stream << ',' << (c.worst_point ? fmt((*c.worst_point)[mu]) : "");
          *d.stream << '\n';
        }
      } else {
        json checks = json::array();
        for (const auto& c : report.checks) {
          json j{{"name", c.name},
                 {"passed", c.passed()},
                 {"residual", c.residual},
                 {"tolerance", c.tolerance},
                 {"samples", c.samples},
                 {"domain_errors", c.domain_errors}};
          j["worst_point"] = c.worst_point ? json(*c.worst_point) : json(nullptr);
          if (!c.note.empty()) j["note"] = c.note;
          checks.push_back(std::move(j));
        }
        json doc{{"metadata", metadata(cfg, "verify")}, {"checks", checks}, {"passed", report.passed()}};
        *d.stream << doc.dump(2) << '\n';
      }
    }
    out << text.str();
    return report.passed() ? kPass : kFail;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
}

int cmd_simulate(const std::string& config_path, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = load(config_path, opt);
    if (!cfg.simulation) throw ConfigError("simulation: missing");
    const SimulationSpec& sim = *cfg.simulation;
    const std::string format = resolve_format(cfg, opt);

    IntegratorOptions io;
    io.dtau = sim.dtau;
    io.steps = sim.steps;
    io.renormalize = sim.renormalize;
    io.exclusions = cfg.exclusions;
    ParticleState s0;
    s0.x = ContravariantVector{sim.x0};
    s0.u = ContravariantVector{sim.u0};
    s0.mass = sim.mass;

    Trajectory traj;
    int n = 0;
    if (cfg.kind == FieldKind::abelian) {
      traj = integrate_lorentz(AbelianField(cfg.abelian_potential, cfg.params, cfg.coupling), s0, io);
    } else {
      std::optional<YangMillsField> field;
      try {
        field.emplace(*cfg.algebra, cfg.ym_potential, cfg.params, cfg.coupling);
      } catch (const InvalidAlgebraError& e) {
        throw ConfigError(std::string("field.algebra: ") + e.what());
      }
      n = field->dimension();
      std::optional<CertifiedGaugeTerm> g;
      if (cfg.gauge_term) {
        try {
          g.emplace(certify_gauge_term(*field, GaugeTerm(n, *cfg.gauge_term, cfg.params), certification_points(cfg)));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("field.gauge_term: ") + e.what());
        }
      }
      traj = integrate_wong(*field, g ? &*g : nullptr, WongState{s0, sim.isospin}, io);
    }

    json summary{{"steps_completed", traj.samples.empty() ? 0 : traj.samples.size() - 1},
                 {"max_uu_drift", traj.max_uu_drift()},
                 {"status", traj.ok() ? "ok" : "failed"}};
    if (n > 0) summary["max_casimir_drift"] = traj.max_casimir_drift();
    if (traj.failure) summary["failure"] = json{{"step", traj.failure->step}, {"message", traj.failure->message}};

    Destination d;
    open_destination(opt.output.value_or(cfg.output.path), out, d);
    write_table(trajectory_table(traj, n), format, metadata(cfg, "simulate"), json{{"summary", summary}}, *d.stream);
    d.stream->flush();

    std::ostream& info = d.to_file ? out : err;
    if (!traj.samples.empty()) {
      const TrajectorySample& last = traj.samples.back();
      info << "final tau=" << fmt(last.tau) << " x=(" << fmt(last.x[0]) << ", " << fmt(last.x[1]) << ", "
           << fmt(last.x[2]) << ", " << fmt(last.x[3]) << ") u=(" << fmt(last.u[0]) << ", " << fmt(last.u[1]) << ", "
           << fmt(last.u[2]) << ", " << fmt(last.u[3]) << ")\n";
    }
    info << "max |u.u - 1| drift: " << short_fmt(traj.max_uu_drift()) << '\n';
    if (n > 0) info << "max casimir drift: " << short_fmt(traj.max_casimir_drift()) << '\n';
    if (traj.failure) {
      info << "FAILED at step " << traj.failure->step << ": " << traj.failure->message << '\n';
      return kFail;
    }
    info << "status: ok\n";
    return kPass;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
}

int cmd_fields(const std::string& config_path, const std::string& grid, const CommandOptions& opt, std::ostream& out,
               std::ostream& err) {
  try {
    const RunConfig cfg = load(config_path, opt);
    const auto axes = parse_grid(grid);
    const std::string format = resolve_format(cfg, opt);

    Table t{{"x0", "x1", "x2", "x3"}, {}};
    std::optional<AbelianField> abelian;
    std::optional<YangMillsField> ym;
    if (cfg.kind == FieldKind::abelian) {
      abelian.emplace(cfg.abelian_potential, cfg.params, cfg.coupling);
      for (const auto& [mu, nu] : kPairs) t.columns.push_back(pair_name("F", mu, nu));
      for (const char* c : {"E1", "E2", "E3", "H1", "H2", "H3", "j0", "j1", "j2", "j3"}) t.columns.push_back(c);
      for (const auto& [mu, nu] : kPairs) t.columns.push_back(pair_name("dualF", mu, nu));
    } else {
      try {
        ym.emplace(*cfg.algebra, cfg.ym_potential, cfg.params, cfg.coupling);
      } catch (const InvalidAlgebraError& e) {
        throw ConfigError(std::string("field.algebra: ") + e.what());
      }
      for (int a = 1; a <= ym->dimension(); ++a) {
        for (const auto& [mu, nu] : kPairs) t.columns.push_back(pair_name("F", mu, nu) + "_" + std::to_string(a));
      }
      for (int a = 1; a <= ym->dimension(); ++a) {
        for (const auto& [mu, nu] : kPairs) t.columns.push_back(pair_name("dualF", mu, nu) + "_" + std::to_string(a));
      }
    }

    std::size_t skipped = 0;
    for (std::size_t i0 = 0; i0 < axes[0].count; ++i0) {
      for (std::size_t i1 = 0; i1 < axes[1].count; ++i1) {
        for (std::size_t i2 = 0; i2 < axes[2].count; ++i2) {
          for (std::size_t i3 = 0; i3 < axes[3].count; ++i3) {
            const Point4 x{axes[0].at(i0), axes[1].at(i1), axes[2].at(i2), axes[3].at(i3)};
            if (in_any(cfg.exclusions, x)) {
              ++skipped;
              continue;
            }
            std::vector<double> row(x.begin(), x.end());
            const auto push_pairs = [&row](const CovariantTensor& f) {
              for (const auto& [mu, nu] : kPairs) row.push_back(f(mu, nu));
            };
            if (abelian) {
              const CovariantTensor f = field_strength(*abelian, x);
              push_pairs(f);
              const EMVectors em = em_vectors(*abelian, x);
              row.insert(row.end(), em.e.begin(), em.e.end());
              row.insert(row.end(), em.h.begin(), em.h.end());
              const CovariantVector j = current(*abelian, x);
              row.insert(row.end(), j.c.begin(), j.c.end());
              push_pairs(dual(f));
            } else {
              const LieValuedTensor f = ym_field_strength(*ym, x);
              for (int a = 0; a < ym->dimension(); ++a) push_pairs(f.component(a));
              for (int a = 0; a < ym->dimension(); ++a) push_pairs(dual(f.component(a)));
            }
            t.rows.push_back(std::move(row));
          }
        }
      }
    }

    Destination d;
    open_destination(opt.output.value_or(cfg.output.path), out, d);
    write_table(t, format, metadata(cfg, "fields"), json{{"skipped_points", skipped}}, *d.stream);
    if (skipped) err << "skipped " << skipped << " grid point(s) inside singular regions\n";
    return kPass;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
}

}  // namespace gaugekit::cli
