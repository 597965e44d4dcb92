// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gaugekit/abelian.hpp"
#include "gaugekit/bracket.hpp"
#include "gaugekit/dynamics.hpp"
#include "gaugekit/nonabelian.hpp"
#include "support/oracles.hpp"

namespace gaugekit {
namespace {

namespace fs = std::filesystem;
using testing::relative_error;

constexpr double kPi = std::numbers::pi;

// Worst value of each named quantity against its bound.
class Ledger {
 public:
  void record(const std::string& name, double value, double bound) {
    for (auto& e : entries_) {
      if (e.name == name) {
        e.worst = std::max(e.worst, value);
        if (!(value <= bound)) e.ok = false;
        return;
      }
    }
    entries_.push_back({name, value, bound, value <= bound});
  }
  void require(const std::string& name, bool ok) { record(name, ok ? 0.0 : 1.0, 0.5); }
  void band(const std::string& name, double value, double lo, double hi) {
    std::ostringstream s;
    s << name << " " << value << " in [" << lo << ", " << hi << "]";
    require(s.str(), value >= lo && value <= hi);
  }

  bool ok() const {
    for (const auto& e : entries_) {
      if (!e.ok) return false;
    }
    return !entries_.empty();
  }

  std::string summary() const {
    std::ostringstream s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      if (i) s << "; ";
      s << e.name << (e.ok ? "" : " FAILED");
      if (e.bound != 0.5) s << " " << e.worst << " <= " << e.bound;
    }
    return s.str();
  }

 private:
  struct Entry {
    std::string name;
    double worst;
    double bound;
    bool ok;
  };
  std::vector<Entry> entries_;
};

std::vector<Point4> points(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  return sample_points(Box{}, {}, n, rng);
}

std::vector<PhasePoint> phase_points(std::uint64_t seed, std::size_t n, int isospin_dim) {
  Rng rng(seed);
  return sample_phase_points(Box{}, {}, {-2.0, 2.0}, isospin_dim, {-2.0, 2.0}, n, rng);
}

AbelianField uniform_b(double b) { return AbelianField::parse({"0", "-B*x2/2", "B*x1/2", "0"}, ParamSet{{"B", b}}); }
AbelianField uniform_e(double e0) { return AbelianField::parse({"-E0*x1", "0", "0", "0"}, ParamSet{{"E0", e0}}); }

YangMillsField su2_constant(double k) {
  std::vector<Expr> a(12);
  a[2] = Expr(k);
  return YangMillsField(LieAlgebra::su2(), a);
}

void identity_suite(Ledger& l) {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const AbelianField a(testing::random_abelian_potential(rng, trial % 2 == 1));
    for (const Point4& x : points(1000 + static_cast<std::uint64_t>(trial), 1000)) {
      l.record("bianchi", bianchi_residual(a, x).normalized(), 1e-11);
      l.record("div-h", div_h_residual(a, x).normalized(), 1e-11);
      l.record("faraday", faraday_residual(a, x).normalized(), 1e-11);
      l.record("continuity", continuity_residual(a, x).normalized(), 1e-11);
    }
  }
}

void bracket_suite(Ledger& l) {
  Rng rng(202);
  struct Case {
    std::string name;
    MinimalCoupling coupling;
  };
  std::vector<Case> cases{
      {"zero", MinimalCoupling(AbelianField{}, 1.0)},
      {"uniform-b", MinimalCoupling(uniform_b(1.5), 1.0)},
      {"plane-wave", MinimalCoupling(AbelianField::parse({"0", "cos(x0 - x3)", "0", "0"}), 1.0)},
      {"su2", MinimalCoupling(YangMillsField(LieAlgebra::su2(), testing::random_lie_valued(rng, 3, 2)), 1.0)},
  };
  std::uint64_t seed = 2000;
  for (const Case& c : cases) {
    const auto pts = phase_points(seed++, 100, c.coupling.isospin_dimension());
    l.record("px", verify_px(c.coupling, pts).worst.normalized(), 1e-11);
    l.record("fmnx-vs-fmn", field_strength_consistency(c.coupling, pts).worst.normalized(), 1e-11);
    l.record("jacobi", jacobi_residual(c.coupling.velocity(0), c.coupling.velocity(1), c.coupling.velocity(2),
                                       c.coupling.algebra(), pts, c.coupling.params())
                           .worst.normalized(),
             1e-11);
    if (c.coupling.algebra()) {
      l.record("grup", verify_isospin_algebra(*c.coupling.algebra(), pts).worst.normalized(), 1e-11);
      l.record("ib", verify_ib(c.coupling, pts).worst.normalized(), 1e-11);
      l.record("jacobi",
               jacobi_residual(PhaseFunction::isospin(0), c.coupling.velocity(1), PhaseFunction::isospin(2),
                               c.coupling.algebra(), pts, c.coupling.params())
                   .worst.normalized(),
               1e-11);
    }
  }
}

void yang_mills_suite(Ledger& l) {
  Rng rng(303);
  for (int trial = 0; trial < 5; ++trial) {
    const YangMillsField field(LieAlgebra::su2(), testing::random_lie_valued(rng, 3, 2));
    for (const Point4& x : points(3000 + static_cast<std::uint64_t>(trial), 1000)) {
      l.record("ym-bianchi", ym_bianchi_residual(field, x).normalized(), 1e-11);
    }
  }
  const YangMillsField flat(LieAlgebra::abelian(3), testing::random_lie_valued(rng, 3, 2));
  for (const Point4& x : points(3100, 1000)) {
    const LieValuedTensor f = ym_field_strength(flat, x);
    for (int a = 0; a < 3; ++a) {
      const CovariantTensor fa = field_strength(abelian_component(flat, a), x);
      for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) l.record("abelian-reduction", std::fabs(f(mu, nu, a) - fa(mu, nu)), 1e-15);
      }
    }
  }
}

void orbit_suite(Ledger& l) {
  const double b = 1.0;
  const double v = 0.5;
  const double gamma = 1.0 / std::sqrt(1.0 - v * v);
  const double radius = gamma * v / b;
  ParticleState s;
  s.u = ContravariantVector{{gamma, gamma * v, 0.0, 0.0}};
  const double period = 2.0 * kPi / b;
  const auto steps = static_cast<std::size_t>(std::lround(period / 1e-3));
  const Trajectory circle = integrate_lorentz(uniform_b(b), s, IntegratorOptions{period / static_cast<double>(steps), steps});
  l.require("circle-ok", circle.ok());
  const auto& end = circle.samples.back();
  l.record("circle-closure", std::hypot(end.x[1], end.x[2], end.x[3]) / radius, 1e-6);
  l.record("circle-uu", circle.max_uu_drift(), 1e-8);

  const double e0 = 1.0;
  const Trajectory hyper = integrate_lorentz(uniform_e(e0), ParticleState{}, IntegratorOptions{1e-3, 2000});
  l.require("hyperbolic-ok", hyper.ok());
  for (const auto& smp : hyper.samples) {
    if (smp.tau == 0.0) continue;
    const double want = (std::cosh(e0 * smp.tau) - 1.0) / e0;
    l.record("hyperbolic", std::fabs(smp.x[1] - want) / want, 1e-6);
  }
}

void wong_suite(Ledger& l) {
  const double k = 0.8;
  const Trajectory t =
      integrate_wong(su2_constant(k), nullptr, WongState{ParticleState{}, {1, 0, 0}}, IntegratorOptions{1e-3, 10000});
  l.require("precession-ok", t.ok() && t.samples.size() == 10001);
  for (const auto& s : t.samples) {
    l.record("precession", std::hypot(s.isospin[0] - std::cos(k * s.tau), s.isospin[1] - std::sin(k * s.tau),
                                      s.isospin[2]),
             1e-6);
  }
  l.record("casimir-drift", t.max_casimir_drift(), 1e-9);
  l.record("uu-drift", t.max_uu_drift(), 1e-8);

  // Constant non-commuting potential: F_{mu nu c} = -f^{ab}_c A_{mu a} A_{nu b} != 0.
  std::vector<Expr> mixed_a(12);
  mixed_a[0 * 3 + 2] = Expr(0.8);
  mixed_a[1 * 3 + 0] = Expr(0.5);
  mixed_a[2 * 3 + 1] = Expr(-0.4);
  ParticleState moving;
  moving.u = ContravariantVector{{std::cosh(0.3), std::sinh(0.3), 0, 0}};
  const Trajectory mixed = integrate_wong(YangMillsField(LieAlgebra::su2(), mixed_a), nullptr,
                                          WongState{moving, {0.6, -0.8, 0.0}}, IntegratorOptions{1e-3, 10000});
  l.require("mixed-ok", mixed.ok());
  l.record("casimir-drift", mixed.max_casimir_drift(), 1e-9);
  l.record("uu-drift", mixed.max_uu_drift(), 1e-8);

  Rng rng(505);
  const auto pot = testing::random_abelian_potential(rng, true);
  const AbelianField ab(pot, {}, 0.6);
  const YangMillsField u1(LieAlgebra::u1(), std::vector<Expr>(pot.begin(), pot.end()), {}, 0.6);
  const IntegratorOptions o{1e-3, 10000};
  const Trajectory lt = integrate_lorentz(ab, moving, o);
  const Trajectory wt = integrate_wong(u1, nullptr, WongState{moving, {1.0}}, o);
  l.require("u1-lengths", lt.samples.size() == wt.samples.size() && lt.ok() && wt.ok());
  for (std::size_t i = 0; i < std::min(lt.samples.size(), wt.samples.size()); ++i) {
    for (int mu = 0; mu < 4; ++mu) {
      l.record("u1-embedding", std::fabs(lt.samples[i].x[mu] - wt.samples[i].x[mu]), 1e-12);
      l.record("u1-embedding", std::fabs(lt.samples[i].u[mu] - wt.samples[i].u[mu]), 1e-12);
    }
  }
}

double order_ratio(const std::function<double(double)>& error_at) { return error_at(0.1) / error_at(0.05); }

void convergence_suite(Ledger& l) {
  const auto in_band = [&](const std::string& name, double r) { l.band(name, r, 12.0, 20.0); };
  const double v = 0.5;
  const double gamma = 1.0 / std::sqrt(1.0 - v * v);
  ParticleState s;
  s.u = ContravariantVector{{gamma, gamma * v, 0.0, 0.0}};
  in_band("circle", order_ratio([&](double h) {
            const double period = 2.0 * kPi;
            const auto n = static_cast<std::size_t>(std::lround(period / h));
            const Trajectory t = integrate_lorentz(uniform_b(1.0), s, IntegratorOptions{period / static_cast<double>(n), n});
            const auto& e = t.samples.back();
            const double w = e.tau;
            return std::hypot(e.x[1] - gamma * v * std::sin(w), e.x[2] - gamma * v * (1.0 - std::cos(w)));
          }));
  in_band("hyperbolic", order_ratio([&](double h) {
            const auto n = static_cast<std::size_t>(std::lround(2.0 / h));
            const Trajectory t = integrate_lorentz(uniform_e(1.0), ParticleState{}, IntegratorOptions{2.0 / static_cast<double>(n), n});
            return std::fabs(t.samples.back().x[1] - (std::cosh(2.0) - 1.0));
          }));
  in_band("precession", order_ratio([&](double h) {
            const auto n = static_cast<std::size_t>(std::lround(10.0 / h));
            const Trajectory t = integrate_wong(su2_constant(0.8), nullptr, WongState{ParticleState{}, {1, 0, 0}},
                                                IntegratorOptions{10.0 / static_cast<double>(n), n});
            const auto& i = t.samples.back().isospin;
            return std::hypot(i[0] - std::cos(8.0), i[1] - std::sin(8.0));
          }));
}

void oracle_suite(Ledger& l) {
  Rng rng(707);
  testing::ExprGenerator gen(rng);
  for (int i = 0; i < 1000; ++i) {
    const Expr e = gen.generate(5);
    const int mu = static_cast<int>(rng.index(4));
    const Point4 x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const CompiledExpr f(e, {});
    const double fd = testing::central_difference([&](const Point4& p) { return f(p); }, x, mu, 1e-5);
    l.record("derivative", relative_error(evaluate(differentiate(e, mu), x), fd), 1e-6);
  }

  for (int trial = 0; trial < 10; ++trial) {
    const auto pot = testing::random_abelian_potential(rng, trial % 2 == 0);
    const AbelianField a(pot);
    for (const Point4& x : points(7000 + static_cast<std::uint64_t>(trial), 20)) {
      const CovariantVector j = current(a, x);
      const CovariantVector fd = testing::finite_difference_current(pot, x);
      for (int mu = 0; mu < 4; ++mu) l.record("current", relative_error(j[mu], fd[mu]), 1e-6);
    }
  }

  for (int trial = 0; trial < 5; ++trial) {
    const YangMillsField field(LieAlgebra::su2(), testing::random_lie_valued(rng, 3, 2));
    const std::vector<Expr> t{testing::random_polynomial(rng, 3), testing::random_polynomial(rng, 3),
                              testing::random_polynomial(rng, 3)};
    for (const Point4& x : points(7100 + static_cast<std::uint64_t>(trial), 40)) {
      for (int al = 0; al < 4; ++al) {
        const auto d = covariant_derivative(field, t, al, x);
        for (int c = 0; c < 3; ++c) {
          double want = testing::central_difference(
              [&](const Point4& p) { return evaluate(t[static_cast<std::size_t>(c)], p); }, x, al, 1e-5);
          for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
              want -= field.algebra().f(b, a, c) * evaluate(field.component(al, b), x) *
                      evaluate(t[static_cast<std::size_t>(a)], x);
            }
          }
          l.record("covariant-derivative", relative_error(d[static_cast<std::size_t>(c)], want), 1e-6);
        }
      }
    }
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& dir) {
  const std::string cmd = std::string(GAUGEKIT_CLI_PATH) + " " + args + " > " + (dir / "stdout.txt").string() +
                          " 2> " + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void cli_suite(Ledger& l) {
  const fs::path dir = fs::temp_directory_path() / "gaugekit_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string data = GAUGEKIT_TEST_DATA;

  const auto identical = [&](const std::string& args, const std::string& ext) {
    const fs::path a = dir / ("a." + ext);
    const fs::path b = dir / ("b." + ext);
    const int ra = run_cli(args + " --output " + a.string(), dir);
    const int rb = run_cli(args + " --output " + b.string(), dir);
    return ra == 0 && rb == 0 && !slurp(a).empty() && slurp(a) == slurp(b);
  };
  l.require("verify-deterministic", identical("verify " + data + "/plane_wave.json --seed 9 --format json", "json"));
  l.require("verify-ym-deterministic", identical("verify " + data + "/su2_polynomial.json --format csv", "csv"));
  l.require("simulate-deterministic", identical("simulate " + data + "/su2_precession.json --format json", "json"));

  l.require("exit-0", run_cli("verify " + data + "/plane_wave.json", dir) == 0);
  l.require("exit-1", run_cli("verify " + data + "/corrupted_su2.json", dir) == 1 &&
                          slurp(dir / "stdout.txt").find("FAIL algebra-antisymmetry") != std::string::npos);
  l.require("exit-2", run_cli("verify " + data + "/undefined_parameter.json", dir) == 2 &&
                          slurp(dir / "stderr.txt").find("undefined parameter: B") != std::string::npos);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace gaugekit

int main() {
  using namespace gaugekit;
  struct Criterion {
    const char* title;
    void (*run)(Ledger&);
  };
  const Criterion criteria[] = {
      {"Abelian identity suite", identity_suite},
      {"bracket replay suite", bracket_suite},
      {"Yang-Mills Bianchi and Abelian reduction", yang_mills_suite},
      {"closed-form orbits", orbit_suite},
      {"Wong structure", wong_suite},
      {"RK4 convergence order", convergence_suite},
      {"oracle equivalence", oracle_suite},
      {"CLI determinism and exit codes", cli_suite},
  };
  int failures = 0;
  int index = 1;
  for (const Criterion& c : criteria) {
    Ledger l;
    std::string error;
    try {
      c.run(l);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = error.empty() && l.ok();
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s [%s]%s%s\n", ok ? "PASS" : "FAIL", index++, c.title, l.summary().c_str(),
                error.empty() ? "" : " error: ", error.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
