#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "iwave/dispersion/dispersion.hpp"
#include "iwave/error.hpp"
#include "iwave/harness/config.hpp"
#include "iwave/harness/harness.hpp"
#include "iwave/log.hpp"
#include "iwave/models/simulate.hpp"

using namespace iwave;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Prints x as p/q when it is a fraction with a small denominator.
std::string pretty(double x) {
  if (std::abs(x) < 1e-14) return "0";
  for (int q = 1; q <= 360; ++q) {
    const double p = std::round(x * q);
    if (std::abs(x * q - p) < 1e-10 * q) {
      std::ostringstream os;
      os << static_cast<long long>(p);
      if (q > 1) os << "/" << q;
      return os.str();
    }
  }
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

ModelId build_model(const std::string& name, double alpha, double a1, double a2, double beta, double gamma,
                    double delta, bool gamma_factor) {
  const ModelKind kind = parse_model(name);
  switch (kind) {
    case ModelKind::BFD: return ModelId::bfd(coeffs_bfd(a1, a2, beta));
    case ModelKind::BB: {
      ModelId m = ModelId::bb(coeffs_bb(gamma, delta, a1, a2, beta));
      m.bb_gamma_factor = gamma_factor;
      return m;
    }
    default: return ModelId::make(kind, alpha);
  }
}

void warn_regime(const ModelId& model, const RegimeParams& p) {
  const RegimeCell cell = regime_table_check(p);
  const auto expected = regime_model(cell);
  const bool matches = expected && (*expected == model.kind ||
                                    (*expected == ModelKind::BOSYS && model.kind == ModelKind::RBO) ||
                                    (*expected == ModelKind::ILW && model.kind == ModelKind::RBO));
  if (!matches) {
    std::ostringstream os;
    os << "parameters (eps = " << p.eps() << ", mu = " << p.mu() << ", delta = " << p.delta() << ") fall in the "
       << regime_cell_name(cell) << " cell; " << model_name(model.kind) << " is not the matching model";
    log_warning(os.str());
  }
}

// ---------------------------------------------------------------- simulate

const std::set<std::string> kSimulateKeys{
    "model",         "alpha",          "generators.alpha1", "generators.alpha2", "generators.beta",
    "bb_gamma_factor", "gamma",        "delta",             "eps",               "mu",
    "grid.dim",      "grid.points",    "grid.length",       "initial.kind",      "initial.amplitude",
    "initial.width", "initial.max_mode", "initial.seed",    "initial.velocity",  "dt",
    "t_end",         "output_every",   "output_dir",        "depth_floor",       "safety"};

int run_simulate(const std::string& path, const std::string& out_override) {
  const Config cfg = Config::load(path);
  cfg.require_known(kSimulateKeys);
  const double gamma = cfg.get_double("gamma");
  const double delta = cfg.get_double("delta");
  const RegimeParams p(gamma, delta, cfg.get_double("eps"), cfg.get_double("mu"));

  ModelId model;
  try {
    model = build_model(cfg.get_string("model"), cfg.get_double("alpha", 0.0), cfg.get_double("generators.alpha1", 0.0),
                        cfg.get_double("generators.alpha2", 0.0), cfg.get_double("generators.beta", 0.0), gamma, delta,
                        cfg.get_bool("bb_gamma_factor", false));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    cfg.fail("model", e.what());
  }

  const int dim = cfg.get_int("grid.dim", 1);
  if (dim != 1 && dim != 2) cfg.fail("grid.dim", "must be 1 or 2");
  std::vector<int> points = cfg.get_ints("grid.points");
  std::vector<double> lengths = cfg.get_doubles("grid.length");
  if (points.size() == 1 && dim == 2) points.push_back(points[0]);
  if (lengths.size() == 1 && dim == 2) lengths.push_back(lengths[0]);
  if (static_cast<int>(points.size()) != dim) cfg.fail("grid.points", "needs one entry per dimension");
  if (static_cast<int>(lengths.size()) != dim) cfg.fail("grid.length", "needs one entry per dimension");
  const SpectralGrid grid = make_grid(dim, lengths, points);

  const std::string kind = cfg.get_string("initial.kind", "gaussian");
  const double amp = cfg.get_double("initial.amplitude", 0.5);
  const double width = cfg.get_double("initial.width", lengths[0] / 16.0);
  ScalarField zeta;
  if (kind == "gaussian") {
    zeta = gaussian_hump(grid, amp, width);
  } else if (kind == "sech2") {
    zeta = sech2_hump(grid, amp, width);
  } else if (kind == "random") {
    zeta = random_band_limited(grid, cfg.get_int("initial.max_mode", 8), amp,
                               static_cast<std::uint64_t>(cfg.get_int("initial.seed", 11)));
  } else {
    cfg.fail("initial.kind", "expected gaussian, sech2 or random, got '" + kind + "'");
  }
  const std::string vel = cfg.get_string("initial.velocity", "zero");
  ModelState init = zero_state(model, grid);
  init.zeta = zeta;
  if (vel == "unidirectional") {
    if (model.has_velocity()) init = to_model_state(model, p, zeta, unidirectional_velocity(p, zeta));
  } else if (vel != "zero") {
    cfg.fail("initial.velocity", "expected zero or unidirectional, got '" + vel + "'");
  }

  SimulationOptions opt;
  opt.depth_floor = cfg.get_double("depth_floor", opt.depth_floor);
  opt.safety = cfg.get_double("safety", opt.safety);
  opt.output_dir = out_override.empty() ? cfg.get_string("output_dir", "iwave_run") : out_override;
  const double dt = cfg.get_double("dt");
  const double t_end = cfg.get_double("t_end");
  if (!(dt > 0.0)) cfg.fail("dt", "must be positive");
  if (!(t_end >= 0.0)) cfg.fail("t_end", "must be nonnegative");
  const int every = cfg.get_int("output_every", std::max(1, static_cast<int>(std::llround(t_end / dt / 10.0))));
  if (every < 1) cfg.fail("output_every", "must be at least 1");

  warn_regime(model, p);
  const SimulationRecord rec = simulate(model, p, init, t_end, dt, every, opt);
  {
    std::ofstream m(opt.output_dir + "/config.txt");
    for (const auto& [k, v] : cfg.entries()) m << k << " = " << v << "\n";
  }
  const Diagnostics& last = rec.diagnostics.back();
  std::cout << model.describe() << ": " << rec.steps << " steps to t = " << last.t << ", zeta_l2 = " << last.zeta_l2
            << ", min h1 = " << last.h1_min << ", min h2 = " << last.h2_min << "\n";
  std::cout << "record written to " << opt.output_dir << "\n";
  if (rec.aborted) {
    std::cout << "aborted: " << rec.abort_reason << "\n";
    return kFail;
  }
  return kPass;
}

// ---------------------------------------------------------------- sweeps

struct ParamExpr {
  std::string text;
  // Value at swept x: a number, "x", "sqrt(x)", "x^p" or "c*x^p".
  double at(double x) const {
    std::string s;
    for (char c : text)
      if (c != ' ') s.push_back(c);
    double scale = 1.0;
    if (auto star = s.find('*'); star != std::string::npos) {
      scale = std::stod(s.substr(0, star));
      s = s.substr(star + 1);
    }
    if (s == "x") return scale * x;
    if (s == "sqrt(x)") return scale * std::sqrt(x);
    if (s.rfind("x^", 0) == 0) return scale * std::pow(x, std::stod(s.substr(2)));
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(text);
    return scale * v;
  }
};

double eval_expr(const std::string& name, const std::string& text, double x) {
  try {
    return ParamExpr{text}.at(x);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--" + name, "expected a number, x, sqrt(x), x^p or c*x^p; got '" + text + "'");
  }
}

int report(const RunRecord& rec, const std::string& out_dir) {
  std::cout << std::setprecision(6);
  std::cout << rec.info.variable << "        error        error_zeta   error_v      reference\n";
  for (const StudySample& s : rec.samples)
    std::cout << std::setw(10) << s.x << "  " << std::setw(11) << s.error << "  " << std::setw(11) << s.error_zeta
              << "  " << std::setw(11) << s.error_v << "  " << std::setw(11) << s.reference_norm << "\n";
  std::cout << rec.summary() << "\n";
  if (!out_dir.empty()) {
    write_run_record(out_dir, rec);
    std::cout << "record written to " << out_dir << "/" << rec.label << ".{csv,meta.txt}\n";
  }
  return rec.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iwave: two-layer internal wave models, oracles and verification harness"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run a model from a configuration file");
  std::string sim_config, sim_out;
  sim->add_option("config", sim_config, "Configuration file")->required();
  sim->add_option("-o,--output", sim_out, "Output directory (overrides output_dir)");

  // dispersion
  auto* disp = app.add_subcommand("dispersion", "Tabulate the linear dispersion relation as CSV");
  std::string disp_model = "fdfd", disp_out;
  double dg = 0.5, dd = 1.0, de = 0.1, dm = 0.1, kmin = 0.0, kmax = 5.0, da = 1.0, d1 = 0.0, d2 = 0.0, db = 0.0;
  int dcount = 51;
  bool d_gamma_factor = false;
  disp->add_option("--model", disp_model, "fdfd, bfd, bb, swsw, swfd, ilw, bo, rbo")->capture_default_str();
  disp->add_option("--gamma", dg)->capture_default_str();
  disp->add_option("--delta", dd)->capture_default_str();
  disp->add_option("--eps", de)->capture_default_str();
  disp->add_option("--mu", dm)->capture_default_str();
  disp->add_option("--kmin", kmin)->capture_default_str();
  disp->add_option("--kmax", kmax)->capture_default_str();
  disp->add_option("--count", dcount)->capture_default_str();
  disp->add_option("--alpha", da, "ILW/BO/RBO parameter")->capture_default_str();
  disp->add_option("--a1", d1, "Boussinesq generator alpha1")->capture_default_str();
  disp->add_option("--a2", d2, "Boussinesq generator alpha2")->capture_default_str();
  disp->add_option("--beta", db, "Boussinesq generator beta")->capture_default_str();
  disp->add_flag("--bb-gamma-factor", d_gamma_factor, "B/B with the (1-gamma) factor on the mu*c term");
  disp->add_option("-o,--output", disp_out, "CSV file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "Convergence-order study for one target or all of them");
  std::vector<std::string> targets;
  std::vector<double> vvalues;
  std::string vout;
  double vgamma = 0.5, vsob = 0.0;
  std::optional<double> veps, vmu, vdelta;
  bool vgf = false;
  int vpoints = 256;
  std::string vkind = "random";
  ver->add_option("-t,--target", targets, "prop1 prop2 remb coro2 coro2bis coro2ter coro1 coro3 thm1..thm6 or all")
      ->required();
  ver->add_option("--values", vvalues, "Sweep values (default: the target's sweep)");
  ver->add_option("--gamma", vgamma)->capture_default_str();
  ver->add_option("--eps", veps, "Fix eps (non-swept targets only)");
  ver->add_option("--mu", vmu, "Fix mu (non-swept targets only)");
  ver->add_option("--delta", vdelta, "Fix delta");
  ver->add_option("--sobolev", vsob, "Sobolev index of the error norm")->capture_default_str();
  ver->add_option("--points", vpoints, "Horizontal points of the test corpus")->capture_default_str();
  ver->add_option("--corpus", vkind, "random or gaussian")->capture_default_str();
  ver->add_flag("--bb-gamma-factor", vgf, "thm3: use the (1-gamma) variant of B/B");
  ver->add_option("-o,--output", vout, "Directory for RunRecords");

  // consistency
  auto* con = app.add_subcommand("consistency", "Consistency residual of a model along a sweep");
  std::string cmodel, cvar = "eps", ceps = "x", cmu = "0.1", cdelta = "1", cout_dir;
  std::vector<double> cvalues{0.2, 0.1, 0.05, 0.025};
  double cgamma = 0.5, ca = 1.0, c1 = 0.3, c2 = 0.5, cb = 0.2, csob = 0.0;
  std::optional<double> cexpect;
  bool cgf = false;
  int cpoints = 256;
  con->add_option("--model", cmodel, "fdfd, bfd, bb, swsw, swfd, ilw, bo")->required();
  con->add_option("--sweep", cvar, "Swept variable name (eps or mu), used for labels")->capture_default_str();
  con->add_option("--values", cvalues, "Values of x")->capture_default_str();
  con->add_option("--eps", ceps, "eps as a number or a function of x")->capture_default_str();
  con->add_option("--mu", cmu, "mu as a number or a function of x")->capture_default_str();
  con->add_option("--delta", cdelta, "delta as a number or a function of x")->capture_default_str();
  con->add_option("--gamma", cgamma)->capture_default_str();
  con->add_option("--alpha", ca)->capture_default_str();
  con->add_option("--a1", c1)->capture_default_str();
  con->add_option("--a2", c2)->capture_default_str();
  con->add_option("--beta", cb)->capture_default_str();
  con->add_option("--sobolev", csob)->capture_default_str();
  con->add_option("--points", cpoints)->capture_default_str();
  con->add_option("--expect", cexpect, "Expected order; the run fails below expect - 0.2");
  con->add_flag("--bb-gamma-factor", cgf);
  con->add_option("-o,--output", cout_dir, "Directory for the RunRecord");

  // coeffs
  auto* coe = app.add_subcommand("coeffs", "Coefficients (a, b, c, d) of a Boussinesq family");
  std::string family;
  double fg = 0.5, fd = 1.0, f1 = 0.0, f2 = 0.0, fb = 0.0;
  coe->add_option("--family", family, "bfd or bb")->required()->check(CLI::IsMember({"bfd", "bb"}));
  coe->add_option("--gamma", fg)->capture_default_str();
  coe->add_option("--delta", fd)->capture_default_str();
  coe->add_option("--a1", f1)->capture_default_str();
  coe->add_option("--a2", f2)->capture_default_str();
  coe->add_option("--beta", fb)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*sim) return run_simulate(sim_config, sim_out);

    if (*disp) {
      const RegimeParams p(dg, dd, de, dm);
      const ModelId m = build_model(disp_model, da, d1, d2, db, dg, dd, d_gamma_factor);
      const auto rows = dispersion_table(m, p, kmin, kmax, dcount);
      std::ofstream file;
      if (!disp_out.empty()) {
        file.open(disp_out);
        if (!file) throw Error("cannot write " + disp_out);
      }
      std::ostream& os = disp_out.empty() ? std::cout : file;
      os << std::setprecision(17) << "k,omega2,wellposed\n";
      for (const DispersionSample& r : rows) os << r.k << "," << r.omega2 << "," << (r.wellposed ? 1 : 0) << "\n";
      return kPass;
    }

    if (*ver) {
      std::vector<Target> list;
      for (const std::string& t : targets) {
        if (t == "all") {
          const auto all = all_targets();
          list.insert(list.end(), all.begin(), all.end());
        } else {
          list.push_back(parse_target(t));
        }
      }
      bool pass = true;
      for (Target t : list) {
        SweepSpec s;
        s.target = t;
        s.values = vvalues;
        s.gamma = vgamma;
        s.eps = veps;
        s.mu = vmu;
        s.delta = vdelta;
        s.bb_gamma_factor = vgf;
        s.sobolev_index = vsob;
        s.corpus.points = vpoints;
        s.corpus.kind = vkind;
        const RunRecord rec = convergence_study(s);
        std::cout << "== " << target_name(t) << ": " << rec.info.quantity << "\n";
        if (!rec.model.empty()) std::cout << "model: " << rec.model << "\n";
        pass = report(rec, vout) == kPass && pass;
      }
      return pass ? kPass : kFail;
    }

    if (*con) {
      std::vector<RegimeParams> ps;
      for (double x : cvalues)
        ps.emplace_back(cgamma, eval_expr("delta", cdelta, x), eval_expr("eps", ceps, x), eval_expr("mu", cmu, x));
      const ModelId m = build_model(cmodel, ca, c1, c2, cb, cgamma, ps.front().delta(), cgf);
      if (m.kind == ModelKind::BB && cdelta.find('x') != std::string::npos)
        throw Error("bb coefficients depend on delta; keep delta fixed along the sweep");
      for (const RegimeParams& p : ps) warn_regime(m, p);
      Corpus corpus;
      corpus.points = cpoints;
      const RunRecord rec = consistency_study(m, ps, cvalues, cvar, corpus, csob, cexpect);
      std::cout << "model: " << rec.model << "\n";
      return report(rec, cout_dir);
    }

    if (*coe) {
      const BoussinesqCoeffs c = family == "bfd" ? coeffs_bfd(f1, f2, fb) : coeffs_bb(fg, fd, f1, f2, fb);
      std::cout << "a=" << pretty(c.a) << " b=" << pretty(c.b) << " c=" << pretty(c.c) << " d=" << pretty(c.d) << "\n";
      return kPass;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "iwave: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "iwave: " << e.what() << "\n";
    return kUsage;
  } catch (const SolveFailure& e) {
    std::cerr << "iwave: " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    std::cerr << "iwave: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
