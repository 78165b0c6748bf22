#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "autores/autores.hpp"

using namespace autores;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to the named file, or stdout for an empty name.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IoError(path, "cannot open for writing");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }
  void close() {
    if (!file_) return;
    file_->flush();
    if (!*file_) throw IoError(path_, "write failed");
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
};

struct RunOptions {
  RunConfig run;
  CaptureCriteria criteria;
  std::string config;
  std::string out;
  double a0re = kLockedA100.real(), a0im = kLockedA100.imag();
  double b0re = kRawB100.real(), b0im = kRawB100.imag();
  bool raw_data = false;
};

void add_run_options(CLI::App* cmd, RunOptions& o, bool with_f) {
  if (with_f) cmd->add_option("--f", o.run.f, "normalized forcing")->capture_default_str();
  cmd->add_option("--t0", o.run.t0, "start time")->capture_default_str();
  cmd->add_option("--t1", o.run.t1, "end time")->capture_default_str();
  cmd->add_option("--a0-re", o.a0re, "Re A(t0)")->capture_default_str();
  cmd->add_option("--a0-im", o.a0im, "Im A(t0)")->capture_default_str();
  cmd->add_option("--b0-re", o.b0re, "Re B(t0)")->capture_default_str();
  cmd->add_option("--b0-im", o.b0im, "Im B(t0)")->capture_default_str();
  cmd->add_flag("--raw-data", o.raw_data, "start from A = 102.669-793.88i, B = 386.825+101.831i");
  cmd->add_option("--rtol", o.run.integrator.rtol, "relative tolerance")->capture_default_str();
  cmd->add_option("--atol", o.run.integrator.atol, "absolute tolerance")->capture_default_str();
  cmd->add_option("--samples", o.run.sample_count, "number of output samples")->capture_default_str();
  cmd->add_option("--config", o.config, "INI file with [run], [integrator], [capture] sections");
}

// Command-line values win over the config file only when given explicitly.
void resolve_run(CLI::App* cmd, RunOptions& o) {
  RunConfig from_cli = o.run;
  from_cli.A0 = o.raw_data ? kRawA100 : Complex(o.a0re, o.a0im);
  from_cli.B0 = o.raw_data ? kRawB100 : Complex(o.b0re, o.b0im);
  if (o.config.empty()) {
    o.run = from_cli;
    return;
  }
  RunConfig merged = from_cli;
  load_run_config(o.config, merged, o.criteria);
  auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
  if (given("--f")) merged.f = from_cli.f;
  if (given("--t0")) merged.t0 = from_cli.t0;
  if (given("--t1")) merged.t1 = from_cli.t1;
  if (given("--a0-re") || given("--a0-im") || o.raw_data) merged.A0 = from_cli.A0;
  if (given("--b0-re") || given("--b0-im") || o.raw_data) merged.B0 = from_cli.B0;
  if (given("--rtol")) merged.integrator.rtol = from_cli.integrator.rtol;
  if (given("--atol")) merged.integrator.atol = from_cli.integrator.atol;
  if (given("--samples")) merged.sample_count = from_cli.sample_count;
  o.run = merged;
}

int cmd_simulate(CLI::App* cmd, RunOptions& o) {
  resolve_run(cmd, o);
  const Trajectory traj = simulate(o.run);
  RunMetadata meta{{"f", num(o.run.f)},
                   {"t0", num(o.run.t0)},
                   {"t1", num(o.run.t1)},
                   {"rtol", num(o.run.integrator.rtol)},
                   {"status", to_string(traj.status)},
                   {"accepted_steps", std::to_string(traj.stats.accepted)}};
  if (traj.samples.size() >= 2 && traj.samples.back().t >= 1.5 * traj.samples.front().t) {
    const CaptureVerdict v = classify_capture(traj, o.run.f, o.criteria);
    meta.push_back({"verdict", to_string(v.verdict)});
    meta.push_back({"late_ratio", num(v.late_ratio)});
    meta.push_back({"window", num(v.window.first) + ":" + num(v.window.second)});
  }
  if (o.out.empty()) {
    write_run(traj, std::cout, meta);
  } else {
    emit_run(traj, o.out, meta);
  }
  return 0;
}

int cmd_threshold(CLI::App* cmd, RunOptions& o, double f_lo, double f_hi, ScanOptions& scan) {
  resolve_run(cmd, o);
  scan.criteria = o.criteria;
  const ScanResult r = threshold_scan(f_lo, f_hi, o.run, scan);
  Sink sink(o.out);
  auto& out = sink.out();
  out << "# span=" << num(o.run.t0) << ":" << num(o.run.t1) << '\n';
  out << "# empirical_threshold=" << num(r.estimate) << '\n';
  out << "# bracket=" << num(r.bracket_lo) << ":" << num(r.bracket_hi) << '\n';
  out << "# below=" << to_string(r.below) << " above=" << to_string(r.above) << '\n';
  out << "# existence_threshold=12\n";
  out << "f,verdict,late_ratio,drift,growth_exponent\n";
  for (const auto& v : r.table)
    out << num(v.f) << ',' << to_string(v.verdict) << ',' << num(v.late_ratio) << ','
        << num(v.drift) << ',' << num(v.growth_exponent) << '\n';
  sink.close();
  return 0;
}

int cmd_series(double f, const std::string& family_name, int order, bool negative_cos,
               const std::string& path) {
  const SeriesFamily family = parse_family(family_name);
  const CosBranch branch = negative_cos ? CosBranch::Negative : CosBranch::Positive;
  const AsymptoticSeries s = family == SeriesFamily::Bounded ? bounded_series(f, order)
                                                             : growing_series(f, family, order, branch);
  Sink sink(path);
  auto& out = sink.out();
  out << "# family=" << to_string(family) << '\n' << "# f=" << num(f) << '\n';
  if (s.psi) out << "# psi=" << num(*s.psi) << '\n';
  for (std::size_t k = 0; k < s.mus.size(); ++k) out << "# mu" << k << '=' << num(s.mus[k]) << '\n';
  out << "k,re_a,im_a,re_b,im_b\n";
  for (const auto& c : s.coeffs)
    out << c.k << ',' << num(c.a.real()) << ',' << num(c.a.imag()) << ',' << num(c.b.real()) << ','
        << num(c.b.imag()) << '\n';
  sink.close();
  return 0;
}

int cmd_stability(double f, const std::string& family_name, const std::vector<double>& times) {
  const SeriesFamily family = parse_family(family_name);
  std::cout << "# family=" << to_string(family) << '\n'
            << "# classification=" << to_string(classify_stability(f, family)) << '\n'
            << "t,index,re_numeric,im_numeric,re_asymptotic,im_asymptotic\n";
  for (double t : times) {
    const EigenReport r = eigen_report(f, family, t);
    for (std::size_t i = 0; i < 4; ++i)
      std::cout << num(t) << ',' << i << ',' << num(r.numeric[i].real()) << ','
                << num(r.numeric[i].imag()) << ',' << num(r.asymptotic[i].real()) << ','
                << num(r.asymptotic[i].imag()) << '\n';
  }
  return 0;
}

int cmd_envelope(double e2, double h, double u0, double phi0, bool rising, double t1,
                 std::size_t samples, const std::string& path) {
  const EllipticOrbit orbit(make_invariants(e2, h, u0, phi0, rising));
  const auto [r2, r3] = orbit.turning_points();
  Sink sink(path);
  auto& out = sink.out();
  out << "# E2=" << num(e2) << "\n# H=" << num(h) << "\n# G=" << num(orbit.invariants().G) << '\n'
      << "# turning_points=" << num(r2) << ':' << num(r3) << '\n'
      << "# period=" << num(orbit.period()) << '\n'
      << "# drift_rate=" << num(orbit.drift_rate()) << '\n'
      << "t,u,phi,psi,re_alpha0,im_alpha0,re_beta0,im_beta0\n";
  for (double t : uniform_grid(0.0, t1, samples)) {
    const AngularCoordinates a = orbit.angles(t);
    const EnvelopeState s = from_angles(a.angles, a.E);
    out << num(t) << ',' << num(orbit.u(t)) << ',' << num(a.angles.phi) << ',' << num(a.angles.psi)
        << ',' << num(s.alpha0.real()) << ',' << num(s.alpha0.imag()) << ','
        << num(s.beta0.real()) << ',' << num(s.beta0.imag()) << '\n';
  }
  sink.close();
  return 0;
}

int cmd_reduce(const PhysicalParams& p) {
  const ScalingMap m = scale_params(p);
  std::cout << "kappa=" << num(m.kappa) << "\nlambda=" << num(m.lambda) << "\nchi=" << num(m.chi)
            << "\nf=" << num(m.f) << '\n';
  std::cout << "kappa,lambda,chi,f\n"
            << num(m.kappa) << ',' << num(m.lambda) << ',' << num(m.chi) << ',' << num(m.f) << '\n';
  return 0;
}

int cmd_neighborhood(double f, double eps, double t0, double t1, const IntegratorConfig& cfg,
                     const std::string& path) {
  const NeighborhoodReport r = neighborhood_run(f, eps, eps, t0, t1, cfg);
  Sink sink(path);
  auto& out = sink.out();
  out << "# f=" << num(f) << "\n# perturbation=" << num(eps) << '\n'
      << "# status=" << to_string(r.trajectory.status) << '\n'
      << "# max_comparative=" << num(r.max_comparative) << '\n'
      << "# mean_comparative=" << num(r.mean_comparative) << '\n'
      << "t,abs_A,comparative\n";
  for (const auto& p : r.points) out << num(p.t) << ',' << num(p.abs_A) << ',' << num(p.comparative) << '\n';
  sink.close();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autoresonance capture toolkit for the 1:2 primary resonance system"};
  app.require_subcommand(1);

  RunOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "integrate the primary system and emit a run table");
  add_run_options(simulate_cmd, sim, true);
  simulate_cmd->add_option("--out", sim.out, "output file (default stdout)");

  RunOptions thr;
  double f_lo = 11.9, f_hi = 12.1;
  ScanOptions scan;
  auto* threshold_cmd = app.add_subcommand("threshold", "bisect the capture threshold in f");
  threshold_cmd->add_option("--f-lo", f_lo, "lower forcing")->capture_default_str();
  threshold_cmd->add_option("--f-hi", f_hi, "upper forcing")->capture_default_str();
  threshold_cmd->add_option("--width", scan.width, "target bracket width")->capture_default_str();
  threshold_cmd->add_option("--steps", scan.grid_steps, "initial grid points")->capture_default_str();
  threshold_cmd->add_option("--threads", scan.threads, "worker threads (0: all cores)");
  add_run_options(threshold_cmd, thr, false);
  threshold_cmd->add_option("--out", thr.out, "output file (default stdout)");

  double series_f = 13.0;
  std::string family = "plus";
  int order = 3;
  bool negative_cos = false;
  std::string series_out;
  auto* series_cmd = app.add_subcommand("series", "print asymptotic series coefficients");
  series_cmd->add_option("--f", series_f, "normalized forcing")->capture_default_str();
  series_cmd->add_option("--family", family, "bounded|plus|minus (A2|A3|A1)")->capture_default_str();
  series_cmd->add_option("--order", order, "truncation order K")->capture_default_str();
  series_cmd->add_flag("--negative-cos", negative_cos, "use the cos(Psi) < 0 branch");
  series_cmd->add_option("--out", series_out, "output file (default stdout)");

  double stab_f = 13.0;
  std::string stab_family = "minus";
  std::vector<double> stab_t{100.0};
  auto* stability_cmd = app.add_subcommand("stability", "eigenvalues of the linearization along a family");
  stability_cmd->add_option("--f", stab_f, "normalized forcing")->capture_default_str();
  stability_cmd->add_option("--family", stab_family, "bounded|plus|minus")->capture_default_str();
  stability_cmd->add_option("--t", stab_t, "evaluation time(s)");

  double e2 = 1.0, h = 0.2, u0 = 0.3, phi0 = 0.0, env_t1 = 20.0;
  bool rising = false;
  std::size_t env_samples = 401;
  std::string env_out;
  auto* envelope_cmd = app.add_subcommand("envelope", "leading-order envelope orbit by quadrature");
  envelope_cmd->set_help_flag("--help", "print this help message and exit");  // --h is taken by H
  envelope_cmd->add_option("--e2", e2, "E^2 = |alpha0|^2 + 2|beta0|^2")->capture_default_str();
  envelope_cmd->add_option("--h", h, "H")->capture_default_str();
  envelope_cmd->add_option("--u0", u0, "initial cos(2 PsiE)")->capture_default_str();
  envelope_cmd->add_option("--phi0", phi0, "initial phase of alpha0")->capture_default_str();
  envelope_cmd->add_option("--t1", env_t1, "end time")->capture_default_str();
  envelope_cmd->add_option("--samples", env_samples, "number of output rows")->capture_default_str();
  envelope_cmd->add_flag("--rising", rising, "u increases initially");
  envelope_cmd->add_option("--out", env_out, "output file (default stdout)");

  PhysicalParams phys;
  phys.gamma = 12.0;
  phys.epsilon = 1e-3;
  auto* reduce_cmd = app.add_subcommand("reduce", "scalings from the physical to the normalized system");
  reduce_cmd->add_option("--omega", phys.omega)->capture_default_str();
  reduce_cmd->add_option("--alpha1", phys.alpha1)->capture_default_str();
  reduce_cmd->add_option("--alpha2", phys.alpha2)->capture_default_str();
  reduce_cmd->add_option("--gamma", phys.gamma)->capture_default_str();
  reduce_cmd->add_option("--alpha", phys.alpha)->capture_default_str();
  reduce_cmd->add_option("--epsilon", phys.epsilon)->capture_default_str();

  double nb_f = 12.1, nb_eps = 0.1, nb_t0 = 100.0, nb_t1 = 150.0;
  IntegratorConfig nb_cfg;
  std::string nb_out;
  auto* neighborhood_cmd = app.add_subcommand("neighborhood", "perturb the growing solution and compare");
  neighborhood_cmd->add_option("--f", nb_f, "normalized forcing")->capture_default_str();
  neighborhood_cmd->add_option("--eps-perturb", nb_eps, "real shift added to A and B")->capture_default_str();
  neighborhood_cmd->add_option("--t0", nb_t0)->capture_default_str();
  neighborhood_cmd->add_option("--t1", nb_t1)->capture_default_str();
  neighborhood_cmd->add_option("--rtol", nb_cfg.rtol)->capture_default_str();
  neighborhood_cmd->add_option("--out", nb_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate_cmd) return cmd_simulate(simulate_cmd, sim);
    if (*threshold_cmd) return cmd_threshold(threshold_cmd, thr, f_lo, f_hi, scan);
    if (*series_cmd) return cmd_series(series_f, family, order, negative_cos, series_out);
    if (*stability_cmd) return cmd_stability(stab_f, stab_family, stab_t);
    if (*envelope_cmd) return cmd_envelope(e2, h, u0, phi0, rising, env_t1, env_samples, env_out);
    if (*reduce_cmd) return cmd_reduce(phys);
    if (*neighborhood_cmd) return cmd_neighborhood(nb_f, nb_eps, nb_t0, nb_t1, nb_cfg, nb_out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
