// laxjac command-line front end. Every command writes JSON (or CSV with a .meta.json sidecar).
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "laxjac/acceptance.hpp"
#include "laxjac/error.hpp"
#include "laxjac/flows.hpp"
#include "laxjac/io.hpp"
#include "laxjac/jacobian.hpp"
#include "laxjac/kernels.hpp"
#include "laxjac/monodromy.hpp"

using namespace laxjac;

namespace {

struct Common {
  double tol = 1e-12;
  std::uint64_t seed = 1;
  std::string output = "-";
  std::string format = "json";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s, std::size_t n, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": cannot parse '" + s + "'");
    }
  }
  if (n && out.size() != n) throw UsageError(std::string(what) + ": expected " + std::to_string(n) + " values");
  return out;
}

// "1.3" or "1.3,0.2" (real, imaginary)
cplx parse_complex(const std::string& s, const char* what) {
  const auto v = parse_list(s, 0, what);
  if (v.empty() || v.size() > 2) throw UsageError(std::string(what) + ": expected re or re,im");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

Vec3c parse_vec3(const std::string& s, const char* what) {
  const auto v = parse_list(s, 3, what);
  return {v[0], v[1], v[2]};
}

Json state_json(const PendulumState& s) {
  Json x = Json::array(), v = Json::array();
  for (int i = 0; i < 3; ++i) {
    x.push_back(to_json(s.x(i)));
    v.push_back(to_json(s.v(i)));
  }
  return {{"x", x}, {"v", v}};
}

Json lattice_json(const ExtendedLattice& l) {
  Json g = Json::array();
  for (const auto& v : l.g) g.push_back(to_json(v));
  return {{"generators", g}, {"rank", l.rank()}, {"min_singular_value", l.min_singular}};
}

// flattens nested JSON into (key, value) rows for --format csv on non-tabular commands
void flatten(const Json& j, const std::string& prefix, CsvTable& t) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), t);
  } else if (j.is_array() && !j.empty() && (j[0].is_structured())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", t);
  } else {
    t.add_row({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

void emit(const Common& c, const Json& doc, const CsvTable* table = nullptr) {
  if (c.format == "json") {
    write_text(c.output, doc.dump(2) + "\n");
    return;
  }
  Json meta = doc;
  if (table) {
    meta.erase("result");
    meta["columns"] = table->header;
    write_csv(c.output, *table, meta);
    return;
  }
  CsvTable kv{{"key", "value"}, {}};
  flatten(doc["result"], "", kv);
  meta.erase("result");
  write_csv(c.output, kv, meta);
}

Json header(const std::string& command, const Common& c, Json params) {
  return {{"command", command},
          {"config", {{"tol", c.tol}, {"seed", c.seed}, {"format", c.format}, {"parameters", std::move(params)}}}};
}

PendulumState state_from(const std::string& x, const std::string& v, bool random, std::uint64_t seed) {
  if (random) {
    std::mt19937_64 rng(seed);
    return random_real_state(rng);
  }
  return PendulumState::make(parse_vec3(x, "--x"), parse_vec3(v, "--v"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lax pairs, generalized Jacobians and monodromy of the spherical pendulum"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");
  Common c;
  if (const char* env = std::getenv("LAXJAC_TOL")) {
    try {
      c.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "LAXJAC_TOL is not a number: " << env << "\n";
      return 1;
    }
  }
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tol, "integrator / solver tolerance in [1e-14, 1e-3] (env LAXJAC_TOL)");
    sub->add_option("--seed", c.seed, "seed for random states");
    sub->add_option("-o,--output", c.output, "output file, - for stdout");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  std::string xs = "0.6,0,0.8", vs = "0,1,0", hs = "1.3", ks = "0.6";
  bool random = false;
  double t_end = 10.0;
  int samples = 101;

  auto* simulate = app.add_subcommand("simulate", "integrate the pendulum and report drift of H, K and the constraints");
  simulate->add_option("--x", xs, "position x1,x2,x3");
  simulate->add_option("--v", vs, "velocity v1,v2,v3");
  simulate->add_flag("--random", random, "random real state from --seed");
  simulate->add_option("--t", t_end, "final time");
  simulate->add_option("--samples", samples, "number of output samples")->check(CLI::Range(2, 1000000));
  std::string direction = "1";
  simulate->add_option("--direction", direction, "complex time direction re,im");

  auto* invariants = app.add_subcommand("invariants", "Lax variables, spectral relations and first integrals");
  invariants->add_option("--x", xs, "position x1,x2,x3");
  invariants->add_option("--v", vs, "velocity v1,v2,v3");
  invariants->add_flag("--random", random, "random real state from --seed");

  auto* curve = app.add_subcommand("curve", "branch points and discriminant of the spectral curve");
  curve->add_option("--h", hs, "h as re or re,im");
  curve->add_option("--k", ks, "k as re or re,im");

  auto* periods = app.add_subcommand("periods", "periods of both kinds, AGM cross-check and extended lattice");
  periods->add_option("--h", hs, "h as re or re,im");
  periods->add_option("--k", ks, "k as re or re,im");

  auto* abel = app.add_subcommand("abel-fit", "linear fit of the divisor Abel sums along X_H and the rotation flow");
  abel->add_option("--x", xs, "position x1,x2,x3");
  abel->add_option("--v", vs, "velocity v1,v2,v3");
  abel->add_flag("--random", random, "random real state from --seed");
  double abel_t = 5.0;
  int abel_n = 200;
  abel->add_option("--t", abel_t, "X_H fit time");
  abel->add_option("--samples", abel_n, "samples per fit")->check(CLI::Range(4, 100000));

  auto* equiv = app.add_subcommand("equivariance", "shift of the Abel sums under rotation about e3");
  equiv->add_option("--x", xs, "position x1,x2,x3");
  equiv->add_option("--v", vs, "velocity v1,v2,v3");
  equiv->add_flag("--random", random, "random real state from --seed");
  std::string thetas = "0.25,0.5,1,2";
  equiv->add_option("--theta", thetas, "rotation angles");

  auto* mono = app.add_subcommand("monodromy", "transport the period lattices around a loop in the (h,k) plane");
  std::string center = "1,0";
  LoopSpec loop;
  mono->add_option("--center", center, "loop center h,k");
  mono->add_option("--radius", loop.radius, "loop radius");
  mono->add_option("--steps", loop.n_steps, "continuation steps")->check(CLI::Range(32, 1 << 20));
  mono->add_option("--orientation", loop.orientation, "1 counterclockwise, -1 clockwise")->check(CLI::IsMember({-1, 1}));

  auto* freq = app.add_subcommand("frequency", "frequency map at a point, or on a grid with --grid");
  freq->add_option("--h", hs, "h (real)");
  freq->add_option("--k", ks, "k (real)");
  std::string h_range, k_range, grid_n = "5,5";
  freq->add_option("--h-range", h_range, "grid h range a,b");
  freq->add_option("--k-range", k_range, "grid k range a,b");
  freq->add_option("--grid", grid_n, "grid size nh,nk");
  bool with_jacobian = false, with_poincare = false;
  double fd_step = 1e-3;
  freq->add_flag("--jacobian", with_jacobian, "also the finite-difference Jacobian (single point)");
  freq->add_flag("--poincare", with_poincare, "also the Poincare-section rotation number (single point)");
  freq->add_option("--step", fd_step, "finite-difference step");

  auto* disc = app.add_subcommand("discriminant", "zero locus of the discriminant as polylines");
  std::string dh_range = "-1.5,3", dk_range = "-2,2", dgrid = "181,161";
  disc->add_option("--h-range", dh_range, "h range a,b");
  disc->add_option("--k-range", dk_range, "k range a,b");
  disc->add_option("--grid", dgrid, "grid size nh,nk");

  auto* self = app.add_subcommand("selftest", "run the acceptance checks and print a pass/fail table");
  std::vector<int> criteria;
  self->add_option("--criteria", criteria, "subset of criteria 1..10")->delimiter(',')->check(CLI::Range(1, kCriterionCount));

  for (auto* s : {simulate, invariants, curve, periods, abel, equiv, mono, freq, disc, self}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (!(c.tol >= 1e-14 && c.tol <= 1e-3)) {
    std::cerr << "tolerance " << c.tol << " outside [1e-14, 1e-3]\n";
    return 1;
  }

  try {
    if (simulate->parsed()) {
      const PendulumState s = state_from(xs, vs, random, c.seed);
      const cplx dir = parse_complex(direction, "--direction");
      const auto traj = integrate_pendulum(s, t_end, c.tol, samples, dir);
      Json doc = header("simulate", c, {{"state", state_json(s)}, {"t", t_end}, {"samples", samples},
                                        {"direction", to_json(dir)}});
      doc["result"] = {{"max_energy_drift", traj.max_energy_drift()},
                       {"max_momentum_drift", traj.max_momentum_drift()},
                       {"max_constraint_drift", traj.max_constraint_drift()},
                       {"final", state_json(traj.states.back())}};
      CsvTable t{{"t", "x1_re", "x1_im", "x2_re", "x2_im", "x3_re", "x3_im", "v1_re", "v1_im", "v2_re", "v2_im",
                  "v3_re", "v3_im", "H_re", "H_im", "K_re", "K_im", "xx_minus_1", "xv", "energy_drift",
                  "momentum_drift", "constraint_drift"},
                 {}};
      Json rows = Json::array();
      for (std::size_t i = 0; i < traj.times.size(); ++i) {
        std::vector<std::string> row{format_double(traj.times[i])};
        const auto& st = traj.states[i];
        for (const Vec3c* w : {&st.x, &st.v})
          for (int j = 0; j < 3; ++j) {
            row.push_back(format_double((*w)(j).real()));
            row.push_back(format_double((*w)(j).imag()));
          }
        const Integrals in = integrals(st);
        const cplx xx = dot(st.x, st.x) - 1.0, xv = dot(st.x, st.v);
        for (cplx q : {in.h, in.k}) {
          row.push_back(format_double(q.real()));
          row.push_back(format_double(q.imag()));
        }
        row.push_back(format_double(std::abs(xx)));
        row.push_back(format_double(std::abs(xv)));
        const auto& d = traj.diagnostics[i];
        for (double q : {d.energy_drift, d.momentum_drift, d.constraint_drift}) row.push_back(format_double(q));
        t.add_row(row);
        rows.push_back({{"t", traj.times[i]}, {"state", state_json(st)}, {"H", to_json(in.h)}, {"K", to_json(in.k)},
                        {"energy_drift", d.energy_drift},
                        {"momentum_drift", d.momentum_drift}, {"constraint_drift", d.constraint_drift}});
      }
      doc["result"]["samples"] = rows;
      emit(c, doc, &t);
    } else if (invariants->parsed()) {
      const PendulumState s = state_from(xs, vs, random, c.seed);
      const LaxVariables lv = lax_vars(s);
      const Integrals in = integrals(s);
      const SpectralInvariants si = spectral_invariants(lv);
      Json coeffs = Json::array();
      for (cplx q : si.f.coeffs()) coeffs.push_back(to_json(q));
      Json doc = header("invariants", c, {{"state", state_json(s)}});
      doc["result"] = {{"H", to_json(in.h)},
                       {"K", to_json(in.k)},
                       {"lax_variables",
                        {{"U1", to_json(lv.u1)}, {"U2", to_json(lv.u2)}, {"V1", to_json(lv.v1)},
                         {"V2", to_json(lv.v2)}, {"W1", to_json(lv.w1)}, {"W2", to_json(lv.w2)}}},
                       {"h", to_json(si.h)},
                       {"k", to_json(si.k)},
                       {"linear_coefficient", to_json(si.linear_coeff)},
                       {"constant_coefficient", to_json(si.constant_coeff)},
                       {"spectral_quartic_ascending", coeffs}};
      emit(c, doc);
    } else if (curve->parsed()) {
      const cplx h = parse_complex(hs, "--h"), k = parse_complex(ks, "--k");
      const QuarticCurve q = curve_from_hk(h, k);
      Json bp = Json::array();
      for (cplx b : q.branch_points) bp.push_back(to_json(b));
      Json doc = header("curve", c, {{"h", to_json(h)}, {"k", to_json(k)}});
      doc["result"] = {{"branch_points", bp},          {"discriminant", to_json(q.disc)},
                       {"singular", q.singular},        {"genus", q.genus()},
                       {"arithmetic_genus", q.arithmetic_genus()}, {"min_separation", q.min_separation()}};
      emit(c, doc);
    } else if (periods->parsed()) {
      const cplx h = parse_complex(hs, "--h"), k = parse_complex(ks, "--k");
      const QuarticCurve q = curve_from_hk(h, k);
      if (q.singular) throw Error(ErrorKind::SingularCurve, "the spectral curve is singular at these (h, k)");
      const PeriodData p = compute_periods(q);
      const auto agm = periods_agm(q, p.cycles);
      const auto cmp = lattices_equal({p.omega_a, p.omega_b}, agm);
      Json order = Json::array();
      for (int i : p.cycles.order) order.push_back(i);
      Json doc = header("periods", c, {{"h", to_json(h)}, {"k", to_json(k)}});
      doc["result"] = {{"omega_a", to_json(p.omega_a)},
                       {"omega_b", to_json(p.omega_b)},
                       {"eta_a", to_json(p.eta_a)},
                       {"eta_b", to_json(p.eta_b)},
                       {"residue_plus", to_json(p.residue_plus)},
                       {"residue_minus", to_json(p.residue_minus)},
                       {"cycle_order", order},
                       {"lexicographic", p.cycles.lexicographic},
                       {"agm", {{"omega_1", to_json(agm.first)}, {"omega_2", to_json(agm.second)},
                                {"same_lattice", cmp.equal}, {"residual", cmp.residual}}},
                       {"reciprocity_residual", reciprocity_residual(q, p)},
                       {"extended_lattice", lattice_json(extended_lattice(p))}};
      emit(c, doc);
    } else if (abel->parsed()) {
      const PendulumState s = state_from(xs, vs, random, c.seed);
      const Integrals in = integrals(s);
      const QuarticCurve q = curve_from_hk(in.h, in.k);
      const ExtendedLattice l = extended_lattice(q);
      const DivisorPoint base = default_base_point(q);
      const auto traj = integrate_pendulum(s, abel_t, c.tol, abel_n);
      const AbelFit fh = abel_flow_fit(traj.times, traj.states, q, l, base);
      const AbelFit fk = fit_rotation_flow(s, 2.0, 64, q, l, base);
      auto fit_json = [](const AbelFit& f) {
        return Json{{"velocity", to_json(f.velocity)},   {"intercept", to_json(f.intercept)},
                    {"residual", f.residual},            {"segments", f.segments},
                    {"skipped_times", f.theta_crossings}, {"max_jump", f.max_jump}};
      };
      Json doc = header("abel-fit", c, {{"state", state_json(s)}, {"t", abel_t}, {"samples", abel_n}});
      doc["result"] = {{"h", to_json(in.h)}, {"k", to_json(in.k)}, {"lattice", lattice_json(l)},
                       {"hamiltonian_flow", fit_json(fh)}, {"rotation_flow", fit_json(fk)}};
      CsvTable t{{"t", "z1_re", "z1_im", "z2_re", "z2_im"}, {}};
      for (std::size_t i = 0; i < fh.unwrapped.size(); ++i) {
        std::vector<std::string> row{format_double(traj.times[i])};
        for (double v : to_real4(fh.unwrapped[i])) row.push_back(format_double(v));
        t.add_row(row);
      }
      emit(c, doc, &t);
    } else if (equiv->parsed()) {
      const PendulumState s = state_from(xs, vs, random, c.seed);
      const Integrals in = integrals(s);
      const QuarticCurve q = curve_from_hk(in.h, in.k);
      const ExtendedLattice l = extended_lattice(q);
      const DivisorPoint base = default_base_point(q);
      const auto th = parse_list(thetas, 0, "--theta");
      Json rows = Json::array();
      CsvTable t{{"theta", "dz1_residual", "dz2_re", "dz2_im"}, {}};
      for (double a : th) {
        const Equivariance e = symmetry_equivariance(s, a, q, l, base);
        rows.push_back({{"theta", a}, {"dz1_residual", e.dz1_residual}, {"dz2", to_json(e.dz2)}});
        t.add_row({format_double(a), format_double(e.dz1_residual), format_double(e.dz2.real()),
                   format_double(e.dz2.imag())});
      }
      Json doc = header("equivariance", c, {{"state", state_json(s)}, {"theta", th}});
      doc["result"] = {{"shifts", rows}};
      emit(c, doc, &t);
    } else if (mono->parsed()) {
      const auto cc = parse_list(center, 2, "--center");
      loop.h0 = cc[0];
      loop.k0 = cc[1];
      const MonodromyResult m = continue_periods(loop);
      Json doc = header("monodromy", c, {{"center", cc}, {"radius", loop.radius}, {"steps", loop.n_steps},
                                         {"orientation", loop.orientation}});
      doc["result"] = {{"M", to_json(Eigen::MatrixXi(m.m))},
                       {"M_ext", to_json(Eigen::MatrixXi(m.m_ext))},
                       {"trace", m.m.trace()},
                       {"continuation_residual", m.continuation_residual},
                       {"max_step_residual", m.max_step_residual},
                       {"steps_taken", m.steps_taken},
                       {"initial_lattice", lattice_json(m.initial)}};
      // the real-torus reading needs real motion at the base point of the loop
      const auto [h0, k0] = loop.at(0.0);
      try {
        const FrequencyResult f = frequency_map(h0, k0);
        doc["result"]["real_torus"] = {
            {"relations", to_json(Eigen::MatrixXi(f.torus.relations.cast<int>()))},
            {"times", to_json(Eigen::MatrixXd(f.torus.times))},
            {"monodromy", to_json(Eigen::MatrixXi(real_torus_monodromy(f.torus, m.m_ext)))}};
      } catch (const Error& e) {
        doc["result"]["real_torus"] = {{"error", e.what()}};
      }
      emit(c, doc);
    } else if (freq->parsed()) {
      FrequencyOptions fo;
      fo.tol = c.tol;
      if (!h_range.empty() || !k_range.empty()) {
        const auto hr = parse_list(h_range.empty() ? hs + "," + hs : h_range, 2, "--h-range");
        const auto kr = parse_list(k_range.empty() ? ks + "," + ks : k_range, 2, "--k-range");
        const auto gn = parse_list(grid_n, 2, "--grid");
        GridSpec g{hr[0], hr[1], kr[0], kr[1], int(gn[0]), int(gn[1])};
        if (g.nh < 1 || g.nk < 1) throw UsageError("--grid: sizes must be positive");
        const auto slots = frequency_grid(g, fo, ExecPolicy::Parallel);
        CsvTable t{{"i", "j", "h", "k", "omega1", "omega2", "period", "rotation_number", "error"}, {}};
        Json rows = Json::array();
        for (std::size_t idx = 0; idx < slots.size(); ++idx) {
          const auto& s = slots[idx];
          const std::string i = std::to_string(idx / g.nk), j = std::to_string(idx % g.nk);
          if (s.ok) {
            t.add_row({i, j, format_double(s.h), format_double(s.k), format_double(s.result.omega1),
                       format_double(s.result.omega2), format_double(s.result.period),
                       format_double(s.result.rotation_number), ""});
            rows.push_back({{"h", s.h}, {"k", s.k}, {"omega1", s.result.omega1}, {"omega2", s.result.omega2},
                            {"period", s.result.period}, {"rotation_number", s.result.rotation_number}});
          } else {
            t.add_row({i, j, format_double(s.h), format_double(s.k), "", "", "", "", s.error});
            rows.push_back({{"h", s.h}, {"k", s.k}, {"error", s.error}});
          }
        }
        Json doc = header("frequency", c, {{"h_range", hr}, {"k_range", kr}, {"grid", {g.nh, g.nk}}});
        doc["result"] = {{"grid", rows}};
        emit(c, doc, &t);
      } else {
        const double h = parse_complex(hs, "--h").real(), k = parse_complex(ks, "--k").real();
        const FrequencyResult f = frequency_map(h, k, fo);
        Json doc = header("frequency", c, {{"h", h}, {"k", k}, {"step", fd_step}});
        doc["result"] = {{"omega1", f.omega1},
                         {"omega2", f.omega2},
                         {"period", f.period},
                         {"delta_phi", f.delta_phi},
                         {"rotation_number", f.rotation_number},
                         {"v_h", to_json(f.v_h)},
                         {"v_k", to_json(f.v_k)},
                         {"fit_residual", f.fit_residual},
                         {"torus_relations", to_json(Eigen::MatrixXi(f.torus.relations.cast<int>()))},
                         {"torus_times", to_json(Eigen::MatrixXd(f.torus.times))}};
        if (with_jacobian) {
          const FrequencyJacobian j = frequency_jacobian(h, k, fd_step, fo);
          doc["result"]["jacobian"] = {{"matrix", to_json(Eigen::MatrixXd(j.jacobian))},
                                       {"det", j.det},
                                       {"det_half_step", j.det_half_step},
                                       {"richardson_change", j.richardson_change}};
        }
        if (with_poincare) {
          const PoincareResult p = poincare_rotation(h, k, c.tol);
          doc["result"]["poincare"] = {
              {"period", p.period}, {"delta_phi", p.delta_phi}, {"rotation_number", p.rotation_number}};
        }
        emit(c, doc);
      }
    } else if (disc->parsed()) {
      const auto hr = parse_list(dh_range, 2, "--h-range"), kr = parse_list(dk_range, 2, "--k-range");
      const auto gn = parse_list(dgrid, 2, "--grid");
      const GridSpec g{hr[0], hr[1], kr[0], kr[1], int(gn[0]), int(gn[1])};
      const DiscriminantLocus loc = discriminant_locus(g);
      CsvTable t{{"polyline", "index", "h", "k"}, {}};
      Json lines = Json::array(), iso = Json::array();
      for (std::size_t p = 0; p < loc.polylines.size(); ++p) {
        Json pts = Json::array();
        for (std::size_t i = 0; i < loc.polylines[p].size(); ++i) {
          const auto [h, k] = loc.polylines[p][i];
          t.add_row({std::to_string(p), std::to_string(i), format_double(h), format_double(k)});
          pts.push_back({h, k});
        }
        lines.push_back(pts);
      }
      for (std::size_t i = 0; i < loc.isolated.size(); ++i) {
        const auto [h, k] = loc.isolated[i];
        t.add_row({"isolated", std::to_string(i), format_double(h), format_double(k)});
        iso.push_back({h, k});
      }
      Json doc = header("discriminant", c, {{"h_range", hr}, {"k_range", kr}, {"grid", {g.nh, g.nk}}});
      doc["result"] = {{"polylines", lines}, {"isolated", iso}};
      emit(c, doc, &t);
    } else if (self->parsed()) {
      if (criteria.empty())
        for (int i = 1; i <= kCriterionCount; ++i) criteria.push_back(i);
      AcceptanceOptions ao;
      ao.seed = c.seed == 1 ? ao.seed : c.seed;
      ao.tol = c.tol;
      int failed = 0;
      Json rows = Json::array();
      for (int id : criteria) {
        const CriterionResult r = run_criterion(id, ao);
        std::cerr << format_result(r);
        failed += !r.pass;
        rows.push_back({{"criterion", id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail},
                        {"notes", r.notes}});
      }
      std::cerr << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
      if (c.output != "-") {
        Json doc = header("selftest", c, {{"criteria", criteria}});
        doc["result"] = {{"criteria", rows}, {"failed", failed}};
        emit(c, doc);
      }
      return failed ? 2 : 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    // numerical failures are still written as an artifact, then reported by exit code
    Json doc = {{"command", app.get_subcommands().front()->get_name()},
                {"error", {{"kind", std::string(e.name())}, {"message", e.what()}}}};
    if (c.output != "-") {
      try {
        write_text(c.output, doc.dump(2) + "\n");
      } catch (const Error&) {
      }
    }
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
