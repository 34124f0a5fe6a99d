#include "legvar/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "legvar/convergence.hpp"
#include "legvar/hamiltonian.hpp"
#include "legvar/identities.hpp"
#include "legvar/io.hpp"
#include "legvar/scalar_field.hpp"
#include "legvar/sphere.hpp"
#include "legvar/surfaces.hpp"
#include "legvar/varifold.hpp"

namespace legvar {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// One pass/fail line of a report. at_least: value >= target - tol,
// relative: |value / target - 1| <= tol, absolute: |value - target| <= tol,
// at_most: value <= target + tol.
struct Check {
  std::string name, relation;
  double value, target, tol;
  bool pass = false;
};

class Report {
 public:
  Report(const RunConfig& c, json tolerances) : cfg_(c) {
    doc_["tool"] = "legvar";
    doc_["version"] = library_version();
    doc_["command"] = c.command;
    doc_["config"] = config_json(c);
    doc_["tolerances"] = std::move(tolerances);
  }

  void check(const std::string& name, const std::string& relation, double value, double target, double tol) {
    if (cfg_.tol >= 0) tol = cfg_.tol;
    Check k{name, relation, value, target, tol};
    // NaN fails every relation; +inf passes at_least (exact at every resolution).
    if (relation == "at_least") k.pass = value >= target - tol;
    else if (relation == "at_most") k.pass = value <= target + tol;
    else if (relation == "relative") k.pass = std::abs(value / target - 1) <= tol;
    else k.pass = std::abs(value - target) <= tol;
    checks_.push_back(k);
  }
  void fail(const std::string& name, const std::string& why) {
    checks_.push_back({name, "error", std::nan(""), std::nan(""), 0.0, false});
    errors_.push_back(name + ": " + why);
  }
  json& results() { return doc_["results"]; }
  void csv_table(std::string t) { csv_ = std::move(t); }

  RunResult finish() {
    bool ok = true;
    json cj = json::array();
    for (const Check& k : checks_) {
      ok = ok && k.pass;
      cj.push_back({{"name", k.name}, {"relation", k.relation}, {"value", k.value}, {"target", k.target},
                    {"tolerance", k.tol}, {"pass", k.pass}});
    }
    doc_["checks"] = cj;
    if (!errors_.empty()) doc_["errors"] = errors_;
    doc_["pass"] = ok;
    RunResult r;
    r.exit_code = ok ? 0 : 1;
    if (cfg_.format == "json") {
      r.report = doc_.dump(2) + "\n";
    } else if (!csv_.empty()) {
      r.report = csv_;
    } else {
      std::ostringstream os;
      os << "check,value,target,tolerance,relation,pass\n";
      for (const Check& k : checks_)
        os << k.name << ',' << num(k.value) << ',' << num(k.target) << ',' << num(k.tol) << ',' << k.relation << ','
           << (k.pass ? 1 : 0) << '\n';
      r.report = os.str();
    }
    return r;
  }

  static json config_json(const RunConfig& c) {
    return {{"command", c.command}, {"family", c.family}, {"seed", c.seed},        {"grid", c.grid},
            {"k", c.k},             {"radii", c.radii},   {"tol", c.tol},          {"format", c.format},
            {"p", c.p},             {"q", c.q},           {"observables", c.observables},
            {"input", c.input},     {"center", c.center}, {"cutoff", c.cutoff}};
  }

 private:
  const RunConfig& cfg_;
  json doc_;
  std::vector<Check> checks_;
  std::vector<std::string> errors_;
  std::string csv_;
};

// Convergence slopes are judged against 2 with a 0.2 margin.
constexpr double kSlopeTarget = 2.0, kSlopeMargin = 0.2;

json ladder_json(const Ladder& l) { return {{"n", l.n}, {"err", l.err}, {"slope", l.slope()}}; }

void slope_check(Report& rep, const std::string& name, const Ladder& l) {
  rep.check(name, "at_least", l.slope(), kSlopeTarget, kSlopeMargin);
}

std::vector<int> grid_or(const RunConfig& c, std::vector<int> def) { return c.grid.empty() ? def : c.grid; }

GridDomain sw_chart(int n) { return GridDomain::cylinder(-1.5, 1.0, 2 * kPi, n / 2, n); }

HPoint center_or(const RunConfig& c, const HPoint& def) {
  if (c.center.empty()) return def;
  return HPoint::from_coords(Eigen::Map<const Vec5>(c.center.data()));
}

std::vector<double> geometric(double a0, double ratio, int count) {
  std::vector<double> r;
  for (int j = 0; j < count; ++j) r.push_back(a0 * std::pow(ratio, j));
  return r;
}

}  // namespace

const char* library_version() { return "0.1.0"; }

std::vector<std::string> default_observable_ids() {
  std::vector<std::string> ids;
  for (const TestObservable& o : default_observable_panel()) ids.push_back(o.id);
  return ids;
}

void RunConfig::validate() const {
  static const std::vector<std::string> commands{"identities", "surface", "density", "counterexample"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw UsageError("unknown command '" + command + "'");
  if (format != "json" && format != "csv") throw UsageError("--format must be json or csv");
  if (cutoff != "poly" && cutoff != "bump") throw UsageError("--cutoff must be poly or bump");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 4) throw UsageError("grid sizes must be at least 4");
    if (i > 0 && grid[i] <= grid[i - 1]) throw UsageError("grid sizes must be strictly increasing");
  }
  for (int kk : k)
    if (kk < 2) throw UsageError("k must be at least 2");
  for (double r : radii)
    if (!(r > 0) || !std::isfinite(r)) throw UsageError("radii must be positive");
  if (!center.empty() && center.size() != 5) throw UsageError("--center takes 5 coordinates");
  if (p < 1 || q < 1) throw UsageError("p and q must be positive");
}

RunResult cmd_identities(const RunConfig& c) {
  IdentityOptions o;
  o.seed = c.seed;
  o.tol_override = c.tol;
  const IdentitySuite s = run_identity_suite(o);
  json tols = json::object();
  for (const IdentityResult& r : s.results) tols[r.name] = r.tolerance;
  Report rep(c, tols);
  json rows = json::array();
  for (const IdentityResult& r : s.results) {
    rows.push_back(
        {{"name", r.name}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"samples", r.samples}, {"pass", r.pass}});
    rep.check(r.name, "absolute", r.residual, 0.0, r.tolerance);
  }
  rep.results() = {{"identities", rows}, {"failing", s.failing()}, {"samples", o.samples}};
  return rep.finish();
}

RunResult cmd_surface(const RunConfig& c) {
  if (c.family == "clifford") {
    const std::vector<int> grid = grid_or(c, {32, 64, 128});
    if (grid.size() < 2) throw UsageError("surface ladders need at least two grid sizes");
    Report rep(c, {{"slope_min", kSlopeTarget - kSlopeMargin}, {"energy_rel", 2e-3}});
    Ladder leg, conf, iso, stat[5];
    std::vector<double> energy;
    const HPoint bump(-1, 0, -1, 0, 2 * kPi);  // away from the phi seam
    for (int n : grid) {
      const GridSurface s = clifford_torus_lift(clifford_domain(1, n, n));
      leg.n.push_back(n);
      leg.err.push_back(legendrian_residual(s));
      conf.n.push_back(n);
      conf.err.push_back(conformality_residual(s));
      iso.n.push_back(n);
      iso.err.push_back(isometry_defect(s));
      energy.push_back(dirichlet_energy(s));
      for (int j = 0; j < 5; ++j) {
        stat[j].n.push_back(n);
        stat[j].err.push_back(stationarity_residual(s, random_bump_hamiltonian(bump, 2.0, c.seed + j)));
      }
    }
    json sj = json::array();
    for (const Ladder& l : stat) sj.push_back(ladder_json(l));
    rep.results() = {{"legendrian", ladder_json(leg)}, {"conformality", ladder_json(conf)},
                     {"isometry", ladder_json(iso)},   {"stationarity", sj},
                     {"energy", energy},              {"energy_target", 8 * kPi * kPi}};
    slope_check(rep, "legendrian_slope", leg);
    slope_check(rep, "conformality_slope", conf);
    slope_check(rep, "isometry_slope", iso);
    for (int j = 0; j < 5; ++j) slope_check(rep, "stationarity_slope_seed" + std::to_string(c.seed + j), stat[j]);
    rep.check("energy", "relative", energy.back(), 8 * kPi * kPi, 2e-3);
    return rep.finish();
  }
  if (c.family == "sw_cone") {
    const std::vector<int> grid = grid_or(c, {128, 256, 512});
    if (grid.size() < 2) throw UsageError("surface ladders need at least two grid sizes");
    for (int n : grid)
      if (n % 2) throw UsageError("sw_cone grid sizes must be even");
    Report rep(c, {{"slope_min", kSlopeTarget - kSlopeMargin}, {"winding_abs", 1e-6}});
    Ladder leg, conf, stat, lift;
    std::vector<double> energy;
    const HPoint bump(sw_cone_point(c.p, c.q, 0.0, 1.0), 0.0);
    const ScalarField f = random_bump_hamiltonian(bump, 0.7, c.seed, 1);
    json windings = json::array();
    for (int n : grid) {
      const GridSurface s = sw_cone(c.p, c.q, sw_chart(n));
      leg.n.push_back(n);
      leg.err.push_back(legendrian_residual(s));
      conf.n.push_back(n);
      conf.err.push_back(conformality_residual(s));
      stat.n.push_back(n);
      stat.err.push_back(stationarity_residual(s, f));
      energy.push_back(dirichlet_energy(s));
      // phi recovered from the projection on a chart starting on the cone; the cone has phi = 0.
      const GridDomain rect = GridDomain::rectangle({-1.0, 0.0}, {0.5, 2.0}, n, n);
      std::vector<Vec4> v(rect.size());
      for (std::size_t k = 0; k < v.size(); ++k) {
        const auto [i, j] = rect.ij(k);
        const Vec2 x = rect.node(i, j);
        v[k] = sw_cone_point(c.p, c.q, x[0], x[1]);
      }
      double worst = 0;
      for (const HPoint& pt : legendrian_lift(rect, v, 0.0).surface.u) worst = std::max(worst, std::abs(pt.phi));
      lift.n.push_back(n);
      lift.err.push_back(worst);
      if (n == grid.back()) {
        const AngleField a = lagrangian_angle(s);
        for (int row : {1, n / 4, n / 2 - 2}) windings.push_back(winding_number(s, a, row));
      }
    }
    rep.results() = {{"p", c.p},
                     {"q", c.q},
                     {"legendrian", ladder_json(leg)},
                     {"conformality", ladder_json(conf)},
                     {"stationarity", ladder_json(stat)},
                     {"lift_phi", ladder_json(lift)},
                     {"energy", energy},
                     {"winding", windings},
                     {"winding_target", c.p - c.q}};
    slope_check(rep, "legendrian_slope", leg);
    slope_check(rep, "conformality_slope", conf);
    slope_check(rep, "stationarity_slope", stat);
    slope_check(rep, "lift_phi_slope", lift);
    for (std::size_t r = 0; r < windings.size(); ++r)
      rep.check("winding_row" + std::to_string(r), "absolute", windings[r].get<double>(), c.p - c.q, 1e-6);
    return rep.finish();
  }
  if (c.family == "appendix") {
    const std::vector<int> grid = grid_or(c, {64, 128, 256});
    if (grid.size() < 2) throw UsageError("surface ladders need at least two grid sizes");
    const std::vector<int> ks = c.k.empty() ? std::vector<int>{4} : c.k;
    Report rep(c, {{"slope_min", kSlopeTarget - kSlopeMargin}, {"area_rel", 1e-3}});
    json per_k = json::array();
    for (int k : ks) {
      const double target = 4 * kPi * kPi / appendix_gamma(k);
      Ladder leg, conf, frame, area, metric, pde;
      std::vector<double> areas;
      double fiber = 0;
      for (int m : grid) {
        const SphereSurface s = appendix_torus(k, appendix_grid(k, m));
        leg.n.push_back(m);
        leg.err.push_back(sphere_legendrian_residual(s));
        conf.n.push_back(m);
        conf.err.push_back(sphere_conformality_residual(s));
        frame.n.push_back(m);
        frame.err.push_back(sphere_frame_residual(s));
        areas.push_back(appendix_area(k, s.domain));
        area.n.push_back(m);
        area.err.push_back(std::abs(areas.back() - target));
        metric.n.push_back(m);
        metric.err.push_back(appendix_metric_check(appendix_t(k), 2 * kPi / m, 64, c.seed).max_error);
        fiber = max_fiber_distance(s);
        pde.n.push_back(m);
        pde.err.push_back(appendix_pde_residual(appendix_t(k), GridDomain::rectangle({0, 0}, {2 * kPi, 3.0}, m, m)));
      }
      per_k.push_back({{"k", k},
                       {"t", appendix_t(k)},
                       {"gamma", appendix_gamma(k)},
                       {"legendrian", ladder_json(leg)},
                       {"conformality", ladder_json(conf)},
                       {"frame", ladder_json(frame)},
                       {"metric", ladder_json(metric)},
                       {"pde", ladder_json(pde)},
                       {"area", areas},
                       {"area_target", target},
                       {"max_fiber_distance", fiber}});
      const std::string tag = "_k" + std::to_string(k);
      slope_check(rep, "legendrian_slope" + tag, leg);
      slope_check(rep, "conformality_slope" + tag, conf);
      slope_check(rep, "frame_slope" + tag, frame);
      slope_check(rep, "metric_slope" + tag, metric);
      slope_check(rep, "pde_slope" + tag, pde);
      rep.check("area" + tag, "relative", areas.back(), target, 1e-3);
    }
    rep.results() = {{"tori", per_k}};
    return rep.finish();
  }
  throw UsageError("surface family must be sw_cone, clifford or appendix");
}

RunResult cmd_density(const RunConfig& c) {
  const CutoffProfile chi(parse_cutoff_kind(c.cutoff));
  DiscreteVarifold v;
  HPoint center;
  std::vector<double> radii;
  double target = std::nan(""), target_tol = 0;
  bool extrapolate = true;
  std::string source;
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw UsageError("cannot read " + c.input);
    v = read_varifold_csv(in);
    if (v.size() == 0) throw UsageError(c.input + " holds no samples");
    if (c.radii.empty()) throw UsageError("--radii is required with --input");
    center = center_or(c, HPoint());
    source = c.input;
  } else if (c.family == "plane" || c.family == "plane2") {
    const double mult = c.family == "plane" ? 1.0 : 2.0;
    center = center_or(c, HPoint());
    v = flat_plane_varifold(center, haar_unitary(c.seed), 6.0, 601, mult);
    radii = geometric(0.4, 1.3, 7);
    target = 2 * kPi * mult;
    target_tol = 5e-3;
  } else if (c.family == "blowdown") {
    v = clifford_blowdown_varifold(20.0, 4001, 8);
    center = center_or(c, HPoint());
    radii = geometric(0.75, 1.25, 7);  // 2a^2 stays below phi_max
    target = 2 * kPi * kPi;
    target_tol = 1e-2;
  } else if (c.family == "sw21") {
    v = induced_varifold(sw_cone(2, 1, GridDomain::cylinder(-2.5, 0.5, 2 * kPi, 256, 256))).varifold;
    center = center_or(c, HPoint());
    radii = geometric(0.12, 1.3, 8);
    target = 2 * kPi * std::sqrt(2.0);
    target_tol = 5e-3;
  } else if (c.family == "clifford") {
    v = induced_varifold(clifford_torus_lift(clifford_domain(3, 300, 900))).varifold;
    center = center_or(c, HPoint(-1, 0, -1, 0, 6 * kPi));
    radii = geometric(0.2, 1.4, 8);
    target = 2 * kPi;
    target_tol = 2e-2;
    extrapolate = false;  // a curved surface at finite resolution; use the smallest radius
  } else {
    throw UsageError("density family must be plane, plane2, blowdown, sw21 or clifford, or pass --input");
  }
  if (source.empty()) source = c.family;
  if (!c.radii.empty()) radii = c.radii;

  Report rep(c, {{"density_rel", target_tol}, {"monotonicity_rel", 1e-2}, {"min_valid_radii", 3}});
  DensityReport d;
  try {
    d = extrapolate ? density(v, center, chi, radii) : monotonicity_scan(v, center, radii, chi);
  } catch (const DiagnosticError& e) {
    rep.results() = {{"source", source}, {"samples", v.size()}};
    rep.fail("density", e.what());
    return rep.finish();
  }
  rep.results() = {{"source", source},
                   {"samples", v.size()},
                   {"mass", v.mass()},
                   {"cutoff", chi.name()},
                   {"report", to_json(d)},
                   {"target", std::isnan(target) ? json(nullptr) : json(target)}};
  rep.check("valid_radii", "at_least", static_cast<double>(d.radii.size()), 3.0, 0.0);
  rep.check("monotonicity", "at_most", d.relative_violation, 0.0, 1e-2);
  if (!std::isnan(target)) {
    rep.check("smallest_radius_value", "relative", d.smallest_radius_value, target, target_tol);
    if (extrapolate) rep.check("extrapolated_density", "relative", d.extrapolated_density, target, target_tol);
  }
  return rep.finish();
}

RunResult cmd_counterexample(const RunConfig& c) {
  if (c.observables.empty()) throw UsageError("empty observable panel");
  std::vector<TestObservable> panel;
  for (const std::string& id : c.observables) {
    try {
      panel.push_back(observable_by_id(id));
    } catch (const std::invalid_argument&) {
      throw UsageError("unknown observable '" + id + "'");
    }
  }
  const std::vector<int> ks = c.k.empty() ? std::vector<int>{2, 4, 8, 16, 32} : c.k;
  if (ks.size() < 2) throw UsageError("the error fit needs at least two values of k");
  if (c.grid.size() > 1) throw UsageError("counterexample takes a single --grid value");
  const int m = c.grid.empty() ? 128 : c.grid.front();
  const CounterexampleStudy st = counterexample_study(ks, panel, m);

  Report rep(c, {{"slope_target", -1.0}, {"slope_abs", 0.3}, {"unit_rel", 1e-3}});
  json rows = json::array();
  std::ostringstream csv;
  csv << "k,observable_id,pairing,limit,abs_err\n";
  for (const CounterexampleRow& r : st.rows) {
    json j = to_json(r);
    if (r.observable == "unit") j["closed_form"] = 4 * kPi * kPi / appendix_gamma(r.k);
    rows.push_back(j);
    csv << r.k << ',' << r.observable << ',' << num(r.pairing) << ',' << num(r.limit) << ',' << num(r.abs_err) << '\n';
  }
  json slopes = json::object();
  for (std::size_t o = 0; o < st.observables.size(); ++o) {
    slopes[st.observables[o]] = st.slopes[o];
    rep.check("slope_" + st.observables[o], "absolute", st.slopes[o], -1.0, 0.3);
  }
  for (const CounterexampleRow& r : st.rows)
    if (r.observable == "unit") {
      rep.check("unit_pairing_k" + std::to_string(r.k), "relative", r.pairing, 4 * kPi * kPi / appendix_gamma(r.k), 1e-3);
      rep.check("unit_limit_k" + std::to_string(r.k), "relative", r.limit, 4 * kPi * kPi, 1e-12);
    }
  rep.results() = {{"grid", m}, {"rows", rows}, {"slopes", slopes}};
  rep.csv_table(csv.str());
  return rep.finish();
}

RunResult run(const RunConfig& c) {
  RunResult r;
  try {
    c.validate();
    if (c.command == "identities") r = cmd_identities(c);
    else if (c.command == "surface") r = cmd_surface(c);
    else if (c.command == "density") r = cmd_density(c);
    else r = cmd_counterexample(c);
  } catch (const UsageError& e) {
    return {2, std::string("usage error: ") + e.what() + "\n"};
  } catch (const ParseError& e) {
    return {2, std::string("parse error: ") + e.what() + "\n"};
  } catch (const DomainError& e) {
    return {2, std::string("invalid parameters: ") + e.what() + "\n"};
  }
  if (!c.out.empty()) {
    std::ofstream os(c.out, std::ios::binary);
    if (!(os << r.report)) return {2, "cannot write " + c.out + "\n"};
  }
  return r;
}

}  // namespace legvar
