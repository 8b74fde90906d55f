#include "weylps/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "weylps/atlas.hpp"
#include "weylps/backlund.hpp"
#include "weylps/hamiltonian.hpp"
#include "weylps/integrator.hpp"
#include "weylps/residue.hpp"
#include "weylps/series.hpp"

namespace weylps {

namespace {

using json = nlohmann::ordered_json;

// Bad input detected after option parsing; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(item);
  }
  return out;
}

Rat parse_rat(const std::string& text) {
  try {
    return Rat::parse(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("malformed rational '" + text + "'");
  }
}

// Accepts "p/q" or a decimal literal.
double parse_real(const std::string& text) {
  try {
    return Rat::parse(text).to_double();
  } catch (const std::invalid_argument&) {
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("malformed number '" + text + "'");
  return v;
}

RatVector resolve_alpha(const RunConfig& cfg, std::uint64_t seed) {
  if (cfg.alpha.empty()) {
    RationalSampler rs(seed);
    return rs.unit_sum(static_cast<std::size_t>(cfg.l + 1));
  }
  const auto parts = split(cfg.alpha, ',');
  RatVector a;
  for (const auto& p : parts) a.push_back(parse_rat(p));
  try {
    return ParamPoint(cfg.l, a).alpha;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json rat_array(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json header(const std::string& command, const RunConfig& cfg) {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["l"] = cfg.l;
  return j;
}

json report_json(const CheckReport& rep) {
  json j;
  j["passed"] = rep.ok();
  j["samples"] = rep.samples;
  j["checks"] = rep.checks;
  j["skipped"] = rep.skipped;
  j["violation_count"] = rep.violations.size();
  json v = json::array();
  for (std::size_t i = 0; i < rep.violations.size() && i < 20; ++i) v.push_back(rep.violations[i]);
  j["violations"] = v;
  return j;
}

ResidueClass find_class(int l, const std::string& label) {
  std::string key = label;
  if (key.size() >= 2 && key.front() == '(' && key.back() == ')') key = key.substr(1, key.size() - 2);
  if (key == "empty" || key == "∅") key.clear();
  for (const auto& c : all_classes(l))
    if (c.digits() == key) return c;
  throw UsageError("unknown pole type '" + label + "'");
}

// ---------------------------------------------------------------------------

json cmd_residues(const RunConfig& cfg) {
  json j = header("residues", cfg);
  const auto entry = [](const ResidueClass& c) {
    json e;
    e["type"] = c.type_label;
    json r = json::array();
    for (const auto& v : c.residue) r.push_back(std::stol(v.str()));
    e["residue"] = r;
    e["bt_word"] = c.bt_word.str();
    e["free_constants"] = c.n_free;
    json names = json::array();
    for (const auto& s : free_slots(c)) names.push_back(s.name);
    e["free_names"] = names;
    return e;
  };
  const auto classes = enumerate_residues(cfg.l);
  j["count"] = classes.size();
  json list = json::array();
  for (const auto& c : classes) list.push_back(entry(c));
  j["classes"] = list;
  j["holomorphic"] = entry(holomorphic_class(cfg.l));
  return j;
}

struct SeriesArgs {
  std::string type;
  std::string free;
  int order = 4;
};

std::string series_text(const LaurentFamily& fam, int lo, int hi) {
  std::ostringstream os;
  os << "type " << fam.cls.type_label << "\n";
  for (std::size_t i = 0; i < fam.f.size(); ++i) {
    os << "f" << i << " =";
    bool any = false;
    for (int n = lo; n <= hi; ++n) {
      const auto c = fam.f[i].coeff(n);
      if (c.is_zero()) continue;
      os << (any ? " + " : " ") << "(" << c << ")";
      if (n != 0) os << " T^" << n;
      any = true;
    }
    if (!any) os << " 0";
    os << " + O(T^" << hi + 1 << ")\n";
  }
  return os.str();
}

std::string cmd_series(const RunConfig& cfg, const SeriesArgs& sa) {
  const auto cls = find_class(cfg.l, sa.type);
  const auto alpha = resolve_alpha(cfg, cfg.seed);
  FreeBindings fb;
  for (const auto& s : free_slots(cls)) fb[s.name] = Rat(0);
  if (!sa.free.empty()) {
    for (const auto& item : split(sa.free, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("free constant '" + item + "' must read name=value");
      const auto name = item.substr(0, eq);
      if (!fb.count(name)) throw UsageError("type " + cls.type_label + " has no free constant '" + name + "'");
      fb[name] = parse_rat(item.substr(eq + 1));
    }
  }
  const auto fam = expand(ParamPoint(cfg.l, alpha), cls, fb, sa.order);
  const int lo = cls.kind == PoleKind::Holomorphic ? 0 : -1;
  if (cfg.format == "text") return series_text(fam, lo, sa.order);

  json j = header("series", cfg);
  j["type"] = cls.type_label;
  json r = json::array();
  for (const auto& v : cls.residue) r.push_back(std::stol(v.str()));
  j["residue"] = r;
  j["alpha"] = rat_array(alpha);
  json free = json::object();
  for (const auto& s : free_slots(cls)) free[s.name] = fb[s.name].str();
  j["free"] = free;
  j["order"] = sa.order;
  j["lowest_exponent"] = lo;
  json coeffs = json::array();
  for (const auto& f : fam.f) {
    json row = json::array();
    for (int n = lo; n <= sa.order; ++n) row.push_back(f.coeff(n).str());
    coeffs.push_back(row);
  }
  j["coeffs"] = coeffs;
  return j.dump(2) + "\n";
}

json polynomial_json(const ExactPolynomial& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    json t;
    t["exponents"] = e;
    t["coeff"] = c.str();
    terms.push_back(t);
  }
  return terms;
}

json cmd_atlas_dump(const RunConfig& cfg) {
  json j = header("atlas dump", cfg);
  const auto alpha = resolve_alpha(cfg, cfg.seed);
  j["alpha"] = rat_array(alpha);
  json charts = json::array();
  for (const auto& c : all_charts(cfg.l)) {
    const auto fld = reconstruct_vector_field(c, alpha);
    json e;
    e["chart"] = c.str();
    json rhs = json::array();
    for (const auto& p : fld.rhs) rhs.push_back(polynomial_json(p));
    e["rhs"] = rhs;
    charts.push_back(e);
  }
  j["charts"] = charts;
  return j;
}

json cmd_atlas_check(const RunConfig& cfg, bool& passed) {
  json j = header("atlas check", cfg);
  j["seed"] = cfg.seed;
  const auto alpha = resolve_alpha(cfg, cfg.seed);
  j["alpha"] = rat_array(alpha);
  const auto rep = verify_vector_fields(cfg.l, alpha, cfg.samples, cfg.seed);
  j["pushforward"] = report_json(rep);
  passed = rep.ok();
  return j;
}

json cmd_verify(const std::string& what, const RunConfig& cfg, bool& passed) {
  json j = header("verify " + what, cfg);
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  if (what == "group") {
    const auto rep = verify_relations(cfg.l, cfg.samples, cfg.seed);
    j["relations"] = report_json(rep);
    passed = rep.ok();
  } else if (what == "strata") {
    const auto rep = verify_strata(cfg.l, cfg.samples, cfg.seed);
    j["strata"] = report_json(rep);
    passed = rep.ok();
  } else if (what == "equivariance") {
    const auto alpha = resolve_alpha(cfg, cfg.seed);
    j["alpha"] = rat_array(alpha);
    std::vector<GroupWord> words;
    for (int i = 0; i <= cfg.l; ++i) words.push_back(GroupWord({Letter::s(i)}));
    words.push_back(GroupWord({Letter::pi()}));
    json list = json::array();
    passed = true;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const auto rep = verify_equivariance(words[k], alpha, cfg.samples, cfg.seed + k);
      json e = report_json(rep);
      e["word"] = words[k].str();
      list.push_back(e);
      passed = passed && rep.ok();
    }
    j["words"] = list;
  } else {  // hamiltonian
    if (cfg.l != 4) throw UsageError("verify hamiltonian needs --l 4");
    const auto alpha = resolve_alpha(cfg, cfg.seed);
    j["alpha"] = rat_array(alpha);
    RationalSampler rs(cfg.seed);
    json charts = json::array();
    passed = true;
    for (const auto& c : hamiltonian_charts()) {
      const auto h = hamiltonian(c, alpha);
      Rat worst;
      int nonzero = 0;
      for (int s = 0; s < cfg.samples; ++s) {
        RatVector x;
        for (int i = 0; i < 5; ++i) x.push_back(rs.rational() + rs.generic_offset());
        for (const auto& r : hamilton_check(h, alpha, to_canonical({c, x}))) {
          const Rat a = r.sign() < 0 ? -r : r;
          if (worst < a) worst = a;
          if (!r.is_zero()) ++nonzero;
        }
      }
      json e;
      e["chart"] = c.str();
      e["points"] = cfg.samples;
      e["max_abs_residual"] = worst.str();
      e["nonzero_residuals"] = nonzero;
      charts.push_back(e);
      passed = passed && nonzero == 0;
    }
    j["hamilton_equations"] = charts;
    const auto sym = verify_symplectic(alpha, cfg.samples, cfg.seed);
    j["symplectic"] = report_json(sym);
    passed = passed && sym.ok();
  }
  j["passed"] = passed;
  return j;
}

struct IntegrateArgs {
  std::string init;
  std::string chart = "empty";
  double t0 = 0.0;
  double t1 = 1.0;
  double threshold = 10.0;
};

std::string cmd_integrate(const RunConfig& cfg, const IntegrateArgs& ia) {
  if (cfg.alpha.empty()) throw UsageError("integrate needs --alpha");
  const auto alpha = resolve_alpha(cfg, cfg.seed);
  ChartId chart;
  try {
    chart = ChartId::parse(cfg.l, ia.chart);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<double> x;
  for (const auto& s : split(ia.init, ',')) x.push_back(parse_real(s));
  if (x.size() != static_cast<std::size_t>(cfg.l + 1))
    throw UsageError("--init needs " + std::to_string(cfg.l + 1) + " values");
  auto opt = default_options();
  if (cfg.rtol > 0.0) opt.rtol = cfg.rtol;
  if (cfg.atol > 0.0) opt.atol = cfg.atol;
  opt.switch_threshold = ia.threshold;
  const NumericAtlas atlas(cfg.l, alpha);
  const auto tr = integrate(atlas, {chart, x}, ia.t0, ia.t1, opt);

  if (cfg.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "t,chart";
    for (int i = 0; i <= cfg.l; ++i) os << ",x" << i;
    os << "\n";
    for (const auto& s : tr.samples) {
      os << s.t << "," << s.point.chart.str();
      for (double v : s.point.x) os << "," << v;
      os << "\n";
    }
    return os.str();
  }
  json j = header("integrate", cfg);
  j["alpha"] = rat_array(alpha);
  j["rtol"] = tr.rtol;
  j["atol"] = tr.atol;
  j["t0"] = ia.t0;
  j["t1"] = ia.t1;
  j["steps"] = tr.steps;
  j["rejected"] = tr.rejected;
  j["chart_switches"] = tr.chart_switches;
  json samples = json::array();
  for (const auto& s : tr.samples) samples.push_back({{"t", s.t}, {"chart", s.point.chart.str()}, {"x", s.point.x}});
  j["samples"] = samples;
  json events = json::array();
  for (const auto& e : tr.events) {
    json ev;
    ev["t0"] = e.t0;
    ev["residues"] = e.residue_estimate;
    ev["type"] = e.type.type_label;
    ev["local_error"] = e.local_error;
    ev["chart"] = e.point.chart.str();
    ev["x"] = e.point.x;
    events.push_back(ev);
  }
  j["events"] = events;
  return j.dump(2) + "\n";
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numerical tools for the Noumi-Yamada systems of type A2(1) and A4(1)", "weylps"};
  app.require_subcommand(1);
  RunConfig cfg;
  SeriesArgs sa;
  IntegrateArgs ia;

  const auto add_l = [&](CLI::App* sub) {
    sub->add_option("--l", cfg.l, "rank (2 or 4)")->check(CLI::IsMember({2, 4}))->capture_default_str();
  };
  const auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "write the report to this file"); };
  const auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "sample points per check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  };
  const auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "parameters a0,...,al as rationals summing to 1 (random if omitted)");
  };

  auto* residues = app.add_subcommand("residues", "list the residue classes");
  add_l(residues);
  add_out(residues);

  auto* series = app.add_subcommand("series", "Laurent expansion of a pole family");
  add_l(series);
  add_alpha(series);
  add_out(series);
  series->add_option("--seed", cfg.seed, "seed for random parameters")->capture_default_str();
  series->add_option("--type", sa.type, "pole type, e.g. 1, 13, 132 or empty")->required();
  series->add_option("--free", sa.free, "free constants name=value,... (unset ones are 0)");
  series->add_option("--order", sa.order, "highest power of T")->check(CLI::Range(0, 60))->capture_default_str();
  series->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* atlas = app.add_subcommand("atlas", "chart vector fields");
  atlas->require_subcommand(1);
  auto* dump = atlas->add_subcommand("dump", "print every chart field as polynomials");
  add_l(dump);
  add_alpha(dump);
  add_out(dump);
  dump->add_option("--seed", cfg.seed, "seed for random parameters")->capture_default_str();
  auto* check = atlas->add_subcommand("check", "pushforward identity for every chart");
  add_l(check);
  add_alpha(check);
  add_out(check);
  add_sampling(check);

  auto* verify = app.add_subcommand("verify", "sampled exact verifications");
  verify->require_subcommand(1);
  std::vector<CLI::App*> verifiers;
  for (const char* name : {"group", "equivariance", "strata", "hamiltonian"}) {
    auto* v = verify->add_subcommand(name, std::string("verify ") + name);
    add_l(v);
    add_out(v);
    add_sampling(v);
    if (std::string(name) == "equivariance" || std::string(name) == "hamiltonian") add_alpha(v);
    verifiers.push_back(v);
  }

  auto* integ = app.add_subcommand("integrate", "integrate through poles with chart switching");
  add_l(integ);
  add_out(integ);
  integ->add_option("--alpha", cfg.alpha, "parameters a0,...,al summing to 1")->required();
  integ->add_option("--init", ia.init, "initial coordinates x0,...,xl")->required();
  integ->add_option("--chart", ia.chart, "chart of the initial point")->capture_default_str();
  integ->add_option("--t0", ia.t0, "start time")->capture_default_str();
  integ->add_option("--t1", ia.t1, "end time")->capture_default_str();
  integ->add_option("--rtol", cfg.rtol, "relative tolerance (default 1e-9 or WEYLPS_RTOL)")->check(CLI::PositiveNumber);
  integ->add_option("--atol", cfg.atol, "absolute tolerance (default 1e-12 or WEYLPS_ATOL)")->check(CLI::PositiveNumber);
  integ->add_option("--threshold", ia.threshold, "chart switch threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  integ->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::vector<const char*> argv{"weylps"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    bool passed = true;
    std::string text;
    if (residues->parsed()) {
      text = cmd_residues(cfg).dump(2) + "\n";
    } else if (series->parsed()) {
      text = cmd_series(cfg, sa);
    } else if (dump->parsed()) {
      text = cmd_atlas_dump(cfg).dump(2) + "\n";
    } else if (check->parsed()) {
      text = cmd_atlas_check(cfg, passed).dump(2) + "\n";
    } else if (integ->parsed()) {
      text = cmd_integrate(cfg, ia);
    } else {
      for (auto* v : verifiers)
        if (v->parsed()) text = cmd_verify(v->get_name(), cfg, passed).dump(2) + "\n";
    }
    emit(text, cfg, out);
    return passed ? kExitOk : kExitFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const IntegrationError& e) {
    err << "integration failed: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}

}  // namespace weylps
