#include "divis/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "divis/cyclic.hpp"
#include "divis/dual.hpp"
#include "divis/errors.hpp"
#include "divis/fft.hpp"
#include "divis/fractional.hpp"
#include "divis/scan.hpp"

namespace divis {
namespace {

using ordered = nlohmann::ordered_json;

// ---------- stable serialization ----------

void dump_stable_into(const ordered& j, std::string& out) {
  switch (j.type()) {
    case ordered::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += ordered(it.key()).dump();
        out += ':';
        dump_stable_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case ordered::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ',';
        first = false;
        dump_stable_into(el, out);
      }
      out += ']';
      break;
    }
    case ordered::value_t::string:
      out += j.dump();
      break;
    case ordered::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case ordered::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case ordered::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case ordered::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += "null";
      break;
  }
}

std::string dump_stable(const ordered& j) {
  std::string out;
  dump_stable_into(j, out);
  out += '\n';
  return out;
}

std::string scalar_text(const ordered& j) {
  if (j.is_string()) return j.get<std::string>();
  std::string s;
  dump_stable_into(j, s);
  return s;
}

void render_text_into(const ordered& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        out += pad + it.key() + ":\n";
        render_text_into(it.value(), indent + 1, out);
      } else {
        out += pad + it.key() + ": " + scalar_text(it.value()) + "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& el : j) {
      if (el.is_object() || el.is_array()) {
        out += pad + "-\n";
        render_text_into(el, indent + 1, out);
      } else {
        out += pad + "- " + scalar_text(el) + "\n";
      }
    }
    if (j.empty()) out += pad + "(empty)\n";
  } else {
    out += pad + scalar_text(j) + "\n";
  }
}

std::string render(const ordered& j, bool as_json) {
  if (as_json) return dump_stable(j);
  std::string out;
  render_text_into(j, 0, out);
  return out;
}

// ---------- spec parsing ----------

void check_no_extra_keys(const ordered& obj, std::initializer_list<const char*> allowed,
                         const std::string& where, std::vector<std::string>& problems) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) problems.push_back(where + ": unknown field \"" + it.key() + "\"");
  }
}

Measure parse_spec_json(const ordered& j) {
  std::vector<std::string> problems;
  GroupSpec group = GroupSpec::integers();
  bool group_ok = false;

  if (!j.is_object()) {
    fail(errc::validation_error, "spec root must be an object");
  }
  check_no_extra_keys(j, {"group", "atoms"}, "spec", problems);

  if (!j.contains("group") || !j["group"].is_object()) {
    problems.push_back("spec: missing \"group\" object");
  } else {
    const ordered& g = j["group"];
    check_no_extra_keys(g, {"kind", "n", "step"}, "group", problems);
    const std::string kind = g.contains("kind") && g["kind"].is_string()
                                 ? g["kind"].get<std::string>()
                                 : "";
    if (kind == "Z") {
      if (g.contains("n")) problems.push_back("group: \"n\" is only valid for Z_mod");
      if (g.contains("step")) problems.push_back("group: \"step\" is only valid for R_lattice");
      group_ok = problems.empty();
    } else if (kind == "Z_mod") {
      if (g.contains("step")) problems.push_back("group: \"step\" is only valid for R_lattice");
      if (!g.contains("n") || !g["n"].is_number_integer()) {
        problems.push_back("group: Z_mod needs an integer field \"n\"");
      } else {
        const std::int64_t n = g["n"].get<std::int64_t>();
        if (n < 2) {
          problems.push_back("group: the modulus n must be at least 2");
        } else {
          group = GroupSpec::cyclic(n);
          group_ok = true;
        }
      }
    } else if (kind == "R_lattice") {
      if (g.contains("n")) problems.push_back("group: \"n\" is only valid for Z_mod");
      if (!g.contains("step") || !g["step"].is_number()) {
        problems.push_back("group: R_lattice needs a numeric field \"step\"");
      } else {
        const double step = g["step"].get<double>();
        if (!(step > 0.0) || !std::isfinite(step)) {
          problems.push_back("group: the lattice step must be positive and finite");
        } else {
          group = GroupSpec::real_lattice(step);
          group_ok = true;
        }
      }
    } else {
      problems.push_back("group: \"kind\" must be one of \"Z\", \"Z_mod\", \"R_lattice\"");
    }
  }

  std::vector<std::pair<std::int64_t, double>> atoms;
  if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty()) {
    problems.push_back("spec: missing non-empty \"atoms\" array");
  } else {
    const ordered& arr = j["atoms"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const ordered& a = arr[i];
      const std::string where = "atoms[" + std::to_string(i) + "]";
      if (!a.is_object()) {
        problems.push_back(where + ": must be an object {point, weight}");
        continue;
      }
      check_no_extra_keys(a, {"point", "weight"}, where, problems);
      if (!a.contains("point") || !a["point"].is_number_integer()) {
        problems.push_back(where + ": needs an integer \"point\"");
        continue;
      }
      if (!a.contains("weight") || !a["weight"].is_number()) {
        problems.push_back(where + ": needs a numeric \"weight\"");
        continue;
      }
      const double w = a["weight"].get<double>();
      if (!std::isfinite(w)) {
        problems.push_back(where + ": weight must be finite");
        continue;
      }
      atoms.emplace_back(a["point"].get<std::int64_t>(), w);
    }
  }

  if (!problems.empty()) {
    std::string msg = "invalid measure spec:";
    for (const auto& p : problems) msg += "\n  - " + p;
    fail(errc::validation_error, msg);
  }
  (void)group_ok;
  try {
    return make_measure(group, atoms);
  } catch (const Error& e) {
    fail(errc::validation_error, std::string("invalid measure spec: ") + e.what());
  }
}

ordered group_json(const GroupSpec& g) {
  ordered out;
  switch (g.kind()) {
    case GroupKind::Integers:
      out["kind"] = "Z";
      break;
    case GroupKind::Cyclic:
      out["kind"] = "Z_mod";
      out["n"] = g.order();
      break;
    case GroupKind::RealLattice:
      out["kind"] = "R_lattice";
      out["step"] = g.step();
      break;
  }
  return out;
}

ordered measure_json(const Measure& mu) {
  ordered out;
  out["group"] = group_json(mu.group());
  ordered atoms = ordered::array();
  for (const auto& [x, w] : mu.atoms()) {
    ordered a;
    a["point"] = x;
    a["weight"] = w;
    atoms.push_back(std::move(a));
  }
  out["atoms"] = std::move(atoms);
  return out;
}

// ---------- report sections ----------

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

ordered zeros_json(const std::vector<ZeroPoint>& zeros) {
  ordered arr = ordered::array();
  for (const auto& z : zeros) {
    ordered o;
    o["location"] = z.location;
    o["order"] = z.order;
    o["leading_coefficient"] = z.leading_coefficient;
    arr.push_back(std::move(o));
  }
  return arr;
}

const char* failure_name(AdmissibilityFailure f) {
  switch (f) {
    case AdmissibilityFailure::HasZeros: return "has_zeros";
    case AdmissibilityFailure::NonzeroWinding: return "nonzero_winding";
    case AdmissibilityFailure::None: break;
  }
  return nullptr;
}

ordered admissibility_json(const Measure& mu, const SecondCharacteristic& sc,
                           const std::vector<ZeroPoint>& zeros, const DualConfig& dcfg) {
  ordered out;
  out["zeros"] = zeros_json(zeros);
  if (mu.group().kind() == GroupKind::Integers && zeros.empty())
    out["winding"] = sc.winding;
  out["admissible"] = sc.admissible;
  if (const char* f = failure_name(sc.failure))
    out["failure"] = f;
  else
    out["failure"] = nullptr;
  out["grid_used"] = static_cast<std::int64_t>(sc.grid.points.size());
  if (!sc.psi.empty()) out["max_exp_residual"] = sc.max_exp_residual;
  ordered tol;
  tol["zero_tol"] = dcfg.zero_tol;
  tol["order_tol"] = dcfg.order_tol;
  out["tolerances"] = std::move(tol);
  return out;
}

ordered verdict_json(const TGridPoint& p, const MembershipVerdict& v,
                     bool include_candidate) {
  ordered o;
  o["t"] = p.t;
  if (p.exact)
    o["exact"] = p.exact->str();
  else
    o["exact"] = nullptr;
  o["verdict"] = verdict_name(v.verdict);
  o["min_coefficient"] = v.min_coefficient;
  o["max_imag"] = v.max_imag;
  o["mass_defect"] = v.mass_defect;
  o["grid_used"] = static_cast<std::int64_t>(v.grid_used);
  if (include_candidate) {
    ordered atoms = ordered::array();
    for (const auto& [x, c] : v.candidate) {
      ordered a;
      a["point"] = x;
      a["weight"] = c;
      atoms.push_back(std::move(a));
    }
    o["candidate"] = std::move(atoms);
  }
  return o;
}

ordered summary_json(const StructureSummary& s) {
  ordered o;
  if (s.min_member)
    o["min_member"] = *s.min_member;
  else
    o["min_member"] = nullptr;
  o["all_member"] = s.all_member;
  if (s.tail_start)
    o["tail_start"] = *s.tail_start;
  else
    o["tail_start"] = nullptr;
  o["inconclusive_count"] = static_cast<std::int64_t>(s.inconclusive_count);
  ordered viol = ordered::array();
  for (const auto& [a, b] : s.semigroup_violations) {
    ordered pair = ordered::array();
    pair.push_back(a);
    pair.push_back(b);
    viol.push_back(std::move(pair));
  }
  o["semigroup_violations"] = std::move(viol);
  return o;
}

ordered lambda_json(const LambdaReport& rep, const FracConfig& cfg) {
  ordered o;
  ordered pts = ordered::array();
  for (std::size_t i = 0; i < rep.grid.size(); ++i)
    pts.push_back(verdict_json(rep.grid[i], rep.verdicts[i], false));
  o["points"] = std::move(pts);
  o["summary"] = summary_json(rep.summary);
  ordered tol;
  tol["neg_tol"] = cfg.neg_tol;
  tol["strict_tol"] = cfg.strict_tol;
  tol["mass_tol"] = cfg.mass_tol;
  o["tolerances"] = std::move(tol);
  return o;
}

ordered constraints_json(const ConstraintSet& c) {
  ordered o;
  o["winding"] = c.winding;
  o["obstructed"] = c.obstructed;
  if (c.obstructed) {
    o["denominator_divisors"] = c.divisor_union;
    o["exponent_lattice"] = c.intersection_lattice;
    o["lower_bound"] = *c.lower_bound;
    o["note"] = "every exponent m/l has l dividing " +
                std::to_string(c.intersection_lattice) + " and is at least 1/" +
                std::to_string(c.intersection_lattice);
  } else {
    o["note"] = "winding 0 places no constraint on the exponents";
  }
  return o;
}

ordered zero_bound_json(const Measure& mu) {
  ordered o;
  const double t0 = t0_lower_bound(mu);
  o["t0"] = t0;
  o["note"] = "Lambda_alg(mu) subset Q cap [" + fmt_g(t0) + ", inf)";
  return o;
}

std::size_t pow2_grid(std::size_t g) {
  return detail::next_power_of_two(std::max<std::size_t>(g, 16));
}

std::size_t even_grid(std::size_t g) {
  g = std::max<std::size_t>(g, 16);
  return g + (g % 2);
}

// ---------- commands ----------

ordered cmd_analyze(const Measure& mu, const Options& opt) {
  ordered rep;
  rep["command"] = "analyze";
  rep["measure"] = measure_json(mu);

  DualConfig dcfg;
  const std::size_t grid = mu.group().kind() == GroupKind::Integers
                               ? pow2_grid(opt.grid)
                               : even_grid(opt.grid);
  const auto zeros = find_zeros(mu, dcfg.zero_tol, dcfg.order_tol);
  const auto sc = second_characteristic(mu, grid, opt.window, dcfg);
  rep["admissibility"] = admissibility_json(mu, sc, zeros, dcfg);

  if (mu.group().kind() == GroupKind::Integers && zeros.empty() && sc.winding != 0)
    rep["constraints"] = constraints_json(winding_constraints(sc.winding));
  if (!zeros.empty() && mu.group().kind() != GroupKind::Cyclic)
    rep["zero_bound"] = zero_bound_json(mu);

  if (sc.admissible) {
    FracConfig fcfg;
    try {
      LambdaReport scan = lambda_scan(mu, opt.t_max, opt.n_max, opt.mesh, fcfg);
      ordered lam = lambda_json(scan, fcfg);
      ordered lopt;
      lopt["t_max"] = opt.t_max;
      lopt["n_max"] = opt.n_max;
      lopt["mesh"] = opt.mesh;
      lam["options"] = std::move(lopt);
      rep["lambda"] = std::move(lam);
    } catch (const Error& e) {
      if (e.code() != errc::unsupported_group) throw;
      ordered lam;
      lam["skipped"] = e.what();
      rep["lambda"] = std::move(lam);
    }
  }
  return rep;
}

ordered cmd_lambda_scan(const Measure& mu, const Options& opt) {
  ordered rep;
  rep["command"] = "lambda-scan";
  rep["measure"] = measure_json(mu);
  FracConfig fcfg;
  LambdaReport scan = lambda_scan(mu, opt.t_max, opt.n_max, opt.mesh, fcfg);
  ordered lam = lambda_json(scan, fcfg);
  ordered lopt;
  lopt["t_max"] = opt.t_max;
  lopt["n_max"] = opt.n_max;
  lopt["mesh"] = opt.mesh;
  lam["options"] = std::move(lopt);
  rep["lambda"] = std::move(lam);
  return rep;
}

ordered cmd_roots(const Measure& mu, const Options& opt) {
  const int n = opt.root_n.value_or(2);
  if (n < 1) fail(errc::invalid_argument, "--n must be a positive integer");
  ordered rep;
  rep["command"] = "roots";
  rep["measure"] = measure_json(mu);
  rep["n"] = n;

  if (mu.group().kind() == GroupKind::Cyclic) {
    const RootSet set = cyclic_nth_roots(mu, n);
    ordered roots = ordered::array();
    for (const auto& r : set.roots) roots.push_back(measure_json(r));
    rep["roots"] = std::move(roots);
    rep["count"] = static_cast<std::int64_t>(set.roots.size());
    rep["exhaustive"] = set.exhaustive;
    if (set.roots.empty()) {
      const auto values = cyclic_char_fn(mu);
      const bool even_negative = n % 2 == 0 && mu.group().order() == 2 &&
                                 values[1].real() < 0.0;
      rep["note"] = even_negative
                        ? "no roots: the character value 2*alpha-1 is negative and "
                          "has no real root of even index; roots exist only for odd n"
                        : "no roots: the exhaustive phase search found none";
    }
  } else {
    const Measure root = nth_root_admissible(mu, n);
    rep["root"] = measure_json(root);
    rep["reconstruction_tv"] = total_variation(convolve_power(root, n), mu);
  }
  return rep;
}

ordered cmd_winding(const Measure& mu, const Options&) {
  ordered rep;
  rep["command"] = "winding";
  rep["measure"] = measure_json(mu);
  const long long w = winding_number(mu);
  rep["winding"] = w;
  rep["constraints"] = constraints_json(winding_constraints(w));
  return rep;
}

ordered cmd_t0(const Measure& mu, const Options&) {
  ordered rep;
  rep["command"] = "t0";
  rep["measure"] = measure_json(mu);
  rep["zeros"] = zeros_json(find_zeros(mu));
  rep["zero_bound"] = zero_bound_json(mu);
  return rep;
}

ordered cmd_z2(const Options& opt) {
  if (!opt.alpha) fail(errc::invalid_argument, "z2 needs --alpha");
  if (!opt.z2_n) fail(errc::invalid_argument, "z2 needs --n");
  ordered rep;
  rep["command"] = "z2";
  rep["alpha"] = *opt.alpha;
  rep["n"] = *opt.z2_n;
  const auto beta = z2_nth_root(*opt.alpha, *opt.z2_n);
  if (beta) {
    rep["beta"] = *beta;
    ordered atoms = ordered::array();
    ordered a0;
    a0["point"] = 0;
    a0["weight"] = *beta;
    atoms.push_back(std::move(a0));
    ordered a1;
    a1["point"] = 1;
    a1["weight"] = 1.0 - *beta;
    atoms.push_back(std::move(a1));
    ordered root;
    root["group"] = group_json(GroupSpec::cyclic(2));
    root["atoms"] = std::move(atoms);
    rep["root"] = std::move(root);
  } else {
    rep["beta"] = nullptr;
    rep["note"] = "2*alpha-1 is negative and n is even: no real root";
  }
  return rep;
}

ordered cmd_delta1(const Options& opt) {
  if (!opt.modulus) fail(errc::invalid_argument, "delta1 needs --modulus");
  if (!opt.q) fail(errc::invalid_argument, "delta1 needs --q");
  const Rational q = Rational::parse(*opt.q);
  ordered rep;
  rep["command"] = "delta1";
  rep["modulus"] = *opt.modulus;
  rep["q"] = q.str();
  const Delta1Membership m = delta1_membership(*opt.modulus, q);
  rep["brute"] = m.brute;
  rep["congruence_rule"] = m.congruence_rule;
  if (m.witness)
    rep["witness"] = *m.witness;
  else
    rep["witness"] = nullptr;
  rep["discrepancy"] = m.brute != m.congruence_rule;
  if (m.brute != m.congruence_rule)
    rep["note"] = "the exhaustive enumeration and the congruence rule m = l (mod N) "
                  "disagree here; the enumeration is authoritative and the witness "
                  "point mass verifies it";
  return rep;
}

ordered options_json(const Options& opt) {
  ordered o;
  o["t_max"] = opt.t_max;
  o["n_max"] = opt.n_max;
  o["mesh"] = opt.mesh;
  o["grid"] = static_cast<std::int64_t>(opt.grid);
  if (opt.window)
    o["window"] = *opt.window;
  else
    o["window"] = nullptr;
  return o;
}

}  // namespace

Measure parse_spec(const std::string& text) {
  ordered j;
  try {
    j = ordered::parse(text);
  } catch (const std::exception& e) {
    fail(errc::parse_error, std::string("spec is not valid JSON: ") + e.what());
  }
  return parse_spec_json(j);
}

std::string emit_spec(const Measure& mu) {
  return dump_stable(measure_json(mu));
}

RunResult run(const std::string& command, const std::string& spec_text,
              const Options& options) {
  RunResult result;
  try {
    ordered rep;
    if (command == "z2") {
      rep = cmd_z2(options);
    } else if (command == "delta1") {
      rep = cmd_delta1(options);
    } else {
      const Measure mu = parse_spec(spec_text);
      if (command == "analyze")
        rep = cmd_analyze(mu, options);
      else if (command == "lambda-scan")
        rep = cmd_lambda_scan(mu, options);
      else if (command == "roots")
        rep = cmd_roots(mu, options);
      else if (command == "winding")
        rep = cmd_winding(mu, options);
      else if (command == "t0")
        rep = cmd_t0(mu, options);
      else
        fail(errc::invalid_argument, "unknown command \"" + command + "\"");
    }
    if (command != "z2" && command != "delta1") rep["options"] = options_json(options);
    result.exit_code = 0;
    result.output = render(rep, options.json);
  } catch (const Error& e) {
    ordered err;
    ordered body;
    body["code"] = errc_name(e.code());
    body["message"] = e.what();
    err["error"] = std::move(body);
    result.exit_code = is_usage_error(e.code()) ? 1 : 2;
    result.output = render(err, options.json);
  }
  return result;
}

}  // namespace divis
