#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <ostream>
#include <sstream>

#include "ricfib/exact.hpp"
#include "ricfib/fibfunc.hpp"
#include "ricfib/golden_limits.hpp"
#include "ricfib/horadam.hpp"
#include "ricfib/riccati.hpp"

namespace ricfib::cli {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& x) { return x.str(); }

Json to_json(const Surd& x) {
  Json out;
  out["a"] = x.a().str();
  out["b"] = x.b().str();
  if (x.radicand().fits_slong_p()) {
    out["d"] = x.radicand().get_si();
  } else {
    out["d"] = x.radicand().get_str();
  }
  return out;
}

Json to_json(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

class Emitter {
 public:
  Emitter(std::ostream& out, bool csv) : out_(out), csv_(csv) {}

  void emit(const std::string& command, Json params, Json result) {
    Json record;
    record["command"] = command;
    record["params"] = std::move(params);
    record["result"] = std::move(result);
    if (!csv_) {
      out_ << record.dump() << '\n';
      return;
    }
    if (!header_written_) {
      out_ << "command,field,value\n";
      header_written_ = true;
    }
    const Json flat = Json({{"params", record["params"]}, {"result", record["result"]}}).flatten();
    for (const auto& [field, value] : flat.items()) {
      const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
      out_ << csv_field(command) << ',' << csv_field(field) << ',' << csv_field(text) << '\n';
    }
  }

 private:
  std::ostream& out_;
  bool csv_;
  bool header_written_ = false;
};

Surd parse_surd(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string piece; std::getline(ss, piece, ',');) parts.push_back(piece);
  if (parts.size() != 3) throw ParseError("surd must be given as a,b,d");
  const Rational d = Rational::parse(parts[2]);
  if (!d.is_integer() || d.sign() <= 0) throw ParseError("surd radicand must be a positive integer");
  return Surd(Rational::parse(parts[0]), Rational::parse(parts[1]), d.numerator());
}

struct Options {
  std::string format = "json";
  int digits = 12;

  // horadam
  std::string w0 = "0", w1 = "1", p = "1", q = "-1";
  long n = 10;
  long count = 1;
  bool fast = false;
  long symmetry = 0;

  // riccati
  std::string rp = "1", rq = "1", branch = "plus", x0 = "0", surd, t0 = "0", t1 = "1";
  long rn = 10;
  long depth = 10;

  // limits
  std::string f0 = "1", fk = "1", eps = "1/1000000", r = "1", s = "1", parity = "standard",
              direction = "forward", lw0 = "0", lw1 = "1", g0 = "0";
  long ln = 40;
  long m = 10;
  long nmax = 10;

  // fibfunc
  std::string seed_file;
  long fnmin = 0, fnmax = 10;
  std::string feps = "1/1000000000";
  long offset = -1;
  long horizon = 5000;
};

class Runner {
 public:
  Runner(const Options& opt, Emitter& emit) : opt_(opt), emit_(emit) {}

  int horadam() {
    const RecurrenceParams params(Rational::parse(opt_.w0), Rational::parse(opt_.w1), Rational::parse(opt_.p),
                                  Rational::parse(opt_.q));
    const Json params_json = {{"w0", params.w0().str()}, {"w1", params.w1().str()}, {"p", params.p().str()},
                              {"q", params.q().str()}, {"method", opt_.fast ? "fast" : "iterate"}};
    if (opt_.count < 1) throw ParseError("--count must be positive");
    for (long i = 0; i < opt_.count; ++i) {
      const long idx = opt_.n + i;
      const Rational value = opt_.fast ? fast_term(params, idx) : horadam_term(params, idx);
      emit_.emit("horadam", params_json, {{"n", idx}, {"value", value.str()}});
    }
    if (opt_.symmetry > 0) {
      const SymmetryReport rep = negative_symmetry_check(params, opt_.symmetry);
      emit_.emit("horadam symmetry", params_json,
                 {{"n_max", rep.n_max}, {"holds", rep.holds()}, {"failing", rep.failing}});
    }
    return kExitOk;
  }

  RiccatiParams riccati_params() const {
    return {Rational::parse(opt_.rp), Rational::parse(opt_.rq), parse_branch(opt_.branch)};
  }

  Json riccati_json(const RiccatiParams& params) const {
    return {{"p", params.p().str()}, {"q", params.q().str()}, {"branch", to_string(params.branch())}};
  }

  int riccati_solve() {
    const RiccatiParams params = riccati_params();
    const Rational x0 = Rational::parse(opt_.x0);
    Json pj = riccati_json(params);
    pj["x0"] = x0.str();
    pj["n"] = opt_.rn;
    const OrbitReport orbit = iterate_orbit(params, x0, opt_.rn);
    for (long k = 0; k < static_cast<long>(orbit.trajectory.size()); ++k) {
      const Rational closed = closed_form_term(params, x0, k);
      const Rational& iterated = orbit.trajectory[static_cast<std::size_t>(k)];
      emit_.emit("riccati solve", pj,
                 {{"n", k}, {"iterated", iterated.str()}, {"closed_form", closed.str()}, {"match", closed == iterated}});
    }
    if (orbit.pole_step) {
      throw DomainError("pole at step " + std::to_string(*orbit.pole_step) + ": initial value is forbidden");
    }
    return kExitOk;
  }

  int riccati_orbit() {
    const RiccatiParams params = riccati_params();
    const Rational x0 = Rational::parse(opt_.x0);
    Json pj = riccati_json(params);
    pj["x0"] = x0.str();
    pj["n"] = opt_.rn;
    const OrbitReport orbit = iterate_orbit(params, x0, opt_.rn);
    Json status = orbit.completed() ? Json("completed") : Json("pole_at_step(" + std::to_string(*orbit.pole_step) + ")");
    emit_.emit("riccati orbit", pj,
               {{"trajectory", to_json(orbit.trajectory)},
                {"status", status},
                {"classification", orbit.classification.str()}});
    if (!orbit.completed()) {
      err_note_ = "pole at step " + std::to_string(*orbit.pole_step);
      return kExitDomain;
    }
    return kExitOk;
  }

  int riccati_forbidden() {
    const RiccatiParams params = riccati_params();
    Json pj = riccati_json(params);
    pj["depth"] = opt_.depth;
    const ForbiddenSet set = forbidden_set(params, opt_.depth);
    emit_.emit("riccati forbidden", pj, {{"elements", to_json(set.elements)}, {"truncated", set.truncated}});
    if (set.truncated) {
      err_note_ = "forbidden set stops at a zero element (no finite preimage)";
      return kExitDomain;
    }
    return kExitOk;
  }

  int riccati_classify() {
    const RiccatiParams params = riccati_params();
    const Surd x0 = opt_.surd.empty() ? Surd(Rational::parse(opt_.x0)) : parse_surd(opt_.surd);
    Json pj = riccati_json(params);
    pj["x0"] = to_json(x0);
    pj["depth"] = opt_.depth;
    const Classification cls = classify_initial(params, x0, opt_.depth);
    emit_.emit("riccati classify", pj, {{"classification", cls.str()}});
    return kExitOk;
  }

  int riccati_subst() {
    const RiccatiParams params = riccati_params();
    const Rational t0 = Rational::parse(opt_.t0), t1 = Rational::parse(opt_.t1);
    Json pj = riccati_json(params);
    pj["t0"] = t0.str();
    pj["t1"] = t1.str();
    pj["n"] = opt_.rn;
    const SubstitutionReport rep = substitution_check(params, t0, t1, opt_.rn);
    Json steps = Json::array();
    for (const auto& step : rep.steps) {
      steps.push_back({{"n", step.n},
                       {"x", step.x.str()},
                       {"matches_orbit", step.matches_orbit},
                       {"matches_closed_form", step.matches_closed_form}});
    }
    Json result = {{"t", to_json(rep.t_values)}, {"steps", steps}, {"all_pass", rep.all_pass()}};
    if (rep.pole_step) result["pole_step"] = *rep.pole_step;
    emit_.emit("riccati subst-check", pj, result);
    if (rep.pole_step) {
      err_note_ = "t vanishes at index " + std::to_string(*rep.pole_step + 1) + " (pole)";
      return kExitDomain;
    }
    return kExitOk;
  }

  int limits_certificate() {
    const Rational f0 = Rational::parse(opt_.f0), fk = Rational::parse(opt_.fk), eps = Rational::parse(opt_.eps);
    const ConvergenceCertificate cert = certificate(f0, fk, eps);
    Json result = {{"M", cert.M.str()}, {"c", cert.c.str()}, {"N", cert.N},
                   {"omega_N", to_decimal_sci(cert.omega(cert.N))}};
    if (cert.N > 2) result["omega_N_minus_1"] = to_decimal_sci(cert.omega(cert.N - 1));
    emit_.emit("limits certificate", {{"f0", f0.str()}, {"fk", fk.str()}, {"eps", eps.str()}}, result);
    return kExitOk;
  }

  int limits_rho() {
    const Rational r = Rational::parse(opt_.r), s = Rational::parse(opt_.s);
    const Surd value = rho(r, s);
    Json result = to_json(value);
    result["decimal"] = to_decimal(value, opt_.digits);
    emit_.emit("limits rho", {{"r", r.str()}, {"s", s.str()}, {"digits", opt_.digits}}, result);
    return kExitOk;
  }

  int limits_cf() {
    const Rational value = cf_convergent(opt_.m);
    emit_.emit("limits cf", {{"m", opt_.m}, {"digits", opt_.digits}},
               {{"convergent", value.str()}, {"decimal", to_decimal(value, opt_.digits)}});
    return kExitOk;
  }

  int limits_estimate() {
    const RatioParams params(Rational::parse(opt_.r), Rational::parse(opt_.s), parse_parity(opt_.parity));
    const Direction dir = parse_direction(opt_.direction);
    const Rational w0 = Rational::parse(opt_.lw0), w1 = Rational::parse(opt_.lw1);
    const LimitEstimate est = limit_estimate(params, w0, w1, dir, opt_.ln);
    Json pj = {{"r", params.r().str()}, {"s", params.s().str()},     {"parity", to_string(params.parity())},
               {"direction", to_string(dir)}, {"w0", w0.str()}, {"w1", w1.str()},
               {"n", opt_.ln},          {"digits", opt_.digits}};
    Json predicted = to_json(est.predicted);
    predicted["decimal"] = to_decimal(est.predicted, opt_.digits);
    Json claimed = to_json(est.claimed);
    claimed["decimal"] = to_decimal(est.claimed, opt_.digits);
    emit_.emit("limits estimate", pj,
               {{"ratio", est.ratio.str()},
                {"estimate", to_decimal(est.ratio, opt_.digits)},
                {"predicted", predicted},
                {"claimed", claimed},
                {"distance_to_predicted", to_decimal_sci((Surd(est.ratio) - est.predicted).abs())},
                {"agrees_with_claim", est.agrees()}});
    return kExitOk;
  }

  int limits_orbit() {
    const RatioParams params(Rational::parse(opt_.r), Rational::parse(opt_.s), parse_parity(opt_.parity));
    const Rational g0 = Rational::parse(opt_.g0);
    const RatioOrbit orbit = ratio_orbit(params, g0, opt_.ln);
    Json pj = {{"r", params.r().str()}, {"s", params.s().str()}, {"parity", to_string(params.parity())},
               {"g0", g0.str()}, {"n", opt_.ln}};
    Json result = {{"values", to_json(orbit.values)}};
    if (params.parity() == Parity::standard && params.r() == 1 && params.s() == 1) {
      const auto checks = difference_identity_check(orbit.values);
      result["difference_identity"] = std::all_of(checks.begin(), checks.end(), [](bool b) { return b; });
    }
    if (orbit.pole_step) result["pole_step"] = *orbit.pole_step;
    emit_.emit("limits orbit", pj, result);
    if (orbit.pole_step) {
      err_note_ = "pole at step " + std::to_string(*orbit.pole_step);
      return kExitDomain;
    }
    return kExitOk;
  }

  int limits_nesting() {
    const NestingReport rep = nesting_check(opt_.nmax);
    Json checks = Json::array();
    for (const auto& e : rep.checks) {
      checks.push_back({{"n", e.n},
                        {"g", e.g.str()},
                        {"equals_convergent", e.equals_convergent},
                        {"brackets_limit", e.brackets_limit}});
    }
    emit_.emit("limits nesting", {{"nmax", opt_.nmax}},
               {{"g", to_json(rep.g_values)}, {"checks", checks}, {"all_pass", rep.all_pass()}});
    return kExitOk;
  }

  int fibfunc_extend() {
    const PeriodicSeed seed = load_seed();
    for (const auto& trace : extend(seed, opt_.fnmin, opt_.fnmax)) emit_.emit("fibfunc extend", seed_json(seed), trace_json(trace));
    return kExitOk;
  }

  int fibfunc_trace() {
    const PeriodicSeed seed = load_seed();
    std::vector<std::size_t> indices;
    if (opt_.offset >= 0) {
      indices.push_back(static_cast<std::size_t>(opt_.offset));
    } else {
      for (std::size_t i = 0; i < seed.size(); ++i) indices.push_back(i);
    }
    for (std::size_t i : indices) {
      emit_.emit("fibfunc trace", seed_json(seed), trace_json(ratio_trace(seed, i, opt_.fnmin, opt_.fnmax)));
    }
    return kExitOk;
  }

  int fibfunc_verify() {
    const PeriodicSeed seed = load_seed();
    const Rational eps = Rational::parse(opt_.feps);
    Json pj = seed_json(seed);
    pj["eps"] = eps.str();
    pj["horizon"] = opt_.horizon;
    int code = kExitOk;
    for (const auto& v : verify_conjecture(seed, eps, opt_.horizon)) {
      Json target = to_json(v.target);
      target["decimal"] = to_decimal(v.target, opt_.digits);
      Json result = {{"offset", v.offset.str()},
                     {"target", target},
                     {"converged", v.converged},
                     {"step", v.step},
                     {"ratio_decimal", to_decimal(v.ratio, opt_.digits)},
                     {"distance", to_decimal_sci(v.distance)}};
      if (v.certified_N) result["certified_N"] = *v.certified_N;
      emit_.emit("fibfunc verify", pj, result);
    }
    return code;
  }

  const std::string& note() const { return err_note_; }

 private:
  PeriodicSeed load_seed() const {
    if (opt_.seed_file.empty()) throw ParseError("--seed-file is required");
    return PeriodicSeed::parse_file(opt_.seed_file);
  }

  static Json seed_json(const PeriodicSeed& seed) {
    return {{"k", seed.k().str()},
            {"kind", to_string(seed.kind().parity())},
            {"r", seed.kind().r().str()},
            {"s", seed.kind().s().str()}};
  }

  static Json trace_json(const LatticeTrace& trace) {
    Json ratios = Json::array();
    for (const auto& r : trace.ratios) ratios.push_back(r ? Json(r->str()) : Json(nullptr));
    return {{"offset", trace.offset.str()},
            {"n_min", trace.n_min},
            {"n_max", trace.n_max()},
            {"values", to_json(trace.values)},
            {"ratios", ratios}};
  }

  // Small positive quantities print in scientific notation with `digits`
  // significant figures.
  std::string to_decimal_sci(const Surd& x) const {
    if (x.sign() == Sign::zero) return "0";
    const Surd mag = x.abs();
    long exponent = 0;
    Surd scaled = mag;
    while (scaled < Surd(1)) {
      scaled *= Surd(10);
      --exponent;
    }
    while (scaled >= Surd(10)) {
      scaled /= Surd(10);
      ++exponent;
    }
    std::string mantissa = to_decimal(scaled, std::max(opt_.digits - 1, 0));
    if (mantissa.rfind("10", 0) == 0) {  // rounding carried into a new digit
      scaled /= Surd(10);
      ++exponent;
      mantissa = to_decimal(scaled, std::max(opt_.digits - 1, 0));
    }
    return std::string(x.sign() == Sign::negative ? "-" : "") + mantissa + "e" + std::to_string(exponent);
  }

  const Options& opt_;
  Emitter& emit_;
  std::string err_note_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact Riccati-map, Horadam-sequence and golden-ratio limit toolkit", "ricfib"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--digits", opt.digits, "Decimal digits in output")->check(CLI::Range(0, 1000));

  auto* horadam = app.add_subcommand("horadam", "Terms of w_{n+2} = p w_{n+1} - q w_n");
  horadam->add_option("--w0", opt.w0);
  horadam->add_option("--w1", opt.w1);
  horadam->add_option("--p", opt.p);
  horadam->add_option("--q", opt.q);
  horadam->add_option("--n", opt.n, "Index (may be negative)");
  horadam->add_option("--count", opt.count, "Number of consecutive terms from --n");
  horadam->add_flag("--fast", opt.fast, "Companion-matrix powering");
  horadam->add_option("--symmetry", opt.symmetry, "Check w_{-n} = (-1)^{n+1} w_n for n <= value");

  auto* riccati = app.add_subcommand("riccati", "The map x -> q / (+-p + x)");
  riccati->require_subcommand(1);
  auto add_map = [&](CLI::App* sub) {
    sub->add_option("--p", opt.rp);
    sub->add_option("--q", opt.rq);
    sub->add_option("--branch", opt.branch)->check(CLI::IsMember({"plus", "minus"}));
  };
  auto* solve = riccati->add_subcommand("solve", "Closed form against the iterated orbit");
  auto* orbit = riccati->add_subcommand("orbit", "Iterated orbit with status");
  for (auto* sub : {solve, orbit}) {
    add_map(sub);
    sub->add_option("--x0", opt.x0);
    sub->add_option("--n", opt.rn);
  }
  auto* forbidden = riccati->add_subcommand("forbidden", "Backward orbit of the pole");
  add_map(forbidden);
  forbidden->add_option("--depth", opt.depth);
  auto* classify = riccati->add_subcommand("classify", "Fixed point / forbidden / regular");
  add_map(classify);
  classify->add_option("--x0", opt.x0);
  classify->add_option("--surd", opt.surd, "Initial value a + b sqrt(d) as a,b,d");
  classify->add_option("--depth", opt.depth);
  auto* subst = riccati->add_subcommand("subst-check", "Linearisation x_n = t_n / t_{n+1}");
  add_map(subst);
  subst->add_option("--t0", opt.t0);
  subst->add_option("--t1", opt.t1);
  subst->add_option("--n", opt.rn);

  auto* limits = app.add_subcommand("limits", "Ratio limits, certificates and convergents");
  limits->require_subcommand(1);
  auto* cert = limits->add_subcommand("certificate", "Cauchy certificate (M, c, N)");
  cert->add_option("--f0", opt.f0, "f(xi)");
  cert->add_option("--fk", opt.fk, "f(xi + k)");
  cert->add_option("--eps", opt.eps);
  auto* rho_cmd = limits->add_subcommand("rho", "Positive root of x^2 - r x - s");
  auto* estimate = limits->add_subcommand("estimate", "Ratio after n recurrence steps");
  auto* lorbit = limits->add_subcommand("orbit", "Orbit of h -> 1 / (+-r + s h)");
  for (auto* sub : {rho_cmd, estimate, lorbit}) {
    sub->add_option("--r", opt.r);
    sub->add_option("--s", opt.s);
  }
  for (auto* sub : {estimate, lorbit}) {
    sub->add_option("--parity", opt.parity)->check(CLI::IsMember({"standard", "odd"}));
    sub->add_option("--n", opt.ln);
  }
  estimate->add_option("--direction", opt.direction)->check(CLI::IsMember({"forward", "backward"}));
  estimate->add_option("--w0", opt.lw0);
  estimate->add_option("--w1", opt.lw1);
  lorbit->add_option("--g0", opt.g0);
  auto* cf = limits->add_subcommand("cf", "Convergent of [0; 1, 1, ...]");
  cf->add_option("--m", opt.m);
  auto* nesting = limits->add_subcommand("nesting", "Canonical orbit against F_n / F_{n+1}");
  nesting->add_option("--nmax", opt.nmax);

  auto* fibfunc = app.add_subcommand("fibfunc", "Functions with period k from seed files");
  fibfunc->require_subcommand(1);
  auto* fextend = fibfunc->add_subcommand("extend", "Values on every lattice");
  auto* ftrace = fibfunc->add_subcommand("trace", "Ratios f(xi+nk)/f(xi+(n+1)k)");
  auto* fverify = fibfunc->add_subcommand("verify", "Convergence of f(x+k)/f(x)");
  for (auto* sub : {fextend, ftrace, fverify}) {
    sub->add_option("--seed-file", opt.seed_file)->required();
    sub->add_option("--nmin", opt.fnmin);
    sub->add_option("--nmax", opt.fnmax);
    sub->add_option("--eps", opt.feps);
  }
  ftrace->add_option("--offset", opt.offset, "Offset index (default: all)");
  fverify->add_option("--horizon", opt.horizon);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  Emitter emitter(out, opt.format == "csv");
  Runner runner(opt, emitter);
  try {
    int code = kExitOk;
    if (*horadam) {
      code = runner.horadam();
    } else if (*solve) {
      code = runner.riccati_solve();
    } else if (*orbit) {
      code = runner.riccati_orbit();
    } else if (*forbidden) {
      code = runner.riccati_forbidden();
    } else if (*classify) {
      code = runner.riccati_classify();
    } else if (*subst) {
      code = runner.riccati_subst();
    } else if (*cert) {
      code = runner.limits_certificate();
    } else if (*rho_cmd) {
      code = runner.limits_rho();
    } else if (*cf) {
      code = runner.limits_cf();
    } else if (*estimate) {
      code = runner.limits_estimate();
    } else if (*lorbit) {
      code = runner.limits_orbit();
    } else if (*nesting) {
      code = runner.limits_nesting();
    } else if (*fextend) {
      code = runner.fibfunc_extend();
    } else if (*ftrace) {
      code = runner.fibfunc_trace();
    } else if (*fverify) {
      code = runner.fibfunc_verify();
    }
    if (code == kExitDomain && !runner.note().empty()) err << "domain: " << runner.note() << '\n';
    return code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace ricfib::cli
