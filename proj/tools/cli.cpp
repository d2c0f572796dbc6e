#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "tsk/chern_engine.hpp"
#include "tsk/errors.hpp"
#include "tsk/json_io.hpp"
#include "tsk/obstruct.hpp"
#include "tsk/prescribe.hpp"
#include "tsk/random_instances.hpp"
#include "tsk/reflexive_r2.hpp"

namespace tsk::cli {

namespace {

using nlohmann::json;

// Raised for conditions that map onto a specific exit code.
struct Exit {
  int code;
  std::string message;
};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

void emit(Io& io, const json& j) { io.out << j.dump(2) << "\n"; }

json from_text(const std::string& s) { return json::parse(s); }

json num(const BigInt& x) {
  if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

SheafDocument load(Io& io, const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << io.in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw Exit{kInvalid, "cannot open " + path};
    buf << f.rdbuf();
  }
  return parse_sheaf(buf.str());
}

void require_valid(const Multifiltration& m, const std::string& what) {
  auto v = validate(m);
  if (!v.empty()) throw Exit{kInvalid, what + " is not a family of multifiltrations: " + v.front().to_string()};
}

std::vector<Coord> parse_list(const std::string& s) {
  std::vector<Coord> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Exit{kInvalid, "bad integer \"" + item + "\" in list"};
    }
  }
  return out;
}

int cmd_chern(Io& io, const std::string& input, const std::string& method) {
  const SheafDocument doc = load(io, input);
  std::map<std::string, TruncIntPoly> methods;
  if (const R2Filtration* r = doc.reflexive()) {
    if (has_distinct_active_lines(*r)) {
      methods.emplace("resolution", chern_resolution(*r));
      methods.emplace("symmetric", chern_symmetric(*r));
    } else if (active_lines(*r).size() <= 2) {
      methods.emplace("split", chern_split(*r));
    }
    methods.emplace("klyachko", chern_general(to_multifiltration(*r)));
  } else {
    const Multifiltration m = doc.multifiltration();
    require_valid(m, "input");
    methods.emplace("klyachko", chern_general(m, Validation::Skip));
  }
  if (method != "auto") {
    auto it = methods.find(method);
    if (it == methods.end()) throw Exit{kInvalid, "method " + method + " does not apply to this input"};
    emit(io, {{"chern", render(it->second)}, {"method", method}});
    return kOk;
  }
  json all = json::object();
  for (const auto& [name, poly] : methods) all[name] = render(poly);
  const TruncIntPoly& first = methods.begin()->second;
  for (const auto& [name, poly] : methods) {
    if (!(poly == first)) {
      emit(io, {{"methods", all}, {"agree", false}});
      throw Exit{kDisagreement, "Chern polynomial methods disagree"};
    }
  }
  emit(io, {{"chern", render(first)}, {"methods", all}, {"agree", true}});
  return kOk;
}

int cmd_stability(Io& io, const std::string& input) {
  const SheafDocument doc = load(io, input);
  json j;
  TruncIntPoly chern = TruncIntPoly::one(doc.fan().n());
  std::optional<R2Filtration> rays;
  if (const R2Filtration* r = doc.reflexive()) {
    rays = *r;
    chern = chern_total(*r);
    j["source"] = "ray data";
  } else {
    const Multifiltration m = doc.multifiltration();
    if (m.rank() != 2) throw Exit{kInvalid, "stability is implemented for rank 2"};
    require_valid(m, "input");
    rays = hull_data(reflexive_hull(m));
    chern = chern_general(m, Validation::Skip);
    j["source"] = "reflexive hull";
  }
  const Stability s = stability(*rays);
  const BigInt delta = discriminant(chern);
  j["stability"] = to_string(s);
  Rational slope(chern[1], 2);
  slope.canonicalize();
  j["slope"] = tsk::to_string(slope);
  j["delta"] = num(delta);
  if (s != Stability::Unstable) j["bogomolov_gieseker"] = delta >= 0 ? "holds" : "violated";
  emit(io, j);
  return kOk;
}

json injection_json(const ElementaryInjection& inj) {
  json sub = json::array();
  if (auto l = inj.hyperplane.as_line()) sub = json::array({num(l->p), num(l->q)});
  return {{"k0", inj.k0},
          {"sigma0", inj.sigma0.rays()},
          {"m0", inj.m0},
          {"m_sigma", num(inj.m_big_sigma)},
          {"saturated", inj.saturated},
          {"dropped_to", inj.hyperplane.is_zero() ? json("zero") : json(inj.hyperplane.to_string())}};
}

int cmd_factorize(Io& io, const std::string& e_path, const std::string& f_path) {
  const Multifiltration e = load(io, e_path).multifiltration();
  const Multifiltration f = load(io, f_path).multifiltration();
  require_valid(e, "E");
  require_valid(f, "F");
  if (!(e.fan() == f.fan()) || e.rank() != f.rank()) throw Exit{kInvalid, "E and F have different shapes"};
  if (!included(e, f)) throw Exit{kInvalid, "E is not contained in F"};
  const auto chain = factorize(e, f);
  json steps = json::array();
  json profile = json::object();
  for (const auto& inj : chain) {
    steps.push_back(injection_json(inj));
    auto& slot = profile[std::to_string(inj.k0)];
    slot = slot.is_null() ? 1 : slot.get<int>() + 1;
  }
  const bool ok = recompose(f, chain) == e;
  emit(io, {{"steps", steps}, {"count", chain.size()}, {"profile", profile}, {"recomposition", ok ? "ok" : "mismatch"}});
  if (!ok) throw Exit{kRecomposition, "recomposing the injections does not reproduce E"};
  return kOk;
}

BuildOptions build_options(const PrescriptionSolution& sol, std::optional<long> sequential) {
  BuildOptions opt;
  if (sequential) {
    opt.sequential_per_block = *sequential;
  } else if (sol.total_injections() > 5000) {
    opt.sequential_per_block = 8;
  }
  return opt;
}

json certified(PrescriptionSolution& sol, std::optional<long> sequential) {
  const Certificate cert = certify(sol, build_options(sol, sequential));
  json j = from_text(to_json(cert, sol));
  j["feasible"] = true;
  return j;
}

int cmd_prescribe(Io& io, int n, const std::string& start, bool closed_form, std::optional<long> sequential) {
  const PrescriptionProblem problem{n, parse_list(start)};
  problem.check();
  SolveResult res = solve_p(problem);
  if (auto* bad = std::get_if<Infeasible>(&res)) {
    emit(io, from_text(to_json(*bad, problem)));
    throw Exit{kInfeasible, bad->to_string()};
  }
  auto& sol = std::get<PrescriptionSolution>(res);
  json j = certified(sol, sequential);
  if (closed_form) {
    if (n != 4 && n != 5) throw Exit{kInvalid, "closed forms exist for n = 4 and n = 5"};
    if (n == 5 && problem.start_c[0] != 1) throw Exit{kInvalid, "the n = 5 closed form needs c_rho0 = 1"};
    const TruncIntPoly c = chern_total(problem.start());
    const auto closed = n == 4 ? solve_p_closed_p4(c, problem.start_c[0]) : solve_p_closed_p5(c);
    json cj = json::array();
    bool agree = true;
    for (std::size_t i = 0; i < closed.size(); ++i) {
      cj.push_back(tsk::to_string(closed[i]));
      agree = agree && closed[i] == Rational(sol.p[i]);
    }
    j["closed_form"] = cj;
    j["closed_form_agrees"] = agree;
    if (n == 4) j["positivity"] = positivity_check_p4(c, problem.start_c[0]);
    if (!agree) {
      emit(io, j);
      throw Exit{kDisagreement, "closed form and solver disagree"};
    }
  }
  emit(io, j);
  return kOk;
}

int cmd_family(Io& io, const std::string& which, int t, std::optional<int> t_to, std::optional<int> n,
               std::optional<long> bound, std::optional<long> sequential) {
  json j = {{"family", which}};
  if (which == "p4-odd" || which == "p4-even") {
    json certs = json::array();
    for (int tt = t; tt <= t_to.value_or(t); ++tt) {
      const Coord x = which == "p4-odd" ? 6 * tt : 4 * tt + 3;
      PrescriptionProblem problem{4, which == "p4-odd" ? Coords{1, x, x, 0, 0} : Coords{1, x, x, x, 0}};
      SolveResult res = solve_p(problem);
      if (auto* bad = std::get_if<Infeasible>(&res)) throw Exit{kInfeasible, bad->to_string()};
      json c = certified(std::get<PrescriptionSolution>(res), sequential);
      c["t"] = tt;
      certs.push_back(std::move(c));
    }
    j["certificates"] = std::move(certs);
  } else if (which == "p5") {
    BuildOptions opt;
    opt.sequential_per_block = sequential.value_or(8);
    const P5Report rep = family_p5(t, opt);
    auto describe = [](const SolveResult& r, const PrescriptionProblem& p) {
      if (const auto* s = std::get_if<PrescriptionSolution>(&r)) {
        json c = from_text(to_json(*s->certificate, *s));
        c["feasible"] = true;
        return c;
      }
      return from_text(to_json(std::get<Infeasible>(r), p));
    };
    j["t"] = t;
    j["recipe"] = describe(rep.recipe_result, rep.recipe);
    j["alternative"] = describe(rep.alternative_result, rep.alternative);
    const PrescriptionSolution* chosen = rep.reported();
    if (chosen == nullptr) {
      emit(io, j);
      throw Exit{kInfeasible, "neither P5 candidate validates"};
    }
    j["reported"] = chosen == std::get_if<PrescriptionSolution>(&rep.recipe_result) ? "recipe" : "alternative";
  } else if (which == "pn") {
    if (!n) throw Exit{kInvalid, "--n is required for the pn family"};
    BuildOptions opt;
    opt.sequential_per_block = sequential.value_or(8);
    PnResult r = family_pn(*n, opt, bound ? std::optional<BigInt>(BigInt(*bound)) : std::nullopt);
    j["n"] = *n;
    j["multiplier"] = num(r.multiplier);
    j["probes"] = r.probes;
    json c = from_text(to_json(*r.solution.certificate, r.solution));
    c["feasible"] = true;
    j["certificate"] = std::move(c);
  } else {
    throw Exit{kInvalid, "unknown family " + which};
  }
  emit(io, j);
  return kOk;
}

int cmd_obstruct(Io& io, const std::string& input) {
  const Multifiltration m = load(io, input).multifiltration();
  if (m.rank() != 2) throw Exit{kInvalid, "the obstruction check needs rank 2"};
  require_valid(m, "input");
  emit(io, from_text(to_json(obstruction_verdict(m))));
  return kOk;
}

int cmd_validate(Io& io, const std::string& input) {
  const SheafDocument doc = load(io, input);
  if (doc.reflexive() != nullptr) {
    emit(io, {{"valid", true}, {"kind", "reflexive"}});
    return kOk;
  }
  const auto violations = validate(doc.multifiltration());
  json list = json::array();
  for (const auto& v : violations) list.push_back(v.to_string());
  emit(io, {{"valid", violations.empty()}, {"kind", "multifiltration"}, {"violations", list}});
  return violations.empty() ? kOk : kInvalid;
}

int cmd_selftest(Io& io, std::uint64_t seed, int count) {
  Rng rng(seed);
  long failures = 0;
  for (int i = 0; i < count; ++i) {
    const int n = 3 + i % 3;
    const R2Filtration r = random_reflexive(rng, n, 6, LineMode::Distinct, 3);
    const TruncIntPoly k = chern_general(to_multifiltration(r));
    if (!(chern_resolution(r) == k) || !(chern_symmetric(r) == k)) ++failures;
    const Multifiltration f = to_multifiltration(random_reflexive(rng, n, 4, LineMode::Pooled, 2));
    std::vector<int> dims;
    for (int d = 1; d <= n; ++d) dims.push_back(d);
    const DropSequence seq = random_drops(rng, f, 1 + i % 6, dims);
    if (!(recompose(f, factorize(seq.result, f)) == seq.result)) ++failures;
  }
  emit(io, {{"seed", seed}, {"instances", count}, {"failures", failures}});
  if (failures != 0) throw Exit{kDisagreement, "self test found disagreements"};
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Io io{in, out, err};
  CLI::App app{"Chern classes and prescriptions for equivariant rank-2 sheaves on projective space"};
  app.name("tsk");
  app.require_subcommand(1);

  std::string input = "-", method = "auto", e_path, f_path, start, which;
  int n = 0, t = 1, count = 50;
  std::optional<int> t_to, family_n;
  std::optional<long> bound, sequential;
  bool closed_form = false;
  std::uint64_t seed = 1;

  auto* chern = app.add_subcommand("chern", "Total Chern class of a sheaf document");
  chern->add_option("input", input, "JSON file, - for stdin");
  chern->add_option("--method", method, "auto, resolution, klyachko, symmetric or split")
      ->check(CLI::IsMember({"auto", "resolution", "klyachko", "symmetric", "split"}));

  auto* stab = app.add_subcommand("stability", "Slope stability, discriminant and the Bogomolov-Gieseker check");
  stab->add_option("input", input, "JSON file, - for stdin");

  auto* fact = app.add_subcommand("factorize", "Factor E into F as elementary injections");
  fact->add_option("E", e_path, "subsheaf document")->required();
  fact->add_option("F", f_path, "ambient document")->required();

  auto* pres = app.add_subcommand("prescribe", "Solve for the injection counts and certify the result");
  pres->add_option("--n", n, "dimension of the projective space")->required();
  pres->add_option("--start", start, "comma separated c_rho, ray 0 first")->required();
  pres->add_flag("--closed-form", closed_form, "also evaluate the closed forms for n = 4, 5");
  pres->add_option("--sequential", sequential, "injections per block checked one at a time");

  auto* fam = app.add_subcommand("family", "Reproduce a named family");
  fam->add_option("--which", which, "p4-odd, p4-even, p5 or pn")
      ->required()
      ->check(CLI::IsMember({"p4-odd", "p4-even", "p5", "pn"}));
  fam->add_option("--t", t, "family parameter")->check(CLI::PositiveNumber);
  fam->add_option("--t-to", t_to, "last parameter of a range starting at --t")->check(CLI::PositiveNumber);
  fam->add_option("--n", family_n, "dimension for the pn family");
  fam->add_option("--bound", bound, "largest multiplier probed by the pn search");
  fam->add_option("--sequential", sequential, "injections per block checked one at a time");

  auto* obs = app.add_subcommand("obstruct", "Smoothability obstruction verdict");
  obs->add_option("input", input, "JSON file, - for stdin");

  auto* val = app.add_subcommand("validate", "Check the multifiltration axioms");
  val->add_option("input", input, "JSON file, - for stdin");

  auto* self = app.add_subcommand("selftest", "Randomized cross-checks");
  self->group("");
  self->add_option("--seed", seed, "random seed");
  self->add_option("--count", count, "instances")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalid;
  }

  try {
    if (chern->parsed()) return cmd_chern(io, input, method);
    if (stab->parsed()) return cmd_stability(io, input);
    if (fact->parsed()) return cmd_factorize(io, e_path, f_path);
    if (pres->parsed()) return cmd_prescribe(io, n, start, closed_form, sequential);
    if (fam->parsed()) return cmd_family(io, which, t, t_to, family_n, bound, sequential);
    if (obs->parsed()) return cmd_obstruct(io, input);
    if (val->parsed()) return cmd_validate(io, input);
    if (self->parsed()) return cmd_selftest(io, seed, count);
  } catch (const Exit& e) {
    err << "tsk: " << e.message << "\n";
    return e.code;
  } catch (const InternalConsistencyError& e) {
    err << "tsk: internal cross-check failed: " << e.what() << "\n";
    return kDisagreement;
  } catch (const SearchExhaustedError& e) {
    err << "tsk: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "tsk: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace tsk::cli
