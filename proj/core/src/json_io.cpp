#include "tsk/json_io.hpp"

#include <json.hpp>

#include "tsk/errors.hpp"

namespace tsk {

namespace {

using nlohmann::json;

json num(const BigInt& x) {
  if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

json num(const Rational& x) {
  if (x.get_den() == 1) return num(BigInt(x.get_num()));
  return json(to_string(x));
}

BigInt read_big(const json& j, const char* what) {
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    BigInt x;
    if (x.set_str(j.get<std::string>(), 10) == 0) return x;
  }
  throw ParseError(std::string("expected an integer for ") + what);
}

Coord read_coord(const json& j, const char* what) {
  const BigInt x = read_big(j, what);
  if (!x.fits_slong_p()) throw ParseError(std::string(what) + " does not fit a lattice coordinate");
  return static_cast<Coord>(x.get_si());
}

Rational read_rational(const json& j) {
  if (j.is_number_integer()) return Rational(read_big(j, "coefficient"));
  if (!j.is_string()) throw ParseError("expected a rational string");
  Rational q;
  if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0) throw ParseError("bad rational " + j.dump());
  q.canonicalize();
  return q;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Line2 read_line(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("a line is a pair [p, q]");
  const BigInt p = read_big(j[0], "line"), q = read_big(j[1], "line");
  if (p == 0 && q == 0) throw ParseError("a line needs a nonzero vector");
  return Line2::make(p, q);
}

json write_line(const Line2& l) { return json::array({num(l.p), num(l.q)}); }

json write_subspace(const Subspace& s) {
  if (s.is_zero()) return {{"kind", "zero"}};
  if (s.is_full()) return {{"kind", "full"}};
  if (auto l = s.as_line()) return {{"kind", "line"}, {"line", write_line(*l)}};
  json rows = json::array();
  for (const auto& row : s.basis()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(num(x));
    rows.push_back(std::move(r));
  }
  return {{"kind", "basis"}, {"rows", std::move(rows)}};
}

Subspace read_subspace(const json& j, int rank) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "zero") return Subspace::zero(rank);
  if (kind == "full") return Subspace::full(rank);
  if (kind == "line") {
    if (rank != 2) throw ParseError("line subspaces need rank 2");
    return Subspace::line(read_line(field(j, "line")));
  }
  if (kind == "basis") {
    std::vector<RatVector> rows;
    for (const auto& r : field(j, "rows")) {
      if (!r.is_array() || static_cast<int>(r.size()) != rank) throw ParseError("basis row has the wrong length");
      RatVector v;
      for (const auto& x : r) v.push_back(read_rational(x));
      rows.push_back(std::move(v));
    }
    return Subspace::span(rank, std::move(rows));
  }
  throw ParseError("unknown subspace kind \"" + kind + "\"");
}

std::string normalization_name(const R2Filtration& f) {
  if (f.is_normalized(Normalization::BZero)) return "b_zero";
  if (f.is_normalized(Normalization::AZero)) return "a_zero";
  return "none";
}

R2Filtration read_reflexive(const json& j, const Fan& fan) {
  const json& rays = field(j, "rays");
  if (!rays.is_array() || static_cast<int>(rays.size()) != fan.ray_count()) {
    throw ParseError("\"rays\" needs one entry per ray");
  }
  std::vector<RayData> data;
  for (const auto& r : rays) {
    RayData d{read_coord(field(r, "a"), "a"), read_coord(field(r, "b"), "b"), std::nullopt};
    if (r.contains("line") && !r.at("line").is_null()) d.line = read_line(r.at("line"));
    data.push_back(std::move(d));
  }
  R2Filtration f(fan, std::move(data));
  if (j.contains("normalization")) {
    const std::string claimed = j.at("normalization").get<std::string>();
    const bool holds = claimed == "none" || (claimed == "b_zero" && f.is_normalized(Normalization::BZero)) ||
                       (claimed == "a_zero" && f.is_normalized(Normalization::AZero));
    if (!holds) throw ParseError("data is not normalized as \"" + claimed + "\"");
  }
  return f;
}

Multifiltration read_multifiltration(const json& j, const Fan& fan) {
  const int rank = static_cast<int>(read_coord(field(j, "rank"), "rank"));
  if (rank < 1) throw ParseError("rank must be positive");
  std::map<Cone, std::vector<Jump>> jumps;
  for (const auto& c : field(j, "cones")) {
    std::vector<int> rays;
    for (const auto& r : field(c, "rays")) rays.push_back(static_cast<int>(read_coord(r, "ray")));
    const Cone cone = Cone::of(std::span<const int>(rays));
    if (static_cast<int>(rays.size()) != cone.dim()) throw ParseError("repeated ray in " + c.dump());
    auto& list = jumps[cone];
    for (const auto& jp : field(c, "jumps")) {
      Coords at;
      for (const auto& x : field(jp, "coords")) at.push_back(read_coord(x, "coords"));
      if (static_cast<int>(at.size()) != cone.dim()) throw ParseError("jump coordinates differ from cone dimension");
      list.push_back(Jump{std::move(at), read_subspace(field(jp, "subspace"), rank)});
    }
  }
  return Multifiltration(fan, rank, std::move(jumps));
}

json write_multifiltration(const Multifiltration& m) {
  json cones = json::array();
  for (const auto& [cone, list] : m.all_jumps()) {
    json js = json::array();
    for (const Jump& jp : list) js.push_back({{"coords", jp.at}, {"subspace", write_subspace(jp.space)}});
    cones.push_back({{"rays", cone.rays()}, {"jumps", std::move(js)}});
  }
  return {{"n", m.fan().n()}, {"rank", m.rank()}, {"cones", std::move(cones)}};
}

json write_reflexive(const R2Filtration& f) {
  json rays = json::array();
  for (const auto& d : f.rays()) {
    json r = {{"a", d.a}, {"b", d.b}};
    if (d.line) r["line"] = write_line(*d.line);
    rays.push_back(std::move(r));
  }
  return {{"n", f.n()}, {"normalization", normalization_name(f)}, {"rays", std::move(rays)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

const Fan& SheafDocument::fan() const {
  return std::visit([](const auto& s) -> const Fan& { return s.fan(); }, sheaf);
}

int SheafDocument::rank() const {
  if (const auto* m = std::get_if<Multifiltration>(&sheaf)) return m->rank();
  return 2;
}

Multifiltration SheafDocument::multifiltration() const {
  if (const auto* m = std::get_if<Multifiltration>(&sheaf)) return *m;
  return to_multifiltration(std::get<R2Filtration>(sheaf));
}

SheafDocument parse_sheaf(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    const Coord n = read_coord(field(j, "n"), "n");
    if (n < 1 || n > Fan::kMaxDim) throw ParseError("n out of range");
    const Fan fan(static_cast<int>(n));
    std::string label = j.contains("label") ? j.at("label").get<std::string>() : "";
    if (j.contains("cones")) return SheafDocument{read_multifiltration(j, fan), std::move(label)};
    if (j.contains("rays")) return SheafDocument{read_reflexive(j, fan), std::move(label)};
    throw ParseError("document has neither \"rays\" nor \"cones\"");
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad document: ") + e.what());
  }
}

std::string to_json(const SheafDocument& doc) {
  json j = std::visit(
      [](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, R2Filtration>) {
          return write_reflexive(s);
        } else {
          return write_multifiltration(s);
        }
      },
      doc.sheaf);
  if (!doc.label.empty()) j["label"] = doc.label;
  return dump(j);
}

std::string to_json(const Certificate& cert, const PrescriptionSolution& sol) {
  json p = json::array();
  for (const auto& x : sol.p) p.push_back(num(x));
  json j = {{"n", sol.problem.n},
            {"start_c", sol.problem.start_c},
            {"p", std::move(p)},
            {"injections", num(sol.total_injections())},
            {"chern", render(cert.chern)},
            {"delta", num(cert.delta)},
            {"stability", to_string(cert.stability)},
            {"stability_source", "reflexive hull"},
            {"schwarzenberger", cert.schwarzenberger.ok ? "ok" : "violated"},
            {"indecomposable_if_smoothable", cert.indecomposable_if_smoothable},
            {"verification", cert.verification}};
  if (!cert.schwarzenberger.ok) j["schwarzenberger_m"] = cert.schwarzenberger.violated_m;
  return dump(j);
}

std::string to_json(const Infeasible& inf, const PrescriptionProblem& problem) {
  json j = {{"n", problem.n},
            {"start_c", problem.start_c},
            {"feasible", false},
            {"reason", inf.reason},
            {"q", inf.q},
            {"value", num(inf.value)},
            {"message", inf.to_string()}};
  return dump(j);
}

std::string to_json(const Verdict& v) {
  json profile = json::object();
  for (const auto& [k, c] : v.profile.p) profile[std::to_string(k)] = c;
  json j = {{"verdict", v.not_smoothable ? "not_smoothable" : "inconclusive"},
            {"q", v.profile.q},
            {"profile", std::move(profile)},
            {"chern", render(v.chern)},
            {"chern_normalized", render(v.chern_normalized)}};
  if (v.which) j["case"] = to_string(*v.which);
  if (v.witness != 0) {
    j["witness"] = v.witness;
    j["witness_value"] = num(v.witness_value);
  }
  if (!v.note.empty()) j["note"] = v.note;
  return dump(j);
}

}  // namespace tsk
