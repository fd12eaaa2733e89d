#include "toral/io.hpp"

#include <fstream>

namespace toral::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::uint64_t natural(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    fail(std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

void check_schema(const json& j, const char* schema) {
  const json& s = member(j, "schema");
  if (!s.is_string() || s.get<std::string>() != schema) fail(std::string("expected schema ") + schema);
}

json matrix_rows(const Field& f, const std::vector<Vec>& rows) {
  json out = json::array();
  for (const auto& v : rows) out.push_back(vec_to_json(f, v));
  return out;
}

}  // namespace

json field_to_json(const Field& f) {
  return {{"p", f.p()}, {"k", f.k()}, {"defining_poly", f.defining_poly()}};
}

Field field_from_json(const json& j) {
  const auto p = natural(member(j, "p"), "p");
  const auto k = natural(member(j, "k"), "k");
  std::optional<std::vector<std::uint64_t>> poly;
  if (j.contains("defining_poly") && !j.at("defining_poly").is_null()) {
    const json& d = j.at("defining_poly");
    if (!d.is_array()) fail("defining_poly must be an array");
    poly.emplace();
    for (const auto& c : d) poly->push_back(natural(c, "defining_poly coefficient"));
  }
  try {
    return Field::make(p, static_cast<unsigned>(k), poly);
  } catch (const std::invalid_argument& e) {
    fail(std::string("bad field: ") + e.what());
  }
}

json elem_to_json(const Field& f, Elem e) { return f.coeffs(e); }

Elem elem_from_json(const Field& f, const json& j) {
  if (!j.is_array() || j.size() > f.k()) fail("field element must be an array of at most k coefficients");
  std::vector<std::uint64_t> c;
  for (const auto& x : j) {
    const auto v = natural(x, "coefficient");
    if (v >= f.p()) fail("coefficient out of range");
    c.push_back(v);
  }
  return f.from_coeffs(c);
}

json vec_to_json(const Field& f, std::span<const Elem> v) {
  json out = json::array();
  for (Elem e : v) out.push_back(elem_to_json(f, e));
  return out;
}

Vec vec_from_json(const Field& f, const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) fail("vector must have " + std::to_string(dim) + " entries");
  Vec v;
  for (const auto& e : j) v.push_back(elem_from_json(f, e));
  return v;
}

json to_json(const AlgebraFile& a) {
  const Field& f = a.algebra.field();
  json constants = json::array();
  for (const auto& [i, j, k, c] : a.algebra.constants()) constants.push_back({i, j, k, elem_to_json(f, c)});
  json out = {{"schema", kAlgebraSchema},
              {"field", field_to_json(f)},
              {"dimension", a.algebra.dim()},
              {"constants", std::move(constants)}};
  if (!a.provenance.is_null()) out["provenance"] = a.provenance;
  return out;
}

AlgebraFile algebra_from_json(const json& j) {
  check_schema(j, kAlgebraSchema);
  const Field f = field_from_json(member(j, "field"));
  const auto dim = natural(member(j, "dimension"), "dimension");
  const json& cs = member(j, "constants");
  if (!cs.is_array()) fail("constants must be an array");
  std::vector<Constant> constants;
  for (const auto& c : cs) {
    if (!c.is_array() || c.size() != 4) fail("constant must be [i, j, k, coeff]");
    const auto i = natural(c[0], "i"), jj = natural(c[1], "j"), k = natural(c[2], "k");
    if (i >= dim || jj >= dim || k >= dim) fail("structure constant index out of range");
    if (i >= jj) fail("structure constants must have i < j");
    constants.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(jj),
                           static_cast<std::uint32_t>(k), elem_from_json(f, c[3]));
  }
  AlgebraFile out;
  out.algebra = StructAlgebra::from_constants(f, dim, constants);
  if (j.contains("provenance")) out.provenance = j.at("provenance");
  return out;
}

json trace_to_json(const smtsa::SmtsaTrace& t) {
  json cases = json::object();
  for (std::size_t c = 1; c < t.guards.size(); ++c)
    cases[smtsa::to_string(static_cast<smtsa::SplitCase>(c))] = {{"guards", t.guards[c]}, {"solved", t.solved[c]}};
  return {{"seconds", t.seconds},   {"levels", t.levels()},           {"dims", t.dims},
          {"tries", t.tries},       {"restarts", t.restarts},         {"center_steps", t.center_steps},
          {"direct", t.direct},     {"max_dim", t.max_dim},           {"cases", std::move(cases)}};
}

json solution_to_json(const StructAlgebra& L, const smtsa::SmtsaResult& r) {
  const Field& f = L.field();
  json out = {{"schema", kSolutionSchema}, {"field", field_to_json(f)}, {"dimension", L.dim()},
              {"ok", r.ok},                {"d", r.d},                  {"trace", trace_to_json(r.trace)}};
  if (!r.ok) {
    out["failure"] = r.failure;
    out["level_reached"] = r.trace.max_dim;
    return out;
  }
  const auto& c = *r.certificate;
  out["H"] = matrix_rows(f, c.H.vecs());
  json polys = json::array();
  for (const auto& p : c.min_polys) polys.push_back(vec_to_json(f, p.coeffs()));
  json weights = json::array();
  for (const auto& w : c.weights) weights.push_back({{"values", vec_to_json(f, w.values)}, {"multiplicity", w.multiplicity}});
  std::vector<Vec> eig;
  for (std::size_t i = 0; i < c.eigenbasis.rows(); ++i) eig.push_back(c.eigenbasis.row_vec(i));
  out["certificate"] = {{"min_polys", std::move(polys)},
                        {"weights", std::move(weights)},
                        {"eigenbasis", matrix_rows(f, eig)},
                        {"rank", c.rank}};
  return out;
}

Solution solution_from_json(const json& j) {
  check_schema(j, kSolutionSchema);
  Solution s;
  s.field = field_from_json(member(j, "field"));
  s.dimension = natural(member(j, "dimension"), "dimension");
  const json& ok = member(j, "ok");
  if (!ok.is_boolean()) fail("ok must be a boolean");
  s.ok = ok.get<bool>();
  s.d = natural(member(j, "d"), "d");
  if (s.ok) {
    const json& h = member(j, "H");
    if (!h.is_array()) fail("H must be an array of vectors");
    std::vector<Vec> rows;
    for (const auto& v : h) rows.push_back(vec_from_json(s.field, v, s.dimension));
    s.H = Subspace::span(s.field, s.dimension, rows);
  }
  return s;
}

json answers_to_json(const Field& f, const Subspace& h) {
  return {{"schema", kAnswersSchema}, {"field", field_to_json(f)}, {"H", matrix_rows(f, h.vecs())}};
}

Subspace answers_from_json(const Field& f, const json& j, std::size_t dim) {
  check_schema(j, kAnswersSchema);
  if (!(field_from_json(member(j, "field")) == f)) fail("answers are over a different field");
  std::vector<Vec> rows;
  for (const auto& v : member(j, "H")) rows.push_back(vec_from_json(f, v, dim));
  return Subspace::span(f, dim, rows);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << '\n';
}

}  // namespace toral::io
