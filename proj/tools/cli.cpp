#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "toral/chevalley.hpp"
#include "toral/io.hpp"
#include "toral/verify.hpp"

namespace toral::cli {

using nlohmann::json;

namespace {

struct Options {
  std::string type, field = "2", out, answers, file, solution, csv, ranks = "1..3", fields = "2,2^6";
  std::vector<std::string> ids, types;
  bool scramble = false;
  std::uint64_t seed = 1;
  int max_tries = smtsa::SearchLimits{}.max_tries;
  int restarts = smtsa::SearchLimits{}.max_restarts;
  int reps = 3;
};

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-")
    out << j.dump(1) << '\n';
  else
    io::write_json(path, j);
}

smtsa::SearchLimits limits(const Options& o, std::uint64_t seed) {
  smtsa::SearchLimits l;
  l.max_tries = o.max_tries;
  l.max_restarts = o.restarts;
  l.seed = seed;
  l.check();
  return l;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, sep);)
    if (!part.empty()) out.push_back(part);
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

int gen(const Options& o, std::ostream& out) {
  const Field f = Field::parse(o.field);
  const auto c = chev::chevalley_algebra(o.type, f);
  io::AlgebraFile file;
  Subspace h = c.H;
  if (o.scramble) {
    ff::Rng rng(o.seed);
    const auto s = lie::scramble(c.L, rng);
    file.algebra = s.algebra;
    h = s.map(c.H);
  } else {
    file.algebra = c.L;
  }
  file.provenance = {{"type", c.info.datum.label()}, {"field", f.name()}, {"scrambled", o.scramble}, {"seed", o.seed}};
  emit(io::to_json(file), o.out, out);
  if (!o.answers.empty()) io::write_json(o.answers, io::answers_to_json(f, h));
  return kOk;
}

int solve(const Options& o, std::ostream& out, std::ostream& err) {
  const auto file = io::algebra_from_json(io::read_json(o.file));
  const auto r = smtsa::solve(file.algebra, limits(o, o.seed));
  emit(io::solution_to_json(file.algebra, r), o.out, out);
  if (!r.ok) {
    err << "fail: " << r.failure << '\n';
    return kFail;
  }
  err << "ok: dim H = " << r.d << " in " << std::fixed << std::setprecision(3) << r.trace.seconds << " s, "
      << r.trace.levels() << " levels\n";
  return kOk;
}

int check(const Options& o, std::ostream& out) {
  const auto file = io::algebra_from_json(io::read_json(o.file));
  const auto s = io::solution_from_json(io::read_json(o.solution));
  const StructAlgebra& L = file.algebra;
  if (!(s.field == L.field()) || s.dimension != L.dim())
    throw io::FormatError("solution does not belong to this algebra (field or dimension differs)");
  if (!s.ok) {
    out << "FAIL solution records a failed run\n";
    return kFail;
  }
  ff::Rng rng(o.seed);
  const std::size_t d = L.dim() == 0 ? 0 : lie::reductive_rank(L, rng);
  if (s.d != d) {
    out << "FAIL solution claims rank " << s.d << ", computed " << d << '\n';
    return kFail;
  }
  const auto c = lie::is_split_toral(L, *s.H, d);
  if (!c.ok()) {
    out << "FAIL " << lie::to_string(c.failure) << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    return kFail;
  }
  out << "PASS split maximal toral subalgebra of dimension " << d << '\n';
  return kOk;
}

int claims(const Options& o, std::ostream& out) {
  static const std::vector<std::string> known = {"eigenspace-table", "no-regular-semisimple", "c4-counterexample",
                                                 "cartan-rank"};
  for (const auto& id : o.ids)
    if (std::find(known.begin(), known.end(), id) == known.end())
      throw std::invalid_argument("unknown claim '" + id + "'");
  json all = json::array();
  bool pass = true;
  for (const auto& c : verify::run_claims()) {
    if (!o.ids.empty() && std::find(o.ids.begin(), o.ids.end(), c.id) == o.ids.end()) continue;
    out << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(24) << c.id << c.summary << '\n';
    pass = pass && c.pass;
    all.push_back({{"id", c.id}, {"pass", c.pass}, {"summary", c.summary}, {"data", c.data}});
  }
  if (!o.out.empty()) io::write_json(o.out, all);
  return pass ? kOk : kFail;
}

int bench(const Options& o, std::ostream& out) {
  std::vector<std::string> types = o.types;
  if (types.empty()) {
    const auto r = split(o.ranks, '.');
    if (r.empty() || r.size() > 2) throw std::invalid_argument("--ranks expects N or LO..HI");
    const int lo = std::stoi(r.front()), hi = std::stoi(r.back());
    for (const auto& label : rd::all_labels(hi))
      if (rd::parse_label(label).rank() >= lo) types.push_back(label);
  }
  const auto fields = split(o.fields, ',');
  if (types.empty() || fields.empty() || o.reps < 1) throw std::invalid_argument("empty benchmark grid");
  for (const auto& t : types) rd::parse_label(t);
  for (const auto& f : fields) Field::parse(f);

  std::ostringstream csv;
  csv << "type,field,rep,seed,ok,dim,seconds\n";
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, int>> cells;
  for (const auto& t : types)
    for (const auto& fs : fields) {
      const auto c = chev::chevalley_algebra(t, Field::parse(fs));
      auto& cell = cells[{t, fs}];
      for (int rep = 0; rep < o.reps; ++rep) {
        const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(rep);
        ff::Rng rng(seed);
        const StructAlgebra L = lie::scramble(c.L, rng).algebra;
        const auto r = smtsa::solve(L, limits(o, seed));
        cell.first.push_back(r.trace.seconds);
        cell.second += r.ok;
        csv << t << ',' << fs << ',' << rep << ',' << seed << ',' << r.ok << ',' << L.dim() << ','
            << r.trace.seconds << '\n';
      }
    }

  std::size_t w = 8;
  for (const auto& t : types) w = std::max(w, t.size() + 2);
  out << std::left << std::setw(static_cast<int>(w)) << "type";
  for (const auto& f : fields) out << std::right << std::setw(14) << ("GF(" + f + ")");
  out << '\n';
  for (const auto& t : types) {
    out << std::left << std::setw(static_cast<int>(w)) << t;
    for (const auto& f : fields) {
      const auto& [times, ok] = cells[{t, f}];
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(3) << median(times);
      if (ok != o.reps) cell << " (" << ok << "/" << o.reps << ")";
      out << std::right << std::setw(14) << cell.str();
    }
    out << '\n';
  }
  out << "median wall seconds over " << o.reps << " seeded runs; (k/n) counts successes when some runs failed\n";
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw std::runtime_error("cannot write " + o.csv);
    f << csv.str();
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Split maximal toral subalgebras of Chevalley Lie algebras over finite fields", "toral"};
  app.require_subcommand(1);

  auto* g = app.add_subcommand("gen", "write the structure constants of a Chevalley Lie algebra");
  g->add_option("type,--type", o.type, "root datum label, e.g. A3:sc, B4:ad, D6:n-1, G2")->required();
  g->add_option("field,--field", o.field, "field size: 2, 2^6, 3^10, 729")->capture_default_str();
  g->add_flag("--scramble", o.scramble, "rewrite on a uniformly random basis");
  g->add_option("--seed", o.seed)->capture_default_str();
  g->add_option("--out", o.out, "output file (default stdout)");
  g->add_option("--answers", o.answers, "also write the image of the standard torus here");

  auto* s = app.add_subcommand("solve", "find a split maximal toral subalgebra");
  s->add_option("file,--file", o.file, "algebra file")->required();
  s->add_option("--seed", o.seed)->capture_default_str();
  s->add_option("--max-tries", o.max_tries, "semisimple draws per level")->capture_default_str();
  s->add_option("--restarts", o.restarts, "full restarts")->capture_default_str();
  s->add_option("--out", o.out, "output file (default stdout)");

  auto* v = app.add_subcommand("verify", "recheck a solution against its algebra");
  v->add_option("file", o.file, "algebra file")->required();
  v->add_option("solution", o.solution, "solution file")->required();
  v->add_option("--seed", o.seed, "seed for the rank computation")->capture_default_str();

  auto* c = app.add_subcommand("claims", "run the structural checks in characteristic 2");
  c->add_option("ids", o.ids, "subset of: eigenspace-table no-regular-semisimple c4-counterexample cartan-rank");
  c->add_option("--out", o.out, "write the full records as JSON");

  auto* b = app.add_subcommand("bench", "median solve times over a types x fields grid");
  b->add_option("--type,--types", o.types, "labels (default: every label in --ranks)")->delimiter(',');
  b->add_option("--ranks", o.ranks, "rank range LO..HI")->capture_default_str();
  b->add_option("--field,--fields", o.fields, "comma separated field sizes")->capture_default_str();
  b->add_option("--reps", o.reps)->capture_default_str();
  b->add_option("--seed", o.seed, "seed of the first rep")->capture_default_str();
  b->add_option("--max-tries", o.max_tries)->capture_default_str();
  b->add_option("--restarts", o.restarts)->capture_default_str();
  b->add_option("--csv", o.csv, "also write every run as CSV");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (g->parsed()) return gen(o, out);
    if (s->parsed()) return solve(o, out, err);
    if (v->parsed()) return check(o, out);
    if (c->parsed()) return claims(o, out);
    return bench(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace toral::cli
