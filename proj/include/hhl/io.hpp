/**
 * JSON job input, complex documents, verification reports, and the
 * Macaulay2 / SVG exports.
 *
 * User-facing index lists (walls, cones) are 1-based; everything inside the
 * library is 0-based.
 */
#pragma once

#include "hhl/stacks.hpp"
#include "hhl/verify.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hhl::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "hhl-complex/1";
inline constexpr const char* kToolVersion = "0.1.0";

struct GroupChoice {
  enum class Kind { Trivial, Full, Explicit };
  Kind kind = Kind::Full;
  std::size_t free_rank = 0;
  IntVector torsion;
  IntMatrix map;

  friend bool operator==(const GroupChoice&, const GroupChoice&) = default;
};

struct JobInput {
  std::optional<LatticeMapInput> psi;
  std::optional<GSInput> gs;
  std::optional<std::vector<std::vector<std::size_t>>> fan;  // maximal cones, 0-based
  std::optional<GroupChoice> group;
  std::optional<long> window;
  bool integral = false;

  friend bool operator==(const JobInput&, const JobInput&) = default;
};

/// Everything a command needs: the lattice map, fan and group.
struct ResolvedJob {
  LatticeMapInput input;
  Fan fan;
  GroupSpec group;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline std::string path_join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }
inline std::string path_index(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, (where.empty() ? std::string("input") : where) + ": " + what);
}

inline Integer to_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const bool ok = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
                    s != "-";
    if (ok) return Integer(s);
  }
  fail(where, "expected an integer");
}

inline std::size_t to_count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline IntVector to_vector(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(to_integer(j[i], path_index(where, i)));
  return v;
}

inline std::vector<IntVector> to_rows(const json& j, const std::string& where, std::optional<std::size_t> width) {
  if (!j.is_array()) fail(where, "expected an array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(to_vector(j[i], path_index(where, i)));
    if (width && rows.back().size() != *width)
      fail(path_index(where, i), "expected " + std::to_string(*width) + " entries, found " + std::to_string(rows.back().size()));
  }
  return rows;
}

inline std::vector<std::vector<std::size_t>> to_cones(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of cones");
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = path_index(where, i);
    if (!j[i].is_array()) fail(w, "expected an array of 1-based indices");
    std::vector<std::size_t> cone;
    for (std::size_t t = 0; t < j[i].size(); ++t) {
      const std::size_t idx = to_count(j[i][t], path_index(w, t));
      if (idx == 0) fail(path_index(w, t), "indices are 1-based");
      cone.push_back(idx - 1);
    }
    cones.push_back(std::move(cone));
  }
  return cones;
}

inline void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) fail(path_join(where, k), "unknown field");
}

inline GroupChoice to_group(const json& j, const std::string& where) {
  GroupChoice g;
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "trivial") g.kind = GroupChoice::Kind::Trivial;
    else if (s == "full") g.kind = GroupChoice::Kind::Full;
    else fail(where, "expected \"trivial\", \"full\" or an object");
    return g;
  }
  if (!j.is_object()) fail(where, "expected \"trivial\", \"full\" or an object");
  only_keys(j, where, {"free_rank", "torsion", "map"});
  g.kind = GroupChoice::Kind::Explicit;
  g.free_rank = j.contains("free_rank") ? to_count(j["free_rank"], path_join(where, "free_rank")) : 0;
  g.torsion = j.contains("torsion") ? to_vector(j["torsion"], path_join(where, "torsion")) : IntVector{};
  if (!j.contains("map")) fail(path_join(where, "map"), "missing");
  const auto rows = to_rows(j["map"], path_join(where, "map"), std::nullopt);
  std::size_t width = rows.empty() ? 0 : rows[0].size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != width) fail(path_index(path_join(where, "map"), i), "rows must have equal length");
  g.map = IntMatrix::from_rows(rows, width);
  return g;
}

inline GSInput to_gs(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  only_keys(j, where, {"n_x", "rays", "cones", "beta", "phi", "l_y"});
  for (const char* key : {"n_x", "rays", "cones", "beta"})
    if (!j.contains(key)) fail(path_join(where, key), "missing");
  GSInput gs;
  gs.n_x = to_count(j["n_x"], path_join(where, "n_x"));
  gs.rays = to_rows(j["rays"], path_join(where, "rays"), std::nullopt);
  gs.cones = to_cones(j["cones"], path_join(where, "cones"));
  gs.beta = to_rows(j["beta"], path_join(where, "beta"), gs.n_x);
  if (j.contains("phi")) gs.phi = to_rows(j["phi"], path_join(where, "phi"), gs.n_x);
  if (j.contains("l_y")) gs.l_y = to_rows(j["l_y"], path_join(where, "l_y"), std::nullopt);
  return gs;
}

/// Line and column of a byte offset.
inline std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline JobInput job_from_json(const json& j) {
  using namespace detail;
  if (!j.is_object()) fail("", "expected a JSON object");
  only_keys(j, "", {"n", "k", "psi", "fan", "group", "gs", "options"});
  JobInput job;
  if (j.contains("psi") == j.contains("gs")) fail("", "exactly one of \"psi\" and \"gs\" is required");
  if (j.contains("psi")) {
    if (!j.contains("n")) fail("n", "missing");
    if (!j.contains("k")) fail("k", "missing");
    const std::size_t n = to_count(j["n"], "n"), k = to_count(j["k"], "k");
    auto rows = to_rows(j["psi"], "psi", k);
    if (rows.size() != n) fail("psi", "expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()));
    LatticeMapInput in;
    in.n = n;
    in.k = k;
    in.psi = std::move(rows);
    job.psi = std::move(in);
  } else {
    for (const char* key : {"n", "k", "fan", "group"})
      if (j.contains(key)) fail(key, "not allowed together with \"gs\" (derived by the conversion)");
    job.gs = to_gs(j["gs"], "gs");
  }
  if (j.contains("fan")) job.fan = to_cones(j["fan"], "fan");
  if (j.contains("group")) job.group = to_group(j["group"], "group");
  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) fail("options", "expected an object");
    only_keys(o, "options", {"window", "integral"});
    if (o.contains("window")) job.window = static_cast<long>(to_count(o["window"], "options.window"));
    if (o.contains("integral")) {
      if (!o["integral"].is_boolean()) fail("options.integral", "expected true or false");
      job.integral = o["integral"].get<bool>();
    }
  }
  return job;
}

inline JobInput parse_input_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "malformed JSON at " + detail::location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  return job_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline JobInput parse_input(const std::string& path) { return parse_input_text(read_file(path)); }

inline ResolvedJob resolve(const JobInput& job) {
  ResolvedJob r;
  if (job.gs) {
    auto conv = convert_gs_input(*job.gs);
    r.input = conv.input;
    r.fan = conv.fan;
    r.group = conv.group;
    return r;
  }
  r.input = *job.psi;
  validate_input(r.input);
  r.fan = job.fan ? validate_fan(Fan{r.input.n, *job.fan, {}}, r.input.n) : validate_fan(Fan::orthant(r.input.n), r.input.n);
  const GroupChoice g = job.group.value_or(GroupChoice{});
  switch (g.kind) {
    case GroupChoice::Kind::Trivial: r.group = GroupSpec::trivial(r.input.n); break;
    case GroupChoice::Kind::Full: r.group = GroupSpec::full(r.input); break;
    case GroupChoice::Kind::Explicit: r.group = GroupSpec::explicit_group(g.free_rank, g.torsion, g.map); break;
  }
  r.group.validate(r.input);
  return r;
}

// ---------------------------------------------------------------------------
// Emission

inline json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return json(v.convert_to<std::int64_t>());
  return json(v.str());
}

inline json vector_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

inline json rows_json(const std::vector<IntVector>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(vector_json(r));
  return a;
}

inline json cones_json(const std::vector<std::vector<std::size_t>>& cones) {
  json a = json::array();
  for (const auto& c : cones) {
    json cj = json::array();
    for (auto i : c) cj.push_back(i + 1);
    a.push_back(cj);
  }
  return a;
}

inline json label_json(const DegreeLabel& l) { return {{"free", vector_json(l.free_part)}, {"torsion", vector_json(l.torsion_part)}}; }

inline DegreeLabel label_from_json(const json& j, const std::string& where) {
  return {detail::to_vector(j.at("free"), where + ".free"), detail::to_vector(j.at("torsion"), where + ".torsion")};
}

inline json job_to_json(const JobInput& job) {
  json j;
  if (job.psi) {
    j["n"] = job.psi->n;
    j["k"] = job.psi->k;
    j["psi"] = rows_json(job.psi->psi);
  }
  if (job.gs) {
    json g;
    g["n_x"] = job.gs->n_x;
    g["rays"] = rows_json(job.gs->rays);
    g["cones"] = cones_json(job.gs->cones);
    g["beta"] = rows_json(job.gs->beta);
    g["phi"] = rows_json(job.gs->phi);
    if (!job.gs->l_y.empty()) g["l_y"] = rows_json(job.gs->l_y);
    j["gs"] = g;
  }
  if (job.fan) j["fan"] = cones_json(*job.fan);
  if (job.group) {
    switch (job.group->kind) {
      case GroupChoice::Kind::Trivial: j["group"] = "trivial"; break;
      case GroupChoice::Kind::Full: j["group"] = "full"; break;
      case GroupChoice::Kind::Explicit: {
        std::vector<IntVector> rows;
        for (std::size_t r = 0; r < job.group->map.rows(); ++r) rows.push_back(job.group->map.row(r));
        j["group"] = {{"free_rank", job.group->free_rank}, {"torsion", vector_json(job.group->torsion)}, {"map", rows_json(rows)}};
        break;
      }
    }
  }
  if (job.window || job.integral) {
    json o = json::object();
    if (job.window) o["window"] = *job.window;
    if (job.integral) o["integral"] = true;
    j["options"] = o;
  }
  return j;
}

/// The converted quadruple as a psi-style job (group given explicitly).
inline JobInput job_from_resolved(const ResolvedJob& r) {
  JobInput job;
  job.psi = r.input;
  job.fan = r.fan.maximal_cones;
  const QuotientGroup& x = r.group.characters();
  // Re-express X in Smith coordinates: free part then torsion.
  GroupChoice g;
  g.kind = GroupChoice::Kind::Explicit;
  g.free_rank = x.free_rank();
  g.torsion = x.torsion();
  const std::size_t p = g.free_rank + g.torsion.size();
  g.map = IntMatrix(p, r.input.n);
  for (std::size_t i = 0; i < r.input.n; ++i) {
    IntVector e(r.input.n);
    e[i] = 1;
    const DegreeLabel l = r.group.classify(e);
    for (std::size_t a = 0; a < l.free_part.size(); ++a) g.map(a, i) = l.free_part[a];
    for (std::size_t b = 0; b < l.torsion_part.size(); ++b) g.map(g.free_rank + b, i) = l.torsion_part[b];
  }
  job.group = g;
  return job;
}

/// 64-bit FNV-1a of the canonical input text, in hex.
inline std::string input_hash(const LatticeMapInput& in) {
  const std::string text = json{{"n", in.n}, {"k", in.k}, {"psi", rows_json(in.psi)}}.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

struct DocumentGenerator {
  std::size_t stratum = 0;
  DegreeLabel degree;
  IntVector line_bundle;  // coefficients of -ceilings
  DegreeLabel line_bundle_class;

  friend bool operator==(const DocumentGenerator&, const DocumentGenerator&) = default;
};

struct ComplexDocument {
  std::string schema = kSchemaVersion;
  std::string tool_version = kToolVersion;
  std::string input_hash;
  LatticeMapInput input;
  std::size_t free_rank = 0;
  IntVector torsion;
  std::vector<std::size_t> census;
  std::vector<std::vector<DocumentGenerator>> generators;
  std::vector<PolyMatrix> differentials;  // [m-1] is d_m

  friend bool operator==(const ComplexDocument&, const ComplexDocument&) = default;
};

inline ComplexDocument make_document(const HHLComplex& c, const GroupSpec& group) {
  ComplexDocument d;
  d.input = c.strata.input;
  d.input_hash = input_hash(d.input);
  d.free_rank = c.grading.free_rank();
  d.torsion = c.grading.torsion();
  d.census = c.strata.f_vector();
  const auto labels = line_bundle_labels(c.strata, group);
  for (const auto& m : c.modules) {
    std::vector<DocumentGenerator> gens;
    for (const auto& g : m) gens.push_back({g.stratum, g.degree, labels[g.stratum].coefficients, labels[g.stratum].cls});
    d.generators.push_back(std::move(gens));
  }
  d.differentials = chain_of(c);
  return d;
}

inline json document_to_json(const ComplexDocument& d, const StrataComplex* strata = nullptr) {
  json j;
  j["schema"] = d.schema;
  j["tool_version"] = d.tool_version;
  j["input_hash"] = d.input_hash;
  j["input"] = {{"n", d.input.n}, {"k", d.input.k}, {"psi", rows_json(d.input.psi)}};
  j["grading"] = {{"free_rank", d.free_rank}, {"torsion", vector_json(d.torsion)}};
  j["census"] = d.census;
  if (strata) {
    json sj = json::array();
    for (const auto& s : strata->strata) {
      json walls = json::array();
      for (auto w : s.type.walls) walls.push_back(w + 1);
      json pt = json::array();
      for (const auto& x : s.interior_point) pt.push_back(exact::to_string(x));
      sj.push_back({{"id", s.id}, {"dim", s.type.dim}, {"walls", walls}, {"ceilings", vector_json(s.type.ceilings)}, {"interior_point", pt}});
    }
    j["strata"] = sj;
  }
  json gens = json::array();
  for (const auto& m : d.generators) {
    json mj = json::array();
    for (const auto& g : m)
      mj.push_back({{"stratum", g.stratum},
                    {"degree", label_json(g.degree)},
                    {"line_bundle", {{"coefficients", vector_json(g.line_bundle)}, {"class", label_json(g.line_bundle_class)}}}});
    gens.push_back(mj);
  }
  j["generators"] = gens;
  json diffs = json::array();
  for (std::size_t m = 0; m < d.differentials.size(); ++m) {
    const auto& p = d.differentials[m];
    json entries = json::array();
    for (const auto& [rc, poly] : p.entries) {
      json terms = json::array();
      for (const auto& t : poly) terms.push_back({{"sign", integer_json(t.coeff)}, {"exps", vector_json(t.exponents)}});
      entries.push_back({{"row", rc.first}, {"col", rc.second}, {"terms", terms}});
    }
    diffs.push_back({{"degree", m + 1}, {"rows", p.rows}, {"cols", p.cols}, {"entries", entries}});
  }
  j["differentials"] = diffs;
  return j;
}

inline ComplexDocument document_from_json(const json& j) {
  using namespace detail;
  try {
    ComplexDocument d;
    d.schema = j.at("schema").get<std::string>();
    if (d.schema != kSchemaVersion) fail("schema", "unsupported schema " + d.schema);
    d.tool_version = j.at("tool_version").get<std::string>();
    d.input_hash = j.at("input_hash").get<std::string>();
    const json& in = j.at("input");
    d.input.n = to_count(in.at("n"), "input.n");
    d.input.k = to_count(in.at("k"), "input.k");
    d.input.psi = to_rows(in.at("psi"), "input.psi", d.input.k);
    d.free_rank = to_count(j.at("grading").at("free_rank"), "grading.free_rank");
    d.torsion = to_vector(j.at("grading").at("torsion"), "grading.torsion");
    for (const auto& c : j.at("census")) d.census.push_back(to_count(c, "census"));
    for (const auto& m : j.at("generators")) {
      std::vector<DocumentGenerator> gens;
      for (const auto& g : m)
        gens.push_back({to_count(g.at("stratum"), "generators.stratum"), label_from_json(g.at("degree"), "generators.degree"),
                        to_vector(g.at("line_bundle").at("coefficients"), "generators.line_bundle.coefficients"),
                        label_from_json(g.at("line_bundle").at("class"), "generators.line_bundle.class")});
      d.generators.push_back(std::move(gens));
    }
    for (const auto& dj : j.at("differentials")) {
      PolyMatrix p{to_count(dj.at("rows"), "differentials.rows"), to_count(dj.at("cols"), "differentials.cols"), {}};
      for (const auto& e : dj.at("entries")) {
        Polynomial poly;
        for (const auto& t : e.at("terms"))
          poly.push_back({to_integer(t.at("sign"), "terms.sign"), to_vector(t.at("exps"), "terms.exps")});
        p.entries[{to_count(e.at("row"), "entries.row"), to_count(e.at("col"), "entries.col")}] = normalize(poly);
      }
      d.differentials.push_back(std::move(p));
    }
    return d;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("complex document: ") + e.what());
  }
}

inline json report_to_json(const VerificationReport& r) {
  json j;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["input"] = {{"n", r.input.n}, {"k", r.input.k}, {"psi", rows_json(r.input.psi)}};
  j["window"] = r.window;
  j["window_description"] = r.window_description();
  j["windowed"] = !r.bounded;
  j["d_squared"] = r.d_squared;
  j["degree_preservation"] = r.degree_preservation;
  json entries = json::array();
  for (const auto& e : r.entries) {
    json ej;
    ej["degree"] = label_json(e.degree);
    ej["lift"] = vector_json(e.lift);
    ej["feasible"] = e.feasible;
    if (e.depth) ej["truncation_depth"] = *e.depth;
    ej["betti"] = e.betti;
    ej["betti_lifts"] = e.betti_lifts;
    if (e.betti_geometric) ej["betti_geometric"] = *e.betti_geometric;
    ej["bijection"] = e.bijection_ok;
    ej["boundary_squared_zero"] = e.boundary_squared_zero;
    if (e.integral_h0_free_rank_one) ej["integral_h0_free_rank_one"] = *e.integral_h0_free_rank_one;
    ej["ok"] = e.ok;
    entries.push_back(ej);
  }
  j["entries"] = entries;
  return j;
}

// ---------------------------------------------------------------------------
// Exports

/// Macaulay2 script: ring, one map per differential, the chain complex, and
/// the d^2 = 0 assertions.
inline std::string export_m2(const ComplexDocument& d) {
  const std::size_t n = d.input.n;
  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("x_" + std::to_string(i));
  std::ostringstream out;
  out << "-- HHL complex, n = " << n << ", k = " << d.input.k << ", " << d.input_hash << "\n";
  out << "-- psi rows:";
  for (const auto& r : d.input.psi) {
    out << " (";
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << r[j];
    out << ")";
  }
  out << "\n";
  out << "R = QQ[x_1..x_" << n << "];\n";
  for (std::size_t m = 0; m < d.differentials.size(); ++m) {
    const auto& p = d.differentials[m];
    out << "d" << m + 1 << " = map(R^" << p.rows << ", R^" << p.cols << ", {";
    for (std::size_t r = 0; r < p.rows; ++r) {
      out << (r ? ", " : "") << "{";
      for (std::size_t c = 0; c < p.cols; ++c) out << (c ? ", " : "") << to_string(p.at(r, c), vars);
      out << "}";
    }
    out << "});\n";
  }
  out << "C = chainComplex {";
  for (std::size_t m = 0; m < d.differentials.size(); ++m) out << (m ? ", " : "") << "d" << m + 1;
  out << "};\n";
  for (std::size_t m = 1; m < d.differentials.size(); ++m) out << "assert(d" << m << " * d" << m + 1 << " == 0);\n";
  return out.str();
}

namespace detail {

inline std::string fmt(const Rational& q, double scale, double offset) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", offset + scale * q.convert_to<double>());
  return buf;
}

/// Segment of {p . x = a} inside [0,1]^2, if of positive length.
inline std::optional<std::pair<RatVector, RatVector>> clip_to_square(const IntVector& p, const Integer& a) {
  std::vector<RatVector> pts;
  auto add = [&](const RatVector& x) {
    if (x[0] < 0 || x[0] > 1 || x[1] < 0 || x[1] > 1) return;
    if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
  };
  for (int side = 0; side < 2; ++side)
    for (int axis = 0; axis < 2; ++axis) {
      const int other = 1 - axis;
      if (p[other] == 0) continue;
      RatVector x(2);
      x[axis] = side;
      x[other] = (Rational(a) - Rational(p[axis]) * side) / Rational(p[other]);
      add(x);
    }
  if (pts.size() < 2) return std::nullopt;
  std::sort(pts.begin(), pts.end());
  return std::make_pair(pts.front(), pts.back());
}

}  // namespace detail

/// Fundamental domain with hyperplane traces and 0-cells marked.
inline std::string export_svg(const StrataComplex& strata) {
  const LatticeMapInput& in = strata.input;
  if (in.k > 2) throw Error(ErrorKind::Unsupported, "svg supports k \xe2\x89\xa4 2");
  std::ostringstream out;
  if (in.k == 1) {
    const double s = 400, x0 = 40, y = 40;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"90\" viewBox=\"0 0 480 90\">\n";
    out << "  <line x1=\"30\" y1=\"40\" x2=\"450\" y2=\"40\" stroke=\"black\"/>\n";
    std::set<Rational> marks;
    for (auto id : strata.by_dim[0]) {
      const Rational q = strata.strata[id].interior_point[0];
      marks.insert(q - Rational(exact::floor(q)));
    }
    for (const auto& q : marks) {
      out << "  <circle cx=\"" << detail::fmt(q, s, x0) << "\" cy=\"" << y << "\" r=\"4\" fill=\"black\"/>\n";
      out << "  <text x=\"" << detail::fmt(q, s, x0) << "\" y=\"70\" font-size=\"12\" text-anchor=\"middle\">" << exact::to_string(q)
          << "</text>\n";
    }
    out << "  <text x=\"" << x0 + s << "\" y=\"70\" font-size=\"12\" text-anchor=\"middle\">1</text>\n";
    out << "</svg>\n";
    return out.str();
  }
  const double s = 400, o = 40;
  auto px = [&](const Rational& x) { return detail::fmt(x, s, o); };
  auto py = [&](const Rational& y) { return detail::fmt(Rational(1) - y, s, o); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
  out << "  <rect x=\"40\" y=\"40\" width=\"400\" height=\"400\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  std::set<std::pair<RatVector, RatVector>> segments;
  for (const auto& p : in.psi) {
    const Integer lo = std::min<Integer>(0, p[0]) + std::min<Integer>(0, p[1]);
    const Integer hi = std::max<Integer>(0, p[0]) + std::max<Integer>(0, p[1]);
    for (Integer a = lo; a <= hi; ++a)
      if (auto seg = detail::clip_to_square(p, a)) segments.insert(*seg);
  }
  for (const auto& [a, b] : segments)
    out << "  <line x1=\"" << px(a[0]) << "\" y1=\"" << py(a[1]) << "\" x2=\"" << px(b[0]) << "\" y2=\"" << py(b[1])
        << "\" stroke=\"black\"/>\n";
  // 0-cells of the closed square lying on a drawn trace.
  LinearSystem cube(2);
  for (std::size_t j = 0; j < 2; ++j) {
    IntVector e(2);
    e[j] = 1;
    cube.at_least(e, 0).at_most(e, 1);
  }
  std::set<RatVector> marks;
  for (const auto& t : enumerate_cells(in, cube)) {
    if (t.dim != 0) continue;
    const RatVector x = *exact::strict_feasible(cell_system(in, t)).witness;
    for (const auto& [a, b] : segments) {
      // x on the segment [a, b]: collinear and between.
      const Rational cross = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
      const bool between = std::min(a[0], b[0]) <= x[0] && x[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= x[1] &&
                           x[1] <= std::max(a[1], b[1]);
      if (cross == 0 && between) {
        marks.insert(x);
        break;
      }
    }
  }
  for (const auto& x : marks) out << "  <circle cx=\"" << px(x[0]) << "\" cy=\"" << py(x[1]) << "\" r=\"4\" fill=\"black\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace hhl::io
