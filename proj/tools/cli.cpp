#include "cli.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

#include "foliq/error.hpp"
#include "foliq/localization.hpp"
#include "foliq/rootdata.hpp"
#include "foliq/toric.hpp"
#include "foliq/verify.hpp"

namespace foliq::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Reading problem documents. Every failure names the JSON pointer it refers to.

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, "at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const json* optional_field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& field(const json& obj, const std::string& path, const char* key) {
  const json* v = optional_field(obj, path, key);
  if (!v) parse_fail(path, std::string("missing field \"") + key + "\"");
  return *v;
}

const json& array_at(const json& v, const std::string& path) {
  if (!v.is_array()) parse_fail(path, "expected an array");
  return v;
}

Rational parse_rational(const json& v, const std::string& path) {
  std::string s;
  if (v.is_number_integer())
    s = v.dump();
  else if (v.is_string())
    s = v.get<std::string>();
  else
    parse_fail(path, "expected a rational written as a \"p/q\" string");
  static const std::regex form(R"(-?[0-9]+(/[0-9]+)?)");
  if (!std::regex_match(s, form)) parse_fail(path, "\"" + s + "\" is not of the form p/q");
  const auto slash = s.find('/');
  if (slash != std::string::npos && s.find_first_not_of('0', slash + 1) == std::string::npos)
    parse_fail(path, "zero denominator");
  Rational q(s, 10);
  q.canonicalize();
  return q;
}

std::int64_t parse_integer(const json& v, const std::string& path) {
  const Rational q = parse_rational(v, path);
  if (q.get_den() != 1) parse_fail(path, "expected an integer");
  if (!q.get_num().fits_slong_p()) parse_fail(path, "integer out of range");
  return q.get_num().get_si();
}

std::size_t parse_count(const json& v, const std::string& path) {
  const std::int64_t n = parse_integer(v, path);
  if (n < 0) parse_fail(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(n);
}

// A rational, or an array of coefficients on the generators.
AlgebraElement parse_element(const json& v, const AlgebraContext& ctx, const std::string& path) {
  if (!v.is_array()) return ctx.from_rational(parse_rational(v, path));
  if (v.size() != ctx.dimension())
    parse_fail(path, "expected " + std::to_string(ctx.dimension()) + " coefficients");
  std::vector<Rational> cs;
  for (std::size_t i = 0; i < v.size(); ++i) cs.push_back(parse_rational(v[i], child(path, i)));
  return ctx.element(std::move(cs));
}

AlgebraVector parse_vector(const json& v, const AlgebraContext& ctx, const std::string& path, std::size_t size) {
  array_at(v, path);
  if (v.size() != size) parse_fail(path, "expected " + std::to_string(size) + " entries");
  AlgebraVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_element(v[i], ctx, child(path, i)));
  return out;
}

LatticeWeight parse_lattice(const json& v, const std::string& path, std::optional<std::size_t> size = {}) {
  array_at(v, path);
  if (size && v.size() != *size) parse_fail(path, "expected " + std::to_string(*size) + " entries");
  LatticeWeight w;
  for (std::size_t i = 0; i < v.size(); ++i) w.push_back(parse_integer(v[i], child(path, i)));
  return w;
}

AlgebraContext parse_algebra(const json& doc, unsigned budget) {
  const json* a = optional_field(doc, "", "algebra");
  if (!a) return AlgebraContext().with_refine_budget(budget);
  const std::string path = "/algebra";
  const json& gens = array_at(field(*a, path, "generators"), child(path, "generators"));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!gens[i].is_string()) parse_fail(child(child(path, "generators"), i), "expected a name");
    names.push_back(gens[i].get<std::string>());
  }
  const std::size_t n = names.size();
  if (n == 0) parse_fail(child(path, "generators"), "at least the unit generator is required");

  MultiplicationTable t(n, std::vector<std::vector<Rational>>(n));
  std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
  const std::string tpath = child(path, "table");
  if (const json* table = optional_field(*a, path, "table")) {
    array_at(*table, tpath);
    for (std::size_t k = 0; k < table->size(); ++k) {
      const std::string epath = child(tpath, k);
      const json& e = array_at((*table)[k], epath);
      if (e.size() != 3) parse_fail(epath, "expected a triple [a, b, coefficients]");
      const std::size_t x = parse_count(e[0], child(epath, 0)), y = parse_count(e[1], child(epath, 1));
      if (x >= n || y >= n) parse_fail(epath, "generator index out of range");
      if (given[x][y]) parse_fail(epath, "product given twice");
      const json& cs = array_at(e[2], child(epath, 2));
      if (cs.size() != n) parse_fail(child(epath, 2), "expected " + std::to_string(n) + " coefficients");
      for (std::size_t i = 0; i < n; ++i) t[x][y].push_back(parse_rational(cs[i], child(child(epath, 2), i)));
      given[x][y] = true;
    }
  }
  // Unlisted products default to the unit rule or to the mirrored entry.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (given[x][y]) continue;
      if (given[y][x]) {
        t[x][y] = t[y][x];
      } else if (x == 0 || y == 0) {
        t[x][y].assign(n, 0);
        t[x][y][x + y] = 1;
      } else {
        parse_fail(tpath, "missing product of generators " + std::to_string(x) + " and " + std::to_string(y));
      }
    }

  const std::string epath = child(path, "enclosures");
  const json& enc = array_at(field(*a, path, "enclosures"), epath);
  if (enc.size() != n) parse_fail(epath, "expected one enclosure per generator");
  std::vector<Interval> intervals;
  for (std::size_t i = 0; i < n; ++i) {
    const json& pair = array_at(enc[i], child(epath, i));
    if (pair.size() != 2) parse_fail(child(epath, i), "expected [lo, hi]");
    intervals.push_back({parse_rational(pair[0], child(child(epath, i), 0)),
                         parse_rational(pair[1], child(child(epath, i), 1))});
  }
  return AlgebraContext::make(std::move(names), std::move(t), std::move(intervals), budget);
}

SimplePolytope parse_polytope(const json& doc, const AlgebraContext& ctx) {
  const std::string path = "/polytope";
  const json& p = field(doc, "", "polytope");
  SimplePolytope out;
  out.dimension = parse_count(field(p, path, "dimension"), child(path, "dimension"));
  const std::string fpath = child(path, "facets");
  const json& facets = array_at(field(p, path, "facets"), fpath);
  for (std::size_t j = 0; j < facets.size(); ++j) {
    const std::string jpath = child(fpath, j);
    out.facets.push_back(Facet{parse_vector(field(facets[j], jpath, "normal"), ctx, child(jpath, "normal"), out.dimension),
                               parse_element(field(facets[j], jpath, "bound"), ctx, child(jpath, "bound"))});
  }
  return out;
}

struct Subalgebra {
  std::vector<AlgebraVector> basis;
  AlgebraVector level;
};

Subalgebra parse_subalgebra(const json& doc, const AlgebraContext& ctx, std::size_t n) {
  const std::string path = "/subalgebra";
  const json& s = field(doc, "", "subalgebra");
  Subalgebra out;
  const json& basis = array_at(field(s, path, "basis"), child(path, "basis"));
  for (std::size_t i = 0; i < basis.size(); ++i)
    out.basis.push_back(parse_vector(basis[i], ctx, child(child(path, "basis"), i), n));
  out.level = parse_vector(field(s, path, "level"), ctx, child(path, "level"), n);
  return out;
}

RootDatum parse_group(const json& doc, bool default_a1 = false) {
  const std::string path = "/group";
  const json* g = optional_field(doc, "", "group");
  if (!g) {
    if (default_a1) return build_root_datum("A", 1);
    parse_fail("", "missing field \"group\"");
  }
  const json& type = field(*g, path, "type");
  if (!type.is_string()) parse_fail(child(path, "type"), "expected a Cartan type such as \"A\"");
  const std::int64_t rank = parse_integer(field(*g, path, "rank"), child(path, "rank"));
  std::int64_t center = 0;
  if (const json* c = optional_field(*g, path, "center_rank")) center = parse_integer(*c, child(path, "center_rank"));
  if (center < 0) parse_fail(child(path, "center_rank"), "expected a nonnegative integer");
  return build_root_datum(type.get<std::string>(), rank, static_cast<std::size_t>(center));
}

TorusCharacter parse_character(const json& doc, std::size_t rank) {
  const std::string path = "/character";
  const json& c = field(doc, "", "character");
  const std::string tpath = child(path, "terms");
  const json& terms = array_at(field(c, path, "terms"), tpath);
  TorusCharacter out(rank);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string kpath = child(tpath, k);
    out.add(parse_lattice(field(terms[k], kpath, "weight"), child(kpath, "weight"), rank),
            parse_integer(field(terms[k], kpath, "multiplicity"), child(kpath, "multiplicity")));
  }
  return out;
}

void parse_finite_group(const json& doc, std::vector<std::int64_t>& orders, IntMatrix& pairing, std::size_t n) {
  const std::string path = "/finite_group";
  const json& f = field(doc, "", "finite_group");
  orders = parse_lattice(field(f, path, "orders"), child(path, "orders"));
  const std::string ppath = child(path, "pairing");
  const json& rows = array_at(field(f, path, "pairing"), ppath);
  if (rows.size() != orders.size()) parse_fail(ppath, "expected one row per cyclic factor");
  pairing.clear();
  for (std::size_t i = 0; i < rows.size(); ++i) pairing.push_back(parse_lattice(rows[i], child(ppath, i), n));
}

IntegerBox parse_box(const std::string& text, std::size_t n) {
  IntegerBox box;
  std::stringstream in(text);
  std::string part;
  static const std::regex form(R"((-?[0-9]+):(-?[0-9]+))");
  while (std::getline(in, part, ',')) {
    std::smatch m;
    if (!std::regex_match(part, m, form)) parse_fail("--box", "\"" + part + "\" is not of the form lo:hi");
    box.push_back({std::stoll(m[1]), std::stoll(m[2])});
  }
  if (box.size() != n) parse_fail("--box", "expected " + std::to_string(n) + " ranges");
  return box;
}

// ---------------------------------------------------------------------------
// Writing result documents.

ojson element_json(const AlgebraElement& x) {
  if (x.is_rational()) return x.rational_part().get_str();
  ojson a = ojson::array();
  for (const auto& c : x.coefficients()) a.push_back(c.get_str());
  return a;
}

ojson vector_json(const AlgebraVector& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(element_json(x));
  return a;
}

ojson lattice_json(const LatticeWeight& w) {
  ojson a = ojson::array();
  for (auto x : w) a.push_back(x);
  return a;
}

ojson quantization_json(const QuantizationResult& r) {
  auto entries = r.entries;
  std::sort(entries.begin(), entries.end(),
            [](const QuantizationEntry& a, const QuantizationEntry& b) { return compare(a.root, b.root) < 0; });
  ojson out;
  out["dimension"] = r.dimension();
  out["weights"] = ojson::array();
  for (const auto& e : entries)
    out["weights"].push_back({{"weight", vector_json(e.root)}, {"b", lattice_json(e.b)}, {"multiplicity", 1}});
  return out;
}

ojson rows_json(const std::vector<WeightRow>& rows) {
  ojson a = ojson::array();
  for (const auto& r : rows) a.push_back({{"weight", r.weight}, {"expected", r.expected}, {"actual", r.actual}});
  return a;
}

ojson report_json(const CheckReport& r) {
  ojson out;
  out["check"] = r.name;
  out["verdict"] = r.pass() ? "pass" : "fail";
  out["mismatches"] = r.mismatches;
  out["table"] = rows_json(r.table);
  out["counterexamples"] = rows_json(r.counterexamples);
  out["notes"] = r.notes;
  return out;
}

ojson integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

PolarizingVector default_beta(const VertexFixedData& vd) {
  for (std::int64_t base = 3;; ++base) {
    PolarizingVector b{LatticeWeight(vd.dimension)};
    std::int64_t x = 1;
    for (auto& c : b.beta) {
      c = x;
      x *= base;
    }
    try {
      require_generic(vd, b);
      return b;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonGenericBeta) throw;
    }
  }
}

struct Computed {
  ojson outputs;
  std::optional<std::uint64_t> seed;
  std::optional<bool> verdict;
};

Computed check(const CheckReport& r) { return {report_json(r), r.seed, r.pass()}; }

Computed dispatch(const std::string& command, const json& doc, const Options& options) {
  const AlgebraContext ctx = parse_algebra(doc, options.refine_budget);

  if (command == "decompose") {
    const RootDatum d = parse_group(doc);
    const auto dec = decompose_into_irreps(d, parse_character(doc, d.weight_rank()));
    ojson out;
    Integer total = 0;
    out["irreps"] = ojson::array();
    for (const auto& [label, m] : dec) {
      const Integer dim = weyl_dimension(d, label);
      total += dim * static_cast<long>(m);
      out["irreps"].push_back({{"highest", lattice_json(label.highest)},
                               {"central", lattice_json(label.central)},
                               {"multiplicity", m},
                               {"dimension", integer_json(dim)}});
    }
    out["dimension"] = integer_json(total);
    return {out, {}, {}};
  }
  if (command == "demo-coadjoint") {
    const RootDatum d = parse_group(doc, true);
    const std::string path = "/coadjoint";
    const json& c = field(doc, "", "coadjoint");
    return check(coadjoint_demo(d, parse_integer(field(c, path, "level"), child(path, "level"))));
  }

  const SimplePolytope p = parse_polytope(doc, ctx);
  const std::size_t n = p.dimension;

  if (command == "localize") {
    const VertexFixedData vd = vertex_data(p);
    PolarizingVector beta;
    const json* loc = optional_field(doc, "", "localization");
    const json* given = loc ? optional_field(*loc, "/localization", "beta") : nullptr;
    beta = given ? PolarizingVector{parse_lattice(*given, "/localization/beta", n)} : default_beta(vd);
    IntegerBox box;
    if (options.box) {
      box = parse_box(*options.box, n);
    } else {
      for (std::size_t i = 0; i < n; ++i) box.push_back({vd.lower[i] - 1, vd.upper[i] + 1});
    }
    const TorusCharacter c = localized_character(vd, beta, box);
    ojson out;
    out["beta"] = lattice_json(beta.beta);
    out["box"] = ojson::array();
    for (const auto& [lo, hi] : box) out["box"].push_back({lo, hi});
    out["dimension"] = c.dimension();
    out["weights"] = ojson::array();
    for (const auto& [w, m] : c.terms()) out["weights"].push_back({{"weight", lattice_json(w)}, {"multiplicity", m}});
    return {out, {}, {}};
  }
  if (command == "check-localization") {
    const std::uint64_t seed = options.seed.value_or(1);
    return check(localization_check(p, options.trials.value_or(200), seed));
  }

  const PratoQuasifold q = build_quasifold(p);
  if (command == "quantize") return {quantization_json(quantize(q)), {}, {}};
  if (command == "check-qr0") return check(qr0_check(q));
  if (command == "bohr-sommerfeld" || command == "check-shift") {
    const AlgebraVector xi = parse_vector(field(doc, "", "point"), ctx, "/point", n);
    if (command == "check-shift") return check(shift_check(q, xi));
    ojson out;
    out["point"] = vector_json(xi);
    out["indicator"] = bohr_sommerfeld(q, xi);
    return {out, {}, {}};
  }

  const Subalgebra s = parse_subalgebra(doc, ctx, n);
  if (command == "reduce-stages") {
    const PratoQuasifold r = reduce_in_stages(q, s.basis, s.level);
    ojson out;
    out["reduced_dimension"] = r.dimension();
    out["facets"] = r.facets();
    const ojson quant = quantization_json(quantize(r));
    for (const auto& [k, v] : quant.items()) out[k] = v;
    return {out, {}, {}};
  }
  if (command == "check-stages") return check(stages_check(q, s.basis, s.level));
  if (command == "check-suspension") {
    std::vector<std::int64_t> orders;
    IntMatrix pairing;
    parse_finite_group(doc, orders, pairing, n);
    return check(suspension_check(q, orders, pairing, s.basis, s.level));
  }
  throw Error(ErrorKind::ParseError, "unknown command \"" + command + "\"");
}

std::string cell(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_array()) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + cell(v[i]);
    return s + ")";
  }
  return v.dump();
}

ojson header(const std::string& command) {
  ojson doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["command"] = command;
  return doc;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{
      "quantize",     "bohr-sommerfeld", "reduce-stages",      "localize",         "decompose",     "check-qr0",
      "check-shift",  "check-stages",    "check-localization", "check-suspension", "demo-coadjoint"};
  return names;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = hex[h & 0xf];
  return s;
}

Outcome run(const std::string& command, const std::string& text, const Options& options) {
  ojson doc = header(command);
  doc["digest"] = nullptr;
  try {
    if (std::find(commands().begin(), commands().end(), command) == commands().end())
      throw Error(ErrorKind::ParseError, "unknown command \"" + command + "\"");
    json input;
    try {
      input = json::parse(text);
    } catch (const json::parse_error& e) {
      // Byte offsets are 1-based and point just past the offending character.
      std::size_t line = 1, column = 1;
      for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
      throw Error(ErrorKind::ParseError, "near line " + std::to_string(line) + " column " + std::to_string(column) +
                                             ": malformed JSON");
    }
    if (!input.is_object()) parse_fail("", "expected an object");

    json canonical = input;
    if (canonical.contains("algebra") && canonical["algebra"].is_object()) canonical["algebra"].erase("enclosures");
    doc["digest"] = fnv1a64(canonical.dump());

    const Computed c = dispatch(command, input, options);
    doc["seed"] = c.seed ? ojson(*c.seed) : ojson(nullptr);
    doc["status"] = !c.verdict ? "ok" : (*c.verdict ? "pass" : "fail");
    doc["outputs"] = c.outputs;
    return {c.verdict && !*c.verdict ? 1 : 0, doc};
  } catch (const Error& e) {
    doc["seed"] = nullptr;
    doc["status"] = "error";
    doc["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  } catch (const std::exception& e) {
    doc["seed"] = nullptr;
    doc["status"] = "error";
    doc["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
  }
  return {2, doc};
}

std::string render(const ojson& document, Format format) {
  if (format == Format::Json) return document.dump(2) + "\n";
  std::ostringstream out;
  for (const auto& [key, value] : document.items()) {
    if (key == "outputs" || key == "error") continue;
    out << key << '\t' << cell(value) << '\n';
  }
  if (const auto e = document.find("error"); e != document.end())
    out << "error\t" << cell((*e)["message"]) << '\n';
  const auto outputs = document.find("outputs");
  if (outputs == document.end()) return out.str();
  auto is_section = [](const std::string& key, const ojson& value) {
    return key == "notes" ||
           (value.is_array() && std::all_of(value.begin(), value.end(), [](const ojson& x) { return x.is_object(); }));
  };
  // Scalars first, then one tab-separated section per list of rows.
  for (const auto& [key, value] : outputs->items())
    if (!is_section(key, value)) out << key << '\t' << cell(value) << '\n';
  for (const auto& [key, value] : outputs->items()) {
    if (!is_section(key, value)) continue;
    out << "\n[" << key << "]\n";
    if (key == "notes") {
      for (const auto& line : value) out << cell(line) << '\n';
      continue;
    }
    if (value.empty()) continue;
    bool first = true;
    for (const auto& [column, unused] : value.front().items()) {
      out << (first ? "" : "\t") << column;
      first = false;
    }
    out << '\n';
    for (const auto& row : value) {
      first = true;
      for (const auto& [column, v] : row.items()) {
        out << (first ? "" : "\t") << cell(v);
        first = false;
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace foliq::cli
