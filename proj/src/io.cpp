#include "bratteli/io.hpp"

#include "bratteli/error.hpp"
#include "bratteli/traces.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace bratteli {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

ordered_json integer_json(const Integer& v) {
  static_assert(sizeof(long) >= 8, "64-bit long expected");
  if (v.fits_slong_p()) return ordered_json(v.get_si());
  return ordered_json(v.get_str());
}

ordered_json integers_json(const std::vector<Integer>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

ordered_json rationals_json(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(to_fraction_string(x));
  return a;
}

Integer integer_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    return Integer(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::InvalidInput, where + ": expected an integer");
}

Rational rational_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(integer_from(j, where));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorCode::InvalidInput, where + ": expected a rational \"p/q\"");
}

const json& array_field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field \"") + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_array()) throw Error(ErrorCode::InvalidInput, std::string("field \"") + key + "\" must be an array");
  return v;
}

void only_fields(const json& obj, std::initializer_list<const char*> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!ok.count(it.key())) throw Error(ErrorCode::InvalidInput, "unknown field \"" + it.key() + "\"");
  }
  for (const char* key : allowed) {
    if (!obj.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field \"") + key + "\"");
  }
}

json parse_object(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "expected a JSON object");
  if (!j.contains("format") || !j.at("format").is_string()) {
    throw Error(ErrorCode::InvalidInput, "missing \"format\" field");
  }
  return j;
}

std::vector<Integer> integer_row(const json& row, const std::string& where) {
  if (!row.is_array()) throw Error(ErrorCode::InvalidInput, where + ": expected an array");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    out.push_back(integer_from(row[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

DiagramFile parse_diagram(std::string_view text) {
  const json j = parse_object(text);
  const std::string format = j.at("format").get<std::string>();
  if (format == "triangular") {
    only_fields(j, {"format", "k0", "mvectors"});
    TriangularSpec spec;
    spec.k0 = integer_from(j.at("k0"), "k0");
    const json& mv = array_field(j, "mvectors");
    for (std::size_t n = 0; n < mv.size(); ++n) {
      spec.mvectors.push_back(integer_row(mv[n], "mvectors[" + std::to_string(n) + "]"));
    }
    require_valid(spec);
    return spec;
  }
  if (format == "general") {
    only_fields(j, {"format", "unital", "u1", "matrices"});
    if (!j.at("unital").is_boolean()) throw Error(ErrorCode::InvalidInput, "\"unital\" must be a boolean");
    BratteliPrefix prefix;
    prefix.unital = j.at("unital").get<bool>();
    prefix.levels.emplace_back(integer_row(array_field(j, "u1"), "u1"));
    const json& mats = array_field(j, "matrices");
    for (std::size_t n = 0; n < mats.size(); ++n) {
      const std::string where = "matrices[" + std::to_string(n) + "]";
      if (!mats[n].is_array()) throw Error(ErrorCode::InvalidInput, where + ": expected an array");
      std::vector<std::vector<Integer>> rows;
      for (std::size_t i = 0; i < mats[n].size(); ++i) {
        rows.push_back(integer_row(mats[n][i], where + "[" + std::to_string(i) + "]"));
      }
      auto a = MultiplicityMatrix::from_rows(rows, 0);
      if (a.cols() != prefix.levels.back().size()) {
        throw Error(ErrorCode::InvalidInput, where + " has " + std::to_string(a.cols()) +
                                                 " columns, previous level has " +
                                                 std::to_string(prefix.levels.back().size()) +
                                                 " vertices");
      }
      // The format stores u1 only; later sizes are A_n u_n.
      auto u = a.apply(prefix.levels.back().entries());
      prefix.levels.emplace_back(std::move(u));
      prefix.matrices.push_back(std::move(a));
    }
    require_valid(prefix);
    return prefix;
  }
  throw Error(ErrorCode::InvalidInput, "unknown diagram format \"" + format + "\"");
}

std::string emit_diagram(const TriangularSpec& spec) {
  ordered_json j;
  j["format"] = "triangular";
  j["k0"] = integer_json(spec.k0);
  ordered_json mv = ordered_json::array();
  for (const auto& m : spec.mvectors) mv.push_back(integers_json(m));
  j["mvectors"] = mv;
  return j.dump() + "\n";
}

std::string emit_diagram(const BratteliPrefix& prefix) {
  for (std::size_t n = 0; n < prefix.matrices.size(); ++n) {
    if (prefix.matrices[n].apply(prefix.levels[n].entries()) != prefix.levels[n + 1].entries()) {
      throw Error(ErrorCode::InvalidInput,
                  "the general format needs u_{n+1} = A_n u_n (fails at level " + std::to_string(n) + ")");
    }
  }
  ordered_json j;
  j["format"] = "general";
  j["unital"] = prefix.unital;
  j["u1"] = integers_json(prefix.levels.front().entries());
  ordered_json mats = ordered_json::array();
  for (const auto& a : prefix.matrices) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(integers_json(a.row(i)));
    mats.push_back(rows);
  }
  j["matrices"] = mats;
  return j.dump() + "\n";
}

std::string emit_diagram(const DiagramFile& file) {
  return std::visit([](const auto& d) { return emit_diagram(d); }, file);
}

BratteliPrefix to_prefix(const DiagramFile& file, std::optional<std::size_t> steps) {
  if (const auto* spec = std::get_if<TriangularSpec>(&file)) {
    return embed_triangular(*spec, steps.value_or(spec->steps()));
  }
  const auto& prefix = std::get<BratteliPrefix>(file);
  if (!steps) return prefix;
  return prefix.truncated(*steps + 1);
}

std::vector<SimplexPoint> parse_targets(std::string_view text) {
  const json j = parse_object(text);
  if (j.at("format") != "targets") throw Error(ErrorCode::InvalidInput, "expected format \"targets\"");
  only_fields(j, {"format", "points"});
  const json& pts = array_field(j, "points");
  std::vector<SimplexPoint> out;
  for (std::size_t n = 0; n < pts.size(); ++n) {
    const std::string where = "points[" + std::to_string(n) + "]";
    if (!pts[n].is_array()) throw Error(ErrorCode::InvalidInput, where + ": expected an array");
    std::vector<Rational> c;
    for (std::size_t i = 0; i < pts[n].size(); ++i) c.push_back(rational_from(pts[n][i], where));
    if (c.size() != n + 1) {
      throw Error(ErrorCode::InvalidInput, where + " must have " + std::to_string(n + 1) + " coordinates");
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

std::string emit_targets(const std::vector<SimplexPoint>& points) {
  ordered_json j;
  j["format"] = "targets";
  ordered_json pts = ordered_json::array();
  for (const auto& p : points) pts.push_back(rationals_json(p.coords()));
  j["points"] = pts;
  return j.dump() + "\n";
}

MapSequence parse_map_sequence(std::string_view text) {
  const json j = parse_object(text);
  MapSequence seq;
  if (j.at("format") == "targets") {
    for (const auto& xi : parse_targets(text)) seq.maps.push_back(target_map(xi));
    return seq;
  }
  const auto prefix = to_prefix(parse_diagram(text));
  for (std::size_t n = 0; n + 1 < prefix.depth(); ++n) seq.maps.push_back(trace_map(prefix, n));
  return seq;
}

std::string emit_certificate(const SynthesisCertificate& certificate,
                             const SynthesisOptions& options) {
  ordered_json j;
  j["format"] = "certificate";
  j["mode"] = options.mode == ApproxMode::Exact ? "exact" : "approximate";
  j["reduced"] = options.reduced;
  j["k0"] = integer_json(options.k0);
  ordered_json levels = ordered_json::array();
  for (const auto& l : certificate.levels) {
    ordered_json e;
    e["n"] = l.n;
    e["xi"] = rationals_json(l.xi.coords());
    e["ell"] = integers_json(l.ell);
    e["m"] = integers_json(l.m);
    e["k_next"] = integer_json(l.k_next);
    e["zeta"] = rationals_json(l.zeta.coords());
    e["gap_l1"] = to_fraction_string(l.gap_l1);
    e["gap_l2_squared"] = to_fraction_string(l.gap_l2_squared);
    e["eps"] = to_fraction_string(l.eps);
    e["fallback"] = l.fallback;
    levels.push_back(e);
  }
  j["levels"] = levels;
  j["certified"] = certificate.all_certified();
  return j.dump() + "\n";
}

namespace {

constexpr std::size_t kFixtureSteps = 12;
constexpr std::size_t kFixtureMatrices = 11;

BratteliPrefix ex57a_right() {
  BratteliPrefix p;
  p.levels.push_back(DimensionVector{1, 2});
  for (std::size_t n = 0; n < kFixtureMatrices; ++n) {
    const std::size_t m = n + 2;
    MultiplicityMatrix a(m + 1, m);
    for (std::size_t i = 0; i + 1 < m; ++i) a(i, i) = 1;
    for (std::size_t j = 0; j < m; ++j) a(m - 1, j) = 1;
    a(m, m - 1) = 2;
    p.levels.emplace_back(a.apply(p.levels.back().entries()));
    p.matrices.push_back(std::move(a));
  }
  return p;
}

BratteliPrefix ex57a_left() {
  BratteliPrefix p;
  p.levels.push_back(DimensionVector{2, 1});
  for (std::size_t n = 0; n < kFixtureMatrices; ++n) {
    const std::size_t m = n + 2;
    MultiplicityMatrix a(m + 1, m);
    a(0, 0) = 2;
    for (std::size_t i = 1; i < m; ++i) a(i, i) = 1;
    for (std::size_t j = 0; j < m; ++j) a(m, j) = 1;
    p.levels.emplace_back(a.apply(p.levels.back().entries()));
    p.matrices.push_back(std::move(a));
  }
  return p;
}

BratteliPrefix ex57b() {
  BratteliPrefix p;
  p.levels.push_back(DimensionVector{1});
  for (std::size_t n = 0; n < kFixtureMatrices; ++n) {
    const std::size_t m = n + 1;
    MultiplicityMatrix a(m + 1, m);
    for (std::size_t i = 0; i < m; ++i) a(i, i) = 1;
    a(m, m - 1) = 2;
    p.levels.emplace_back(a.apply(p.levels.back().entries()));
    p.matrices.push_back(std::move(a));
  }
  return p;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"ex43", "ex44", "ex57A-left", "ex57A-right", "ex57B"};
  return names;
}

std::string fixture(std::string_view name) {
  if (name == "ex43") return emit_diagram(DiagramGenerator::constant_ones().prefix(kFixtureSteps));
  if (name == "ex44") {
    auto t = StationarySpec::geometric({Rational(1, 2)}, Rational(1, 2));
    std::vector<SimplexPoint> pts;
    for (std::size_t n = 0; n < kFixtureSteps; ++n) pts.push_back(stationary_targets(t, n));
    return emit_targets(pts);
  }
  if (name == "ex57A-left") return emit_diagram(ex57a_left());
  if (name == "ex57A-right") return emit_diagram(ex57a_right());
  if (name == "ex57B") return emit_diagram(ex57b());
  throw Error(ErrorCode::InvalidInput, "unknown fixture \"" + std::string(name) + "\"");
}

std::string export_dot(const BratteliPrefix& prefix) {
  require_valid(prefix);
  std::ostringstream os;
  os << "digraph bratteli {\n  rankdir=TB;\n  node [shape=circle];\n";
  for (std::size_t n = 0; n < prefix.depth(); ++n) {
    os << "  { rank=same;";
    for (std::size_t v = 0; v < prefix.width(n); ++v) os << " \"" << n << ":" << v << "\";";
    os << " }\n";
    for (std::size_t v = 0; v < prefix.width(n); ++v) {
      os << "  \"" << n << ":" << v << "\" [label=\"" << prefix.levels[n][v].get_str() << "\"];\n";
    }
  }
  for (std::size_t n = 0; n + 1 < prefix.depth(); ++n) {
    const auto& a = prefix.matrices[n];
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a(i, j) == 0) continue;
        os << "  \"" << n << ":" << j << "\" -> \"" << n + 1 << ":" << i << "\" [label=\""
           << a(i, j).get_str() << "\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  buf << file.rdbuf();
  return buf.str();
}

}  // namespace bratteli
