#include "bratteli/cli.hpp"

#include "bratteli/error.hpp"
#include "bratteli/ideals.hpp"
#include "bratteli/intertwine.hpp"
#include "bratteli/io.hpp"
#include "bratteli/k0.hpp"
#include "bratteli/rfd.hpp"
#include "bratteli/stationary.hpp"
#include "bratteli/synthesis.hpp"
#include "bratteli/traces.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace bratteli::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_integer(s));
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_rational(s));
  return out;
}

std::vector<Seed> parse_seeds(const std::string& text) {
  std::vector<Seed> out;
  for (const auto& item : split(text, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::InvalidInput, "seed \"" + item + "\" must look like level:vertex");
    }
    auto level = parse_integer(item.substr(0, colon));
    auto vertex = parse_integer(item.substr(colon + 1));
    if (level < 0 || vertex < 0) throw Error(ErrorCode::InvalidInput, "negative seed index");
    out.emplace_back(level.get_ui(), vertex.get_ui());
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& v, const std::string& sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    if constexpr (std::is_same_v<T, Integer>) {
      os << v[i].get_str();
    } else {
      os << v[i];
    }
  }
  return os.str();
}

ordered_json integers_json(const std::vector<Integer>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p()) a.push_back(x.get_si());
    else a.push_back(x.get_str());
  }
  return a;
}

ordered_json rationals_json(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(to_fraction_string(x));
  return a;
}

ordered_json profile_json(const IdealProfile& p) {
  ordered_json a = ordered_json::array();
  for (const auto& level : p.T) a.push_back(level);
  return a;
}

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

BratteliPrefix load_prefix(Context& ctx, const std::string& path, std::optional<std::size_t> steps) {
  return to_prefix(parse_diagram(read_input(path, ctx.in)), steps);
}

std::optional<RfdWitness> ji_witness(const BratteliPrefix& prefix) {
  auto v = check_rfd_ji(prefix, RfdMode::Strict);
  if (v.consistent()) return v.witness();
  v = check_rfd_ji(prefix, RfdMode::UpToPermutation);
  if (v.consistent()) return v.witness();
  return std::nullopt;
}

IdealProfile resolve_profile(const BratteliPrefix& prefix, const std::string& name,
                             const std::string& seeds) {
  if (!name.empty() && !seeds.empty()) {
    throw Error(ErrorCode::InvalidInput, "give either --profile or --seeds, not both");
  }
  if (name.empty()) return close(prefix, parse_seeds(seeds));
  if (name == "zero") return IdealProfile::zero(prefix);
  if (name == "co-last-column") {
    IdealProfile p;
    for (std::size_t n = 0; n < prefix.depth(); ++n) {
      std::vector<std::size_t> s;
      for (std::size_t v = 0; v + 1 < prefix.width(n); ++v) s.push_back(v);
      p.T.push_back(std::move(s));
    }
    if (auto bad = check_profile(prefix, p)) {
      throw Error(ErrorCode::InvalidInput, "co-last-column is not an ideal here: " + *bad);
    }
    return p;
  }
  if (name.rfind("ker:", 0) == 0) {
    const auto j = parse_integer(name.substr(4));
    auto w = ji_witness(prefix);
    if (!w) throw Error(ErrorCode::Precondition, "ker:j needs an RFD-JI consistent prefix");
    for (auto& p : primitive_profiles(prefix, *w)) {
      if (Integer(static_cast<unsigned long>(p.line)) == j) return p.profile;
    }
    throw Error(ErrorCode::OutOfRange, "no persistent line " + j.get_str());
  }
  throw Error(ErrorCode::InvalidInput, "unknown profile \"" + name +
                                           "\" (expected zero, co-last-column or ker:j)");
}

std::string sizes_string(const BratteliPrefix& q) {
  std::ostringstream os;
  for (std::size_t n = 0; n < q.depth(); ++n) {
    if (n) os << " ";
    os << "(" << join(q.levels[n].entries()) << ")";
  }
  return os.str();
}

TailBound parse_tail(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3 || parts[0] != "geometric") {
    throw Error(ErrorCode::InvalidInput, "tail must look like geometric:r or geometric:r:scale");
  }
  TailBound t{parse_rational(parts[1]), parts.size() == 3 ? parse_rational(parts[2]) : Rational(1)};
  if (t.ratio < 0 || t.ratio >= 1 || t.scale < 0) {
    throw Error(ErrorCode::InvalidInput, "tail needs 0 <= r < 1 and a non-negative scale");
  }
  return t;
}

// ---------------------------------------------------------------- check-rfd

int cmd_check_rfd(Context& ctx, const std::string& file, const std::string& mode_name, bool ji,
                  bool as_json, std::optional<std::size_t> steps) {
  const auto prefix = load_prefix(ctx, file, steps);
  RfdMode mode;
  if (mode_name == "strict") mode = RfdMode::Strict;
  else if (mode_name == "perm") mode = RfdMode::UpToPermutation;
  else throw Error(ErrorCode::InvalidInput, "mode must be strict or perm");
  const auto verdict = ji ? check_rfd_ji(prefix, mode) : check_rfd(prefix, mode);
  const std::string property = ji ? "RFD-JI" : "RFD";
  if (as_json) {
    ordered_json j;
    j["property"] = property;
    j["mode"] = mode_name;
    j["depth"] = prefix.depth();
    if (verdict.consistent()) {
      const auto& w = verdict.witness();
      j["verdict"] = "Consistent";
      j["r"] = w.r;
      j["order"] = w.order;
      j["kseq"] = integers_json(w.kseq);
    } else {
      const auto& v = verdict.violation();
      j["verdict"] = "Violation";
      j["level"] = v.level;
      j["reason_level"] = v.reason_level;
      j["reason"] = v.reason;
    }
    ctx.out << j.dump() << "\n";
  } else if (verdict.consistent()) {
    const auto& w = verdict.witness();
    ctx.out << property << ": Consistent at depth " << prefix.depth() << "\n";
    ctx.out << "r = (" << join(w.r) << ")\n";
    ctx.out << "k = (" << join(w.kseq) << ")\n";
    ctx.out << "note: a finite prefix is evidence only; it does not certify the infinite diagram\n";
  } else {
    const auto& v = verdict.violation();
    ctx.out << property << ": Violation at level " << v.level << ": " << v.reason << "\n";
  }
  return verdict.consistent() ? kOk : kNegative;
}

// ---------------------------------------------------------------- ideals

struct IdealsArgs {
  std::string action, file, seeds, profile, dot;
  bool json = false;
  std::optional<std::size_t> steps;
};

int cmd_ideals(Context& ctx, const IdealsArgs& a) {
  const auto prefix = load_prefix(ctx, a.file, a.steps);
  const std::size_t depth = prefix.depth();

  if (a.action == "close") {
    if (a.seeds.empty()) throw Error(ErrorCode::InvalidInput, "close needs --seeds");
    auto p = close(prefix, parse_seeds(a.seeds));
    if (a.json) ctx.out << ordered_json{{"profile", profile_json(p)}}.dump() << "\n";
    else ctx.out << p.to_string() << "\n";
    return kOk;
  }
  if (a.action == "quotient") {
    auto p = resolve_profile(prefix, a.profile, a.seeds);
    auto q = quotient(prefix, p);
    if (!a.dot.empty()) {
      std::ofstream f(a.dot);
      if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + a.dot);
      f << export_dot(q);
    }
    if (a.json) {
      ctx.out << emit_diagram(q);
    } else {
      ctx.out << "quotient sizes: " << sizes_string(q) << "\n";
      ctx.out << "stabilizes at level " << stabilization_level(q) << "\n";
    }
    return kOk;
  }
  if (a.action == "enumerate") {
    auto all = enumerate_ideals(prefix);
    if (a.json) {
      ordered_json arr = ordered_json::array();
      for (const auto& p : all) arr.push_back(profile_json(p));
      ctx.out << ordered_json{{"depth", depth}, {"profiles", arr}}.dump() << "\n";
    } else {
      for (const auto& p : all) ctx.out << p.to_string() << "\n";
      ctx.out << all.size() << " profiles at depth " << depth << "\n";
    }
    return kOk;
  }
  if (a.action == "primitive") {
    auto w = ji_witness(prefix);
    if (!w) {
      ctx.out << "not RFD-JI consistent at depth " << depth << "\n";
      return kNegative;
    }
    auto prims = primitive_profiles(prefix, *w);
    if (a.json) {
      ordered_json arr = ordered_json::array();
      for (const auto& p : prims) {
        arr.push_back({{"line", p.line},
                       {"k", p.k.fits_slong_p() ? ordered_json(p.k.get_si()) : ordered_json(p.k.get_str())},
                       {"first_level", p.first_level},
                       {"profile", profile_json(p.profile)}});
      }
      ctx.out << ordered_json{{"depth", depth}, {"primitive", arr}}.dump() << "\n";
    } else {
      ctx.out << "0 (zero ideal)\n";
      for (const auto& p : prims) {
        ctx.out << "ker(pi_" << p.line << "): quotient M_" << p.k.get_str() << " from level "
                << p.first_level << ", T = " << p.profile.to_string() << "\n";
      }
    }
    return kOk;
  }
  if (a.action == "compact") {
    auto p = resolve_profile(prefix, a.profile, a.seeds);
    auto level = compact_generating_level(prefix, p);
    if (a.json) {
      ordered_json j{{"depth", depth}, {"compact", level.has_value()}};
      if (level) j["generating_level"] = *level;
      ctx.out << j.dump() << "\n";
    } else if (level) {
      ctx.out << "compact at depth " << depth << " (generated at level " << *level << ")\n";
    } else {
      ctx.out << "not compact at depth " << depth << "\n";
    }
    return level ? kOk : kNegative;
  }
  if (a.action == "ji-evidence") {
    auto w = ji_witness(prefix);
    if (!w) {
      ctx.out << "not RFD-JI consistent at depth " << depth << "\n";
      return kNegative;
    }
    auto r = just_infinite_evidence(prefix, *w);
    if (a.json) {
      ordered_json seeds = ordered_json::array();
      for (const auto& s : r.seeds) {
        ordered_json e{{"level", s.seed.first}, {"vertex", s.seed.second}, {"full", s.full}, {"pass", s.pass}};
        if (s.stabilizes_at) e["stabilizes_at"] = *s.stabilizes_at;
        seeds.push_back(e);
      }
      ctx.out << ordered_json{{"depth", depth}, {"vacuous", r.vacuous}, {"pass", r.pass}, {"seeds", seeds}}.dump()
              << "\n";
    } else {
      for (const auto& s : r.seeds) {
        ctx.out << "seed " << s.seed.first << ":" << s.seed.second << " ";
        if (s.full) ctx.out << "quotient zero";
        else ctx.out << "stabilizes at level " << *s.stabilizes_at;
        ctx.out << (s.pass ? " ok" : " FAIL") << "\n";
      }
      ctx.out << "evidence at depth " << depth << ": " << (r.vacuous ? "vacuous" : r.pass ? "pass" : "fail")
              << "\n";
    }
    return r.pass ? kOk : kNegative;
  }
  throw Error(ErrorCode::InvalidInput, "unknown ideals action \"" + a.action + "\"");
}

// ---------------------------------------------------------------- traces

struct TracesArgs {
  std::string action, file = "", point, stationary, family;
  std::optional<std::size_t> level, from, to, vertex, line;
  bool json = false;
};

void print_point(Context& ctx, const SimplexPoint& p, bool as_json, std::size_t level) {
  if (as_json) ctx.out << ordered_json{{"level", level}, {"point", rationals_json(p.coords())}}.dump() << "\n";
  else ctx.out << format_common_denominator(p.coords()) << "\n";
}

int cmd_traces(Context& ctx, const TracesArgs& a) {
  if (a.action == "zeta") {
    if (!a.level) throw Error(ErrorCode::InvalidInput, "zeta needs --level");
    auto file = parse_diagram(read_input(a.file, ctx.in));
    const auto* spec = std::get_if<TriangularSpec>(&file);
    if (!spec) throw Error(ErrorCode::InvalidInput, "zeta needs a triangular diagram");
    print_point(ctx, zeta(*spec, *a.level), a.json, *a.level);
    return kOk;
  }
  if (a.action == "limit-restrict") {
    if (!a.level || a.stationary.empty()) {
      throw Error(ErrorCode::InvalidInput, "limit-restrict needs --stationary and --level");
    }
    print_point(ctx, limit_trace_restriction(StationarySpec::parse(a.stationary), *a.level), a.json,
                *a.level);
    return kOk;
  }
  const auto prefix = load_prefix(ctx, a.file, std::nullopt);
  if (a.action == "push") {
    if (!a.from || !a.to) throw Error(ErrorCode::InvalidInput, "push needs --from and --to");
    SimplexPoint x;
    if (a.vertex) x = SimplexPoint::vertex(prefix.width(*a.from), *a.vertex);
    else if (!a.point.empty()) x = SimplexPoint(parse_rational_list(a.point));
    else throw Error(ErrorCode::InvalidInput, "push needs --point or --vertex");
    print_point(ctx, push_point(prefix, x, *a.from, *a.to), a.json, *a.to);
    return kOk;
  }
  if (a.action == "label") {
    auto w = ji_witness(prefix);
    if (!w) {
      ctx.out << "not RFD-JI consistent at depth " << prefix.depth() << "\n";
      return kNegative;
    }
    TraceLabel label;
    if (a.line) {
      label = label_trace(prefix, *w, LineDescriptor{*a.line});
    } else if (!a.stationary.empty()) {
      label = label_trace(prefix, *w, StationaryDescriptor{StationarySpec::parse(a.stationary)});
    } else if (!a.family.empty()) {
      std::ifstream probe;
      auto pts = parse_targets(read_input(a.family, ctx.in));
      label = label_trace(prefix, *w, FamilyDescriptor{std::move(pts)});
    } else {
      throw Error(ErrorCode::InvalidInput, "label needs --line, --stationary or --family");
    }
    if (a.json) ctx.out << ordered_json{{"label", label.to_string()}, {"reason", label.reason}}.dump() << "\n";
    else ctx.out << label.to_string() << " (" << label.reason << ")\n";
    return kOk;
  }
  throw Error(ErrorCode::InvalidInput, "unknown traces action \"" + a.action + "\"");
}

// ---------------------------------------------------------------- synthesize / classify

struct SynthArgs {
  std::string stationary, targets, certificate;
  std::size_t levels = 0;
  bool exact = false, reduced = false;
  std::string k0 = "1";
  std::optional<std::size_t> cap;
};

int cmd_synthesize(Context& ctx, const SynthArgs& a) {
  if (a.stationary.empty() == a.targets.empty()) {
    throw Error(ErrorCode::InvalidInput, "give exactly one of --stationary or --targets");
  }
  std::optional<TargetSequence> targets;
  if (!a.stationary.empty()) targets = TargetSequence::stationary(StationarySpec::parse(a.stationary));
  else targets = TargetSequence::explicit_list(parse_targets(read_input(a.targets, ctx.in)));
  SynthesisOptions opt;
  opt.mode = a.exact ? ApproxMode::Exact : ApproxMode::Approximate;
  opt.reduced = a.reduced;
  opt.k0 = parse_integer(a.k0);
  if (a.cap) opt.cap = *a.cap;
  auto result = synthesize(*targets, a.levels, opt);
  ctx.out << emit_diagram(result.spec);
  const bool ok = result.certificate.all_certified();
  if (!a.certificate.empty()) {
    std::ofstream f(a.certificate);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + a.certificate);
    f << emit_certificate(result.certificate, opt);
  } else {
    std::size_t fallbacks = 0;
    Rational worst = 0;
    for (const auto& l : result.certificate.levels) {
      fallbacks += l.fallback;
      if (l.gap_l1 * power(Rational(2), l.n) > worst) worst = l.gap_l1 * power(Rational(2), l.n);
    }
    ctx.err << "levels: " << a.levels << ", certified: " << (ok ? "yes" : "no")
            << ", max 2^n * gap_l1: " << to_fraction_string(worst)
            << ", exact-mode fallbacks: " << fallbacks << "\n";
  }
  return ok ? kOk : kNegative;
}

int cmd_classify(Context& ctx, const std::string& stationary, std::size_t depth, bool as_json) {
  auto t = StationarySpec::parse(stationary);
  auto c = classify_stationary(t, depth);
  if (as_json) {
    ordered_json j{{"verdict", to_string(c.kind)}};
    if (!c.coefficients.empty()) j["coefficients"] = rationals_json(c.coefficients);
    if (c.tail_ratio) j["tail_ratio"] = to_fraction_string(*c.tail_ratio);
    if (c.atom) j["atom"] = *c.atom;
    if (!c.partial_sums.empty()) j["partial_sums"] = rationals_json(c.partial_sums);
    ctx.out << j.dump() << "\n";
    return kOk;
  }
  ctx.out << to_string(c.kind);
  switch (c.kind) {
    case SimplexClass::Bauer: ctx.out << ": sum of t diverges; the simplex is Delta_infinity\n"; break;
    case SimplexClass::NonBauer:
      ctx.out << ": e_inf = " << format_reduced(c.coefficients);
      if (c.tail_ratio) ctx.out << " continuing with ratio " << to_fraction_string(*c.tail_ratio);
      ctx.out << "\n";
      break;
    case SimplexClass::Degenerate: ctx.out << ": single atom at index " << *c.atom << "\n"; break;
    case SimplexClass::Inconclusive:
      ctx.out << ": tail rule is not decidable; partial sums " << format_reduced(c.partial_sums) << "\n";
      break;
  }
  return kOk;
}

// ---------------------------------------------------------------- intertwine

struct IntertwineArgs {
  std::string action, file_a, file_b, tail, metric = "l1";
  std::optional<std::size_t> levels, level, vertex, depth;
  bool json = false;
};

int cmd_intertwine(Context& ctx, const IntertwineArgs& a) {
  if (a.file_a == "-" && a.file_b == "-") throw Error(ErrorCode::InvalidInput, "only one input may be stdin");
  IntertwiningData data;
  data.top = parse_map_sequence(read_input(a.file_a, ctx.in));
  data.bottom = parse_map_sequence(read_input(a.file_b, ctx.in));
  const std::size_t n = std::min(data.top.size(), data.bottom.size());
  const std::size_t use = a.levels.value_or(n);
  if (use > n) throw Error(ErrorCode::InsufficientPrefix, "only " + std::to_string(n) + " steps available");
  data.top.maps.resize(use);
  data.bottom.maps.resize(use);
  if (a.metric == "l1") data.metric = Metric::L1;
  else if (a.metric == "l2") data.metric = Metric::L2;
  else throw Error(ErrorCode::InvalidInput, "metric must be l1 or l2");
  if (!a.tail.empty()) data.tail = parse_tail(a.tail);

  if (a.action == "gaps") {
    auto g = gap_series(data, use);
    if (a.json) {
      ordered_json j{{"metric", a.metric}, {"gaps", rationals_json(g.gaps)},
                     {"partial_sums", rationals_json(g.partial_sums)}};
      if (data.tail) j["bound_respected"] = g.bound_respected;
      if (g.certificate) j["certificate"] = to_fraction_string(*g.certificate);
      ctx.out << j.dump() << "\n";
    } else {
      const char* what = data.metric == Metric::L1 ? "gap" : "squared gap";
      for (std::size_t j = 0; j < g.gaps.size(); ++j) {
        ctx.out << what << "[" << j << "] = " << to_fraction_string(g.gaps[j]) << "  partial sum "
                << to_fraction_string(g.partial_sums[j]) << "\n";
      }
      if (!data.tail) ctx.out << "no certificate (no tail bound given)\n";
      else if (g.certificate) ctx.out << "certificate: total <= " << to_fraction_string(*g.certificate) << "\n";
      else ctx.out << "no certificate: prefix gaps exceed the tail rule\n";
    }
    return data.tail && !g.bound_respected ? kNegative : kOk;
  }
  if (a.action == "estimate") {
    if (!a.level || !a.vertex || !a.depth) {
      throw Error(ErrorCode::InvalidInput, "estimate needs --level, --vertex and --depth");
    }
    auto e = limit_vertex_estimate(data, *a.level, *a.vertex, *a.depth);
    if (a.json) {
      ordered_json j{{"level", *a.level}, {"vertex", *a.vertex}, {"depth", *a.depth},
                     {"point", rationals_json(e.point.coords())}};
      if (e.error_bound) j["error_bound"] = to_fraction_string(*e.error_bound);
      ctx.out << j.dump() << "\n";
    } else {
      ctx.out << format_common_denominator(e.point.coords()) << "\n";
      if (e.error_bound) ctx.out << "error bound (l1): " << to_fraction_string(*e.error_bound) << "\n";
      else ctx.out << "no error bound (needs --tail and the l1 metric)\n";
    }
    return kOk;
  }
  throw Error(ErrorCode::InvalidInput, "unknown intertwine action \"" + a.action + "\"");
}

// ---------------------------------------------------------------- k0

int cmd_k0(Context& ctx, const std::string& action, const std::string& file, const std::string& x,
           const std::string& coords, std::optional<std::size_t> depth, bool as_json) {
  if (action == "positive") {
    if (x.empty()) throw Error(ErrorCode::InvalidInput, "positive needs --x");
    bool ok = positivity_check(K0Element{parse_integer_list(x), std::nullopt});
    ctx.out << (as_json ? ordered_json{{"positive", ok}}.dump() : std::string(ok ? "positive" : "not positive"))
            << "\n";
    return ok ? kOk : kNegative;
  }
  auto parsed = parse_diagram(read_input(file, ctx.in));
  const auto* spec = std::get_if<TriangularSpec>(&parsed);
  if (!spec) throw Error(ErrorCode::InvalidInput, "k0 commands need a triangular diagram");
  if (action == "check") {
    if (x.empty()) throw Error(ErrorCode::InvalidInput, "check needs --x");
    auto from = recurrence_check(*spec, parse_integer_list(x));
    if (as_json) {
      ordered_json j{{"holds", from.has_value()}};
      if (from) j["from"] = *from;
      ctx.out << j.dump() << "\n";
    } else if (from) {
      ctx.out << "recurrence holds from index " << *from << "\n";
    } else {
      ctx.out << "recurrence never holds through the prefix\n";
    }
    return from ? kOk : kNegative;
  }
  if (action == "witness") {
    if (coords.empty()) throw Error(ErrorCode::InvalidInput, "witness needs --coords");
    std::set<std::size_t> f;
    for (const auto& c : parse_integer_list(coords)) {
      if (c < 0) throw Error(ErrorCode::InvalidInput, "negative coordinate");
      f.insert(c.get_ui());
    }
    const std::size_t d = depth.value_or(f.empty() ? 1 : *f.rbegin() + 1);
    auto ws = nondegeneracy_witness(*spec, f, d);
    if (as_json) {
      ordered_json arr = ordered_json::array();
      for (const auto& w : ws) {
        arr.push_back({{"coordinate", w.coordinate}, {"x", integers_json(w.element.prefix)},
                       {"from", *w.element.eventual_from}});
      }
      ctx.out << ordered_json{{"witnesses", arr}}.dump() << "\n";
    } else {
      for (const auto& w : ws) {
        ctx.out << "e_" << w.coordinate << ": x = (" << join(w.element.prefix) << "), recurrence from "
                << *w.element.eventual_from << "\n";
      }
    }
    return kOk;
  }
  throw Error(ErrorCode::InvalidInput, "unknown k0 action \"" + action + "\"");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Context ctx{in, out, err};
  CLI::App app{"Exact computations with Bratteli diagrams of AF-algebras", "bratteli"};
  app.require_subcommand(1);
  int code = kOk;

  // check-rfd
  std::string rfd_file, rfd_mode = "strict";
  bool rfd_ji = false, rfd_json = false;
  std::optional<std::size_t> rfd_steps;
  auto* rfd = app.add_subcommand("check-rfd", "Check the (RFD) / (RFD-JI) block form on a prefix");
  rfd->add_option("file", rfd_file, "Diagram file or -")->required();
  rfd->add_option("--mode", rfd_mode, "strict or perm");
  rfd->add_flag("--ji", rfd_ji, "Require non-zero entries in every lower block");
  rfd->add_flag("--json", rfd_json);
  rfd->add_option("--steps", rfd_steps, "Use only this many steps");
  rfd->callback([&] { code = cmd_check_rfd(ctx, rfd_file, rfd_mode, rfd_ji, rfd_json, rfd_steps); });

  // ideals
  IdealsArgs ia;
  auto* ideals = app.add_subcommand("ideals", "Ideal profiles: close|quotient|enumerate|primitive|compact|ji-evidence");
  ideals->add_option("action", ia.action)->required()->check(
      CLI::IsMember({"close", "quotient", "enumerate", "primitive", "compact", "ji-evidence"}));
  ideals->add_option("file", ia.file, "Diagram file or -")->required();
  ideals->add_option("--seeds", ia.seeds, "Seeds as level:vertex,...");
  ideals->add_option("--profile", ia.profile, "zero, co-last-column or ker:j");
  ideals->add_option("--dot", ia.dot, "Write the quotient diagram as DOT");
  ideals->add_option("--steps", ia.steps, "Use only this many steps");
  ideals->add_flag("--json", ia.json);
  ideals->callback([&] { code = cmd_ideals(ctx, ia); });

  // traces
  TracesArgs ta;
  ta.file = "-";
  auto* traces = app.add_subcommand("traces", "Trace simplices: zeta|push|limit-restrict|label");
  traces->add_option("action", ta.action)->required()->check(
      CLI::IsMember({"zeta", "push", "limit-restrict", "label"}));
  traces->add_option("file", ta.file, "Diagram file or -");
  traces->add_option("--level", ta.level);
  traces->add_option("--from", ta.from);
  traces->add_option("--to", ta.to);
  traces->add_option("--point", ta.point, "Comma-separated rationals");
  traces->add_option("--vertex", ta.vertex);
  traces->add_option("--line", ta.line);
  traces->add_option("--stationary", ta.stationary);
  traces->add_option("--family", ta.family, "Targets file with the family");
  traces->add_flag("--json", ta.json);
  traces->callback([&] { code = cmd_traces(ctx, ta); });

  // synthesize
  SynthArgs sa;
  auto* synth = app.add_subcommand("synthesize", "Build a triangular diagram realizing target data");
  synth->add_option("--stationary", sa.stationary, "geometric:r, equal-to-k, atoms:.., inverse-square");
  synth->add_option("--targets", sa.targets, "Targets file or -");
  synth->add_option("--levels", sa.levels)->required();
  synth->add_flag("--exact", sa.exact);
  synth->add_flag("--reduced", sa.reduced);
  synth->add_option("--k0", sa.k0);
  synth->add_option("--cap", sa.cap, "Largest denominator tried in approximate mode");
  synth->add_option("--certificate", sa.certificate, "Write the certificate JSON here");
  synth->callback([&] { code = cmd_synthesize(ctx, sa); });

  // classify
  std::string cl_stationary;
  std::size_t cl_depth = 8;
  bool cl_json = false;
  auto* classify = app.add_subcommand("classify", "Bauer / non-Bauer verdict for a stationary sequence");
  classify->add_option("--stationary", cl_stationary)->required();
  classify->add_option("--depth", cl_depth);
  classify->add_flag("--json", cl_json);
  classify->callback([&] { code = cmd_classify(ctx, cl_stationary, cl_depth, cl_json); });

  // intertwine
  IntertwineArgs wa;
  auto* inter = app.add_subcommand("intertwine", "Approximate intertwining: gaps|estimate");
  inter->add_option("action", wa.action)->required()->check(CLI::IsMember({"gaps", "estimate"}));
  inter->add_option("fileA", wa.file_a)->required();
  inter->add_option("fileB", wa.file_b)->required();
  inter->add_option("--tail", wa.tail, "geometric:r[:scale]");
  inter->add_option("--metric", wa.metric, "l1 or l2");
  inter->add_option("--levels", wa.levels);
  inter->add_option("--level", wa.level);
  inter->add_option("--vertex", wa.vertex);
  inter->add_option("--depth", wa.depth);
  inter->add_flag("--json", wa.json);
  inter->callback([&] { code = cmd_intertwine(ctx, wa); });

  // k0
  std::string k_action, k_file = "-", k_x, k_coords;
  std::optional<std::size_t> k_depth;
  bool k_json = false;
  auto* k0 = app.add_subcommand("k0", "Dimension-group prefixes: check|witness|positive");
  k0->add_option("action", k_action)->required()->check(CLI::IsMember({"check", "witness", "positive"}));
  k0->add_option("file", k_file, "Triangular diagram file or -");
  k0->add_option("--x", k_x, "Comma-separated integers");
  k0->add_option("--coords", k_coords, "Comma-separated coordinate indices");
  k0->add_option("--depth", k_depth);
  k0->add_flag("--json", k_json);
  k0->callback([&] { code = cmd_k0(ctx, k_action, k_file, k_x, k_coords, k_depth, k_json); });

  // export
  std::string ex_file, ex_output;
  std::optional<std::size_t> ex_steps;
  auto* exp = app.add_subcommand("export", "Write a diagram as DOT");
  exp->add_option("file", ex_file)->required();
  exp->add_option("--steps", ex_steps);
  exp->add_option("--output", ex_output);
  exp->callback([&] {
    auto dot = export_dot(load_prefix(ctx, ex_file, ex_steps));
    if (ex_output.empty()) {
      ctx.out << dot;
    } else {
      std::ofstream f(ex_output);
      if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + ex_output);
      f << dot;
    }
  });

  // fixtures
  std::string fx_name;
  bool fx_list = false;
  auto* fx = app.add_subcommand("fixtures", "Print a built-in example file");
  fx->add_option("name", fx_name);
  fx->add_flag("--list", fx_list);
  fx->callback([&] {
    if (fx_list || fx_name.empty()) {
      for (const auto& n : fixture_names()) ctx.out << n << "\n";
      return;
    }
    ctx.out << fixture(fx_name);
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return code;
}

}  // namespace bratteli::cli
