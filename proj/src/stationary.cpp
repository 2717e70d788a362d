#include "bratteli/stationary.hpp"

#include "bratteli/error.hpp"

#include <sstream>

namespace bratteli {

namespace {

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

Rational sum_of(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

/// Tail is identically zero beyond the head.
bool finitely_supported(const StationarySpec& t) {
  switch (t.tail()) {
    case StationarySpec::Tail::Zero: return true;
    case StationarySpec::Tail::Geometric: return t.head().back() == 0 || t.ratio() == 0;
    case StationarySpec::Tail::EqualToK: return all_zero(t.head());
    case StationarySpec::Tail::Custom: return false;
  }
  return false;
}

}  // namespace

void StationarySpec::check() const {
  if (tail_ == Tail::Custom) return;
  if (head_.empty()) throw Error(ErrorCode::InvalidInput, "stationary head is empty");
  for (const auto& x : head_) {
    if (x < 0) throw Error(ErrorCode::InvalidInput, "negative stationary weight");
  }
  if (ratio_ < 0) throw Error(ErrorCode::InvalidInput, "negative geometric ratio");
  if (all_zero(head_)) {
    throw Error(ErrorCode::InvalidInput, "stationary sequence is identically zero");
  }
}

StationarySpec StationarySpec::atoms(std::vector<Rational> head) {
  StationarySpec s;
  s.tail_ = Tail::Zero;
  s.head_ = std::move(head);
  s.name_ = "atoms";
  s.check();
  return s;
}

StationarySpec StationarySpec::geometric(std::vector<Rational> head, Rational ratio) {
  StationarySpec s;
  s.tail_ = Tail::Geometric;
  s.head_ = std::move(head);
  s.ratio_ = std::move(ratio);
  s.name_ = "geometric";
  s.check();
  return s;
}

StationarySpec StationarySpec::equal_to_k(std::vector<Rational> head) {
  StationarySpec s;
  s.tail_ = Tail::EqualToK;
  s.head_ = std::move(head);
  s.name_ = "equal-to-k";
  s.check();
  return s;
}

StationarySpec StationarySpec::custom(std::string name, Generator rule) {
  StationarySpec s;
  s.tail_ = Tail::Custom;
  s.rule_ = std::move(rule);
  s.name_ = std::move(name);
  return s;
}

StationarySpec StationarySpec::parse(std::string_view text) {
  auto colon = text.find(':');
  std::string_view kind = text.substr(0, colon);
  std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "geometric") {
    if (arg.empty()) throw Error(ErrorCode::InvalidInput, "geometric needs a ratio, e.g. geometric:1/2");
    Rational r = parse_rational(arg);
    return geometric({r}, r);
  }
  if (kind == "equal-to-k" || kind == "k") return equal_to_k({Rational(1)});
  if (kind == "inverse-square") {
    return custom("inverse-square", [](std::size_t j) {
      Integer d = Integer(j + 1) * Integer(j + 1);
      return Rational(Integer(1), d);
    });
  }
  if (kind == "atoms") {
    std::vector<Rational> head;
    std::string s(arg);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) head.push_back(parse_rational(item));
    return atoms(std::move(head));
  }
  throw Error(ErrorCode::InvalidInput, "unknown stationary sequence '" + std::string(text) +
                                           "' (expected geometric:r, equal-to-k, atoms:a,b,.. or "
                                           "inverse-square)");
}

Rational StationarySpec::t(std::size_t j) const {
  if (tail_ == Tail::Custom) {
    Rational v = rule_(j);
    if (v < 0) throw Error(ErrorCode::InvalidInput, "custom rule produced a negative weight");
    return v;
  }
  if (j < head_.size()) return head_[j];
  const std::size_t last = head_.size() - 1;
  switch (tail_) {
    case Tail::Zero: return 0;
    case Tail::Geometric: return head_.back() * power(ratio_, j - last);
    case Tail::EqualToK: {
      Rational s = sum_of(head_);
      return s * power(Rational(2), j - last - 1);
    }
    case Tail::Custom: break;
  }
  return 0;
}

std::size_t StationarySpec::n0(std::size_t scan_limit) const {
  const std::size_t limit = tail_ == Tail::Custom ? scan_limit : head_.size();
  for (std::size_t j = 0; j < limit; ++j) {
    if (t(j) != 0) return j;
  }
  throw Error(ErrorCode::InvalidInput, "no non-zero weight found in stationary sequence");
}

SimplexPoint stationary_targets(const StationarySpec& t, std::size_t n) {
  std::vector<Rational> w(n + 1);
  for (std::size_t j = 0; j <= n; ++j) w[j] = t.t(j);
  if (all_zero(w)) {
    t.n0();  // throws if the whole sequence is zero
    return SimplexPoint::barycenter(n + 1);
  }
  return SimplexPoint::normalized(w);
}

std::string to_string(SimplexClass kind) {
  switch (kind) {
    case SimplexClass::Bauer: return "Bauer";
    case SimplexClass::NonBauer: return "NonBauer";
    case SimplexClass::Degenerate: return "Degenerate";
    case SimplexClass::Inconclusive: return "Inconclusive";
  }
  return "?";
}

StationaryClassification classify_stationary(const StationarySpec& t, std::size_t depth) {
  StationaryClassification out;
  if (t.tail() == StationarySpec::Tail::Custom) {
    out.kind = SimplexClass::Inconclusive;
    Rational s = 0;
    for (std::size_t j = 0; j < depth; ++j) {
      s += t.t(j);
      out.partial_sums.push_back(s);
    }
    return out;
  }

  if (finitely_supported(t)) {
    const auto& head = t.head();
    std::size_t atoms = 0, where = 0;
    for (std::size_t j = 0; j < head.size(); ++j) {
      if (head[j] != 0) {
        ++atoms;
        where = j;
      }
    }
    const Rational total = sum_of(head);
    const std::size_t len = std::max(depth, head.size());
    for (std::size_t j = 0; j < len; ++j) out.coefficients.push_back(t.t(j) / total);
    if (atoms == 1) {
      out.kind = SimplexClass::Degenerate;
      out.atom = where;
    } else {
      out.kind = SimplexClass::NonBauer;
    }
    return out;
  }

  if (t.tail() == StationarySpec::Tail::EqualToK ||
      (t.tail() == StationarySpec::Tail::Geometric && t.ratio() >= 1)) {
    out.kind = SimplexClass::Bauer;
    return out;
  }

  // Geometric with 0 < q < 1 and a non-zero last head entry.
  const auto& head = t.head();
  Rational total = 0;
  for (std::size_t j = 0; j + 1 < head.size(); ++j) total += head[j];
  total += head.back() / (Rational(1) - t.ratio());
  for (std::size_t j = 0; j < depth; ++j) out.coefficients.push_back(t.t(j) / total);
  out.tail_ratio = t.ratio();
  out.kind = SimplexClass::NonBauer;
  return out;
}

}  // namespace bratteli
