#include "hyperval/ogroup.hpp"

#include "hyperval/errors.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace hv {

GroupElem GroupElem::zero(std::size_t n) { return GroupElem(Coords(n, 0)); }

GroupElem GroupElem::infinity(std::size_t n) {
  GroupElem g(Coords(n, 0));
  g.inf_ = true;
  return g;
}

GroupElem GroupElem::unit(std::size_t n, std::size_t i, std::int64_t s) {
  Coords c(n, 0);
  c[i] = s;
  return GroupElem(std::move(c));
}

bool GroupElem::is_zero() const {
  if (inf_) return false;
  for (auto v : c_)
    if (v != 0) return false;
  return true;
}

GroupElem GroupElem::prefix(std::size_t n) const {
  if (inf_) return infinity(n);
  return GroupElem(Coords(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
}

GroupElem GroupElem::padded(std::size_t n) const {
  GroupElem g = *this;
  g.c_.resize(n, 0);
  return g;
}

std::string GroupElem::str() const {
  if (inf_) return "inf";
  std::string s = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c_[i]);
  }
  return s + ")";
}

GroupElem operator+(const GroupElem& a, const GroupElem& b) {
  if (a.inf_ || b.inf_) return GroupElem::infinity(a.rank());
  GroupElem r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
  return r;
}

GroupElem operator-(const GroupElem& a) {
  if (a.inf_) return a;
  GroupElem r = a;
  for (auto& v : r.c_) v = -v;
  return r;
}

GroupElem operator-(const GroupElem& a, const GroupElem& b) { return a + (-b); }

GroupElem operator*(std::int64_t s, const GroupElem& a) {
  if (a.inf_) return a;
  GroupElem r = a;
  for (auto& v : r.c_) v *= s;
  return r;
}

std::strong_ordering operator<=>(const GroupElem& a, const GroupElem& b) {
  if (a.inf_ || b.inf_) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  for (std::size_t i = 0; i < a.c_.size() && i < b.c_.size(); ++i) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
  }
  return a.c_.size() <=> b.c_.size();
}

bool operator==(const GroupElem& a, const GroupElem& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::int64_t v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::Syntax, "bad integer in '" + std::string(whole) + "'");
  return v;
}

}  // namespace

GroupElem parse_group_elem(std::string_view text) {
  auto s = trim(text);
  if (s == "inf" || s == "oo") return GroupElem::infinity(0);
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw Error(ErrorCode::Syntax, "unbalanced group element '" + std::string(text) + "'");
    auto inner = trim(s.substr(1, s.size() - 2));
    GroupElem::Coords c;
    if (inner.empty()) return GroupElem(c);
    std::size_t start = 0;
    while (true) {
      auto comma = inner.find(',', start);
      c.push_back(parse_int(inner.substr(start, comma == std::string_view::npos ? inner.npos : comma - start), text));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return GroupElem(c);
  }
  return GroupElem{parse_int(s, text)};
}

InitialSegment InitialSegment::zero(std::size_t n) {
  InitialSegment r;
  r.kind_ = Kind::Zero;
  r.n_ = n;
  r.g_ = GroupElem::zero(n);
  return r;
}

InitialSegment InitialSegment::upto(const GroupElem& g) {
  if (g.is_inf()) throw Error(ErrorCode::Precondition, "UpTo bound must be finite");
  if (g < GroupElem::zero(g.rank())) throw Error(ErrorCode::Precondition, "UpTo bound must be >= 0");
  if (g.is_zero()) return zero(g.rank());
  InitialSegment r;
  r.kind_ = Kind::UpTo;
  r.g_ = g;
  r.n_ = g.rank();
  return r;
}

InitialSegment InitialSegment::cone(std::size_t n, std::size_t k) {
  if (k > n) throw Error(ErrorCode::Precondition, "cone index exceeds rank");
  if (k == 0) return zero(n);
  InitialSegment r;
  r.kind_ = Kind::Cone;
  r.k_ = k;
  r.n_ = n;
  r.g_ = GroupElem::zero(n);
  return r;
}

GroupElem InitialSegment::sup() const {
  if (kind_ == Kind::Cone) throw Error(ErrorCode::Precondition, "cone has no largest element");
  return g_;
}

std::string InitialSegment::str() const {
  switch (kind_) {
    case Kind::Zero: return "{0}";
    case Kind::UpTo: return "[0," + g_.str() + "]";
    case Kind::Cone: return "cone(" + std::to_string(k_) + ")";
  }
  return "";
}

bool operator==(const InitialSegment& a, const InitialSegment& b) {
  if (a.kind_ != b.kind_ || a.n_ != b.n_) return false;
  if (a.kind_ == InitialSegment::Kind::UpTo) return a.g_ == b.g_;
  if (a.kind_ == InitialSegment::Kind::Cone) return a.k_ == b.k_;
  return true;
}

InitialSegment parse_segment(std::string_view text, std::size_t n) {
  auto s = trim(text);
  if (s == "{0}" || s == "0") return InitialSegment::zero(n);
  if (s.starts_with("cone(") && s.ends_with(")")) {
    auto k = parse_int(s.substr(5, s.size() - 6), text);
    if (k < 0) throw Error(ErrorCode::Syntax, "negative cone index");
    return InitialSegment::cone(n, static_cast<std::size_t>(k));
  }
  if (s.starts_with("[")) {
    if (!s.ends_with("]")) throw Error(ErrorCode::Syntax, "unbalanced segment '" + std::string(text) + "'");
    auto inner = trim(s.substr(1, s.size() - 2));
    auto comma = inner.find(',');
    if (comma == std::string_view::npos || trim(inner.substr(0, comma)) != "0")
      throw Error(ErrorCode::Syntax, "segment must start at 0: '" + std::string(text) + "'");
    s = trim(inner.substr(comma + 1));
  }
  auto g = parse_group_elem(s);
  if (g.rank() != n) throw Error(ErrorCode::Syntax, "segment bound has wrong rank: '" + std::string(text) + "'");
  return InitialSegment::upto(g);
}

bool ConvexSubgroup::contains(const GroupElem& g) const {
  if (g.is_inf()) return false;
  for (std::size_t i = 0; i + k < n; ++i)
    if (g[i] != 0) return false;
  return true;
}

bool seg_contains(const InitialSegment& rho, const GroupElem& g) {
  if (g.is_inf() || g < GroupElem::zero(g.rank())) return false;
  switch (rho.kind()) {
    case InitialSegment::Kind::Zero: return g.is_zero();
    case InitialSegment::Kind::UpTo: return g <= rho.bound();
    case InitialSegment::Kind::Cone: return g.prefix(rho.rank() - rho.k()).is_zero();
  }
  return false;
}

bool gt_segment(const GroupElem& g, const InitialSegment& rho, const GroupElem& base) {
  if (g.is_inf()) return true;
  if (base.is_inf()) return false;
  GroupElem d = g - base;
  switch (rho.kind()) {
    case InitialSegment::Kind::Zero: return d > GroupElem::zero(d.rank());
    case InitialSegment::Kind::UpTo: return d > rho.bound();
    case InitialSegment::Kind::Cone: {
      std::size_t p = rho.rank() - rho.k();
      if (p == 0) return false;
      return d.prefix(p) > GroupElem::zero(p);
    }
  }
  return false;
}

bool seg_subset(const InitialSegment& r1, const InitialSegment& r2) {
  switch (r1.kind()) {
    case InitialSegment::Kind::Zero: return true;
    case InitialSegment::Kind::UpTo: return seg_contains(r2, r1.bound());
    case InitialSegment::Kind::Cone:
      switch (r2.kind()) {
        case InitialSegment::Kind::Zero: return false;
        case InitialSegment::Kind::UpTo:
          return gt_segment(r2.bound(), r1, GroupElem::zero(r1.rank()));
        case InitialSegment::Kind::Cone: return r1.k() <= r2.k();
      }
  }
  return false;
}

bool seg_set_equal(const InitialSegment& r1, const InitialSegment& r2) { return r1 == r2; }

bool seg_double_leq(const InitialSegment& r1, const InitialSegment& r2) {
  switch (r1.kind()) {
    case InitialSegment::Kind::Zero: return true;
    case InitialSegment::Kind::UpTo: return seg_contains(r2, 2 * r1.bound());
    case InitialSegment::Kind::Cone: return seg_subset(r1, r2);
  }
  return false;
}

GroupElem quotient_map(const GroupElem& g, const ConvexSubgroup& delta) {
  return g.prefix(delta.n - delta.k);
}

std::string Floor::str() const {
  if (base.is_inf()) return "inf";
  switch (rho.kind()) {
    case InitialSegment::Kind::Zero: return base.str();
    case InitialSegment::Kind::UpTo: return (rho.bound() + base).str();
    case InitialSegment::Kind::Cone: return base.str() + "+" + rho.str();
  }
  return "";
}

bool floor_leq(const Floor& a, const Floor& b) {
  if (b.base.is_inf()) return true;
  if (a.base.is_inf()) return false;
  const std::size_t n = a.base.rank();
  if (a.rho.kind() != InitialSegment::Kind::Cone) {
    return !gt_segment(a.rho.sup() + a.base, b.rho, b.base);
  }
  const std::size_t k1 = a.rho.k();
  if (b.rho.kind() != InitialSegment::Kind::Cone) {
    if (n == 0) return false;
    GroupElem next = b.rho.sup() + b.base + GroupElem::unit(n, n - 1);
    return gt_segment(next, a.rho, a.base);
  }
  const std::size_t k2 = b.rho.k();
  if (k2 == n) return true;
  if (k1 == n) return false;
  GroupElem d = b.base - a.base;
  if (k2 >= k1) return d.prefix(n - k2) >= GroupElem::zero(n - k2);
  return d.prefix(n - k1) > GroupElem::zero(n - k1);
}

}  // namespace hv
