#include "hyperval/quotient.hpp"

#include "hyperval/errors.hpp"

#include <cctype>

namespace hv {

std::vector<std::string> default_vars(std::size_t n) {
  if (n == 1) return {"x"};
  if (n == 2) return {"y", "x"};
  if (n == 3) return {"z", "y", "x"};
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("t" + std::to_string(i + 1));
  return v;
}

std::string GroundSpec::name() const {
  std::string s = F.name() + "(";
  for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
  return s + ")";
}

GroundSpec parse_ground(std::string_view text) {
  auto number = [&](std::size_t& pos) -> std::uint64_t {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw Error(ErrorCode::Usage, "malformed ground field " + std::string(text));
    return std::stoull(std::string(text.substr(start, pos - start)));
  };
  if (text.empty()) throw Error(ErrorCode::Usage, "empty ground field");
  std::size_t pos = 1;
  BaseField F;
  std::size_t n = 1;
  if (text[0] == 'q' || text[0] == 'Q') {
    F = BaseField::rationals();
    if (pos < text.size()) n = number(pos);
  } else if (text[0] == 'f' || text[0] == 'F') {
    F = BaseField::prime(static_cast<std::uint32_t>(number(pos)));
    if (pos < text.size()) {
      if (text[pos] != 'r') throw Error(ErrorCode::Usage, "malformed ground field " + std::string(text));
      ++pos;
      n = number(pos);
    }
  } else {
    throw Error(ErrorCode::Usage, "unknown ground field " + std::string(text));
  }
  if (pos != text.size() || n == 0 || n > 6) throw Error(ErrorCode::Usage, "malformed ground field " + std::string(text));
  return {F, default_vars(n)};
}

QuotientField::QuotientField(GroundSpec ground, InitialSegment rho) : g_(std::move(ground)), rho_(std::move(rho)) {
  if (rho_.rank() != g_.rank()) throw Error(ErrorCode::Usage, "segment rank differs from the value group rank");
}

std::string QuotientField::name() const { return "H_" + rho_.str() + "(" + g_.name() + ")"; }

HyperElem QuotientField::from_window(const FieldSeries& w) const { return {id(), w}; }

HyperElem QuotientField::theta(const RatFunc& a) const { return from_window(theta_window(a, rho_)); }

HyperElem QuotientField::theta(const FieldSeries& a) const { return from_window(window(a, rho_)); }

const FieldSeries& QuotientField::rep(const HyperElem& a) const {
  check(a);
  return std::get<FieldSeries>(a.p);
}

HyperElem QuotientField::parse(std::string_view text) const { return theta(eval_rf(parse_rf(text, g_.vars), g_.F, g_.rank())); }

HyperElem QuotientField::zero() const { return from_window(FieldSeries(g_.F, g_.rank())); }

HyperElem QuotientField::one() const { return from_window(FieldSeries::constant(g_.F, g_.rank(), 1)); }

HyperElem QuotientField::mul(const HyperElem& a, const HyperElem& b) const { return theta(rep(a) * rep(b)); }

HyperElem QuotientField::inv(const HyperElem& a) const {
  const FieldSeries& r = rep(a);
  if (r.is_exact_zero()) throw Error(ErrorCode::ZeroDivision, "inverse of zero");
  const std::size_t n = g_.rank();
  if (r.terms().size() == 1)
    return from_window(FieldSeries::monomial(g_.F, n, -r.lead().e, g_.F.inv(r.lead().c)));
  if (rho_.kind() == InitialSegment::Kind::Cone)
    throw Error(ErrorCode::InsufficientPrecision, "inverse of a non-monomial class needs an infinite window");
  FieldSeries q = divide(FieldSeries::constant(g_.F, n, 1), r, window_cut(-r.val(), rho_));
  return theta(q);
}

HyperElem QuotientField::neg(const HyperElem& a) const { return from_window(-rep(a)); }

bool QuotientField::eq(const HyperElem& a, const HyperElem& b) const { return rep(a) == rep(b); }

bool QuotientField::is_zero(const HyperElem& a) const { return rep(a).is_exact_zero(); }

GroupElem QuotientField::val(const HyperElem& a) const { return rep(a).val(); }

SumSet QuotientField::add(const HyperElem& a, const HyperElem& b) const {
  FieldSeries w = rep(a) + rep(b);
  GroupElem m = std::min(val(a), val(b));
  Floor f{rho_, m};
  if (w.is_exact_zero() || f.exceeded_by(w.val())) return SumSet::zero_ball(zero(), f);
  HyperElem c = theta(w);
  if (w.val() == m) return SumSet::singleton(c);
  return SumSet::ball(c, f);
}

bool QuotientField::member_def(const HyperElem& x, const HyperElem& y, const HyperElem& z) const {
  FieldSeries d = rep(z) - (rep(x) + rep(y));
  if (d.is_exact_zero()) return true;
  GroupElem m = std::min({val(x), val(y), val(z)});
  return gt_segment(d.val(), rho_, m);
}

GroupElem QuotientField::dist(const HyperElem& a, const HyperElem& b) const {
  FieldSeries d = rep(a) - rep(b);
  if (d.is_exact_zero()) return GroupElem::infinity(g_.rank());
  return d.val();
}

bool QuotientField::ball_is_point(const HyperElem& w, const Floor& floor) const {
  return floor_leq(Floor{rho_, val(w)}, floor);
}

HyperElem QuotientField::monomial(const GroupElem& g) const {
  return from_window(FieldSeries::monomial(g_.F, g_.rank(), g, 1));
}

HyperElem QuotientField::sample(Rng& rng) const {
  if (rng.chance(1, 12)) return zero();
  return theta(random_rf(rng, g_.F, g_.rank(), !finite_window(rho_)));
}

bool finite_window(const InitialSegment& rho) {
  switch (rho.kind()) {
    case InitialSegment::Kind::Zero: return true;
    case InitialSegment::Kind::UpTo: return rho.bound().prefix(rho.rank() - 1).is_zero();
    case InitialSegment::Kind::Cone: return false;
  }
  return false;
}

std::vector<GroupElem> boundary_exponents(const Floor& floor, std::size_t n, Rng& rng) {
  std::vector<GroupElem> out;
  if (n == 0 || floor.base.is_inf()) return out;
  auto jitter = [&]() {
    GroupElem::Coords c(n, 0);
    for (auto& v : c) v = rng.uniform(-1, 1);
    return GroupElem(c);
  };
  const GroupElem last = GroupElem::unit(n, n - 1);
  if (floor.rho.kind() != InitialSegment::Kind::Cone) {
    GroupElem s = floor.rho.sup() + floor.base;
    out = {s, s + last, s + 2 * last, s - last, s + GroupElem::unit(n, 0), s + jitter()};
    return out;
  }
  const std::size_t p = n - floor.rho.k();
  auto tail = [&](GroupElem g) {
    GroupElem::Coords c = g.coords();
    for (std::size_t i = p; i < n; ++i) c[i] += rng.uniform(-2, 2);
    return GroupElem(c);
  };
  out = {tail(floor.base), tail(floor.base)};
  if (p > 0) {
    out.push_back(tail(floor.base + GroupElem::unit(n, p - 1)));
    out.push_back(tail(floor.base - GroupElem::unit(n, p - 1)));
  }
  return out;
}

HyperElem QuotientField::probe(const HyperElem& center, const Floor& floor, Rng& rng) const {
  auto es = boundary_exponents(floor, g_.rank(), rng);
  if (es.empty()) return sample(rng);
  const GroupElem& e = es[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(es.size()) - 1))];
  FieldSeries p = rep(center) + FieldSeries::monomial(g_.F, g_.rank(), e, g_.F.random_nonzero(rng));
  return theta(p);
}

std::string QuotientField::show(const HyperElem& a) const {
  const FieldSeries& r = rep(a);
  if (r.is_exact_zero()) return "0";
  return "[" + r.str(g_.vars) + "]";
}

QuotientPtr make_quotient(const GroundSpec& ground, const InitialSegment& rho) {
  return std::make_shared<QuotientField>(ground, rho);
}

QuotientView::QuotientView(HandlePtr H, InitialSegment rho) : H_(std::move(H)), rho_(std::move(rho)) {
  if (!H_->valued()) throw Error(ErrorCode::Unsupported, H_->name() + " carries no valuation");
}

std::string QuotientView::name() const { return "(" + H_->name() + ")_" + rho_.str(); }

HyperElem QuotientView::unwrap(const HyperElem& a) const {
  check(a);
  return {H_->id(), a.p};
}

HyperElem QuotientView::mul(const HyperElem& a, const HyperElem& b) const { return wrap(H_->mul(unwrap(a), unwrap(b))); }

HyperElem QuotientView::inv(const HyperElem& a) const { return wrap(H_->inv(unwrap(a))); }

HyperElem QuotientView::neg(const HyperElem& a) const { return wrap(H_->neg(unwrap(a))); }

bool QuotientView::eq(const HyperElem& a, const HyperElem& b) const {
  bool za = is_zero(a), zb = is_zero(b);
  if (za || zb) return za && zb;
  return gt_segment(H_->dist(unwrap(a), unwrap(b)), rho_, val(a));
}

SumSet QuotientView::add(const HyperElem& a, const HyperElem& b) const {
  SumSet s = H_->add(unwrap(a), unwrap(b));
  Floor f{rho_, std::min(val(a), val(b))};
  if (s.kind == SumSet::Kind::Empty) return s;
  if (s.kind == SumSet::Kind::ZeroBall || H_->is_zero(s.witness) || f.exceeded_by(H_->val(s.witness)))
    return SumSet::zero_ball(zero(), f);
  HyperElem w = wrap(s.witness);
  if (ball_is_point(w, f)) return SumSet::singleton(w);
  return SumSet::ball(w, f);
}

bool QuotientView::member_def(const HyperElem& x, const HyperElem& y, const HyperElem& z) const {
  SumSet s = H_->add(unwrap(x), unwrap(y));
  Floor f{rho_, std::min(val(x), val(y))};
  if (s.kind == SumSet::Kind::ZeroBall || H_->is_zero(s.witness)) return is_zero(z) || f.exceeded_by(val(z));
  return f.exceeded_by(H_->dist(unwrap(z), s.witness));
}

GroupElem QuotientView::dist(const HyperElem& a, const HyperElem& b) const {
  if (eq(a, b)) return GroupElem::infinity(value_rank());
  return H_->dist(unwrap(a), unwrap(b));
}

bool QuotientView::ball_is_point(const HyperElem& w, const Floor& floor) const {
  return floor_leq(Floor{rho_, val(w)}, floor);
}

HyperElem QuotientView::probe(const HyperElem& center, const Floor& floor, Rng& rng) const {
  return wrap(H_->probe(unwrap(center), floor, rng));
}

std::string QuotientView::show(const HyperElem& a) const { return H_->show(unwrap(a)) + "T"; }

QuotientProjection quotient_projection(const HandlePtr& H, const InitialSegment& rho) {
  if (!H->valued()) throw Error(ErrorCode::Unsupported, H->name() + " carries no valuation");
  auto same = [](const HyperElem& a) { return a; };
  if (seg_subset(H->norm(), rho)) return {H, same, same};
  if (auto q = std::dynamic_pointer_cast<const QuotientField>(H)) {
    auto Q = make_quotient(q->ground(), rho);
    return {Q, [q, Q](const HyperElem& a) { return Q->theta(q->rep(a)); },
            [q, Q](const HyperElem& a) { return q->theta(Q->rep(a)); }};
  }
  auto V = std::make_shared<QuotientView>(H, rho);
  return {V, [V](const HyperElem& a) { return V->wrap(a); }, [V](const HyperElem& a) { return V->unwrap(a); }};
}

HandlePtr quotient_valued(const HandlePtr& H, const InitialSegment& rho) { return quotient_projection(H, rho).target; }

}  // namespace hv
