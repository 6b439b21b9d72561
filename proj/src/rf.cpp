#include "hyperval/rf.hpp"

#include "hyperval/errors.hpp"
#include "hyperval/rng.hpp"

#include <cctype>
#include <map>

namespace hv {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  RFExprPtr run() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::Syntax, msg + " at offset " + std::to_string(pos_), pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static RFExprPtr node(RFExpr::Op op, RFExprPtr l, RFExprPtr r) {
    auto e = std::make_shared<RFExpr>();
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  RFExprPtr expr() {
    auto e = term();
    while (true) {
      if (eat('+')) e = node(RFExpr::Op::Add, e, term());
      else if (eat('-')) e = node(RFExpr::Op::Sub, e, term());
      else return e;
    }
  }

  RFExprPtr term() {
    auto e = unary();
    while (true) {
      if (eat('*')) e = node(RFExpr::Op::Mul, e, unary());
      else if (eat('/')) e = node(RFExpr::Op::Div, e, unary());
      else return e;
    }
  }

  RFExprPtr unary() {
    if (eat('-')) return node(RFExpr::Op::Neg, unary(), nullptr);
    return factor();
  }

  RFExprPtr factor() {
    auto b = base();
    if (eat('^')) {
      skip();
      bool paren = eat('(');
      skip();
      bool neg = eat('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      std::int64_t k = std::stoll(std::string(s_.substr(start, pos_ - start)));
      if (paren && !eat(')')) fail("expected ')'");
      auto e = std::make_shared<RFExpr>();
      e->op = RFExpr::Op::Pow;
      e->lhs = b;
      e->exponent = neg ? -k : k;
      return e;
    }
    return b;
  }

  RFExprPtr base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      auto e = std::make_shared<RFExpr>();
      e->op = RFExpr::Op::Lit;
      e->lit = mpq_class(std::string(s_.substr(start, pos_ - start)));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) {
          auto e = std::make_shared<RFExpr>();
          e->op = RFExpr::Op::Var;
          e->var = i;
          return e;
        }
      }
      throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "' at offset " + std::to_string(start),
                  start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

RFExprPtr parse_rf(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).run();
}

std::string show_ast(const RFExprPtr& e, const std::vector<std::string>& vars) {
  switch (e->op) {
    case RFExpr::Op::Lit: return e->lit.get_str();
    case RFExpr::Op::Var: return vars[e->var];
    case RFExpr::Op::Add: return "Add(" + show_ast(e->lhs, vars) + "," + show_ast(e->rhs, vars) + ")";
    case RFExpr::Op::Sub: return "Sub(" + show_ast(e->lhs, vars) + "," + show_ast(e->rhs, vars) + ")";
    case RFExpr::Op::Mul: return "Mul(" + show_ast(e->lhs, vars) + "," + show_ast(e->rhs, vars) + ")";
    case RFExpr::Op::Div: return "Div(" + show_ast(e->lhs, vars) + "," + show_ast(e->rhs, vars) + ")";
    case RFExpr::Op::Neg: return "Neg(" + show_ast(e->lhs, vars) + ")";
    case RFExpr::Op::Pow: return "Pow(" + show_ast(e->lhs, vars) + "," + std::to_string(e->exponent) + ")";
  }
  return "";
}

RatFunc::RatFunc(FieldSeries num, FieldSeries den) {
  if (!num.exact() || !den.exact()) throw Error(ErrorCode::Precondition, "rational functions need exact parts");
  if (den.is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero rational function");
  const BaseField F = den.field();
  mpq_class lc = F.inv(den.lead().c);
  if (num.is_exact_zero()) {
    num_ = num;
    den_ = FieldSeries::constant(F, den.rank(), 1);
    return;
  }
  if (den.terms().size() == 1) {
    GroupElem e = den.lead().e;
    num_ = num.scaled(lc).shifted(-e);
    den_ = FieldSeries::constant(F, den.rank(), 1);
    return;
  }
  num_ = num.scaled(lc);
  den_ = den.scaled(lc);
}

RatFunc RatFunc::poly(FieldSeries p) {
  auto one = FieldSeries::constant(p.field(), p.rank(), 1);
  return RatFunc(std::move(p), std::move(one));
}

GroupElem RatFunc::val() const {
  if (is_zero()) return GroupElem::infinity(rank());
  return num_.val() - den_.val();
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

RatFunc RatFunc::pow(std::int64_t k) const {
  if (k < 0) {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return RatFunc(den_, num_).pow(-k);
  }
  RatFunc r = poly(FieldSeries::constant(field(), rank(), 1));
  RatFunc b = *this;
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

std::string RatFunc::str(const std::vector<std::string>& vars) const {
  if (den_.terms().size() == 1 && den_.lead().c == 1 && den_.lead().e.is_zero()) return num_.str(vars);
  return "(" + num_.str(vars) + ")/(" + den_.str(vars) + ")";
}

RatFunc eval_rf(const RFExprPtr& e, const BaseField& F, std::size_t n) {
  switch (e->op) {
    case RFExpr::Op::Lit: return RatFunc::poly(FieldSeries::constant(F, n, e->lit));
    case RFExpr::Op::Var:
      return RatFunc::poly(FieldSeries::monomial(F, n, GroupElem::unit(n, e->var), 1));
    case RFExpr::Op::Add: return eval_rf(e->lhs, F, n) + eval_rf(e->rhs, F, n);
    case RFExpr::Op::Sub: return eval_rf(e->lhs, F, n) - eval_rf(e->rhs, F, n);
    case RFExpr::Op::Mul: return eval_rf(e->lhs, F, n) * eval_rf(e->rhs, F, n);
    case RFExpr::Op::Div: return eval_rf(e->lhs, F, n) / eval_rf(e->rhs, F, n);
    case RFExpr::Op::Neg: return -eval_rf(e->lhs, F, n);
    case RFExpr::Op::Pow: return eval_rf(e->lhs, F, n).pow(e->exponent);
  }
  throw Error(ErrorCode::Precondition, "bad expression node");
}

FieldSeries expand(const RatFunc& a, const GroupElem& cut) { return divide(a.num(), a.den(), cut); }

FieldSeries expand(const RFExprPtr& e, const BaseField& F, std::size_t n, const GroupElem& cut) {
  return expand(eval_rf(e, F, n), cut);
}

FieldSeries theta_window(const RatFunc& a, const InitialSegment& rho) {
  if (a.is_zero()) return FieldSeries(a.field(), a.rank());
  if (rho.kind() == InitialSegment::Kind::Cone) {
    if (!a.is_laurent())
      throw Error(ErrorCode::InsufficientPrecision, "cone window of a non-Laurent element is infinite");
    return window(a.num(), rho);
  }
  return window(expand(a, window_cut(a.val(), rho)), rho);
}

namespace {

using Levels = std::map<std::int64_t, FieldSeries>;

Levels split_levels(const FieldSeries& p) {
  Levels out;
  const std::size_t n = p.rank();
  std::map<std::int64_t, std::vector<Term>> acc;
  for (const auto& t : p.terms()) {
    GroupElem::Coords c(t.e.coords().begin() + 1, t.e.coords().end());
    acc[t.e[0]].push_back({GroupElem(c), t.c});
  }
  for (auto& [k, ts] : acc) out.emplace(k, FieldSeries::from_terms(p.field(), n - 1, std::move(ts)));
  return out;
}

FieldSeries level_at(const Levels& l, std::int64_t k, const BaseField& F, std::size_t n) {
  auto it = l.find(k);
  return it == l.end() ? FieldSeries(F, n) : it->second;
}

}  // namespace

std::vector<std::pair<std::int64_t, RatFunc>> leading_levels(const RatFunc& a, std::size_t count) {
  if (a.rank() == 0) throw Error(ErrorCode::Precondition, "level split needs rank >= 1");
  std::vector<std::pair<std::int64_t, RatFunc>> out;
  if (a.is_zero()) return out;
  const BaseField F = a.field();
  const std::size_t m = a.rank() - 1;
  Levels N = split_levels(a.num());
  Levels D = split_levels(a.den());
  const std::int64_t nmin = N.begin()->first;
  const std::int64_t d = D.begin()->first;
  const FieldSeries& D0 = D.begin()->second;
  std::vector<FieldSeries> P;
  FieldSeries d0pow = FieldSeries::constant(F, m, 1);
  for (std::size_t k = 0; k < count; ++k) {
    FieldSeries pk = level_at(N, nmin + static_cast<std::int64_t>(k), F, m) * d0pow;
    FieldSeries d0j = FieldSeries::constant(F, m, 1);
    for (std::size_t j = 1; j <= k; ++j) {
      pk = pk - level_at(D, d + static_cast<std::int64_t>(j), F, m) * P[k - j] * d0j;
      d0j = d0j * D0;
    }
    P.push_back(pk);
    d0pow = d0pow * D0;
    if (!pk.is_exact_zero())
      out.emplace_back(nmin - d + static_cast<std::int64_t>(k), RatFunc(pk, d0pow));
  }
  return out;
}

RatFunc random_rf(Rng& rng, const BaseField& F, std::size_t n, bool laurent_only) {
  auto offset = [&]() {
    while (true) {
      GroupElem::Coords c(n, 0);
      for (auto& v : c) v = rng.uniform(-2, 2);
      GroupElem g(c);
      if (g.is_zero()) continue;
      return g < GroupElem::zero(n) ? -g : g;
    }
  };
  GroupElem::Coords c0(n, 0);
  for (auto& v : c0) v = rng.uniform(-2, 2);
  GroupElem g0(c0);
  std::vector<Term> num{{g0, F.random_nonzero(rng)}};
  std::int64_t extra = rng.uniform(0, 2);
  for (std::int64_t i = 0; i < extra; ++i) num.push_back({g0 + offset(), F.random_nonzero(rng)});
  auto p = FieldSeries::from_terms(F, n, num);
  if (laurent_only || rng.chance(1, 2)) return RatFunc::poly(p);
  std::vector<Term> den{{GroupElem::zero(n), mpq_class(1)}};
  den.push_back({offset(), F.random_nonzero(rng)});
  if (rng.chance(1, 3)) den.push_back({offset(), F.random_nonzero(rng)});
  auto q = FieldSeries::from_terms(F, n, den);
  if (q.is_exact_zero() || q.lead().e != GroupElem::zero(n)) return RatFunc::poly(p);
  return RatFunc(p, q);
}

}  // namespace hv
