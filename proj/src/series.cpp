#include "hyperval/series.hpp"

#include "hyperval/errors.hpp"

#include <algorithm>
#include <map>

namespace hv {

namespace {

constexpr std::size_t kDivisionSteps = 4096;

struct ExpLess {
  bool operator()(const GroupElem& a, const GroupElem& b) const { return a < b; }
};

}  // namespace

std::optional<GroupElem> min_prec(const std::optional<GroupElem>& a, const std::optional<GroupElem>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

FieldSeries FieldSeries::from_terms(BaseField F, std::size_t n, std::vector<Term> terms,
                                    std::optional<GroupElem> prec) {
  if (prec) std::erase_if(terms, [&](const Term& t) { return t.e >= *prec; });
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
  FieldSeries s(F, n);
  s.prec_ = std::move(prec);
  s.terms_.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size();) {
    mpq_class c = F.norm(terms[i].c);
    std::size_t j = i + 1;
    for (; j < terms.size() && terms[j].e == terms[i].e; ++j) c = F.add(c, terms[j].c);
    if (c != 0) s.terms_.push_back({std::move(terms[i].e), std::move(c)});
    i = j;
  }
  return s;
}

FieldSeries FieldSeries::monomial(BaseField F, std::size_t n, const GroupElem& e, const mpq_class& c) {
  return from_terms(F, n, {{e, c}});
}

FieldSeries FieldSeries::constant(BaseField F, std::size_t n, const mpq_class& c) {
  return monomial(F, n, GroupElem::zero(n), c);
}

GroupElem FieldSeries::val() const {
  if (!terms_.empty()) return terms_.front().e;
  if (prec_) throw Error(ErrorCode::IndistinguishableFromZero, "no known term below " + prec_->str());
  return GroupElem::infinity(n_);
}

GroupElem FieldSeries::val_bound() const {
  if (!terms_.empty()) return terms_.front().e;
  if (prec_) return *prec_;
  return GroupElem::infinity(n_);
}

const Term& FieldSeries::lead() const {
  if (terms_.empty()) throw Error(ErrorCode::IndistinguishableFromZero, "series has no leading term");
  return terms_.front();
}

mpq_class FieldSeries::coeff(const GroupElem& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const GroupElem& g) { return t.e < g; });
  if (it != terms_.end() && it->e == e) return it->c;
  return 0;
}

FieldSeries FieldSeries::truncated(const GroupElem& cut) const {
  FieldSeries s(F_, n_);
  s.prec_ = min_prec(prec_, cut);
  for (const auto& t : terms_)
    if (t.e < *s.prec_) s.terms_.push_back(t);
  return s;
}

FieldSeries FieldSeries::shifted(const GroupElem& e) const {
  FieldSeries s = *this;
  for (auto& t : s.terms_) t.e = t.e + e;
  if (s.prec_) s.prec_ = *s.prec_ + e;
  return s;
}

FieldSeries FieldSeries::scaled(const mpq_class& c) const {
  if (F_.is_zero(c)) return FieldSeries(F_, n_);
  FieldSeries s = *this;
  for (auto& t : s.terms_) t.c = F_.mul(t.c, c);
  return s;
}

FieldSeries FieldSeries::slice(const GroupElem& lo, const GroupElem& hi) const {
  FieldSeries s(F_, n_);
  for (const auto& t : terms_)
    if (t.e >= lo && t.e <= hi) s.terms_.push_back(t);
  return s;
}

std::string monomial_str(const GroupElem& e, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < e.rank(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] != 1) s += "^" + (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
  }
  return s;
}

namespace {

std::string render(const FieldSeries& a, const std::vector<std::string>* vars) {
  std::string s;
  for (const auto& t : a.terms()) {
    std::string c = a.field().str(t.c);
    bool neg = c.front() == '-';
    if (neg) c.erase(0, 1);
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    std::string m = vars ? monomial_str(t.e, *vars) : (t.e.is_zero() ? "" : "t^" + t.e.str());
    if (m.empty()) {
      s += c;
    } else {
      if (c != "1") s += c + "*";
      s += m;
    }
  }
  if (a.prec()) {
    std::string o = "O(t^" + a.prec()->str() + ")";
    s += s.empty() ? o : " + " + o;
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::string FieldSeries::str() const { return render(*this, nullptr); }
std::string FieldSeries::str(const std::vector<std::string>& vars) const { return render(*this, &vars); }

namespace {

// Merge of two sorted term lists, b scaled by sign.
std::vector<Term> merge_terms(const BaseField& F, const std::vector<Term>& a, const std::vector<Term>& b, int sign,
                              const std::optional<GroupElem>& prec) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto below = [&](const GroupElem& e) { return !prec || e < *prec; };
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].e < b[j].e)) {
      if (below(a[i].e)) out.push_back(a[i]);
      ++i;
    } else if (i == a.size() || b[j].e < a[i].e) {
      if (below(b[j].e)) out.push_back({b[j].e, sign > 0 ? b[j].c : F.neg(b[j].c)});
      ++j;
    } else {
      if (below(a[i].e)) {
        mpq_class c = sign > 0 ? F.add(a[i].c, b[j].c) : F.sub(a[i].c, b[j].c);
        if (c != 0) out.push_back({a[i].e, std::move(c)});
      }
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

FieldSeries operator+(const FieldSeries& a, const FieldSeries& b) {
  FieldSeries s(a.F_, a.n_);
  s.prec_ = min_prec(a.prec_, b.prec_);
  s.terms_ = merge_terms(a.F_, a.terms_, b.terms_, 1, s.prec_);
  return s;
}

FieldSeries operator-(const FieldSeries& a) {
  FieldSeries s = a;
  for (auto& t : s.terms_) t.c = a.F_.neg(t.c);
  return s;
}

FieldSeries operator-(const FieldSeries& a, const FieldSeries& b) {
  FieldSeries s(a.F_, a.n_);
  s.prec_ = min_prec(a.prec_, b.prec_);
  s.terms_ = merge_terms(a.F_, a.terms_, b.terms_, -1, s.prec_);
  return s;
}

FieldSeries operator*(const FieldSeries& a, const FieldSeries& b) {
  std::optional<GroupElem> prec;
  if (a.prec_) prec = *a.prec_ + b.val_bound();
  if (b.prec_) prec = min_prec(prec, *b.prec_ + a.val_bound());
  if (prec && prec->is_inf()) prec.reset();
  if (a.is_exact_zero() || b.is_exact_zero()) return FieldSeries(a.F_, a.n_);
  std::map<GroupElem, mpq_class, ExpLess> acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      GroupElem e = s.e + t.e;
      if (prec && e >= *prec) continue;
      mpq_class c = s.c * t.c;
      auto [it, fresh] = acc.try_emplace(e, c);
      if (!fresh) it->second += c;
    }
  }
  FieldSeries r(a.F_, a.n_);
  r.prec_ = prec;
  for (auto& [e, c] : acc) {
    mpq_class v = a.F_.norm(c);
    if (v != 0) r.terms_.push_back({e, v});
  }
  return r;
}

bool operator==(const FieldSeries& a, const FieldSeries& b) {
  if (a.prec_ != b.prec_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].e != b.terms_[i].e || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

FieldSeries divide(const FieldSeries& num, const FieldSeries& den, const GroupElem& cut) {
  if (!num.exact() || !den.exact()) throw Error(ErrorCode::Precondition, "divide expects exact operands");
  if (den.is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero series");
  const BaseField& F = num.field();
  const std::size_t n = num.rank();
  const Term& d0 = den.lead();
  mpq_class dinv = F.inv(d0.c);
  std::vector<Term> q;
  FieldSeries rem = num;
  for (std::size_t step = 0;; ++step) {
    if (rem.empty()) return FieldSeries::from_terms(F, n, std::move(q));
    const Term& r0 = rem.lead();
    GroupElem e = r0.e - d0.e;
    if (e >= cut) return FieldSeries::from_terms(F, n, std::move(q), cut);
    if (step >= kDivisionSteps)
      throw Error(ErrorCode::InsufficientPrecision, "expansion below " + cut.str() + " does not terminate");
    mpq_class c = F.mul(r0.c, dinv);
    q.push_back({e, c});
    rem = rem - den.shifted(e).scaled(c);
  }
}

GroupElem window_cut(const GroupElem& g, const InitialSegment& rho) {
  std::size_t n = g.rank();
  if (n == 0) return GroupElem::infinity(0);
  if (rho.kind() == InitialSegment::Kind::Cone)
    throw Error(ErrorCode::Unsupported, "cone windows have no finite cut");
  return g + rho.sup() + GroupElem::unit(n, n - 1);
}

FieldSeries window(const FieldSeries& a, const InitialSegment& rho) {
  if (a.is_exact_zero()) return FieldSeries(a.field(), a.rank());
  GroupElem g0 = a.val();
  if (a.prec() && !gt_segment(*a.prec(), rho, g0))
    throw Error(ErrorCode::InsufficientPrecision,
                "precision " + a.prec()->str() + " does not cover window " + rho.str() + " above " + g0.str());
  std::vector<Term> ts;
  for (const auto& t : a.terms())
    if (seg_contains(rho, t.e - g0)) ts.push_back(t);
  return FieldSeries::from_terms(a.field(), a.rank(), std::move(ts));
}

}  // namespace hv
