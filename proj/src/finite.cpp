#include "hyperval/finite.hpp"

#include "hyperval/errors.hpp"

#include <algorithm>
#include <map>

namespace hv {

FiniteHyperfield::FiniteHyperfield(std::string name, FiniteTable table) : name_(std::move(name)), t_(std::move(table)) {}

HyperElem FiniteHyperfield::elem(std::size_t i) const {
  if (i >= t_.size()) throw Error(ErrorCode::Precondition, "index out of carrier");
  return {id(), i};
}

std::size_t FiniteHyperfield::index(const HyperElem& a) const {
  check(a);
  return std::get<std::size_t>(a.p);
}

HyperElem FiniteHyperfield::find(const std::string& label) const {
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (t_.names[i] == label) return elem(i);
  throw Error(ErrorCode::Usage, "no element named " + label + " in " + name_);
}

HyperElem FiniteHyperfield::mul(const HyperElem& a, const HyperElem& b) const {
  return elem(t_.mul[index(a)][index(b)]);
}

HyperElem FiniteHyperfield::inv(const HyperElem& a) const {
  std::size_t i = index(a);
  if (i == t_.zero) throw Error(ErrorCode::ZeroDivision, "inverse of zero");
  for (std::size_t j = 0; j < t_.size(); ++j)
    if (t_.mul[i][j] == t_.one) return elem(j);
  return zero();
}

HyperElem FiniteHyperfield::neg(const HyperElem& a) const { return elem(t_.neg[index(a)]); }

bool FiniteHyperfield::eq(const HyperElem& a, const HyperElem& b) const { return index(a) == index(b); }

SumSet FiniteHyperfield::add(const HyperElem& a, const HyperElem& b) const {
  std::vector<HyperElem> out;
  for (std::size_t k : t_.add[index(a)][index(b)]) out.push_back(elem(k));
  return SumSet::enumerated(std::move(out));
}

std::vector<HyperElem> FiniteHyperfield::carrier() const {
  std::vector<HyperElem> out;
  for (std::size_t i = 0; i < t_.size(); ++i) out.push_back(elem(i));
  return out;
}

GroupElem FiniteHyperfield::val(const HyperElem& a) const {
  if (!t_.vals) return Hyperfield::val(a);
  return (*t_.vals)[index(a)];
}

InitialSegment FiniteHyperfield::norm() const {
  if (!t_.vals) return Hyperfield::norm();
  return t_.norm;
}

std::size_t FiniteHyperfield::value_rank() const { return t_.norm.rank(); }

std::string FiniteHyperfield::show(const HyperElem& a) const { return t_.names[index(a)]; }

FiniteTable krasner_K_table() {
  FiniteTable t;
  t.names = {"0", "1"};
  t.neg = {0, 1};
  t.mul = {{0, 0}, {0, 1}};
  t.add = {{{0}, {1}}, {{1}, {0, 1}}};
  return t;
}

FiniteTable krasner_S_table() {
  FiniteTable t;
  t.names = {"0", "1", "-1"};
  t.neg = {0, 2, 1};
  t.mul = {{0, 0, 0}, {0, 1, 2}, {0, 2, 1}};
  t.add = {{{0}, {1}, {2}}, {{1}, {1}, {0, 1, 2}}, {{2}, {0, 1, 2}, {2}}};
  return t;
}

FinitePtr krasner_K() { return std::make_shared<FiniteHyperfield>("K", krasner_K_table()); }
FinitePtr krasner_S() { return std::make_shared<FiniteHyperfield>("S", krasner_S_table()); }

FinitePtr field_as_hyperfield(const BaseField& F) {
  if (F.p == 0) throw Error(ErrorCode::Unsupported, "the carrier of Q is infinite");
  const std::size_t p = F.p;
  FiniteTable t;
  t.zero = 0;
  t.one = 1 % p;
  t.neg.resize(p);
  t.mul.assign(p, std::vector<std::size_t>(p));
  t.add.assign(p, std::vector<std::vector<std::size_t>>(p));
  for (std::size_t a = 0; a < p; ++a) {
    t.names.push_back(std::to_string(a));
    t.neg[a] = (p - a) % p;
    for (std::size_t b = 0; b < p; ++b) {
      t.mul[a][b] = (a * b) % p;
      t.add[a][b] = {(a + b) % p};
    }
  }
  return std::make_shared<FiniteHyperfield>(F.name(), std::move(t));
}

FinitePtr factor_hyperfield(const FiniteHyperfield& H, const std::vector<std::size_t>& T) {
  const FiniteTable& h = H.table();
  const std::size_t N = h.size();
  std::vector<bool> inT(N, false);
  for (std::size_t t : T) {
    if (t >= N) throw Error(ErrorCode::TNotSubgroup, "element outside the carrier");
    if (t == h.zero) throw Error(ErrorCode::TNotSubgroup, "0 is not a unit");
    inT[t] = true;
  }
  if (T.empty() || !inT[h.one]) throw Error(ErrorCode::TNotSubgroup, "T does not contain 1");
  for (std::size_t a : T)
    for (std::size_t b : T)
      if (!inT[h.mul[a][b]])
        throw Error(ErrorCode::TNotSubgroup,
                    h.names[a] + "*" + h.names[b] + "=" + h.names[h.mul[a][b]] + " is not in T");

  std::vector<std::size_t> cls(N, N);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < N; ++x) {
    if (cls[x] != N) continue;
    std::size_t c = reps.size();
    reps.push_back(x);
    if (x == h.zero) {
      cls[x] = c;
      continue;
    }
    for (std::size_t t : T) cls[h.mul[x][t]] = c;
  }
  const std::size_t M = reps.size();
  FiniteTable f;
  for (std::size_t r : reps) f.names.push_back("[" + h.names[r] + "]");
  f.zero = cls[h.zero];
  f.one = cls[h.one];
  f.neg.resize(M);
  f.mul.assign(M, std::vector<std::size_t>(M));
  f.add.assign(M, std::vector<std::vector<std::size_t>>(M));
  for (std::size_t a = 0; a < M; ++a) {
    f.neg[a] = cls[h.neg[reps[a]]];
    for (std::size_t b = 0; b < M; ++b) {
      f.mul[a][b] = cls[h.mul[reps[a]][reps[b]]];
      std::vector<std::size_t> s;
      std::vector<std::size_t> ys{reps[b]};
      if (reps[b] != h.zero) {
        ys.clear();
        for (std::size_t t : T) ys.push_back(h.mul[reps[b]][t]);
      }
      for (std::size_t y : ys)
        for (std::size_t z : h.add[reps[a]][y]) s.push_back(cls[z]);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      f.add[a][b] = std::move(s);
    }
  }
  std::string tn;
  for (std::size_t i = 0; i < T.size(); ++i) tn += (i ? "," : "") + h.names[T[i]];
  return std::make_shared<FiniteHyperfield>(H.name() + "/{" + tn + "}", std::move(f));
}

FinitePtr with_trivial_valuation(const FiniteHyperfield& H) {
  FiniteTable t = H.table();
  std::vector<GroupElem> v;
  for (std::size_t i = 0; i < t.size(); ++i) v.push_back(i == t.zero ? GroupElem::infinity(0) : GroupElem::zero(0));
  t.vals = std::move(v);
  t.norm = InitialSegment::zero(0);
  return std::make_shared<FiniteHyperfield>(H.name(), std::move(t));
}

}  // namespace hv
