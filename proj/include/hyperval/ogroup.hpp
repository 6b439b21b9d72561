#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace hv {

// Element of Z^n with lexicographic order (first coordinate most significant),
// or the absorbing symbol infinity.
class GroupElem {
 public:
  using Coords = boost::container::small_vector<std::int64_t, 4>;

  GroupElem() = default;
  explicit GroupElem(Coords c) : c_(std::move(c)) {}
  GroupElem(std::initializer_list<std::int64_t> c) : c_(c.begin(), c.end()) {}

  static GroupElem zero(std::size_t n);
  static GroupElem infinity(std::size_t n);
  // s * e_i, where e_0 is the most significant unit vector.
  static GroupElem unit(std::size_t n, std::size_t i, std::int64_t s = 1);

  std::size_t rank() const { return c_.size(); }
  bool is_inf() const { return inf_; }
  bool is_zero() const;
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  const Coords& coords() const { return c_; }

  // First n coordinates (the coset representative modulo {0}^n x Z^(rank-n)).
  GroupElem prefix(std::size_t n) const;
  // Appends zero coordinates up to rank n.
  GroupElem padded(std::size_t n) const;

  std::string str() const;

  friend GroupElem operator+(const GroupElem& a, const GroupElem& b);
  friend GroupElem operator-(const GroupElem& a, const GroupElem& b);
  friend GroupElem operator-(const GroupElem& a);
  friend GroupElem operator*(std::int64_t s, const GroupElem& a);
  friend std::strong_ordering operator<=>(const GroupElem& a, const GroupElem& b);
  friend bool operator==(const GroupElem& a, const GroupElem& b);

 private:
  Coords c_;
  bool inf_ = false;
};

GroupElem parse_group_elem(std::string_view text);

// Nonempty initial segment of the nonnegative cone, in one of three closed forms.
class InitialSegment {
 public:
  enum class Kind { Zero, UpTo, Cone };

  InitialSegment() = default;
  static InitialSegment zero(std::size_t n);
  static InitialSegment upto(const GroupElem& g);
  static InitialSegment cone(std::size_t n, std::size_t k);

  Kind kind() const { return kind_; }
  const GroupElem& bound() const { return g_; }
  std::size_t k() const { return k_; }
  std::size_t rank() const { return n_; }
  // Largest element for Zero/UpTo kinds.
  GroupElem sup() const;

  std::string str() const;
  friend bool operator==(const InitialSegment& a, const InitialSegment& b);

 private:
  Kind kind_ = Kind::Zero;
  GroupElem g_;
  std::size_t k_ = 0;
  std::size_t n_ = 0;
};

InitialSegment parse_segment(std::string_view text, std::size_t n);

// The convex subgroup {0}^(n-k) x Z^k.
struct ConvexSubgroup {
  std::size_t n = 0;
  std::size_t k = 0;
  bool contains(const GroupElem& g) const;
  InitialSegment positive_part() const { return InitialSegment::cone(n, k); }
};

bool seg_contains(const InitialSegment& rho, const GroupElem& g);
bool gt_segment(const GroupElem& g, const InitialSegment& rho, const GroupElem& base);
bool seg_double_leq(const InitialSegment& r1, const InitialSegment& r2);
bool seg_subset(const InitialSegment& r1, const InitialSegment& r2);
bool seg_set_equal(const InitialSegment& r1, const InitialSegment& r2);
GroupElem quotient_map(const GroupElem& g, const ConvexSubgroup& delta);

// The threshold rho + base of a ball; g exceeds it when g > r + base for all r in rho.
struct Floor {
  InitialSegment rho;
  GroupElem base;
  bool exceeded_by(const GroupElem& g) const { return gt_segment(g, rho, base); }
  std::string str() const;
};

// True iff every element exceeding b also exceeds a.
bool floor_leq(const Floor& a, const Floor& b);

}  // namespace hv
