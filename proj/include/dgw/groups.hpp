#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <vector>

#include "dgw/matrix.hpp"

namespace dgw {

/// A 2x2 o_2 matrix as a base-q^2 integer, most significant digit the (0,0)
/// entry. Code order is the canonical total order on GL_2(o_2).
using code_t = std::uint32_t;

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// GL_2(o_2) on codes.
class Gl2 {
 public:
  explicit Gl2(TowerPtr tower);

  const Tower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const { return tower_; }
  const LocalRing& ring() const { return tower_->ring(); }
  const Field& field() const { return tower_->field(); }
  int q() const { return tower_->q(); }

  code_t encode(const Mat2& m) const { return ((m.e[0] * n_ + m.e[1]) * n_ + m.e[2]) * n_ + m.e[3]; }
  Mat2 decode(code_t c) const {
    Mat2 m;
    for (int i = 3; i >= 0; --i, c /= n_) m.e[i] = c % n_;
    return m;
  }
  code_t mul(code_t x, code_t y) const { return encode(dgw::mul(ring(), decode(x), decode(y))); }
  code_t inv(code_t x) const { return encode(inverse(ring(), decode(x))); }
  code_t conj(code_t g, code_t h) const;  // g h g^{-1}
  code_t identity() const { return encode(dgw::identity<2>()); }
  bool invertible(code_t x) const { return ring().is_unit(det(ring(), decode(x))); }
  re_t det_of(code_t x) const { return det(ring(), decode(x)); }
  Mat2 reduce(code_t x) const { return dgw::reduce(ring(), decode(x)); }

  /// Number of codes (q^8) and of group elements.
  std::uint32_t code_space() const { return n_ * n_ * n_ * n_; }
  std::uint64_t order() const;

  /// q^4 (q^2 - 1)(q^2 - q).
  static std::uint64_t order_formula(int q);

 private:
  TowerPtr tower_;
  std::uint32_t n_;
};

/// Conjugacy classes of GL_2(o_2), found by orbit BFS under conjugation by a
/// generating set. Classes are numbered in order of their minimal code, which
/// is the representative.
class ClassTable {
 public:
  struct Options {
    int max_q = 7;
  };

  static std::shared_ptr<const ClassTable> build(TowerPtr tower, Options opt);
  static std::shared_ptr<const ClassTable> build(TowerPtr tower) { return build(std::move(tower), Options{}); }

  const Gl2& group() const { return group_; }
  const Tower& tower() const { return group_.tower(); }
  int num_classes() const { return static_cast<int>(reps_.size()); }
  code_t rep(int c) const { return reps_[c]; }
  std::uint64_t size(int c) const { return sizes_[c]; }
  std::uint64_t order() const { return order_; }
  int class_of(code_t g) const {
    const int c = class_of_[g];
    if (c < 0) throw std::invalid_argument("class_of: matrix is not invertible");
    return c;
  }
  /// All group elements in increasing code order.
  const std::vector<code_t>& elements() const { return elements_; }
  /// The generating set used for the BFS.
  const std::vector<code_t>& generators() const { return generators_; }
  int identity_class() const { return class_of(group_.identity()); }

  void write_csv(std::ostream& os) const;

 private:
  explicit ClassTable(TowerPtr tower) : group_(std::move(tower)) {}

  Gl2 group_;
  std::vector<std::int32_t> class_of_;
  std::vector<code_t> reps_;
  std::vector<std::uint64_t> sizes_;
  std::vector<code_t> elements_;
  std::vector<code_t> generators_;
  std::uint64_t order_ = 0;
};

using ClassTablePtr = std::shared_ptr<const ClassTable>;

enum class SubgroupTag { Z, K1, J1, P, N, T, O2quadTimesJ1, InertiaOfB, O2quadUnits };

struct SubgroupDescriptor {
  SubgroupTag tag = SubgroupTag::Z;
  Mat2 B;  // regular residue matrix, InertiaOfB only
};

/// True for tags naming subgroups of GL_2(o_2).
bool is_gl2_subgroup(SubgroupTag tag);

/// Membership predicate on GL_2(o_2).
bool contains(const Gl2& g, const SubgroupDescriptor& d, code_t x);
/// Membership predicate on GL_4(o_2) for K1, P, N, T.
bool contains(const Tower& t, const SubgroupDescriptor& d, const Mat4& x);

/// Constructive enumeration (sorted, no duplicates) of a GL_2(o_2) subgroup.
std::vector<code_t> subgroup_members(const Gl2& g, const SubgroupDescriptor& d);

/// Calls `f` on every element of N = {(I, X; 0, I)}, X in M_2(o_2).
void for_each_N(const Tower& t, const std::function<void(const Mat4&)>& f);

/// Elements of F_q[B] with nonzero determinant: the centralizer of a regular B in GL_2(F_q).
std::vector<Mat2> centralizer_residues(const Field& f, const Mat2& B);

}  // namespace dgw
