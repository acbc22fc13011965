#include "dgw/groups.hpp"

#include <algorithm>
#include <ostream>

namespace dgw {
namespace {

// Greedy generating set of a finite group given as closure under `op`.
template <class Op>
std::vector<re_t> greedy_generators(const std::vector<re_t>& elems, re_t identity, re_t universe, Op op) {
  std::vector<char> in(universe, 0);
  std::vector<re_t> span{identity};
  in[identity] = 1;
  std::vector<re_t> gens;
  for (re_t x : elems) {
    if (in[x]) continue;
    gens.push_back(x);
    // Close the span under the generators found so far.
    for (std::size_t i = 0; i < span.size(); ++i)
      for (re_t g : gens) {
        const re_t y = op(span[i], g);
        if (!in[y]) {
          in[y] = 1;
          span.push_back(y);
        }
      }
  }
  return gens;
}

}  // namespace

Gl2::Gl2(TowerPtr tower) : tower_(std::move(tower)), n_(tower_->ring().size()) {}

code_t Gl2::conj(code_t g, code_t h) const { return encode(conjugate(ring(), decode(g), decode(h))); }

std::uint64_t Gl2::order_formula(int q) {
  const std::uint64_t Q = static_cast<std::uint64_t>(q);
  return Q * Q * Q * Q * (Q * Q - 1) * (Q * Q - Q);
}

std::uint64_t Gl2::order() const { return order_formula(q()); }

std::shared_ptr<const ClassTable> ClassTable::build(TowerPtr tower, Options opt) {
  if (tower->q() > opt.max_q)
    throw BudgetExceeded("class enumeration for q = " + std::to_string(tower->q()) + " exceeds the budget q <= " +
                         std::to_string(opt.max_q));
  std::shared_ptr<ClassTable> ct(new ClassTable(std::move(tower)));
  const Gl2& G = ct->group_;
  const LocalRing& R = G.ring();
  const std::uint32_t space = G.code_space();

  ct->class_of_.assign(space, -2);
  for (code_t c = 0; c < space; ++c)
    if (G.invertible(c)) {
      ct->class_of_[c] = -1;
      ct->elements_.push_back(c);
    }
  ct->order_ = ct->elements_.size();
  if (ct->order_ != G.order()) throw std::logic_error("GL_2(o_2) element count disagrees with the order formula");

  // Transvections over an additive generating set, diag(u, 1) over a unit
  // generating set, and the Weyl element.
  std::vector<re_t> all, units;
  for (re_t x = 1; x < R.size(); ++x) {
    all.push_back(x);
    if (R.is_unit(x)) units.push_back(x);
  }
  const auto add_gens = greedy_generators(all, 0, R.size(), [&](re_t a, re_t b) { return R.add(a, b); });
  const auto unit_gens = greedy_generators(units, 1, R.size(), [&](re_t a, re_t b) { return R.mul(a, b); });
  std::vector<Mat2> gens;
  for (re_t r : add_gens) {
    gens.push_back(mat2(1, r, 0, 1));
    gens.push_back(mat2(1, 0, r, 1));
  }
  for (re_t u : unit_gens) gens.push_back(mat2(u, 0, 0, 1));
  gens.push_back(mat2(0, 1, 1, 0));
  std::vector<Mat2> gens_inv;
  for (const Mat2& g : gens) {
    ct->generators_.push_back(G.encode(g));
    gens_inv.push_back(inverse(R, g));
  }

  std::vector<code_t> stack;
  for (code_t c : ct->elements_) {
    if (ct->class_of_[c] != -1) continue;
    const int id = static_cast<int>(ct->reps_.size());
    ct->reps_.push_back(c);
    std::uint64_t size = 0;
    ct->class_of_[c] = id;
    stack.assign(1, c);
    while (!stack.empty()) {
      const code_t h = stack.back();
      stack.pop_back();
      ++size;
      const Mat2 hm = G.decode(h);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const code_t k = G.encode(mul(R, mul(R, gens[i], hm), gens_inv[i]));
        if (ct->class_of_[k] == -1) {
          ct->class_of_[k] = id;
          stack.push_back(k);
        }
      }
    }
    ct->sizes_.push_back(size);
  }
  return ct;
}

void ClassTable::write_csv(std::ostream& os) const {
  os << "class_id,e11,e12,e21,e22,class_size\n";
  for (int c = 0; c < num_classes(); ++c) {
    const Mat2 m = group_.decode(reps_[c]);
    os << c << ',' << m.e[0] << ',' << m.e[1] << ',' << m.e[2] << ',' << m.e[3] << ',' << sizes_[c] << '\n';
  }
}

// ---------------------------------------------------------------------------

bool is_gl2_subgroup(SubgroupTag tag) {
  switch (tag) {
    case SubgroupTag::Z:
    case SubgroupTag::J1:
    case SubgroupTag::O2quadTimesJ1:
    case SubgroupTag::InertiaOfB:
    case SubgroupTag::O2quadUnits:
      return true;
    default:
      return false;
  }
}

bool contains(const Gl2& g, const SubgroupDescriptor& d, code_t x) {
  if (!g.invertible(x)) return false;
  const Tower& t = g.tower();
  const Mat2 m = g.decode(x);
  const Mat2 r = g.reduce(x);
  switch (d.tag) {
    case SubgroupTag::Z:
      return m(0, 1) == 0 && m(1, 0) == 0 && m(0, 0) == m(1, 1);
    case SubgroupTag::J1:
      return r == identity<2>();
    case SubgroupTag::O2quadTimesJ1: {
      const fe_t c[2] = {r(0, 0), r(1, 0)};
      return r == embed_fq2(t, t.fq2().from_coords(c));
    }
    case SubgroupTag::InertiaOfB:
      return mul(t.field(), r, d.B) == mul(t.field(), d.B, r);
    case SubgroupTag::O2quadUnits:
      return m == embed_quad(t, t.make(Level::Quad, {m(0, 0), m(1, 0), 0, 0}));
    default:
      throw std::invalid_argument("contains: subgroup is not inside GL_2(o_2)");
  }
}

bool contains(const Tower& t, const SubgroupDescriptor& d, const Mat4& x) {
  const LocalRing& R = t.ring();
  const Mat4 r = reduce(R, x);
  switch (d.tag) {
    case SubgroupTag::K1:
      return r == identity<4>();
    case SubgroupTag::P:
      return block(x, 1, 0) == Mat2{} && R.is_unit(det(R, block(x, 0, 0))) && R.is_unit(det(R, block(x, 1, 1)));
    case SubgroupTag::N:
      return block(x, 1, 0) == Mat2{} && block(x, 0, 0) == identity<2>() && block(x, 1, 1) == identity<2>();
    case SubgroupTag::T: {
      const fe_t c[4] = {r(0, 0), r(1, 0), r(2, 0), r(3, 0)};
      const fe_t u = t.fq4().from_coords(c);
      return u != 0 && r == embed_fq4(t, u);
    }
    default:
      throw std::invalid_argument("contains: subgroup is not inside GL_4(o_2)");
  }
}

std::vector<Mat2> centralizer_residues(const Field& f, const Mat2& B) {
  std::vector<Mat2> out;
  for (fe_t c0 = 0; c0 < f.size(); ++c0)
    for (fe_t c1 = 0; c1 < f.size(); ++c1) {
      const Mat2 m = add(f, scale(f, c0, identity<2>()), scale(f, c1, B));
      if (det(f, m) != 0) out.push_back(m);
    }
  return out;
}

std::vector<code_t> subgroup_members(const Gl2& g, const SubgroupDescriptor& d) {
  const Tower& t = g.tower();
  const LocalRing& R = g.ring();
  const fe_t q = t.field().size();
  std::vector<code_t> j1;
  for (code_t a = 0; a < q * q * q * q; ++a) {
    Mat2 A;
    code_t v = a;
    for (int i = 0; i < 4; ++i, v /= q) A.e[i] = v % q;
    j1.push_back(g.encode(add(R, identity<2>(), varpi(R, A))));
  }
  auto times_j1 = [&](const std::vector<Mat2>& heads) {
    std::vector<code_t> out;
    for (const Mat2& h : heads)
      for (code_t j : j1) out.push_back(g.encode(mul(R, h, g.decode(j))));
    return out;
  };
  std::vector<code_t> out;
  switch (d.tag) {
    case SubgroupTag::Z:
      for (re_t u = 0; u < R.size(); ++u)
        if (R.is_unit(u)) out.push_back(g.encode(mat2(u, 0, 0, u)));
      break;
    case SubgroupTag::J1:
      out = j1;
      break;
    case SubgroupTag::O2quadUnits:
      for (re_t c0 = 0; c0 < R.size(); ++c0)
        for (re_t c1 = 0; c1 < R.size(); ++c1) {
          const TowerElem u = t.make(Level::Quad, {c0, c1, 0, 0});
          if (t.is_unit(u)) out.push_back(g.encode(embed_quad(t, u)));
        }
      break;
    case SubgroupTag::O2quadTimesJ1: {
      std::vector<Mat2> heads;
      for (fe_t u = 1; u < t.fq2().size(); ++u) heads.push_back(embed_fq2(t, u));
      out = times_j1(heads);
      break;
    }
    case SubgroupTag::InertiaOfB:
      out = times_j1(centralizer_residues(t.field(), d.B));
      break;
    default:
      throw std::invalid_argument("subgroup_members: subgroup is not inside GL_2(o_2)");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void for_each_N(const Tower& t, const std::function<void(const Mat4&)>& f) {
  const std::uint32_t n = t.ring().size();
  const std::uint32_t total = n * n * n * n;
  for (std::uint32_t c = 0; c < total; ++c) {
    Mat2 X;
    std::uint32_t v = c;
    for (int i = 0; i < 4; ++i, v /= n) X.e[i] = v % n;
    f(from_blocks(identity<2>(), X, Mat2{}, identity<2>()));
  }
}

}  // namespace dgw
