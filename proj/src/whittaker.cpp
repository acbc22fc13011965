#include "dgw/whittaker.hpp"

#include <algorithm>
#include <stdexcept>

#include "dgw/gl2_table.hpp"
#include "dgw/parallel.hpp"

namespace dgw {
namespace {

constexpr std::size_t kThetaTableLimit = 1u << 21;

// Entrywise varpi * m for an o_2 matrix.
template <int N>
Mat<N> varpi_times(const LocalRing& r, const Mat<N>& m) {
  Mat<N> z;
  for (int i = 0; i < N * N; ++i) z.e[i] = r.varpi(r.reduce(m.e[i]));
  return z;
}

std::vector<Mat2> all_residue_matrices(const Field& f) {
  const fe_t q = f.size();
  std::vector<Mat2> out;
  for (fe_t c = 0; c < q * q * q * q; ++c) {
    Mat2 m;
    fe_t v = c;
    for (int i = 0; i < 4; ++i, v /= q) m.e[i] = v % q;
    out.push_back(m);
  }
  return out;
}

std::vector<Mat2> residue_gl2(const Field& f) {
  std::vector<Mat2> out;
  for (const Mat2& m : all_residue_matrices(f))
    if (det(f, m) != 0) out.push_back(m);
  return out;
}

// All of M_2(o_2).
std::vector<Mat2> all_ring_matrices(const LocalRing& r) {
  const re_t n = r.size();
  std::vector<Mat2> out;
  for (std::uint32_t c = 0; c < n * n * n * n; ++c) {
    Mat2 m;
    std::uint32_t v = c;
    for (int i = 0; i < 4; ++i, v /= n) m.e[i] = v % n;
    out.push_back(m);
  }
  return out;
}

// Constant lift of A_{u,v} and its inverse ((I, 0), (-U, I)) over o_2.
std::pair<Mat4, Mat4> lift_delta(const LocalRing& r, const CosetRep& d) {
  const Mat4 a = A_uv(d.u, d.v);
  Mat4 inv = a;
  inv(2, 1) = r.neg(d.u);
  inv(3, 1) = r.neg(d.v);
  return {a, inv};
}

Mat4 block_upper(const Mat2& a, const Mat2& b, const Mat2& c) { return from_blocks(a, b, Mat2{}, c); }

bool is_residue_scalar(const LocalRing& r, const Mat2& g) {
  return r.reduce(g(0, 1)) == 0 && r.reduce(g(1, 0)) == 0 && r.reduce(g(0, 0)) == r.reduce(g(1, 1));
}

}  // namespace

// ---------------------------------------------------------------------------

PrimitiveCharacter::PrimitiveCharacter(TowerPtr tower, const RegularEllipticElement& x, long long c)
    : tower_(std::move(tower)), x_(x), c_(c) {
  const ExtField& E = tower_->fq4();
  residue_embed_.reserve(E.size());
  for (fe_t e = 0; e < E.size(); ++e) residue_embed_.push_back(embed_fq4(*tower_, e));
  const std::size_t n = tower_->ring().size();
  const std::size_t total = n * n * n * n;
  if (total <= kThetaTableLimit) {
    theta_table_.assign(total, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < total; ++k) {
      TowerElem u{Level::Quartic, {}};
      std::size_t v = k;
      for (int i = 0; i < 4; ++i, v /= n) u.c[i] = static_cast<re_t>(v % n);
      if (tower_->is_unit(u)) theta_table_[k] = theta_direct(u);
    }
  }
}

std::size_t PrimitiveCharacter::code(const TowerElem& u) const {
  const std::size_t n = tower_->ring().size();
  return ((static_cast<std::size_t>(u.c[3]) * n + u.c[2]) * n + u.c[1]) * n + u.c[0];
}

cplx PrimitiveCharacter::theta_direct(const TowerElem& u) const {
  const Tower& t = *tower_;
  const LocalRing& R = t.ring();
  const ExtField& E = t.fq4();
  const TowerElem tau = t.teichmuller(u);
  const TowerElem w = t.mul(t.inv(tau), u);
  std::array<fe_t, 4> a{};
  for (int i = 0; i < 4; ++i) a[i] = R.div_varpi(i == 0 ? R.sub(w.c[0], 1) : w.c[i]);
  const fe_t abar = E.from_coords(a);
  const long long order = static_cast<long long>(E.size()) - 1;
  return unit_root(c_ * E.log(t.reduce(u)), order) * R.psibar(E.trace(E.mul(x_.elem, abar)));
}

cplx PrimitiveCharacter::theta(const TowerElem& u0) const {
  const TowerElem u = tower_->coerce(u0, Level::Quartic);
  if (!tower_->is_unit(u)) throw std::domain_error("theta: argument is not a unit");
  return theta_table_.empty() ? theta_direct(u) : theta_table_[code(u)];
}

cplx PrimitiveCharacter::omega(re_t z) const { return theta(tower_->make(Level::Base, {z, 0, 0, 0})); }

bool PrimitiveCharacter::in_T(const Mat4& m) const {
  const LocalRing& R = tower_->ring();
  const fe_t c[4] = {R.reduce(m(0, 0)), R.reduce(m(1, 0)), R.reduce(m(2, 0)), R.reduce(m(3, 0))};
  const fe_t e = tower_->fq4().from_coords(c);
  return e != 0 && reduce(R, m) == residue_embed_[e];
}

cplx PrimitiveCharacter::phi_tilde(const Mat4& m) const {
  const Tower& t = *tower_;
  const LocalRing& R = t.ring();
  const Field& F = t.field();
  const ExtField& E = t.fq4();
  const TowerElem u{Level::Quartic, {m(0, 0), m(1, 0), m(2, 0), m(3, 0)}};
  const fe_t ub = t.reduce(u);
  if (ub == 0 || reduce(R, m) != residue_embed_[ub]) throw std::domain_error("phi_tilde: matrix is not in T");
  // m = E(u) (I + varpi A) with E(u) = embed(u), so m - E(u) = varpi E(u) A.
  const Mat4 eu = embed_quartic(t, u);
  Mat4 d;
  for (int i = 0; i < 16; ++i) d.e[i] = R.div_varpi(R.sub(m.e[i], eu.e[i]));
  const Mat4& w = residue_embed_[E.mul(x_.elem, E.inv(ub))];
  return theta(u) * R.psibar(trace(F, mul(F, w, d)));
}

cplx PrimitiveCharacter::phi_x(const Mat4& A) const {
  const Field& F = tower_->field();
  return tower_->ring().psibar(trace(F, mul(F, x_.mat, A)));
}

cplx phi_tilde_conj(const PrimitiveCharacter& chi, const CosetRep& d, const Mat4& y) {
  const LocalRing& R = chi.tower().ring();
  const auto [dh, dinv] = lift_delta(R, d);
  return chi.phi_tilde(mul(R, mul(R, dh, y), dinv));
}

// ---------------------------------------------------------------------------

WhittakerEngine::WhittakerEngine(ClassTablePtr table, const CosetGeometry& geometry, long long c)
    : table_(std::move(table)),
      geometry_(geometry),
      chi_(table_->group().tower_ptr(), geometry.x(), c),
      gl2_residue_(residue_gl2(table_->group().field())) {}

long long WhittakerEngine::dim_pi_delta(const CosetRep& d) const {
  const long long q = table_->group().q();
  if (d.is_identity()) return q * (q - 1);
  return d.nonvanishing() ? q * (q * q - 1) : 0;
}

long long WhittakerEngine::dim_by_count(const CosetRep& d) const {
  const Tower& t = table_->tower();
  const Field& F = t.field();
  std::vector<Mat2> torus;
  if (d.is_identity()) {
    for (fe_t e = 1; e < t.fq2().size(); ++e) torus.push_back(embed_fq2(t, e));
  } else {
    for (fe_t e = 1; e < F.size(); ++e) torus.push_back(mat2(e, 0, 0, e));
  }
  long long count = 0;
  for (const Mat2& g1 : gl2_residue_) {
    // g1 is the coset representative when it is minimal in its coset.
    const bool minimal =
        std::all_of(torus.begin(), torus.end(), [&](const Mat2& f) { return !(mul(F, f, g1) < g1); });
    if (!minimal) continue;
    const Mat2 target = mul(F, d.L, g1);
    count += std::count(gl2_residue_.begin(), gl2_residue_.end(), target);
  }
  return count;
}

int WhittakerEngine::residue_intersection_order(const CosetRep& d) const {
  const Tower& t = table_->tower();
  const Field& F = t.field();
  const Mat4 a = A_uv(d.u, d.v);
  Mat4 ainv = a;
  ainv(2, 1) = F.neg(d.u);
  ainv(3, 1) = F.neg(d.v);
  int n = 0;
  for (fe_t e = 1; e < t.fq4().size(); ++e)
    if (block(mul(F, mul(F, ainv, embed_fq4(t, e)), a), 1, 0) == Mat2{}) ++n;
  return n;
}

namespace {

// Conjugates R B R^{-1} over GL_2(F_q), with the intersection order.
struct J1Kernel {
  std::vector<Mat2> conj;
  double h = 1;
  cplx eval(const LocalRing& r, const Field& f, const Mat2& A) const {
    cplx s = 0;
    for (const Mat2& b : conj) s += r.psibar(trace(f, mul(f, b, A)));
    return s / h;
  }
};

J1Kernel j1_kernel(const Tower& t, const std::vector<Mat2>& gl2, const CosetRep& d) {
  if (!d.nonvanishing()) throw std::domain_error("character on J1 requires det L != 0");
  const Field& F = t.field();
  const long long q = t.q();
  J1Kernel k;
  k.h = d.is_identity() ? static_cast<double>(q * q - 1) : static_cast<double>(q - 1);
  for (const Mat2& r : gl2) k.conj.push_back(conjugate(F, r, d.calB));
  return k;
}

}  // namespace

cplx WhittakerEngine::theta_on_J1(const CosetRep& d, const Mat2& A) const {
  const Tower& t = table_->tower();
  return j1_kernel(t, gl2_residue_, d).eval(t.ring(), t.field(), A);
}

ClassFunction WhittakerEngine::theta_pi_delta_full(const CosetRep& d) const {
  if (!d.nonvanishing()) return ClassFunction::zero(table_);
  if (d.is_identity()) {
    ClassFunction induced = identity_piece_induced();
    const ClassFunction cases = identity_piece_by_cases();
    const double gap = induced.distance(cases);
    if (gap >= kTol)
      throw std::logic_error("identity piece: induced form and case formulas differ by " + std::to_string(gap));
    return induced;
  }
  const Tower& t = table_->tower();
  const LocalRing& R = t.ring();
  const J1Kernel k = j1_kernel(t, gl2_residue_, d);
  const Gl2& G = table_->group();
  return ClassFunction::from_function(table_, [&](code_t c) -> cplx {
    const Mat2 g = G.decode(c);
    if (!is_residue_scalar(R, g)) return 0.0;
    const re_t z = R.reduce(g(0, 0));
    const Mat2 kmat = scale(R, R.inv(z), g);
    return chi_.omega(z) * k.eval(R, t.field(), log_congruence(R, kmat));
  });
}

ClassFunction WhittakerEngine::identity_piece_induced() const {
  const Gl2& G = table_->group();
  const auto members = subgroup_members(G, {SubgroupTag::O2quadTimesJ1, {}});
  return induce(table_, members, [&](code_t c) {
    const Mat2 g = G.decode(c);
    return chi_.phi_tilde(from_blocks(g, Mat2{}, Mat2{}, g));
  });
}

std::vector<code_t> WhittakerEngine::normalizer() const {
  const Gl2& G = table_->group();
  const Tower& t = table_->tower();
  const Field& F = t.field();
  const LocalRing& R = t.ring();
  const Mat2 gen = embed_fq2(t, t.fq2().generator());
  std::vector<code_t> out;
  for (const Mat2& n : gl2_residue_) {
    const Mat2 c = conjugate(F, n, gen);
    const fe_t col[2] = {c(0, 0), c(1, 0)};
    if (c != embed_fq2(t, t.fq2().from_coords(col))) continue;
    for (const Mat2& a : all_residue_matrices(F)) out.push_back(G.encode(mul(R, n, add(R, identity<2>(), varpi(R, a)))));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ClassFunction WhittakerEngine::identity_piece_by_cases() const {
  const Gl2& G = table_->group();
  const Tower& t = table_->tower();
  const LocalRing& R = t.ring();
  const long long q = t.q();
  const ClassTable& ct = *table_;
  std::vector<code_t> witness(ct.num_classes(), 0);
  std::vector<char> has(ct.num_classes(), 0);
  for (code_t m : subgroup_members(G, {SubgroupTag::O2quadTimesJ1, {}})) {
    const int c = ct.class_of(m);
    if (!has[c]) {
      has[c] = 1;
      witness[c] = m;
    }
  }
  const CosetRep id = geometry_.rep(0, 0);
  const J1Kernel k = j1_kernel(t, gl2_residue_, id);
  const auto norm = normalizer();
  std::vector<Mat2> norm_m, norm_inv;
  for (code_t n : norm) {
    norm_m.push_back(G.decode(n));
    norm_inv.push_back(inverse(R, norm_m.back()));
  }
  const double scale_d = static_cast<double>(q * q * q * q * (q * q - 1));
  std::vector<cplx> values(ct.num_classes());
  parallel_for(values.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c) {
      const Mat2 g = G.decode(ct.rep(static_cast<int>(c)));
      if (is_residue_scalar(R, g)) {
        const re_t z = R.reduce(g(0, 0));
        values[c] = chi_.omega(z) * k.eval(R, t.field(), log_congruence(R, scale(R, R.inv(z), g)));
      } else if (!has[c]) {
        values[c] = 0.0;
      } else {
        const Mat2 h = G.decode(witness[c]);
        cplx s = 0;
        for (std::size_t i = 0; i < norm_m.size(); ++i) {
          const Mat2 y = mul(R, mul(R, norm_inv[i], h), norm_m[i]);
          s += chi_.phi_tilde(from_blocks(y, Mat2{}, Mat2{}, y));
        }
        values[c] = s / scale_d;
      }
    }
  });
  return ClassFunction(table_, std::move(values));
}

WhittakerEngine::Report WhittakerEngine::assemble() const {
  Report r;
  r.total = ClassFunction::zero(table_);
  for (const CosetRep& d : geometry_.omega0()) {
    Piece p;
    p.delta = d;
    p.dim = dim_pi_delta(d);
    p.dim_count = dim_by_count(d);
    p.residue_intersection = residue_intersection_order(d);
    p.chi = theta_pi_delta_full(d);
    r.total += p.chi;
    r.pieces.push_back(std::move(p));
  }
  const long long q = table_->group().q();
  const long long want = q * q * q * (q - 1);
  if (round_exact(r.total.dim(), "dimension of pi_{N,psi}") != want)
    throw std::logic_error("pi_{N,psi} has dimension " + std::to_string(r.total.dim().real()) + ", expected " +
                           std::to_string(want));
  return r;
}

// ---------------------------------------------------------------------------

MackeyOracle::MackeyOracle(const PrimitiveCharacter& chi, const CosetRep& delta, int max_q)
    : chi_(chi), delta_(delta) {
  const Tower& t = chi.tower();
  if (t.q() > max_q)
    throw BudgetExceeded("Mackey oracle at q = " + std::to_string(t.q()) + " exceeds the budget q <= " +
                         std::to_string(max_q));
  const Field& F = t.field();
  const LocalRing& R = t.ring();
  std::tie(delta_hat_, delta_hat_inv_) = lift_delta(R, delta);
  const Mat4 dbar = A_uv(delta.u, delta.v);
  const Mat4 dbar_inv = reduce(R, delta_hat_inv_);

  // Residue intersection H = delta^{-1} F_{q^4}^x delta cap P.
  std::vector<Mat4> h;
  for (fe_t e = 1; e < t.fq4().size(); ++e) {
    const Mat4 m = mul(F, mul(F, dbar_inv, embed_fq4(t, e)), dbar);
    if (block(m, 1, 0) == Mat2{}) h.push_back(m);
  }
  h_order_ = static_cast<int>(h.size());

  // Left cosets gamma H of the residue parabolic, represented by their minimum.
  const auto gl2 = residue_gl2(F);
  const auto m2 = all_residue_matrices(F);
  for (const Mat2& S : gl2)
    for (const Mat2& Q : m2)
      for (const Mat2& Rm : gl2) {
        const Mat4 g = block_upper(S, Q, Rm);
        const bool minimal = std::all_of(h.begin(), h.end(), [&](const Mat4& x) { return !(mul(F, g, x) < g); });
        if (minimal) transversal_.push_back({S, Q, Rm});
      }
}

bool MackeyOracle::in_residue_torus(const Mat4& m) const { return chi_.in_T(m); }

cplx MackeyOracle::value(const Mat2& g) const {
  const Tower& t = chi_.tower();
  const Field& F = t.field();
  const LocalRing& R = t.ring();
  if (!R.is_unit(det(R, g))) throw std::invalid_argument("Mackey oracle: argument is not invertible");
  const Mat2 ginv = inverse(R, g);
  const Mat2 gbar = reduce(R, g);
  const auto residues = all_residue_matrices(F);
  const Mat4 dbar = reduce(R, delta_hat_);
  const Mat4 dbar_inv = reduce(R, delta_hat_inv_);

  std::vector<cplx> partial(transversal_.size());
  parallel_for(transversal_.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const PBar& p = transversal_[i];
      // gamma over o_2 is the constant lift; its inverse is computed over o_2.
      const Mat4 gam = block_upper(p.S, p.Q, p.R);
      const Mat2 sinv = inverse(R, p.S), rinv = inverse(R, p.R);
      const Mat4 gam_inv = block_upper(sinv, neg(R, mul(R, mul(R, sinv, p.Q), rinv)), rinv);
      const Mat4 left_bar = mul(F, dbar, reduce(R, gam_inv));
      const Mat4 right_bar = mul(F, gam, dbar_inv);
      const Mat4 left = mul(R, delta_hat_, gam_inv);
      const Mat4 right = mul(R, gam, delta_hat_inv_);
      cplx s = 0;
      for (const Mat2& xbar : residues) {
        if (!in_residue_torus(mul(F, mul(F, left_bar, block_upper(gbar, xbar, gbar)), right_bar))) continue;
        for (const Mat2& x1 : residues) {
          const Mat2 X = add(R, xbar, varpi(R, x1));
          const Mat4 z = mul(R, mul(R, left, block_upper(g, X, g)), right);
          s += chi_.phi_tilde(z) * std::conj(R.psi0(trace(R, mul(R, X, ginv))));
        }
      }
      partial[i] = s;
    }
  });
  cplx total = 0;
  for (const cplx& v : partial) total += v;
  const double n = static_cast<double>(R.size());
  return total / (n * n * n * n);
}

// ---------------------------------------------------------------------------

cplx SubSums::x_sum(const PrimitiveCharacter& chi, const CosetRep& d, const Mat2& S, const Mat2& Rm) {
  const LocalRing& R = chi.tower().ring();
  const Mat2 sinv = inverse(R, S);
  cplx s = 0;
  for (const Mat2& a : all_residue_matrices(chi.tower().field())) {
    const Mat2 X = varpi(R, a);
    const Mat4 y = block_upper(identity<2>(), mul(R, mul(R, sinv, X), Rm), identity<2>());
    s += phi_tilde_conj(chi, d, y) * std::conj(R.psi0(trace(R, X)));
  }
  return s;
}

cplx SubSums::q_sum(const PrimitiveCharacter& chi, const CosetRep& d, const Mat2& S, const Mat2& Rm, const Mat2& A) {
  const LocalRing& R = chi.tower().ring();
  const Mat2 sinv = inverse(R, S), rinv = inverse(R, Rm);
  const Mat2 rar = mul(R, mul(R, rinv, A), Rm);
  cplx s = 0;
  for (const Mat2& Q : all_ring_matrices(R)) {
    const Mat2 inner = sub(R, mul(R, mul(R, sinv, A), Q), mul(R, mul(R, sinv, Q), rar));
    s += phi_tilde_conj(chi, d, block_upper(identity<2>(), varpi_times(R, inner), identity<2>()));
  }
  return s;
}

cplx SubSums::diagonal_value(const PrimitiveCharacter& chi, const CosetRep& d, const Mat2& S, const Mat2& Rm,
                             const Mat2& A) {
  const LocalRing& R = chi.tower().ring();
  const Mat2 wa = varpi_times(R, A);
  const Mat2 top = add(R, identity<2>(), mul(R, mul(R, inverse(R, S), wa), S));
  const Mat2 bot = add(R, identity<2>(), mul(R, mul(R, inverse(R, Rm), wa), Rm));
  return phi_tilde_conj(chi, d, from_blocks(top, Mat2{}, Mat2{}, bot));
}

cplx SubSums::jg_sum(const PrimitiveCharacter& chi, const Mat2& g, const Mat2& S, const Mat2& Rm) {
  const LocalRing& R = chi.tower().ring();
  const Field& F = chi.tower().field();
  const Mat2 sinv = inverse(R, S), rinv = inverse(R, Rm), ginv = inverse(R, g);
  const Mat2 rgr = mul(R, mul(R, rinv, g), Rm);
  const auto lifts = all_residue_matrices(F);
  cplx s = 0;
  for (const Mat2& Q : all_ring_matrices(R)) {
    // X mod varpi is forced: X R = Q R^{-1} g R - g Q.
    const Mat2 x0 = reduce(R, mul(R, sub(R, mul(R, Q, rgr), mul(R, g, Q)), rinv));
    for (const Mat2& x1 : lifts) {
      const Mat2 X = add(R, x0, varpi(R, x1));
      const Mat2 cond = sub(R, add(R, mul(R, g, Q), mul(R, X, Rm)), mul(R, Q, rgr));
      if (reduce(R, cond) != Mat2{}) throw std::logic_error("jg_sum: X does not satisfy the J(g) condition");
      const Mat2 y = mul(R, mul(R, sinv, ginv), cond);
      s += chi.phi_tilde(block_upper(identity<2>(), y, identity<2>())) *
           std::conj(R.psi0(trace(R, mul(R, X, ginv))));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

nlohmann::json whittaker_summary(const WhittakerEngine::Report& r, const PrimitiveCharacter& chi) {
  const Field& F = chi.tower().field();
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : r.pieces) {
    nlohmann::json j{{"u", p.delta.u},
                     {"v", p.delta.v},
                     {"det_L", p.delta.det_L},
                     {"dim", p.dim},
                     {"dim_by_count", p.dim_count},
                     {"residue_intersection", p.residue_intersection}};
    if (p.delta.nonvanishing()) {
      j["calB"] = p.delta.calB.e;
      j["calB_type"] = to_string(classify(F, p.delta.calB));
      j["character_dim"] = round_exact(p.chi.dim(), "piece dimension");
    }
    pieces.push_back(j);
  }
  return {{"x", chi.x().a},
          {"theta_c", chi.c()},
          {"pieces", pieces},
          {"dim", round_exact(r.total.dim(), "dimension")}};
}

}  // namespace dgw
