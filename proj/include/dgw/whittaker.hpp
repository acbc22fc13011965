#pragma once

#include <vector>

#include <json.hpp>

#include "dgw/class_function.hpp"
#include "dgw/coset.hpp"

namespace dgw {

/// theta on O'_2^x: theta(tau(u) (1 + varpi a)) = zeta_{q^4-1}^{c log u~} psibar(Tr(x a~)),
/// with tau the Teichmuller lift, and its extension phi~_x to T = O'_2^x K^1.
class PrimitiveCharacter {
 public:
  PrimitiveCharacter(TowerPtr tower, const RegularEllipticElement& x, long long c);

  const Tower& tower() const { return *tower_; }
  const RegularEllipticElement& x() const { return x_; }
  long long c() const { return c_; }

  /// theta(u) for a unit u at any level (lower levels are coerced up).
  cplx theta(const TowerElem& u) const;
  /// theta restricted to o_2^x, the central character of pi.
  cplx omega(re_t z) const;
  /// Residue of m lies in the embedded F_{q^4}^x.
  bool in_T(const Mat4& m) const;
  /// phi~_x(m) for m in T; throws std::domain_error otherwise.
  cplx phi_tilde(const Mat4& m) const;
  /// phi_x(I + varpi A) = psibar(tr(x A)).
  cplx phi_x(const Mat4& A) const;

 private:
  cplx theta_direct(const TowerElem& u) const;
  std::size_t code(const TowerElem& u) const;

  TowerPtr tower_;
  RegularEllipticElement x_;
  long long c_;
  std::vector<Mat4> residue_embed_;  // embed_fq4 by F_{q^4} index
  std::vector<cplx> theta_table_;    // by quartic code, empty when too large
};

/// Characters of the pieces pi^delta_{N,psi} on GL_2(o_2).
class WhittakerEngine {
 public:
  WhittakerEngine(ClassTablePtr table, const CosetGeometry& geometry, long long c);

  const ClassTablePtr& table() const { return table_; }
  const CosetGeometry& geometry() const { return geometry_; }
  const PrimitiveCharacter& character() const { return chi_; }

  /// q(q-1) for delta = I, q(q^2-1) when det L != 0, else 0.
  long long dim_pi_delta(const CosetRep& d) const;
  /// The same dimension as the number of (g1, g2) with g2 = L g1, g1 over
  /// F^x \ GL_2(F_q) (F = F_{q^2} for delta = I, F_q otherwise).
  long long dim_by_count(const CosetRep& d) const;
  /// |delta^{-1} F_{q^4}^x delta cap P|, by enumeration of the torus.
  int residue_intersection_order(const CosetRep& d) const;

  /// Theta(I + varpi A) = (1/|H|) sum_{R in GL_2(F_q)} psibar(tr(R B R^{-1} A)), H the
  /// residue intersection, B = calB_delta.
  cplx theta_on_J1(const CosetRep& d, const Mat2& A) const;
  /// Full character. delta != I: supported on Z J^1. delta = I: induced from
  /// O_2^x J^1, cross-checked against the case formulas (throws on mismatch).
  ClassFunction theta_pi_delta_full(const CosetRep& d) const;
  /// Ind_{O_2^x J^1}^{G} (g -> phi~_x(diag(g, g))).
  ClassFunction identity_piece_induced() const;
  /// The delta = I character from the case formulas: Z J^1 values, zero off the
  /// conjugates of O_2^x J^1, and the normalizer average elsewhere.
  ClassFunction identity_piece_by_cases() const;

  struct Piece {
    CosetRep delta;
    long long dim = 0;
    long long dim_count = 0;
    int residue_intersection = 0;
    ClassFunction chi;
  };
  struct Report {
    std::vector<Piece> pieces;
    ClassFunction total;
  };
  /// Sum over Omega_0; throws if the dimension is not q^3 (q - 1).
  Report assemble() const;

  /// Normalizer of O_2^x J^1 in GL_2(o_2), sorted codes.
  std::vector<code_t> normalizer() const;

 private:
  ClassTablePtr table_;
  CosetGeometry geometry_;
  PrimitiveCharacter chi_;
  std::vector<Mat2> gl2_residue_;  // GL_2(F_q)
};

/// Brute-force Theta_{pi^delta_{N,psi}}: the induced character of pi^delta on P,
/// summed over a transversal of P / (delta^{-1} T delta cap P), then projected
/// to the psi-isotypic part of N. Uses no closed-form character values.
/// Keeps a reference to `chi`.
class MackeyOracle {
 public:
  /// Throws BudgetExceeded for q > max_q.
  MackeyOracle(const PrimitiveCharacter& chi, const CosetRep& delta, int max_q = 3);
  std::size_t transversal_size() const { return transversal_.size(); }
  int residue_intersection_order() const { return h_order_; }
  /// Theta_{pi^delta_{N,psi}}(g) for g in GL_2(o_2).
  cplx value(const Mat2& g) const;

 private:
  struct PBar {
    Mat2 S, Q, R;
  };
  bool in_residue_torus(const Mat4& m) const;

  const PrimitiveCharacter& chi_;
  CosetRep delta_;
  Mat4 delta_hat_, delta_hat_inv_;
  std::vector<PBar> transversal_;
  int h_order_ = 0;
};

/// Partial sums of the projection formula, evaluated term by term over o_2.
struct SubSums {
  /// sum_{X in varpi M_2} phi~^{delta^{-1}}((I, S^{-1} X R; 0, I)) conj psi(X).
  static cplx x_sum(const PrimitiveCharacter& chi, const CosetRep& d, const Mat2& S, const Mat2& R);
  /// sum_{Q in M_2(o_2)} phi~^{delta^{-1}}((I, varpi(S^{-1} A Q - S^{-1} Q R^{-1} A R); 0, I)).
  static cplx q_sum(const PrimitiveCharacter& chi, const CosetRep& d, const Mat2& S, const Mat2& R, const Mat2& A);
  /// phi~^{delta^{-1}}(diag(I + varpi S^{-1} A S, I + varpi R^{-1} A R)).
  static cplx diagonal_value(const PrimitiveCharacter& chi, const CosetRep& d, const Mat2& S, const Mat2& R,
                             const Mat2& A);
  /// The (X, Q) sum over J(g) for delta = I, S, R in the normalizer.
  static cplx jg_sum(const PrimitiveCharacter& chi, const Mat2& g, const Mat2& S, const Mat2& R);
};

/// phi~^{delta^{-1}}(y) = phi~(delta y delta^{-1}) for the constant lift of delta.
cplx phi_tilde_conj(const PrimitiveCharacter& chi, const CosetRep& d, const Mat4& y);

nlohmann::json whittaker_summary(const WhittakerEngine::Report& r, const PrimitiveCharacter& chi);

}  // namespace dgw
