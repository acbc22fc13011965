#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgw/class_function.hpp"

namespace dgw {

/// Conjugacy type of a matrix in M_2(F_q).
enum class MatType { Scalar, SplitNonSemisimple, SplitSemisimple, NonSplit };

std::string to_string(MatType t);
MatType classify(const Field& f, const Mat2& m);
/// Conjugacy in M_2(F_q): equal characteristic polynomial and both or neither scalar.
bool residue_conjugate(const Field& f, const Mat2& x, const Mat2& y);

/// One regular matrix per conjugacy class: companion matrices ((0, -d), (1, t))
/// for (t, d) in lexicographic order.
std::vector<Mat2> regular_class_reps(const Field& f);
/// Regular reps followed by the scalars c I: a full set of M_2(F_q) class reps.
std::vector<Mat2> all_class_reps(const Field& f);

/// Centralizer order of a regular matrix in GL_2(F_q).
std::uint64_t centralizer_order(int q, MatType t);
/// Dimension q(q-1), q^2-1, q(q+1) of a regular character of type t.
int regular_dimension(int q, MatType t);

/// Inertia group of phi_B in GL_2(o_2): o_2[B^]^x J^1. Throws for scalar B.
SubgroupDescriptor inertia_group(const Field& f, const Mat2& B);

/// phi_B(I + varpi A) = psibar(tr(B A)) on J^1.
cplx phi_B(const LocalRing& r, const Mat2& B, const Mat2& A);

/// The irreducible characters of GL_2(F_q) from the classical closed forms.
class FiniteGl2Characters {
 public:
  explicit FiniteGl2Characters(const Tower& t);

  int count() const { return static_cast<int>(rows_.size()); }
  int dim(int i) const { return rows_[i].dim; }
  const std::string& name(int i) const { return rows_[i].name; }
  cplx value(int i, const Mat2& g) const;

 private:
  enum class Family { Linear, Steinberg, Principal, Cuspidal };
  struct Row {
    Family family;
    int i = 0, j = 0;
    int dim = 0;
    std::string name;
  };
  const Tower* t_;
  std::vector<Row> rows_;
  std::map<std::pair<fe_t, fe_t>, fe_t> elliptic_root_;  // (trace, det) -> root in fq2
};

struct RowInfo {
  bool regular = false;
  MatType type = MatType::Scalar;  // Scalar marks a non-regular row
  Mat2 B;                          // regular rows: the B the row was induced from
  int extension = -1;              // regular rows: index of the extension of phi_B
  int finite_char = -1;            // inflated rows: GL_2(F_q) character index
  int twist = -1;                  // inflated rows: index of chi in the characters of o_2^x
  long long dim = 0;
};

std::string type_name(const RowInfo& r);

/// Complete irreducible character table of GL_2(o_2).
struct CharacterTable {
  ClassTablePtr classes;
  std::vector<ClassFunction> rows;
  std::vector<RowInfo> info;
  int n_regular = 0;
  int n_inflated = 0;

  std::size_t size() const { return rows.size(); }
  void write_csv(std::ostream& os) const;
};

/// Regular characters Ind_{I(phi_B)} of every extension of phi_B, in
/// extension order.
std::vector<ClassFunction> regular_characters(const ClassTablePtr& ct, const Mat2& B);

/// Builds and validates the table: completeness (sum of dim^2 and row count)
/// is enforced, orthonormality is checked by `gram_defect`.
CharacterTable build_table(const ClassTablePtr& ct);

/// Largest entry of |Gram - I| over the rows.
double gram_defect(const CharacterTable& t);

/// Characters of the centre Z = o_2^x, as exponents mod q(q-1) on the
/// elements of Z listed by `central_elements`.
std::vector<code_t> central_elements(const Gl2& g);

/// Regular row counts: for each regular B class representative and each
/// central character omega compatible with phi_B, the number of rows whose
/// restriction to Z K^1 contains omega phi_B.
struct RegularRowCount {
  MatType type;
  long long dim = 0;
  int min_count = 0;
  int max_count = 0;
  int b_classes = 0;
};
std::vector<RegularRowCount> regular_row_counts(const CharacterTable& t);

/// <sigma|_{J^1}, phi_B> for every class rep of M_2(F_q) (all_class_reps order).
std::vector<long long> j1_profile(const ClassFunction& sigma);

/// Type of a row from its J^1 restriction; throws if the contributing B are
/// not all of one type.
MatType type_of(const ClassFunction& sigma);

nlohmann::json table_summary(const CharacterTable& t);

}  // namespace dgw
