#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "dgw/gl2_table.hpp"
#include "dgw/whittaker.hpp"

namespace dgw {

inline constexpr int kReportSchemaVersion = 1;

/// Objects that depend only on (q, flavor): tower, classes and the full table.
class Workbench {
 public:
  Workbench(int p, Flavor flavor, int f = 1);

  const TowerPtr& tower() const { return tower_; }
  const ClassTablePtr& classes() const { return classes_; }
  const CharacterTable& table() const { return table_; }
  Flavor flavor() const { return flavor_; }

 private:
  Flavor flavor_;
  TowerPtr tower_;
  ClassTablePtr classes_;
  CharacterTable table_;
};

/// Ind_{O_2^x}^{GL_2(o_2)} theta.
ClassFunction theta_Pi(const ClassTablePtr& ct, const PrimitiveCharacter& chi);
/// The same induction from h O_2^x h^{-1} with theta(h^{-1} g h).
ClassFunction theta_Pi_conjugated(const ClassTablePtr& ct, const PrimitiveCharacter& chi, const Mat2& h);

/// Index in all_class_reps of the M_2(F_q) class of m.
int b_class_index(const Field& f, const Mat2& m);
/// Classes of 2 X1 - ((m, n N + 2 a m), (n, -m)) over m, n in F_q, sorted.
std::vector<int> restriction_family(const Tower& t, const RegularEllipticElement& x);
/// Classes predicted to carry the constituents: 2 X1 and the semisimple
/// classes of trace tr(2 X1) when X1 is scalar, else all regular classes of
/// that trace. Sorted.
std::vector<int> predicted_b_classes(const Tower& t, const RegularEllipticElement& x);

struct Constituent {
  int row = -1;
  std::string type;
  int b_class = -1;  // all_class_reps index of the J^1 class
  long long dim = 0;
  long long multiplicity = 0;
  bool central_ok = false;
};

/// Classification of a decomposition against the predicted family.
struct StructureReport {
  std::vector<Constituent> constituents;
  std::vector<std::string> mismatches;
  int block_constituents = 0;  // constituents in the class of 2 X1
  bool block_matches = false;  // their sum equals Ind_{O_2^x J^1}(phi~_{2X1})
  bool block_irreducible = false;
  /// Per predicted class other than 2 X1: (class, constituents, table rows with that (omega, class)).
  struct ClassCount {
    int b_class = -1;
    std::string type;
    int constituents = 0;
    int rows = 0;
  };
  std::vector<ClassCount> class_counts;
  bool ok() const { return mismatches.empty(); }
};

StructureReport structure_report(const CharacterTable& table, const std::vector<long long>& mult,
                                 const PrimitiveCharacter& chi, const ClassFunction& identity_block);

/// One item of the per-claim checklist.
struct Check {
  std::string name;
  bool ok = false;
  bool skipped = false;
  long long evidence = 0;  // number of instances examined
  std::string detail;
};

struct VerifyOptions {
  int oracle_samples = 0;  // Z J^1 classes per non-vanishing delta; oracle runs only at q <= 3
  int sub_sum_samples = 20;
  bool conjugated_embedding = true;
  unsigned seed = 1;
};

struct VerificationReport {
  int q = 0;
  Flavor flavor = Flavor::EqualChar;
  std::array<fe_t, 4> x{};
  long long c = 0;
  bool verdict = false;
  double max_discrepancy = 0;
  double max_residual = 0;  // largest distance of an inner product from its rounded value
  std::vector<long long> mult_pi, mult_Pi;
  std::vector<std::vector<long long>> mult_per_delta;
  nlohmann::json omega;  // Omega_0 summary
  nlohmann::json whittaker;
  StructureReport structure_pi, structure_Pi;
  std::vector<Check> checks;
  std::map<std::string, double> timing;

  bool all_checks_pass() const;
  nlohmann::json to_json() const;
};

/// Full pipeline for one (x, theta).
VerificationReport verify(const Workbench& wb, const std::array<fe_t, 4>& x, long long c, const VerifyOptions& opt);

/// Sorted (type, B class, dim, multiplicity) tuples of the constituents of both sides.
using ProfileEntry = std::tuple<std::string, int, long long, long long>;
std::vector<ProfileEntry> canonical_profile(const VerificationReport& r);
/// Integer outputs that must not depend on the flavor.
nlohmann::json integer_fingerprint(const VerificationReport& r);

/// Deterministic x sample: two with a1 = 0 and two with a1 != 0.
std::vector<std::array<fe_t, 4>> x_sweep();
/// Theta exponents used by sweeps.
std::vector<long long> c_sweep();

}  // namespace dgw
