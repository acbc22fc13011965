#include "dgw/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>

#include "dgw/parallel.hpp"

namespace dgw {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Check make_check(std::string name, bool ok, long long evidence, std::string detail = {}) {
  return Check{std::move(name), ok, false, evidence, std::move(detail)};
}

Check skipped_check(std::string name, std::string why) { return Check{std::move(name), true, true, 0, std::move(why)}; }

// Multiplicities by rounding inner products, tracking the worst residual.
std::vector<long long> multiplicities(const ClassFunction& f, const CharacterTable& t, double& residual) {
  std::vector<long long> m(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const cplx ip = inner_product(f, t.rows[i]);
    const double r = std::llround(ip.real());
    residual = std::max(residual, std::abs(ip - cplx(r, 0.0)));
    m[i] = static_cast<long long>(r);
  }
  // Reconstruction and non-negativity.
  decompose(f, t.rows);
  return m;
}

Mat2 two_x1(const Tower& t, const RegularEllipticElement& x) { return add(t.field(), x.X1, x.X1); }

bool central_character_matches(const ClassFunction& row, const std::vector<code_t>& z, const PrimitiveCharacter& chi) {
  const Gl2& G = row.table()->group();
  const cplx d = row.dim();
  return std::all_of(z.begin(), z.end(), [&](code_t c) { return near(row.at(c), chi.omega(G.decode(c)(0, 0)) * d); });
}

int first_positive(const std::vector<long long>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] > 0) return static_cast<int>(i);
  return -1;
}

// Ind_{O_2^x J^1}(theta phi_{2X1}), built from theta and phi_B only.
ClassFunction two_x1_induction(const ClassTablePtr& ct, const PrimitiveCharacter& chi) {
  const Gl2& G = ct->group();
  const Tower& t = chi.tower();
  const LocalRing& R = t.ring();
  const Mat2 b = two_x1(t, chi.x());
  const auto members = subgroup_members(G, {SubgroupTag::O2quadTimesJ1, {}});
  return induce(ct, members, [&](code_t c) {
    const Mat2 g = G.decode(c);
    const TowerElem u = t.make(Level::Quad, {g(0, 0), g(1, 0), 0, 0});
    const Mat2 k = mul(R, inverse(R, embed_quad(t, u)), g);
    return chi.theta(u) * phi_B(R, b, log_congruence(R, k));
  });
}

std::vector<int> z_j1_classes(const ClassTable& ct) {
  const Gl2& G = ct.group();
  std::vector<int> out;
  for (int c = 0; c < ct.num_classes(); ++c) {
    const Mat2 r = G.reduce(ct.rep(c));
    if (r(0, 1) == 0 && r(1, 0) == 0 && r(0, 0) == r(1, 1)) out.push_back(c);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Workbench::Workbench(int p, Flavor flavor, int f)
    : flavor_(flavor),
      tower_(Tower::create(p, f, flavor)),
      classes_(ClassTable::build(tower_)),
      table_(build_table(classes_)) {}

ClassFunction theta_Pi(const ClassTablePtr& ct, const PrimitiveCharacter& chi) {
  const Gl2& G = ct->group();
  const auto members = subgroup_members(G, {SubgroupTag::O2quadUnits, {}});
  return induce(ct, members, [&](code_t c) {
    const Mat2 g = G.decode(c);
    return chi.theta(chi.tower().make(Level::Quad, {g(0, 0), g(1, 0), 0, 0}));
  });
}

ClassFunction theta_Pi_conjugated(const ClassTablePtr& ct, const PrimitiveCharacter& chi, const Mat2& h) {
  const Gl2& G = ct->group();
  const LocalRing& R = chi.tower().ring();
  const Mat2 hinv = inverse(R, h);
  std::vector<code_t> members;
  for (code_t c : subgroup_members(G, {SubgroupTag::O2quadUnits, {}}))
    members.push_back(G.encode(mul(R, mul(R, h, G.decode(c)), hinv)));
  std::sort(members.begin(), members.end());
  return induce(ct, members, [&](code_t c) {
    const Mat2 g = mul(R, mul(R, hinv, G.decode(c)), h);
    return chi.theta(chi.tower().make(Level::Quad, {g(0, 0), g(1, 0), 0, 0}));
  });
}

int b_class_index(const Field& f, const Mat2& m) {
  const auto reps = all_class_reps(f);
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (residue_conjugate(f, reps[i], m)) return static_cast<int>(i);
  throw std::logic_error("b_class_index: no representative for " + to_string(m));
}

std::vector<int> restriction_family(const Tower& t, const RegularEllipticElement& x) {
  const Field& F = t.field();
  const Mat2 b = two_x1(t, x);
  std::set<int> out;
  for (fe_t m = 0; m < F.size(); ++m)
    for (fe_t n = 0; n < F.size(); ++n) {
      const Mat2 d = mat2(m, F.add(F.mul(n, t.norm_const()), F.mul(t.two_a(), m)), n, F.neg(m));
      out.insert(b_class_index(F, sub(F, b, d)));
    }
  return {out.begin(), out.end()};
}

std::vector<int> predicted_b_classes(const Tower& t, const RegularEllipticElement& x) {
  const Field& F = t.field();
  const Mat2 b = two_x1(t, x);
  const fe_t tr = trace(F, b);
  const auto reps = all_class_reps(F);
  std::vector<int> out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const MatType ty = classify(F, reps[i]);
    if (ty == MatType::Scalar) {
      if (residue_conjugate(F, reps[i], b)) out.push_back(static_cast<int>(i));
      continue;
    }
    if (trace(F, reps[i]) != tr) continue;
    if (x.x1_scalar() && ty == MatType::SplitNonSemisimple) continue;
    out.push_back(static_cast<int>(i));
  }
  return out;
}

StructureReport structure_report(const CharacterTable& table, const std::vector<long long>& mult,
                                 const PrimitiveCharacter& chi, const ClassFunction& identity_block) {
  const Tower& t = chi.tower();
  const Field& F = t.field();
  const int q = t.q();
  const auto z = central_elements(table.classes->group());
  const auto reps = all_class_reps(F);
  const auto predicted = predicted_b_classes(t, chi.x());
  const int block_class = b_class_index(F, two_x1(t, chi.x()));
  StructureReport s;

  ClassFunction block_sum = ClassFunction::zero(table.classes);
  for (std::size_t i = 0; i < mult.size(); ++i) {
    if (mult[i] == 0) continue;
    Constituent c;
    c.row = static_cast<int>(i);
    c.type = type_name(table.info[i]);
    c.dim = table.info[i].dim;
    c.multiplicity = mult[i];
    c.b_class = first_positive(j1_profile(table.rows[i]));
    c.central_ok = central_character_matches(table.rows[i], z, chi);
    if (mult[i] != 1) s.mismatches.push_back("row " + std::to_string(i) + " has multiplicity " + std::to_string(mult[i]));
    if (!c.central_ok) s.mismatches.push_back("row " + std::to_string(i) + " has the wrong central character");
    if (!std::binary_search(predicted.begin(), predicted.end(), c.b_class))
      s.mismatches.push_back("row " + std::to_string(i) + " lies over the unpredicted class " + to_string(reps[c.b_class]));
    if (c.b_class == block_class) {
      ++s.block_constituents;
      block_sum += static_cast<double>(mult[i]) * table.rows[i];
    }
    s.constituents.push_back(c);
  }

  s.block_matches = block_sum.approx_equal(identity_block);
  s.block_irreducible = s.block_constituents == 1;
  if (!s.block_matches) s.mismatches.push_back("constituents over 2X1 do not sum to the induced block");
  if (s.block_irreducible == chi.x().x1_scalar())
    s.mismatches.push_back(std::string("the induced block is ") + (s.block_irreducible ? "" : "not ") + "irreducible");

  for (int b : predicted) {
    if (b == block_class) continue;
    StructureReport::ClassCount cc;
    cc.b_class = b;
    cc.type = to_string(classify(F, reps[b]));
    std::set<int> expected, seen;
    for (std::size_t i = 0; i < table.size(); ++i)
      if (table.info[i].regular && b_class_index(F, table.info[i].B) == b &&
          central_character_matches(table.rows[i], z, chi))
        expected.insert(static_cast<int>(i));
    for (const auto& c : s.constituents)
      if (c.b_class == b) seen.insert(c.row);
    cc.rows = static_cast<int>(expected.size());
    cc.constituents = static_cast<int>(seen.size());
    const long long stab = static_cast<long long>(centralizer_order(q, classify(F, reps[b]))) / (q - 1);
    if (seen != expected) s.mismatches.push_back("class " + to_string(reps[b]) + ": constituents differ from the table rows");
    if (cc.rows != stab)
      s.mismatches.push_back("class " + to_string(reps[b]) + ": " + std::to_string(cc.rows) + " rows, expected " +
                             std::to_string(stab));
    s.class_counts.push_back(cc);
  }
  return s;
}

// ---------------------------------------------------------------------------

bool VerificationReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

nlohmann::json VerificationReport::to_json() const {
  auto structure = [](const StructureReport& s) {
    nlohmann::json cons = nlohmann::json::array();
    for (const auto& c : s.constituents)
      cons.push_back({{"row", c.row},
                      {"type", c.type},
                      {"b_class", c.b_class},
                      {"dim", c.dim},
                      {"multiplicity", c.multiplicity},
                      {"central_character_ok", c.central_ok}});
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& c : s.class_counts)
      counts.push_back({{"b_class", c.b_class}, {"type", c.type}, {"constituents", c.constituents}, {"rows", c.rows}});
    return nlohmann::json{{"constituents", cons},
                          {"class_counts", counts},
                          {"block_constituents", s.block_constituents},
                          {"block_matches", s.block_matches},
                          {"block_irreducible", s.block_irreducible},
                          {"mismatches", s.mismatches}};
  };
  nlohmann::json checks_j = nlohmann::json::array();
  for (const auto& c : checks)
    checks_j.push_back(
        {{"name", c.name}, {"ok", c.ok}, {"skipped", c.skipped}, {"evidence", c.evidence}, {"detail", c.detail}});
  return {{"schema_version", kReportSchemaVersion},
          {"params", {{"q", q}, {"flavor", to_string(flavor)}, {"x", x}, {"theta_c", c}}},
          {"verdict", verdict},
          {"max_discrepancy", max_discrepancy},
          {"max_residual", max_residual},
          {"multiplicities", {{"pi_N_psi", mult_pi}, {"Pi", mult_Pi}, {"per_delta", mult_per_delta}}},
          {"omega", omega},
          {"whittaker", whittaker},
          {"structure", {{"pi_N_psi", structure(structure_pi)}, {"Pi", structure(structure_Pi)}}},
          {"checks", checks_j},
          {"timing_s", timing}};
}

// ---------------------------------------------------------------------------

VerificationReport verify(const Workbench& wb, const std::array<fe_t, 4>& xa, long long c, const VerifyOptions& opt) {
  const auto t_start = Clock::now();
  const Tower& t = *wb.tower();
  const Field& F = t.field();
  const LocalRing& R = t.ring();
  const Gl2& G = wb.classes()->group();
  const CharacterTable& table = wb.table();
  const int q = t.q();
  const long long qq = q;
  std::mt19937 rng(opt.seed);

  VerificationReport rep;
  rep.q = q;
  rep.flavor = wb.flavor();
  rep.x = xa;
  rep.c = c;
  auto& checks = rep.checks;

  const auto x = RegularEllipticElement::make(t, xa);
  const CosetGeometry geo(wb.tower(), x);
  const WhittakerEngine eng(wb.classes(), geo, c);
  const PrimitiveCharacter& chi = eng.character();
  rep.omega = omega_summary(geo);

  // Double cosets.
  auto t0 = Clock::now();
  const auto omega = geo.omega();
  const auto omega0 = geo.omega0();
  const auto grass = grassmann_orbit_oracle(t);
  checks.push_back(make_check("double_coset_count",
                              static_cast<int>(omega0.size()) == q + 1 && grass.num_orbits == q + 1, qq * qq));
  {
    long long bad = 0, n = 0;
    for (const auto& d : omega)
      for (const auto& e : omega) {
        ++n;
        const bool orbit = grass.omega_orbit[d.u * q + d.v] == grass.omega_orbit[e.u * q + e.v];
        if (geo.same_double_coset(d, e) != orbit) ++bad;
      }
    checks.push_back(make_check("criterion_equals_grassmann_orbits", bad == 0, n, std::to_string(bad) + " disagreements"));
  }
  {
    long long bad = 0, n = 0;
    std::set<int> omega_orbits(grass.omega_orbit.begin(), grass.omega_orbit.end());
    for (fe_t w = 0; w < static_cast<fe_t>(q); ++w) {
      if (!omega_orbits.count(grass.aw_orbit[w])) ++bad;
      for (const auto& d : omega) {
        ++n;
        if ((aw_condition(t, d.u, d.v, w) == 0) != (grass.aw_orbit[w] == grass.omega_orbit[d.u * q + d.v])) ++bad;
      }
    }
    checks.push_back(make_check("aw_coverage", bad == 0, n));
  }
  {
    long long bad = 0;
    for (const auto& d : omega)
      if (geo.det_L_closed_form(d.u, d.v) != d.det_L) ++bad;
    checks.push_back(make_check("det_L_closed_form", bad == 0, static_cast<long long>(omega.size())));
    const auto vanishing =
        std::count_if(omega0.begin(), omega0.end(), [](const CosetRep& d) { return !d.nonvanishing(); });
    checks.push_back(make_check("unique_vanishing_det_L", vanishing == 1 && omega0.front().nonvanishing(),
                                static_cast<long long>(omega0.size())));
  }
  {
    long long bad = 0, n = 0;
    for (const auto& d : omega)
      for (const auto& e : omega)
        if (d.nonvanishing() && e.nonvanishing()) {
          ++n;
          if (residue_conjugate(F, d.calB, e.calB) != geo.same_double_coset(d, e)) ++bad;
        }
    checks.push_back(make_check("calB_conjugacy_criterion", bad == 0, n));
    // The q realized classes: every non-scalar semisimple class of trace tr(2 X1) and one of scalar / split non-semisimple.
    const fe_t tr = trace(F, two_x1(t, x));
    std::set<int> realized;
    for (const auto& d : omega0)
      if (d.nonvanishing()) realized.insert(b_class_index(F, d.calB));
    const auto reps = all_class_reps(F);
    int semisimple = 0, degenerate = 0;
    for (int b : realized) {
      const MatType ty = classify(F, reps[b]);
      if (trace(F, reps[b]) != tr) continue;
      if (ty == MatType::SplitSemisimple || ty == MatType::NonSplit)
        ++semisimple;
      else
        ++degenerate;
    }
    checks.push_back(make_check("calB_classes_realized",
                                static_cast<int>(realized.size()) == q && semisimple == q - 1 && degenerate == 1,
                                static_cast<long long>(realized.size())));
  }
  checks.push_back(make_check("gamma_systems", check_gamma_systems(t).ok(), 4));
  rep.timing["double_cosets"] = seconds_since(t0);

  // Characters theta and phi~.
  t0 = Clock::now();
  {
    std::uniform_int_distribution<re_t> d(0, R.size() - 1);
    auto unit = [&](int k) {
      for (;;) {
        TowerElem u{k == 4 ? Level::Quartic : Level::Quad, {}};
        for (int i = 0; i < k; ++i) u.c[i] = d(rng);
        if (t.is_unit(u)) return u;
      }
    };
    long long bad = 0;
    for (int i = 0; i < 200; ++i) {
      const TowerElem u = unit(4), v = unit(4);
      if (!near(chi.theta(t.mul(u, v)), chi.theta(u) * chi.theta(v))) ++bad;
    }
    // theta on 1 + varpi O_2 is phi_{2X1}.
    const Mat2 b = two_x1(t, x);
    for (fe_t a0 = 0; a0 < F.size(); ++a0)
      for (fe_t a1 = 0; a1 < F.size(); ++a1) {
        const TowerElem u = t.make(Level::Quad, {R.add(1, R.varpi(a0)), R.varpi(a1), 0, 0});
        const Mat2 k = log_congruence(R, embed_quad(t, u));
        if (!near(chi.theta(u), phi_B(R, b, k))) ++bad;
      }
    checks.push_back(make_check("theta_character", bad == 0 && near(chi.theta(t.one(Level::Quartic)), 1.0),
                                200 + qq * qq));
    long long bad_phi = 0;
    for (int i = 0; i < 100; ++i) {
      Mat4 a, b4;
      for (auto& e : a.e) e = d(rng) % F.size();
      for (auto& e : b4.e) e = d(rng) % F.size();
      const Mat4 m1 = mul(R, embed_quartic(t, unit(4)), add(R, identity<4>(), varpi(R, a)));
      const Mat4 m2 = mul(R, embed_quartic(t, unit(4)), add(R, identity<4>(), varpi(R, b4)));
      if (!near(chi.phi_tilde(mul(R, m1, m2)), chi.phi_tilde(m1) * chi.phi_tilde(m2))) ++bad_phi;
      if (!near(chi.phi_tilde(add(R, identity<4>(), varpi(R, a))), chi.phi_x(a))) ++bad_phi;
    }
    checks.push_back(make_check("phi_tilde_character", bad_phi == 0, 100));
  }
  rep.timing["characters"] = seconds_since(t0);

  // Whittaker side.
  t0 = Clock::now();
  const auto wrep = eng.assemble();
  rep.whittaker = whittaker_summary(wrep, chi);
  {
    bool ok = true;
    long long total = 0;
    for (const auto& p : wrep.pieces) {
      ok = ok && p.dim == p.dim_count && near(p.chi.dim(), static_cast<double>(p.dim));
      if (p.delta.nonvanishing())
        ok = ok && p.residue_intersection == (p.delta.is_identity() ? q * q - 1 : q - 1);
      total += p.dim;
    }
    checks.push_back(make_check("dimensions", ok && total == qq * qq * qq * (qq - 1),
                                static_cast<long long>(wrep.pieces.size()), "total " + std::to_string(total)));
  }
  {
    const auto reps = all_class_reps(F);
    long long bad = 0, n = 0;
    std::vector<std::vector<long long>> profiles;
    for (const auto& p : wrep.pieces) {
      if (!p.delta.nonvanishing()) continue;
      const auto prof = j1_profile(p.chi);
      const long long want =
          static_cast<long long>(centralizer_order(q, classify(F, p.delta.calB))) / p.residue_intersection;
      for (std::size_t b = 0; b < reps.size(); ++b) {
        ++n;
        if (prof[b] != (residue_conjugate(F, reps[b], p.delta.calB) ? want : 0)) ++bad;
      }
      profiles.push_back(prof);
    }
    for (std::size_t i = 0; i < profiles.size(); ++i)
      for (std::size_t j = i + 1; j < profiles.size(); ++j)
        for (std::size_t b = 0; b < reps.size(); ++b)
          if (profiles[i][b] > 0 && profiles[j][b] > 0) ++bad;
    checks.push_back(make_check("j1_multiplicities", bad == 0, n));
  }
  {
    const double gap = eng.identity_piece_induced().distance(eng.identity_piece_by_cases());
    checks.push_back(make_check("identity_piece_cross_check", gap < kTol, wb.classes()->num_classes(),
                                "max gap " + std::to_string(gap)));
  }
  {
    long long bad = 0, n = 0;
    const double q4 = std::pow(q, 4), q8 = q4 * q4;
    std::uniform_int_distribution<re_t> d(0, R.size() - 1);
    auto gl2 = [&] {
      for (;;) {
        Mat2 m;
        for (auto& e : m.e) e = d(rng);
        if (R.is_unit(det(R, m))) return m;
      }
    };
    auto residue = [&] {
      Mat2 m;
      for (auto& e : m.e) e = d(rng) % F.size();
      return m;
    };
    for (const auto& dl : omega0) {
      if (!dl.nonvanishing()) continue;
      for (int i = 0; i < opt.sub_sum_samples; ++i) {
        const Mat2 Rm = gl2();
        const Mat2 S = mul(R, Rm, dl.L);
        const Mat2 S2 = gl2();
        const bool aligned = reduce(R, S2) == reduce(R, S);
        n += 3;
        if (!near(SubSums::x_sum(chi, dl, S, Rm), q4)) ++bad;
        if (!near(SubSums::x_sum(chi, dl, S2, Rm), aligned ? q4 : 0.0)) ++bad;
        const Mat2 A = residue();
        const cplx want = R.psibar(trace(F, mul(F, conjugate(F, reduce(R, Rm), dl.calB), A)));
        if (!near(SubSums::diagonal_value(chi, dl, S, Rm, A), want)) ++bad;
        if (i < 2) {
          ++n;
          if (!near(SubSums::q_sum(chi, dl, S, Rm, residue()), q8)) ++bad;
        }
      }
    }
    checks.push_back(make_check("projection_sub_sums", bad == 0, n));
  }
  if (q <= 3) {
    long long bad = 0, n = 0;
    const auto norm = eng.normalizer();
    const auto oj = subgroup_members(G, {SubgroupTag::O2quadTimesJ1, {}});
    std::uniform_int_distribution<std::size_t> pn(0, norm.size() - 1), po(0, oj.size() - 1);
    const double q12 = std::pow(q, 12);
    for (int i = 0; i < 4; ++i) {
      const Mat2 Rm = G.decode(norm[pn(rng)]);
      const Mat2 h = G.decode(oj[po(rng)]);
      const Mat2 S = i % 2 == 0 ? mul(R, mul(R, Rm, x.X3), add(R, identity<2>(), varpi(R, reduce(R, h))))
                                : mul(R, h, Rm);
      const bool aligned = reduce(R, S) == reduce(R, mul(R, Rm, x.X3));
      ++n;
      if (!near(SubSums::jg_sum(chi, G.decode(oj[po(rng)]), S, Rm), aligned ? q12 : 0.0)) ++bad;
    }
    for (int i = 0; i < 30; ++i) {
      const Mat2 Rm = G.decode(norm[pn(rng)]);
      const Mat2 S = mul(R, G.decode(oj[po(rng)]), Rm);
      const Mat2 g = G.decode(oj[po(rng)]);
      const Mat2 a = conjugate(R, inverse(R, S), g), b = conjugate(R, inverse(R, Rm), g);
      ++n;
      if (!near(chi.phi_tilde(from_blocks(a, Mat2{}, Mat2{}, b)), chi.phi_tilde(from_blocks(b, Mat2{}, Mat2{}, b))))
        ++bad;
    }
    checks.push_back(make_check("identity_coset_sums", bad == 0, n));
  } else {
    checks.push_back(skipped_check("identity_coset_sums", "runs at q <= 3"));
  }
  rep.timing["whittaker"] = seconds_since(t0);

  // Brute-force oracle.
  t0 = Clock::now();
  if (opt.oracle_samples > 0 && q <= 3) {
    const auto zj = z_j1_classes(*wb.classes());
    long long bad = 0, n = 0;
    double worst = 0;
    for (const auto& p : wrep.pieces) {
      if (!p.delta.nonvanishing()) continue;
      const MackeyOracle mo(chi, p.delta);
      const int k = std::min<int>(opt.oracle_samples, static_cast<int>(zj.size()));
      for (int i = 0; i < k; ++i) {
        const int cls = zj[static_cast<std::size_t>(i) * zj.size() / k];
        const code_t g = wb.classes()->rep(cls);
        const cplx v = mo.value(G.decode(g));
        worst = std::max(worst, std::abs(v - p.chi.at(g)));
        ++n;
        if (!near(v, p.chi.at(g))) ++bad;
      }
    }
    checks.push_back(make_check("mackey_oracle", bad == 0, n, "max gap " + std::to_string(worst)));
  } else {
    checks.push_back(skipped_check("mackey_oracle", opt.oracle_samples > 0 ? "runs at q <= 3" : "no samples requested"));
  }
  rep.timing["oracle"] = seconds_since(t0);

  // Induced side and the comparison.
  t0 = Clock::now();
  const ClassFunction pi = wrep.total;
  const ClassFunction Pi = theta_Pi(wb.classes(), chi);
  rep.timing["theta_Pi"] = seconds_since(t0);
  t0 = Clock::now();
  rep.max_discrepancy = pi.distance(Pi);
  bool decomposed = true;
  try {
    rep.mult_pi = multiplicities(pi, table, rep.max_residual);
    rep.mult_Pi = multiplicities(Pi, table, rep.max_residual);
    for (const auto& p : wrep.pieces) rep.mult_per_delta.push_back(multiplicities(p.chi, table, rep.max_residual));
  } catch (const std::exception& e) {
    decomposed = false;
    checks.push_back(make_check("decomposition", false, 0, e.what()));
  }
  if (decomposed) {
    const bool free_pi = std::all_of(rep.mult_pi.begin(), rep.mult_pi.end(), [](long long m) { return m <= 1; });
    const long long n_const = std::count(rep.mult_pi.begin(), rep.mult_pi.end(), 1LL);
    checks.push_back(make_check("main_theorem",
                                rep.mult_pi == rep.mult_Pi && rep.max_discrepancy < kTol && rep.max_residual < kTol,
                                static_cast<long long>(table.size()),
                                "max discrepancy " + std::to_string(rep.max_discrepancy)));
    checks.push_back(make_check("multiplicity_free", free_pi, static_cast<long long>(table.size())));
    checks.push_back(make_check("self_inner_products",
                                near(inner_product(pi, pi), static_cast<double>(n_const)) &&
                                    near(inner_product(Pi, Pi), static_cast<double>(n_const)),
                                2));
    checks.push_back(make_check("index_dimension",
                                near(Pi.dim(), static_cast<double>(qq * qq * qq * (qq - 1))) &&
                                    near(pi.dim(), static_cast<double>(qq * qq * qq * (qq - 1))),
                                2));
    {
      const auto z = central_elements(G);
      long long bad = 0;
      for (code_t zc : z)
        if (!near(pi.at(zc), chi.omega(G.decode(zc)(0, 0)) * pi.dim())) ++bad;
      checks.push_back(make_check("central_character", bad == 0, static_cast<long long>(z.size())));
    }

    const ClassFunction block_pi = wrep.pieces.front().chi;
    const ClassFunction block_Pi = two_x1_induction(wb.classes(), chi);
    checks.push_back(make_check("identity_block_equals_two_x1_induction", block_pi.approx_equal(block_Pi),
                                wb.classes()->num_classes()));
    rep.structure_pi = structure_report(table, rep.mult_pi, chi, block_pi);
    rep.structure_Pi = structure_report(table, rep.mult_Pi, chi, block_Pi);
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& m : v) s += (s.empty() ? "" : "; ") + m;
      return s;
    };
    checks.push_back(make_check("pi_structure", rep.structure_pi.ok(),
                                static_cast<long long>(rep.structure_pi.constituents.size()),
                                join(rep.structure_pi.mismatches)));
    checks.push_back(make_check("Pi_structure", rep.structure_Pi.ok(),
                                static_cast<long long>(rep.structure_Pi.constituents.size()),
                                join(rep.structure_Pi.mismatches)));
    for (MatType ty : {MatType::NonSplit, MatType::SplitSemisimple, MatType::SplitNonSemisimple}) {
      long long rows = 0;
      bool ok = true;
      for (const auto& cc : rep.structure_Pi.class_counts)
        if (cc.type == to_string(ty)) {
          rows += cc.rows;
          ok = ok && cc.constituents == cc.rows;
        }
      std::string name = "Pi_" + to_string(ty) + "_multiplicity_one";
      std::replace_if(name.begin(), name.end(), [](char ch) { return ch == ' ' || ch == '-'; }, '_');
      if (rows == 0)
        checks.push_back(skipped_check(name, "no predicted class of this type"));
      else
        checks.push_back(make_check(name, ok, rows));
    }
  }
  {
    const auto prof = j1_profile(Pi);
    std::vector<int> seen;
    for (std::size_t b = 0; b < prof.size(); ++b)
      if (prof[b] > 0) seen.push_back(static_cast<int>(b));
    checks.push_back(make_check("restriction_family", seen == restriction_family(t, x),
                                static_cast<long long>(prof.size())));
    if (x.x1_scalar()) {
      checks.push_back(skipped_check("two_x1_multiplicity", "X1 is scalar"));
    } else {
      const long long m = prof[b_class_index(F, two_x1(t, x))];
      checks.push_back(make_check("two_x1_multiplicity", m == 1, 1, "multiplicity " + std::to_string(m)));
    }
  }
  if (opt.conjugated_embedding) {
    // A conjugator outside the normalizer of O_2^x.
    const Mat2 h = mat2(1, 1, 0, 1);
    const double gap = theta_Pi_conjugated(wb.classes(), chi, h).distance(Pi);
    checks.push_back(make_check("conjugated_embedding", gap < kTol, 1, "max gap " + std::to_string(gap)));
  }
  rep.timing["comparison"] = seconds_since(t0);

  rep.verdict = decomposed && rep.mult_pi == rep.mult_Pi && rep.max_discrepancy < kTol && rep.all_checks_pass();
  rep.timing["total"] = seconds_since(t_start);
  return rep;
}

std::vector<ProfileEntry> canonical_profile(const VerificationReport& r) {
  std::vector<ProfileEntry> out;
  for (const auto* s : {&r.structure_pi, &r.structure_Pi}) {
    std::vector<ProfileEntry> side;
    for (const auto& c : s->constituents) side.emplace_back(c.type, c.b_class, c.dim, c.multiplicity);
    std::sort(side.begin(), side.end());
    out.insert(out.end(), side.begin(), side.end());
  }
  return out;
}

nlohmann::json integer_fingerprint(const VerificationReport& r) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : r.whittaker["pieces"])
    pieces.push_back({p["u"], p["v"], p["det_L"], p["dim"], p["dim_by_count"], p["residue_intersection"]});
  nlohmann::json profile = nlohmann::json::array();
  for (const auto& [type, b, dim, m] : canonical_profile(r)) profile.push_back({type, b, dim, m});
  nlohmann::json evidence = nlohmann::json::object();
  for (const auto& c : r.checks) evidence[c.name] = c.evidence;
  return {{"omega0_size", r.omega["omega0"].size()},
          {"pieces", pieces},
          {"n_constituents", r.structure_pi.constituents.size()},
          {"profile", profile},
          {"check_evidence", evidence}};
}

std::vector<std::array<fe_t, 4>> x_sweep() {
  return {{0, 0, 1, 0}, {1, 0, 1, 1}, {0, 1, 1, 0}, {1, 2, 0, 1}};
}

std::vector<long long> c_sweep() { return {0, 1, 2, 5, 7}; }

}  // namespace dgw
