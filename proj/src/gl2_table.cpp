#include "dgw/gl2_table.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "dgw/abelian.hpp"

namespace dgw {

std::string to_string(MatType t) {
  switch (t) {
    case MatType::Scalar: return "scalar";
    case MatType::SplitNonSemisimple: return "split non-semisimple";
    case MatType::SplitSemisimple: return "split semisimple";
    case MatType::NonSplit: return "non-split semisimple";
  }
  return "?";
}

MatType classify(const Field& f, const Mat2& m) {
  if (m(0, 1) == 0 && m(1, 0) == 0 && m(0, 0) == m(1, 1)) return MatType::Scalar;
  const fe_t t = trace(f, m), d = det(f, m);
  const fe_t disc = f.sub(f.mul(t, t), f.mul(f.from_int(4), d));
  if (disc == 0) return MatType::SplitNonSemisimple;
  return f.is_square(disc) ? MatType::SplitSemisimple : MatType::NonSplit;
}

bool residue_conjugate(const Field& f, const Mat2& x, const Mat2& y) {
  const bool sx = classify(f, x) == MatType::Scalar, sy = classify(f, y) == MatType::Scalar;
  if (sx || sy) return x == y;
  return trace(f, x) == trace(f, y) && det(f, x) == det(f, y);
}

std::vector<Mat2> regular_class_reps(const Field& f) {
  std::vector<Mat2> out;
  for (fe_t t = 0; t < f.size(); ++t)
    for (fe_t d = 0; d < f.size(); ++d) out.push_back(mat2(0, f.neg(d), 1, t));
  return out;
}

std::vector<Mat2> all_class_reps(const Field& f) {
  auto out = regular_class_reps(f);
  for (fe_t c = 0; c < f.size(); ++c) out.push_back(mat2(c, 0, 0, c));
  return out;
}

std::uint64_t centralizer_order(int q, MatType t) {
  const std::uint64_t Q = static_cast<std::uint64_t>(q);
  switch (t) {
    case MatType::NonSplit: return Q * Q - 1;
    case MatType::SplitNonSemisimple: return Q * (Q - 1);
    case MatType::SplitSemisimple: return (Q - 1) * (Q - 1);
    case MatType::Scalar: return (Q * Q - 1) * (Q * Q - Q);
  }
  return 0;
}

int regular_dimension(int q, MatType t) {
  switch (t) {
    case MatType::NonSplit: return q * (q - 1);
    case MatType::SplitNonSemisimple: return q * q - 1;
    case MatType::SplitSemisimple: return q * (q + 1);
    case MatType::Scalar: break;
  }
  throw std::invalid_argument("regular_dimension: scalar type");
}

SubgroupDescriptor inertia_group(const Field& f, const Mat2& B) {
  if (classify(f, B) == MatType::Scalar) throw std::invalid_argument("inertia_group: B is scalar, not regular");
  return {SubgroupTag::InertiaOfB, B};
}

cplx phi_B(const LocalRing& r, const Mat2& B, const Mat2& A) {
  return r.psibar(trace(r.field(), mul(r.field(), B, A)));
}

// ---------------------------------------------------------------------------

FiniteGl2Characters::FiniteGl2Characters(const Tower& t) : t_(&t) {
  const int q = t.q();
  for (int i = 0; i < q - 1; ++i) rows_.push_back({Family::Linear, i, 0, 1, "chi" + std::to_string(i) + "(det)"});
  for (int i = 0; i < q - 1; ++i) rows_.push_back({Family::Steinberg, i, 0, q, "St x chi" + std::to_string(i)});
  for (int i = 0; i < q - 1; ++i)
    for (int j = i + 1; j < q - 1; ++j)
      rows_.push_back({Family::Principal, i, j, q + 1, "PS(" + std::to_string(i) + "," + std::to_string(j) + ")"});
  const int Q = q * q - 1;
  for (int j = 1; j < Q; ++j) {
    const int jq = static_cast<int>((static_cast<long long>(j) * q) % Q);
    if (jq <= j) continue;  // keep the smaller member of each Frobenius pair {j, jq}
    rows_.push_back({Family::Cuspidal, j, 0, q - 1, "cusp(" + std::to_string(j) + ")"});
  }
  const ExtField& F2 = t.fq2();
  for (fe_t z = 0; z < F2.size(); ++z)
    if (!F2.in_base(z)) elliptic_root_.emplace(std::pair{F2.trace(z), F2.norm(z)}, z);
}

cplx FiniteGl2Characters::value(int idx, const Mat2& g) const {
  const Field& F = t_->field();
  const ExtField& F2 = t_->fq2();
  const int q = t_->q();
  const Row& r = rows_[idx];
  auto chi = [&](int i, fe_t x) { return unit_root(static_cast<long long>(i) * F.log(x), q - 1); };
  auto lam = [&](int j, fe_t z) { return unit_root(static_cast<long long>(j) * F2.log(z), q * q - 1); };
  const fe_t tr = trace(F, g), d = det(F, g);
  if (d == 0) throw std::invalid_argument("FiniteGl2Characters: singular matrix");
  const MatType type = classify(F, g);
  switch (type) {
    case MatType::Scalar:
    case MatType::SplitNonSemisimple: {
      const fe_t a = F.div(tr, F.from_int(2));
      const bool central = type == MatType::Scalar;
      switch (r.family) {
        case Family::Linear: return chi(r.i, d);
        case Family::Steinberg: return central ? static_cast<double>(q) * chi(r.i, d) : 0.0;
        case Family::Principal:
          return (central ? static_cast<double>(q + 1) : 1.0) * chi(r.i, a) * chi(r.j, a);
        case Family::Cuspidal:
          return (central ? static_cast<double>(q - 1) : -1.0) * lam(r.i, F2.from_base(a));
      }
      break;
    }
    case MatType::SplitSemisimple: {
      fe_t a = 0;
      while (F.add(F.sub(F.mul(a, a), F.mul(tr, a)), d) != 0) ++a;
      const fe_t b = F.div(d, a);
      switch (r.family) {
        case Family::Linear:
        case Family::Steinberg: return chi(r.i, d);
        case Family::Principal: return chi(r.i, a) * chi(r.j, b) + chi(r.i, b) * chi(r.j, a);
        case Family::Cuspidal: return 0.0;
      }
      break;
    }
    case MatType::NonSplit: {
      const fe_t z = elliptic_root_.at({tr, d});
      switch (r.family) {
        case Family::Linear: return chi(r.i, d);
        case Family::Steinberg: return -chi(r.i, d);
        case Family::Principal: return 0.0;
        case Family::Cuspidal: return -(lam(r.i, z) + lam(r.i, F2.frobenius(z)));
      }
      break;
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------

std::string type_name(const RowInfo& r) { return r.regular ? to_string(r.type) : "non-regular"; }

void CharacterTable::write_csv(std::ostream& os) const {
  os << "row,type,dim,class_id,re,im\n";
  os.precision(12);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int c = 0; c < classes->num_classes(); ++c)
      os << i << ',' << type_name(info[i]) << ',' << info[i].dim << ',' << c << ',' << rows[i][c].real() << ','
         << rows[i][c].imag() << '\n';
}

namespace {

// Residue (x, y) with m = x I + y B over F_q, for m in F_q[B].
std::pair<fe_t, fe_t> coords_in_FB(const Field& F, const Mat2& B, const Mat2& m) {
  fe_t y;
  if (B(0, 1) != 0) {
    y = F.div(m(0, 1), B(0, 1));
  } else if (B(1, 0) != 0) {
    y = F.div(m(1, 0), B(1, 0));
  } else {
    y = F.div(F.sub(m(0, 0), m(1, 1)), F.sub(B(0, 0), B(1, 1)));
  }
  return {F.sub(m(0, 0), F.mul(y, B(0, 0))), y};
}

}  // namespace

std::vector<ClassFunction> regular_characters(const ClassTablePtr& ct, const Mat2& B) {
  const Gl2& G = ct->group();
  const LocalRing& R = G.ring();
  const Field& F = G.field();
  const SubgroupDescriptor inertia = inertia_group(F, B);

  // The unit group o_2[B^]^x, identity first.
  std::vector<Mat2> units;
  std::unordered_map<code_t, int> id;
  auto elem = [&](re_t x, re_t y) { return add(R, scale(R, x, identity<2>()), scale(R, y, B)); };
  units.push_back(identity<2>());
  id[G.encode(identity<2>())] = 0;
  for (re_t x = 0; x < R.size(); ++x)
    for (re_t y = 0; y < R.size(); ++y) {
      const Mat2 m = elem(x, y);
      if (!R.is_unit(det(R, m)) || id.count(G.encode(m))) continue;
      id[G.encode(m)] = static_cast<int>(units.size());
      units.push_back(m);
    }
  const int n = static_cast<int>(units.size());
  if (static_cast<std::uint64_t>(n) != centralizer_order(F.q(), classify(F, B)) * F.q() * F.q())
    throw std::logic_error("regular_characters: unexpected unit group order");
  const AbelianGroup A{n, [&](int i, int j) { return id.at(G.encode(mul(R, units[i], units[j]))); }};

  // phi_B on the kernel of reduction, as exponents mod n.
  const int pp = R.p_squared();
  std::vector<std::int64_t> sub(n, -1);
  for (int i = 0; i < n; ++i)
    if (reduce(R, units[i]) == identity<2>()) {
      const Mat2 a = log_congruence(R, units[i]);
      sub[i] = static_cast<std::int64_t>(R.psi_exponent(R.varpi(trace(F, mul(F, B, a))))) * (n / pp);
    }
  const auto extensions = extend_characters(A, std::move(sub));

  // Factor each inertia element as r * (I + varpi A) with r in o_2[B^]^x.
  const auto members = subgroup_members(G, inertia);
  std::vector<int> cls(members.size()), rid(members.size());
  std::vector<cplx> psi(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Mat2 g = G.decode(members[k]);
    const auto [x, y] = coords_in_FB(F, B, reduce(R, g));
    const Mat2 r = elem(R.lift(x), R.lift(y));
    rid[k] = id.at(G.encode(r));
    psi[k] = phi_B(R, B, log_congruence(R, mul(R, inverse(R, r), g)));
    cls[k] = ct->class_of(members[k]);
  }
  std::vector<ClassFunction> out;
  const double hn = static_cast<double>(members.size());
  for (const auto& ext : extensions) {
    std::vector<cplx> v(ct->num_classes(), 0.0);
    for (std::size_t k = 0; k < members.size(); ++k) v[cls[k]] += unit_root(ext[rid[k]], n) * psi[k];
    for (int c = 0; c < ct->num_classes(); ++c)
      v[c] *= static_cast<double>(ct->order()) / (hn * static_cast<double>(ct->size(c)));
    out.emplace_back(ct, std::move(v));
  }
  return out;
}

std::vector<code_t> central_elements(const Gl2& g) { return subgroup_members(g, {SubgroupTag::Z, {}}); }

CharacterTable build_table(const ClassTablePtr& ct) {
  const Gl2& G = ct->group();
  const Tower& t = G.tower();
  const Field& F = t.field();
  const LocalRing& R = t.ring();
  CharacterTable tab;
  tab.classes = ct;

  for (const Mat2& B : regular_class_reps(F)) {
    const auto chars = regular_characters(ct, B);
    for (std::size_t e = 0; e < chars.size(); ++e) {
      RowInfo info;
      info.regular = true;
      info.type = classify(F, B);
      info.B = B;
      info.extension = static_cast<int>(e);
      info.dim = round_exact(chars[e].dim(), "regular dimension");
      tab.rows.push_back(chars[e]);
      tab.info.push_back(info);
    }
  }
  tab.n_regular = static_cast<int>(tab.rows.size());

  // Characters of o_2^x, identity first.
  std::vector<re_t> units{1};
  std::vector<int> uid(R.size(), -1);
  uid[1] = 0;
  for (re_t x = 0; x < R.size(); ++x)
    if (R.is_unit(x) && x != 1) {
      uid[x] = static_cast<int>(units.size());
      units.push_back(x);
    }
  const int nu = static_cast<int>(units.size());
  const auto twists = all_characters({nu, [&](int i, int j) { return uid[R.mul(units[i], units[j])]; }});

  const FiniteGl2Characters fin(t);
  for (int s = 0; s < fin.count(); ++s)
    for (std::size_t k = 0; k < twists.size(); ++k) {
      const auto& chi = twists[k];
      auto f = ClassFunction::from_function(ct, [&](code_t g) {
        return fin.value(s, G.reduce(g)) * unit_root(chi[uid[G.det_of(g)]], nu);
      });
      bool dup = false;
      for (int i = tab.n_regular; i < static_cast<int>(tab.rows.size()) && !dup; ++i)
        dup = tab.rows[i].approx_equal(f);
      if (dup) continue;
      RowInfo info;
      info.finite_char = s;
      info.twist = static_cast<int>(k);
      info.dim = fin.dim(s);
      tab.rows.push_back(std::move(f));
      tab.info.push_back(info);
    }
  tab.n_inflated = static_cast<int>(tab.rows.size()) - tab.n_regular;

  std::uint64_t sum_sq = 0;
  for (const auto& i : tab.info) sum_sq += static_cast<std::uint64_t>(i.dim * i.dim);
  if (static_cast<int>(tab.rows.size()) != ct->num_classes() || sum_sq != ct->order())
    throw std::runtime_error("character table incomplete: " + std::to_string(tab.rows.size()) + " rows for " +
                             std::to_string(ct->num_classes()) + " classes, sum of squared dimensions " +
                             std::to_string(sum_sq) + " vs group order " + std::to_string(ct->order()));
  return tab;
}

double gram_defect(const CharacterTable& t) {
  const ClassTable& ct = *t.classes;
  const int nc = ct.num_classes();
  // Weighted copies so the Gram matrix is a plain dot product.
  std::vector<std::vector<cplx>> w(t.size(), std::vector<cplx>(nc));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (int c = 0; c < nc; ++c)
      w[i][c] = std::conj(t.rows[i][c]) * (static_cast<double>(ct.size(c)) / static_cast<double>(ct.order()));
  double worst = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i; j < t.size(); ++j) {
      cplx s = 0;
      for (int c = 0; c < nc; ++c) s += t.rows[j][c] * w[i][c];
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

std::vector<long long> j1_profile(const ClassFunction& sigma) {
  const ClassTable& ct = *sigma.table();
  const Gl2& G = ct.group();
  const LocalRing& R = G.ring();
  const fe_t q = G.field().size();
  const fe_t n = q * q * q * q;
  std::vector<Mat2> as(n);
  std::vector<cplx> vals(n);
  for (fe_t a = 0; a < n; ++a) {
    fe_t v = a;
    for (int i = 0; i < 4; ++i, v /= q) as[a].e[i] = v % q;
    vals[a] = sigma.at(G.encode(add(R, identity<2>(), varpi(R, as[a]))));
  }
  std::vector<long long> out;
  for (const Mat2& B : all_class_reps(G.field())) {
    cplx s = 0;
    for (fe_t a = 0; a < n; ++a) s += vals[a] * std::conj(phi_B(R, B, as[a]));
    out.push_back(round_exact(s / static_cast<double>(n), "J1 multiplicity"));
  }
  return out;
}

MatType type_of(const ClassFunction& sigma) {
  const Field& F = sigma.table()->group().field();
  const auto reps = all_class_reps(F);
  const auto prof = j1_profile(sigma);
  bool any_scalar = false, found = false;
  MatType type = MatType::Scalar;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (prof[i] == 0) continue;
    const MatType t = classify(F, reps[i]);
    if (t == MatType::Scalar) {
      any_scalar = true;
    } else if (found) {
      throw std::runtime_error("type_of: restriction to J1 meets two regular classes");
    } else {
      found = true;
      type = t;
    }
  }
  if (found && any_scalar) throw std::runtime_error("type_of: restriction mixes regular and scalar characters");
  return type;
}

std::vector<RegularRowCount> regular_row_counts(const CharacterTable& t) {
  const ClassTable& ct = *t.classes;
  const auto z = central_elements(ct.group());
  // Central character of each regular row, clustered by equality on Z.
  struct Group {
    Mat2 B;
    std::vector<cplx> omega;
    int count = 0;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t.info[i].regular) continue;
    std::vector<cplx> omega;
    for (code_t g : z) omega.push_back(t.rows[i].at(g) / t.rows[i].dim());
    bool placed = false;
    for (auto& g : groups) {
      if (g.B != t.info[i].B) continue;
      bool same = true;
      for (std::size_t k = 0; k < z.size() && same; ++k) same = near(g.omega[k], omega[k]);
      if (same) {
        ++g.count;
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({t.info[i].B, omega, 1});
  }
  const Field& F = ct.group().field();
  std::vector<RegularRowCount> out;
  for (MatType type : {MatType::NonSplit, MatType::SplitNonSemisimple, MatType::SplitSemisimple}) {
    RegularRowCount e{type, regular_dimension(F.q(), type), 1 << 30, 0, 0};
    std::vector<Mat2> seen;
    for (const auto& g : groups) {
      if (classify(F, g.B) != type) continue;
      e.min_count = std::min(e.min_count, g.count);
      e.max_count = std::max(e.max_count, g.count);
      if (std::find(seen.begin(), seen.end(), g.B) == seen.end()) seen.push_back(g.B);
    }
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t.info[i].regular && t.info[i].type == type && t.info[i].dim != e.dim)
        throw std::runtime_error("regular row with a dimension outside q(q-1), q^2-1, q(q+1)");
    e.b_classes = static_cast<int>(seen.size());
    if (e.b_classes == 0) e.min_count = 0;
    out.push_back(e);
  }
  return out;
}

nlohmann::json table_summary(const CharacterTable& t) {
  const Tower& tw = t.classes->tower();
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& e : regular_row_counts(t))
    counts.push_back({{"type", to_string(e.type)},
                      {"dim", e.dim},
                      {"count", e.min_count == e.max_count ? nlohmann::json(e.min_count)
                                                           : nlohmann::json({e.min_count, e.max_count})},
                      {"b_classes", e.b_classes}});
  return {{"q", tw.q()},
          {"flavor", to_string(tw.flavor())},
          {"n_classes", t.classes->num_classes()},
          {"n_regular_rows", t.n_regular},
          {"n_inflated_rows", t.n_inflated},
          {"regular_row_counts", counts}};
}

}  // namespace dgw
