// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <string>

#include "dgw/verify.hpp"

using namespace dgw;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body, double budget_s) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (s > budget_s) {
    o.ok = false;
    o.detail += " over budget";
  }
  if (!o.ok) ++failures;
  std::printf("criterion %d %s  %s: %s [%.1f s, budget %.0f s]\n", id, o.ok ? "PASS" : "FAIL", title, o.detail.c_str(), s,
              budget_s);
  std::fflush(stdout);
}

std::vector<RegularEllipticElement> all_elliptic(const Tower& t) {
  std::vector<RegularEllipticElement> out;
  const fe_t q = t.field().size();
  for (fe_t c = 0; c < q * q * q * q; ++c) {
    const std::array<fe_t, 4> a{c % q, (c / q) % q, (c / (q * q)) % q, c / (q * q * q)};
    if (a[2] != 0 || a[3] != 0) out.push_back(RegularEllipticElement::make(t, a));
  }
  return out;
}

const Check& find_check(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::logic_error("missing check " + name);
}

std::string str(long long v) { return std::to_string(v); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", v);
  return buf;
}

}  // namespace

int main() {
  std::printf("tolerance %.0e on all complex comparisons\n", kTol);

  // Built once; reused by the later criteria.
  const Workbench eq3(3, Flavor::EqualChar);
  const Workbench witt3(3, Flavor::MixedChar);
  std::unique_ptr<Workbench> eq5;

  report(1, "double cosets", [&] {
    Outcome o;
    long long pairs = 0, xs = 0;
    for (const Workbench* wb : {&eq3, &witt3}) {
      const Tower& t = *wb->tower();
      const int q = t.q();
      const auto g = grassmann_orbit_oracle(t);
      std::set<int> omega_orbits(g.omega_orbit.begin(), g.omega_orbit.end());
      for (int w : g.aw_orbit) o.ok = o.ok && omega_orbits.count(w);
      o.ok = o.ok && g.num_orbits == q + 1;
      for (const auto& x : all_elliptic(t)) {
        ++xs;
        const CosetGeometry geo(wb->tower(), x);
        o.ok = o.ok && static_cast<int>(geo.omega0().size()) == q + 1;
        const auto om = geo.omega();
        for (const auto& d : om)
          for (const auto& e : om) {
            ++pairs;
            o.ok = o.ok && geo.same_double_coset(d, e) ==
                               (g.omega_orbit[d.u * q + d.v] == g.omega_orbit[e.u * q + e.v]);
          }
      }
    }
    o.detail = "|Omega_0| = 4 and criterion = Grassmann orbits for " + str(xs) + " x (" + str(pairs) +
               " pairs), every A_w covered";
    return o;
  }, 5);

  report(2, "det L closed form and unique vanishing", [&] {
    Outcome o;
    eq5 = std::make_unique<Workbench>(5, Flavor::EqualChar);
    long long n = 0, xs = 0;
    for (const Workbench* wb : {&eq3, &witt3, static_cast<const Workbench*>(eq5.get())}) {
      for (const auto& x : all_elliptic(*wb->tower())) {
        ++xs;
        const CosetGeometry geo(wb->tower(), x);
        for (const auto& d : geo.omega()) {
          ++n;
          o.ok = o.ok && geo.det_L_closed_form(d.u, d.v) == d.det_L;
        }
        const auto om0 = geo.omega0();
        o.ok = o.ok && std::count_if(om0.begin(), om0.end(), [](const CosetRep& d) { return !d.nonvanishing(); }) == 1;
      }
    }
    o.detail = str(n) + " (x, u, v) triples exact at q = 3 (both flavors) and q = 5, one zero per Omega_0 for " +
               str(xs) + " x";
    return o;
  }, 60);

  report(3, "dimensions", [&] {
    Outcome o;
    std::string totals;
    for (const Workbench* wb : {&eq3, &witt3, static_cast<const Workbench*>(eq5.get())}) {
      const Tower& t = *wb->tower();
      const long long q = t.q();
      for (const auto& xa : x_sweep()) {
        const CosetGeometry geo(wb->tower(), RegularEllipticElement::make(t, xa));
        const WhittakerEngine eng(wb->classes(), geo, 1);
        long long total = 0;
        for (const auto& d : geo.omega0()) {
          const long long want = d.is_identity() ? q * (q - 1) : d.nonvanishing() ? q * (q * q - 1) : 0;
          o.ok = o.ok && eng.dim_pi_delta(d) == want && eng.dim_by_count(d) == want;
          total += want;
        }
        o.ok = o.ok && total == q * q * q * (q - 1);
        if (xa == x_sweep().front() && wb != &witt3) totals += (totals.empty() ? "" : ", ") + str(total);
      }
    }
    o.detail = "per-delta dims q(q-1) / q(q^2-1) / 0 by formula and by count; totals " + totals + " at q = 3, 5";
    return o;
  }, 60);

  report(4, "GL_2(o_2) character table", [&] {
    Outcome o;
    for (const Workbench* wb : {&eq3, &witt3}) {
      const CharacterTable& tab = wb->table();
      const long long q = 3;
      long long sum_sq = 0;
      for (const auto& r : tab.info) sum_sq += r.dim * r.dim;
      o.ok = o.ok && sum_sq == q * q * q * q * (q * q - 1) * (q * q - q);
      o.ok = o.ok && static_cast<int>(tab.size()) == wb->classes()->num_classes();
      const double gram = gram_defect(tab);
      o.ok = o.ok && gram < kTol;
      for (const auto& e : regular_row_counts(tab)) {
        long long want_count = 0, want_dim = 0;
        switch (e.type) {
          case MatType::NonSplit: want_count = q + 1, want_dim = q * (q - 1); break;
          case MatType::SplitNonSemisimple: want_count = q, want_dim = q * q - 1; break;
          case MatType::SplitSemisimple: want_count = q - 1, want_dim = q * (q + 1); break;
          default: o.ok = false;
        }
        o.ok = o.ok && e.min_count == want_count && e.max_count == want_count && e.dim == want_dim;
      }
      if (wb == &eq3)
        o.detail = str(tab.size()) + " rows, sum dim^2 = " + str(sum_sq) + ", Gram defect " + sci(gram) +
                   ", regular row counts (4, 3, 2) and dims (6, 8, 12)";
    }
    return o;
  }, 60);

  // Criteria 5-7 and 9 share the q = 3 sweep.
  std::vector<VerificationReport> runs_eq, runs_witt;
  report(5, "brute-force oracle and projection sub-sums", [&] {
    Outcome o;
    VerifyOptions opt;
    opt.oracle_samples = 3;
    opt.sub_sum_samples = 20;
    long long oracle = 0, sums = 0;
    for (const Workbench* wb : {&eq3, &witt3})
      for (const auto& xa : {x_sweep()[0], x_sweep()[2]}) {
        const auto r = verify(*wb, xa, 1, opt);
        for (const char* name : {"mackey_oracle", "projection_sub_sums", "identity_coset_sums"}) {
          const Check& c = find_check(r, name);
          o.ok = o.ok && c.ok && !c.skipped;
          if (!c.ok) o.detail += std::string(name) + " failed (" + c.detail + "); ";
        }
        oracle += find_check(r, "mackey_oracle").evidence;
        sums += find_check(r, "projection_sub_sums").evidence;
      }
    o.detail += str(oracle) + " oracle values (3 Z J^1 classes per non-vanishing delta), " + str(sums) +
                " sub-sums over 20 (S, R) samples per delta, at q = 3 both flavors";
    return o;
  }, 600);

  report(6, "main theorem", [&] {
    Outcome o;
    double worst = 0, residual = 0;
    long long runs = 0;
    const auto t3 = Clock::now();
    for (const auto& xa : x_sweep())
      for (long long c : c_sweep()) {
        runs_eq.push_back(verify(eq3, xa, c, VerifyOptions{}));
        runs_witt.push_back(verify(witt3, xa, c, VerifyOptions{}));
        for (const auto* r : {&runs_eq.back(), &runs_witt.back()}) {
          ++runs;
          const bool binary =
              std::all_of(r->mult_pi.begin(), r->mult_pi.end(), [](long long m) { return m == 0 || m == 1; });
          o.ok = o.ok && r->mult_pi == r->mult_Pi && binary && r->max_discrepancy < kTol && r->max_residual < kTol &&
                 r->verdict;
          worst = std::max(worst, r->max_discrepancy);
          residual = std::max(residual, r->max_residual);
        }
      }
    const double s3 = std::chrono::duration<double>(Clock::now() - t3).count();
    o.ok = o.ok && s3 < 120;
    const auto t5 = Clock::now();
    const auto r5 = verify(*eq5, x_sweep()[1], 2, VerifyOptions{});
    const double s5 = std::chrono::duration<double>(Clock::now() - t5).count();
    ++runs;
    o.ok = o.ok && r5.verdict && r5.mult_pi == r5.mult_Pi && s5 < 1800;
    worst = std::max(worst, r5.max_discrepancy);
    residual = std::max(residual, r5.max_residual);
    char times[96];
    std::snprintf(times, sizeof times, "both flavors at q = 3 in %.1f s; one at q = 5 in %.1f s", s3, s5);
    o.detail = str(runs) + " runs (4 x including 2 with scalar X1, 5 theta exponents, " + times +
               "): identical {0,1} vectors, max discrepancy " + sci(worst) + ", max residual " + sci(residual);
    return o;
  }, 120 + 1800);

  report(7, "structural classification", [&] {
    Outcome o;
    long long mismatches = 0, constituents = 0;
    for (const auto* runs : {&runs_eq, &runs_witt})
      for (const auto& r : *runs) {
        for (const auto* s : {&r.structure_pi, &r.structure_Pi}) {
          mismatches += static_cast<long long>(s->mismatches.size());
          constituents += static_cast<long long>(s->constituents.size());
          const bool scalar = r.x[1] == 0;
          o.ok = o.ok && s->ok() && s->block_matches && s->block_irreducible == !scalar;
        }
        o.ok = o.ok && find_check(r, "identity_block_equals_two_x1_induction").ok;
      }
    o.ok = o.ok && !runs_eq.empty() && mismatches == 0;
    o.detail = str(mismatches) + " mismatches over " + str(constituents) +
               " classified constituents; block irreducible exactly when X1 is not scalar";
    return o;
  }, 60);

  report(8, "restriction law for the induced side", [&] {
    Outcome o;
    long long xs = 0, cor = 0;
    for (const Workbench* wb : {&eq3, &witt3}) {
      const Tower& t = *wb->tower();
      const Field& F = t.field();
      for (const auto& x : all_elliptic(t)) {
        ++xs;
        const PrimitiveCharacter chi(wb->tower(), x, 1);
        const auto prof = j1_profile(theta_Pi(wb->classes(), chi));
        std::vector<int> seen;
        for (std::size_t b = 0; b < prof.size(); ++b)
          if (prof[b] > 0) seen.push_back(static_cast<int>(b));
        o.ok = o.ok && seen == restriction_family(t, x);
        if (!x.x1_scalar()) {
          ++cor;
          o.ok = o.ok && prof[b_class_index(F, add(F, x.X1, x.X1))] == 1;
        }
      }
    }
    o.detail = "B-class set equals the family for all " + str(xs) + " x; multiplicity of phi_{2X1} is 1 for " +
               str(cor) + " non-scalar X1";
    return o;
  }, 300);

  report(9, "flavor invariance", [&] {
    Outcome o;
    o.ok = runs_eq.size() == runs_witt.size() && !runs_eq.empty();
    long long compared = 0;
    for (std::size_t i = 0; o.ok && i < runs_eq.size(); ++i) {
      ++compared;
      o.ok = integer_fingerprint(runs_eq[i]) == integer_fingerprint(runs_witt[i]) &&
             runs_eq[i].mult_pi.size() == runs_witt[i].mult_pi.size() &&
             canonical_profile(runs_eq[i]) == canonical_profile(runs_witt[i]);
    }
    const bool tables = regular_row_counts(eq3.table()).size() == regular_row_counts(witt3.table()).size() &&
                        eq3.classes()->num_classes() == witt3.classes()->num_classes() &&
                        eq3.table().n_regular == witt3.table().n_regular;
    o.ok = o.ok && tables;
    o.detail = str(compared) + " (x, theta) pairs: counts, dimensions, det L values and constituent profiles agree";
    return o;
  }, 10);

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
