#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dgw/verify.hpp"

using namespace dgw;

namespace {

struct Settings {
  int q = 3;
  int n = 2;
  int l = 2;
  std::string flavor = "eq";
  std::string x = "1,0,1,1";
  long long theta_c = 1;
  bool sweep = false;
  int oracle_samples = 0;
  int sub_sum_samples = 20;
  std::string out;
  std::string config;
};

std::pair<int, int> prime_power(int q) {
  if (q < 3) throw std::invalid_argument("q must be an odd prime power");
  int p = 2;
  while (q % p != 0) ++p;
  int f = 0;
  for (int r = q; r > 1; r /= p, ++f)
    if (r % p != 0) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  if (p == 2) throw std::invalid_argument("q must be odd");
  return {p, f};
}

std::array<fe_t, 4> parse_x(const std::string& s, int q) {
  std::array<fe_t, 4> a{};
  std::stringstream ss(s);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 4) throw std::invalid_argument("--x takes four comma-separated coordinates");
    const int v = std::stoi(part);
    if (v < 0 || v >= q) throw std::invalid_argument("--x coordinate " + part + " is outside [0, q)");
    a[i++] = static_cast<fe_t>(v);
  }
  if (i != 4) throw std::invalid_argument("--x takes four comma-separated coordinates");
  return a;
}

// Applies config values for every option not given on the command line.
void apply_config(const CLI::App& app, Settings& s) {
  if (s.config.empty()) return;
  std::ifstream in(s.config);
  if (!in) throw std::runtime_error("cannot open config " + s.config);
  const auto j = nlohmann::json::parse(in);
  auto unset = [&](const char* flag) { return app.get_option(flag)->count() == 0; };
  if (j.contains("q") && unset("--q")) s.q = j["q"].get<int>();
  if (j.contains("n") && unset("--n")) s.n = j["n"].get<int>();
  if (j.contains("l") && unset("--l")) s.l = j["l"].get<int>();
  if (j.contains("flavor") && unset("--flavor")) s.flavor = j["flavor"].get<std::string>();
  if (j.contains("x") && unset("--x")) {
    if (j["x"].is_array()) {
      std::string joined;
      for (const auto& v : j["x"]) joined += (joined.empty() ? "" : ",") + std::to_string(v.get<int>());
      s.x = joined;
    } else {
      s.x = j["x"].get<std::string>();
    }
  }
  if (j.contains("theta_c") && unset("--theta-c")) s.theta_c = j["theta_c"].get<long long>();
  if (j.contains("sweep") && unset("--sweep")) s.sweep = j["sweep"].get<bool>();
  if (j.contains("oracle_samples") && unset("--oracle-samples")) s.oracle_samples = j["oracle_samples"].get<int>();
  if (j.contains("sub_sum_samples") && unset("--sub-sum-samples")) s.sub_sum_samples = j["sub_sum_samples"].get<int>();
  if (j.contains("out") && unset("--out")) s.out = j["out"].get<std::string>();
}

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--q", s.q, "residue field size (odd prime power)");
  cmd->add_option("--flavor", s.flavor, "o_2 = F_q[t]/(t^2) (eq) or W_2(F_q) (witt)")->check(CLI::IsMember({"eq", "witt"}));
  cmd->add_option("--n", s.n, "GL_{2n}; only n = 2 is supported");
  cmd->add_option("--l", s.l, "depth of o_l; only l = 2 is supported");
  cmd->add_option("--config", s.config, "JSON file with the same keys as the flags");
}

void add_character(CLI::App* cmd, Settings& s) {
  cmd->add_option("--x", s.x, "regular elliptic x as a0,a1,a2,a3");
  cmd->add_option("--theta-c", s.theta_c, "exponent of theta on the Teichmuller part");
}

void check_scope(const Settings& s) {
  if (s.n != 2 || s.l != 2) throw std::invalid_argument("only n = 2 and l = 2 are implemented");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << "\n";
}

int run_verify(const Settings& s) {
  const auto [p, f] = prime_power(s.q);
  const Workbench wb(p, flavor_from_string(s.flavor), f);
  VerifyOptions opt;
  opt.oracle_samples = s.oracle_samples;
  opt.sub_sum_samples = s.sub_sum_samples;
  std::vector<std::array<fe_t, 4>> xs{parse_x(s.x, s.q)};
  std::vector<long long> cs{s.theta_c};
  if (s.sweep) {
    xs = x_sweep();
    cs = c_sweep();
  }
  nlohmann::json reports = nlohmann::json::array();
  bool ok = true;
  for (const auto& x : xs)
    for (long long c : cs) {
      const auto r = verify(wb, x, c, opt);
      const bool pass = r.verdict && r.all_checks_pass();
      ok = ok && pass;
      std::cerr << "x = (" << x[0] << "," << x[1] << "," << x[2] << "," << x[3] << ") c = " << c << ": "
                << (pass ? "verified" : "FAILED") << " in " << r.timing.at("total") << " s\n";
      for (const auto& ch : r.checks)
        if (!ch.ok) std::cerr << "  failed " << ch.name << ": " << ch.detail << "\n";
      reports.push_back(r.to_json());
    }
  const nlohmann::json doc = s.sweep ? nlohmann::json{{"schema_version", kReportSchemaVersion}, {"verdict", ok}, {"reports", reports}}
                                     : reports.front();
  emit(s.out, doc.dump(2));
  return ok ? 0 : 1;
}

int run_table(const Settings& s) {
  const auto [p, f] = prime_power(s.q);
  const Workbench wb(p, flavor_from_string(s.flavor), f);
  const CharacterTable& t = wb.table();
  if (!s.out.empty()) {
    std::ofstream out(s.out);
    if (!out) throw std::runtime_error("cannot write " + s.out);
    t.write_csv(out);
  }
  auto summary = table_summary(t);
  summary["flavor"] = s.flavor;
  summary["gram_defect"] = gram_defect(t);
  std::cout << summary.dump(2) << "\n";
  return gram_defect(t) < kTol ? 0 : 1;
}

int run_omega(const Settings& s) {
  const auto [p, f] = prime_power(s.q);
  const auto t = Tower::create(p, f, flavor_from_string(s.flavor));
  const CosetGeometry geo(t, RegularEllipticElement::make(*t, parse_x(s.x, s.q)));
  emit(s.out, omega_summary(geo).dump(2));
  return 0;
}

int run_whittaker(const Settings& s) {
  const auto [p, f] = prime_power(s.q);
  const Workbench wb(p, flavor_from_string(s.flavor), f);
  const CosetGeometry geo(wb.tower(), RegularEllipticElement::make(*wb.tower(), parse_x(s.x, s.q)));
  const WhittakerEngine eng(wb.classes(), geo, s.theta_c);
  const auto rep = eng.assemble();
  auto j = whittaker_summary(rep, eng.character());
  double residual = 0;
  nlohmann::json decomp = nlohmann::json::array();
  for (const auto& piece : rep.pieces) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < wb.table().size(); ++i) {
      const cplx ip = inner_product(piece.chi, wb.table().rows[i]);
      residual = std::max(residual, std::abs(ip - cplx(std::round(ip.real()), 0.0)));
      if (std::llround(ip.real()) != 0) rows.push_back({{"row", i}, {"multiplicity", std::llround(ip.real())}});
    }
    decomp.push_back(rows);
  }
  j["decompositions"] = decomp;
  j["max_residual"] = residual;
  bool ok = residual < kTol;
  if (s.oracle_samples > 0) {
    nlohmann::json oracle = nlohmann::json::array();
    const Gl2& G = wb.classes()->group();
    std::vector<int> zj;
    for (int c = 0; c < wb.classes()->num_classes(); ++c) {
      const Mat2 r = G.reduce(wb.classes()->rep(c));
      if (r(0, 1) == 0 && r(1, 0) == 0 && r(0, 0) == r(1, 1)) zj.push_back(c);
    }
    for (const auto& piece : rep.pieces) {
      if (!piece.delta.nonvanishing()) continue;
      const MackeyOracle mo(eng.character(), piece.delta);
      const int k = std::min<int>(s.oracle_samples, static_cast<int>(zj.size()));
      for (int i = 0; i < k; ++i) {
        const code_t g = wb.classes()->rep(zj[static_cast<std::size_t>(i) * zj.size() / k]);
        const cplx v = mo.value(G.decode(g)), w = piece.chi.at(g);
        ok = ok && near(v, w);
        oracle.push_back({{"u", piece.delta.u},
                          {"v", piece.delta.v},
                          {"g", G.decode(g).e},
                          {"oracle", {v.real(), v.imag()}},
                          {"closed_form", {w.real(), w.imag()}}});
      }
    }
    j["oracle"] = oracle;
  }
  emit(s.out, j.dump(2));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whittaker model workbench for GL_4(o_2) at small q"};
  app.require_subcommand(1);
  Settings s;

  auto* verify_cmd = app.add_subcommand("verify", "compare pi_{N,psi} with the induced representation");
  add_common(verify_cmd, s);
  add_character(verify_cmd, s);
  verify_cmd->add_flag("--sweep", s.sweep, "run the deterministic x and theta sweep");
  verify_cmd->add_option("--oracle-samples", s.oracle_samples, "Z J^1 classes per delta checked by brute force (q <= 3)");
  verify_cmd->add_option("--sub-sum-samples", s.sub_sum_samples, "(S, R) samples for the projection sub-sums");
  verify_cmd->add_option("--out", s.out, "report path (stdout when omitted)");

  auto* table_cmd = app.add_subcommand("table", "character table of GL_2(o_2)");
  add_common(table_cmd, s);
  table_cmd->add_option("--out", s.out, "CSV path for the table");

  auto* omega_cmd = app.add_subcommand("omega", "double coset representatives and their invariants");
  add_common(omega_cmd, s);
  add_character(omega_cmd, s);
  omega_cmd->add_option("--out", s.out, "JSON path (stdout when omitted)");

  auto* whittaker_cmd = app.add_subcommand("whittaker", "characters of the pieces of pi_{N,psi}");
  add_common(whittaker_cmd, s);
  add_character(whittaker_cmd, s);
  whittaker_cmd->add_option("--oracle-samples", s.oracle_samples, "Z J^1 classes per delta checked by brute force (q <= 3)");
  whittaker_cmd->add_option("--out", s.out, "JSON path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);
  try {
    for (auto* cmd : {verify_cmd, table_cmd, omega_cmd, whittaker_cmd})
      if (cmd->parsed()) apply_config(*cmd, s);
    check_scope(s);
    if (verify_cmd->parsed()) return run_verify(s);
    if (table_cmd->parsed()) return run_table(s);
    if (omega_cmd->parsed()) return run_omega(s);
    return run_whittaker(s);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
