// Command-line front end for the qkdist library.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qkdist/qkdist.hpp"

namespace {

using namespace qkdist;

ParabolicSubset parse_parabolic(const std::string& text, std::size_t rank) {
  std::set<std::size_t> idx;
  for (std::size_t i : parse_word(text, rank)) idx.insert(i);
  return ParabolicSubset(std::move(idx));
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

FlagVariety make_variety(const std::string& type, const std::string& parabolic) {
  CartanType t = CartanType::parse(type);
  return FlagVariety::create(t, parse_parabolic(parabolic, static_cast<std::size_t>(t.rank)));
}

int cmd_roots(const std::string& type) {
  auto sys = build_root_system(CartanType::parse(type));
  for (const Root& a : sys->positive_roots()) std::cout << join(a.coeffs) << '\t' << join(sys->coroot(a).coeffs) << '\n';
  return 0;
}

int cmd_weyl(const std::string& type, const std::string& parabolic) {
  CartanType t = CartanType::parse(type);
  WeylGroup group(build_root_system(t));
  for (const auto& w : group.enumerate_WP(parse_parabolic(parabolic, static_cast<std::size_t>(t.rank))))
    std::cout << w.to_string() << '\n';
  return 0;
}

/// Prints a mismatch on stderr; returns true when the oracle agrees.
bool oracle_agrees(const FlagVariety& x, const WeylElement& u, const WeylElement& v, const Degree& d) {
  auto frontier = pareto_min_degrees(x, u, v);
  if (frontier.size() == 1 && frontier.front() == d) return true;
  std::cerr << "oracle mismatch for (" << u.to_string() << ", " << v.to_string() << "): dist = (" << d.to_string()
            << "), Pareto frontier =";
  for (const auto& f : frontier) std::cerr << " (" << f.to_string() << ")";
  std::cerr << '\n';
  return false;
}

int cmd_dist(const std::string& type, const std::string& parabolic, const std::string& us, const std::string& vs,
             bool oracle) {
  FlagVariety x = make_variety(type, parabolic);
  WeylElement u = x.parse_label(us);
  WeylElement v = x.parse_label(vs);
  Degree d = x.dist(u, v);
  std::cout << d.to_string() << '\n';
  return oracle && !oracle_agrees(x, u, v, d) ? 1 : 0;
}

int cmd_dist_table(const std::string& type, const std::string& parabolic, bool oracle) {
  FlagVariety x = make_variety(type, parabolic);
  int status = 0;
  std::cout << "u\tv\tdist\n";
  for (const auto& u : x.labels()) {
    for (const auto& v : x.labels()) {
      Degree d = x.dist(u, v);
      std::cout << u.to_string() << '\t' << v.to_string() << '\t' << d.to_string() << '\n';
      if (oracle && !oracle_agrees(x, u, v, d)) status = 1;
    }
  }
  return status;
}

int cmd_gw2(const std::string& type, const std::string& parabolic, const std::string& us, const std::string& vs,
            const std::string& ds) {
  FlagVariety x = make_variety(type, parabolic);
  Degree d = Degree::parse(ds, x.degree_keys());
  std::cout << gw_two_point(x, x.parse_label(us), x.parse_label(vs), d) << '\n';
  return 0;
}

int cmd_metric(const std::string& type, const std::string& parabolic, const std::string& us, const std::string& vs,
               const std::string& cap) {
  FlagVariety x = make_variety(type, parabolic);
  WeylElement u = x.parse_label(us);
  WeylElement v = x.parse_label(vs);
  if (cap.empty()) {
    std::cout << metric(x, u, v).to_string() << '\n';
    return 0;
  }
  auto t = metric_truncated(x, u, v, Degree::parse(cap, x.degree_keys()));
  for (const auto& [d, c] : t.coeffs) std::cout << d.to_string() << '\t' << c << '\n';
  return 0;
}

int cmd_mobius(const std::string& type, const std::string& parabolic, const std::string& vs) {
  FlagVariety x = make_variety(type, parabolic);
  auto f = mobius_coeffs(x, x.parse_label(vs));
  for (std::size_t z = 0; z < f.size(); ++z) std::cout << x.labels()[z].to_string() << '\t' << f[z] << '\n';
  return 0;
}

int cmd_verify(const std::string& path, const std::string& check, bool verbose, const std::string& format) {
  CheckKind kind = parse_check_kind(check);
  if (format != "text" && format != "json") throw ParseError("unknown format '" + format + "'");
  QKTable table = load_table(path);
  Report rep = run_checks(table, kind);

  if (format == "json") {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : rep.records)
      records.push_back({{"check", r.check}, {"u", r.u}, {"v", r.v}, {"expected", r.expected}, {"actual", r.actual},
                         {"pass", r.pass}});
    nlohmann::json out{{"table", path},
                       {"type", table.variety().system()->type().name()},
                       {"pass", rep.passed()},
                       {"failures", rep.failures()},
                       {"records", records}};
    std::cout << out.dump(2) << '\n';
    return rep.passed() ? 0 : 1;
  }

  if (verbose) {
    std::cout << "check\tu\tv\texpected\tactual\tresult\n";
    for (const auto& r : rep.records)
      std::cout << r.check << '\t' << r.u << '\t' << r.v << '\t' << r.expected << '\t' << r.actual << '\t'
                << (r.pass ? "pass" : "FAIL") << '\n';
  } else {
    std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
    std::vector<std::string> order;
    for (const auto& r : rep.records) {
      if (!counts.count(r.check)) order.push_back(r.check);
      (r.pass ? counts[r.check].first : counts[r.check].second)++;
    }
    std::cout << "check\tpassed\tfailed\n";
    for (const auto& c : order) std::cout << c << '\t' << counts[c].first << '\t' << counts[c].second << '\n';
    if (const auto* f = rep.first_failure())
      std::cout << "first failure: " << f->check << " (" << f->u << ", " << f->v << "): expected " << f->expected
                << ", got " << f->actual << '\n';
  }
  std::cout << (rep.passed() ? "PASS" : "FAIL") << '\n';
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distances between opposite Schubert varieties and quantum K-theory checks"};
  app.require_subcommand(1);

  std::string type, parabolic, u, v, d, cap, file, check = "all", format = "text";
  bool oracle = false;
  bool verbose = false;

  auto* roots = app.add_subcommand("roots", "positive roots and coroots, tab-separated");
  roots->add_option("type", type, "Cartan type, e.g. A3")->required();

  auto* weyl = app.add_subcommand("weyl", "list W or W^P as canonical reduced words");
  weyl->add_option("type", type)->required();
  weyl->add_option("--parabolic", parabolic, "comma-separated simple roots of Delta_P");

  auto* dist = app.add_subcommand("dist", "distance degree between X^u and X_v");
  dist->add_option("type", type)->required();
  dist->add_option("u", u)->required();
  dist->add_option("v", v)->required();
  dist->add_option("--parabolic", parabolic);
  dist->add_flag("--oracle", oracle, "cross-check with the Pareto chain search");

  auto* table = app.add_subcommand("dist-table", "all distances over W^P x W^P as TSV");
  table->add_option("type", type)->required();
  table->add_option("--parabolic", parabolic);
  table->add_flag("--oracle", oracle, "cross-check with the Pareto chain search");

  auto* gw2 = app.add_subcommand("gw2", "two-point K-theoretic Gromov-Witten invariant <O^u, O_v>_d");
  gw2->add_option("type", type)->required();
  gw2->add_option("u", u)->required();
  gw2->add_option("v", v)->required();
  gw2->add_option("d", d, "degree, comma-separated")->required();
  gw2->add_option("--parabolic", parabolic);

  auto* met = app.add_subcommand("metric", "quantum K-metric ((O^u, O_v))");
  met->add_option("type", type)->required();
  met->add_option("u", u)->required();
  met->add_option("v", v)->required();
  met->add_option("--parabolic", parabolic);
  met->add_option("--cap", cap, "print the series truncated at this degree");

  auto* mob = app.add_subcommand("mobius", "coefficients f_z with O^v = sum f_z O_z");
  mob->add_option("type", type)->required();
  mob->add_option("v", v)->required();
  mob->add_option("--parabolic", parabolic);

  auto* ver = app.add_subcommand("verify", "check a quantum K structure-constant table");
  ver->add_option("file", file)->required();
  ver->add_option("--check", check, "euler|sumcoef|ringhom|all");
  ver->add_flag("--verbose", verbose);
  ver->add_option("--format", format, "text|json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*roots) return cmd_roots(type);
    if (*weyl) return cmd_weyl(type, parabolic);
    if (*dist) return cmd_dist(type, parabolic, u, v, oracle);
    if (*table) return cmd_dist_table(type, parabolic, oracle);
    if (*gw2) return cmd_gw2(type, parabolic, u, v, d);
    if (*met) return cmd_metric(type, parabolic, u, v, cap);
    if (*mob) return cmd_mobius(type, parabolic, v);
    if (*ver) return cmd_verify(file, check, verbose, format);
  } catch (const qkdist::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
