// Acceptance suite: one PASS/FAIL line per criterion, exact integer equality
// throughout. Exit status is nonzero iff any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qkdist/qkdist.hpp"

using namespace qkdist;

namespace {

struct Space {
  const char* name;
  CartanType type;
  std::set<std::size_t> parabolic;  // 0-based
};

// Parabolics are named by Delta_P, 1-based.
const std::vector<Space> kSpaces = {
    {"A1/B", {Family::A, 1}, {}},           {"A2/B", {Family::A, 2}, {}},
    {"A3/B", {Family::A, 3}, {}},           {"B2/B", {Family::B, 2}, {}},
    {"G2/B", {Family::G, 2}, {}},           {"A2/P{2} (P^2)", {Family::A, 2}, {1}},
    {"A3/P{1,3} (Gr(2,4))", {Family::A, 3}, {0, 2}}, {"B2/P{2} (quadric)", {Family::B, 2}, {1}},
};
const std::vector<std::size_t> kExpectedSizes = {2, 6, 24, 8, 12, 3, 6, 4};

constexpr double kCriterion1Seconds = 60.0;

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << "  [" << detail << "]" << std::endl;
  if (!ok) ++failures;
}

FlagVariety make(const Space& s) { return FlagVariety::create(s.type, ParabolicSubset(s.parabolic)); }

void criterion1(const std::vector<FlagVariety>& spaces) {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::size_t pairs = 0;
  std::string witness;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    const auto& x = spaces[k];
    if (x.labels().size() != kExpectedSizes[k]) {
      ok = false;
      witness = std::string(kSpaces[k].name) + " has |W^P| = " + std::to_string(x.labels().size());
    }
    for (const auto& u : x.labels())
      for (const auto& v : x.labels()) {
        ++pairs;
        auto frontier = pareto_min_degrees(x, u, v);
        if (frontier.size() != 1 || !(frontier[0] == x.dist(u, v))) {
          if (ok) witness = std::string(kSpaces[k].name) + " (" + u.to_string() + ", " + v.to_string() + ")";
          ok = false;
        }
      }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= kCriterion1Seconds) ok = false;
  std::ostringstream d;
  d << pairs << " pairs, " << secs << " s";
  if (!witness.empty()) d << ", first mismatch " << witness;
  report(1, "Pareto frontier is the singleton {dist}", ok, d.str());
}

void criterion2(const std::vector<FlagVariety>& spaces) {
  bool ok = true;
  std::size_t pairs = 0;
  for (const auto& x : spaces)
    for (const auto& u : x.labels())
      for (const auto& v : x.labels()) {
        ++pairs;
        ok &= x.dist(u, v).is_zero() == bruhat_leq(u, v);
      }
  report(2, "dist(u,v) = 0 iff u <= v", ok, std::to_string(pairs) + " pairs");
}

void criterion3(const std::vector<FlagVariety>& spaces) {
  struct Known {
    std::size_t space;
    std::vector<std::int64_t> value;
  };
  // Pinned regression values, each also re-derived here by the Pareto search.
  const std::vector<Known> known = {{0, {1}}, {1, {1, 1}}, {6, {2}}};
  bool ok = true;
  std::string detail;
  for (const auto& k : known) {
    const auto& x = spaces[k.space];
    const auto& top = x.labels().back();
    const auto& e = x.labels().front();
    Degree want(x.degree_keys(), k.value);
    Degree got = x.dist(top, e);
    auto frontier = pareto_min_degrees(x, top, e);
    bool good = got == want && frontier.size() == 1 && frontier[0] == want;
    ok &= good;
    detail += std::string(detail.empty() ? "" : "; ") + kSpaces[k.space].name + " -> (" + got.to_string() + ")";
  }
  report(3, "known distances between opposite points", ok, detail);
}

void criterion4(const std::vector<FlagVariety>& spaces) {
  bool ok = true;
  for (const auto& x : spaces) {
    const auto& L = x.labels();
    for (std::size_t i = 0; i < L.size(); ++i)
      for (std::size_t j = 0; j < L.size(); ++j) {
        int gw = gw_two_point(x, L[i], L[j], x.zero_degree());
        ok &= gw == (bruhat_leq(L[i], L[j]) ? 1 : 0);
        ok &= gw == pairing_classical(x, L[i], L[j]);
        // Labels are sorted by length: lower triangle vanishes, diagonal is 1.
        if (i == j) ok &= gw == 1;
        if (j < i) ok &= gw == 0;
      }
  }
  report(4, "degree-0 invariants = Bruhat incidence, unitriangular", ok, "exhaustive");
}

void criterion5(const std::vector<FlagVariety>& spaces) {
  bool ok = true;
  std::size_t comparisons = 0;
  for (const auto& x : spaces) {
    Degree top_cap = x.zero_degree();
    for (std::size_t k = 0; k < top_cap.size(); ++k) top_cap[k] = 3;
    for (const auto& u : x.labels())
      for (const auto& v : x.labels()) {
        ClosedSeries closed = metric(x, u, v);
        ok &= chi_series(closed) == QPolynomial::monomial(x.dist(u, v));
        for (const auto& cap : degrees_below(top_cap)) {
          ++comparisons;
          ok &= metric_truncated(x, u, v, cap) == truncate(closed, cap);
        }
      }
  }
  report(5, "truncated metric = truncated closed form; chi_series(metric) = q^dist", ok,
         std::to_string(comparisons) + " (pair, cap) comparisons");
}

void criterion6() {
  struct Pair {
    CartanType type;
    std::set<std::size_t> small, large;
  };
  const std::vector<Pair> pairs = {
      {{Family::A, 2}, {}, {1}},
      {{Family::A, 3}, {}, {0, 2}},
      {{Family::B, 2}, {}, {1}},
  };
  bool ok = true;
  std::size_t checked = 0;
  for (const auto& p : pairs) {
    auto group = std::make_shared<const WeylGroup>(build_root_system(p.type));
    auto rank_one = std::make_shared<const RankOneDistances>(group);
    FlagVariety fine(group, ParabolicSubset(p.small), rank_one);
    FlagVariety coarse(group, ParabolicSubset(p.large), rank_one);
    for (const auto& u : coarse.labels())
      for (const auto& v : coarse.labels()) {
        ++checked;
        Degree dc = coarse.dist(u, v);
        Degree df = fine.dist(u, v);
        // Same comparison on the independent chain-search side.
        Degree pc = pareto_min_degrees(coarse, u, v).front();
        Degree pf = pareto_min_degrees(fine, u, v).front();
        for (std::size_t k = 0; k < dc.size(); ++k) {
          std::size_t beta = dc.keys()[k];
          ok &= dc[k] == df.at_root(beta);
          ok &= pc[k] == pf.at_root(beta);
        }
      }
  }
  report(6, "distances restrict componentwise along Delta_P in Delta_P'", ok, std::to_string(checked) + " pairs");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli_verify(const std::string& cli, const std::string& path) {
  std::string cmd = "\"" + cli + "\" verify \"" + path + "\" > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

/// Every single-term corruption of the bundled P^1 table: N +- 1 and
/// degree +- 1 (when still effective) on each term line.
std::vector<std::string> corruptions(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (std::count(lines[i].begin(), lines[i].end(), '|') != 4) continue;
    std::vector<std::string> f;
    std::stringstream ls(lines[i]);
    for (std::string s; std::getline(ls, s, '|');) f.push_back(s);
    long d = std::stol(f[3]);
    long n = std::stol(f[4]);
    auto with = [&](long dd, long nn) {
      auto copy = lines;
      copy[i] = f[0] + "|" + f[1] + "|" + f[2] + "| " + std::to_string(dd) + " | " + std::to_string(nn);
      std::string s;
      for (const auto& l : copy) s += l + "\n";
      return s;
    };
    out.push_back(with(d, n + 1));
    out.push_back(with(d, n - 1));
    out.push_back(with(d + 1, n));
    if (d > 0) out.push_back(with(d - 1, n));
  }
  return out;
}

void criterion7() {
  const std::string path = std::string(QKDIST_DATA_DIR) + "/p1.qkt";
  const std::string cli = QKDIST_CLI_PATH;
  bool ok = true;
  std::string detail;

  QKTable table = load_table(path);
  bool e = check_euler_dist(table).passed();
  Report sc = check_sumcoef(table);
  bool s = sc.passed();
  bool r = check_ringhom(table).passed();
  ok &= e && s && r;
  ok &= run_cli_verify(cli, path) == 0;
  detail += std::string("bundled table euler/sumcoef/ringhom = ") + (e ? "pass" : "fail") + "/" + (s ? "pass" : "fail") +
            "/" + (r ? "pass" : "fail");

  auto variants = corruptions(read_file(path));
  std::size_t caught = 0;
  auto tmp = std::filesystem::temp_directory_path() / "qkdist_acceptance_corrupt.qkt";
  for (const auto& text : variants) {
    bool failed_somewhere = false;
    try {
      std::istringstream in(text);
      QKTable t = parse_table(in);
      failed_somewhere = !run_checks(t, CheckKind::all).passed();
    } catch (const Error&) {
      failed_somewhere = true;  // rejected at load (unit violation)
    }
    {
      std::ofstream out(tmp);
      out << text;
    }
    bool cli_nonzero = run_cli_verify(cli, tmp.string()) != 0;
    if (failed_somewhere && cli_nonzero) ++caught;
  }
  std::filesystem::remove(tmp);
  ok &= caught == variants.size() && variants.size() >= 6;
  detail += "; corruptions caught " + std::to_string(caught) + "/" + std::to_string(variants.size());
  report(7, "verification harness on QK(P^1)", ok, detail);
}

void criterion8(const std::vector<FlagVariety>& spaces) {
  bool ok = true;
  std::size_t count = 0;
  for (const auto& x : spaces) {
    const auto& L = x.labels();
    for (const auto& v : L) {
      ++count;
      auto f = mobius_coeffs(x, v);
      std::int64_t sum = 0;
      for (auto c : f) sum += c;
      ok &= sum == 1;
      // Reconstruct O^v = sum_z f_z O^{dual(z)} and pair with every O^u.
      KClass rebuilt(Basis::schubert);
      for (std::size_t z = 0; z < L.size(); ++z) rebuilt.add(L[z], f[z]);
      ok &= rebuilt.to_opposite(x) == KClass::opposite(v);
      for (const auto& u : L) {
        std::int64_t paired = 0;
        for (std::size_t z = 0; z < L.size(); ++z) paired += f[z] * (oracle::subword_leq(u, L[z]) ? 1 : 0);
        ok &= paired == (bruhat_leq(v, dual(u, x.parabolic())) ? 1 : 0);
      }
    }
  }
  report(8, "Mobius inversion round trip, sum f_z = 1", ok, std::to_string(count) + " classes");
}

void criterion9() {
  bool ok = true;
  std::size_t pairs = 0;
  for (auto t : {CartanType{Family::A, 2}, CartanType{Family::A, 3}, CartanType{Family::B, 2}, CartanType{Family::G, 2}}) {
    WeylGroup g(build_root_system(t));
    for (const auto& v : g.elements()) {
      auto below = oracle::subword_products(v);
      for (const auto& u : g.elements()) {
        ++pairs;
        ok &= bruhat_leq(u, v) == (below.count(u.raw_images()) != 0);
      }
    }
  }
  report(9, "lifting-property Bruhat order = subword criterion", ok, std::to_string(pairs) + " ordered pairs");
}

}  // namespace

int main() {
  std::vector<FlagVariety> spaces;
  for (const auto& s : kSpaces) spaces.push_back(make(s));

  criterion1(spaces);
  criterion2(spaces);
  criterion3(spaces);
  criterion4(spaces);
  criterion5(spaces);
  criterion6();
  criterion7();
  criterion8(spaces);
  criterion9();

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
