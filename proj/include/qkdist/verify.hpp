#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qkdist/degree.hpp"
#include "qkdist/distance.hpp"
#include "qkdist/error.hpp"
#include "qkdist/qkcore.hpp"
#include "qkdist/weyl.hpp"

namespace qkdist {

/// A product O^u * O^v requested from a table that does not list it.
class MissingRowError : public Error {
 public:
  using Error::Error;
};

/// Structure constants N^{w,d}_{u,v} of a candidate quantum K product
/// O^u * O^v = sum N^{w,d}_{u,v} q^d O^w, indexed by positions in W^P.
class QKTable {
 public:
  using Row = std::map<std::pair<std::size_t, Degree>, std::int64_t>;

  explicit QKTable(FlagVariety x) : x_(std::move(x)) {}

  const FlagVariety& variety() const { return x_; }

  /// Row for the ordered pair; rows are stored symmetrically.
  const Row* row(std::size_t u, std::size_t v) const {
    auto it = rows_.find({u, v});
    return it == rows_.end() ? nullptr : &it->second;
  }

  /// Number of distinct unordered pairs with a row.
  std::size_t row_count() const {
    std::size_t n = 0;
    for (const auto& [key, r] : rows_)
      if (key.first <= key.second) ++n;
    return n;
  }

  /// Sets the row of (u, v) and (v, u), replacing whatever was there.
  void set_row(std::size_t u, std::size_t v, Row r) {
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    rows_[{v, u}] = r;
    rows_[{u, v}] = std::move(r);
  }

  /// O^u * O^v as degree -> class, from the row of (u, v).
  std::map<Degree, KClass> basis_product(std::size_t u, std::size_t v) const {
    const Row* r = row(u, v);
    if (!r)
      throw MissingRowError("missing table row for O^" + x_.labels()[u].to_string() + " * O^" +
                            x_.labels()[v].to_string());
    std::map<Degree, KClass> out;
    for (const auto& [key, n] : *r) {
      auto [it, _] = out.try_emplace(key.second, Basis::opposite);
      it->second.add(x_.labels()[key.first], n);
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  }

 private:
  FlagVariety x_;
  std::map<std::pair<std::size_t, std::size_t>, Row> rows_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace detail

/// Reads a table:
///   type A1
///   parabolic            (comma list of 1-based indices, possibly empty)
///   u | v | w | d1,d2,... | N
/// Lines starting with '#' are comments. Each listed (u, v) also defines (v, u).
/// Every unit row O^e * O^v = O^v must be present and exact.
inline QKTable parse_table(std::istream& in) {
  std::optional<CartanType> type;
  std::optional<ParabolicSubset> parabolic;
  std::optional<QKTable> table;

  struct Listed {
    QKTable::Row row;
    std::size_t line;
  };
  std::map<std::pair<std::size_t, std::size_t>, Listed> listed;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto column_of = [&](std::size_t offset) { return offset + 1; };

    if (!type) {
      if (line.rfind("type", 0) != 0) throw ParseError("expected 'type <Cartan type>'", lineno, 1);
      try {
        type = CartanType::parse(line.substr(4));
        build_root_system(*type);  // cap check
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno, 6);
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno, 6);
      }
      continue;
    }
    if (!parabolic) {
      if (line.rfind("parabolic", 0) != 0) throw ParseError("expected 'parabolic <indices>'", lineno, 1);
      std::set<std::size_t> idx;
      try {
        for (std::size_t i : parse_word(line.substr(9), static_cast<std::size_t>(type->rank))) idx.insert(i);
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno, 11);
      }
      parabolic = ParabolicSubset(std::move(idx));
      table.emplace(FlagVariety::create(*type, *parabolic));
      continue;
    }

    // Term line.
    std::vector<std::string> fields;
    std::vector<std::size_t> starts;
    std::size_t pos = 0;
    while (true) {
      std::size_t bar = raw.find('|', pos);
      starts.push_back(pos);
      fields.push_back(detail::trim(std::string_view(raw).substr(pos, bar == std::string::npos ? std::string::npos : bar - pos)));
      if (bar == std::string::npos) break;
      pos = bar + 1;
    }
    if (fields.size() != 5)
      throw ParseError("expected 5 '|'-separated fields, found " + std::to_string(fields.size()), lineno, 1);

    const FlagVariety& x = table->variety();
    auto label = [&](std::size_t f) {
      WeylElement w;
      try {
        w = WeylElement::parse(x.system(), fields[f]);
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno, column_of(starts[f]));
      }
      auto i = x.index_of(w);
      if (!i) throw ParseError("unknown Weyl label '" + fields[f] + "' (not in W^P)", lineno, column_of(starts[f]));
      return *i;
    };
    std::size_t u = label(0);
    std::size_t v = label(1);
    std::size_t w = label(2);
    Degree d;
    try {
      d = Degree::parse(fields[3], x.degree_keys());
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno, column_of(starts[3]));
    }
    if (!d.is_effective()) throw ParseError("ineffective degree '" + fields[3] + "'", lineno, column_of(starts[3]));
    std::int64_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoll(fields[4], &used);
      if (used != fields[4].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("bad coefficient '" + fields[4] + "'", lineno, column_of(starts[4]));
    }
    auto [it, fresh] = listed.try_emplace({u, v}, Listed{{}, lineno});
    if (!it->second.row.emplace(std::make_pair(w, d), n).second)
      throw ParseError("duplicate term for (u, v, w, d)", lineno, 1);
  }

  if (!type) throw ParseError("missing 'type' header");
  if (!parabolic) throw ParseError("missing 'parabolic' header");

  for (auto& [key, entry] : listed) std::erase_if(entry.row, [](const auto& kv) { return kv.second == 0; });
  for (const auto& [key, entry] : listed) {
    auto mirror = listed.find({key.second, key.first});
    if (mirror != listed.end() && mirror->second.row != entry.row)
      throw ParseError("symmetry violation: rows (" + table->variety().labels()[key.first].to_string() + ", " +
                           table->variety().labels()[key.second].to_string() + ") and its mirror differ",
                       std::max(entry.line, mirror->second.line), 1);
  }
  for (auto& [key, entry] : listed) table->set_row(key.first, key.second, entry.row);

  // Unit rows: O^e * O^v = O^v.
  const FlagVariety& x = table->variety();
  for (std::size_t v = 0; v < x.labels().size(); ++v) {
    const QKTable::Row* r = table->row(0, v);
    QKTable::Row expected{{{v, x.zero_degree()}, 1}};
    if (!r || *r != expected)
      throw ParseError("unit violation: O^e * O^" + x.labels()[v].to_string() + " must equal O^" +
                       x.labels()[v].to_string());
  }
  return std::move(*table);
}

inline QKTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open table file '" + path + "'");
  try {
    return parse_table(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Bilinear extension of the table product; Schubert-basis inputs are
/// rewritten via O_v = O^{dual(v)}. Result is in the opposite basis.
inline std::map<Degree, KClass> product(const QKTable& table, const KClass& a, const KClass& b) {
  const FlagVariety& x = table.variety();
  KClass oa = a.to_opposite(x);
  KClass ob = b.to_opposite(x);
  std::map<Degree, KClass> out;
  for (const auto& [u, cu] : oa.terms()) {
    for (const auto& [v, cv] : ob.terms()) {
      for (const auto& [d, k] : table.basis_product(*x.index_of(u), *x.index_of(v))) {
        auto [it, _] = out.try_emplace(d, Basis::opposite);
        it->second += k * (cu * cv);
      }
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

/// chi applied degree by degree.
inline QPolynomial euler_series(const std::map<Degree, KClass>& p) {
  QPolynomial out;
  for (const auto& [d, k] : p) out.add(d, euler_char(k));
  return out;
}

/// Coefficients f_z with O^v = sum_z f_z O_z, indexed like x.labels().
/// Solves sum_{z >= u} f_z = [v <= dual(u)] over the unitriangular Bruhat
/// incidence matrix, from the longest u down.
inline std::vector<std::int64_t> mobius_coeffs(const FlagVariety& x, const WeylElement& v) {
  x.require_label(v, "mobius_coeffs");
  const auto& labels = x.labels();
  const std::size_t m = labels.size();
  std::vector<std::int64_t> f(m, 0);
  for (std::size_t k = m; k-- > 0;) {
    const WeylElement& u = labels[k];
    std::int64_t rhs = bruhat_leq(v, dual(u, x.parabolic())) ? 1 : 0;
    // labels are sorted by length, so every z > u sits at a larger index.
    for (std::size_t z = k + 1; z < m; ++z)
      if (f[z] != 0 && bruhat_leq(u, labels[z])) rhs -= f[z];
    f[k] = rhs;
  }
  return f;
}

struct CheckRecord {
  std::string check;
  std::string u;
  std::string v;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct Report {
  std::vector<CheckRecord> records;

  bool passed() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; }));
  }
  const CheckRecord* first_failure() const {
    for (const auto& r : records)
      if (!r.pass) return &r;
    return nullptr;
  }
  void append(const Report& o) { records.insert(records.end(), o.records.begin(), o.records.end()); }
};

/// chi(O^u * O_v) == q^{dist(u, v)} for every pair. A necessary condition:
/// chi does not see which O^w carries a coefficient.
inline Report check_euler_dist(const QKTable& table) {
  const FlagVariety& x = table.variety();
  Report rep;
  for (const auto& u : x.labels()) {
    for (const auto& v : x.labels()) {
      CheckRecord rec{"euler", u.to_string(), v.to_string(), "", "", false};
      QPolynomial expected = QPolynomial::monomial(x.dist(u, v));
      rec.expected = expected.to_string();
      try {
        QPolynomial actual = euler_series(product(table, KClass::opposite(u), KClass::schubert(v)));
        rec.actual = actual.to_string();
        rec.pass = actual == expected;
      } catch (const MissingRowError&) {
        rec.actual = "missing row";
      }
      rep.records.push_back(std::move(rec));
    }
  }
  return rep;
}

/// Per pair: (i) sum_{d,w} N^{w,d}_{u,v} = 1 and (ii) for each d,
/// sum_w N^{w,d}_{u,v} is the q^d coefficient of sum_z f_z(v) q^{dist(u,z)}.
inline Report check_sumcoef(const QKTable& table) {
  const FlagVariety& x = table.variety();
  const auto& labels = x.labels();
  Report rep;
  for (std::size_t ui = 0; ui < labels.size(); ++ui) {
    for (std::size_t vi = 0; vi < labels.size(); ++vi) {
      const auto& u = labels[ui];
      const auto& v = labels[vi];
      auto f = mobius_coeffs(x, v);
      QPolynomial predicted;
      std::int64_t fsum = 0;
      for (std::size_t z = 0; z < labels.size(); ++z) {
        fsum += f[z];
        if (f[z] != 0) predicted.add(x.dist(u, labels[z]), f[z]);
      }
      // (ii) implies (i) only because sum_z f_z = 1.
      if (fsum != 1 || predicted.at_one() != 1)
        throw Error("internal: Mobius coefficients of " + v.to_string() + " do not sum to 1");

      CheckRecord total{"sumcoef-total", u.to_string(), v.to_string(), "1", "", false};
      CheckRecord per{"sumcoef-degree", u.to_string(), v.to_string(), predicted.to_string(), "", false};
      const QKTable::Row* r = table.row(ui, vi);
      if (!r) {
        total.actual = per.actual = "missing row";
      } else {
        QPolynomial sums;
        std::int64_t all = 0;
        for (const auto& [key, n] : *r) {
          sums.add(key.second, n);
          all += n;
        }
        total.actual = std::to_string(all);
        total.pass = all == 1;
        per.actual = sums.to_string();
        per.pass = sums == predicted;
      }
      rep.records.push_back(std::move(total));
      rep.records.push_back(std::move(per));
    }
  }
  return rep;
}

namespace detail {

/// chi-hat: evaluate q_beta = 1 on each term, then sum all coefficients.
inline std::int64_t chi_hat(const std::map<Degree, KClass>& p) {
  std::int64_t s = 0;
  for (const auto& [d, k] : p)
    for (const auto& [w, c] : k.terms()) s += c;
  return s;
}

}  // namespace detail

/// chi-hat(O^u * O^v) == 1 == chi-hat(O^u) chi-hat(O^v) for every pair, plus
/// chi-hat((O^u * O^v) * O^w) == 1 for every triple the table can expand.
inline Report check_ringhom(const QKTable& table, bool triples = true) {
  const FlagVariety& x = table.variety();
  const auto& labels = x.labels();
  Report rep;
  for (const auto& u : labels) {
    for (const auto& v : labels) {
      CheckRecord rec{"ringhom", u.to_string(), v.to_string(), "1", "", false};
      try {
        std::int64_t val = detail::chi_hat(product(table, KClass::opposite(u), KClass::opposite(v)));
        rec.actual = std::to_string(val);
        rec.pass = val == 1;
      } catch (const MissingRowError&) {
        rec.actual = "missing row";
      }
      rep.records.push_back(std::move(rec));
    }
  }
  if (!triples) return rep;
  for (const auto& u : labels) {
    for (const auto& v : labels) {
      std::map<Degree, KClass> uv;
      try {
        uv = product(table, KClass::opposite(u), KClass::opposite(v));
      } catch (const MissingRowError&) {
        continue;
      }
      for (const auto& w : labels) {
        std::int64_t val = 0;
        try {
          for (const auto& [d, k] : uv)
            for (const auto& [dd, kk] : product(table, k, KClass::opposite(w))) {
              (void)dd;
              val += euler_char(kk);
            }
        } catch (const MissingRowError&) {
          continue;
        }
        CheckRecord rec{"ringhom-triple", "(" + u.to_string() + ")*(" + v.to_string() + ")", w.to_string(), "1",
                        std::to_string(val), val == 1};
        rep.records.push_back(std::move(rec));
      }
    }
  }
  return rep;
}

enum class CheckKind { euler, sumcoef, ringhom, all };

inline CheckKind parse_check_kind(std::string_view s) {
  if (s == "euler") return CheckKind::euler;
  if (s == "sumcoef") return CheckKind::sumcoef;
  if (s == "ringhom") return CheckKind::ringhom;
  if (s == "all") return CheckKind::all;
  throw ParseError("unknown check '" + std::string(s) + "'");
}

inline Report run_checks(const QKTable& table, CheckKind kind) {
  Report rep;
  if (kind == CheckKind::euler || kind == CheckKind::all) rep.append(check_euler_dist(table));
  if (kind == CheckKind::sumcoef || kind == CheckKind::all) rep.append(check_sumcoef(table));
  if (kind == CheckKind::ringhom || kind == CheckKind::all) rep.append(check_ringhom(table));
  return rep;
}

}  // namespace qkdist
