#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qkdist/degree.hpp"
#include "qkdist/distance.hpp"
#include "qkdist/error.hpp"
#include "qkdist/weyl.hpp"

namespace qkdist {

/// Which Schubert basis a KClass is written in: O^u (opposite) or O_v.
enum class Basis { opposite, schubert };

/// Finite integer combination of Schubert structure sheaves in K(G/P),
/// coefficients specialized to Z.
class KClass {
 public:
  explicit KClass(Basis basis = Basis::opposite) : basis_(basis) {}

  static KClass opposite(const WeylElement& u, std::int64_t c = 1) {
    KClass k(Basis::opposite);
    k.add(u, c);
    return k;
  }
  static KClass schubert(const WeylElement& v, std::int64_t c = 1) {
    KClass k(Basis::schubert);
    k.add(v, c);
    return k;
  }

  Basis basis() const { return basis_; }
  const std::map<WeylElement, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::int64_t coefficient(const WeylElement& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
  }

  void add(const WeylElement& w, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted && (it->second += c) == 0) terms_.erase(it);
  }

  KClass& operator+=(const KClass& other) {
    if (other.basis_ != basis_) throw Error("adding K-classes written in different bases");
    for (const auto& [w, c] : other.terms_) add(w, c);
    return *this;
  }
  KClass operator+(const KClass& other) const {
    KClass out = *this;
    return out += other;
  }
  KClass operator*(std::int64_t s) const {
    KClass out(basis_);
    for (const auto& [w, c] : terms_) out.add(w, c * s);
    return out;
  }

  /// Rewrites in the O^u basis via O_v = O^{dual(v)}.
  KClass to_opposite(const FlagVariety& x) const { return converted(x, Basis::opposite); }
  KClass to_schubert(const FlagVariety& x) const { return converted(x, Basis::schubert); }

  bool operator==(const KClass&) const = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    const char* sym = basis_ == Basis::opposite ? "O^" : "O_";
    for (const auto& [w, c] : terms_) {
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      std::int64_t a = c < 0 ? -c : c;
      if (a != 1) out += std::to_string(a) + "*";
      out += std::string(sym) + "(" + w.to_string() + ")";
    }
    return out;
  }

 private:
  KClass converted(const FlagVariety& x, Basis target) const {
    for (const auto& [w, c] : terms_) x.require_label(w, "K-class");
    if (target == basis_) return *this;
    // The identification is an involution, so both directions use dual().
    KClass out(target);
    for (const auto& [w, c] : terms_) out.add(dual(w, x.parabolic()), c);
    return out;
  }

  Basis basis_;
  std::map<WeylElement, std::int64_t> terms_;
};

/// Sheaf Euler characteristic: every Schubert structure sheaf has chi = 1.
inline std::int64_t euler_char(const KClass& gamma) {
  std::int64_t s = 0;
  for (const auto& [w, c] : gamma.terms()) s += c;
  return s;
}

/// chi(O^u . O_v): 1 iff u <= v.
inline int pairing_classical(const FlagVariety& x, const WeylElement& u, const WeylElement& v) {
  x.require_label(u, "pairing_classical");
  x.require_label(v, "pairing_classical");
  return bruhat_leq(u, v) ? 1 : 0;
}

/// Two-point K-theoretic Gromov-Witten invariant <O^u, O_v>_d: 1 iff d >= dist(u, v).
inline int gw_two_point(const FlagVariety& x, const WeylElement& u, const WeylElement& v, const Degree& d) {
  if (!d.is_effective()) throw Error("gw_two_point: degree is not effective");
  return x.dist(u, v).leq(d) ? 1 : 0;
}

/// Polynomial in the q_beta with integer coefficients; zero terms are dropped.
class QPolynomial {
 public:
  QPolynomial() = default;

  static QPolynomial monomial(const Degree& d, std::int64_t c = 1) {
    QPolynomial p;
    p.add(d, c);
    return p;
  }

  void add(const Degree& d, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(d, c);
    if (!inserted && (it->second += c) == 0) terms_.erase(it);
  }
  QPolynomial& operator+=(const QPolynomial& o) {
    for (const auto& [d, c] : o.terms_) add(d, c);
    return *this;
  }

  std::int64_t coefficient(const Degree& d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? 0 : it->second;
  }
  const std::map<Degree, std::int64_t>& terms() const { return terms_; }

  /// Value at q_beta = 1 for all beta.
  std::int64_t at_one() const {
    std::int64_t s = 0;
    for (const auto& [d, c] : terms_) s += c;
    return s;
  }

  bool operator==(const QPolynomial&) const = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [d, c] : terms_) {
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      std::int64_t a = c < 0 ? -c : c;
      if (d.is_zero()) {
        out += std::to_string(a);
      } else {
        if (a != 1) out += std::to_string(a) + "*";
        out += "q^(" + d.to_string() + ")";
      }
    }
    return out;
  }

 private:
  std::map<Degree, std::int64_t> terms_;
};

/// q^numerator / prod_{beta in Delta \ Delta_P} (1 - q_beta).
struct ClosedSeries {
  Degree numerator;

  bool operator==(const ClosedSeries&) const = default;
  std::string to_string() const { return "q^(" + numerator.to_string() + ") / prod(1-q_b)"; }
};

/// Coefficients of q^d for every effective d <= cap.
struct TruncatedSeries {
  Degree cap;
  std::map<Degree, std::int64_t> coeffs;

  bool operator==(const TruncatedSeries&) const = default;
};

using QSeries = std::variant<ClosedSeries, TruncatedSeries>;

/// Expands a closed-form series up to cap: coefficient 1 exactly when d >= numerator.
inline TruncatedSeries truncate(const ClosedSeries& s, const Degree& cap) {
  TruncatedSeries t{cap, {}};
  for (const Degree& d : degrees_below(cap)) t.coeffs.emplace(d, s.numerator.leq(d) ? 1 : 0);
  return t;
}

/// Quantum K-metric ((O^u, O_v)) in closed form.
inline ClosedSeries metric(const FlagVariety& x, const WeylElement& u, const WeylElement& v) {
  return ClosedSeries{x.dist(u, v)};
}

/// sum_{d <= cap} q^d <O^u, O_v>_d, evaluated invariant by invariant.
inline TruncatedSeries metric_truncated(const FlagVariety& x, const WeylElement& u, const WeylElement& v,
                                        const Degree& cap) {
  cap.check_keys(x.zero_degree());
  TruncatedSeries t{cap, {}};
  for (const Degree& d : degrees_below(cap)) t.coeffs.emplace(d, gw_two_point(x, u, v, d));
  return t;
}

/// Multiplies a closed-form series by prod(1 - q_beta), leaving q^numerator.
inline QPolynomial chi_series(const QSeries& s) {
  if (const auto* closed = std::get_if<ClosedSeries>(&s)) return QPolynomial::monomial(closed->numerator);
  throw Error("chi_series needs a closed-form series");
}

}  // namespace qkdist
