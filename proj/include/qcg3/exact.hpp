/**
 * @file exact.hpp
 * @brief Exact scalars: finite sums of q^{k/4} * rational function * sqrt(radicand).
 *
 * A term is keyed by a square-free set of primitive factors under the root
 * (plus, rarely, opaque positive atoms from square roots of sums that do not
 * factor). Its coefficient is a Laurent polynomial divided by a product of
 * primitive factors, kept reduced. Distinct atom-free keys are linearly
 * independent over Q(q^{1/4}), so equality of atom-free values is structural.
 */
#pragma once

#include "qcg3/laurent.hpp"
#include "qcg3/qintegers.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qcg3 {

struct Atom;
using AtomPtr = std::shared_ptr<const Atom>;

/// Radical part of a term: sqrt(prod_{m in roots} P_m) * prod atom^(k/2).
struct RadicalKey {
  std::vector<int> roots;
  std::vector<std::pair<AtomPtr, int>> atoms;
};

bool operator<(const RadicalKey& a, const RadicalKey& b);
bool operator==(const RadicalKey& a, const RadicalKey& b);

/// num / prod P_m^{den_m}, with every den_m > 0 and no P_m dividing num.
struct Coefficient {
  LaurentPoly num;
  PrimitiveExponents den;

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.num == b.num && a.den == b.den;
  }
};

class ExactScalar {
 public:
  using TermMap = std::map<RadicalKey, Coefficient>;

  ExactScalar() = default;

  static ExactScalar from_poly(LaurentPoly p) {
    ExactScalar x;
    if (!p.is_zero()) x.terms_.emplace(RadicalKey{}, Coefficient{std::move(p), {}});
    return x;
  }
  static ExactScalar rational(const mpq_class& c) { return from_poly(LaurentPoly::constant(c)); }
  static ExactScalar q_power(int quarters) { return from_poly(LaurentPoly::monomial(1, quarters)); }

  /// prod [n]^{x_n} as a reduced rational function.
  static ExactScalar qint_ratio(const QIntRatio& r) {
    PrimitiveExponents f = qint::to_primitive(r), up, down;
    for (const auto& [m, e] : f) (e > 0 ? up : down)[m] = e > 0 ? e : -e;
    ExactScalar x;
    x.terms_.emplace(RadicalKey{}, Coefficient{qint::expand_primitive(up), std::move(down)});
    return x;
  }

  /// sqrt(prod P_m^{f_m}) for integer exponents of either sign.
  static ExactScalar sqrt_primitive(const PrimitiveExponents& f) {
    RadicalKey key;
    PrimitiveExponents up, down;
    for (const auto& [m, e] : f) {
      if (e % 2) key.roots.push_back(m);
      if (e > 0) {
        if (e / 2) up[m] = e / 2;
      } else {
        down[m] = (-e + 1) / 2;
      }
    }
    ExactScalar x;
    x.terms_.emplace(std::move(key), Coefficient{qint::expand_primitive(up), std::move(down)});
    return x;
  }

  /// sqrt(prod [n]^{x_n}).
  static ExactScalar sqrt_qint_ratio(const QIntRatio& r) { return sqrt_primitive(qint::to_primitive(r)); }

  /// Square root of a positive value as a fresh opaque atom.
  static ExactScalar atom_sqrt(const ExactScalar& x);

  bool is_structurally_zero() const { return terms_.empty(); }
  bool is_single_term() const { return terms_.size() == 1; }
  bool has_atoms() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return !t.first.atoms.empty(); });
  }
  const TermMap& terms() const { return terms_; }

  ExactScalar& operator+=(const ExactScalar& o) {
    for (const auto& [k, c] : o.terms_) add_term(terms_, k, c);
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) { return *this += -o; }
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator-(ExactScalar a) {
    for (auto& t : a.terms_) t.second.num *= mpq_class(-1);
    return a;
  }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar out;
    for (const auto& [k1, c1] : a.terms_)
      for (const auto& [k2, c2] : b.terms_) multiply_terms(out, k1, c1, k2, c2);
    return out;
  }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  friend ExactScalar operator*(ExactScalar a, long k) {
    if (k == 0) return {};
    for (auto& t : a.terms_) t.second.num *= mpq_class(k);
    return a;
  }
  friend ExactScalar operator*(long k, ExactScalar a) { return std::move(a) * k; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.terms_ == b.terms_; }

  /// Multiplicative inverse when the value is a single factorable term.
  std::optional<ExactScalar> try_inverse() const;
  /// Structural square root (no new atoms), when one exists.
  std::optional<ExactScalar> try_sqrt() const;

  /// Value at s = q^{1/4}.
  Real evaluate(const Real& s) const;

  /// Canonical text, e.g. "q^(-1/4)*sqrt(1/[2])".
  std::string to_string() const;

 private:
  static void reduce(Coefficient& c) {
    if (c.num.is_zero()) {
      c.den.clear();
      return;
    }
    for (auto it = c.den.begin(); it != c.den.end();) {
      while (it->second > 0) {
        auto q = c.num.divide_exact(qint::primitive_factor(it->first));
        if (!q) break;
        c.num = std::move(*q);
        --it->second;
      }
      it = it->second == 0 ? c.den.erase(it) : std::next(it);
    }
  }

  static void add_term(TermMap& out, const RadicalKey& key, const Coefficient& c) {
    if (c.num.is_zero()) return;
    auto it = out.find(key);
    if (it == out.end()) {
      out.emplace(key, c);
      return;
    }
    Coefficient& a = it->second;
    PrimitiveExponents lcd = a.den, pad_a, pad_c;
    for (const auto& [m, d] : c.den) lcd[m] = std::max(lcd[m], d);
    for (const auto& [m, d] : lcd) {
      auto ia = a.den.find(m);
      auto ic = c.den.find(m);
      const int da = ia == a.den.end() ? 0 : ia->second;
      const int dc = ic == c.den.end() ? 0 : ic->second;
      if (d > da) pad_a[m] = d - da;
      if (d > dc) pad_c[m] = d - dc;
    }
    a.num = a.num * qint::expand_primitive(pad_a) + c.num * qint::expand_primitive(pad_c);
    a.den = std::move(lcd);
    reduce(a);
    if (a.num.is_zero()) out.erase(it);
  }

  static void multiply_terms(ExactScalar& out, const RadicalKey& k1, const Coefficient& c1,
                             const RadicalKey& k2, const Coefficient& c2);

  TermMap terms_;
};

/// Opaque positive radicand; identity is its canonical text.
struct Atom {
  ExactScalar value;
  std::string repr;
};

inline bool operator<(const RadicalKey& a, const RadicalKey& b) {
  if (a.roots != b.roots) return a.roots < b.roots;
  if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size();
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    const auto& [pa, ka] = a.atoms[i];
    const auto& [pb, kb] = b.atoms[i];
    if (pa->repr != pb->repr) return pa->repr < pb->repr;
    if (ka != kb) return ka < kb;
  }
  return false;
}

inline bool operator==(const RadicalKey& a, const RadicalKey& b) { return !(a < b) && !(b < a); }

inline ExactScalar ExactScalar::atom_sqrt(const ExactScalar& x) {
  auto atom = std::make_shared<Atom>(Atom{x, x.to_string()});
  ExactScalar r;
  RadicalKey key;
  key.atoms.emplace_back(std::move(atom), 1);
  r.terms_.emplace(std::move(key), Coefficient{LaurentPoly::constant(1), {}});
  return r;
}

inline void ExactScalar::multiply_terms(ExactScalar& out, const RadicalKey& k1, const Coefficient& c1,
                                        const RadicalKey& k2, const Coefficient& c2) {
  Coefficient c{c1.num * c2.num, c1.den};
  for (const auto& [m, d] : c2.den) qint::add_power(c.den, m, d);
  RadicalKey key;
  std::size_t i = 0, j = 0;
  while (i < k1.roots.size() || j < k2.roots.size()) {
    if (j == k2.roots.size() || (i < k1.roots.size() && k1.roots[i] < k2.roots[j])) {
      key.roots.push_back(k1.roots[i++]);
    } else if (i == k1.roots.size() || k2.roots[j] < k1.roots[i]) {
      key.roots.push_back(k2.roots[j++]);
    } else {
      const int m = k1.roots[i];
      auto it = c.den.find(m);
      if (it != c.den.end()) {
        if (--it->second == 0) c.den.erase(it);
      } else {
        c.num *= qint::primitive_factor(m);
      }
      ++i;
      ++j;
    }
  }
  std::vector<ExactScalar> squared;
  {
    std::map<std::string, std::pair<AtomPtr, int>> merged;
    for (const auto* k : {&k1, &k2})
      for (const auto& [p, e] : k->atoms) {
        auto [it, fresh] = merged.try_emplace(p->repr, p, 0);
        it->second.second += e;
      }
    for (auto& [repr, pe] : merged) {
      while (pe.second >= 2) {
        squared.push_back(pe.first->value);
        pe.second -= 2;
      }
      if (pe.second != 0) key.atoms.push_back(pe);
    }
  }
  reduce(c);
  if (c.num.is_zero()) return;
  if (squared.empty()) {
    add_term(out.terms_, key, c);
    return;
  }
  ExactScalar partial;
  partial.terms_.emplace(std::move(key), std::move(c));
  for (const auto& v : squared) partial = partial * v;
  out += partial;
}

inline std::optional<ExactScalar> ExactScalar::try_inverse() const {
  if (!is_single_term()) return std::nullopt;
  const auto& [key, c] = *terms_.begin();
  auto f = qint::factor(c.num);
  if (!f) return std::nullopt;
  Coefficient inv{LaurentPoly::monomial(1 / f->c, -f->shift) * qint::expand_primitive(c.den), f->exponents};
  for (int m : key.roots) qint::add_power(inv.den, m, 1);
  reduce(inv);
  RadicalKey ikey{key.roots, {}};
  for (const auto& [p, e] : key.atoms) ikey.atoms.emplace_back(p, -e);
  ExactScalar r;
  r.terms_.emplace(std::move(ikey), std::move(inv));
  return r;
}

inline std::optional<ExactScalar> ExactScalar::try_sqrt() const {
  if (terms_.empty()) return ExactScalar{};
  if (!is_single_term()) return std::nullopt;
  const auto& [key, c] = *terms_.begin();
  if (!key.roots.empty()) return std::nullopt;  // would need a fourth root
  for (const auto& a : key.atoms)
    if (a.second % 2) return std::nullopt;
  auto f = qint::factor(c.num);
  if (!f || f->c < 0 || f->shift % 2) return std::nullopt;
  if (!mpz_perfect_square_p(f->c.get_num_mpz_t()) || !mpz_perfect_square_p(f->c.get_den_mpz_t()))
    return std::nullopt;
  PrimitiveExponents half = f->exponents;
  for (const auto& [m, d] : c.den) qint::add_power(half, m, -d);
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), f->c.get_num_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), f->c.get_den_mpz_t());
  ExactScalar r = sqrt_primitive(half) * rational(mpq_class(rn, rd)) * q_power(f->shift / 2);
  if (!key.atoms.empty()) {
    ExactScalar a;
    RadicalKey akey;
    for (const auto& [p, e] : key.atoms) akey.atoms.emplace_back(p, e / 2);
    a.terms_.emplace(std::move(akey), Coefficient{LaurentPoly::constant(1), {}});
    r = r * a;
  }
  return r;
}

inline Real ExactScalar::evaluate(const Real& s) const {
  const mpfr_prec_t bits = s.precision();
  Real total(0L, bits);
  std::map<int, Real> factor_values;
  auto pm = [&](int m) -> const Real& {
    auto it = factor_values.find(m);
    if (it == factor_values.end()) it = factor_values.emplace(m, qint::primitive_factor(m).evaluate(s)).first;
    return it->second;
  };
  for (const auto& [key, c] : terms_) {
    Real v = c.num.evaluate(s);
    Real radicand(1L, bits);
    for (int m : key.roots) radicand *= pm(m);
    v *= sqrt(radicand);
    for (const auto& [m, d] : c.den) v /= pow(Real(pm(m)), d);
    for (const auto& [p, e] : key.atoms) {
      Real a = sqrt(p->value.evaluate(s));
      v *= pow(a, e);
    }
    total += v;
  }
  return total;
}

namespace detail {

inline std::string format_q_power(int quarters) {
  const int g = std::gcd(quarters, 4);
  const int num = quarters / g, den = 4 / g;
  if (den == 1) return num == 1 ? "q" : "q^(" + std::to_string(num) + ")";
  return "q^(" + std::to_string(num) + "/" + std::to_string(den) + ")";
}

inline void append_factors(std::vector<std::string>& out, const std::string& base, int k) {
  out.push_back(k == 1 ? base : base + "^" + std::to_string(k));
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "*" : "") + v[i];
  return s;
}

}  // namespace detail

inline std::string ExactScalar::to_string() const {
  if (terms_.empty()) return "0";
  struct Piece {
    int exponent;
    std::string radical;
    mpq_class c;
  };
  std::vector<Piece> pieces;
  for (const auto& [key, c] : terms_) {
    PrimitiveExponents f;
    for (int m : key.roots) qint::add_power(f, m, 1);
    for (const auto& [m, d] : c.den) qint::add_power(f, m, -2 * d);
    std::vector<std::string> up, down;
    for (const auto& [n, x] : qint::from_primitive(f))
      detail::append_factors(x > 0 ? up : down, "[" + std::to_string(n) + "]", x > 0 ? x : -x);
    for (const auto& [p, e] : key.atoms)
      detail::append_factors(e > 0 ? up : down, "(" + p->repr + ")", e > 0 ? e : -e);
    std::string radical;
    if (!up.empty() || !down.empty()) {
      radical = "sqrt(" + (up.empty() ? std::string("1") : detail::join(up));
      if (!down.empty()) radical += "/" + (down.size() == 1 ? down[0] : "(" + detail::join(down) + ")");
      radical += ")";
    }
    c.num.for_each_term([&](int e, const mpq_class& k) { pieces.push_back({e, radical, k}); });
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return a.exponent != b.exponent ? a.exponent < b.exponent : a.radical < b.radical;
  });
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    const bool negative = p.c < 0;
    if (negative) out += "-";
    else if (i) out += "+";
    mpq_class mag = abs(p.c);
    std::vector<std::string> factors;
    if (mag != 1) factors.push_back(mag.get_str());
    if (p.exponent != 0) factors.push_back(detail::format_q_power(p.exponent));
    if (!p.radical.empty()) factors.push_back(p.radical);
    out += factors.empty() ? std::string("1") : detail::join(factors);
  }
  return out;
}

}  // namespace qcg3
