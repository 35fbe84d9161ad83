// Exact scalar arithmetic in the real quadratic-radical field
//   { sum_i c_i * sqrt(r_i)  :  c_i in Q, r_i positive squarefree integers }.
// This field is closed under +,-,*,/ and contains every quantity produced by
// q-deformed coupling coefficients at rational q (integer q-powers, q-integers,
// q-factorials and square roots thereof, including sqrt(q) itself).
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qwr {

namespace detail {

// Primes below this bound are divided out of radicands eagerly; larger square
// factors are caught by perfect-square detection and by gcd refinement at
// multiplication / comparison time.
inline const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long N = 20000;
    std::vector<bool> sieve(N + 1, true);
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p <= N; ++p) {
      if (!sieve[p]) continue;
      out.push_back(p);
      for (unsigned long k = p * p; k <= N; k += p) sieve[k] = false;
    }
    return out;
  }();
  return primes;
}

// Split n > 0 as n = s^2 * r with r free of small-prime squares and not itself
// a perfect square.  Returns {r, s}.
inline std::pair<mpz_class, mpz_class> extract_square(mpz_class n) {
  mpz_class s = 1;
  for (unsigned long p : small_primes()) {
    if (mpz_cmp_ui(n.get_mpz_t(), p * p) < 0) break;
    unsigned long e = mpz_remove(n.get_mpz_t(), n.get_mpz_t(),
                                 mpz_class(p).get_mpz_t());
    if (e >= 2) {
      mpz_class pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), p, e / 2);
      s *= pk;
    }
    if (e % 2) n *= p;
  }
  // n now carries each small prime at most once; pull a remaining
  // perfect-square cofactor, if any.
  mpz_class small_free = n;
  mpz_class root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), small_free.get_mpz_t());
  if (rem == 0 && small_free > 1) {
    s *= root;
    small_free = 1;
  }
  return {small_free, s};
}

}  // namespace detail

class ExactScalar {
 public:
  using Terms = std::map<mpz_class, mpq_class>;  // radicand -> coefficient

  ExactScalar() = default;
  ExactScalar(long v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) t_[1] = mpq_class(v);
  }
  explicit ExactScalar(const mpq_class& v) {
    if (v != 0) t_[1] = v;
  }

  static ExactScalar rational(const mpq_class& v) { return ExactScalar(v); }

  // c * sqrt(r) for rational r >= 0.
  static ExactScalar radical(const mpq_class& c, const mpq_class& r) {
    if (r < 0) throw std::domain_error("radical: negative radicand");
    if (c == 0 || r == 0) return ExactScalar();
    // sqrt(a/b) = sqrt(a*b)/b
    mpz_class ab = r.get_num() * r.get_den();
    auto [rad, sq] = detail::extract_square(ab);
    ExactScalar out;
    mpq_class coeff = c * mpq_class(sq) / mpq_class(r.get_den());
    coeff.canonicalize();
    if (coeff != 0) out.t_[rad] = coeff;
    return out;
  }

  bool is_rational() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first == 1);
  }
  mpq_class rational_value() const {
    if (t_.empty()) return mpq_class(0);
    if (!is_rational())
      throw std::domain_error("rational_value: scalar is irrational");
    return t_.begin()->second;
  }

  // Every arithmetic operator leaves the term set in refined canonical form
  // (pairwise square-reduced radicands), and Q-linear combinations of square
  // roots of distinct squarefree integers vanish only trivially, so zero is
  // exactly the empty term set.
  bool is_zero() const { return t_.empty(); }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar out = a;
    for (const auto& [r, c] : b.t_) out.add_term(r, c);
    out.refine();
    return out;
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar out = a;
    for (const auto& [r, c] : b.t_) out.add_term(r, -c);
    out.refine();
    return out;
  }
  ExactScalar operator-() const {
    ExactScalar out = *this;
    for (auto& [r, c] : out.t_) c = -c;
    return out;
  }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar out;
    for (const auto& [ra, ca] : a.t_)
      for (const auto& [rb, cb] : b.t_) {
        // sqrt(ra)*sqrt(rb) = g*sqrt((ra/g)*(rb/g)) with g = gcd(ra, rb).
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), ra.get_mpz_t(), rb.get_mpz_t());
        mpz_class prod = (ra / g) * (rb / g);
        auto [rad, sq] = detail::extract_square(prod);
        mpq_class coeff = ca * cb * mpq_class(g * sq);
        coeff.canonicalize();
        out.add_term(rad, coeff);
      }
    out.refine();
    return out;
  }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    return a * b.inverse();
  }
  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return (a - b).is_zero();
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) {
    return !(a == b);
  }

  ExactScalar inverse() const {
    if (t_.empty()) throw std::domain_error("inverse of zero");
    if (is_rational()) {
      mpq_class inv = 1 / t_.begin()->second;
      return ExactScalar(inv);
    }
    ExactScalar c = *this;
    c.refine();
    // Pick a prime-power component p appearing with odd multiplicity in some
    // radicand; conjugating in sqrt(p) strictly shrinks the radicand support.
    mpz_class p = c.pick_split_factor();
    ExactScalar even, odd;  // x = even + sqrt(p) * odd
    for (const auto& [r, coef] : c.t_) {
      if (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
        odd.add_term(r / p, coef);
      } else {
        even.add_term(r, coef);
      }
    }
    ExactScalar sp = radical(mpq_class(1), mpq_class(p));
    ExactScalar conj = even - sp * odd;          // conjugate under sqrt(p) -> -sqrt(p)
    ExactScalar norm = even * even - ExactScalar(mpq_class(p)) * odd * odd;
    return conj * norm.inverse();
  }

  // Square root, when it exists in the field: either sqrt of a nonnegative
  // rational, or a two-term perfect square (a + b*sqrt(r))^2.
  ExactScalar sqrt() const {
    if (t_.empty()) return ExactScalar();
    if (is_rational()) {
      mpq_class v = t_.begin()->second;
      if (v < 0) throw std::domain_error("sqrt of negative scalar");
      return radical(mpq_class(1), v);
    }
    ExactScalar c = *this;
    c.refine();
    if (c.t_.size() == 2 && c.t_.count(1)) {
      // u + w*sqrt(r) = (a + b*sqrt(r))^2  =>  a^2 + r b^2 = u, 2ab = w.
      auto it = c.t_.begin();
      mpq_class u = c.t_.at(1);
      mpz_class r = (it->first == 1) ? std::next(it)->first : it->first;
      mpq_class w = c.t_.at(r);
      mpq_class disc = u * u - mpq_class(r) * w * w;  // (a^2 - r b^2)^2
      if (disc >= 0) {
        mpq_class d = rational_sqrt(disc);
        if (d >= 0) {
          for (int sgn : {+1, -1}) {
            mpq_class a2 = (u + sgn * d) / 2;
            if (a2 < 0) continue;
            mpq_class a = rational_sqrt(a2);
            if (a < 0 || (a == 0 && w != 0)) continue;
            if (a == 0) continue;
            mpq_class b = w / (2 * a);
            if (a * a + mpq_class(r) * b * b == u && 2 * a * b == w) {
              ExactScalar root = ExactScalar(a) + radical(b, mpq_class(r));
              if (root.to_double() >= 0) return root;
              return -root;
            }
          }
        }
      }
    }
    throw std::domain_error("sqrt: value has no representation in the field");
  }

  double to_double() const {
    double acc = 0.0;
    for (const auto& [r, c] : t_)
      acc += c.get_d() * std::sqrt(mpq_class(r).get_d());
    return acc;
  }

  // Canonical text form, e.g. "-3/7*sqrt(2/5)" : largest-magnitude single
  // term printed exactly; multi-term values print as a '+'-joined sum.
  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [r, c] : t_) {
      std::string piece;
      if (r == 1) {
        piece = c.get_str();
      } else {
        // c*sqrt(r) == (c) * sqrt(r); fold sign into the coefficient and
        // render radicand as a reduced rational inside sqrt.
        piece = c.get_str() + "*sqrt(" + r.get_str() + ")";
      }
      if (!first && piece[0] != '-') out += "+";
      out += piece;
      first = false;
    }
    return out;
  }

  const Terms& terms() const { return t_; }

 private:
  Terms t_;

  void add_term(const mpz_class& r, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(r, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  // Re-reduce the term set against a pairwise-coprime base decomposition of
  // all radicands present.  This merges terms whose radicands differ by a
  // square factor that eager reduction could not see.
  void refine() {
    if (t_.size() < 2) return;
    bool nontrivial = false;
    for (auto i = t_.begin(); i != t_.end(); ++i)
      for (auto j = std::next(i); j != t_.end(); ++j) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), i->first.get_mpz_t(), j->first.get_mpz_t());
        if (g > 1) nontrivial = true;  // shared factor: re-reduce the pair
      }
    if (!nontrivial) return;
    std::vector<mpz_class> bases;
    for (const auto& [r, c] : t_) refine_insert(bases, r);
    Terms reduced;
    for (const auto& [r, c] : t_) {
      mpz_class rad = 1, sq = 1, n = r;
      for (const auto& b : bases) {
        unsigned long e = mpz_remove(n.get_mpz_t(), n.get_mpz_t(),
                                     b.get_mpz_t());
        if (e % 2) rad *= b;
        if (e >= 2) {
          mpz_class bk;
          mpz_pow_ui(bk.get_mpz_t(), b.get_mpz_t(), e / 2);
          sq *= bk;
        }
      }
      rad *= n;  // residue coprime to every base
      auto [rad2, sq2] = detail::extract_square(rad);
      mpq_class coeff = c * mpq_class(sq * sq2);
      coeff.canonicalize();
      auto [it, inserted] = reduced.try_emplace(rad2, coeff);
      if (!inserted) {
        it->second += coeff;
        if (it->second == 0) reduced.erase(it);
      }
    }
    t_ = std::move(reduced);
  }

  static void refine_insert(std::vector<mpz_class>& bases, mpz_class n) {
    if (n <= 1) return;
    for (size_t i = 0; i < bases.size() && n > 1; ++i) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), bases[i].get_mpz_t());
      if (g == 1) continue;
      if (g != bases[i]) {
        mpz_class rest = bases[i] / g;
        bases[i] = g;
        refine_insert(bases, rest);
      }
      mpz_remove(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
    }
    if (n > 1) {
      auto [rad, sq] = detail::extract_square(n);
      if (rad > 1) bases.push_back(rad);
      if (sq > 1) refine_insert(bases, sq);
    }
  }

  mpz_class pick_split_factor() const {
    std::vector<mpz_class> bases;
    for (const auto& [r, c] : t_) refine_insert(bases, r);
    for (const auto& b : bases)
      for (const auto& [r, c] : t_)
        if (r > 1 && mpz_divisible_p(r.get_mpz_t(), b.get_mpz_t())) return b;
    throw std::logic_error("pick_split_factor: no radical component");
  }

  // sqrt of a nonnegative rational if it is rational, else -1.
  static mpq_class rational_sqrt(const mpq_class& v) {
    if (v < 0) return mpq_class(-1);
    if (v == 0) return mpq_class(0);
    mpz_class rn, remn, rd, remd;
    mpz_sqrtrem(rn.get_mpz_t(), remn.get_mpz_t(), v.get_num().get_mpz_t());
    mpz_sqrtrem(rd.get_mpz_t(), remd.get_mpz_t(), v.get_den().get_mpz_t());
    if (remn != 0 || remd != 0) return mpq_class(-1);
    mpq_class out(rn, rd);
    out.canonicalize();
    return out;
  }
};

}  // namespace qwr
