// Numeric backends parameterizing every algorithm in the library.
//
// A Field supplies a scalar type S together with the q-deformed primitives:
//   qpow(e2)  = q^(e2/2)            (doubled exponent, so sqrt(q) is exact)
//   qint(n2)  = [n2/2]_q            (symmetric q-integer)
//   qfact(n2) = [n2/2]_q!           (n2 must be an even, nonnegative doubling)
// All spin arguments throughout the library are doubled integers.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "qwr/scalar.hpp"

namespace qwr {

class FloatField {
 public:
  using S = double;

  explicit FloatField(double q) : q_(q), one_(q == 1.0) {
    if (q <= 0) throw std::domain_error("q must be positive");
  }

  double q() const { return q_; }
  bool q_is_one() const { return one_; }

  S integer(long n) const { return static_cast<double>(n); }
  S rational(long num, long den) const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  S qpow(long e2) const {
    if (one_) return 1.0;
    return std::pow(q_, e2 / 2.0);
  }

  S qint(long n2) const {
    if (one_) return n2 / 2.0;
    return (std::pow(q_, n2 / 2.0) - std::pow(q_, -n2 / 2.0)) /
           (q_ - 1.0 / q_);
  }

  S qfact(long n2) const {
    if (n2 < 0 || n2 % 2 != 0)
      throw std::domain_error("qfact: argument must double an integer >= 0");
    const size_t n = static_cast<size_t>(n2 / 2);
    std::lock_guard<std::mutex> lock(mu_);
    while (fact_.size() <= n) {
      size_t k = fact_.size();
      fact_.push_back(fact_[k - 1] * qint(2 * static_cast<long>(k)));
    }
    return fact_[n];
  }

  static S sqrt(S v) {
    if (v < 0) {
      if (v > -1e-9) return 0.0;
      throw std::domain_error("sqrt of negative value");
    }
    return std::sqrt(v);
  }
  static double to_double(S v) { return v; }
  static bool is_zero(S v, double tol = 1e-12) { return std::abs(v) < tol; }

 private:
  double q_;
  bool one_;
  mutable std::mutex mu_;
  mutable std::vector<double> fact_{1.0};
};

class ExactField {
 public:
  using S = ExactScalar;

  explicit ExactField(mpq_class q) : q_(std::move(q)), one_(q_ == 1) {
    if (q_ <= 0) throw std::domain_error("q must be positive");
  }

  const mpq_class& q() const { return q_; }
  bool q_is_one() const { return one_; }

  S integer(long n) const { return ExactScalar(n); }
  S rational(long num, long den) const {
    mpq_class v(num, den);
    v.canonicalize();
    return ExactScalar(v);
  }

  // q^(e2/2): rational for even e2, rational * sqrt(q) for odd e2.
  S qpow(long e2) const {
    if (one_) return ExactScalar(1);
    long whole = (e2 >= 0) ? e2 / 2 : -((-e2 + 1) / 2);
    long rem = e2 - 2 * whole;  // 0 or 1
    mpq_class base = qpow_rational(whole);
    if (rem == 0) return ExactScalar(base);
    return ExactScalar::radical(base, q_);
  }

  S qint(long n2) const {
    if (one_) {
      mpq_class v(n2, 2);
      v.canonicalize();
      return ExactScalar(v);
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = qint_.find(n2);
      if (it != qint_.end()) return it->second;
    }
    S v = (qpow(n2) - qpow(-n2)) / (qpow(2) - qpow(-2));
    std::lock_guard<std::mutex> lock(mu_);
    qint_.emplace(n2, v);
    return v;
  }

  S qfact(long n2) const {
    if (n2 < 0 || n2 % 2 != 0)
      throw std::domain_error("qfact: argument must double an integer >= 0");
    const size_t n = static_cast<size_t>(n2 / 2);
    std::lock_guard<std::mutex> lock(mu_);
    while (fact_.size() <= n) {
      size_t k = fact_.size();
      S next = fact_[k - 1] * qint_nolock(2 * static_cast<long>(k));
      fact_.push_back(next);
    }
    return fact_[n];
  }

  static S sqrt(const S& v) { return v.sqrt(); }
  static double to_double(const S& v) { return v.to_double(); }
  static bool is_zero(const S& v, double /*tol*/ = 0) { return v.is_zero(); }

 private:
  mpq_class q_;
  bool one_;
  mutable std::mutex mu_;
  mutable std::vector<S> fact_{S(1)};
  mutable std::map<long, S> qint_;

  mpq_class qpow_rational(long e) const {
    mpz_class num, den;
    unsigned long a = static_cast<unsigned long>(std::labs(e));
    mpz_pow_ui(num.get_mpz_t(), q_.get_num().get_mpz_t(), a);
    mpz_pow_ui(den.get_mpz_t(), q_.get_den().get_mpz_t(), a);
    mpq_class out = (e >= 0) ? mpq_class(num, den) : mpq_class(den, num);
    out.canonicalize();
    return out;
  }

  S qint_nolock(long n2) const {
    if (one_) {
      mpq_class v(n2, 2);
      v.canonicalize();
      return ExactScalar(v);
    }
    return (qpow(n2) - qpow(-n2)) / (qpow(2) - qpow(-2));
  }
};

// Sign helper: (-1)^(e2/2) for even doubled exponents.
inline int neg_one_pow(long e2) {
  if (e2 % 2 != 0)
    throw std::domain_error("neg_one_pow: exponent must double an integer");
  return (e2 / 2) % 2 == 0 ? 1 : -1;
}

}  // namespace qwr
