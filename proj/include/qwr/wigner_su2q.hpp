// U_q(su(2)) Wigner–Racah calculus: q-CGC (van der Waerden sum with
// Condon–Shortley-type phase), q-6j (Racah sum), q-9j (single sum over three
// q-6j symbols with a braiding weight), the stretched U-recoupling
// coefficient, and the su(2) extremal / general projection operators.
//
// All spins and projections are passed as doubled integers (j=1/2 -> 1).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "qwr/field.hpp"
#include "qwr/matrix.hpp"

namespace qwr {

inline bool triangle(int a2, int b2, int c2) {
  return a2 + b2 - c2 >= 0 && a2 - b2 + c2 >= 0 && -a2 + b2 + c2 >= 0 &&
         (a2 + b2 + c2) % 2 == 0;
}

namespace detail {
// Exact integer division with a sanity check; q-exponent bookkeeping relies
// on divisibility that follows from the selection rules.
inline long exact_div(long num, long den) {
  if (num % den != 0) throw std::logic_error("non-integral q-exponent");
  return num / den;
}
}  // namespace detail

template <class F>
typename F::S qdelta(const F& f, int a2, int b2, int c2) {
  using S = typename F::S;
  if (!triangle(a2, b2, c2)) return S(0);
  S v = f.qfact(a2 + b2 - c2) * f.qfact(a2 - b2 + c2) *
        f.qfact(-a2 + b2 + c2) / f.qfact(a2 + b2 + c2 + 2);
  return F::sqrt(v);
}

// q-Clebsch-Gordan coefficient (j1 m1, j2 m2 | j3 m3)_q.
template <class F>
typename F::S cgc_su2q(const F& f, int j1, int m1, int j2, int m2, int j3,
                       int m3) {
  using S = typename F::S;
  if (m1 + m2 != m3 || !triangle(j1, j2, j3)) return S(0);
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return S(0);
  if ((j1 + m1) % 2 || (j2 + m2) % 2 || (j3 + m3) % 2) return S(0);
  S pref = f.qint(2 * j3 + 2) * f.qfact(j1 + j2 - j3) *
           f.qfact(j1 - j2 + j3) * f.qfact(-j1 + j2 + j3) /
           f.qfact(j1 + j2 + j3 + 2) * f.qfact(j3 + m3) * f.qfact(j3 - m3) *
           f.qfact(j1 - m1) * f.qfact(j1 + m1) * f.qfact(j2 - m2) *
           f.qfact(j2 + m2);
  long zmax = std::min({(j1 + j2 - j3) / 2, (j1 - m1) / 2, (j2 + m2) / 2});
  long zmin = std::max({0L, -long(j3 - j2 + m1) / 2, -long(j3 - j1 - m2) / 2});
  while (2 * zmin < -(j3 - j2 + m1) || 2 * zmin < -(j3 - j1 - m2)) ++zmin;
  S sum(0);
  const long perim = (j1 + j2 + j3) / 2 + 1;
  for (long z = zmin; z <= zmax; ++z) {
    S den = f.qfact(2 * z) * f.qfact(j1 + j2 - j3 - 2 * z) *
            f.qfact(j1 - m1 - 2 * z) * f.qfact(j2 + m2 - 2 * z) *
            f.qfact(j3 - j2 + m1 + 2 * z) * f.qfact(j3 - j1 - m2 + 2 * z);
    S term = f.qpow(-2 * z * perim) / den;
    sum += (z % 2 == 0) ? term : -term;
  }
  // Phase-balancing exponent beta (doubled): q^beta with
  // beta = 1/2[(j1+j2)(j1+j2+1) - j3(j3+1)] + j1 m2 - j2 m1.
  long e2 = detail::exact_div(long(j1 + j2) * (j1 + j2 + 2) -
                                  long(j3) * (j3 + 2),
                              4) +
            detail::exact_div(long(j1) * m2 - long(j2) * m1, 2);
  return f.qpow(e2) * F::sqrt(pref) * sum;
}

// {a b e; d c f}_q with triads (abe),(acf),(dbf),(dce).
template <class F>
typename F::S q6j(const F& f, int a2, int b2, int e2, int d2, int c2,
                  int f2) {
  using S = typename F::S;
  if (!(triangle(a2, b2, e2) && triangle(a2, c2, f2) &&
        triangle(d2, b2, f2) && triangle(d2, c2, e2)))
    return S(0);
  S pre = qdelta(f, a2, b2, e2) * qdelta(f, a2, c2, f2) *
          qdelta(f, d2, b2, f2) * qdelta(f, d2, c2, e2);
  long t1 = (a2 + b2 + e2) / 2, t2 = (a2 + c2 + f2) / 2,
       t3 = (d2 + b2 + f2) / 2, t4 = (d2 + c2 + e2) / 2;
  long q1 = (a2 + b2 + d2 + c2) / 2, q2 = (b2 + e2 + c2 + f2) / 2,
       q3 = (e2 + a2 + f2 + d2) / 2;
  S sum(0);
  for (long z = std::max({t1, t2, t3, t4}); z <= std::min({q1, q2, q3});
       ++z) {
    S term = f.qfact(2 * (z + 1)) /
             (f.qfact(2 * (z - t1)) * f.qfact(2 * (z - t2)) *
              f.qfact(2 * (z - t3)) * f.qfact(2 * (z - t4)) *
              f.qfact(2 * (q1 - z)) * f.qfact(2 * (q2 - z)) *
              f.qfact(2 * (q3 - z)));
    sum += (z % 2 == 0) ? term : -term;
  }
  return pre * sum;
}

// {a b c; d e f; g h i}_q: single sum over products of three q-6j symbols
// with the braiding weight q^{x(x+1)+e(e+1)-f(f+1)-h(h+1)}.  This is the
// genuine U_q recoupling invariant: it equals the direct contraction of six
// q-CGCs with one R-matrix insertion, and reduces to the classical 9j at q=1.
template <class F>
typename F::S q9j(const F& f, int a2, int b2, int c2, int d2, int e2, int f2,
                  int g2, int h2, int i2) {
  using S = typename F::S;
  if (!(triangle(a2, b2, c2) && triangle(d2, e2, f2) &&
        triangle(g2, h2, i2) && triangle(a2, d2, g2) &&
        triangle(b2, e2, h2) && triangle(c2, f2, i2)))
    return S(0);
  int lo = std::max({std::abs(a2 - i2), std::abs(b2 - f2), std::abs(d2 - h2)});
  int hi = std::min({a2 + i2, b2 + f2, d2 + h2});
  S sum(0);
  auto casimir4 = [](long x2) { return x2 * (x2 + 2); };  // 4*x(x+1)
  for (int x2 = lo; x2 <= hi; x2 += 2) {
    S w = q6j(f, a2, b2, c2, f2, i2, x2) * q6j(f, d2, e2, f2, b2, x2, h2) *
          q6j(f, g2, h2, i2, x2, a2, d2);
    if (F::is_zero(w, 0.0)) continue;
    long ex = detail::exact_div(
        casimir4(x2) + casimir4(e2) - casimir4(f2) - casimir4(h2), 2);
    S term = f.qint(2 * x2 + 2) * f.qpow(ex) * w;
    sum += (x2 % 2 == 0) ? term : -term;
  }
  return sum;
}

// Stretched recoupling coefficient
// U(j j' t'' t'; j+j' t)_q = (-1)^{j+j'+t'+t''} sqrt([2j+2j'+1][2t+1])
//                            {j j' j+j'; t' t'' t}_q.
template <class F>
typename F::S u_coefficient(const F& f, int j2, int jp2, int tpp2, int tp2,
                            int t2) {
  using S = typename F::S;
  S w = q6j(f, j2, jp2, j2 + jp2, tp2, tpp2, t2);
  if (F::is_zero(w, 0.0)) return S(0);
  int sgn = neg_one_pow(j2 + jp2 + tp2 + tpp2);
  S v = F::sqrt(f.qint(2 * (j2 + jp2) + 2) * f.qint(2 * t2 + 2)) * w;
  return sgn == 1 ? v : -v;
}

// Memoizing wrapper shared by the su(3) formulas (hundreds of repeated 6j/9j
// evaluations per projector matrix element).
template <class F>
class WignerContext {
 public:
  using S = typename F::S;
  explicit WignerContext(const F& field) : f_(field) {}

  const F& field() const { return f_; }

  S cgc(int j1, int m1, int j2, int m2, int j3, int m3) const {
    std::array<int, 6> key{j1, m1, j2, m2, j3, m3};
    return memo(cgc_memo_, key,
                [&] { return cgc_su2q(f_, j1, m1, j2, m2, j3, m3); });
  }
  S sixj(int a2, int b2, int e2, int d2, int c2, int f2) const {
    std::array<int, 6> key{a2, b2, e2, d2, c2, f2};
    return memo(sixj_memo_, key,
                [&] { return q6j(f_, a2, b2, e2, d2, c2, f2); });
  }
  S ninej(int a2, int b2, int c2, int d2, int e2, int f2, int g2, int h2,
          int i2) const {
    std::array<int, 9> key{a2, b2, c2, d2, e2, f2, g2, h2, i2};
    return memo(ninej_memo_, key,
                [&] { return q9j(f_, a2, b2, c2, d2, e2, f2, g2, h2, i2); });
  }

 private:
  const F& f_;
  mutable std::mutex mu_;
  mutable std::map<std::array<int, 6>, S> cgc_memo_;
  mutable std::map<std::array<int, 6>, S> sixj_memo_;
  mutable std::map<std::array<int, 9>, S> ninej_memo_;

  template <class Key, class Fn>
  S memo(std::map<Key, S>& cache, const Key& key, Fn&& compute) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
    }
    S v = compute();
    std::lock_guard<std::mutex> lock(mu_);
    cache.emplace(key, v);
    return v;
  }
};

// --- su(2) projection operators on an explicit module -----------------------
//
// Inputs: raising matrix E, lowering matrix F_, and the doubled T0-weight of
// each basis vector.  The extremal projector is computed columnwise as the
// terminating series sum_n (-1)^n / ([n]! prod_{s<=n}[H+1+s]) F^n E^n; it is
// zero on weight-negative columns (they lie in the image of the lowering
// operator).

template <class F>
std::vector<typename F::S> pij_apply_vec(
    const F& f, const Matrix<typename F::S>& E,
    const Matrix<typename F::S>& Fm, const std::vector<int>& hw2, long shift2,
    long qpow2, const std::vector<typename F::S>& v, double tol = 1e-12) {
  using S = typename F::S;
  const size_t n = v.size();
  // Weight of the (definite-weight) input vector.
  long H2 = 0;
  bool found = false;
  double scale = 0;
  for (size_t i = 0; i < n; ++i)
    scale = std::max(scale, std::abs(F::to_double(v[i])));
  for (size_t i = 0; i < n; ++i)
    if (!F::is_zero(v[i], tol * (scale > 0 ? scale : 1))) {
      H2 = hw2[i];
      found = true;
      break;
    }
  if (!found) return v;
  std::vector<S> acc = v, ev = v;
  S den(1), fact(1);
  for (long k = 1;; ++k) {
    if (k > long(n) + 2)
      throw std::runtime_error("projector series failed to terminate");
    ev = E.apply(ev);
    bool vanished;
    if constexpr (std::is_same_v<S, double>) {
      double mx = 0;
      for (const auto& x : ev) mx = std::max(mx, std::abs(x));
      vanished = mx <= tol * (scale > 0 ? scale : 1);
    } else {
      vanished = true;
      for (const auto& x : ev)
        if (!x.is_zero()) {
          vanished = false;
          break;
        }
    }
    if (vanished) break;
    std::vector<S> term = ev;
    for (long kk = 0; kk < k; ++kk) term = Fm.apply(term);
    fact *= f.qint(2 * k);
    den *= f.qint(H2 + shift2 + 2 * k);
    S coef = f.qpow(qpow2 * k) / (fact * den);
    if (k % 2) coef = -coef;
    for (size_t i = 0; i < n; ++i) acc[i] += coef * term[i];
  }
  return acc;
}

template <class F>
Matrix<typename F::S> su2_extremal_projector(const F& f,
                                             const Matrix<typename F::S>& E,
                                             const Matrix<typename F::S>& Fm,
                                             const std::vector<int>& t0w2) {
  using S = typename F::S;
  const size_t n = E.rows();
  Matrix<S> P(n, n);
  for (size_t i = 0; i < n; ++i) {
    if (t0w2[i] < 0) continue;  // projector vanishes on negative T-weight
    std::vector<S> v(n, S(0));
    v[i] = S(1);
    auto col = pij_apply_vec(f, E, Fm, t0w2, 2, 0, v);
    for (size_t r = 0; r < n; ++r) P(r, i) = col[r];
  }
  return P;
}

// General su(2) projection operator P^t_{t_z; t'_z} on the module:
// (normalized lowering to t_z) o (extremal projector) o (normalized raising
// from t'_z).
template <class F>
Matrix<typename F::S> su2_projector_elem(const F& f,
                                         const Matrix<typename F::S>& E,
                                         const Matrix<typename F::S>& Fm,
                                         const std::vector<int>& t0w2, int t2,
                                         int tz2, int tzp2,
                                         const Matrix<typename F::S>* pre_p =
                                             nullptr) {
  using S = typename F::S;
  if (std::abs(tz2) > t2 || std::abs(tzp2) > t2 || (t2 + tz2) % 2 ||
      (t2 + tzp2) % 2)
    throw std::domain_error("su2_projector_elem: invalid projections");
  Matrix<S> p = pre_p ? *pre_p : su2_extremal_projector(f, E, Fm, t0w2);
  int a = (t2 - tz2) / 2, b = (t2 - tzp2) / 2;
  Matrix<S> L = Matrix<S>::identity(E.rows());
  for (int k = 0; k < a; ++k) L = Fm * L;
  Matrix<S> R = Matrix<S>::identity(E.rows());
  for (int k = 0; k < b; ++k) R = E * R;
  S nl = F::sqrt(f.qfact(t2 + tz2) /
                 (f.qfact(2 * t2) * f.qfact(t2 - tz2)));
  S nr = F::sqrt(f.qfact(t2 + tzp2) /
                 (f.qfact(2 * t2) * f.qfact(t2 - tzp2)));
  return (nl * nr) * (L * (p * R));
}

}  // namespace qwr
