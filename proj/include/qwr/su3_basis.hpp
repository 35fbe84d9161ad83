// Gelfand-Tsetlin bookkeeping for a U_q(su(3)) irrep (λμ): basis enumeration,
// hypercharge, and the normalization factors of the lowering-word basis
// construction.  Spins are doubled integers throughout.
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "qwr/field.hpp"
#include "qwr/halfint.hpp"
#include "qwr/wigner_su2q.hpp"

namespace qwr {

struct IrrepLabel {
  int lam = 0, mu = 0;
  friend bool operator==(IrrepLabel a, IrrepLabel b) {
    return a.lam == b.lam && a.mu == b.mu;
  }
  friend auto operator<=>(IrrepLabel a, IrrepLabel b) = default;
};

struct GTLabel {
  int j2 = 0, t2 = 0, tz2 = 0;  // doubled (j, t, t_z)
  friend bool operator==(GTLabel a, GTLabel b) = default;
  friend auto operator<=>(GTLabel a, GTLabel b) = default;
};

inline long su3_dim(IrrepLabel rep) {
  return long(rep.lam + 1) * (rep.mu + 1) * (rep.lam + rep.mu + 2) / 2;
}

// Admissibility of (j,t) per the corrected constraint set: ½μ+j+t integral,
// |½μ−j| ≤ t ≤ ½μ+j, and j ≤ ½μ + λ with ½μ+j+t ≤ λ+μ.
inline bool jt_admissible(IrrepLabel rep, int j2, int t2) {
  int lam = rep.lam, mu = rep.mu;
  if (j2 < 0 || t2 < 0) return false;
  if ((mu + j2 + t2) % 2 != 0) return false;
  if (mu + j2 - t2 < 0) return false;
  if (-mu + j2 + t2 < 0) return false;
  if (mu - j2 + t2 < 0) return false;
  if (mu + j2 + t2 > 2 * (lam + mu)) return false;
  return true;
}

inline bool gt_admissible(IrrepLabel rep, GTLabel g) {
  return jt_admissible(rep, g.j2, g.t2) && std::abs(g.tz2) <= g.t2 &&
         (g.t2 + g.tz2) % 2 == 0;
}

// Descending lexicographic enumeration by (j, t, t_z).
inline std::vector<GTLabel> enumerate_basis(IrrepLabel rep) {
  std::vector<GTLabel> out;
  for (int j2 = 2 * (rep.lam + rep.mu); j2 >= 0; --j2)
    for (int t2 = j2 + rep.mu; t2 >= 0; --t2) {
      if (!jt_admissible(rep, j2, t2)) continue;
      for (int tz2 = t2; tz2 >= -t2; tz2 -= 2)
        out.push_back({j2, t2, tz2});
    }
  return out;
}

// Hypercharge y = -(2λ+μ)/3 + 2j, returned as a (num, den=3) pair.
inline std::pair<long, long> hypercharge(IrrepLabel rep, int j2) {
  long num = -(2L * rep.lam + rep.mu) + 3L * j2;  // 3y (j doubled: 2j = j2)
  return {num, 3};
}

// Additive weight of a GT state: (h_{α1}, h_{α2}) doubled, i.e.
// (2λ + μ − 3j2 − tz2, 2·tz2)/2 in real units.
inline std::pair<int, int> gt_weight2(IrrepLabel rep, GTLabel g) {
  return {2 * rep.lam + rep.mu - 3 * g.j2 - g.tz2, 2 * g.tz2};
}

inline GTLabel highest_gt(IrrepLabel rep) { return {0, rep.mu, rep.mu}; }

// Normalizing factor N of the GT lowering-word construction, including the
// q-power under the radical.
template <class F>
typename F::S norm_factor(const F& f, IrrepLabel rep, int j2, int t2) {
  if (!jt_admissible(rep, j2, t2))
    throw std::domain_error("norm_factor: inadmissible (j,t)");
  int lam = rep.lam, mu = rep.mu;
  using S = typename F::S;
  S num = f.qfact(2 * lam + mu - j2 + t2 + 2) * f.qfact(2 * lam + mu - j2 - t2) *
          f.qfact(mu + j2 + t2 + 2) * f.qfact(mu - j2 + t2);
  S den = f.qpow(2 * (j2 + mu - t2)) * f.qfact(2 * lam) * f.qfact(2 * mu) *
          f.qfact(2 * (lam + mu + 1)) * f.qfact(j2 + mu - t2) *
          f.qfact(j2 - mu + t2) * f.qfact(2 * (t2 + 1));
  return F::sqrt(num / den);
}

// The script normalization of the tensor-operator construction (the reduced
// matrix element machinery), with the corrected q-exponent (+2(j+½μ−t) vs
// the printed one; established against the oracle at multiple q).
template <class F>
typename F::S script_norm(const F& f, IrrepLabel rep, int j2, int t2) {
  using S = typename F::S;
  if (!jt_admissible(rep, j2, t2))
    throw std::domain_error("script_norm: inadmissible (j,t)");
  int lam = rep.lam, mu = rep.mu;
  long a2 = j2 + mu - t2;  // 2(j+μ/2−t)
  long b2 = j2 - mu + t2;  // 2(j−μ/2+t)
  // doubled exponent 2e, e = (printed exponent) + 2(j+μ/2−t)
  long e2 = detail::exact_div(a2 * b2, 2) + long(j2) * lam +
            detail::exact_div(long(mu) * a2, 2) - long(j2) * j2 + j2 + t2 -
            mu + 2 * a2;
  S rad = F::sqrt(f.qfact(b2) * f.qfact(a2) /
                  (f.qfact(2 * j2) * f.qint(2 * mu + 2)));
  S c = cgc_su2q(f, j2, mu - t2, t2, t2, mu, mu);
  S v = f.qpow(e2) * rad * c * norm_factor(f, rep, j2, t2);
  return j2 % 2 == 0 ? v : -v;  // (−1)^{2j}
}

}  // namespace qwr
