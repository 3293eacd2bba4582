#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rg {

namespace mp = boost::multiprecision;

/// Working-precision real. Precision is set process-wide via
/// set_working_digits() (default 40 decimal digits) before any computation.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

/// Wide fixed-precision real for re-checks and test oracles.
using RealX = mp::number<mp::mpfr_float_backend<100>, mp::et_off>;

using Int = mp::number<mp::gmp_int, mp::et_off>;
using Rat = mp::number<mp::gmp_rational, mp::et_off>;

inline constexpr unsigned kDefaultDigits = 40;
inline constexpr unsigned kMinDigits = 30;

inline void set_working_digits(unsigned digits10) {
  if (digits10 < kMinDigits)
    throw std::invalid_argument("working precision below " +
                                std::to_string(kMinDigits) + " digits");
  Real::default_precision(digits10);
}

inline unsigned working_digits() { return Real::default_precision(); }

namespace detail {
// Raise the process default to the working floor before anything computes.
struct PrecisionInit {
  PrecisionInit() {
    if (Real::default_precision() < kDefaultDigits)
      Real::default_precision(kDefaultDigits);
  }
};
inline const PrecisionInit precision_init{};
}  // namespace detail

/// Distance of t to the nearest integer, in [0, 1/2].
template <class R>
R nearest_int_distance(const R& t) {
  R f = t - floor(t);
  return f <= R(0.5) ? f : R(1) - f;
}

/// The natural log of the target N, carried directly so that N up to
/// 10^100000 and far beyond never needs to be materialized.
struct LogScale {
  Real log_n;

  static LogScale from_ln(const Real& ln_n) {
    if (!(ln_n >= log(Real(3))))
      throw std::invalid_argument("LogScale: ln N >= ln 3 required");
    return {ln_n};
  }
  static LogScale from_log10_exponent(const Real& e) {
    return from_ln(e * log(Real(10)));
  }
  static LogScale from_value(const Int& n) {
    if (n < 3) throw std::invalid_argument("LogScale: N >= 3 required");
    return {log(Real(n))};
  }
  static LogScale from_loglog(const Real& ll) { return from_ln(exp(ll)); }

  Real loglog() const { return log(log_n); }
};

/// ln of the standing large-N floor 10^100000.
inline Real large_n_floor_ln() { return Real(100000) * log(Real(10)); }

/// One unit in the last place of x at its own precision.
template <class R>
R ulp_of(const R& x) {
  if (x == 0) return R(0);
  long bits = static_cast<long>(mpfr_get_prec(x.backend().data()));
  long e = 0;
  R m = frexp(x, &e);
  (void)m;
  return ldexp(R(1), static_cast<int>(e - bits));
}

}  // namespace rg
