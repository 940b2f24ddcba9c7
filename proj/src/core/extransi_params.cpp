#include <mpfr.h>

#include "pwmarkov/errors.hpp"
#include "pwmarkov/extransi.hpp"

namespace pwm {

namespace {

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
  ~MpfrValue() { mpfr_clear(value_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;

  mpfr_ptr get() { return value_; }

  Rational exact() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), value_);
    return Rational(q);
  }

 private:
  mpfr_t value_;
};

// One enclosure pass at a fixed precision. Every operation is rounded
// away from the quantity it bounds.
RatioEnclosure enclose_at(unsigned long n, mpfr_prec_t precision) {
  MpfrValue inv_lo(precision), inv_hi(precision);
  // 1/n^2
  mpfr_set_ui(inv_lo.get(), 1, MPFR_RNDN);
  mpfr_div_ui(inv_lo.get(), inv_lo.get(), n, MPFR_RNDD);
  mpfr_div_ui(inv_lo.get(), inv_lo.get(), n, MPFR_RNDD);
  mpfr_set_ui(inv_hi.get(), 1, MPFR_RNDN);
  mpfr_div_ui(inv_hi.get(), inv_hi.get(), n, MPFR_RNDU);
  mpfr_div_ui(inv_hi.get(), inv_hi.get(), n, MPFR_RNDU);

  // e^{1/n^2} in [e_lo, e_hi]
  MpfrValue e_lo(precision), e_hi(precision);
  mpfr_exp(e_lo.get(), inv_lo.get(), MPFR_RNDD);
  mpfr_exp(e_hi.get(), inv_hi.get(), MPFR_RNDU);

  // p = 1/e in [1/e_hi, 1/e_lo]
  MpfrValue p_lo(precision), p_hi(precision);
  mpfr_ui_div(p_lo.get(), 1, e_hi.get(), MPFR_RNDD);
  mpfr_ui_div(p_hi.get(), 1, e_lo.get(), MPFR_RNDU);

  // p/(1-p) = 1/(e - 1) in [1/(e_hi - 1), 1/(e_lo - 1)]
  MpfrValue d_lo(precision), d_hi(precision);
  mpfr_sub_ui(d_lo.get(), e_lo.get(), 1, MPFR_RNDD);
  mpfr_sub_ui(d_hi.get(), e_hi.get(), 1, MPFR_RNDU);
  MpfrValue r_lo(precision), r_hi(precision);
  mpfr_ui_div(r_lo.get(), 1, d_hi.get(), MPFR_RNDD);
  mpfr_ui_div(r_hi.get(), 1, d_lo.get(), MPFR_RNDU);

  RatioEnclosure out;
  out.n = n;
  out.p_lower = p_lo.exact();
  out.p_upper = p_hi.exact();
  out.ratio_lower = r_lo.exact();
  out.ratio_upper = r_hi.exact();
  out.precision_bits = static_cast<unsigned long>(precision);
  return out;
}

}  // namespace

RatioEnclosure enclose_extransi_ratio(unsigned long n, unsigned long max_precision_bits) {
  if (n == 0) throw DomainError("extransi parameters need n >= 1");
  for (unsigned long bits = 128; bits <= max_precision_bits; bits *= 2) {
    RatioEnclosure e = enclose_at(n, static_cast<mpfr_prec_t>(bits));
    const BigInt lo = e.ratio_lower.ceil();
    const BigInt hi = e.ratio_upper.ceil();
    if (lo == hi) {
      e.ratio_ceiling = lo;
      return e;
    }
  }
  throw PrecisionError("could not certify ceil(p(n)/(1-p(n))) for n = " + std::to_string(n) +
                       " within " + std::to_string(max_precision_bits) + " bits");
}

}  // namespace pwm
