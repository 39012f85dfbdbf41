#pragma once

#include <mpfr.h>

#include <string>

#include "permorder/ints.hpp"

namespace permorder {

/// RAII wrapper around a single mpfr value.
class MpReal {
public:
    explicit MpReal(mpfr_prec_t prec = 192) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    MpReal(const MpReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    MpReal(MpReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~MpReal() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

/// Two-sided bound lo <= true value <= hi, produced by directed rounding.
struct Enclosure {
    MpReal lo;
    MpReal hi;

    Enclosure() = default;
    explicit Enclosure(mpfr_prec_t prec) : lo(prec), hi(prec) {}

    static Enclosure from_rat(const Rat& r, mpfr_prec_t prec = 192);
    static Enclosure from_ui(unsigned long v, mpfr_prec_t prec = 192);

    double lo_d() const { return mpfr_get_d(lo.get(), MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi.get(), MPFR_RNDU); }
    double mid_d() const { return 0.5 * (lo_d() + hi_d()); }
    /// Upper bound on hi - lo.
    double width() const;
    /// Upper bound on (hi - lo) / |lo|; infinity when lo <= 0 < hi.
    double rel_width() const;

    bool surely_le(const Enclosure& o) const { return mpfr_cmp(hi.get(), o.lo.get()) <= 0; }
    bool surely_ge(const Enclosure& o) const { return mpfr_cmp(lo.get(), o.hi.get()) >= 0; }
    bool surely_gt(const Enclosure& o) const { return mpfr_cmp(lo.get(), o.hi.get()) > 0; }
    bool surely_lt(const Enclosure& o) const { return mpfr_cmp(hi.get(), o.lo.get()) < 0; }
    bool surely_le_d(double x) const { return mpfr_cmp_d(hi.get(), x) <= 0; }
    bool surely_ge_d(double x) const { return mpfr_cmp_d(lo.get(), x) >= 0; }

    std::string str(std::size_t digits = 30) const;
};

}  // namespace permorder
