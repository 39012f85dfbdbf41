#include "permorder/enclosure.hpp"

#include <cstdio>
#include <vector>

namespace permorder {

Enclosure Enclosure::from_rat(const Rat& r, mpfr_prec_t prec) {
    Enclosure e(prec);
    mpfr_set_q(e.lo.get(), r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(e.hi.get(), r.get_mpq_t(), MPFR_RNDU);
    return e;
}

Enclosure Enclosure::from_ui(unsigned long v, mpfr_prec_t prec) {
    Enclosure e(prec);
    mpfr_set_ui(e.lo.get(), v, MPFR_RNDD);
    mpfr_set_ui(e.hi.get(), v, MPFR_RNDU);
    return e;
}

double Enclosure::width() const {
    MpReal d(mpfr_get_prec(lo.get()));
    mpfr_sub(d.get(), hi.get(), lo.get(), MPFR_RNDU);
    return mpfr_get_d(d.get(), MPFR_RNDU);
}

double Enclosure::rel_width() const {
    if (mpfr_sgn(lo.get()) <= 0) {
        if (mpfr_sgn(hi.get()) <= 0 && mpfr_sgn(lo.get()) < 0) {
            MpReal d(mpfr_get_prec(lo.get()));
            mpfr_sub(d.get(), hi.get(), lo.get(), MPFR_RNDU);
            mpfr_div(d.get(), d.get(), hi.get(), MPFR_RNDU);
            return -mpfr_get_d(d.get(), MPFR_RNDD);
        }
        return mpfr_equal_p(lo.get(), hi.get()) ? 0.0 : 1.0 / 0.0;
    }
    MpReal d(mpfr_get_prec(lo.get()));
    mpfr_sub(d.get(), hi.get(), lo.get(), MPFR_RNDU);
    mpfr_div(d.get(), d.get(), lo.get(), MPFR_RNDU);
    return mpfr_get_d(d.get(), MPFR_RNDU);
}

std::string Enclosure::str(std::size_t digits) const {
    char buf[128];
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    mpfr_snprintf(buf, sizeof buf, fmt.c_str(), lo.get());
    return std::string(buf);
}

}  // namespace permorder
