#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace permorder {

using Int = mpz_class;
using Rat = mpq_class;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// num/den reduced to lowest terms; den must be nonzero.
inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_pow(const Rat& r, unsigned long e) {
    return make_rat(int_pow(r.get_num(), e), int_pow(r.get_den(), e));
}

inline bool divides_u64(u64 j, const Int& v) {
    return mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(j)) != 0;
}

inline bool fits_u64(const Int& v) {
    return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 63;
}

inline u64 to_u64(const Int& v) {
    return static_cast<u64>(mpz_get_ui(v.get_mpz_t()));
}

/// Canonical GMP text form: "num" when den == 1, else "num/den".
inline std::string rat_str(const Rat& r) {
    return r.get_str();
}

inline std::string int_str(const Int& v) {
    return v.get_str();
}

inline double rat_to_double(const Rat& r) {
    return mpq_get_d(r.get_mpq_t());
}

}  // namespace permorder
