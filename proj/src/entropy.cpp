#include "permorder/entropy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace permorder {
namespace {

bool is_small_integer(double q) {
    return q == std::floor(q) && q >= 1.0 && q <= 4096.0;
}

Rat exact_power_sum(const std::map<Int, Rat>& probs, unsigned long q) {
    Int common = 1;
    for (const auto& [m, p] : probs) common = int_lcm(common, p.get_den());
    Int total = 0;
    for (const auto& [m, p] : probs) {
        total += int_pow(p.get_num(), q) * int_pow(common / p.get_den(), q);
    }
    return make_rat(total, int_pow(common, q));
}

Enclosure power_sum_enclosure(const std::map<Int, Rat>& probs, double q, mpfr_prec_t prec) {
    Enclosure acc(prec);
    MpReal base(prec), term(prec), qq(prec);
    mpfr_set_d(qq.get(), q, MPFR_RNDN);  // doubles embed exactly
    for (const auto& [m, p] : probs) {
        mpfr_set_q(base.get(), p.get_mpq_t(), MPFR_RNDD);
        mpfr_pow(term.get(), base.get(), qq.get(), MPFR_RNDD);
        mpfr_add(acc.lo.get(), acc.lo.get(), term.get(), MPFR_RNDD);
        mpfr_set_q(base.get(), p.get_mpq_t(), MPFR_RNDU);
        mpfr_pow(term.get(), base.get(), qq.get(), MPFR_RNDU);
        mpfr_add(acc.hi.get(), acc.hi.get(), term.get(), MPFR_RNDU);
    }
    return acc;
}

Enclosure shannon_enclosure(const OrderDistribution& dist, mpfr_prec_t prec) {
    Enclosure acc(prec);
    MpReal pv(prec), lg(prec), term(prec);
    for (const auto& [m, p] : dist.probs) {
        // term = p * (-log p), nonnegative for p in (0, 1].
        mpfr_set_q(pv.get(), p.get_mpq_t(), MPFR_RNDU);
        mpfr_log(lg.get(), pv.get(), MPFR_RNDU);
        mpfr_neg(lg.get(), lg.get(), MPFR_RNDN);  // lower bound of -log p
        mpfr_set_q(pv.get(), p.get_mpq_t(), MPFR_RNDD);
        mpfr_mul(term.get(), pv.get(), lg.get(), MPFR_RNDD);
        mpfr_add(acc.lo.get(), acc.lo.get(), term.get(), MPFR_RNDD);

        mpfr_set_q(pv.get(), p.get_mpq_t(), MPFR_RNDD);
        mpfr_log(lg.get(), pv.get(), MPFR_RNDD);
        mpfr_neg(lg.get(), lg.get(), MPFR_RNDN);  // upper bound of -log p
        mpfr_set_q(pv.get(), p.get_mpq_t(), MPFR_RNDU);
        mpfr_mul(term.get(), pv.get(), lg.get(), MPFR_RNDU);
        mpfr_add(acc.hi.get(), acc.hi.get(), term.get(), MPFR_RNDU);
    }
    return acc;
}

}  // namespace

CollisionValue power_sum(const std::map<Int, Rat>& probs, double q, mpfr_prec_t prec) {
    if (!(q > 0.0)) throw std::invalid_argument("power_sum: requires q > 0");
    if (probs.empty()) throw std::invalid_argument("power_sum: empty distribution");
    CollisionValue v;
    if (is_small_integer(q)) {
        v.exact = true;
        v.rational = exact_power_sum(probs, static_cast<unsigned long>(q));
        v.encl = Enclosure::from_rat(v.rational, prec);
    } else {
        v.encl = power_sum_enclosure(probs, q, prec);
    }
    return v;
}

CollisionValue collision_power(const OrderDistribution& dist, double q, mpfr_prec_t prec) {
    if (!(q > 1.0)) throw std::invalid_argument("collision_power: requires q > 1");
    return power_sum(dist.probs, q, prec);
}

ModeInfo min_prob_and_mode(const OrderDistribution& dist) {
    if (dist.probs.empty()) throw std::invalid_argument("min_prob_and_mode: empty distribution");
    ModeInfo info;
    for (const auto& [m, p] : dist.probs) {
        if (info.tied.empty() || p > info.p_infinity) {
            info.p_infinity = p;
            info.tied.assign(1, m);
        } else if (p == info.p_infinity) {
            info.tied.push_back(m);
        }
    }
    info.mode = info.tied.front();
    info.tie = info.tied.size() > 1;
    if (!info.tie) info.tied.clear();
    return info;
}

Enclosure renyi_entropy(const OrderDistribution& dist, double q, mpfr_prec_t prec) {
    if (!(q > 0.0)) throw std::invalid_argument("renyi_entropy: requires q > 0");
    if (dist.probs.empty()) throw std::invalid_argument("renyi_entropy: empty distribution");

    if (q == 1.0) return shannon_enclosure(dist, prec);

    if (std::isinf(q)) {
        ModeInfo info = min_prob_and_mode(dist);
        Rat inv = make_rat(info.p_infinity.get_den(), info.p_infinity.get_num());
        Enclosure e(prec);
        MpReal t(prec);
        mpfr_set_q(t.get(), inv.get_mpq_t(), MPFR_RNDD);
        mpfr_log(e.lo.get(), t.get(), MPFR_RNDD);
        mpfr_set_q(t.get(), inv.get_mpq_t(), MPFR_RNDU);
        mpfr_log(e.hi.get(), t.get(), MPFR_RNDU);
        return e;
    }

    Enclosure P = is_small_integer(q)
                      ? Enclosure::from_rat(exact_power_sum(dist.probs, static_cast<unsigned long>(q)), prec)
                      : power_sum_enclosure(dist.probs, q, prec);
    Enclosure h(prec);
    MpReal t(prec), denom(prec);
    if (q > 1.0) {
        // H = -log(P) / (q - 1), P in (0, 1]: antitone in P.
        mpfr_set_d(denom.get(), q, MPFR_RNDN);
        mpfr_sub_ui(denom.get(), denom.get(), 1, MPFR_RNDN);  // exact
        mpfr_log(t.get(), P.hi.get(), MPFR_RNDU);
        mpfr_neg(t.get(), t.get(), MPFR_RNDN);
        mpfr_div(h.lo.get(), t.get(), denom.get(), MPFR_RNDD);
        mpfr_log(t.get(), P.lo.get(), MPFR_RNDD);
        mpfr_neg(t.get(), t.get(), MPFR_RNDN);
        mpfr_div(h.hi.get(), t.get(), denom.get(), MPFR_RNDU);
    } else {
        // H = log(P) / (1 - q), P >= 1: monotone in P.
        mpfr_set_d(denom.get(), q, MPFR_RNDN);
        mpfr_ui_sub(denom.get(), 1, denom.get(), MPFR_RNDN);  // exact
        mpfr_log(t.get(), P.lo.get(), MPFR_RNDD);
        mpfr_div(h.lo.get(), t.get(), denom.get(), MPFR_RNDD);
        mpfr_log(t.get(), P.hi.get(), MPFR_RNDU);
        mpfr_div(h.hi.get(), t.get(), denom.get(), MPFR_RNDU);
    }
    return h;
}

CollisionValue scaled_collision(unsigned n, double q, const OrderDistribution& dist,
                                mpfr_prec_t prec) {
    CollisionValue pq = collision_power(dist, q, prec);
    CollisionValue out;
    if (pq.exact) {
        out.exact = true;
        out.rational = Rat(int_pow(Int(n), static_cast<unsigned long>(q))) * pq.rational;
        out.encl = Enclosure::from_rat(out.rational, prec);
        return out;
    }
    Enclosure scale(prec);
    MpReal base(prec), qq(prec);
    mpfr_set_ui(base.get(), n, MPFR_RNDN);
    mpfr_set_d(qq.get(), q, MPFR_RNDN);
    mpfr_pow(scale.lo.get(), base.get(), qq.get(), MPFR_RNDD);
    mpfr_pow(scale.hi.get(), base.get(), qq.get(), MPFR_RNDU);
    out.encl = Enclosure(prec);
    mpfr_mul(out.encl.lo.get(), scale.lo.get(), pq.encl.lo.get(), MPFR_RNDD);
    mpfr_mul(out.encl.hi.get(), scale.hi.get(), pq.encl.hi.get(), MPFR_RNDU);
    return out;
}

EntropyReport entropy_report(const OrderDistribution& dist, const std::vector<double>& qs,
                             mpfr_prec_t prec) {
    EntropyReport rep;
    rep.n = dist.n;
    rep.mode = min_prob_and_mode(dist);
    for (double q : qs) {
        EntropyRow row;
        row.q = q;
        if (std::isinf(q)) {
            row.p_q.exact = true;
            row.p_q.rational = rep.mode.p_infinity;
            row.p_q.encl = Enclosure::from_rat(row.p_q.rational, prec);
        } else if (is_small_integer(q)) {
            row.p_q.exact = true;
            row.p_q.rational = exact_power_sum(dist.probs, static_cast<unsigned long>(q));
            row.p_q.encl = Enclosure::from_rat(row.p_q.rational, prec);
            row.scaled.exact = true;
            row.scaled.rational =
                Rat(int_pow(Int(dist.n), static_cast<unsigned long>(q))) * row.p_q.rational;
            row.scaled.encl = Enclosure::from_rat(row.scaled.rational, prec);
        } else {
            row.p_q.encl = power_sum_enclosure(dist.probs, q, prec);
            Enclosure scale(prec);
            MpReal base(prec), qq(prec);
            mpfr_set_ui(base.get(), dist.n, MPFR_RNDN);
            mpfr_set_d(qq.get(), q, MPFR_RNDN);
            mpfr_pow(scale.lo.get(), base.get(), qq.get(), MPFR_RNDD);
            mpfr_pow(scale.hi.get(), base.get(), qq.get(), MPFR_RNDU);
            row.scaled.encl = Enclosure(prec);
            mpfr_mul(row.scaled.encl.lo.get(), scale.lo.get(), row.p_q.encl.lo.get(), MPFR_RNDD);
            mpfr_mul(row.scaled.encl.hi.get(), scale.hi.get(), row.p_q.encl.hi.get(), MPFR_RNDU);
        }
        row.h_q = renyi_entropy(dist, q, prec);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

namespace {

std::string fmt_q(double q) {
    if (std::isinf(q)) return "inf";
    std::ostringstream os;
    os << q;
    return os.str();
}

std::string fmt_dec(const Enclosure& e) {
    if (mpfr_zero_p(e.lo.get())) return "0";
    char buf[80];
    mpfr_snprintf(buf, sizeof buf, "%.24Rg", e.lo.get());
    return buf;
}

std::string fmt_err(const Enclosure& e) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", e.width());
    return buf;
}

nlohmann::ordered_json value_json(const CollisionValue& v) {
    if (v.exact) return rat_str(v.rational);
    nlohmann::ordered_json j;
    j["dec"] = fmt_dec(v.encl);
    j["err"] = fmt_err(v.encl);
    return j;
}

std::string value_csv(const CollisionValue& v) {
    return v.exact ? rat_str(v.rational) : fmt_dec(v.encl);
}

}  // namespace

nlohmann::ordered_json entropy_report_to_json(const EntropyReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["mode"] = int_str(r.mode.mode);
    j["mode_tie"] = r.mode.tie;
    j["p_infinity"] = rat_str(r.mode.p_infinity);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json o;
        o["q"] = fmt_q(row.q);
        o["P_q"] = value_json(row.p_q);
        if (!std::isinf(row.q)) o["scaled"] = value_json(row.scaled);
        nlohmann::ordered_json h;
        h["dec"] = fmt_dec(row.h_q);
        h["err"] = fmt_err(row.h_q);
        o["H_q"] = std::move(h);
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string entropy_report_to_csv(const EntropyReport& r) {
    std::ostringstream out;
    out << "n,q,P_q,scaled,H_q,mode,p_inf\n";
    for (const auto& row : r.rows) {
        out << r.n << ',' << fmt_q(row.q) << ',' << value_csv(row.p_q) << ','
            << (std::isinf(row.q) ? std::string() : value_csv(row.scaled)) << ','
            << fmt_dec(row.h_q) << ',' << int_str(r.mode.mode) << ','
            << rat_str(r.mode.p_infinity) << '\n';
    }
    return out.str();
}

}  // namespace permorder
