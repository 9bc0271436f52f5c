#include "eism/padic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

#include "eism/error.hpp"

namespace eism {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::DenominatorDivisibleByP: return "DenominatorDivisibleByP";
        case ErrorKind::NotAUnit: return "NotAUnit";
        case ErrorKind::NegativeValuationResult: return "NegativeValuationResult";
        case ErrorKind::InvalidField: return "InvalidField";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::PrecisionUnavailable: return "PrecisionUnavailable";
        case ErrorKind::SupportNotInvertible: return "SupportNotInvertible";
        case ErrorKind::GroupOrderNotInvertible: return "GroupOrderNotInvertible";
        case ErrorKind::LevelMismatch: return "LevelMismatch";
        case ErrorKind::UnsupportedSize: return "UnsupportedSize";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::LatticeMismatch: return "LatticeMismatch";
        case ErrorKind::EquivarianceViolation: return "EquivarianceViolation";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::RingMismatch: return "RingMismatch";
        case ErrorKind::SpanNotClosed: return "SpanNotClosed";
        case ErrorKind::NearSingularAutomorphyFactor: return "NearSingularAutomorphyFactor";
        case ErrorKind::HypothesisViolation: return "HypothesisViolation";
        case ErrorKind::VerificationFailure: return "VerificationFailure";
    }
    return "Error";
}

const mpz_class& prime_power(unsigned long p, int e) {
    static std::mutex mu;
    static std::map<std::pair<unsigned long, int>, mpz_class> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.try_emplace({p, e});
    if (inserted) mpz_ui_pow_ui(it->second.get_mpz_t(), p, static_cast<unsigned long>(e));
    return it->second;
}

int valuation_of(const mpz_class& x, unsigned long p) {
    if (x == 0) return kInfiniteValuation;
    mpz_class rest;
    mpz_class prime(p);
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

bool is_prime(unsigned long p) {
    mpz_class v(p);
    return p >= 2 && mpz_probab_prime_p(v.get_mpz_t(), 30) > 0;
}

PadicElt::PadicElt(unsigned long p, int precision) : p_(p), N_(precision), r_(0) {
    if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
    if (precision < 1) fail(ErrorKind::InvalidArgument, "precision must be at least 1");
}

PadicElt PadicElt::from_integer(const mpz_class& v, unsigned long p, int precision) {
    PadicElt out(p, precision);
    mpz_mod(out.r_.get_mpz_t(), v.get_mpz_t(), prime_power(p, precision).get_mpz_t());
    return out;
}

PadicElt PadicElt::from_rational(const mpz_class& num, const mpz_class& den, unsigned long p,
                                 int precision) {
    if (den == 0) fail(ErrorKind::ZeroDenominator, "denominator is zero");
    PadicElt out(p, precision);
    if (num == 0) return out;
    mpz_class prime(p), n, d;
    long vn = static_cast<long>(mpz_remove(n.get_mpz_t(), num.get_mpz_t(), prime.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(d.get_mpz_t(), den.get_mpz_t(), prime.get_mpz_t()));
    if (vd > vn) {
        fail(ErrorKind::DenominatorDivisibleByP,
             num.get_str() + "/" + den.get_str() + " has negative " + std::to_string(p) + "-adic valuation");
    }
    const mpz_class& mod = prime_power(p, precision);
    if (vn - vd >= precision) return out;
    mpz_class dinv;
    mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
    mpz_class v = n * dinv * prime_power(p, static_cast<int>(vn - vd));
    mpz_mod(out.r_.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    return out;
}

PadicElt PadicElt::from_rational(const mpq_class& q, unsigned long p, int precision) {
    return from_rational(q.get_num(), q.get_den(), p, precision);
}

mpz_class PadicElt::balanced_residue() const {
    const mpz_class& mod = prime_power(p_, N_);
    if (2 * r_ > mod) return r_ - mod;
    return r_;
}

int PadicElt::valuation() const { return valuation_of(r_, p_); }

mpz_class PadicElt::unit_part() const {
    if (r_ == 0) return 0;
    mpz_class rest, prime(p_);
    mpz_remove(rest.get_mpz_t(), r_.get_mpz_t(), prime.get_mpz_t());
    return rest;
}

PadicElt PadicElt::reduced(int j) const {
    if (j >= N_) return *this;
    return from_integer(r_, p_, j);
}

void PadicElt::check_compatible(const PadicElt& o) const {
    if (p_ != o.p_) {
        fail(ErrorKind::RingMismatch,
             "mixing Z_" + std::to_string(p_) + " and Z_" + std::to_string(o.p_));
    }
}

PadicElt PadicElt::operator-() const {
    PadicElt out(*this);
    if (r_ != 0) out.r_ = prime_power(p_, N_) - r_;
    return out;
}

PadicElt& PadicElt::operator+=(const PadicElt& o) {
    check_compatible(o);
    N_ = std::min(N_, o.N_);
    r_ += o.r_;
    mpz_mod(r_.get_mpz_t(), r_.get_mpz_t(), prime_power(p_, N_).get_mpz_t());
    return *this;
}

PadicElt& PadicElt::operator-=(const PadicElt& o) {
    check_compatible(o);
    N_ = std::min(N_, o.N_);
    r_ -= o.r_;
    mpz_mod(r_.get_mpz_t(), r_.get_mpz_t(), prime_power(p_, N_).get_mpz_t());
    return *this;
}

PadicElt& PadicElt::operator*=(const PadicElt& o) {
    check_compatible(o);
    N_ = std::min(N_, o.N_);
    r_ *= o.r_;
    mpz_mod(r_.get_mpz_t(), r_.get_mpz_t(), prime_power(p_, N_).get_mpz_t());
    return *this;
}

PadicElt PadicElt::inverse() const {
    if (!is_unit()) fail(ErrorKind::NotAUnit, to_string() + " is not a p-adic unit");
    PadicElt out(p_, N_);
    mpz_invert(out.r_.get_mpz_t(), r_.get_mpz_t(), prime_power(p_, N_).get_mpz_t());
    return out;
}

PadicElt PadicElt::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    PadicElt out(p_, N_);
    mpz_powm_ui(out.r_.get_mpz_t(), r_.get_mpz_t(), static_cast<unsigned long>(e),
                prime_power(p_, N_).get_mpz_t());
    return out;
}

bool PadicElt::operator==(const PadicElt& o) const {
    if (p_ != o.p_) return false;
    int j = std::min(N_, o.N_);
    mpz_class d = r_ - o.r_;
    return mpz_divisible_p(d.get_mpz_t(), prime_power(p_, j).get_mpz_t()) != 0;
}

std::string PadicElt::to_string() const {
    return r_.get_str() + " mod " + std::to_string(p_) + "^" + std::to_string(N_);
}

bool congruent(const PadicElt& a, const PadicElt& b, int j) {
    if (a.prime() != b.prime()) fail(ErrorKind::RingMismatch, "different primes");
    if (a.precision() < j || b.precision() < j) {
        fail(ErrorKind::PrecisionUnavailable, "congruence mod p^" + std::to_string(j) +
                                                  " requested on values known to lower precision");
    }
    mpz_class d = a.residue() - b.residue();
    return mpz_divisible_p(d.get_mpz_t(), prime_power(a.prime(), j).get_mpz_t()) != 0;
}

PadicElt monomial(std::span<const PadicElt> bases, std::span<const long> exps) {
    if (bases.empty()) fail(ErrorKind::InvalidArgument, "empty monomial");
    if (bases.size() != exps.size()) fail(ErrorKind::InvalidArgument, "exponent count mismatch");
    const unsigned long p = bases[0].prime();
    int cap = bases[0].precision();
    for (const auto& b : bases) cap = std::min(cap, b.precision());

    long total_v = 0;
    int rel = cap;
    bool zero_factor = false;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (exps[i] == 0) continue;
        int v = bases[i].valuation();
        if (v == kInfiniteValuation) {
            if (exps[i] < 0) fail(ErrorKind::NegativeValuationResult, "zero raised to a negative power");
            zero_factor = true;
            continue;
        }
        total_v += static_cast<long>(v) * exps[i];
        rel = std::min(rel, bases[i].precision() - v);
    }
    if (zero_factor) return PadicElt(p, cap);
    if (total_v < 0) {
        fail(ErrorKind::NegativeValuationResult,
             "result has valuation " + std::to_string(total_v));
    }
    if (total_v >= cap) return PadicElt(p, cap);
    int prec = static_cast<int>(std::min<long>(cap, total_v + rel));
    if (prec < 1) fail(ErrorKind::PrecisionUnavailable, "no relative precision left");
    const int unit_prec = prec - static_cast<int>(total_v);
    const mpz_class& mod = prime_power(p, unit_prec);
    mpz_class acc = 1;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (exps[i] == 0) continue;
        mpz_class u = bases[i].unit_part();
        mpz_class t;
        if (exps[i] < 0) {
            mpz_invert(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
            mpz_powm_ui(t.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(-exps[i]), mod.get_mpz_t());
        } else {
            mpz_powm_ui(t.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(exps[i]), mod.get_mpz_t());
        }
        acc = acc * t % mod;
    }
    return PadicElt::from_integer(acc * prime_power(p, static_cast<int>(total_v)), p, prec);
}

}  // namespace eism
