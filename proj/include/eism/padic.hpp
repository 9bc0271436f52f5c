#pragma once

#include <gmpxx.h>

#include <climits>
#include <span>
#include <string>

namespace eism {

inline constexpr int kInfiniteValuation = INT_MAX;
inline constexpr int kDefaultPrecision = 24;

// p^e, cached.
const mpz_class& prime_power(unsigned long p, int e);

// Largest v with p^v | x, or kInfiniteValuation for x = 0.
int valuation_of(const mpz_class& x, unsigned long p);

bool is_prime(unsigned long p);

// An element of Z_p known modulo p^N.
class PadicElt {
public:
    PadicElt(unsigned long p, int precision);

    static PadicElt from_integer(const mpz_class& v, unsigned long p, int precision);
    static PadicElt from_integer(long v, unsigned long p, int precision) {
        return from_integer(mpz_class(v), p, precision);
    }
    static PadicElt from_rational(const mpz_class& num, const mpz_class& den, unsigned long p,
                                  int precision);
    static PadicElt from_rational(const mpq_class& q, unsigned long p, int precision);

    unsigned long prime() const { return p_; }
    int precision() const { return N_; }
    // Representative in [0, p^N).
    const mpz_class& residue() const { return r_; }
    // Representative in (-p^N/2, p^N/2].
    mpz_class balanced_residue() const;

    bool is_zero() const { return r_ == 0; }
    int valuation() const;
    bool is_unit() const { return valuation() == 0; }
    // u with x = p^v u; known modulo p^(N - v).
    mpz_class unit_part() const;

    PadicElt reduced(int j) const;

    PadicElt operator-() const;
    PadicElt& operator+=(const PadicElt& o);
    PadicElt& operator-=(const PadicElt& o);
    PadicElt& operator*=(const PadicElt& o);
    friend PadicElt operator+(PadicElt a, const PadicElt& b) { return a += b; }
    friend PadicElt operator-(PadicElt a, const PadicElt& b) { return a -= b; }
    friend PadicElt operator*(PadicElt a, const PadicElt& b) { return a *= b; }

    PadicElt inverse() const;
    PadicElt pow(long e) const;

    // Equality at the smaller of the two precisions.
    bool operator==(const PadicElt& o) const;

    std::string to_string() const;

private:
    void check_compatible(const PadicElt& o) const;

    unsigned long p_;
    int N_;
    mpz_class r_;
};

inline PadicElt invert(const PadicElt& x) { return x.inverse(); }

// a == b mod p^j; both must be known to precision >= j.
bool congruent(const PadicElt& a, const PadicElt& b, int j);

// prod bases[i]^exps[i] with negative exponents allowed as long as the total
// valuation stays >= 0. Relative precision is tracked through the unit parts.
PadicElt monomial(std::span<const PadicElt> bases, std::span<const long> exps);

}  // namespace eism
