#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>
#include <vector>

#include "eism/padic.hpp"

namespace eism {

// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1).
class Cyclotomic {
public:
    Cyclotomic() = default;
    explicit Cyclotomic(int m);

    static Cyclotomic from_rational(int m, const mpq_class& q);
    static Cyclotomic zeta_power(int m, long e);
    // Reduces a group-ring element sum_e c[e] zeta^e (c of length m).
    static Cyclotomic from_group_ring(int m, const std::vector<mpq_class>& c);

    int order() const { return m_; }
    const std::vector<mpq_class>& coefficients() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    Cyclotomic operator-() const;
    Cyclotomic scaled(const mpq_class& q) const;
    bool operator==(const Cyclotomic& o) const;

    std::string to_string() const;

private:
    void reduce_from(std::vector<mpq_class> full);
    void check(const Cyclotomic& o) const;

    int m_ = 1;
    std::vector<mpq_class> c_;
};

// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(int m);
int euler_phi(long m);

enum class RingKind { padic, rational, cyclotomic };

std::string ring_name(RingKind kind);

class Coeff {
public:
    Coeff(PadicElt v) : v_(std::move(v)) {}
    Coeff(mpq_class v) : v_(std::move(v)) { std::get<mpq_class>(v_).canonicalize(); }
    Coeff(Cyclotomic v) : v_(std::move(v)) {}

    RingKind ring() const { return static_cast<RingKind>(v_.index()); }
    bool is_padic() const { return ring() == RingKind::padic; }
    const PadicElt& padic() const;
    const mpq_class& rational() const;
    const Cyclotomic& cyclotomic() const;

    bool is_zero() const;
    // p-adic valuation (rational and p-adic rings only).
    int valuation(unsigned long p) const;

    Coeff operator-() const;
    friend Coeff operator+(const Coeff& a, const Coeff& b);
    friend Coeff operator-(const Coeff& a, const Coeff& b);
    friend Coeff operator*(const Coeff& a, const Coeff& b);
    Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
    Coeff& operator*=(const Coeff& o) { return *this = *this * o; }

    // p-adic values agree at the smaller precision; exact values compare exactly.
    bool operator==(const Coeff& o) const;

    Coeff reduced(int j) const;
    std::string to_string() const;

private:
    std::variant<PadicElt, mpq_class, Cyclotomic> v_;
};

struct RingSpec {
    RingKind kind = RingKind::padic;
    unsigned long p = 0;
    int precision = kDefaultPrecision;
    int cyclo_order = 1;

    static RingSpec padic(unsigned long p, int precision) { return {RingKind::padic, p, precision, 1}; }
    static RingSpec rational() { return {RingKind::rational, 0, 0, 1}; }
    static RingSpec cyclotomic(int m) { return {RingKind::cyclotomic, 0, 0, m}; }

    Coeff zero() const { return from_rational(0); }
    Coeff one() const { return from_rational(1); }
    Coeff from_rational(const mpq_class& q) const;
    bool operator==(const RingSpec& o) const = default;
};

// Difference has valuation >= j.
bool congruent(const Coeff& a, const Coeff& b, int j, unsigned long p);

}  // namespace eism
