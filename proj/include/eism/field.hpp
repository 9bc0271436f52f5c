#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "eism/padic.hpp"

namespace eism {

// a + b*w in the integral basis {1, w} of O_K.
struct KElt {
    mpq_class a = 0;
    mpq_class b = 0;

    KElt() = default;
    KElt(mpq_class a_, mpq_class b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
    KElt(long a_) : a(a_), b(0) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }
    bool operator==(const KElt& o) const { return a == o.a && b == o.b; }
    std::string to_string() const;
};

// K = Q(w) with w^2 = t*w - nrm. The degenerate case K = Q stands in for E
// in symplectic mode.
class QuadraticField {
public:
    QuadraticField() = default;
    explicit QuadraticField(long disc);
    static QuadraticField rationals();

    long disc() const { return disc_; }
    long trace_w() const { return t_; }
    long norm_w() const { return nrm_; }
    bool degenerate() const { return degenerate_; }

    KElt add(const KElt& x, const KElt& y) const { return {x.a + y.a, x.b + y.b}; }
    KElt sub(const KElt& x, const KElt& y) const { return {x.a - y.a, x.b - y.b}; }
    KElt neg(const KElt& x) const { return {-x.a, -x.b}; }
    KElt mul(const KElt& x, const KElt& y) const;
    KElt conj(const KElt& x) const;
    mpq_class norm(const KElt& x) const;
    mpq_class trace(const KElt& x) const;
    KElt inv(const KElt& x) const;
    KElt div(const KElt& x, const KElt& y) const { return mul(x, inv(y)); }
    KElt pow(const KElt& x, long e) const;
    KElt scale(const KElt& x, const mpq_class& c) const { return {x.a * c, x.b * c}; }

private:
    long disc_ = 1;
    long t_ = 0;
    long nrm_ = 0;
    bool degenerate_ = true;
};

enum class Mode { unitary, symplectic };

// The pair (x_sigma, x_sigmabar) per place of E; in symplectic mode the two
// components coincide.
struct CMElt {
    std::vector<PadicElt> sigma;
    std::vector<PadicElt> sigma_bar;

    std::size_t places() const { return sigma.size(); }
    CMElt conjugate() const { return {sigma_bar, sigma}; }
    bool is_unit() const;
    int precision() const;
    bool operator==(const CMElt& o) const = default;
};

CMElt operator*(const CMElt& x, const CMElt& y);
CMElt inverse(const CMElt& x);

struct Weight {
    int k = 0;
    std::vector<int> nu;  // one entry per place in Sigma

    static Weight scalar(int k, int nu_all, std::size_t places = 1) {
        return {k, std::vector<int>(places, nu_all)};
    }
};

struct FieldData {
    Mode mode = Mode::unitary;
    unsigned long p = 0;
    int precision = kDefaultPrecision;
    int e_degree = 1;
    long k_disc = 0;
    QuadraticField K;
    std::vector<std::string> sigma_set;
    // Image of w under sigma, a root of x^2 - t x + nrm modulo p^precision.
    // sigma-bar uses the conjugate root t - r.
    std::vector<mpz_class> split_roots;
    std::vector<KElt> unit_generators;
    std::vector<KElt> unit_group;

    static FieldData unitary(long k_disc, unsigned long p, int precision = kDefaultPrecision);
    static FieldData symplectic(unsigned long p, int precision = kDefaultPrecision);

    std::size_t places() const { return sigma_set.size(); }
    // Number of Z_p coordinates of an element of O_K (x) Z_p.
    std::size_t x_components() const { return mode == Mode::unitary ? 2 * places() : places(); }
    std::string field_label() const;
};

// Kronecker symbol (d/p) for an odd prime p or p = 2.
int kronecker(long d, unsigned long p);

CMElt cm_split_embed(const KElt& a, const FieldData& field, int N);
CMElt cm_one(const FieldData& field, int N);
// Embeds an element of E (here Q) diagonally.
CMElt cm_from_e(const PadicElt& v, std::size_t places);

std::vector<PadicElt> norm_relative(const CMElt& x, const FieldData& field);
PadicElt norm_weight(const CMElt& b, const Weight& w, const FieldData& field);

// Exact counterparts on K for the single place of E = Q.
KElt norm_relative_exact(const KElt& b, const FieldData& field);
KElt norm_weight_exact(const KElt& b, const Weight& w, const FieldData& field);
// sigma-component of a p-integral element of K.
PadicElt embed_sigma(const KElt& a, const FieldData& field, int N);

}  // namespace eism
