#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "eism/qexp.hpp"

namespace eism {

// r_1 >= ... >= r_n >= 0.
struct HighestWeight {
    std::vector<int> r;

    HighestWeight() = default;
    explicit HighestWeight(std::vector<int> r_);
    int n() const { return static_cast<int>(r.size()); }
    int degree() const;
};

std::vector<int> weights_to_exponents(const HighestWeight& r);

// Polynomial in the n^2 entries x_ab of an n x n matrix, exact rational
// coefficients. Monomials are ordered lexicographically, x_11 highest.
class Polynomial {
public:
    using Monomial = std::vector<int>;
    using Terms = std::map<Monomial, mpq_class, std::greater<Monomial>>;

    explicit Polynomial(int n = 1) : n_(n) {}
    static Polynomial constant(int n, const mpq_class& c);
    // x_ab with 0-based a, b.
    static Polynomial variable(int n, int a, int b);
    // Leading j x j minor.
    static Polynomial leading_minor(int n, int j);
    static Polynomial det(int n) { return leading_minor(n, n); }
    // "det^d", "1", or a sum of terms like "2*x11*x22^2 - x12".
    static Polynomial parse(const std::string& text, int n);

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // -1 for the zero polynomial; throws if not homogeneous.
    int homogeneous_degree() const;
    bool is_homogeneous() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial scaled(const mpq_class& c) const;
    Polynomial pow(int e) const;
    bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    // p(m) for m given row by row.
    KElt evaluate(const KMatrix& m, const QuadraticField& K) const;
    PadicElt evaluate(const PMatrix& m) const;
    // p(x -> g x) or p(x -> x g) for an integer matrix g given row by row.
    Polynomial translated(const std::vector<long>& g, bool left) const;

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const mpq_class& c);

    int n_;
    Terms terms_;
};

// prod_j det_j(x)^{e_j}.
Polynomial highest_weight_vector(const HighestWeight& r);

// psi_Z(s) = prod_{h=1}^{n} prod_{j=1}^{r_h} (s - j + h), coefficients of
// s^0, s^1, ... as integers.
std::vector<mpz_class> psi_Z(const HighestWeight& r);
mpq_class psi_Z_value(const HighestWeight& r, const mpq_class& s);

struct FZetaResult {
    std::vector<Polynomial> basis;  // reduced row echelon form of the span
    Polynomial f;                   // sum of the basis
};

// Span of zeta under x -> (1 + E_ab) x and x -> x (1 + E_ab), closed by
// breadth-first search and reduced with leading-monomial pivots.
FZetaResult f_zeta_span(const Polynomial& zeta, std::size_t max_dim = 4096);
Polynomial f_zeta(const Polynomial& zeta, std::size_t max_dim = 4096);

// a(beta) -> a(beta) F(sigma(beta)).
QExpansion theta_apply(const QExpansion& Q, const Polynomial& F);

enum class EigenConvention { s_half_k, s_zero };

// (i/2)^{nd} psi_{(d,...,d)}(-k - s) at s = k/2 or s = 0.
struct ArchimedeanEigenvalue {
    int i_power = 0;
    int two_power = 0;
    std::vector<mpq_class> psi_in_k;  // coefficients of k^0, k^1, ...
    mpq_class psi_value = 1;          // psi at the given k
};

ArchimedeanEigenvalue archimedean_eigenvalue(int k, int d, int n, EigenConvention conv = EigenConvention::s_half_k);

}  // namespace eism
