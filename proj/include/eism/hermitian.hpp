#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eism/field.hpp"

namespace eism {

// Dense n x n matrix over K.
class KMatrix {
public:
    KMatrix() = default;
    KMatrix(int n, std::vector<KElt> entries);
    static KMatrix identity(int n);
    static KMatrix scalar(int n, const KElt& v);

    int size() const { return n_; }
    const KElt& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * n_ + j)]; }
    KElt& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * n_ + j)]; }
    const std::vector<KElt>& entries() const { return e_; }
    bool operator==(const KMatrix& o) const = default;

private:
    int n_ = 0;
    std::vector<KElt> e_;
};

KMatrix mul(const KMatrix& a, const KMatrix& b, const QuadraticField& K);
KMatrix conj_transpose(const KMatrix& a, const QuadraticField& K);
KMatrix scale(const KMatrix& a, const KElt& c, const QuadraticField& K);
KElt det(const KMatrix& a, const QuadraticField& K);
KMatrix inverse(const KMatrix& a, const QuadraticField& K);
bool is_hermitian(const KMatrix& a, const QuadraticField& K);

// Hermitian matrix with entries in O_K and diagonal in Z.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    HermitianMatrix(const KMatrix& m, const QuadraticField& K);
    static HermitianMatrix scalar(long v);
    static HermitianMatrix identity(int n);

    int size() const { return m_.size(); }
    const KElt& operator()(int i, int j) const { return m_(i, j); }
    const KMatrix& matrix() const { return m_; }
    mpz_class trace() const;
    mpz_class det(const QuadraticField& K) const;

    bool operator==(const HermitianMatrix& o) const { return m_ == o.m_; }
    // Canonical order: trace, then the upper triangle row by row.
    bool operator<(const HermitianMatrix& o) const;

    std::string to_string() const;

private:
    KMatrix m_;
};

bool is_positive_definite(const HermitianMatrix& beta, const QuadraticField& K);
bool is_positive_definite(const KMatrix& beta, const QuadraticField& K);

struct CuspTerm {
    KElt a;
    long multiplicity = 1;
};

struct CuspData {
    std::string label = "identity";
    std::string lattice = "standard";
    std::function<std::vector<CuspTerm>(const HermitianMatrix&)> rule;
    // The rule lists one representative per orbit of the units of E, so a sum
    // over it already lives on the quotient by O_E^x.
    bool unit_orbit_representatives = false;

    static CuspData single_term();
    // n = 1 only: A(beta) = {d > 0 : d | beta, p does not divide d, and
    // (optionally) p does not divide beta/d}.
    static CuspData divisor_rule(unsigned long p, bool unit_cofactor = true);
};

std::vector<HermitianMatrix> enumerate_positive(int n, long trace_bound, const CuspData& cusp,
                                                const FieldData& field);

// lambda^{-1} (h^*)^{-1} beta h^{-1}.
KMatrix gl_conjugate(const KMatrix& beta, const KMatrix& h, const KElt& lambda, const QuadraticField& K);

}  // namespace eism
