#pragma once

#include <string>

#include "eism/diff_ops.hpp"
#include "eism/qexp.hpp"

namespace eism {

struct MeasureContext {
    FieldData field;
    int n = 1;
    CuspData cusp = CuspData::single_term();
    long trace_bound = 1;
    int precision = 1;
    SampleOptions sampling;
};

// eisenstein_qexp((n, 0), h_to_f(H)) after checking that H is unit invariant.
QExpansion integrate(const ContinuousFunction& H, const MeasureContext& ctx);

// x, y -> P(N(x) y^{-1}) for a polynomial P on n x n matrices.
ContinuousFunction polynomial_multiplier(const Polynomial& P, const FieldData& field, int n);

// Integral of H(x, y) F_zeta(N(x) y^{-1}).
QExpansion moment_zeta(const ContinuousFunction& H, const Polynomial& zeta, const MeasureContext& ctx);
// Same integral with an explicit multiplier in place of F_zeta.
QExpansion moment_with_multiplier(const ContinuousFunction& H, const Polynomial& F, const MeasureContext& ctx);

// Integral of H(x, y) det(N(x)^{-1} y)^{-d}, checked against the expansion
// of weight (n + 2d, -d) with the matching function F'. VerificationFailure
// when the two disagree.
QExpansion moment_detd(const ContinuousFunction& H, int d, const MeasureContext& ctx);

struct KummerReport {
    bool pass = false;
    unsigned long p = 0;
    int k = 0;
    int kprime = 0;
    int mod_exp = 1;
    long bound = 0;
    std::size_t compared = 0;
    std::string witness;
    QExpansion first;
    QExpansion second;
    std::string to_string() const;
};

// Integrates x^{k-1} and x^{k'-1} at n = 1 (symplectic, divisor rule) and
// compares coefficients at p-prime beta modulo p^{mod_exp}.
KummerReport kummer_check(unsigned long p, int k, int kprime, int mod_exp, long bound);

}  // namespace eism
