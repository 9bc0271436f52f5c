#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eism/function_space.hpp"
#include "eism/hermitian.hpp"

namespace eism {

// Truncated sum of c(beta) q^beta over the enumerated beta > 0 with
// tr beta <= trace_bound. Every enumerated beta has an entry, zeros included.
struct QExpansion {
    std::string cusp = "identity";
    int n = 1;
    FieldData field;
    long trace_bound = 0;
    RingSpec ring;
    std::map<HermitianMatrix, Coeff> coeffs;

    // Zero for indices that are absent.
    Coeff coefficient(const HermitianMatrix& beta) const;
    std::size_t size() const { return coeffs.size(); }
};

struct QExpansionOptions {
    // Run check_equivariance on F before summing.
    bool validate = true;
    SampleOptions sampling;
};

// c(beta) = sum over (a, m) in A(beta) of
//   m F(a, N(a)^{-1} beta) N_{k,nu}(a^{-1} det beta) N(det beta)^{-n}.
QExpansion eisenstein_qexp(const Weight& w, const ContinuousFunction& F, const CuspData& cusp, long trace_bound,
                           int j, const QExpansionOptions& opts = {});

// Coefficient at a single beta; the same formula as eisenstein_qexp.
Coeff eisenstein_coefficient(const Weight& w, const ContinuousFunction& F, const CuspData& cusp,
                             const HermitianMatrix& beta, int j);

// chi(det(lambda h)^{-1}) lambda^{lambda_power} N(det h)^{deth_power}.
struct TransformPrefactor {
    std::optional<Coeff> chi_value;
    long lambda_power = 0;
    long deth_power = 0;
};

// New coefficient at beta is prefactor * old coefficient at
// gl_conjugate(beta, h, lambda). Successive transforms by h1 then h2 agree
// with one transform by h1 h2.
QExpansion cusp_transform(const QExpansion& Q, const KMatrix& h, const KElt& lambda,
                          const TransformPrefactor& prefactor = {});

struct CongruenceReport {
    bool pass = true;
    std::string witness;
    std::size_t compared = 0;
    explicit operator bool() const { return pass; }
};

using BetaFilter = std::function<bool(const HermitianMatrix&)>;

CongruenceReport congruent_mod(const QExpansion& a, const QExpansion& b, int j, const BetaFilter& filter = {});
bool operator==(const QExpansion& a, const QExpansion& b);

QExpansion operator+(const QExpansion& a, const QExpansion& b);
QExpansion scaled(const QExpansion& Q, const Coeff& c);

// C(n, K) = rational * sqrt(radicand).
struct RadicalConstant {
    mpq_class rational = 1;
    long radicand = 1;
    double value() const;
};

RadicalConstant cnk_constant(int n, const FieldData& field);

struct NormalizationConstant {
    RadicalConstant cnk;
    mpq_class rational_part = 1;  // C(n,K) rational part times N(b)^{-n^2}
    long sqrt_radicand = 1;
    int two_power = 0;
    int i_power = 0;
    int pi_power = 0;        // from (2 pi)^{nk}
    int gamma_pi_power = 0;  // pi^{n(n-1)/2} in the denominator
    std::vector<long> gamma_args;  // Gamma(k - t), t = 0..n-1, in the denominator
    mpz_class gamma_product = 1;
    std::vector<std::string> lvalue_tokens;  // inverted L-values
    std::map<std::string, std::vector<long>> euler_polynomials;

    int net_pi_power() const { return pi_power - gamma_pi_power; }
    // Validates integer coefficients with constant term 1.
    void set_euler_polynomial(const std::string& key, std::vector<long> coeffs);
    std::string to_string() const;
};

NormalizationConstant normalization_constant(int n, const FieldData& field, const mpz_class& b_norm, int k);

}  // namespace eism
