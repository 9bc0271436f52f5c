#include <doctest.h>

#include <random>

#include "eism/error.hpp"
#include "eism/qexp.hpp"
#include "support.hpp"

using namespace eism;

namespace {

ContinuousFunction cube_f(const FieldData& f) {
    MonomialSpec s;
    s.x_exps = {3};
    return h_to_f(monomial_function(f, 1, s));
}

QExpansionOptions orbit_options() {
    QExpansionOptions o;
    o.sampling.skip_minus_one = true;
    return o;
}

long det_of(const HermitianMatrix& b, const QuadraticField& K) {
    mpq_class d = b.det(K);
    return d.get_num().get_si();
}

LCFunction equivariant_table(const FieldData& f, int n, const Weight& w, std::mt19937_64& rng) {
    return symmetrize_equivariant(test::random_table(f, n, 1, f.precision, rng), w);
}

}  // namespace

TEST_CASE("divisor rule coefficients at 6 and 5") {
    FieldData f = FieldData::symplectic(5, 10);
    QExpansion Q = eisenstein_qexp(Weight::scalar(1, 0), cube_f(f), CuspData::divisor_rule(5), 10, 10,
                                   orbit_options());
    CHECK(Q.size() == 10);
    CHECK(Q.coefficient(HermitianMatrix::scalar(6)).padic() ==
          PadicElt::from_rational(mpz_class(252), mpz_class(6), 5, 10));
    CHECK(Q.coefficient(HermitianMatrix::scalar(6)).padic() == PadicElt::from_integer(42, 5, 10));
    CHECK(Q.coefficient(HermitianMatrix::scalar(5)).is_zero());
    CHECK(Q.coefficient(HermitianMatrix::scalar(10)).is_zero());
    CHECK(eisenstein_coefficient(Weight::scalar(1, 0), cube_f(f), CuspData::divisor_rule(5),
                                 HermitianMatrix::scalar(6), 10) == Q.coefficient(HermitianMatrix::scalar(6)));
}

TEST_CASE("constant function over Z[i] gives 1 at unit determinants") {
    FieldData f = FieldData::unitary(-4, 5, 6);
    const Weight w = Weight::scalar(2, 0);
    ContinuousFunction F = weight_character_function(f, 2, w);
    QExpansion Q = eisenstein_qexp(w, F, CuspData::single_term(), 6, 6);
    CHECK(Q.size() == test::box_scan_2x2(f.K, 6).size());
    int units = 0;
    for (const auto& [beta, c] : Q.coeffs) {
        if (det_of(beta, f.K) % 5 != 0) {
            ++units;
            CHECK(c.padic() == PadicElt::from_integer(1, 5, 6));
        } else {
            CHECK(c.is_zero());
        }
    }
    CHECK(units > 0);
    QExpansion Q3 = eisenstein_qexp(w, F, CuspData::single_term(), 3, 6);
    CHECK(Q3.size() == 11);
}

TEST_CASE("rank-deficient indices carry no coefficient") {
    FieldData f = FieldData::unitary(-4, 5, 6);
    const Weight w = Weight::scalar(2, 0);
    ContinuousFunction F = weight_character_function(f, 2, w);
    QExpansion Q = eisenstein_qexp(w, F, CuspData::single_term(), 6, 6);
    const QuadraticField& K = f.K;
    HermitianMatrix singular(KMatrix(2, {KElt(1), KElt(1, 1), KElt(1, -1), KElt(2)}), K);
    CHECK(singular.det(K) == 0);
    CHECK(Q.coefficient(singular).is_zero());
    CHECK(eisenstein_coefficient(w, F, CuspData::single_term(), singular, 6).is_zero());
    for (const auto& [beta, c] : Q.coeffs) CHECK(beta.det(K) > 0);
}

TEST_CASE("equivariance is required") {
    FieldData f = FieldData::unitary(-4, 5, 4);
    ContinuousFunction one = constant_function(f, 1, Coeff(PadicElt::from_integer(1, 5, 4)));
    CHECK_THROWS_AS(eisenstein_qexp(Weight::scalar(3, 0), one, CuspData::single_term(), 5, 4), Error);
}

TEST_CASE("weight shift identity on random equivariant tables") {
    std::mt19937_64 rng(41);
    FieldData f = FieldData::unitary(-4, 5, 4);
    for (int n = 1; n <= 2; ++n) {
        const long bound = n == 1 ? 60 : 4;
        for (int k = n; k <= n + 2; ++k) {
            for (int nu = -1; nu <= 1; ++nu) {
                const Weight w = Weight::scalar(k, nu);
                ContinuousFunction F(equivariant_table(f, n, w, rng));
                QExpansion direct = eisenstein_qexp(w, F, CuspData::single_term(), bound, 4);
                QExpansion shifted =
                    eisenstein_qexp(Weight::scalar(n, 0), weight_twist(F, w), CuspData::single_term(), bound, 4);
                CHECK(direct == shifted);
                CHECK(congruent_mod(direct, shifted, 4).pass);
            }
        }
    }
}

TEST_CASE("linearity") {
    std::mt19937_64 rng(43);
    FieldData f = FieldData::unitary(-3, 7, 4);
    const Weight w = Weight::scalar(2, 1);
    LCFunction F1 = equivariant_table(f, 1, w, rng);
    LCFunction F2 = equivariant_table(f, 1, w, rng);
    const Coeff a(PadicElt::from_integer(2, 7, 4)), b(PadicElt::from_integer(-3, 7, 4));
    ContinuousFunction sum = ContinuousFunction(F1).scaled(a) + ContinuousFunction(F2).scaled(b);
    QExpansion lhs = eisenstein_qexp(w, sum, CuspData::single_term(), 40, 4);
    QExpansion rhs = scaled(eisenstein_qexp(w, ContinuousFunction(F1), CuspData::single_term(), 40, 4), a) +
                     scaled(eisenstein_qexp(w, ContinuousFunction(F2), CuspData::single_term(), 40, 4), b);
    CHECK(lhs == rhs);
}

TEST_CASE("congruent_mod on constructed pairs") {
    std::mt19937_64 rng(47);
    FieldData f = FieldData::unitary(-4, 5, 6);
    const Weight w = Weight::scalar(1, 0);
    QExpansion Q = eisenstein_qexp(w, ContinuousFunction(equivariant_table(f, 1, w, rng)), CuspData::single_term(),
                                   30, 6);
    CHECK(congruent_mod(Q, Q, 6).pass);
    // Q' with a unit coefficient at beta = 1
    QExpansion Qp = Q;
    for (auto& [beta, c] : Qp.coeffs) c = Coeff(PadicElt::from_integer(0, 5, 6));
    Qp.coeffs.at(HermitianMatrix::scalar(1)) = Coeff(PadicElt::from_integer(1, 5, 6));
    for (int j = 1; j <= 4; ++j) {
        QExpansion R = Q + scaled(Qp, Coeff(PadicElt::from_integer(test::ipow(5, j), 5, 6)));
        CHECK(congruent_mod(Q, R, j).pass);
        CongruenceReport rep = congruent_mod(Q, R, j + 1);
        CHECK_FALSE(rep.pass);
        CHECK(rep.witness.find("beta") != std::string::npos);
    }
    QExpansion other = Q;
    other.trace_bound = 31;
    CHECK_THROWS_AS(congruent_mod(Q, other, 1), Error);
}

TEST_CASE("cusp_transform") {
    FieldData f = FieldData::symplectic(5, 10);
    QExpansion Q = eisenstein_qexp(Weight::scalar(1, 0), cube_f(f), CuspData::divisor_rule(5), 20, 10,
                                   orbit_options());
    const QuadraticField& K = f.K;
    CHECK(cusp_transform(Q, KMatrix::identity(1), KElt(1)) == Q);

    // n = 1, h = 2: the coefficient at beta moves to 4 beta
    QExpansion T = cusp_transform(Q, KMatrix::scalar(1, KElt(2)), KElt(1));
    for (long b = 1; b <= 20; ++b) {
        KMatrix four_b = KMatrix::scalar(1, KElt(4 * b));
        CHECK(gl_conjugate(four_b, KMatrix::scalar(1, KElt(2)), KElt(1), K) == KMatrix::scalar(1, KElt(b)));
        CHECK(T.coefficient(HermitianMatrix::scalar(4 * b)) == Q.coefficient(HermitianMatrix::scalar(b)));
    }

    TransformPrefactor pre;
    pre.lambda_power = 1;
    pre.deth_power = -1;
    QExpansion P = cusp_transform(Q, KMatrix::scalar(1, KElt(2)), KElt(3), pre);
    // lambda^1 N(det h)^{-1} = 3 / 2
    CHECK(P.coefficient(HermitianMatrix::scalar(12 * 6)) ==
          Coeff(Q.coefficient(HermitianMatrix::scalar(6)).padic() *
                PadicElt::from_rational(mpz_class(3), mpz_class(2), 5, 10)));
}

TEST_CASE("cusp_transform group law over Z[i]") {
    std::mt19937_64 rng(53);
    FieldData f = FieldData::unitary(-4, 5, 4);
    const QuadraticField& K = f.K;
    const Weight w = Weight::scalar(2, 0);
    QExpansion Q = eisenstein_qexp(w, weight_character_function(f, 2, w), CuspData::single_term(), 5, 4);
    std::uniform_int_distribution<long> d(-2, 2);
    int tested = 0;
    while (tested < 20) {
        KMatrix h1(2, {KElt(d(rng), d(rng)), KElt(d(rng), d(rng)), KElt(d(rng), d(rng)), KElt(d(rng), d(rng))});
        KMatrix h2(2, {KElt(d(rng), d(rng)), KElt(d(rng), d(rng)), KElt(d(rng), d(rng)), KElt(d(rng), d(rng))});
        if (det(h1, K).is_zero() || det(h2, K).is_zero()) continue;
        TransformPrefactor pre;
        pre.lambda_power = 2;
        pre.deth_power = 1;
        const KElt l1(1 + std::abs(d(rng))), l2(1 + std::abs(d(rng)));
        QExpansion twice = cusp_transform(cusp_transform(Q, h1, l1, pre), h2, l2, pre);
        QExpansion once = cusp_transform(Q, mul(h1, h2, K), K.mul(l1, l2), pre);
        CHECK(twice == once);
        ++tested;
    }
    CHECK_THROWS_AS(cusp_transform(Q, KMatrix(2, {KElt(1), KElt(1), KElt(1), KElt(1)}), KElt(1)), Error);
}

TEST_CASE("normalization constant") {
    const std::pair<long, unsigned long> fields[] = {{-4, 5}, {-3, 7}, {-7, 11}};
    for (auto [disc, p] : fields) {
        RadicalConstant c = cnk_constant(1, FieldData::unitary(disc, p));
        CHECK(c.rational == 1);
        CHECK(c.radicand == 1);
    }
    RadicalConstant c2 = cnk_constant(2, FieldData::unitary(-4, 5));
    CHECK(c2.rational == 1);
    CHECK(c2.radicand == 1);
    // 2 * 3^{-1/2}
    RadicalConstant c3 = cnk_constant(2, FieldData::unitary(-3, 7));
    CHECK(c3.value() == doctest::Approx(2.0 / std::sqrt(3.0)));

    for (int k = 1; k <= 8; ++k) {
        NormalizationConstant nc = normalization_constant(1, FieldData::symplectic(5), 1, k);
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k - 1));
        CHECK(nc.gamma_product == fact);
        CHECK(nc.pi_power == k);
        CHECK(nc.lvalue_tokens.size() == 1);
    }
    NormalizationConstant n2 = normalization_constant(2, FieldData::unitary(-4, 5), 2, 3);
    CHECK(n2.pi_power == 6);
    CHECK(n2.gamma_product == 2);
    CHECK(n2.rational_part == mpq_class(1, 16));
    CHECK_THROWS_AS(normalization_constant(2, FieldData::unitary(-4, 5), 1, 1), Error);
    n2.set_euler_polynomial("beta=1,v=5", {1, -3, 2});
    CHECK(n2.euler_polynomials.size() == 1);
    CHECK_THROWS_AS(n2.set_euler_polynomial("bad", {2, 1}), Error);
}
