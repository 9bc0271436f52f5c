#include <doctest.h>

#include <random>

#include "eism/error.hpp"
#include "eism/function_space.hpp"
#include "support.hpp"

using namespace eism;

namespace {

GnPoint point1(const FieldData& f, long x, long y, int prec) {
    PadicElt px = PadicElt::from_integer(x, f.p, prec);
    return {CMElt{{px}, {px}}, {PMatrix(1, {PadicElt::from_integer(y, f.p, prec)})}};
}

PMatrix pmat(std::initializer_list<long> e, unsigned long p, int prec) {
    std::vector<PadicElt> v;
    for (long x : e) v.push_back(PadicElt::from_integer(x, p, prec));
    const int n = e.size() == 1 ? 1 : 2;
    return PMatrix(n, std::move(v));
}

}  // namespace

TEST_CASE("constant and support") {
    FieldData f = FieldData::symplectic(5, 6);
    ContinuousFunction one = constant_function(f, 1, Coeff(PadicElt::from_integer(1, 5, 6)));
    CHECK(one.evaluate(point1(f, 3, 7, 6), 6).padic().residue() == 1);
    // y = p Id lies outside invertible support
    CHECK(one.evaluate(point1(f, 3, 5, 6), 6).is_zero());

    FieldData f2 = FieldData::unitary(-4, 5, 6);
    ContinuousFunction c2 = constant_function(f2, 2, Coeff(PadicElt::from_integer(1, 5, 6)));
    GnPoint pt = coset_point({1, 1, 5, 0, 0, 5}, f2, 2, 6);
    CHECK(c2.evaluate(pt, 6).is_zero());
}

TEST_CASE("monomial x_sigma^3 at the sigma-component of 2 + i") {
    FieldData f = FieldData::unitary(-4, 5, 6);
    MonomialSpec s;
    s.x_exps = {3, 0};
    ContinuousFunction F = monomial_function(f, 1, s);
    // 2 + i itself is not a unit of O_K (x) Z_5, so it lies outside the support
    CMElt x = cm_split_embed(KElt(2, 1), f, 6);
    CHECK(F.evaluate(GnPoint{x, {pmat({1}, 5, 6)}}, 6).is_zero());
    x.sigma_bar[0] = PadicElt::from_integer(1, 5, 6);
    GnPoint pt{x, {pmat({1}, 5, 6)}};
    for (int j = 1; j <= 6; ++j) {
        PadicElt expect = embed_sigma(KElt(2, 1), f, j).pow(3);
        CHECK(F.evaluate(pt, j).padic() == expect);
        CHECK(F.evaluate(pt, j).padic().precision() == j);
    }
    CHECK_THROWS_AS(F.evaluate(pt, 7), Error);
}

TEST_CASE("equivariance examples with units +-1") {
    FieldData f = FieldData::symplectic(5, 6);
    ContinuousFunction one = constant_function(f, 1, Coeff(PadicElt::from_integer(1, 5, 6)), YSupport::all);
    CHECK(check_equivariance(one, Weight::scalar(2, 0)).pass);
    SymmetryReport odd = check_equivariance(one, Weight::scalar(3, 0));
    CHECK_FALSE(odd.pass);
    CHECK(odd.witness.find("e = -1") != std::string::npos);

    for (long a = -2; a <= 3; ++a) {
        for (long b = -2; b <= 2; ++b) {
            MonomialSpec s;
            s.x_exps = {a};
            s.ydet_exp = b;
            ContinuousFunction F = monomial_function(f, 1, s);
            for (int k = 1; k <= 4; ++k) {
                const bool parity = ((a - b - k) % 2 + 2) % 2 == 0;
                CHECK(check_equivariance(F, Weight::scalar(k, 0)).pass == parity);
            }
        }
    }
}

TEST_CASE("h_to_f on the symplectic examples") {
    FieldData f = FieldData::symplectic(5, 6);
    std::mt19937_64 rng(2);
    ContinuousFunction F1 = h_to_f(constant_function(f, 1, Coeff(PadicElt::from_integer(1, 5, 6))));
    MonomialSpec s;
    s.x_exps = {3};
    ContinuousFunction F2 = h_to_f(monomial_function(f, 1, s));
    for (int t = 0; t < 50; ++t) {
        GnPoint pt = random_point(f, 1, 6, YSupport::invertible, rng);
        PadicElt yinv = pt.y[0](0, 0).inverse();
        CHECK(F1.evaluate(pt, 6).padic() == yinv);
        CHECK(F2.evaluate(pt, 6).padic() == pt.x.sigma[0].pow(3) * yinv);
    }
}

TEST_CASE("f_to_h inverts h_to_f on random tables") {
    std::mt19937_64 rng(17);
    struct Case {
        FieldData field;
        int n;
        int level;
    };
    std::vector<Case> cases = {{FieldData::symplectic(5, 4), 1, 2},
                               {FieldData::unitary(-4, 5, 4), 1, 1},
                               {FieldData::unitary(-3, 7, 3), 1, 1},
                               {FieldData::symplectic(3, 4), 2, 1},
                               {FieldData::unitary(-4, 5, 3), 2, 1}};
    for (const auto& c : cases) {
        for (int t = 0; t < 3; ++t) {
            LCFunction H = test::random_table(c.field, c.n, c.level, c.field.precision, rng, 0.5);
            ContinuousFunction back = f_to_h(h_to_f(ContinuousFunction(H)));
            CHECK(test::same_table(test::table_at(back, c.level, c.field.precision), H));
            ContinuousFunction fwd = h_to_f(f_to_h(ContinuousFunction(H)));
            CHECK(test::same_table(test::table_at(fwd, c.level, c.field.precision), H));
        }
    }
}

TEST_CASE("unit invariance of H corresponds to equivariance of F") {
    std::mt19937_64 rng(23);
    const std::pair<FieldData, int> cases[] = {{FieldData::symplectic(5, 4), 1},
                                               {FieldData::unitary(-4, 5, 4), 1},
                                               {FieldData::unitary(-3, 7, 3), 1},
                                               {FieldData::symplectic(3, 3), 2}};
    for (const auto& [field, n] : cases) {
        const Weight base = Weight::scalar(n, 0, field.places());
        for (int t = 0; t < 3; ++t) {
            LCFunction raw = test::random_table(field, n, 1, field.precision, rng);
            LCFunction sym = symmetrize(raw);
            CHECK(test::invariant_on_cells(ContinuousFunction(sym), 1));
            CHECK_FALSE(test::invariant_on_cells(ContinuousFunction(raw), 1));
            CHECK(check_unit_invariance(ContinuousFunction(sym)).pass);
            CHECK_FALSE(check_unit_invariance(ContinuousFunction(raw)).pass);

            // H invariant <=> h_to_f(H) equivariant
            CHECK(test::equivariant_on_cells(h_to_f(ContinuousFunction(sym)), 1));
            CHECK_FALSE(test::equivariant_on_cells(h_to_f(ContinuousFunction(raw)), 1));

            // F equivariant <=> f_to_h(F) invariant
            LCFunction eq = symmetrize_equivariant(raw, base);
            CHECK(test::equivariant_on_cells(ContinuousFunction(eq), 1));
            CHECK(check_equivariance(ContinuousFunction(eq), base).pass);
            CHECK(test::invariant_on_cells(f_to_h(ContinuousFunction(eq)), 1));
            CHECK_FALSE(test::equivariant_on_cells(ContinuousFunction(raw), 1));
            CHECK_FALSE(test::invariant_on_cells(f_to_h(ContinuousFunction(raw)), 1));
        }
    }
}

TEST_CASE("symmetrize needs an invertible group order") {
    FieldData f = FieldData::unitary(-7, 2, 4);
    std::mt19937_64 rng(1);
    LCFunction H = test::random_table(f, 1, 1, 4, rng);
    CHECK_THROWS_AS(symmetrize(H), Error);
}

TEST_CASE("weight twist examples and composition") {
    FieldData f = FieldData::unitary(-4, 5, 5);
    std::mt19937_64 rng(8);
    LCFunction T = test::random_table(f, 2, 1, 5, rng);
    ContinuousFunction F(T);
    ContinuousFunction same = weight_twist(F, Weight::scalar(2, 0));
    CHECK(test::same_table(test::table_at(same, 1, 5), T));

    ContinuousFunction one = constant_function(f, 2, Coeff(PadicElt::from_integer(1, 5, 5)));
    ContinuousFunction tw = weight_twist(one, Weight::scalar(3, 0));
    for (int t = 0; t < 20; ++t) {
        GnPoint pt = random_point(f, 2, 5, YSupport::invertible, rng);
        pt.y[0] = PMatrix::identity(2, 5, 5);
        PadicElt nx = norm_relative(pt.x, f)[0];
        CMElt u = pt.x;
        u.sigma[0] = pt.x.sigma[0].inverse() * nx * nx;
        u.sigma_bar[0] = pt.x.sigma_bar[0].inverse() * nx * nx;
        CHECK(tw.evaluate(pt, 5).padic() == norm_weight(u, Weight::scalar(1, 0), f));
    }

    // twist by (k1, nu1), then by N_{k2-k1, nu2-nu1}, equals the twist by (k2, nu2)
    for (int t = 0; t < 20; ++t) {
        const Weight w1 = Weight::scalar(2 + t % 3, t % 3 - 1);
        const Weight w2 = Weight::scalar(2 + (t + 1) % 4, (t + 2) % 3 - 1);
        GnPoint pt = random_point(f, 2, 5, YSupport::invertible, rng);
        PadicElt lhs = weight_twist(F, w1).evaluate(pt, 5).padic() *
                       twist_factor(pt, Weight{w2.k - w1.k, {w2.nu[0] - w1.nu[0]}}, f, 2);
        CHECK(lhs == weight_twist(F, w2).evaluate(pt, 5).padic());
        CHECK(weight_untwist(weight_twist(F, w1), w1).evaluate(pt, 5) == F.evaluate(pt, 5));
    }
}

TEST_CASE("truncation is coherent across levels") {
    FieldData f = FieldData::symplectic(5, 4);
    MonomialSpec s;
    s.x_exps = {3};
    s.ydet_exp = -1;
    ContinuousFunction F = monomial_function(f, 1, s);
    LCFunction t1 = F.truncate(1), t2 = F.truncate(2), t3 = F.truncate(3);
    CHECK(t1.level() == 1);
    CHECK(t2.level() == 2);
    for (const auto& [key, v] : t3.entries()) {
        CosetKey k2 = key;
        for (auto& c : k2) c %= 25;
        CHECK(congruent(t2.at(k2), v, 2, 5));
        CosetKey k1 = key;
        for (auto& c : k1) c %= 5;
        CHECK(congruent(t1.at(k1), v, 1, 5));
    }
}

TEST_CASE("table set rejects bad keys and lifting preserves values") {
    FieldData f = FieldData::symplectic(5, 4);
    LCFunction T(f, 1, 1, RingSpec::padic(5, 4));
    CHECK_THROWS_AS(T.set({1}, Coeff(PadicElt::from_integer(1, 5, 4))), Error);
    CHECK_THROWS_AS(T.set({0, 1}, Coeff(PadicElt::from_integer(1, 5, 4))), Error);
    CHECK_THROWS_AS(T.set({1, 0}, Coeff(PadicElt::from_integer(1, 5, 4))), Error);
    CHECK_THROWS_AS(T.set({7, 1}, Coeff(PadicElt::from_integer(1, 5, 4))), Error);
    T.set({2, 3}, Coeff(PadicElt::from_integer(9, 5, 4)));
    LCFunction L = T.lifted_to(2);
    CHECK(L.entries().size() == 25);
    CHECK(L.at({7, 13}).padic().residue() == 9);
    CHECK(L.at({7, 14}).is_zero());
}

namespace {

// u^{p^{N-1}} mod p^N by repeated powering.
mpz_class teich_oracle(long u, unsigned long p, int N) {
    mpz_class m = test::ipow(mpz_class(p), static_cast<unsigned long>(N));
    mpz_class r = u, e = test::ipow(mpz_class(p), static_cast<unsigned long>(N - 1));
    mpz_powm(r.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

TEST_CASE("Teichmueller lifts") {
    for (long u = 1; u < 7; ++u) {
        PadicElt t = teichmuller(PadicElt::from_integer(u, 7, 5));
        CHECK(t.residue() == teich_oracle(u, 7, 5));
        CHECK(t.pow(6).residue() == 1);
        CHECK(t.residue() % 7 == u);
    }
}

TEST_CASE("character decomposition of a constant table") {
    FieldData f = FieldData::symplectic(5, 3);
    LCFunction T(f, 1, 1, RingSpec::padic(5, 3));
    for (const auto& key : test::all_cells(f, 1, 1, YSupport::invertible)) {
        T.set(key, Coeff(PadicElt::from_integer(key[1], 5, 3)));
    }
    auto parts = character_decompose(T, 1);
    CHECK(parts.size() == 1);
    int nonzero = 0;
    for (const auto& part : parts) {
        if (part.component.entries().empty()) continue;
        ++nonzero;
        CHECK(part.chi.is_trivial());
        CHECK(test::same_table(part.component, T));
    }
    CHECK(nonzero == 1);
}

TEST_CASE("x mod 5 is exactly the Teichmueller component") {
    FieldData f = FieldData::symplectic(5, 1);
    LCFunction T(f, 1, 1, RingSpec::padic(5, 1));
    for (const auto& key : test::all_cells(f, 1, 1, YSupport::invertible)) {
        T.set(key, Coeff(PadicElt::from_integer(key[0], 5, 1)));
    }
    auto parts = character_decompose(T, 1);
    int nonzero = 0;
    for (const auto& part : parts) {
        if (part.component.entries().empty()) continue;
        ++nonzero;
        CHECK(test::same_table(part.component, T));
        // omega(x) = x mod 5: the character sends the generator to its own residue
        for (const auto& [key, v] : part.component.entries()) {
            CHECK(character_value(part.chi, key, f, RingSpec::padic(5, 1)).padic().residue() == key[0]);
        }
    }
    CHECK(nonzero == 1);
}

TEST_CASE("p-adic decomposition matches Fourier inversion and reconstructs the table") {
    const unsigned long p = 7;
    const int N = 4;
    FieldData f = FieldData::unitary(-3, p, N);
    std::mt19937_64 rng(31);
    LCFunction T = test::random_table(f, 1, 1, N, rng);
    auto parts = character_decompose(T, 1);
    CHECK(parts.size() == 36);

    const mpz_class mod = test::ipow(mpz_class(p), N);
    const mpz_class inv36 = test::euclid_inverse(36, mod);
    std::optional<LCFunction> sum;
    for (const auto& part : parts) {
        const int s0 = part.chi.exponents[0], s1 = part.chi.exponents[1];
        for (const auto& key : test::all_cells(f, 1, 1, YSupport::invertible)) {
            // c(x, y) = (1/36) sum_u F(u, y) omega(u0)^{-s0} omega(u1)^{-s1} omega(x0)^{s0} omega(x1)^{s1}
            mpz_class acc = 0;
            for (long u0 = 1; u0 < 7; ++u0) {
                for (long u1 = 1; u1 < 7; ++u1) {
                    CosetKey uk = {u0, u1, key[2]};
                    Coeff fu = T.at(uk);
                    if (fu.is_zero()) continue;
                    mpz_class w = teich_oracle(u0, p, N);
                    mpz_class w1 = teich_oracle(u1, p, N);
                    mpz_class a, b;
                    mpz_class e0 = (6 - s0) % 6, e1 = (6 - s1) % 6;
                    mpz_powm(a.get_mpz_t(), w.get_mpz_t(), e0.get_mpz_t(), mod.get_mpz_t());
                    mpz_powm(b.get_mpz_t(), w1.get_mpz_t(), e1.get_mpz_t(), mod.get_mpz_t());
                    acc += fu.padic().residue() * a * b;
                }
            }
            mpz_class x0, x1;
            mpz_class t0 = teich_oracle(key[0], p, N), t1 = teich_oracle(key[1], p, N);
            mpz_class es0 = s0, es1 = s1;
            mpz_powm(x0.get_mpz_t(), t0.get_mpz_t(), es0.get_mpz_t(), mod.get_mpz_t());
            mpz_powm(x1.get_mpz_t(), t1.get_mpz_t(), es1.get_mpz_t(), mod.get_mpz_t());
            mpz_class expect = ((acc * inv36 % mod) * x0 % mod) * x1 % mod;
            CHECK(part.component.at(key) == Coeff(PadicElt::from_integer(expect, p, N)));
        }
        sum = sum ? *sum + part.component : part.component;
    }
    CHECK(test::same_table(*sum, T));
}

TEST_CASE("rational tables decompose over cyclotomic fields") {
    FieldData f = FieldData::symplectic(5, 2);
    LCFunction T(f, 1, 2, RingSpec::rational());
    std::mt19937_64 rng(4);
    for (const auto& key : test::all_cells(f, 1, 2, YSupport::invertible)) {
        T.set(key, Coeff(mpq_class(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3))));
    }
    auto parts = character_decompose(T, 2);
    CHECK(parts.size() <= 20);
    for (const auto& key : test::all_cells(f, 1, 2, YSupport::invertible)) {
        Cyclotomic acc(20);
        for (const auto& part : parts) {
            Coeff v = part.component.at(key);
            if (!v.is_zero()) acc += v.cyclotomic();
            // components transform by their character
            CosetKey one = {1, key[1]};
            Coeff base = part.component.at(one);
            Coeff chi = character_value(part.chi, key, f, RingSpec::cyclotomic(20));
            if (!base.is_zero() || !v.is_zero()) CHECK(v == chi * base);
        }
        CHECK(acc == Cyclotomic::from_rational(20, T.at(key).rational()));
    }
    CHECK_THROWS_AS(character_decompose(test::random_table(f, 1, 2, 2, rng), 2), Error);
}

TEST_CASE("partition functions") {
    FieldData f = FieldData::unitary(-4, 5, 4);
    std::mt19937_64 rng(6);

    PartitionSpec trivial{{2}, {PadicCharacter{}}};
    ContinuousFunction T = partition_function_continuous(trivial, XCharacter{}, f, 2);
    for (int t = 0; t < 20; ++t) {
        GnPoint pt = random_point(f, 2, 4, YSupport::invertible, rng);
        CHECK(T.evaluate(pt, 4).padic() == norm_weight(pt.x, Weight::scalar(2, 0), f));
    }

    PartitionSpec ident{{2}, {PadicCharacter{0, 1, 0, {}}}};
    ContinuousFunction I = partition_function_continuous(ident, XCharacter{}, f, 2);
    for (int t = 0; t < 20; ++t) {
        GnPoint pt = random_point(f, 2, 4, YSupport::invertible, rng);
        PadicElt nx = norm_relative(pt.x, f)[0];
        PadicElt expect = norm_weight(pt.x, Weight::scalar(2, 0), f) * nx * nx * pt.y[0].det();
        CHECK(I.evaluate(pt, 4).padic() == expect);
    }

    PadicCharacter rho{2, 1, 0, {}};
    PartitionSpec split{{1, 1}, {rho, rho}};
    for (int t = 0; t < 50; ++t) {
        GnPoint pt = random_point(f, 2, 4, YSupport::invertible, rng);
        const PMatrix& m = pt.y[0];
        PadicElt v = partition_value(split, m);
        if (m(0, 0).is_unit()) {
            CHECK(v == rho(m(0, 0) * m.det()));
        } else {
            CHECK(v.is_zero());
        }
    }

    PartitionSpec teich{{1, 1}, {PadicCharacter{1, 0, 0, {}}, PadicCharacter{}}};
    LCFunction tab = partition_function(teich, XCharacter{}, f, 2, 1);
    CHECK(tab.level() == 1);
    CHECK_THROWS_AS(partition_function(ident, XCharacter{{PadicCharacter{1, 0, 0, {}}}}, f, 2, 0), Error);
}
