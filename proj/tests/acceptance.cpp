// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exits with status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "eism/automorphy.hpp"
#include "eism/error.hpp"
#include "eism/measure.hpp"
#include "support.hpp"

using namespace eism;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail << "first failure: " << what << "; ";
        }
    }
};

PadicElt coefficient_at(const QExpansion& Q, long b) { return Q.coefficient(HermitianMatrix::scalar(b)).padic(); }

ContinuousFunction x_power(const FieldData& f, long e) {
    MonomialSpec s;
    s.x_exps = {e};
    return monomial_function(f, 1, s);
}

MeasureContext katz_context(unsigned long p, long bound, int precision) {
    MeasureContext ctx;
    ctx.field = FieldData::symplectic(p, precision);
    ctx.n = 1;
    ctx.cusp = CuspData::divisor_rule(p);
    ctx.trace_bound = bound;
    ctx.precision = precision;
    return ctx;
}

// beta c(beta) against the depleted divisor sum of d^{k-1}, modulo p^j.
bool matches_divisor_sums(const QExpansion& Q, unsigned long p, int k, int j, long bound, std::string& witness) {
    const mpz_class m = test::ipow(mpz_class(p), static_cast<unsigned long>(j));
    for (long b = 1; b <= bound; ++b) {
        const mpz_class lhs = (PadicElt::from_integer(b, p, j) * coefficient_at(Q, b).reduced(j)).residue();
        const mpz_class rhs = test::depleted_divisor_sum(b, p, static_cast<unsigned long>(k - 1)) % m;
        if (lhs != rhs) {
            witness = "beta=" + std::to_string(b) + " k=" + std::to_string(k);
            return false;
        }
    }
    return true;
}

void kummer(Outcome& out) {
    struct Case {
        unsigned long p;
        int k, kprime, mod_exp;
    };
    const Case cases[] = {{5, 4, 24, 2}, {7, 4, 10, 1}};
    double total = 0;
    for (const auto& c : cases) {
        auto t0 = Clock::now();
        KummerReport rep = kummer_check(c.p, c.k, c.kprime, c.mod_exp, 200);
        total += seconds_since(t0);
        out.require(rep.pass, rep.to_string());
        std::string w;
        out.require(matches_divisor_sums(rep.first, c.p, c.k, c.mod_exp, 200, w), "oracle " + w);
        out.require(matches_divisor_sums(rep.second, c.p, c.kprime, c.mod_exp, 200, w), "oracle " + w);
        out.detail << "p=" << c.p << " k=" << c.k << " k'=" << c.kprime << " compared=" << rep.compared << "; ";
        if (c.p == 5) {
            const mpz_class s3 = test::depleted_divisor_sum(2, 5, 3), s23 = test::depleted_divisor_sum(2, 5, 23);
            out.require(s3 % 25 == 9 && s23 % 25 == 9, "sigma spot values");
            out.require((PadicElt::from_integer(2, 5, 2) * coefficient_at(rep.second, 2)).residue() == 9,
                        "2 c'(2) = 9 mod 25");
        }
    }
    out.require(total < 1.0, "runtime " + std::to_string(total) + " s");
    out.detail << "runtime=" << total << "s";
}

void classical(Outcome& out) {
    MeasureContext ctx = katz_context(5, 200, 40);
    for (int k : {4, 6, 8}) {
        QExpansion Q = integrate(x_power(ctx.field, k - 1), ctx);
        std::string w;
        // the divisor sums stay far below 5^40, so agreement mod 5^40 is equality
        out.require(test::depleted_divisor_sum(200, 5, static_cast<unsigned long>(k - 1)) < test::ipow(5, 40),
                    "oracle range");
        out.require(matches_divisor_sums(Q, 5, k, 40, 200, w), w);
        out.require(Q.size() == 200, "200 coefficients");
    }
    out.detail << "k=4,6,8 beta<=200 precision 40";
}

void bijection(Outcome& out) {
    struct Case {
        FieldData field;
        int n;
        int tables;
    };
    const Case cases[] = {{FieldData::symplectic(5, 3), 1, 45},
                          {FieldData::unitary(-4, 5, 3), 1, 45},
                          {FieldData::symplectic(3, 3), 2, 10}};
    std::mt19937_64 rng(20240601);
    int count = 0;
    for (const auto& c : cases) {
        const int level = 2;
        const Weight base = Weight::scalar(c.n, 0, c.field.places());
        for (int t = 0; t < c.tables; ++t, ++count) {
            LCFunction raw = test::random_table(c.field, c.n, level, c.field.precision, rng);
            ContinuousFunction H(raw);
            const std::string tag = " (table " + std::to_string(count) + ")";
            out.require(test::same_table(test::table_at(f_to_h(h_to_f(H)), level, c.field.precision), raw),
                        "f_to_h(h_to_f(H)) != H" + tag);
            out.require(test::same_table(test::table_at(h_to_f(f_to_h(H)), level, c.field.precision), raw),
                        "h_to_f(f_to_h(F)) != F" + tag);

            ContinuousFunction sym(symmetrize(raw));
            out.require(test::invariant_on_cells(sym, level), "symmetrized H not invariant" + tag);
            out.require(test::equivariant_on_cells(h_to_f(sym), level), "invariant H gave non-equivariant F" + tag);
            out.require(test::invariant_on_cells(H, level) == test::equivariant_on_cells(h_to_f(H), level),
                        "invariance of raw H differs from equivariance of h_to_f(H)" + tag);

            ContinuousFunction eq(symmetrize_equivariant(raw, base));
            out.require(test::equivariant_on_cells(eq, level), "symmetrized F not equivariant" + tag);
            out.require(test::invariant_on_cells(f_to_h(eq), level), "equivariant F gave non-invariant H" + tag);
            out.require(test::equivariant_on_cells(H, level) == test::invariant_on_cells(f_to_h(H), level),
                        "equivariance of raw F differs from invariance of f_to_h(F)" + tag);
        }
    }
    out.detail << count << " level-p^2 tables";
}

void weight_shift(Outcome& out) {
    FieldData f = FieldData::unitary(-4, 5, 4);
    std::mt19937_64 rng(77);
    int count = 0;
    for (int t = 0; t < 50; ++t, ++count) {
        const int n = t < 25 ? 1 : 2;
        const long bound = n == 1 ? 200 : 4;
        const int k = n + t % 5;
        const int nu = (t / 5) % 3 - 1;
        const Weight w = Weight::scalar(k, nu, f.places());
        ContinuousFunction F(symmetrize_equivariant(test::random_table(f, n, 1, f.precision, rng), w));
        QExpansion direct = eisenstein_qexp(w, F, CuspData::single_term(), bound, f.precision);
        QExpansion shifted = eisenstein_qexp(Weight::scalar(n, 0, f.places()), weight_twist(F, w),
                                             CuspData::single_term(), bound, f.precision);
        const std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " nu=" + std::to_string(nu);
        out.require(direct == shifted, tag);
        bool nonzero = false;
        for (const auto& [beta, c] : direct.coeffs) nonzero = nonzero || !c.is_zero();
        out.require(nonzero, "trivial expansion " + tag);
    }
    out.detail << count << " random F over Z[i], p=5";
}

void theta_moment(Outcome& out) {
    MeasureContext katz = katz_context(5, 200, 10);
    ContinuousFunction H1 = x_power(katz.field, 3);
    QExpansion base1 = integrate(H1, katz);
    for (int d = 0; d <= 3; ++d) {
        const Polynomial zeta = Polynomial::det(1).pow(d);
        out.require(moment_zeta(H1, zeta, katz) == theta_apply(base1, f_zeta(zeta)), "n=1 det^" + std::to_string(d));
    }
    out.require(coefficient_at(moment_zeta(H1, Polynomial::det(1), katz), 6) == PadicElt::from_integer(252, 5, 10),
                "moment at 6 is 252");

    MeasureContext ctx;
    ctx.field = FieldData::unitary(-4, 5, 4);
    ctx.n = 2;
    ctx.trace_bound = 4;
    ctx.precision = 4;
    std::mt19937_64 rng(5);
    ContinuousFunction H2(symmetrize(test::random_table(ctx.field, 2, 1, 4, rng)));
    QExpansion base2 = integrate(H2, ctx);
    for (int d = 0; d <= 3; ++d) {
        const Polynomial zeta = Polynomial::det(2).pow(d);
        out.require(moment_zeta(H2, zeta, ctx) == theta_apply(base2, f_zeta(zeta)), "n=2 det^" + std::to_string(d));
    }
    const Polynomial x11 = highest_weight_vector(HighestWeight({1, 0}));
    out.require(f_zeta(x11) == Polynomial::parse("x11 + x12 + x21 + x22", 2), "F_zeta for x11");
    out.require(moment_zeta(H2, x11, ctx) == theta_apply(base2, f_zeta(x11)), "n=2 zeta=x11");
    out.detail << "det^d d<=3 at n=1,2 and r=(1,0) at n=2";
}

void psi_values(Outcome& out) {
    out.require(psi_Z(HighestWeight({1})) == std::vector<mpz_class>{0, 1}, "psi_(1) = s");
    out.require(psi_Z(HighestWeight({1, 1})) == std::vector<mpz_class>{0, 1, 1}, "psi_(1,1) = s(s+1)");
    for (int d = 0; d <= 10; ++d) {
        std::vector<mpz_class> falling{1};
        for (int j = 0; j < d; ++j) {
            std::vector<mpz_class> next(falling.size() + 1, 0);
            for (std::size_t i = 0; i < falling.size(); ++i) {
                next[i + 1] += falling[i];
                next[i] -= falling[i] * j;
            }
            falling = std::move(next);
        }
        out.require(psi_Z(HighestWeight({d})) == falling, "falling factorial d=" + std::to_string(d));
    }
    const std::vector<std::vector<int>> shapes = {{1}, {1, 1}, {3}, {2, 1}, {3, 3}, {4, 2, 1}, {2, 2, 2}, {5, 0}};
    for (const auto& r : shapes) {
        out.require(psi_Z(HighestWeight(r)) == test::product_coefficients(r), "double product");
    }
    out.detail << "symbolic coefficients";
}

void continuity(Outcome& out) {
    std::mt19937_64 rng(31337);
    int count = 0;
    for (int t = 0; t < 50; ++t, ++count) {
        const int n = t < 40 ? 1 : 2;
        MeasureContext ctx;
        ctx.field = FieldData::unitary(-4, 5, 5);
        ctx.n = n;
        ctx.trace_bound = n == 1 ? 30 : 4;
        ctx.precision = 5;
        const FieldData& f = ctx.field;
        LCFunction H = symmetrize(test::random_table(f, n, 1, 5, rng));
        // H' = indicator of the unit orbit of (1, Id) plus p times a random invariant table
        LCFunction seed(f, n, 1, RingSpec::padic(5, 5));
        seed.set(coset_key(GnPoint{cm_one(f, 5), {PMatrix::identity(n, 5, 5)}}, f, 1),
                 Coeff(PadicElt::from_integer(1, 5, 5)));
        LCFunction orbit(f, n, 1, RingSpec::padic(5, 5));
        for (const auto& e : f.unit_group) {
            for (const auto& [key, v] : seed.entries()) {
                GnPoint moved = act_by_unit(coset_point(key, f, n, 5), e, f, 1);
                orbit.set(coset_key(moved, f, 1), v);
            }
        }
        LCFunction Hp = orbit + symmetrize(test::random_table(f, n, 1, 5, rng)).scaled(Coeff(PadicElt::from_integer(5, 5, 5)));
        LCFunction H2 = H + Hp.scaled(Coeff(PadicElt::from_integer(25, 5, 5)));
        QExpansion a = integrate(ContinuousFunction(H), ctx);
        QExpansion b = integrate(ContinuousFunction(H2), ctx);
        const std::string tag = " (pair " + std::to_string(count) + ")";
        out.require(congruent_mod(a, b, 2).pass, "not congruent mod p^2" + tag);
        out.require(!congruent_mod(a, b, 3).pass, "congruent mod p^3" + tag);
    }
    out.detail << count << " pairs over Z[i], p=5";
}

void enumeration(Outcome& out) {
    FieldData f = FieldData::unitary(-4, 5);
    auto tuples = [](const std::vector<HermitianMatrix>& betas) {
        std::set<std::array<long, 4>> s;
        for (const auto& b : betas) {
            s.insert({b(0, 0).a.get_num().get_si(), b(1, 1).a.get_num().get_si(), b(0, 1).a.get_num().get_si(),
                      b(0, 1).b.get_num().get_si()});
        }
        return s;
    };
    auto b2 = enumerate_positive(2, 2, CuspData::single_term(), f);
    auto b3 = enumerate_positive(2, 3, CuspData::single_term(), f);
    out.require(b2.size() == 1 && b2[0] == HermitianMatrix::identity(2), "trace <= 2 is {Id}");
    out.require(b3.size() == 11, "trace <= 3 has 11 elements");
    out.require(tuples(b2) == test::box_scan_2x2(f.K, 2), "box scan B=2");
    out.require(tuples(b3) == test::box_scan_2x2(f.K, 3), "box scan B=3");
    out.detail << "sizes " << b2.size() << ", " << b3.size();
}

void automorphy_numerics(Outcome& out) {
    automorphy::SelftestReport r = automorphy::selftest(1000, 12345);
    out.require(r.cases == 1000, "case count");
    out.require(r.max() < 1e-9, "max residual " + std::to_string(r.max()));
    out.require(r.seconds < 5.0, "runtime " + std::to_string(r.seconds));
    out.detail << r.to_string() << " runtime=" << r.seconds << "s";
}

void rank_and_depletion(Outcome& out) {
    struct Case {
        FieldData field;
        Weight w;
    };
    const Case cases[] = {{FieldData::unitary(-4, 5, 4), Weight::scalar(2, 0)},
                          {FieldData::unitary(-3, 7, 4), Weight::scalar(3, 1)},
                          {FieldData::symplectic(5, 4), Weight::scalar(2, 0)}};
    for (const auto& c : cases) {
        ContinuousFunction F = weight_character_function(c.field, 2, c.w);
        QExpansion Q = eisenstein_qexp(c.w, F, CuspData::single_term(), 6, 4);
        const QuadraticField& K = c.field.K;
        for (const auto& [beta, v] : Q.coeffs) out.require(beta.det(K) > 0, "stored singular index");
        // singular [[a, b], [conj b, c]] with a c = N(b)
        for (long a = 1; a <= 4; ++a) {
            for (long u = -2; u <= 2; ++u) {
                const KElt b(u, K.degenerate() ? 0 : 1);
                const mpq_class nb = K.mul(b, K.conj(b)).a;
                if (nb == 0 || nb.get_num() % a != 0) continue;
                const long cc = mpz_class(nb.get_num() / a).get_si();
                HermitianMatrix s(KMatrix(2, {KElt(a), b, K.conj(b), KElt(cc)}), K);
                out.require(s.det(K) == 0, "constructed singular index");
                out.require(Q.coefficient(s).is_zero(), "coefficient at singular index");
                out.require(eisenstein_coefficient(c.w, F, CuspData::single_term(), s, 4).is_zero(),
                            "direct coefficient at singular index");
            }
        }
    }

    std::mt19937_64 rng(8);
    MeasureContext ctx = katz_context(5, 200, 6);
    std::vector<ContinuousFunction> integrands;
    for (int k = 2; k <= 6; ++k) integrands.push_back(x_power(ctx.field, k - 1));
    for (int t = 0; t < 5; ++t) integrands.emplace_back(symmetrize(test::random_table(ctx.field, 1, 2, 6, rng)));
    int zeros = 0;
    for (const auto& H : integrands) {
        QExpansion Q = integrate(H, ctx);
        for (long m = 1; 5 * m <= 200; ++m) {
            out.require(Q.coefficient(HermitianMatrix::scalar(5 * m)).is_zero(), "c(5m) != 0");
            ++zeros;
        }
    }
    out.detail << "singular indices over three fields; " << zeros << " depleted coefficients";
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
        {"Kummer congruence", kummer},
        {"classical divisor sums", classical},
        {"bijection and symmetry correspondence", bijection},
        {"weight-shift identity", weight_shift},
        {"theta-moment identity", theta_moment},
        {"psi_Z values", psi_values},
        {"congruence continuity", continuity},
        {"enumeration", enumeration},
        {"automorphy numerics", automorphy_numerics},
        {"rank deficiency and p-depletion", rank_and_depletion},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome out;
        auto t0 = Clock::now();
        try {
            run(out);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double s = seconds_since(t0);
        if (!out.pass) ++failures;
        std::printf("[%2d] %s %s (%.2fs): %s\n", index, out.pass ? "PASS" : "FAIL", name, s, out.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
