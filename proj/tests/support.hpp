#pragma once

// Independent oracles and random generators shared by the test suites. The
// oracles use plain integer arithmetic and never call into the library's
// formulas.

#include <gmpxx.h>

#include <array>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "eism/function_space.hpp"
#include "eism/hermitian.hpp"

namespace eism::test {

// Extended Euclid: a^{-1} mod m, or 0 when gcd(a, m) > 1.
inline mpz_class euclid_inverse(mpz_class a, const mpz_class& m) {
    mpz_class r0 = m, r1 = ((a % m) + m) % m;
    mpz_class s0 = 0, s1 = 1;
    while (r1 != 0) {
        mpz_class q = r0 / r1;
        mpz_class t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) return 0;
    return ((s0 % m) + m) % m;
}

inline mpz_class ipow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// sum of d^e over d | beta with p not dividing d (and not dividing beta / d
// when `cofactor` is set).
inline mpz_class depleted_divisor_sum(long beta, unsigned long p, unsigned long e, bool cofactor = true) {
    mpz_class s = 0;
    const long pl = static_cast<long>(p);
    for (long d = 1; d <= beta; ++d) {
        if (beta % d != 0 || d % pl == 0) continue;
        if (cofactor && (beta / d) % pl == 0) continue;
        s += ipow(mpz_class(d), e);
    }
    return s;
}

// Residue of q modulo p^N for q with p-unit denominator.
inline mpz_class residue_mod(const mpq_class& q, unsigned long p, int N) {
    mpz_class m = ipow(mpz_class(p), static_cast<unsigned long>(N));
    mpz_class num = ((q.get_num() % m) + m) % m;
    return (num * euclid_inverse(q.get_den(), m)) % m;
}

// Brute force over boxes: 2x2 Hermitian [[a, u + v w], [conj, c]] over O_K
// with a, c in [1, B], |u|, |v| <= B, a + c <= B and ac - N(u + v w) > 0.
// For K = Q (degenerate) v is forced to 0. Returned as (a, c, u, v).
inline std::set<std::array<long, 4>> box_scan_2x2(const QuadraticField& K, long B) {
    std::set<std::array<long, 4>> out;
    const long vmax = K.degenerate() ? 0 : B;
    for (long a = 1; a <= B; ++a) {
        for (long c = 1; a + c <= B; ++c) {
            for (long u = -B; u <= B; ++u) {
                for (long v = -vmax; v <= vmax; ++v) {
                    const long norm = u * u + K.trace_w() * u * v + K.norm_w() * v * v;
                    if (a * c - norm > 0) out.insert({a, c, u, v});
                }
            }
        }
    }
    return out;
}

// Hensel lift of the root r0 of x^2 - t x + nrm modulo p^N, by plain Newton
// iteration on integers.
inline mpz_class hensel_root(long t, long nrm, long r0, unsigned long p, int N) {
    const mpz_class m = ipow(mpz_class(p), static_cast<unsigned long>(N));
    mpz_class r = r0;
    for (int i = 0; i < 2 * N + 2; ++i) {
        mpz_class f = r * r - t * r + nrm;
        mpz_class df = 2 * r - t;
        r = ((r - f * euclid_inverse(df, m)) % m + m) % m;
    }
    return r;
}

// prod_{h=1}^{n} prod_{j=1}^{r_h} (s - j + h).
inline mpq_class psi_double_product(const std::vector<int>& r, const mpq_class& s) {
    mpq_class v = 1;
    for (std::size_t h = 1; h <= r.size(); ++h) {
        for (int j = 1; j <= r[h - 1]; ++j) v *= s - j + static_cast<long>(h);
    }
    return v;
}

inline CosetKey concat(const CosetKey& x, const CosetKey& y) {
    CosetKey k = x;
    k.insert(k.end(), y.begin(), y.end());
    return k;
}

// Every (x, y) cell of the given level.
inline std::vector<CosetKey> all_cells(const FieldData& field, int n, int level, YSupport support) {
    std::vector<CosetKey> xs, ys, out;
    for_each_x_coset(field, level, [&](const CosetKey& k) { xs.push_back(k); });
    for_each_y_coset(field, n, level, support, [&](const CosetKey& k) { ys.push_back(k); });
    out.reserve(xs.size() * ys.size());
    for (const auto& x : xs) {
        for (const auto& y : ys) out.push_back(concat(x, y));
    }
    return out;
}

// Random p-adic table on invertible y with the given density of nonzero
// cells; values are integers in [0, p^precision).
inline LCFunction random_table(const FieldData& field, int n, int level, int precision, std::mt19937_64& rng,
                               double density = 1.0) {
    LCFunction F(field, n, level, RingSpec::padic(field.p, precision));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    gmp_randclass gen(gmp_randinit_default);
    gen.seed(static_cast<unsigned long>(rng()));
    const mpz_class m = ipow(mpz_class(field.p), static_cast<unsigned long>(precision));
    for (const auto& key : all_cells(field, n, level, YSupport::invertible)) {
        if (coin(rng) >= density) continue;
        F.set(key, Coeff(PadicElt::from_integer(gen.get_z_range(m), field.p, precision)));
    }
    return F;
}

// Values of F mod p^j at every invertible cell of the given level, with no
// truncation of the value precision below j.
inline LCFunction table_at(const ContinuousFunction& F, int level, int j) {
    LCFunction T(F.field(), F.n(), level, RingSpec::padic(F.field().p, j));
    const int prec = std::max(j, level);
    for (const auto& key : all_cells(F.field(), F.n(), level, YSupport::invertible)) {
        T.set(key, F.evaluate(coset_point(key, F.field(), F.n(), prec), j));
    }
    return T;
}

// Entrywise equality of two tables over every cell of their common level.
inline bool same_table(const LCFunction& a, const LCFunction& b) {
    if (a.level() != b.level()) return false;
    for (const auto& [key, v] : a.entries()) {
        if (!(b.at(key) == v)) return false;
    }
    for (const auto& [key, v] : b.entries()) {
        if (!(a.at(key) == v)) return false;
    }
    return true;
}

// F(e x, N(e)^{-1} y) = N_{n,0}(e) F(x, y) at every coset representative.
inline bool equivariant_on_cells(const ContinuousFunction& F, int level) {
    const FieldData& f = F.field();
    const int j = f.precision;
    for (const auto& key : all_cells(f, F.n(), level, YSupport::invertible)) {
        GnPoint pt = coset_point(key, f, F.n(), j);
        Coeff base = F.evaluate(pt, j);
        for (const auto& e : f.unit_group) {
            PadicElt ne = norm_weight(cm_split_embed(e, f, j), Weight::scalar(F.n(), 0, f.places()), f);
            if (!(F.evaluate(act_by_unit(pt, e, f, -1), j) == Coeff(ne * base.padic()))) return false;
        }
    }
    return true;
}

// H(e x, N(e) y) = H(x, y) at every coset representative.
inline bool invariant_on_cells(const ContinuousFunction& H, int level) {
    const FieldData& f = H.field();
    const int j = f.precision;
    for (const auto& key : all_cells(f, H.n(), level, YSupport::invertible)) {
        GnPoint pt = coset_point(key, f, H.n(), j);
        Coeff base = H.evaluate(pt, j);
        for (const auto& e : f.unit_group) {
            if (!(H.evaluate(act_by_unit(pt, e, f, 1), j) == base)) return false;
        }
    }
    return true;
}

// Coefficients of prod_h prod_{j <= r_h} (s - j + h), expanded one linear
// factor at a time.
inline std::vector<mpz_class> product_coefficients(const std::vector<int>& r) {
    std::vector<mpz_class> c{1};
    for (std::size_t h = 1; h <= r.size(); ++h) {
        for (int j = 1; j <= r[h - 1]; ++j) {
            const long shift = static_cast<long>(h) - j;
            std::vector<mpz_class> next(c.size() + 1, 0);
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i + 1] += c[i];
                next[i] += c[i] * shift;
            }
            c = std::move(next);
        }
    }
    return c;
}

}  // namespace eism::test
