#include "eism/field.hpp"

#include <algorithm>

#include "eism/error.hpp"

namespace eism {

std::string KElt::to_string() const {
    if (b == 0) return a.get_str();
    return a.get_str() + (b < 0 ? " - " : " + ") + mpq_class(abs(b)).get_str() + "*w";
}

namespace {

bool squarefree(long m) {
    m = m < 0 ? -m : m;
    for (long q = 2; q * q <= m; ++q) {
        if (m % (q * q) == 0) return false;
    }
    return true;
}

bool fundamental_negative_discriminant(long d) {
    if (d >= 0) return false;
    long r = ((d % 4) + 4) % 4;
    if (r == 1) return squarefree(d);
    if (r == 0) {
        long m = d / 4;
        long rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

}  // namespace

QuadraticField::QuadraticField(long disc) : disc_(disc), degenerate_(false) {
    if (!fundamental_negative_discriminant(disc)) {
        fail(ErrorKind::InvalidField,
             std::to_string(disc) + " is not the discriminant of an imaginary quadratic field");
    }
    if (disc % 4 == 0) {
        t_ = 0;
        nrm_ = -disc / 4;
    } else {
        t_ = 1;
        nrm_ = (1 - disc) / 4;
    }
}

QuadraticField QuadraticField::rationals() { return QuadraticField(); }

KElt QuadraticField::mul(const KElt& x, const KElt& y) const {
    mpq_class bb = x.b * y.b;
    return {x.a * y.a - nrm_ * bb, x.a * y.b + x.b * y.a + t_ * bb};
}

KElt QuadraticField::conj(const KElt& x) const {
    if (degenerate_) return x;
    return {x.a + t_ * x.b, -x.b};
}

mpq_class QuadraticField::norm(const KElt& x) const {
    if (degenerate_) return x.a;
    return x.a * x.a + t_ * x.a * x.b + nrm_ * x.b * x.b;
}

mpq_class QuadraticField::trace(const KElt& x) const {
    if (degenerate_) return x.a;
    return 2 * x.a + t_ * x.b;
}

KElt QuadraticField::inv(const KElt& x) const {
    if (x.is_zero()) fail(ErrorKind::ZeroDenominator, "inverting zero in K");
    if (degenerate_) return {1 / x.a, 0};
    mpq_class n = norm(x);
    KElt c = conj(x);
    return {c.a / n, c.b / n};
}

KElt QuadraticField::pow(const KElt& x, long e) const {
    if (e < 0) return pow(inv(x), -e);
    KElt result(1);
    KElt base = x;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

bool CMElt::is_unit() const {
    for (const auto& v : sigma) {
        if (!v.is_unit()) return false;
    }
    for (const auto& v : sigma_bar) {
        if (!v.is_unit()) return false;
    }
    return true;
}

int CMElt::precision() const {
    int prec = kInfiniteValuation;
    for (const auto& v : sigma) prec = std::min(prec, v.precision());
    for (const auto& v : sigma_bar) prec = std::min(prec, v.precision());
    return prec;
}

CMElt operator*(const CMElt& x, const CMElt& y) {
    if (x.places() != y.places()) fail(ErrorKind::ShapeMismatch, "CM elements over different place sets");
    CMElt out = x;
    for (std::size_t i = 0; i < x.places(); ++i) {
        out.sigma[i] *= y.sigma[i];
        out.sigma_bar[i] *= y.sigma_bar[i];
    }
    return out;
}

CMElt inverse(const CMElt& x) {
    CMElt out = x;
    for (std::size_t i = 0; i < x.places(); ++i) {
        out.sigma[i] = x.sigma[i].inverse();
        out.sigma_bar[i] = x.sigma_bar[i].inverse();
    }
    return out;
}

int kronecker(long d, unsigned long p) {
    if (p == 2) {
        if (d % 2 == 0) return 0;
        long r = ((d % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    mpz_class dd(d);
    return mpz_kronecker_ui(dd.get_mpz_t(), p);
}

namespace {

mpz_class hensel_root(long t, long nrm, unsigned long p, int precision) {
    mpz_class r0 = -1;
    for (unsigned long r = 0; r < p; ++r) {
        mpz_class v = mpz_class(r) * r - t * mpz_class(r) + nrm;
        if (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
            r0 = r;
            break;
        }
    }
    if (r0 < 0) fail(ErrorKind::InvalidField, "no root of the defining polynomial modulo p");
    const mpz_class& mod = prime_power(p, precision);
    mpz_class r = r0;
    for (int it = 0; it < 2 * precision + 2; ++it) {
        mpz_class f = r * r - t * r + nrm;
        f %= mod;
        if (f == 0) break;
        mpz_class df = 2 * r - t;
        mpz_class dinv;
        if (mpz_invert(dinv.get_mpz_t(), df.get_mpz_t(), mod.get_mpz_t()) == 0) {
            fail(ErrorKind::InvalidField, "p divides the discriminant of the defining polynomial");
        }
        r = r - f * dinv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    }
    return r;
}

}  // namespace

FieldData FieldData::unitary(long k_disc, unsigned long p, int precision) {
    if (!is_prime(p)) fail(ErrorKind::InvalidField, std::to_string(p) + " is not prime");
    if (precision < 1) fail(ErrorKind::InvalidArgument, "precision must be at least 1");
    FieldData f;
    f.mode = Mode::unitary;
    f.p = p;
    f.precision = precision;
    f.k_disc = k_disc;
    f.K = QuadraticField(k_disc);
    if (kronecker(k_disc, p) != 1) {
        fail(ErrorKind::InvalidField, "p = " + std::to_string(p) + " does not split in K = Q(sqrt(" +
                                          std::to_string(k_disc) + "))");
    }
    f.sigma_set = {"sigma"};
    f.split_roots = {hensel_root(f.K.trace_w(), f.K.norm_w(), p, precision)};
    KElt w(0, 1);
    if (k_disc == -4 || k_disc == -3) {
        f.unit_generators = {w};
        KElt u(1);
        do {
            f.unit_group.push_back(u);
            u = f.K.mul(u, w);
        } while (!(u == KElt(1)));
    } else {
        f.unit_generators = {KElt(-1)};
        f.unit_group = {KElt(1), KElt(-1)};
    }
    return f;
}

FieldData FieldData::symplectic(unsigned long p, int precision) {
    if (!is_prime(p)) fail(ErrorKind::InvalidField, std::to_string(p) + " is not prime");
    if (precision < 1) fail(ErrorKind::InvalidArgument, "precision must be at least 1");
    FieldData f;
    f.mode = Mode::symplectic;
    f.p = p;
    f.precision = precision;
    f.k_disc = 1;
    f.K = QuadraticField::rationals();
    f.sigma_set = {"sigma"};
    f.split_roots = {0};
    f.unit_generators = {KElt(-1)};
    f.unit_group = {KElt(1), KElt(-1)};
    return f;
}

std::string FieldData::field_label() const {
    if (mode == Mode::symplectic) return "Q";
    if (k_disc == -4) return "Qi";
    if (k_disc == -3) return "Qw3";
    if (k_disc == -7) return "Qsqrt-7";
    return "Q(sqrt(" + std::to_string(k_disc) + "))";
}

PadicElt embed_sigma(const KElt& a, const FieldData& field, int N) {
    if (N > field.precision) {
        fail(ErrorKind::PrecisionUnavailable, "embedding requested at precision " + std::to_string(N) +
                                                  " beyond field precision " +
                                                  std::to_string(field.precision));
    }
    if (field.mode == Mode::symplectic) {
        if (a.b != 0) fail(ErrorKind::InvalidArgument, "element outside E in symplectic mode");
        return PadicElt::from_rational(a.a, field.p, N);
    }
    PadicElt out = PadicElt::from_rational(a.a, field.p, N);
    if (a.b != 0) {
        out += PadicElt::from_rational(a.b, field.p, N) * PadicElt::from_integer(field.split_roots[0], field.p, N);
    }
    return out;
}

CMElt cm_split_embed(const KElt& a, const FieldData& field, int N) {
    CMElt out;
    out.sigma.push_back(embed_sigma(a, field, N));
    out.sigma_bar.push_back(embed_sigma(field.K.conj(a), field, N));
    return out;
}

CMElt cm_one(const FieldData& field, int N) {
    PadicElt one = PadicElt::from_integer(1, field.p, N);
    return cm_from_e(one, field.places());
}

CMElt cm_from_e(const PadicElt& v, std::size_t places) {
    return {std::vector<PadicElt>(places, v), std::vector<PadicElt>(places, v)};
}

std::vector<PadicElt> norm_relative(const CMElt& x, const FieldData& field) {
    std::vector<PadicElt> out;
    for (std::size_t i = 0; i < x.places(); ++i) {
        if (field.mode == Mode::symplectic) {
            out.push_back(x.sigma[i]);
        } else {
            out.push_back(x.sigma[i] * x.sigma_bar[i]);
        }
    }
    return out;
}

PadicElt norm_weight(const CMElt& b, const Weight& w, const FieldData& field) {
    if (w.nu.size() != b.places()) fail(ErrorKind::ShapeMismatch, "weight has the wrong number of places");
    std::vector<PadicElt> bases;
    std::vector<long> exps;
    for (std::size_t i = 0; i < b.places(); ++i) {
        if (field.mode == Mode::symplectic) {
            bases.push_back(b.sigma[i]);
            exps.push_back(w.k);
        } else {
            bases.push_back(b.sigma[i]);
            exps.push_back(static_cast<long>(w.k) + w.nu[i]);
            bases.push_back(b.sigma_bar[i]);
            exps.push_back(-static_cast<long>(w.nu[i]));
        }
    }
    return monomial(bases, exps);
}

KElt norm_relative_exact(const KElt& b, const FieldData& field) {
    return KElt(field.K.norm(b));
}

KElt norm_weight_exact(const KElt& b, const Weight& w, const FieldData& field) {
    if (w.nu.size() != 1) fail(ErrorKind::ShapeMismatch, "weight has the wrong number of places");
    if (field.mode == Mode::symplectic) return field.K.pow(b, w.k);
    const long e1 = static_cast<long>(w.k) + 2L * w.nu[0];
    const long e2 = -static_cast<long>(w.nu[0]);
    if (b.is_zero()) {
        if (e1 < 0 || e2 < 0) fail(ErrorKind::NegativeValuationResult, "zero raised to a negative power");
        return (e1 == 0 && e2 == 0) ? KElt(1) : KElt(0);
    }
    KElt nb(field.K.norm(b));
    return field.K.mul(field.K.pow(b, e1), field.K.pow(nb, e2));
}

}  // namespace eism
