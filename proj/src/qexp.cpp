#include "eism/qexp.hpp"

#include <cmath>
#include <set>

#include "eism/error.hpp"

namespace eism {

Coeff QExpansion::coefficient(const HermitianMatrix& beta) const {
    auto it = coeffs.find(beta);
    if (it == coeffs.end()) return ring.zero();
    return it->second;
}

namespace {

RingSpec output_ring(const RingSpec& ring, int j) {
    RingSpec out = ring;
    if (out.kind == RingKind::padic) out.precision = j;
    return out;
}

Coeff embed_exact(const KElt& c, const FieldData& field, const RingSpec& ring, int j) {
    if (ring.kind == RingKind::padic) return Coeff(embed_sigma(c, field, j));
    if (!c.is_rational()) fail(ErrorKind::RingMismatch, "factor " + c.to_string() + " is not rational");
    return ring.from_rational(c.a);
}

}  // namespace

Coeff eisenstein_coefficient(const Weight& w, const ContinuousFunction& F, const CuspData& cusp,
                             const HermitianMatrix& beta, int j) {
    const FieldData& field = F.field();
    const QuadraticField& K = field.K;
    const int n = F.n();
    if (beta.size() != n) fail(ErrorKind::ShapeMismatch, "beta has the wrong size");
    const RingSpec ring = output_ring(F.ring(), j);
    Coeff acc = ring.zero();
    const mpz_class d = beta.det(K);
    if (d == 0) return acc;
    const int N = field.precision;
    for (const CuspTerm& term : cusp.rule(beta)) {
        if (term.a.is_zero()) fail(ErrorKind::InvalidArgument, "cusp rule produced a = 0");
        const mpq_class na = K.norm(term.a);
        if (valuation_of(na.get_num(), field.p) != 0 || valuation_of(na.get_den(), field.p) != 0) {
            fail(ErrorKind::InvalidArgument, "cusp rule produced a non-unit a = " + term.a.to_string());
        }
        GnPoint pt;
        pt.x = cm_split_embed(term.a, field, N);
        std::vector<PadicElt> entries;
        const mpq_class inv_na = 1 / na;
        for (const KElt& e : beta.matrix().entries()) entries.push_back(embed_sigma(K.scale(e, inv_na), field, N));
        pt.y.emplace_back(n, std::move(entries));
        Coeff v = F.evaluate(pt, j);
        if (v.is_zero()) continue;
        KElt b = K.scale(K.inv(term.a), mpq_class(d));
        KElt c = norm_weight_exact(b, w, field);
        for (int i = 0; i < n; ++i) c = K.scale(c, mpq_class(1) / mpq_class(d));
        acc += ring.from_rational(term.multiplicity) * v * embed_exact(c, field, ring, j);
    }
    return acc.reduced(j);
}

QExpansion eisenstein_qexp(const Weight& w, const ContinuousFunction& F, const CuspData& cusp, long trace_bound,
                           int j, const QExpansionOptions& opts) {
    const FieldData& field = F.field();
    const int n = F.n();
    if (w.k < n) {
        fail(ErrorKind::HypothesisViolation,
             "weight k = " + std::to_string(w.k) + " is below n = " + std::to_string(n));
    }
    if (w.nu.size() != field.places()) fail(ErrorKind::InvalidArgument, "one nu per place is needed");
    if (j < 1) fail(ErrorKind::InvalidArgument, "precision must be at least 1");
    if (j > field.precision) {
        fail(ErrorKind::PrecisionUnavailable, "precision " + std::to_string(j) + " exceeds the field precision");
    }
    if (F.ring().kind == RingKind::padic && j > F.ring().precision) {
        fail(ErrorKind::PrecisionUnavailable, "F is known only modulo p^" + std::to_string(F.ring().precision));
    }
    if (opts.validate) {
        SampleOptions s = opts.sampling;
        s.skip_minus_one = s.skip_minus_one || cusp.unit_orbit_representatives;
        SymmetryReport rep = check_equivariance(F, w, s);
        if (!rep) fail(ErrorKind::EquivarianceViolation, rep.witness);
    }
    QExpansion Q;
    Q.cusp = cusp.label;
    Q.n = n;
    Q.field = field;
    Q.trace_bound = trace_bound;
    Q.ring = output_ring(F.ring(), j);
    for (const auto& beta : enumerate_positive(n, trace_bound, cusp, field)) {
        Q.coeffs.emplace(beta, eisenstein_coefficient(w, F, cusp, beta, j));
    }
    return Q;
}

QExpansion cusp_transform(const QExpansion& Q, const KMatrix& h, const KElt& lambda,
                          const TransformPrefactor& prefactor) {
    const QuadraticField& K = Q.field.K;
    if (h.size() != Q.n) fail(ErrorKind::ShapeMismatch, "h has the wrong size");
    if (!lambda.is_rational() || lambda.a <= 0) fail(ErrorKind::InvalidArgument, "lambda must be a positive element of E");
    if (det(h, K).is_zero()) fail(ErrorKind::SingularMatrix, "h is not invertible");
    mpq_class r = 1;
    mpq_class lam = lambda.a;
    mpq_class ndet = K.norm(det(h, K));
    for (long i = 0; i < std::labs(prefactor.lambda_power); ++i) r *= prefactor.lambda_power > 0 ? lam : 1 / lam;
    for (long i = 0; i < std::labs(prefactor.deth_power); ++i) r *= prefactor.deth_power > 0 ? ndet : 1 / ndet;
    Coeff pre = Q.ring.from_rational(r);
    if (prefactor.chi_value) pre = pre * *prefactor.chi_value;

    QExpansion out = Q;
    out.coeffs.clear();
    const KMatrix hs = conj_transpose(h, K);
    for (const auto& [old_beta, value] : Q.coeffs) {
        KMatrix nb = scale(mul(mul(hs, old_beta.matrix(), K), h, K), lambda, K);
        HermitianMatrix beta(nb, K);
        out.coeffs.insert_or_assign(beta, pre * value);
    }
    return out;
}

namespace {

void check_shape(const QExpansion& a, const QExpansion& b) {
    if (a.cusp != b.cusp || a.n != b.n || a.trace_bound != b.trace_bound || a.field.p != b.field.p) {
        fail(ErrorKind::ShapeMismatch, "expansions differ in cusp, size, prime or bound");
    }
    if (a.ring.kind != b.ring.kind) fail(ErrorKind::RingMismatch, "expansions use different rings");
}

std::vector<HermitianMatrix> key_union(const QExpansion& a, const QExpansion& b) {
    std::set<HermitianMatrix> keys;
    for (const auto& [beta, v] : a.coeffs) keys.insert(beta);
    for (const auto& [beta, v] : b.coeffs) keys.insert(beta);
    return {keys.begin(), keys.end()};
}

}  // namespace

CongruenceReport congruent_mod(const QExpansion& a, const QExpansion& b, int j, const BetaFilter& filter) {
    check_shape(a, b);
    CongruenceReport rep;
    for (const auto& beta : key_union(a, b)) {
        if (filter && !filter(beta)) continue;
        ++rep.compared;
        Coeff x = a.coefficient(beta);
        Coeff y = b.coefficient(beta);
        if (!congruent(x, y, j, a.field.p)) {
            rep.pass = false;
            rep.witness = "beta = " + beta.to_string() + ": " + x.to_string() + " vs " + y.to_string() +
                          " mod p^" + std::to_string(j);
            return rep;
        }
    }
    return rep;
}

bool operator==(const QExpansion& a, const QExpansion& b) {
    check_shape(a, b);
    for (const auto& beta : key_union(a, b)) {
        if (!(a.coefficient(beta) == b.coefficient(beta))) return false;
    }
    return true;
}

QExpansion operator+(const QExpansion& a, const QExpansion& b) {
    check_shape(a, b);
    QExpansion out = a;
    out.ring.precision = std::min(a.ring.precision, b.ring.precision);
    out.coeffs.clear();
    for (const auto& beta : key_union(a, b)) out.coeffs.emplace(beta, a.coefficient(beta) + b.coefficient(beta));
    return out;
}

QExpansion scaled(const QExpansion& Q, const Coeff& c) {
    QExpansion out = Q;
    for (auto& [beta, v] : out.coeffs) v = v * c;
    return out;
}

double RadicalConstant::value() const { return rational.get_d() * std::sqrt(static_cast<double>(radicand)); }

RadicalConstant cnk_constant(int n, const FieldData& field) {
    // E = Q: 2^{n(n-1)/2} |D_K|^{-n(n-1)/4}
    RadicalConstant c;
    const long disc = std::labs(field.k_disc);
    const long quarters = static_cast<long>(n) * (n - 1);
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(quarters / 2));
    c.rational = two;
    mpz_class dpow;
    mpz_ui_pow_ui(dpow.get_mpz_t(), static_cast<unsigned long>(disc), static_cast<unsigned long>(quarters / 4));
    c.rational /= dpow;
    if (quarters % 4 != 0) {
        // |D|^{-1/2} = sqrt(|D|) / |D|
        long root = std::lround(std::sqrt(static_cast<double>(disc)));
        if (root * root == disc) {
            c.rational /= root;
        } else {
            c.rational /= disc;
            c.radicand = disc;
        }
    }
    c.rational.canonicalize();
    return c;
}

void NormalizationConstant::set_euler_polynomial(const std::string& key, std::vector<long> coeffs) {
    if (coeffs.empty() || coeffs[0] != 1) {
        fail(ErrorKind::InvalidArgument, "Euler polynomial must have constant term 1");
    }
    euler_polynomials[key] = std::move(coeffs);
}

std::string NormalizationConstant::to_string() const {
    std::string s = rational_part.get_str();
    if (sqrt_radicand != 1) s += " * sqrt(" + std::to_string(sqrt_radicand) + ")";
    s += " * 2^" + std::to_string(two_power) + " * i^" + std::to_string(i_power) + " * pi^" +
         std::to_string(net_pi_power()) + " / " + gamma_product.get_str();
    for (const auto& t : lvalue_tokens) s += " * " + t;
    return s;
}

NormalizationConstant normalization_constant(int n, const FieldData& field, const mpz_class& b_norm, int k) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "n must be positive");
    if (k < n) fail(ErrorKind::HypothesisViolation, "k must be at least n");
    if (b_norm <= 0) fail(ErrorKind::InvalidArgument, "ideal norm must be positive");
    NormalizationConstant c;
    c.cnk = cnk_constant(n, field);
    mpz_class bpow;
    mpz_pow_ui(bpow.get_mpz_t(), b_norm.get_mpz_t(), static_cast<unsigned long>(n * n));
    c.rational_part = c.cnk.rational / bpow;
    c.rational_part.canonicalize();
    c.sqrt_radicand = c.cnk.radicand;
    const int places = static_cast<int>(field.places());
    c.two_power = places * ((1 - n) * n + n * k);
    c.i_power = -places * n * k;
    c.pi_power = places * n * k;
    c.gamma_pi_power = places * n * (n - 1) / 2;
    for (int t = 0; t < n; ++t) {
        c.gamma_args.push_back(k - t);
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k - t - 1));
        for (int pl = 0; pl < places; ++pl) c.gamma_product *= f;
    }
    for (int i = 0; i < n; ++i) {
        c.lvalue_tokens.push_back("L^p(" + std::to_string(k - i) + ", chi_E^-1 tau^" + std::to_string(i) + ")^-1");
    }
    return c;
}

}  // namespace eism
