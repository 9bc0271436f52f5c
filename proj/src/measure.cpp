#include "eism/measure.hpp"

#include <algorithm>

#include "eism/error.hpp"

namespace eism {

namespace {

void check_context(const ContinuousFunction& H, const MeasureContext& ctx) {
    if (H.n() != ctx.n) fail(ErrorKind::ShapeMismatch, "function size differs from the context");
    if (H.field().p != ctx.field.p || H.field().mode != ctx.field.mode || H.field().k_disc != ctx.field.k_disc) {
        fail(ErrorKind::InvalidField, "function and context use different fields");
    }
}

SampleOptions sampling_for(const MeasureContext& ctx) {
    SampleOptions s = ctx.sampling;
    s.skip_minus_one = s.skip_minus_one || ctx.cusp.unit_orbit_representatives;
    return s;
}

}  // namespace

QExpansion integrate(const ContinuousFunction& H, const MeasureContext& ctx) {
    check_context(H, ctx);
    SymmetryReport rep = check_unit_invariance(H, sampling_for(ctx));
    if (!rep) fail(ErrorKind::EquivarianceViolation, "integrand is not unit invariant: " + rep.witness);
    QExpansionOptions opts;
    opts.sampling = sampling_for(ctx);
    return eisenstein_qexp(Weight::scalar(ctx.n, 0, ctx.field.places()), h_to_f(H), ctx.cusp, ctx.trace_bound,
                           ctx.precision, opts);
}

ContinuousFunction polynomial_multiplier(const Polynomial& P, const FieldData& field, int n) {
    if (P.n() != n) fail(ErrorKind::ShapeMismatch, "polynomial size differs from n");
    return ContinuousFunction(field, n, RingSpec::padic(field.p, field.precision), YSupport::invertible,
                              [P, field](const GnPoint& pt, int j) {
                                  std::vector<PadicElt> nx = norm_relative(pt.x, field);
                                  PadicElt v = PadicElt::from_integer(1, field.p, pt.precision());
                                  for (std::size_t i = 0; i < pt.y.size(); ++i) {
                                      v *= P.evaluate(pt.y[i].inverse().scaled(nx[i]));
                                  }
                                  return Coeff(v.reduced(j));
                              });
}

QExpansion moment_with_multiplier(const ContinuousFunction& H, const Polynomial& F, const MeasureContext& ctx) {
    check_context(H, ctx);
    return integrate(H * polynomial_multiplier(F, ctx.field, ctx.n), ctx);
}

QExpansion moment_zeta(const ContinuousFunction& H, const Polynomial& zeta, const MeasureContext& ctx) {
    return moment_with_multiplier(H, f_zeta(zeta), ctx);
}

QExpansion moment_detd(const ContinuousFunction& H, int d, const MeasureContext& ctx) {
    if (d < 0) fail(ErrorKind::InvalidArgument, "d must be nonnegative");
    check_context(H, ctx);
    const int n = ctx.n;
    if (d == 0) return integrate(H, ctx);

    // det(N(x)^{-1} y)^{-d} = N(x)^{nd} det(y)^{-d}
    MonomialSpec twist;
    twist.nx_exp = static_cast<long>(n) * d;
    twist.ydet_exp = -d;
    QExpansion direct = integrate(H * monomial_function(ctx.field, n, twist), ctx);

    MonomialSpec shift;
    shift.nx_exp = static_cast<long>(ctx.field.mode == Mode::unitary ? 1 - n : 2 - n) * d;
    shift.ydet_exp = -d;
    ContinuousFunction Fp = h_to_f(H) * monomial_function(ctx.field, n, shift);
    QExpansionOptions opts;
    opts.sampling = sampling_for(ctx);
    QExpansion shifted = eisenstein_qexp(Weight::scalar(n + 2 * d, -d, ctx.field.places()), Fp, ctx.cusp,
                                         ctx.trace_bound, ctx.precision, opts);
    if (!(direct == shifted)) {
        CongruenceReport rep = congruent_mod(direct, shifted, ctx.precision);
        fail(ErrorKind::VerificationFailure, "det^d moment paths disagree: " + rep.witness);
    }
    return direct;
}

std::string KummerReport::to_string() const {
    std::string s = pass ? "PASS" : "FAIL";
    s += ": p=" + std::to_string(p) + " k=" + std::to_string(k) + " k'=" + std::to_string(kprime) + " mod p^" +
         std::to_string(mod_exp) + " bound=" + std::to_string(bound) + " compared=" + std::to_string(compared);
    if (!witness.empty()) s += " witness: " + witness;
    return s;
}

KummerReport kummer_check(unsigned long p, int k, int kprime, int mod_exp, long bound) {
    if (!is_prime(p)) fail(ErrorKind::InvalidField, std::to_string(p) + " is not prime");
    if (k < 1 || kprime < 1) fail(ErrorKind::InvalidArgument, "weights must be positive");
    if (mod_exp < 1) fail(ErrorKind::InvalidArgument, "modulus exponent must be at least 1");
    // k = k' mod (p - 1) p^{m}, m = mod_exp - 1
    mpz_class period = prime_power(p, mod_exp - 1) * static_cast<unsigned long>(p - 1);
    if (p == 2) period = prime_power(2, std::max(mod_exp, 2));
    mpz_class diff = mpz_class(k) - kprime;
    if (diff % period != 0) {
        fail(ErrorKind::HypothesisViolation, "k = " + std::to_string(k) + " and k' = " + std::to_string(kprime) +
                                                 " are not congruent modulo " + period.get_str());
    }
    MeasureContext ctx;
    ctx.field = FieldData::symplectic(p, std::max(kDefaultPrecision, mod_exp));
    ctx.n = 1;
    ctx.cusp = CuspData::divisor_rule(p);
    ctx.trace_bound = bound;
    ctx.precision = mod_exp;

    auto power_fn = [&](int e) {
        MonomialSpec spec;
        spec.x_exps = {e - 1};
        return monomial_function(ctx.field, 1, spec);
    };
    KummerReport rep;
    rep.p = p;
    rep.k = k;
    rep.kprime = kprime;
    rep.mod_exp = mod_exp;
    rep.bound = bound;
    rep.first = integrate(power_fn(k), ctx);
    rep.second = integrate(power_fn(kprime), ctx);
    const mpz_class pz(p);
    CongruenceReport c = congruent_mod(rep.first, rep.second, mod_exp, [&](const HermitianMatrix& beta) {
        return beta.trace() % pz != 0;
    });
    rep.pass = c.pass;
    rep.compared = c.compared;
    rep.witness = c.witness;
    return rep;
}

}  // namespace eism
