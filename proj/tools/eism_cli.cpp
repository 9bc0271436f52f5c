#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "eism/automorphy.hpp"
#include "eism/error.hpp"
#include "eism/expression.hpp"
#include "eism/measure.hpp"
#include "eism/serialize.hpp"

using namespace eism;

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string K = "Q";
    int n = 1;
    unsigned long p = 0;
    int precision = 10;
    long bound = 10;
    std::string cusp = "identity";
    std::string output;
};

struct Result {
    Json json;
    std::vector<std::string> report;
    bool pass = true;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--K", cfg.K, "CM field: Q (symplectic), Qi, Qw3, Qsqrt-D, or a discriminant")
        ->capture_default_str();
    cmd->add_option("--n", cfg.n, "matrix size")->check(CLI::Range(1, 4))->capture_default_str();
    cmd->add_option("--p", cfg.p, "prime")->required();
    cmd->add_option("--precision", cfg.precision, "coefficients are computed mod p^precision")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--bound", cfg.bound, "trace bound of the expansion")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--cusp", cfg.cusp, "coefficient rule")
        ->check(CLI::IsMember({"identity", "divisor"}))
        ->capture_default_str();
    cmd->add_option("--output", cfg.output, "write the JSON result here instead of stdout");
}

long field_discriminant(const std::string& label) {
    static const std::regex sqrt_re(R"(^Qsqrt(-\d+)$)");
    static const std::regex int_re(R"(^-?\d+$)");
    if (label == "Qi") return -4;
    if (label == "Qw3") return -3;
    std::smatch m;
    if (std::regex_match(label, m, sqrt_re)) {
        long d = std::stol(m[1].str());
        return ((d % 4) + 4) % 4 == 1 ? d : 4 * d;
    }
    if (std::regex_match(label, int_re)) return std::stol(label);
    fail(ErrorKind::InvalidField, "unknown field '" + label + "'; use Q, Qi, Qw3, Qsqrt-D or a discriminant");
}

FieldData make_field(const RunConfig& cfg) {
    if (cfg.K == "Q") return FieldData::symplectic(cfg.p, cfg.precision);
    return FieldData::unitary(field_discriminant(cfg.K), cfg.p, cfg.precision);
}

CuspData make_cusp(const RunConfig& cfg) {
    if (cfg.cusp == "identity") return CuspData::single_term();
    if (cfg.n != 1) fail(ErrorKind::InvalidArgument, "--cusp divisor needs --n 1");
    return CuspData::divisor_rule(cfg.p);
}

MeasureContext make_context(const RunConfig& cfg) {
    MeasureContext ctx;
    ctx.field = make_field(cfg);
    ctx.n = cfg.n;
    ctx.cusp = make_cusp(cfg);
    ctx.trace_bound = cfg.bound;
    ctx.precision = cfg.precision;
    return ctx;
}

std::string summary(const QExpansion& Q) {
    std::size_t nonzero = 0;
    for (const auto& [beta, c] : Q.coeffs) nonzero += c.is_zero() ? 0 : 1;
    std::ostringstream s;
    s << "field=" << Q.field.field_label() << " n=" << Q.n << " p=" << Q.field.p << " trace_bound=" << Q.trace_bound
      << " terms=" << Q.size() << " nonzero=" << nonzero;
    return s.str();
}

struct QexpArgs {
    int k = 0;
    int nu = 0;
    std::string F = "const1";
};

QExpansion run_qexp_core(const RunConfig& cfg, const QexpArgs& a) {
    const FieldData field = make_field(cfg);
    const int k = a.k > 0 ? a.k : cfg.n;
    const Weight w = Weight::scalar(k, a.nu, field.places());
    ExpressionContext ectx{field, cfg.n, w, cfg.precision};
    ContinuousFunction F = parse_function(a.F, ectx);
    return eisenstein_qexp(w, F, make_cusp(cfg), cfg.bound, cfg.precision);
}

Result run_qexp(const RunConfig& cfg, const QexpArgs& a) {
    QExpansion Q = run_qexp_core(cfg, a);
    return {to_json(Q), {summary(Q)}, true};
}

struct IntegrateArgs {
    std::string H = "1";
    std::string compare;
    int mod_exp = 1;
};

Result run_integrate(const RunConfig& cfg, const IntegrateArgs& a) {
    MeasureContext ctx = make_context(cfg);
    ExpressionContext ectx{ctx.field, cfg.n, std::nullopt, cfg.precision};
    QExpansion Q = integrate(parse_function(a.H, ectx), ctx);
    Result r{to_json(Q), {summary(Q)}, true};
    if (!a.compare.empty()) {
        QExpansion Q2 = integrate(parse_function(a.compare, ectx), ctx);
        CongruenceReport c = congruent_mod(Q, Q2, a.mod_exp);
        r.pass = c.pass;
        r.report.push_back(std::string(c.pass ? "PASS" : "FAIL") + ": congruent mod p^" + std::to_string(a.mod_exp) +
                           " at " + std::to_string(c.compared) + " indices" +
                           (c.witness.empty() ? "" : "; witness " + c.witness));
        r.json = Json{{"first", to_json(Q)}, {"second", to_json(Q2)}};
    }
    return r;
}

struct MomentArgs {
    std::string H = "1";
    std::string zeta;
    int d = -1;
};

Result run_moment(const RunConfig& cfg, const MomentArgs& a) {
    MeasureContext ctx = make_context(cfg);
    ExpressionContext ectx{ctx.field, cfg.n, std::nullopt, cfg.precision};
    ContinuousFunction H = parse_function(a.H, ectx);
    if (a.d >= 0) {
        QExpansion Q = moment_detd(H, a.d, ctx);
        return {to_json(Q), {summary(Q), "PASS: det^" + std::to_string(a.d) + " moment agrees with the weight (n+2d, -d) expansion"}, true};
    }
    Polynomial zeta = Polynomial::parse(a.zeta, cfg.n);
    Polynomial F = f_zeta(zeta);
    QExpansion Q = moment_zeta(H, zeta, ctx);
    QExpansion expected = theta_apply(integrate(H, ctx), F);
    CongruenceReport c = congruent_mod(Q, expected, cfg.precision);
    Result r{to_json(Q), {summary(Q), "F_zeta = " + F.to_string()}, c.pass};
    r.report.push_back(std::string(c.pass ? "PASS" : "FAIL") + ": moment equals theta(zeta) applied to the integral at " +
                       std::to_string(c.compared) + " indices" + (c.witness.empty() ? "" : "; witness " + c.witness));
    return r;
}

struct KummerArgs {
    int k = 0;
    int kprime = 0;
    int mod_exp = 1;
};

Result run_kummer(const RunConfig& cfg, const KummerArgs& a) {
    KummerReport rep = kummer_check(cfg.p, a.k, a.kprime, a.mod_exp, cfg.bound);
    Json j{{"first", to_json(rep.first)}, {"second", to_json(rep.second)}};
    return {j, {rep.to_string()}, rep.pass};
}

struct TransformArgs {
    QexpArgs q;
    std::string h;
    std::string lambda = "1";
    std::string chi;
    long lambda_power = 0;
    long deth_power = 0;
};

KMatrix parse_k_matrix(const std::string& text, int n) {
    std::vector<KElt> entries;
    std::stringstream rows(text);
    std::string row;
    int nrows = 0;
    while (std::getline(rows, row, ';')) {
        std::stringstream cols(row);
        std::string cell;
        int ncols = 0;
        while (std::getline(cols, cell, ',')) {
            entries.push_back(parse_k_element(cell));
            ++ncols;
        }
        if (ncols != n) fail(ErrorKind::ShapeMismatch, "--h rows need " + std::to_string(n) + " entries");
        ++nrows;
    }
    if (nrows != n) fail(ErrorKind::ShapeMismatch, "--h needs " + std::to_string(n) + " rows separated by ';'");
    return KMatrix(n, std::move(entries));
}

Result run_transform(const RunConfig& cfg, const TransformArgs& a) {
    QExpansion Q = run_qexp_core(cfg, a.q);
    KMatrix h = a.h.empty() ? KMatrix::identity(cfg.n) : parse_k_matrix(a.h, cfg.n);
    TransformPrefactor pre;
    pre.lambda_power = a.lambda_power;
    pre.deth_power = a.deth_power;
    if (!a.chi.empty()) {
        mpq_class q(a.chi);
        q.canonicalize();
        pre.chi_value = Q.ring.from_rational(q);
    }
    QExpansion T = cusp_transform(Q, h, parse_k_element(a.lambda), pre);
    return {to_json(T), {summary(Q), "transformed: " + summary(T)}, true};
}

struct DecomposeArgs {
    std::string F;
    int level = 1;
};

bool same_value(const Coeff& a, const Coeff& b) {
    if (a.ring() == b.ring()) return a == b;
    if (a.ring() == RingKind::cyclotomic && b.ring() == RingKind::rational) {
        return a.cyclotomic() == Cyclotomic::from_rational(a.cyclotomic().order(), b.rational());
    }
    fail(ErrorKind::RingMismatch, "cannot compare " + ring_name(a.ring()) + " with " + ring_name(b.ring()));
}

Result run_decompose(const RunConfig& cfg, const DecomposeArgs& a) {
    const FieldData field = make_field(cfg);
    ExpressionContext ectx{field, cfg.n, std::nullopt, cfg.precision};
    ContinuousFunction F = parse_function(a.F, ectx);
    LCFunction T = F.table() ? *F.table() : F.truncate(a.level);
    std::vector<CharacterComponent> parts = character_decompose(T, a.level);
    LCFunction lifted = T.level() < a.level ? T.lifted_to(a.level) : T;

    Json comps = Json::array();
    std::size_t nonzero = 0;
    std::optional<LCFunction> sum;
    for (const auto& part : parts) {
        if (part.component.entries().empty()) continue;
        ++nonzero;
        comps.push_back(Json{{"chi", part.chi.to_string()},
                             {"order", part.chi.order},
                             {"exponents", part.chi.exponents},
                             {"table", to_json(part.component)}});
        sum = sum ? *sum + part.component : part.component;
    }
    bool pass = true;
    std::string witness;
    std::vector<CosetKey> keys;
    for (const auto& [key, v] : lifted.entries()) keys.push_back(key);
    if (sum) {
        for (const auto& [key, v] : sum->entries()) keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    for (const auto& key : keys) {
        const Coeff total = sum ? sum->at(key) : lifted.ring().zero();
        if (!same_value(total, lifted.at(key))) {
            pass = false;
            witness = total.to_string() + " vs " + lifted.at(key).to_string();
            break;
        }
    }
    Json j{{"schema", kJsonSchemaVersion}, {"level", a.level}, {"characters", parts.size()}, {"components", comps}};
    std::string line = std::string(pass ? "PASS" : "FAIL") + ": components sum back to the table";
    if (!witness.empty()) line += "; witness " + witness;
    return {j,
            {"characters=" + std::to_string(parts.size()) + " nonzero_components=" + std::to_string(nonzero), line},
            pass};
}

struct SelftestArgs {
    int cases = 1000;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
};

Result run_selftest(const SelftestArgs& a) {
    automorphy::SelftestReport rep = automorphy::selftest(a.cases, a.seed);
    const bool pass = rep.max() < a.tolerance;
    Json j{{"schema", kJsonSchemaVersion},
           {"cases", rep.cases},
           {"skipped", rep.skipped},
           {"seed", a.seed},
           {"max_residual",
            {{"cocycle", rep.cocycle},
             {"delta_law", rep.delta_law},
             {"det_lambda", rep.det_lambda},
             {"factorization", rep.factorization}}}};
    std::ostringstream tol;
    tol << a.tolerance;
    return {j, {rep.to_string(), std::string(pass ? "PASS" : "FAIL") + ": max residual below " + tol.str()}, pass};
}

void emit(const Result& r, const std::string& output) {
    const std::string text = r.json.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + output + "'");
        out << text;
    }
    for (const auto& line : r.report) std::cout << line << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic Eisenstein measure: q-expansions, moments and congruences"};
    app.set_config("--config", "", "TOML or INI file with option defaults");
    app.require_subcommand(1);

    RunConfig cfg;
    std::function<Result()> action;

    QexpArgs qa;
    auto* qexp = app.add_subcommand("qexp", "q-expansion of the Eisenstein series of weight (k, nu) attached to F");
    add_common(qexp, cfg);
    qexp->add_option("--k", qa.k, "weight k (default n)");
    qexp->add_option("--nu", qa.nu, "weight nu, the same at every place")->capture_default_str();
    qexp->add_option("--F", qa.F, "function expression")->capture_default_str();
    qexp->callback([&] { action = [&] { return run_qexp(cfg, qa); }; });

    IntegrateArgs ia;
    auto* integ = app.add_subcommand("integrate", "integrate a unit-invariant H against the measure");
    add_common(integ, cfg);
    integ->add_option("--H", ia.H, "integrand expression")->capture_default_str();
    integ->add_option("--compare", ia.compare, "second integrand to compare against");
    integ->add_option("--mod-exp", ia.mod_exp, "compare modulo p^mod-exp")->check(CLI::PositiveNumber);
    integ->callback([&] { action = [&] { return run_integrate(cfg, ia); }; });

    MomentArgs ma;
    auto* moment = app.add_subcommand("moment", "moment of H against F_zeta or det^-d");
    add_common(moment, cfg);
    moment->add_option("--H", ma.H, "integrand expression")->capture_default_str();
    auto* zeta_opt = moment->add_option("--zeta", ma.zeta, "highest weight vector, e.g. det^2 or x11");
    auto* d_opt = moment->add_option("--d", ma.d, "integrate det(N(x)^-1 y)^-d")->check(CLI::NonNegativeNumber);
    zeta_opt->excludes(d_opt);
    moment->callback([&] {
        if (ma.zeta.empty() && ma.d < 0) throw CLI::ValidationError("moment", "one of --zeta or --d is required");
        action = [&] { return run_moment(cfg, ma); };
    });

    KummerArgs ka;
    auto* kummer = app.add_subcommand("kummer", "Kummer congruence between weights k and k'");
    add_common(kummer, cfg);
    kummer->add_option("--k", ka.k, "first weight")->required();
    kummer->add_option("--kprime", ka.kprime, "second weight")->required();
    kummer->add_option("--mod-exp", ka.mod_exp, "compare modulo p^mod-exp")->check(CLI::PositiveNumber)->capture_default_str();
    kummer->callback([&] { action = [&] { return run_kummer(cfg, ka); }; });

    TransformArgs ta;
    auto* transform = app.add_subcommand("transform-cusp", "move an expansion to the cusp (h, lambda)");
    add_common(transform, cfg);
    transform->add_option("--k", ta.q.k, "weight k (default n)");
    transform->add_option("--nu", ta.q.nu, "weight nu")->capture_default_str();
    transform->add_option("--F", ta.q.F, "function expression")->capture_default_str();
    transform->set_help_flag("--help", "Print this help message and exit");
    transform->add_option("--h", ta.h, "matrix over O_K, rows separated by ';', e.g. \"1,w;0,1\"");
    transform->add_option("--lambda", ta.lambda, "positive rational similitude")->capture_default_str();
    transform->add_option("--chi", ta.chi, "character value chi(det(lambda h)^-1) as a rational");
    transform->add_option("--lambda-power", ta.lambda_power)->capture_default_str();
    transform->add_option("--deth-power", ta.deth_power)->capture_default_str();
    transform->callback([&] { action = [&] { return run_transform(cfg, ta); }; });

    DecomposeArgs da;
    auto* decompose = app.add_subcommand("decompose", "split a locally constant function into character components");
    add_common(decompose, cfg);
    decompose->add_option("--F", da.F, "function expression or table:PATH")->required();
    decompose->add_option("--level", da.level, "level j of the characters")->check(CLI::PositiveNumber)->capture_default_str();
    decompose->callback([&] { action = [&] { return run_decompose(cfg, da); }; });

    SelftestArgs sa;
    auto* selftest = app.add_subcommand("automorphy-selftest", "numerical checks of the automorphy factor identities");
    selftest->add_option("--cases", sa.cases, "random cases")->check(CLI::PositiveNumber)->capture_default_str();
    selftest->add_option("--seed", sa.seed, "random seed")->capture_default_str();
    selftest->add_option("--tolerance", sa.tolerance, "largest accepted relative residual")->capture_default_str();
    selftest->add_option("--output", cfg.output, "write the JSON result here instead of stdout");
    selftest->callback([&] { action = [&] { return run_selftest(sa); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        Result r = action();
        emit(r, cfg.output);
        return r.pass ? 0 : kExitVerification;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::VerificationFailure ? kExitVerification : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
