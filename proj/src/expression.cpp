#include "eism/expression.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "eism/error.hpp"
#include "eism/serialize.hpp"

namespace eism {

namespace {

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Splits at depth-0 separators; a sign directly after '^' or at the start of
// a piece stays with the piece.
std::vector<std::pair<char, std::string>> split_terms(const std::string& text) {
    std::vector<std::pair<char, std::string>> out;
    int depth = 0;
    char sign = '+';
    std::string cur;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        const bool sep = depth == 0 && (c == '+' || c == '-');
        const std::string head = strip(cur);
        const auto star = head.find_last_of('*');
        const std::string last = strip(star == std::string::npos ? head : head.substr(star + 1));
        const bool in_path = last.rfind("table:", 0) == 0 && c == '-' && !std::isspace(static_cast<unsigned char>(cur.back()));
        const bool attached = !head.empty() && (head.back() == '^' || head.back() == '*' || in_path);
        if (sep && !attached) {
            if (!head.empty()) out.emplace_back(sign, head);
            sign = c;
            cur.clear();
            continue;
        }
        cur += c;
    }
    if (depth != 0) fail(ErrorKind::InvalidArgument, "unbalanced parentheses in '" + text + "'");
    const std::string head = strip(cur);
    if (head.empty()) fail(ErrorKind::InvalidArgument, "empty term in '" + text + "'");
    out.emplace_back(sign, head);
    return out;
}

std::vector<std::string> split_factors(const std::string& term) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : term) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '*' && depth == 0) {
            out.push_back(strip(cur));
            cur.clear();
            continue;
        }
        cur += c;
    }
    out.push_back(strip(cur));
    for (const auto& f : out) {
        if (f.empty()) fail(ErrorKind::InvalidArgument, "empty factor in '" + term + "'");
    }
    return out;
}

ContinuousFunction indicator(const ExpressionContext& ctx, bool on_det, long r, int prec) {
    const unsigned long p = ctx.field.p;
    const long residue = ((r % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p);
    const RingSpec ring = RingSpec::padic(p, prec);
    return ContinuousFunction(
        ctx.field, ctx.n, ring, YSupport::invertible,
        [on_det, residue, ring, p](const GnPoint& pt, int j) {
            const PadicElt v = on_det ? pt.y[0].det() : pt.x.sigma[0];
            const mpz_class m = v.residue() % p;
            return (m == residue ? ring.one() : ring.zero()).reduced(j);
        },
        1);
}

ContinuousFunction load_table(const std::string& path, const ExpressionContext& ctx) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open function table '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorKind::InvalidArgument, "'" + path + "' is not valid JSON: " + ex.what());
    }
    return ContinuousFunction(lc_function_from_json(j, ctx.field, ctx.n));
}

ContinuousFunction parse_term(const std::string& term, bool negate, const ExpressionContext& ctx) {
    static const std::regex number_re(R"(^(-?\d+)(?:/(\d+))?$)");
    static const std::regex power_re(R"(^(x|xs|xb|Nx|dety|omega|omegab)(?:\^\(?(-?\d+)\)?)?$)");
    static const std::regex ind_re(R"(^ind\(\s*(x|dety)\s*,\s*(-?\d+)\s*\)$)");

    const int prec = ctx.precision > 0 ? ctx.precision : ctx.field.precision;
    const std::size_t comps = ctx.field.x_components();
    MonomialSpec spec;
    spec.x_exps.assign(comps, 0);
    spec.teich.assign(comps, 0);
    bool trivial = true;
    std::vector<ContinuousFunction> others;

    for (const auto& f : split_factors(term)) {
        std::smatch m;
        if (f == "const1") {
            if (ctx.weight) {
                others.push_back(weight_character_function(ctx.field, ctx.n, *ctx.weight, prec));
            }
        } else if (std::regex_match(f, m, number_re)) {
            mpq_class q(mpz_class(m[1].str()), m[2].matched ? mpz_class(m[2].str()) : mpz_class(1));
            if (q.get_den() == 0) fail(ErrorKind::ZeroDenominator, "scalar '" + f + "'");
            q.canonicalize();
            spec.scalar *= q;
            trivial = false;
        } else if (std::regex_match(f, m, power_re)) {
            const long e = m[2].matched ? std::stol(m[2].str()) : 1;
            const std::string base = m[1].str();
            const bool bar = base == "xb" || base == "omegab";
            if (bar && ctx.field.mode != Mode::unitary) {
                fail(ErrorKind::InvalidArgument, "'" + base + "' needs a CM field (unitary mode)");
            }
            const std::size_t slot = bar ? 1 : 0;
            if (base == "x" || base == "xs" || base == "xb") {
                spec.x_exps[slot] += e;
            } else if (base == "omega" || base == "omegab") {
                spec.teich[slot] += e;
            } else if (base == "Nx") {
                spec.nx_exp += e;
            } else {
                spec.ydet_exp += e;
            }
            trivial = false;
        } else if (std::regex_match(f, m, ind_re)) {
            others.push_back(indicator(ctx, m[1].str() == "dety", std::stol(m[2].str()), prec));
        } else if (f.rfind("table:", 0) == 0) {
            others.push_back(load_table(f.substr(6), ctx));
        } else {
            fail(ErrorKind::InvalidArgument, "unknown factor '" + f + "'");
        }
    }
    if (negate) {
        spec.scalar = -spec.scalar;
        trivial = false;
    }

    if (others.empty()) return monomial_function(ctx.field, ctx.n, spec, YSupport::invertible, prec);
    ContinuousFunction out = others.front();
    for (std::size_t i = 1; i < others.size(); ++i) out = out * others[i];
    const bool pure_scalar = spec.nx_exp == 0 && spec.ydet_exp == 0 &&
                             std::all_of(spec.x_exps.begin(), spec.x_exps.end(), [](long e) { return e == 0; }) &&
                             std::all_of(spec.teich.begin(), spec.teich.end(), [](long e) { return e == 0; });
    if (trivial) return out;
    if (pure_scalar) return out.scaled(out.ring().from_rational(spec.scalar));
    return out * monomial_function(ctx.field, ctx.n, spec, YSupport::invertible, prec);
}

}  // namespace

ContinuousFunction parse_function(const std::string& text, const ExpressionContext& ctx) {
    const std::string t = strip(text);
    if (t.empty()) fail(ErrorKind::InvalidArgument, "empty function expression");
    std::optional<ContinuousFunction> out;
    for (const auto& [sign, term] : split_terms(t)) {
        ContinuousFunction f = parse_term(term, sign == '-', ctx);
        out = out ? *out + f : f;
    }
    return *out;
}

KElt parse_k_element(const std::string& text) {
    static const std::regex term_re(R"(([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(w?))");
    std::string s;
    for (char c : text) {
        if (c != ' ') s += c;
    }
    if (s.empty()) fail(ErrorKind::InvalidArgument, "empty element of K");
    KElt out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::smatch m;
        std::string rest = s.substr(pos);
        if (!std::regex_search(rest, m, term_re, std::regex_constants::match_continuous) || m.length(0) == 0 ||
            (!m[2].matched && m[3].length() == 0)) {
            fail(ErrorKind::InvalidArgument, "cannot parse '" + text + "' as an element a + b w");
        }
        mpq_class c = m[2].matched ? mpq_class(m[2].str()) : mpq_class(1);
        c.canonicalize();
        if (m[1].str() == "-") c = -c;
        if (m[3].length() > 0) {
            out.b += c;
        } else {
            out.a += c;
        }
        pos += static_cast<std::size_t>(m.length(0));
    }
    return out;
}

}  // namespace eism
