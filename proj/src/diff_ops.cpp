#include "eism/diff_ops.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "eism/error.hpp"

namespace eism {

HighestWeight::HighestWeight(std::vector<int> r_) : r(std::move(r_)) {
    if (r.empty()) fail(ErrorKind::InvalidArgument, "highest weight needs at least one entry");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < 0) fail(ErrorKind::InvalidArgument, "highest weight entries must be nonnegative");
        if (i > 0 && r[i] > r[i - 1]) fail(ErrorKind::InvalidArgument, "highest weight must be nonincreasing");
    }
}

int HighestWeight::degree() const {
    int d = 0;
    for (int v : r) d += v;
    return d;
}

std::vector<int> weights_to_exponents(const HighestWeight& r) {
    std::vector<int> e(r.r.size());
    for (std::size_t j = 0; j < r.r.size(); ++j) e[j] = r.r[j] - (j + 1 < r.r.size() ? r.r[j + 1] : 0);
    return e;
}

// ------------------------------------------------------------ polynomials

void Polynomial::add_term(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::constant(int n, const mpq_class& c) {
    Polynomial p(n);
    p.add_term(Monomial(static_cast<std::size_t>(n * n), 0), c);
    return p;
}

Polynomial Polynomial::variable(int n, int a, int b) {
    if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorKind::InvalidArgument, "variable index out of range");
    Polynomial p(n);
    Monomial m(static_cast<std::size_t>(n * n), 0);
    m[static_cast<std::size_t>(a * n + b)] = 1;
    p.add_term(m, 1);
    return p;
}

Polynomial Polynomial::leading_minor(int n, int j) {
    if (j < 0 || j > n) fail(ErrorKind::InvalidArgument, "minor size out of range");
    if (j == 0) return constant(n, 1);
    std::vector<int> perm(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i) perm[static_cast<std::size_t>(i)] = i;
    Polynomial out(n);
    do {
        int inversions = 0;
        for (int a = 0; a < j; ++a) {
            for (int b = a + 1; b < j; ++b) inversions += perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)];
        }
        Monomial m(static_cast<std::size_t>(n * n), 0);
        for (int i = 0; i < j; ++i) ++m[static_cast<std::size_t>(i * n + perm[static_cast<std::size_t>(i)])];
        out.add_term(m, inversions % 2 ? -1 : 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    int n;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::InvalidArgument, "cannot parse polynomial '" + s + "' at " + std::to_string(pos) + ": " + what);
    }
    long integer() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) error("expected a number");
        return std::stol(s.substr(start, pos - start));
    }
    int exponent() {
        if (!eat('^')) return 1;
        return static_cast<int>(integer());
    }
    Polynomial factor() {
        skip();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            mpq_class q(integer());
            if (eat('/')) q /= integer();
            return Polynomial::constant(n, q).pow(exponent());
        }
        if (s.compare(pos, 3, "det") == 0) {
            pos += 3;
            return Polynomial::det(n).pow(exponent());
        }
        if (pos < s.size() && s[pos] == 'x') {
            ++pos;
            if (pos + 2 > s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])) ||
                !std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
                error("expected xAB with 1-based digits");
            }
            int a = s[pos] - '1';
            int b = s[pos + 1] - '1';
            pos += 2;
            return Polynomial::variable(n, a, b).pow(exponent());
        }
        if (eat('(')) {
            Polynomial inner = sum();
            if (!eat(')')) error("expected ')'");
            return inner.pow(exponent());
        }
        error("unexpected character");
    }
    Polynomial term() {
        Polynomial p = factor();
        while (eat('*')) p = p * factor();
        return p;
    }
    Polynomial sum() {
        bool neg = eat('-');
        if (!neg) eat('+');
        Polynomial p = term();
        if (neg) p = p.scaled(-1);
        while (true) {
            if (eat('+')) {
                p += term();
            } else if (eat('-')) {
                p -= term();
            } else {
                return p;
            }
        }
    }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int n) {
    Parser parser{text, n};
    Polynomial p = parser.sum();
    parser.skip();
    if (parser.pos != text.size()) parser.error("trailing input");
    return p;
}

bool Polynomial::is_homogeneous() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int deg = 0;
        for (int e : m) deg += e;
        if (d >= 0 && deg != d) return false;
        d = deg;
    }
    return true;
}

int Polynomial::homogeneous_degree() const {
    if (!is_homogeneous()) fail(ErrorKind::InvalidArgument, "polynomial is not homogeneous");
    if (terms_.empty()) return -1;
    int deg = 0;
    for (int e : terms_.begin()->first) deg += e;
    return deg;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (n_ != o.n_) fail(ErrorKind::ShapeMismatch, "polynomials in different matrix sizes");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (n_ != o.n_) fail(ErrorKind::ShapeMismatch, "polynomials in different matrix sizes");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.n_ != b.n_) fail(ErrorKind::ShapeMismatch, "polynomials in different matrix sizes");
    Polynomial out(a.n_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Polynomial::Monomial m = ma;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
    Polynomial out(n_);
    for (const auto& [m, v] : terms_) out.add_term(m, v * c);
    return out;
}

Polynomial Polynomial::pow(int e) const {
    if (e < 0) fail(ErrorKind::InvalidArgument, "negative polynomial power");
    Polynomial out = constant(n_, 1);
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
}

KElt Polynomial::evaluate(const KMatrix& m, const QuadraticField& K) const {
    if (m.size() != n_) fail(ErrorKind::ShapeMismatch, "matrix size differs from the polynomial's");
    KElt acc;
    for (const auto& [mono, c] : terms_) {
        KElt t(c);
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (mono[i]) t = K.mul(t, K.pow(m.entries()[i], mono[i]));
        }
        acc = K.add(acc, t);
    }
    return acc;
}

PadicElt Polynomial::evaluate(const PMatrix& m) const {
    if (m.size() != n_) fail(ErrorKind::ShapeMismatch, "matrix size differs from the polynomial's");
    const unsigned long p = m(0, 0).prime();
    const int prec = m.precision();
    PadicElt acc(p, prec);
    for (const auto& [mono, c] : terms_) {
        PadicElt t = PadicElt::from_rational(c, p, prec);
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (mono[i]) t *= m.entries()[i].pow(mono[i]);
        }
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::translated(const std::vector<long>& g, bool left) const {
    if (g.size() != static_cast<std::size_t>(n_ * n_)) fail(ErrorKind::ShapeMismatch, "translation matrix size");
    // Images of the variables under x -> g x or x -> x g.
    std::vector<Polynomial> image;
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
            Polynomial lin(n_);
            for (int t = 0; t < n_; ++t) {
                long coef = left ? g[static_cast<std::size_t>(a * n_ + t)] : g[static_cast<std::size_t>(t * n_ + b)];
                if (coef == 0) continue;
                lin += (left ? variable(n_, t, b) : variable(n_, a, t)).scaled(coef);
            }
            image.push_back(std::move(lin));
        }
    }
    Polynomial out(n_);
    for (const auto& [mono, c] : terms_) {
        Polynomial t = constant(n_, c);
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (mono[i]) t = t * image[i].pow(mono[i]);
        }
        out += t;
    }
    return out;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [mono, c] : terms_) {
        std::string coef = c.get_str();
        if (!s.empty()) {
            if (c < 0) {
                s += " - ";
                coef = mpq_class(-c).get_str();
            } else {
                s += " + ";
            }
        }
        std::string vars;
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (!mono[i]) continue;
            if (!vars.empty()) vars += "*";
            vars += "x" + std::to_string(i / static_cast<std::size_t>(n_) + 1) +
                    std::to_string(i % static_cast<std::size_t>(n_) + 1);
            if (mono[i] > 1) vars += "^" + std::to_string(mono[i]);
        }
        if (vars.empty()) {
            s += coef;
        } else if (coef == "1") {
            s += vars;
        } else if (coef == "-1") {
            s += "-" + vars;
        } else {
            s += coef + "*" + vars;
        }
    }
    return s;
}

Polynomial highest_weight_vector(const HighestWeight& r) {
    const int n = r.n();
    std::vector<int> e = weights_to_exponents(r);
    Polynomial out = Polynomial::constant(n, 1);
    for (int j = 1; j <= n; ++j) out = out * Polynomial::leading_minor(n, j).pow(e[static_cast<std::size_t>(j - 1)]);
    return out;
}

std::vector<mpz_class> psi_Z(const HighestWeight& r) {
    std::vector<mpz_class> poly{1};
    for (int h = 1; h <= r.n(); ++h) {
        for (int j = 1; j <= r.r[static_cast<std::size_t>(h - 1)]; ++j) {
            // multiply by (s + (h - j))
            const long c = h - j;
            std::vector<mpz_class> next(poly.size() + 1, 0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] += poly[i] * c;
            }
            poly = std::move(next);
        }
    }
    return poly;
}

mpq_class psi_Z_value(const HighestWeight& r, const mpq_class& s) {
    mpq_class v = 1;
    for (int h = 1; h <= r.n(); ++h) {
        for (int j = 1; j <= r.r[static_cast<std::size_t>(h - 1)]; ++j) v *= s - j + h;
    }
    return v;
}

// ----------------------------------------------------------------- F_zeta

namespace {

class Echelon {
public:
    // Reduces p against the stored rows; returns the remainder.
    Polynomial reduce(Polynomial p) const {
        while (true) {
            bool changed = false;
            for (const auto& [mono, c] : p.terms()) {
                auto it = pivot_.find(mono);
                if (it == pivot_.end()) continue;
                p -= rows_[it->second].scaled(c);
                changed = true;
                break;
            }
            if (!changed) return p;
        }
    }

    void add(Polynomial p) {
        const auto& [lead, c] = *p.terms().begin();
        Polynomial::Monomial key = lead;
        p = p.scaled(1 / c);
        pivot_.emplace(key, rows_.size());
        rows_.push_back(std::move(p));
    }

    std::size_t size() const { return rows_.size(); }

    // Fully reduced basis, ordered by leading monomial (highest first).
    std::vector<Polynomial> reduced_basis() const {
        std::vector<Polynomial> rows = rows_;
        std::vector<std::pair<Polynomial::Monomial, std::size_t>> order(pivot_.begin(), pivot_.end());
        // lowest pivot first
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [mono, i] : order) {
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (j == i) continue;
                auto it = rows[j].terms().find(mono);
                if (it == rows[j].terms().end()) continue;
                rows[j] -= rows[i].scaled(it->second);
            }
        }
        std::sort(rows.begin(), rows.end(), [](const Polynomial& a, const Polynomial& b) {
            return a.terms().begin()->first > b.terms().begin()->first;
        });
        return rows;
    }

private:
    std::vector<Polynomial> rows_;
    std::map<Polynomial::Monomial, std::size_t> pivot_;
};

}  // namespace

FZetaResult f_zeta_span(const Polynomial& zeta, std::size_t max_dim) {
    if (zeta.is_zero()) fail(ErrorKind::InvalidArgument, "zeta is zero");
    zeta.homogeneous_degree();
    const int n = zeta.n();
    std::vector<std::vector<long>> gens;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            std::vector<long> g(static_cast<std::size_t>(n * n), 0);
            for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i * n + i)] = 1;
            g[static_cast<std::size_t>(a * n + b)] += 1;
            gens.push_back(std::move(g));
        }
    }
    Echelon ech;
    std::deque<Polynomial> queue;
    ech.add(zeta);
    queue.push_back(zeta);
    while (!queue.empty()) {
        Polynomial cur = std::move(queue.front());
        queue.pop_front();
        for (bool left : {true, false}) {
            for (const auto& g : gens) {
                Polynomial r = ech.reduce(cur.translated(g, left));
                if (r.is_zero()) continue;
                if (ech.size() >= max_dim) {
                    fail(ErrorKind::SpanNotClosed, "span exceeds " + std::to_string(max_dim) + " dimensions");
                }
                ech.add(r);
                queue.push_back(r);
            }
        }
    }
    FZetaResult out;
    out.basis = ech.reduced_basis();
    out.f = Polynomial(n);
    for (const auto& b : out.basis) out.f += b;
    return out;
}

Polynomial f_zeta(const Polynomial& zeta, std::size_t max_dim) { return f_zeta_span(zeta, max_dim).f; }

QExpansion theta_apply(const QExpansion& Q, const Polynomial& F) {
    if (F.n() != Q.n) fail(ErrorKind::ShapeMismatch, "polynomial size differs from the expansion's");
    QExpansion out = Q;
    const FieldData& field = Q.field;
    for (auto& [beta, v] : out.coeffs) {
        if (Q.ring.kind == RingKind::padic) {
            const int prec = Q.ring.precision;
            std::vector<PadicElt> entries;
            for (const KElt& e : beta.matrix().entries()) entries.push_back(embed_sigma(e, field, prec));
            v = v * Coeff(F.evaluate(PMatrix(Q.n, std::move(entries))));
        } else {
            KElt value = F.evaluate(beta.matrix(), field.K);
            if (!value.is_rational()) fail(ErrorKind::RingMismatch, "F(beta) is not rational; use p-adic coefficients");
            v = v * Q.ring.from_rational(value.a);
        }
    }
    return out;
}

ArchimedeanEigenvalue archimedean_eigenvalue(int k, int d, int n, EigenConvention conv) {
    if (d < 0 || n < 1) fail(ErrorKind::InvalidArgument, "need d >= 0 and n >= 1");
    ArchimedeanEigenvalue out;
    out.i_power = n * d;
    out.two_power = -n * d;
    HighestWeight r(std::vector<int>(static_cast<std::size_t>(n), d));
    // psi(-k - s) with s = k/2 or 0 is psi(c k).
    const mpq_class c = conv == EigenConvention::s_half_k ? mpq_class(-3, 2) : mpq_class(-1);
    std::vector<mpz_class> psi = psi_Z(r);
    mpq_class cp = 1;
    for (const auto& coef : psi) {
        out.psi_in_k.push_back(mpq_class(coef) * cp);
        cp *= c;
    }
    out.psi_value = psi_Z_value(r, c * k);
    return out;
}

}  // namespace eism
