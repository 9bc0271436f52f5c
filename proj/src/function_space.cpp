#include "eism/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "eism/error.hpp"

namespace eism {

// ---------------------------------------------------------------- matrices

PMatrix::PMatrix(int n, std::vector<PadicElt> entries) : n_(n), e_(std::move(entries)) {
    if (n < 1 || e_.size() != static_cast<std::size_t>(n * n)) {
        fail(ErrorKind::ShapeMismatch, "matrix needs n*n entries");
    }
}

PMatrix PMatrix::identity(int n, unsigned long p, int precision) {
    std::vector<PadicElt> e(static_cast<std::size_t>(n * n), PadicElt(p, precision));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = PadicElt::from_integer(1, p, precision);
    return PMatrix(n, std::move(e));
}

int PMatrix::precision() const {
    int prec = kInfiniteValuation;
    for (const auto& v : e_) prec = std::min(prec, v.precision());
    return prec;
}

namespace {

PadicElt laplace_det(const std::vector<PadicElt>& e, int n) {
    if (n == 1) return e[0];
    if (n == 2) return e[0] * e[3] - e[1] * e[2];
    PadicElt acc(e[0].prime(), e[0].precision());
    std::vector<PadicElt> sub;
    for (int col = 0; col < n; ++col) {
        sub.clear();
        for (int i = 1; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j != col) sub.push_back(e[static_cast<std::size_t>(i * n + j)]);
            }
        }
        PadicElt term = e[static_cast<std::size_t>(col)] * laplace_det(sub, n - 1);
        if (col % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    return acc;
}

}  // namespace

PadicElt PMatrix::det() const { return laplace_det(e_, n_); }

PMatrix PMatrix::inverse() const {
    PMatrix m = *this;
    PMatrix r = identity(n_, e_[0].prime(), precision());
    for (int col = 0; col < n_; ++col) {
        int piv = -1;
        for (int row = col; row < n_; ++row) {
            if (m(row, col).is_unit()) {
                piv = row;
                break;
            }
        }
        if (piv < 0) fail(ErrorKind::NotAUnit, "matrix is not invertible over Z_p");
        if (piv != col) {
            for (int j = 0; j < n_; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(r(piv, j), r(col, j));
            }
        }
        PadicElt pinv = m(col, col).inverse();
        for (int j = 0; j < n_; ++j) {
            m(col, j) *= pinv;
            r(col, j) *= pinv;
        }
        for (int row = 0; row < n_; ++row) {
            if (row == col || m(row, col).is_zero()) continue;
            PadicElt f = m(row, col);
            for (int j = 0; j < n_; ++j) {
                m(row, j) -= f * m(col, j);
                r(row, j) -= f * r(col, j);
            }
        }
    }
    return r;
}

PMatrix PMatrix::transpose() const {
    PMatrix out = *this;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) out(i, j) = (*this)(j, i);
    }
    return out;
}

PMatrix PMatrix::scaled(const PadicElt& c) const {
    PMatrix out = *this;
    for (auto& v : out.e_) v *= c;
    return out;
}

PMatrix operator*(const PMatrix& a, const PMatrix& b) {
    if (a.n_ != b.n_) fail(ErrorKind::ShapeMismatch, "matrix sizes differ");
    PMatrix out = a;
    for (int i = 0; i < a.n_; ++i) {
        for (int j = 0; j < a.n_; ++j) {
            PadicElt acc = a(i, 0) * b(0, j);
            for (int t = 1; t < a.n_; ++t) acc += a(i, t) * b(t, j);
            out(i, j) = acc;
        }
    }
    return out;
}

PadicElt leading_minor(const PMatrix& m, int j) {
    std::vector<PadicElt> sub;
    for (int r = 0; r < j; ++r) {
        for (int c = 0; c < j; ++c) sub.push_back(m(r, c));
    }
    return laplace_det(sub, j);
}

int GnPoint::precision() const {
    int prec = x.precision();
    for (const auto& m : y) prec = std::min(prec, m.precision());
    return prec;
}

// ------------------------------------------------------------------ cosets

std::size_t CosetKeyHash::operator()(const CosetKey& k) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : k) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

namespace {

std::int64_t small_modulus(unsigned long p, int level) {
    const mpz_class& q = prime_power(p, level);
    if (!q.fits_slong_p() || q > mpz_class(1L << 40)) {
        fail(ErrorKind::UnsupportedSize, "p^level too large for coset tables");
    }
    return q.get_si();
}

std::int64_t reduce_to(const PadicElt& v, int level) {
    if (v.precision() < level) {
        fail(ErrorKind::PrecisionUnavailable, "point known only modulo p^" + std::to_string(v.precision()));
    }
    mpz_class r = v.residue() % prime_power(v.prime(), level);
    return r.get_si();
}

std::int64_t det_mod(const std::vector<std::int64_t>& e, int n, std::int64_t mod) {
    if (n == 1) return ((e[0] % mod) + mod) % mod;
    if (n == 2) {
        __int128 d = static_cast<__int128>(e[0]) * e[3] - static_cast<__int128>(e[1]) * e[2];
        return static_cast<std::int64_t>(((d % mod) + mod) % mod);
    }
    std::int64_t acc = 0;
    std::vector<std::int64_t> sub;
    for (int col = 0; col < n; ++col) {
        sub.clear();
        for (int i = 1; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j != col) sub.push_back(e[static_cast<std::size_t>(i * n + j)]);
            }
        }
        __int128 term = static_cast<__int128>(e[static_cast<std::size_t>(col)]) * det_mod(sub, n - 1, mod);
        term %= mod;
        acc = static_cast<std::int64_t>((((col % 2 == 0) ? acc + term : acc - term) % mod + mod) % mod);
    }
    return acc;
}

}  // namespace

CosetKey coset_key(const GnPoint& pt, const FieldData& field, int level) {
    CosetKey key;
    for (std::size_t i = 0; i < pt.x.places(); ++i) {
        key.push_back(reduce_to(pt.x.sigma[i], level));
        if (field.mode == Mode::unitary) key.push_back(reduce_to(pt.x.sigma_bar[i], level));
    }
    for (const auto& m : pt.y) {
        for (const auto& v : m.entries()) key.push_back(reduce_to(v, level));
    }
    return key;
}

GnPoint coset_point(const CosetKey& key, const FieldData& field, int n, int precision) {
    const std::size_t xc = field.x_components();
    const std::size_t places = field.places();
    if (key.size() != xc + places * static_cast<std::size_t>(n * n)) {
        fail(ErrorKind::ShapeMismatch, "coset key has the wrong length");
    }
    GnPoint pt;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < places; ++i) {
        PadicElt s = PadicElt::from_integer(mpz_class(static_cast<long>(key[pos++])), field.p, precision);
        pt.x.sigma.push_back(s);
        if (field.mode == Mode::unitary) {
            pt.x.sigma_bar.push_back(PadicElt::from_integer(mpz_class(static_cast<long>(key[pos++])), field.p, precision));
        } else {
            pt.x.sigma_bar.push_back(s);
        }
    }
    for (std::size_t i = 0; i < places; ++i) {
        std::vector<PadicElt> e;
        for (int t = 0; t < n * n; ++t) {
            e.push_back(PadicElt::from_integer(mpz_class(static_cast<long>(key[pos++])), field.p, precision));
        }
        pt.y.emplace_back(n, std::move(e));
    }
    return pt;
}

std::size_t x_coset_count(const FieldData& field, int level) {
    std::int64_t q = small_modulus(field.p, level);
    std::int64_t units = q - q / static_cast<std::int64_t>(field.p);
    double total = 1;
    for (std::size_t i = 0; i < field.x_components(); ++i) total *= static_cast<double>(units);
    if (total > 1e15) fail(ErrorKind::UnsupportedSize, "coset count overflow");
    return static_cast<std::size_t>(total);
}

std::size_t y_coset_count(const FieldData& field, int n, int level, YSupport support) {
    const double q = static_cast<double>(small_modulus(field.p, level));
    const double p = static_cast<double>(field.p);
    double all = 1;
    for (int i = 0; i < n * n; ++i) all *= q;
    double count = all;
    if (support == YSupport::invertible) {
        // |GL_n(Z/p^j)| = p^{(j-1)n^2} |GL_n(F_p)|
        double gl = 1;
        double pn = 1;
        for (int i = 0; i < n; ++i) pn *= p;
        double pk = 1;
        for (int i = 0; i < n; ++i) {
            gl *= (pn - pk);
            pk *= p;
        }
        count = gl * (all / std::pow(p, n * n));
    }
    double total = 1;
    for (std::size_t i = 0; i < field.places(); ++i) total *= count;
    if (total > 1e15) fail(ErrorKind::UnsupportedSize, "coset count overflow");
    return static_cast<std::size_t>(total + 0.5);
}

void for_each_x_coset(const FieldData& field, int level, const std::function<void(const CosetKey&)>& fn) {
    const std::int64_t q = small_modulus(field.p, level);
    const std::int64_t p = static_cast<std::int64_t>(field.p);
    const std::size_t c = field.x_components();
    CosetKey key(c, 1);
    while (true) {
        fn(key);
        std::size_t i = 0;
        for (; i < c; ++i) {
            do {
                ++key[i];
            } while (key[i] < q && key[i] % p == 0);
            if (key[i] < q) break;
            key[i] = 1;
        }
        if (i == c) return;
    }
}

void for_each_y_coset(const FieldData& field, int n, int level, YSupport support,
                      const std::function<void(const CosetKey&)>& fn) {
    const std::int64_t q = small_modulus(field.p, level);
    const std::int64_t p = static_cast<std::int64_t>(field.p);
    const std::size_t per = static_cast<std::size_t>(n * n);
    const std::size_t len = per * field.places();
    CosetKey key(len, 0);
    std::vector<std::int64_t> block(per);
    while (true) {
        bool ok = true;
        if (support == YSupport::invertible) {
            for (std::size_t pl = 0; pl < field.places() && ok; ++pl) {
                std::copy(key.begin() + static_cast<long>(pl * per), key.begin() + static_cast<long>((pl + 1) * per),
                          block.begin());
                ok = det_mod(block, n, p) != 0;
            }
        }
        if (ok) fn(key);
        std::size_t i = 0;
        for (; i < len; ++i) {
            if (++key[i] < q) break;
            key[i] = 0;
        }
        if (i == len) return;
    }
}

bool key_in_support(const CosetKey& key, const FieldData& field, int n, int level, YSupport support) {
    (void)level;
    const std::int64_t p = static_cast<std::int64_t>(field.p);
    const std::size_t xc = field.x_components();
    for (std::size_t i = 0; i < xc; ++i) {
        if (key[i] % p == 0) return false;
    }
    if (support == YSupport::invertible) {
        const std::size_t per = static_cast<std::size_t>(n * n);
        for (std::size_t pl = 0; pl < field.places(); ++pl) {
            std::vector<std::int64_t> block(key.begin() + static_cast<long>(xc + pl * per),
                                            key.begin() + static_cast<long>(xc + (pl + 1) * per));
            if (det_mod(block, n, p) == 0) return false;
        }
    }
    return true;
}

GnPoint random_point(const FieldData& field, int n, int precision, YSupport support, std::mt19937_64& rng) {
    gmp_randclass gen(gmp_randinit_default);
    gen.seed(static_cast<unsigned long>(rng()));
    const mpz_class& mod = prime_power(field.p, precision);
    auto unit = [&]() {
        while (true) {
            mpz_class v = gen.get_z_range(mod);
            if (!mpz_divisible_ui_p(v.get_mpz_t(), field.p)) return PadicElt::from_integer(v, field.p, precision);
        }
    };
    GnPoint pt;
    for (std::size_t i = 0; i < field.places(); ++i) {
        PadicElt s = unit();
        pt.x.sigma.push_back(s);
        pt.x.sigma_bar.push_back(field.mode == Mode::unitary ? unit() : s);
    }
    for (std::size_t i = 0; i < field.places(); ++i) {
        while (true) {
            std::vector<PadicElt> e;
            for (int t = 0; t < n * n; ++t) e.push_back(PadicElt::from_integer(gen.get_z_range(mod), field.p, precision));
            PMatrix m(n, std::move(e));
            if (support == YSupport::all || m.det().is_unit()) {
                pt.y.push_back(std::move(m));
                break;
            }
        }
    }
    return pt;
}

GnPoint act_by_unit(const GnPoint& pt, const KElt& e, const FieldData& field, int norm_power) {
    const int prec = pt.precision();
    CMElt ee = cm_split_embed(e, field, std::min(prec, field.precision));
    GnPoint out;
    out.x = ee * pt.x;
    std::vector<PadicElt> ne = norm_relative(ee, field);
    for (std::size_t i = 0; i < pt.y.size(); ++i) out.y.push_back(pt.y[i].scaled(ne[i].pow(norm_power)));
    return out;
}

// ------------------------------------------------------------- LCFunction

LCFunction::LCFunction(FieldData field, int n, int level, RingSpec ring, YSupport support)
    : field_(std::move(field)), n_(n), level_(level), ring_(ring), support_(support) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "n must be positive");
    if (level < 1) fail(ErrorKind::InvalidArgument, "level must be at least 1");
    small_modulus(field_.p, level);
    if (ring_.kind == RingKind::padic) {
        if (ring_.p != field_.p) fail(ErrorKind::RingMismatch, "coefficient prime differs from the field prime");
    }
}

void LCFunction::set(const CosetKey& key, const Coeff& value) {
    const std::size_t want = field_.x_components() + field_.places() * static_cast<std::size_t>(n_ * n_);
    if (key.size() != want) fail(ErrorKind::ShapeMismatch, "coset key has the wrong length");
    const std::int64_t q = small_modulus(field_.p, level_);
    for (auto v : key) {
        if (v < 0 || v >= q) fail(ErrorKind::InvalidArgument, "coset coordinate out of range");
    }
    if (value.ring() != ring_.kind) {
        fail(ErrorKind::RingMismatch, "value in " + ring_name(value.ring()) + ", table in " + ring_name(ring_.kind));
    }
    if (value.is_zero()) {
        table_.erase(key);
        return;
    }
    if (!key_in_support(key, field_, n_, level_, support_)) {
        fail(ErrorKind::SupportNotInvertible, "nonzero value outside the declared support");
    }
    if (value.is_padic()) {
        if (value.padic().precision() < ring_.precision) {
            fail(ErrorKind::PrecisionUnavailable, "value known to lower precision than the table ring");
        }
        table_.insert_or_assign(key, value.reduced(ring_.precision));
    } else {
        table_.insert_or_assign(key, value);
    }
}

Coeff LCFunction::at(const CosetKey& key) const {
    auto it = table_.find(key);
    if (it == table_.end()) return ring_.zero();
    return it->second;
}

Coeff LCFunction::evaluate(const GnPoint& pt, int j) const {
    if (ring_.kind == RingKind::padic && j > ring_.precision) {
        fail(ErrorKind::PrecisionUnavailable, "values known modulo p^" + std::to_string(ring_.precision));
    }
    if (pt.precision() < level_) fail(ErrorKind::PrecisionUnavailable, "point known below the table level");
    Coeff v = at(coset_key(pt, field_, level_));
    return v.reduced(j);
}

LCFunction LCFunction::lifted_to(int level, std::size_t max_cells) const {
    if (level < level_) fail(ErrorKind::LevelMismatch, "cannot lower the level of a table");
    if (level == level_) return *this;
    LCFunction out(field_, n_, level, ring_, support_);
    const std::int64_t step = small_modulus(field_.p, level_);
    const std::int64_t mult = small_modulus(field_.p, level - level_);
    double per = 1;
    std::size_t len = field_.x_components() + field_.places() * static_cast<std::size_t>(n_ * n_);
    for (std::size_t i = 0; i < len; ++i) per *= static_cast<double>(mult);
    if (per * static_cast<double>(table_.size()) > static_cast<double>(max_cells)) {
        fail(ErrorKind::UnsupportedSize, "lifted table exceeds the cell cap");
    }
    for (const auto& [key, value] : table_) {
        CosetKey digits(len, 0);
        while (true) {
            CosetKey k = key;
            for (std::size_t i = 0; i < len; ++i) k[i] += digits[i] * step;
            out.table_.emplace(std::move(k), value);
            std::size_t i = 0;
            for (; i < len; ++i) {
                if (++digits[i] < mult) break;
                digits[i] = 0;
            }
            if (i == len) break;
        }
    }
    return out;
}

LCFunction LCFunction::scaled(const Coeff& c) const {
    LCFunction out(field_, n_, level_, ring_, support_);
    for (const auto& [key, value] : table_) out.set(key, value * c);
    return out;
}

LCFunction operator+(const LCFunction& a, const LCFunction& b) {
    if (a.n_ != b.n_ || a.level_ != b.level_ || a.field_.p != b.field_.p || a.field_.mode != b.field_.mode) {
        fail(ErrorKind::ShapeMismatch, "adding tables on different domains");
    }
    if (a.ring_.kind != b.ring_.kind) fail(ErrorKind::RingMismatch, "adding tables over different rings");
    RingSpec ring = a.ring_;
    ring.precision = std::min(a.ring_.precision, b.ring_.precision);
    YSupport support = (a.support_ == YSupport::all || b.support_ == YSupport::all) ? YSupport::all : YSupport::invertible;
    LCFunction out(a.field_, a.n_, a.level_, ring, support);
    for (const auto& [key, value] : a.table_) out.set(key, value);
    for (const auto& [key, value] : b.table_) out.set(key, out.at(key) + value);
    return out;
}

// ------------------------------------------------------- ContinuousFunction

ContinuousFunction::ContinuousFunction(FieldData field, int n, RingSpec ring, YSupport support, Evaluator eval,
                                       int level)
    : field_(std::move(field)), n_(n), ring_(ring), support_(support), eval_(std::move(eval)), level_(level) {}

ContinuousFunction::ContinuousFunction(const LCFunction& table)
    : field_(table.field()),
      n_(table.n()),
      ring_(table.ring()),
      support_(table.support()),
      level_(table.level()),
      table_(std::make_shared<const LCFunction>(table)) {
    auto t = table_;
    eval_ = [t](const GnPoint& pt, int j) { return t->evaluate(pt, j); };
}

bool ContinuousFunction::in_support(const GnPoint& pt) const {
    if (!pt.x.is_unit()) return false;
    if (support_ == YSupport::invertible) {
        for (const auto& m : pt.y) {
            if (!m.det().is_unit()) return false;
        }
    }
    return true;
}

namespace {

Coeff ring_zero(const RingSpec& ring, int j) {
    if (ring.kind == RingKind::padic) return Coeff(PadicElt(ring.p, std::min(j, ring.precision)));
    return ring.zero();
}

}  // namespace

Coeff ContinuousFunction::evaluate(const GnPoint& pt, int j) const {
    if (j < 1) fail(ErrorKind::InvalidArgument, "precision must be at least 1");
    if (pt.precision() < std::max(j, level_)) {
        fail(ErrorKind::PrecisionUnavailable, "point known only modulo p^" + std::to_string(pt.precision()));
    }
    if (ring_.kind == RingKind::padic && j > ring_.precision) {
        fail(ErrorKind::PrecisionUnavailable, "function values known modulo p^" + std::to_string(ring_.precision));
    }
    if (!in_support(pt)) return ring_zero(ring_, j);
    Coeff v = eval_(pt, j);
    if (v.ring() != ring_.kind) fail(ErrorKind::RingMismatch, "evaluator returned a value in the wrong ring");
    return v.reduced(j);
}

Coeff evaluate(const ContinuousFunction& F, const GnPoint& pt, int j) { return F.evaluate(pt, j); }

LCFunction ContinuousFunction::truncate(int j, std::size_t max_cells) const {
    const int level = std::max(j, level_);
    const double cells = static_cast<double>(x_coset_count(field_, level)) *
                         static_cast<double>(y_coset_count(field_, n_, level, support_));
    if (cells > static_cast<double>(max_cells)) {
        fail(ErrorKind::UnsupportedSize, "truncation would visit " + std::to_string(cells) + " cells");
    }
    RingSpec ring = ring_;
    if (ring.kind == RingKind::padic) ring.precision = std::min(j, ring_.precision);
    LCFunction out(field_, n_, level, ring, support_);
    const int rep_prec = field_.precision;
    for_each_x_coset(field_, level, [&](const CosetKey& xk) {
        for_each_y_coset(field_, n_, level, support_, [&](const CosetKey& yk) {
            CosetKey key = xk;
            key.insert(key.end(), yk.begin(), yk.end());
            GnPoint pt = coset_point(key, field_, n_, rep_prec);
            Coeff v = evaluate(pt, ring.kind == RingKind::padic ? ring.precision : j);
            out.set(key, v);
        });
    });
    return out;
}

ContinuousFunction ContinuousFunction::scaled(const Coeff& c) const {
    ContinuousFunction self = *this;
    return ContinuousFunction(field_, n_, ring_, support_,
                              [self, c](const GnPoint& pt, int j) { return self.evaluate(pt, j) * c; }, level_);
}

namespace {

void check_same_domain(const ContinuousFunction& a, const ContinuousFunction& b) {
    if (a.n() != b.n() || a.field().p != b.field().p || a.field().mode != b.field().mode ||
        a.field().k_disc != b.field().k_disc) {
        fail(ErrorKind::ShapeMismatch, "functions live on different domains");
    }
    if (a.ring().kind != b.ring().kind) fail(ErrorKind::RingMismatch, "functions take values in different rings");
}

RingSpec common_ring(const RingSpec& a, const RingSpec& b) {
    RingSpec r = a;
    r.precision = std::min(a.precision, b.precision);
    return r;
}

int common_level(int a, int b) { return (a > 0 && b > 0) ? std::max(a, b) : 0; }

}  // namespace

ContinuousFunction operator+(const ContinuousFunction& a, const ContinuousFunction& b) {
    check_same_domain(a, b);
    YSupport support = (a.support() == YSupport::all || b.support() == YSupport::all) ? YSupport::all : YSupport::invertible;
    return ContinuousFunction(
        a.field(), a.n(), common_ring(a.ring(), b.ring()), support,
        [a, b](const GnPoint& pt, int j) { return a.evaluate(pt, j) + b.evaluate(pt, j); },
        common_level(a.level(), b.level()));
}

ContinuousFunction operator*(const ContinuousFunction& a, const ContinuousFunction& b) {
    check_same_domain(a, b);
    YSupport support = (a.support() == YSupport::invertible || b.support() == YSupport::invertible)
                           ? YSupport::invertible
                           : YSupport::all;
    return ContinuousFunction(
        a.field(), a.n(), common_ring(a.ring(), b.ring()), support,
        [a, b](const GnPoint& pt, int j) { return a.evaluate(pt, j) * b.evaluate(pt, j); },
        common_level(a.level(), b.level()));
}

// --------------------------------------------------------------- symmetry

namespace {

std::vector<GnPoint> sample_points(const ContinuousFunction& F, const SampleOptions& opts, int prec) {
    std::vector<GnPoint> pts;
    if (const LCFunction* t = F.table()) {
        std::vector<CosetKey> keys;
        for (const auto& [key, value] : t->entries()) keys.push_back(key);
        std::sort(keys.begin(), keys.end());
        for (const auto& key : keys) pts.push_back(coset_point(key, F.field(), F.n(), prec));
    }
    std::mt19937_64 rng(opts.seed);
    for (int i = 0; i < opts.samples; ++i) pts.push_back(random_point(F.field(), F.n(), prec, F.support(), rng));
    return pts;
}

int check_precision(const ContinuousFunction& F, const SampleOptions& opts) {
    int j = opts.precision > 0 ? opts.precision : F.field().precision;
    if (F.ring().kind == RingKind::padic) j = std::min(j, F.ring().precision);
    return j;
}

Coeff weight_value(const KElt& e, const Weight& w, const FieldData& field, const RingSpec& ring, int j) {
    if (ring.kind == RingKind::padic) return Coeff(norm_weight(cm_split_embed(e, field, j), w, field));
    KElt v = norm_weight_exact(e, w, field);
    if (!v.is_rational()) fail(ErrorKind::RingMismatch, "N_{k,nu}(e) is not rational; use p-adic values");
    return ring.from_rational(v.a);
}

bool is_minus_one(const KElt& e) { return e == KElt(-1); }

}  // namespace

SymmetryReport check_equivariance(const ContinuousFunction& F, const Weight& w, const SampleOptions& opts) {
    SymmetryReport report;
    const int j = check_precision(F, opts);
    const int prec = F.field().precision;
    for (const auto& pt : sample_points(F, opts, prec)) {
        Coeff base = F.evaluate(pt, j);
        for (const auto& e : F.field().unit_group) {
            if (e == KElt(1) || (opts.skip_minus_one && is_minus_one(e))) continue;
            Coeff lhs = F.evaluate(act_by_unit(pt, e, F.field(), -1), j);
            Coeff rhs = weight_value(e, w, F.field(), F.ring(), j) * base;
            if (!(lhs == rhs)) {
                report.pass = false;
                report.witness = "e = " + e.to_string() + ": F(ex, N(e)^-1 y) = " + lhs.to_string() +
                                 " but N_{k,nu}(e) F(x, y) = " + rhs.to_string();
                return report;
            }
        }
    }
    return report;
}

SymmetryReport check_unit_invariance(const ContinuousFunction& H, const SampleOptions& opts) {
    SymmetryReport report;
    const int j = check_precision(H, opts);
    const int prec = H.field().precision;
    for (const auto& pt : sample_points(H, opts, prec)) {
        Coeff base = H.evaluate(pt, j);
        for (const auto& e : H.field().unit_group) {
            if (e == KElt(1) || (opts.skip_minus_one && is_minus_one(e))) continue;
            Coeff lhs = H.evaluate(act_by_unit(pt, e, H.field(), 1), j);
            if (!(lhs == base)) {
                report.pass = false;
                report.witness = "e = " + e.to_string() + ": H(ex, N(e) y) = " + lhs.to_string() +
                                 " but H(x, y) = " + base.to_string();
                return report;
            }
        }
    }
    return report;
}

// ------------------------------------------------------------- transforms

PadicElt twist_factor(const GnPoint& pt, const Weight& w, const FieldData& field, int n) {
    const std::vector<PadicElt> nx = norm_relative(pt.x, field);
    CMElt u = pt.x;
    std::vector<PadicElt> bases;
    std::vector<long> exps;
    for (std::size_t i = 0; i < pt.x.places(); ++i) {
        PadicElt s = nx[i].pow(n);
        u.sigma[i] = pt.x.sigma[i].inverse() * s;
        u.sigma_bar[i] = pt.x.sigma_bar[i].inverse() * s;
        bases.push_back(pt.y[i].det());
        exps.push_back(w.k);
    }
    PadicElt unit = norm_weight(u, w, field);
    return unit * monomial(bases, exps);
}

namespace {

void require_padic(const ContinuousFunction& F, const char* what) {
    if (F.ring().kind != RingKind::padic) {
        fail(ErrorKind::RingMismatch, std::string(what) + " needs p-adic values");
    }
}

void require_invertible_support(const ContinuousFunction& F) {
    if (F.support() == YSupport::invertible) return;
    if (const LCFunction* t = F.table()) {
        for (const auto& [key, value] : t->entries()) {
            if (!key_in_support(key, t->field(), t->n(), t->level(), YSupport::invertible)) {
                fail(ErrorKind::SupportNotInvertible, "table is nonzero at a non-invertible y");
            }
        }
        return;
    }
    // Probe singular points: y with first row divisible by p.
    std::mt19937_64 rng(7);
    const int prec = F.field().precision;
    const int j = std::min(prec, F.ring().precision);
    for (int i = 0; i < 16; ++i) {
        GnPoint pt = random_point(F.field(), F.n(), prec, YSupport::all, rng);
        PadicElt pp = PadicElt::from_integer(static_cast<long>(F.field().p), F.field().p, prec);
        for (auto& m : pt.y) {
            for (int c = 0; c < m.size(); ++c) m(0, c) *= pp;
        }
        if (!F.evaluate(pt, j).is_zero()) fail(ErrorKind::SupportNotInvertible, "function is nonzero at a singular y");
    }
}

GnPoint with_inverse_y(const GnPoint& pt) {
    GnPoint out = pt;
    for (auto& m : out.y) m = m.inverse();
    return out;
}

}  // namespace

ContinuousFunction h_to_f(const ContinuousFunction& H) {
    require_padic(H, "h_to_f");
    require_invertible_support(H);
    const int n = H.n();
    FieldData field = H.field();
    return ContinuousFunction(
        H.field(), n, H.ring(), YSupport::invertible,
        [H, n, field](const GnPoint& pt, int j) {
            Coeff h = H.evaluate(with_inverse_y(pt), j);
            if (h.is_zero()) return h;
            return Coeff(h.padic() * twist_factor(pt, Weight::scalar(n, 0, field.places()), field, n).inverse());
        });
}

ContinuousFunction f_to_h(const ContinuousFunction& F) {
    require_padic(F, "f_to_h");
    require_invertible_support(F);
    const int n = F.n();
    FieldData field = F.field();
    return ContinuousFunction(
        F.field(), n, F.ring(), YSupport::invertible,
        [F, n, field](const GnPoint& pt, int j) {
            GnPoint inv = with_inverse_y(pt);
            Coeff f = F.evaluate(inv, j);
            if (f.is_zero()) return f;
            return Coeff(f.padic() * twist_factor(inv, Weight::scalar(n, 0, field.places()), field, n));
        });
}

ContinuousFunction weight_twist(const ContinuousFunction& F, const Weight& w) {
    require_padic(F, "weight_twist");
    const int n = F.n();
    FieldData field = F.field();
    Weight shifted{w.k - n, w.nu};
    return ContinuousFunction(F.field(), n, F.ring(), F.support(), [F, n, field, shifted](const GnPoint& pt, int j) {
        Coeff f = F.evaluate(pt, j);
        if (f.is_zero()) return f;
        return Coeff(f.padic() * twist_factor(pt, shifted, field, n));
    });
}

ContinuousFunction weight_untwist(const ContinuousFunction& F, const Weight& w) {
    require_padic(F, "weight_untwist");
    const int n = F.n();
    FieldData field = F.field();
    Weight shifted{w.k - n, w.nu};
    return ContinuousFunction(F.field(), n, F.ring(), F.support(), [F, n, field, shifted](const GnPoint& pt, int j) {
        Coeff f = F.evaluate(pt, j);
        if (f.is_zero()) return f;
        return Coeff(f.padic() * twist_factor(pt, shifted, field, n).inverse());
    });
}

namespace {

Coeff inverse_group_order(const FieldData& field, const RingSpec& ring) {
    const long order = static_cast<long>(field.unit_group.size());
    if (ring.kind == RingKind::padic && order % static_cast<long>(field.p) == 0) {
        fail(ErrorKind::GroupOrderNotInvertible, "p divides the order of the unit group");
    }
    return ring.from_rational(mpq_class(1, order));
}

// Residues of x -> e x and y -> N(e)^power y modulo p^level.
struct KeyAction {
    std::vector<std::int64_t> x_mult;
    std::vector<std::int64_t> y_mult;
};

KeyAction key_action(const KElt& e, const FieldData& field, int n, int level, int norm_power) {
    GnPoint unit{cm_one(field, level), {}};
    for (std::size_t i = 0; i < field.places(); ++i) unit.y.push_back(PMatrix::identity(n, field.p, level));
    CosetKey k = coset_key(act_by_unit(unit, e, field, norm_power), field, level);
    KeyAction a;
    const std::size_t xc = field.x_components();
    a.x_mult.assign(k.begin(), k.begin() + static_cast<long>(xc));
    for (std::size_t i = 0; i < field.places(); ++i) a.y_mult.push_back(k[xc + i * static_cast<std::size_t>(n * n)]);
    return a;
}

CosetKey act_on_key(const CosetKey& key, const KeyAction& a, const FieldData& field, int n, int level) {
    const std::int64_t q = small_modulus(field.p, level);
    auto mulmod = [q](std::int64_t x, std::int64_t y) {
        return static_cast<std::int64_t>(static_cast<__int128>(x) * y % q);
    };
    CosetKey out(key.size());
    const std::size_t xc = a.x_mult.size();
    for (std::size_t i = 0; i < xc; ++i) out[i] = mulmod(key[i], a.x_mult[i]);
    const std::size_t block = static_cast<std::size_t>(n * n);
    for (std::size_t i = xc; i < key.size(); ++i) out[i] = mulmod(key[i], a.y_mult[(i - xc) / block]);
    return out;
}

}  // namespace

ContinuousFunction symmetrize(const ContinuousFunction& H) {
    Coeff inv = inverse_group_order(H.field(), H.ring());
    return ContinuousFunction(
        H.field(), H.n(), H.ring(), H.support(),
        [H, inv](const GnPoint& pt, int j) {
            Coeff acc = ring_zero(H.ring(), j);
            for (const auto& e : H.field().unit_group) acc += H.evaluate(act_by_unit(pt, e, H.field(), 1), j);
            return acc * inv;
        },
        H.level());
}

ContinuousFunction symmetrize_equivariant(const ContinuousFunction& F, const Weight& w) {
    Coeff inv = inverse_group_order(F.field(), F.ring());
    return ContinuousFunction(
        F.field(), F.n(), F.ring(), F.support(),
        [F, w, inv](const GnPoint& pt, int j) {
            Coeff acc = ring_zero(F.ring(), j);
            for (const auto& e : F.field().unit_group) {
                Coeff we = weight_value(e, w, F.field(), F.ring(), j);
                Coeff wi = we.is_padic() ? Coeff(we.padic().inverse()) : Coeff(mpq_class(1 / we.rational()));
                if (F.ring().kind == RingKind::cyclotomic) fail(ErrorKind::RingMismatch, "cyclotomic symmetrization");
                acc += wi * F.evaluate(act_by_unit(pt, e, F.field(), -1), j);
            }
            return acc * inv;
        },
        F.level());
}

namespace {

LCFunction symmetrize_table(const LCFunction& F, const Weight* w) {
    const FieldData& field = F.field();
    Coeff inv = inverse_group_order(field, F.ring());
    const int level = F.level();
    const int norm_power = w ? -1 : 1;
    std::vector<Coeff> factors;
    for (const auto& e : field.unit_group) {
        if (!w) {
            factors.push_back(F.ring().one());
        } else {
            Coeff we = weight_value(e, *w, field, F.ring(), F.ring().kind == RingKind::padic ? F.ring().precision : 1);
            factors.push_back(we.is_padic() ? Coeff(we.padic().inverse()) : Coeff(mpq_class(1 / we.rational())));
        }
    }
    std::vector<KeyAction> actions;
    for (const auto& e : field.unit_group) actions.push_back(key_action(e, field, F.n(), level, norm_power));
    std::set<CosetKey> orbit_keys;
    for (const auto& [key, value] : F.entries()) {
        for (const auto& a : actions) orbit_keys.insert(act_on_key(key, a, field, F.n(), level));
    }
    LCFunction out(field, F.n(), level, F.ring(), F.support());
    for (const auto& key : orbit_keys) {
        Coeff acc = F.ring().zero();
        for (std::size_t i = 0; i < field.unit_group.size(); ++i) {
            Coeff v = F.at(act_on_key(key, actions[i], field, F.n(), level));
            if (!v.is_zero()) acc += factors[i] * v;
        }
        out.set(key, acc * inv);
    }
    return out;
}

}  // namespace

LCFunction symmetrize(const LCFunction& H) { return symmetrize_table(H, nullptr); }

LCFunction symmetrize_equivariant(const LCFunction& F, const Weight& w) { return symmetrize_table(F, &w); }

// ------------------------------------------------------------- characters

PadicElt teichmuller(const PadicElt& u) {
    if (!u.is_unit()) fail(ErrorKind::NotAUnit, "Teichmueller lift of a non-unit");
    const unsigned long p = u.prime();
    const int N = u.precision();
    if (p == 2) {
        mpz_class r = u.residue() % 4;
        return PadicElt::from_integer(r == 1 || N < 2 ? 1 : -1, p, N);
    }
    PadicElt out(p, N);
    mpz_class r;
    mpz_powm(r.get_mpz_t(), u.residue().get_mpz_t(), prime_power(p, N - 1).get_mpz_t(), prime_power(p, N).get_mpz_t());
    return PadicElt::from_integer(r, p, N);
}

int PadicCharacter::level(unsigned long p) const {
    int lv = table_level;
    if (p == 2) {
        if (teich % 2 != 0) lv = std::max(lv, 2);
    } else if (teich % static_cast<int>(p - 1) != 0) {
        lv = std::max(lv, 1);
    }
    return lv;
}

PadicElt PadicCharacter::operator()(const PadicElt& u) const {
    PadicElt v = PadicElt::from_integer(1, u.prime(), u.precision());
    if (!table.empty()) {
        mpz_class r = u.residue() % prime_power(u.prime(), table_level);
        auto it = table.find(r.get_si());
        if (it == table.end()) fail(ErrorKind::InvalidArgument, "character table misses a residue");
        v *= it->second;
    }
    if (teich != 0) v *= teichmuller(u).pow(teich);
    if (power != 0) v *= u.pow(power);
    return v;
}

int XCharacter::level(unsigned long p) const {
    int lv = 0;
    for (const auto& c : components) lv = std::max(lv, c.level(p));
    return lv;
}

PadicElt XCharacter::operator()(const CMElt& x) const {
    std::vector<PadicElt> comps;
    for (std::size_t i = 0; i < x.places(); ++i) {
        comps.push_back(x.sigma[i]);
        comps.push_back(x.sigma_bar[i]);
    }
    if (components.size() == x.places()) {
        // symplectic: one component per place
        comps.clear();
        for (std::size_t i = 0; i < x.places(); ++i) comps.push_back(x.sigma[i]);
    }
    PadicElt v = PadicElt::from_integer(1, x.sigma[0].prime(), x.precision());
    for (std::size_t i = 0; i < components.size() && i < comps.size(); ++i) v *= components[i](comps[i]);
    return v;
}

PadicElt partition_value(const PartitionSpec& spec, const PMatrix& m) {
    if (spec.parts.size() != spec.rho.size()) fail(ErrorKind::InvalidArgument, "one character per part is needed");
    int sum = 0;
    for (int part : spec.parts) {
        if (part <= 0) fail(ErrorKind::InvalidArgument, "partition parts must be positive");
        sum += part;
    }
    if (sum != m.size()) fail(ErrorKind::InvalidArgument, "partition does not sum to n");
    PadicElt v = PadicElt::from_integer(1, m(0, 0).prime(), m.precision());
    int cum = 0;
    for (std::size_t i = 0; i < spec.parts.size(); ++i) {
        cum += spec.parts[i];
        PadicElt d = leading_minor(m, cum);
        if (!d.is_unit()) return PadicElt(d.prime(), m.precision());
        v *= spec.rho[i](d);
    }
    return v;
}

ContinuousFunction partition_function_continuous(const PartitionSpec& spec, const XCharacter& chi,
                                                 const FieldData& field, int n) {
    int sum = 0;
    for (int part : spec.parts) sum += part;
    if (sum != n || spec.parts.size() != spec.rho.size()) fail(ErrorKind::InvalidArgument, "invalid partition spec");
    return ContinuousFunction(
        field, n, RingSpec::padic(field.p, field.precision), YSupport::invertible,
        [spec, chi, field, n](const GnPoint& pt, int j) {
            std::vector<PadicElt> nx = norm_relative(pt.x, field);
            PadicElt v = chi(pt.x) * norm_weight(pt.x, Weight::scalar(n, 0, field.places()), field);
            for (std::size_t i = 0; i < pt.y.size(); ++i) v *= partition_value(spec, pt.y[i].transpose().scaled(nx[i]));
            return Coeff(v.reduced(j));
        });
}

LCFunction partition_function(const PartitionSpec& spec, const XCharacter& chi, const FieldData& field, int n,
                              int level) {
    for (const auto& r : spec.rho) {
        if (r.level(field.p) > level) {
            fail(ErrorKind::LevelMismatch, "character of level " + std::to_string(r.level(field.p)) +
                                               " exceeds table level " + std::to_string(level));
        }
    }
    if (chi.level(field.p) > level) fail(ErrorKind::LevelMismatch, "x-character level exceeds the table level");
    return partition_function_continuous(spec, chi, field, n).truncate(level);
}

bool FiniteCharacter::is_trivial() const {
    return std::all_of(exponents.begin(), exponents.end(), [](int s) { return s == 0; });
}

std::string FiniteCharacter::to_string() const {
    std::string s = "chi[m=" + std::to_string(order) + "](";
    for (std::size_t i = 0; i < exponents.size(); ++i) s += (i ? "," : "") + std::to_string(exponents[i]);
    return s + ")";
}

CyclicUnits CyclicUnits::make(unsigned long p, int level) {
    CyclicUnits g;
    g.p = p;
    g.level = level;
    g.modulus = small_modulus(p, level);
    if (g.modulus > 5'000'000) fail(ErrorKind::UnsupportedSize, "unit group too large");
    if (p == 2) {
        if (level > 2) fail(ErrorKind::UnsupportedSize, "(Z/2^j)^x is not cyclic for j >= 3");
        g.order = level == 1 ? 1 : 2;
        g.generator = level == 1 ? 1 : 3;
    } else {
        g.order = g.modulus / static_cast<long>(p) * static_cast<long>(p - 1);
        // primitive root modulo p, lifted so it stays primitive modulo p^2
        std::vector<long> qs;
        long m = static_cast<long>(p) - 1;
        for (long q = 2; q * q <= m; ++q) {
            if (m % q == 0) {
                qs.push_back(q);
                while (m % q == 0) m /= q;
            }
        }
        if (m > 1) qs.push_back(m);
        auto powmod = [](long b, long e, long mod) {
            __int128 r = 1, x = b % mod;
            while (e > 0) {
                if (e & 1) r = r * x % mod;
                x = x * x % mod;
                e >>= 1;
            }
            return static_cast<long>(r);
        };
        long gen = 2;
        for (;; ++gen) {
            bool ok = true;
            for (long q : qs) ok = ok && powmod(gen, (static_cast<long>(p) - 1) / q, static_cast<long>(p)) != 1;
            if (ok) break;
        }
        if (level >= 2 && powmod(gen, static_cast<long>(p) - 1, static_cast<long>(p * p)) == 1) gen += static_cast<long>(p);
        g.generator = gen;
    }
    g.log.assign(static_cast<std::size_t>(g.modulus), -1);
    g.exp.resize(static_cast<std::size_t>(g.order));
    long v = 1 % g.modulus;
    for (long e = 0; e < g.order; ++e) {
        g.exp[static_cast<std::size_t>(e)] = v;
        g.log[static_cast<std::size_t>(v)] = e;
        v = static_cast<long>(static_cast<__int128>(v) * g.generator % g.modulus);
    }
    if (g.modulus == 1) g.log[0] = 0;
    return g;
}

namespace {

std::size_t x_width(const FieldData& field) { return field.x_components(); }

}  // namespace

Coeff character_value(const FiniteCharacter& chi, const CosetKey& key, const FieldData& field, const RingSpec& ring) {
    CyclicUnits g = CyclicUnits::make(field.p, chi.level);
    long total = 0;
    for (std::size_t i = 0; i < x_width(field); ++i) {
        long r = static_cast<long>(key[i] % g.modulus);
        long l = g.log[static_cast<std::size_t>(r)];
        if (l < 0) fail(ErrorKind::InvalidArgument, "x coordinate is not a unit");
        total += static_cast<long>(chi.exponents[i]) * l;
    }
    total %= chi.order;
    if (ring.kind == RingKind::cyclotomic) return Coeff(Cyclotomic::zeta_power(chi.order, total));
    if (ring.kind == RingKind::padic) {
        PadicElt w = teichmuller(PadicElt::from_integer(g.generator, field.p, ring.precision));
        return Coeff(w.pow(total));
    }
    if (total == 0) return ring.one();
    fail(ErrorKind::RingMismatch, "nontrivial character values are not rational");
}

std::vector<CharacterComponent> character_decompose(const LCFunction& Fin, int j, std::size_t max_cells) {
    if (Fin.level() > j) fail(ErrorKind::LevelMismatch, "function level exceeds the decomposition level");
    const LCFunction F = Fin.lifted_to(j, max_cells);
    const FieldData& field = F.field();
    const RingKind kind = F.ring().kind;
    if (kind == RingKind::cyclotomic) fail(ErrorKind::RingMismatch, "decompose rational or p-adic tables");
    CyclicUnits g = CyclicUnits::make(field.p, j);
    const long m = g.order;
    const std::size_t c = x_width(field);
    if (kind == RingKind::padic && m % static_cast<long>(field.p) == 0) {
        fail(ErrorKind::GroupOrderNotInvertible,
             "p divides |(Z/p^" + std::to_string(j) + ")^x|; decompose over the cyclotomic ring instead");
    }
    std::size_t group = 1;
    for (std::size_t i = 0; i < c; ++i) group *= static_cast<std::size_t>(m);

    // group the table by y coset; values indexed by the log vector of x
    std::map<CosetKey, std::vector<const Coeff*>> by_y;
    for (const auto& [key, value] : F.entries()) {
        CosetKey yk(key.begin() + static_cast<long>(c), key.end());
        auto& slot = by_y[yk];
        if (slot.empty()) slot.assign(group, nullptr);
        std::size_t idx = 0, mul = 1;
        for (std::size_t i = 0; i < c; ++i) {
            idx += static_cast<std::size_t>(g.log[static_cast<std::size_t>(key[i])]) * mul;
            mul *= static_cast<std::size_t>(m);
        }
        slot[idx] = &value;
    }

    const RingSpec out_ring = kind == RingKind::padic ? F.ring() : RingSpec::cyclotomic(static_cast<int>(m));
    std::vector<PadicElt> wpow;
    if (kind == RingKind::padic) {
        PadicElt w = teichmuller(PadicElt::from_integer(g.generator, field.p, F.ring().precision));
        PadicElt acc = PadicElt::from_integer(1, field.p, F.ring().precision);
        for (long e = 0; e < m; ++e) {
            wpow.push_back(acc);
            acc *= w;
        }
    }
    const mpq_class inv_order(1, static_cast<long>(group));

    std::vector<CharacterComponent> out;
    std::vector<int> s(c, 0);
    for (std::size_t sidx = 0; sidx < group; ++sidx) {
        std::size_t rem = sidx;
        for (std::size_t i = 0; i < c; ++i) {
            s[i] = static_cast<int>(rem % static_cast<std::size_t>(m));
            rem /= static_cast<std::size_t>(m);
        }
        std::vector<std::pair<CosetKey, Coeff>> coeffs;
        for (const auto& [yk, values] : by_y) {
            std::vector<mpq_class> bucket;
            PadicElt pacc(field.p, kind == RingKind::padic ? F.ring().precision : 1);
            if (kind == RingKind::rational) bucket.assign(static_cast<std::size_t>(m), 0);
            for (std::size_t l = 0; l < group; ++l) {
                if (!values[l]) continue;
                std::size_t lr = l;
                long dot = 0;
                for (std::size_t i = 0; i < c; ++i) {
                    dot += static_cast<long>(s[i]) * static_cast<long>(lr % static_cast<std::size_t>(m));
                    lr /= static_cast<std::size_t>(m);
                }
                long e = ((-dot) % m + m) % m;
                if (kind == RingKind::rational) {
                    bucket[static_cast<std::size_t>(e)] += values[l]->rational();
                } else {
                    pacc += values[l]->padic() * wpow[static_cast<std::size_t>(e)];
                }
            }
            Coeff cy = kind == RingKind::rational
                           ? Coeff(Cyclotomic::from_group_ring(static_cast<int>(m), bucket).scaled(inv_order))
                           : Coeff(pacc * PadicElt::from_rational(inv_order, field.p, F.ring().precision));
            if (!cy.is_zero()) coeffs.emplace_back(yk, cy);
        }
        if (coeffs.empty()) continue;
        if (coeffs.size() * group > max_cells) fail(ErrorKind::UnsupportedSize, "component table exceeds the cell cap");
        FiniteCharacter chi{j, static_cast<int>(m), s};
        LCFunction comp(field, F.n(), j, out_ring, F.support());
        for (std::size_t l = 0; l < group; ++l) {
            CosetKey key;
            std::size_t lr = l;
            for (std::size_t i = 0; i < c; ++i) {
                key.push_back(g.exp[lr % static_cast<std::size_t>(m)]);
                lr /= static_cast<std::size_t>(m);
            }
            Coeff chival = character_value(chi, key, field, out_ring);
            for (const auto& [yk, cy] : coeffs) {
                CosetKey full = key;
                full.insert(full.end(), yk.begin(), yk.end());
                comp.set(full, chival * cy);
            }
        }
        out.push_back({chi, std::move(comp)});
    }
    return out;
}

// ----------------------------------------------------------- constructors

ContinuousFunction monomial_function(const FieldData& field, int n, const MonomialSpec& spec, YSupport support,
                                     int precision) {
    const std::size_t c = field.x_components();
    if (!spec.x_exps.empty() && spec.x_exps.size() != c) fail(ErrorKind::InvalidArgument, "one x exponent per component");
    if (!spec.teich.empty() && spec.teich.size() != c) fail(ErrorKind::InvalidArgument, "one Teichmueller power per component");
    const int prec = precision > 0 ? precision : field.precision;
    return ContinuousFunction(field, n, RingSpec::padic(field.p, prec), support, [field, spec](const GnPoint& pt, int j) {
        std::vector<PadicElt> bases;
        std::vector<long> exps;
        std::vector<PadicElt> comps;
        for (std::size_t i = 0; i < pt.x.places(); ++i) {
            comps.push_back(pt.x.sigma[i]);
            if (field.mode == Mode::unitary) comps.push_back(pt.x.sigma_bar[i]);
        }
        for (std::size_t i = 0; i < spec.x_exps.size(); ++i) {
            bases.push_back(comps[i]);
            exps.push_back(spec.x_exps[i]);
        }
        for (std::size_t i = 0; i < spec.teich.size(); ++i) {
            if (spec.teich[i] == 0) continue;
            bases.push_back(teichmuller(comps[i]));
            exps.push_back(spec.teich[i]);
        }
        if (spec.nx_exp != 0) {
            for (const auto& v : norm_relative(pt.x, field)) {
                bases.push_back(v);
                exps.push_back(spec.nx_exp);
            }
        }
        if (spec.ydet_exp != 0) {
            for (const auto& m : pt.y) {
                bases.push_back(m.det());
                exps.push_back(spec.ydet_exp);
            }
        }
        PadicElt v = PadicElt::from_rational(spec.scalar, field.p, j);
        if (!bases.empty()) v *= monomial(bases, exps);
        return Coeff(v.reduced(j));
    });
}

ContinuousFunction weight_character_function(const FieldData& field, int n, const Weight& w, int precision) {
    const int prec = precision > 0 ? precision : field.precision;
    return ContinuousFunction(field, n, RingSpec::padic(field.p, prec), YSupport::invertible,
                              [field, w](const GnPoint& pt, int j) { return Coeff(norm_weight(pt.x, w, field).reduced(j)); });
}

ContinuousFunction constant_function(const FieldData& field, int n, const Coeff& c, YSupport support) {
    RingSpec ring;
    if (c.is_padic()) {
        ring = RingSpec::padic(field.p, c.padic().precision());
    } else if (c.ring() == RingKind::rational) {
        ring = RingSpec::rational();
    } else {
        ring = RingSpec::cyclotomic(c.cyclotomic().order());
    }
    return ContinuousFunction(field, n, ring, support, [c](const GnPoint&, int) { return c; }, 1);
}

}  // namespace eism
