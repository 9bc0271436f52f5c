#include "eism/coeff.hpp"

#include <map>
#include <mutex>

#include "eism/error.hpp"

namespace eism {

int euler_phi(long m) {
    long result = m;
    long n = m;
    for (long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            while (n % q == 0) n /= q;
            result -= result / q;
        }
    }
    if (n > 1) result -= result / n;
    return static_cast<int>(result);
}

const std::vector<long>& cyclotomic_polynomial(int m) {
    static std::mutex mu;
    static std::map<int, std::vector<long>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    if (m < 1) fail(ErrorKind::InvalidArgument, "cyclotomic order must be positive");
    // x^m - 1 divided by Phi_d for every proper divisor d.
    std::vector<long> num(static_cast<std::size_t>(m) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(m)] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        const std::vector<long>& den = cyclotomic_polynomial(d);
        const long dd = static_cast<long>(den.size()) - 1;
        std::vector<long> quot(num.size() - static_cast<std::size_t>(dd), 0);
        for (long i = static_cast<long>(num.size()) - 1; i >= dd; --i) {
            long c = num[static_cast<std::size_t>(i)];
            quot[static_cast<std::size_t>(i - dd)] = c;
            for (long t = 0; t <= dd; ++t) num[static_cast<std::size_t>(i - dd + t)] -= c * den[static_cast<std::size_t>(t)];
        }
        num = quot;
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(m, num).first->second;
}

Cyclotomic::Cyclotomic(int m) : m_(m), c_(static_cast<std::size_t>(euler_phi(m)), 0) {
    if (m < 1) fail(ErrorKind::InvalidArgument, "cyclotomic order must be positive");
}

Cyclotomic Cyclotomic::from_rational(int m, const mpq_class& q) {
    Cyclotomic out(m);
    out.c_[0] = q;
    out.c_[0].canonicalize();
    return out;
}

void Cyclotomic::reduce_from(std::vector<mpq_class> full) {
    const std::vector<long>& phi = cyclotomic_polynomial(m_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = full.size(); i-- > deg;) {
        if (full[i] == 0) continue;
        mpq_class c = full[i];
        for (std::size_t t = 0; t <= deg; ++t) full[i - deg + t] -= c * phi[t];
    }
    full.resize(deg);
    c_ = std::move(full);
}

Cyclotomic Cyclotomic::zeta_power(int m, long e) {
    Cyclotomic out(m);
    long r = ((e % m) + m) % m;
    std::vector<mpq_class> full(static_cast<std::size_t>(std::max<long>(r + 1, out.c_.size())), 0);
    full[static_cast<std::size_t>(r)] = 1;
    out.reduce_from(std::move(full));
    return out;
}

Cyclotomic Cyclotomic::from_group_ring(int m, const std::vector<mpq_class>& c) {
    if (c.size() != static_cast<std::size_t>(m)) fail(ErrorKind::ShapeMismatch, "group ring vector length");
    Cyclotomic out(m);
    out.reduce_from(c);
    return out;
}

bool Cyclotomic::is_zero() const {
    for (const auto& v : c_) {
        if (v != 0) return false;
    }
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i) {
        if (c_[i] != 0) return false;
    }
    return true;
}

void Cyclotomic::check(const Cyclotomic& o) const {
    if (m_ != o.m_) {
        fail(ErrorKind::RingMismatch,
             "Q(zeta_" + std::to_string(m_) + ") vs Q(zeta_" + std::to_string(o.m_) + ")");
    }
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.check(b);
    std::vector<mpq_class> full(a.c_.size() + b.c_.size(), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) full[i + j] += a.c_[i] * b.c_[j];
    }
    Cyclotomic out(a.m_);
    out.reduce_from(std::move(full));
    return out;
}

Cyclotomic Cyclotomic::operator-() const { return scaled(-1); }

Cyclotomic Cyclotomic::scaled(const mpq_class& q) const {
    Cyclotomic out(*this);
    for (auto& v : out.c_) v *= q;
    return out;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const { return m_ == o.m_ && c_ == o.c_; }

std::string Cyclotomic::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c_[i].get_str() + ")";
        if (i > 0) s += "*z" + std::to_string(m_) + "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

std::string ring_name(RingKind kind) {
    switch (kind) {
        case RingKind::padic: return "padic";
        case RingKind::rational: return "rational";
        case RingKind::cyclotomic: return "cyclotomic";
    }
    return "unknown";
}

const PadicElt& Coeff::padic() const {
    if (!is_padic()) fail(ErrorKind::RingMismatch, "expected a p-adic value, have " + ring_name(ring()));
    return std::get<PadicElt>(v_);
}

const mpq_class& Coeff::rational() const {
    if (ring() != RingKind::rational) {
        fail(ErrorKind::RingMismatch, "expected a rational value, have " + ring_name(ring()));
    }
    return std::get<mpq_class>(v_);
}

const Cyclotomic& Coeff::cyclotomic() const {
    if (ring() != RingKind::cyclotomic) {
        fail(ErrorKind::RingMismatch, "expected a cyclotomic value, have " + ring_name(ring()));
    }
    return std::get<Cyclotomic>(v_);
}

bool Coeff::is_zero() const {
    switch (ring()) {
        case RingKind::padic: return padic().is_zero();
        case RingKind::rational: return rational() == 0;
        case RingKind::cyclotomic: return cyclotomic().is_zero();
    }
    return false;
}

int Coeff::valuation(unsigned long p) const {
    switch (ring()) {
        case RingKind::padic: return padic().valuation();
        case RingKind::rational: {
            const mpq_class& q = rational();
            if (q == 0) return kInfiniteValuation;
            return valuation_of(q.get_num(), p) - valuation_of(q.get_den(), p);
        }
        case RingKind::cyclotomic: break;
    }
    fail(ErrorKind::RingMismatch, "valuation on cyclotomic values is not defined here");
}

namespace {

void same_ring(const Coeff& a, const Coeff& b) {
    if (a.ring() != b.ring()) {
        fail(ErrorKind::RingMismatch, "mixing " + ring_name(a.ring()) + " and " + ring_name(b.ring()));
    }
}

}  // namespace

Coeff Coeff::operator-() const {
    switch (ring()) {
        case RingKind::padic: return Coeff(-padic());
        case RingKind::rational: return Coeff(mpq_class(-rational()));
        case RingKind::cyclotomic: return Coeff(-cyclotomic());
    }
    return *this;
}

Coeff operator+(const Coeff& a, const Coeff& b) {
    same_ring(a, b);
    switch (a.ring()) {
        case RingKind::padic: return Coeff(a.padic() + b.padic());
        case RingKind::rational: return Coeff(mpq_class(a.rational() + b.rational()));
        case RingKind::cyclotomic: return Coeff(a.cyclotomic() + b.cyclotomic());
    }
    return a;
}

Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }

Coeff operator*(const Coeff& a, const Coeff& b) {
    same_ring(a, b);
    switch (a.ring()) {
        case RingKind::padic: return Coeff(a.padic() * b.padic());
        case RingKind::rational: return Coeff(mpq_class(a.rational() * b.rational()));
        case RingKind::cyclotomic: return Coeff(a.cyclotomic() * b.cyclotomic());
    }
    return a;
}

bool Coeff::operator==(const Coeff& o) const {
    same_ring(*this, o);
    switch (ring()) {
        case RingKind::padic: return padic() == o.padic();
        case RingKind::rational: return rational() == o.rational();
        case RingKind::cyclotomic: return cyclotomic() == o.cyclotomic();
    }
    return false;
}

Coeff Coeff::reduced(int j) const {
    if (is_padic()) return Coeff(padic().reduced(j));
    return *this;
}

std::string Coeff::to_string() const {
    switch (ring()) {
        case RingKind::padic: return padic().to_string();
        case RingKind::rational: return rational().get_str();
        case RingKind::cyclotomic: return cyclotomic().to_string();
    }
    return "?";
}

Coeff RingSpec::from_rational(const mpq_class& q) const {
    switch (kind) {
        case RingKind::padic: return Coeff(PadicElt::from_rational(q, p, precision));
        case RingKind::rational: return Coeff(q);
        case RingKind::cyclotomic: return Coeff(Cyclotomic::from_rational(cyclo_order, q));
    }
    fail(ErrorKind::InvalidArgument, "unknown ring");
}

bool congruent(const Coeff& a, const Coeff& b, int j, unsigned long p) {
    same_ring(a, b);
    if (a.is_padic()) return congruent(a.padic(), b.padic(), j);
    if (a.ring() == RingKind::rational) {
        Coeff d = a - b;
        int v = d.valuation(p);
        return v >= j;
    }
    fail(ErrorKind::RingMismatch, "congruences of cyclotomic values are not supported");
}

}  // namespace eism
