#include "eism/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "eism/error.hpp"

namespace eism {

KMatrix::KMatrix(int n, std::vector<KElt> entries) : n_(n), e_(std::move(entries)) {
    if (n < 0 || e_.size() != static_cast<std::size_t>(n * n)) {
        fail(ErrorKind::ShapeMismatch, "matrix needs n*n entries");
    }
}

KMatrix KMatrix::identity(int n) { return scalar(n, KElt(1)); }

KMatrix KMatrix::scalar(int n, const KElt& v) {
    KMatrix m(n, std::vector<KElt>(static_cast<std::size_t>(n * n)));
    for (int i = 0; i < n; ++i) m(i, i) = v;
    return m;
}

KMatrix mul(const KMatrix& a, const KMatrix& b, const QuadraticField& K) {
    if (a.size() != b.size()) fail(ErrorKind::ShapeMismatch, "matrix sizes differ");
    const int n = a.size();
    KMatrix out = KMatrix::scalar(n, KElt(0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            KElt acc;
            for (int t = 0; t < n; ++t) acc = K.add(acc, K.mul(a(i, t), b(t, j)));
            out(i, j) = acc;
        }
    }
    return out;
}

KMatrix conj_transpose(const KMatrix& a, const QuadraticField& K) {
    KMatrix out = a;
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < a.size(); ++j) out(i, j) = K.conj(a(j, i));
    }
    return out;
}

KMatrix scale(const KMatrix& a, const KElt& c, const QuadraticField& K) {
    KMatrix out = a;
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < a.size(); ++j) out(i, j) = K.mul(c, a(i, j));
    }
    return out;
}

namespace {

// Row reduction shared by det and inverse; returns det and fills inv if asked.
KElt eliminate(const KMatrix& a, const QuadraticField& K, KMatrix* inv) {
    const int n = a.size();
    KMatrix m = a;
    KMatrix r = KMatrix::identity(n);
    KElt d(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int row = col; row < n; ++row) {
            if (!m(row, col).is_zero()) {
                piv = row;
                break;
            }
        }
        if (piv < 0) return KElt(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(r(piv, j), r(col, j));
            }
            d = K.neg(d);
        }
        KElt pv = m(col, col);
        d = K.mul(d, pv);
        KElt pinv = K.inv(pv);
        for (int j = 0; j < n; ++j) {
            m(col, j) = K.mul(m(col, j), pinv);
            r(col, j) = K.mul(r(col, j), pinv);
        }
        for (int row = 0; row < n; ++row) {
            if (row == col || m(row, col).is_zero()) continue;
            KElt f = m(row, col);
            for (int j = 0; j < n; ++j) {
                m(row, j) = K.sub(m(row, j), K.mul(f, m(col, j)));
                r(row, j) = K.sub(r(row, j), K.mul(f, r(col, j)));
            }
        }
    }
    if (inv) *inv = r;
    return d;
}

}  // namespace

KElt det(const KMatrix& a, const QuadraticField& K) { return eliminate(a, K, nullptr); }

KMatrix inverse(const KMatrix& a, const QuadraticField& K) {
    KMatrix out;
    if (eliminate(a, K, &out).is_zero()) fail(ErrorKind::SingularMatrix, "matrix is not invertible");
    return out;
}

bool is_hermitian(const KMatrix& a, const QuadraticField& K) { return conj_transpose(a, K) == a; }

HermitianMatrix::HermitianMatrix(const KMatrix& m, const QuadraticField& K) : m_(m) {
    if (!is_hermitian(m, K)) fail(ErrorKind::InvalidArgument, "matrix is not Hermitian");
    for (const auto& e : m.entries()) {
        if (!e.is_integral()) fail(ErrorKind::LatticeMismatch, "entry " + e.to_string() + " is not in O_K");
    }
    for (int i = 0; i < m.size(); ++i) {
        if (!m(i, i).is_rational()) fail(ErrorKind::InvalidArgument, "diagonal entry outside E");
    }
}

HermitianMatrix HermitianMatrix::scalar(long v) {
    return HermitianMatrix(KMatrix(1, {KElt(v)}), QuadraticField::rationals());
}

HermitianMatrix HermitianMatrix::identity(int n) {
    return HermitianMatrix(KMatrix::identity(n), QuadraticField::rationals());
}

mpz_class HermitianMatrix::trace() const {
    mpz_class t = 0;
    for (int i = 0; i < size(); ++i) t += m_(i, i).a.get_num();
    return t;
}

mpz_class HermitianMatrix::det(const QuadraticField& K) const {
    KElt d = eism::det(m_, K);
    if (!d.is_rational() || d.a.get_den() != 1) fail(ErrorKind::InvalidArgument, "determinant outside Z");
    return d.a.get_num();
}

bool HermitianMatrix::operator<(const HermitianMatrix& o) const {
    if (size() != o.size()) return size() < o.size();
    mpz_class t1 = trace(), t2 = o.trace();
    if (t1 != t2) return t1 < t2;
    for (int i = 0; i < size(); ++i) {
        for (int j = i; j < size(); ++j) {
            const KElt& x = m_(i, j);
            const KElt& y = o.m_(i, j);
            if (x.a != y.a) return x.a < y.a;
            if (x.b != y.b) return x.b < y.b;
        }
    }
    return false;
}

std::string HermitianMatrix::to_string() const {
    std::string s = "[";
    for (int i = 0; i < size(); ++i) {
        if (i) s += "; ";
        for (int j = 0; j < size(); ++j) {
            if (j) s += ", ";
            s += m_(i, j).to_string();
        }
    }
    return s + "]";
}

bool is_positive_definite(const KMatrix& beta, const QuadraticField& K) {
    if (!is_hermitian(beta, K)) return false;
    for (int j = 1; j <= beta.size(); ++j) {
        KMatrix minor = KMatrix::scalar(j, KElt(0));
        for (int r = 0; r < j; ++r) {
            for (int c = 0; c < j; ++c) minor(r, c) = beta(r, c);
        }
        KElt d = det(minor, K);
        if (!d.is_rational() || d.a <= 0) return false;
    }
    return true;
}

bool is_positive_definite(const HermitianMatrix& beta, const QuadraticField& K) {
    return is_positive_definite(beta.matrix(), K);
}

CuspData CuspData::single_term() {
    CuspData c;
    c.label = "identity";
    c.rule = [](const HermitianMatrix&) { return std::vector<CuspTerm>{{KElt(1), 1}}; };
    return c;
}

CuspData CuspData::divisor_rule(unsigned long p, bool unit_cofactor) {
    CuspData c;
    c.label = unit_cofactor ? "divisor" : "divisor-all-cofactors";
    c.unit_orbit_representatives = true;
    c.rule = [p, unit_cofactor](const HermitianMatrix& beta) {
        if (beta.size() != 1) fail(ErrorKind::UnsupportedSize, "the divisor rule is defined for n = 1 only");
        const KElt& v = beta(0, 0);
        if (!v.is_rational() || v.a.get_den() != 1 || v.a <= 0) {
            fail(ErrorKind::InvalidArgument, "divisor rule needs a positive integer index");
        }
        const mpz_class b = v.a.get_num();
        if (!b.fits_slong_p()) fail(ErrorKind::UnsupportedSize, "index too large for divisor enumeration");
        const long bl = b.get_si();
        const long pl = static_cast<long>(p);
        std::vector<long> divisors;
        for (long d = 1; d * d <= bl; ++d) {
            if (bl % d != 0) continue;
            divisors.push_back(d);
            if (d * d != bl) divisors.push_back(bl / d);
        }
        std::sort(divisors.begin(), divisors.end());
        std::vector<CuspTerm> out;
        for (long d : divisors) {
            if (d % pl == 0) continue;
            if (unit_cofactor && (bl / d) % pl == 0) continue;
            out.push_back({KElt(d), 1});
        }
        return out;
    };
    return c;
}

std::vector<HermitianMatrix> enumerate_positive(int n, long trace_bound, const CuspData& cusp,
                                                const FieldData& field) {
    if (n < 1 || n > 2) fail(ErrorKind::UnsupportedSize, "exhaustive enumeration supports n <= 2");
    if (trace_bound < 1) fail(ErrorKind::InvalidArgument, "trace bound must be at least 1");
    if (cusp.lattice != "standard") fail(ErrorKind::LatticeMismatch, "only the standard lattice is enumerable");
    const QuadraticField& K = field.K;
    std::vector<HermitianMatrix> out;
    if (n == 1) {
        for (long b = 1; b <= trace_bound; ++b) out.push_back(HermitianMatrix::scalar(b));
        return out;
    }
    const long t = K.trace_w();
    for (long a = 1; a < trace_bound; ++a) {
        for (long c = 1; a + c <= trace_bound; ++c) {
            const long ac = a * c;
            const long xb = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(ac)))) + 1;
            long yb = 0;
            if (!K.degenerate()) {
                yb = static_cast<long>(std::ceil(2.0 * std::sqrt(static_cast<double>(ac) /
                                                                 static_cast<double>(-K.disc())))) + 1;
            }
            for (long y = -yb; y <= yb; ++y) {
                for (long x = -xb - (t * std::abs(y) + 1) / 2; x <= xb + (t * std::abs(y) + 1) / 2; ++x) {
                    KElt b(x, y);
                    if (K.mul(b, K.conj(b)).a >= ac) continue;
                    KMatrix m(2, {KElt(a), b, K.conj(b), KElt(c)});
                    out.emplace_back(m, K);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

KMatrix gl_conjugate(const KMatrix& beta, const KMatrix& h, const KElt& lambda, const QuadraticField& K) {
    if (beta.size() != h.size()) fail(ErrorKind::ShapeMismatch, "beta and h have different sizes");
    if (lambda.is_zero()) fail(ErrorKind::SingularMatrix, "lambda is zero");
    KMatrix hinv = inverse(h, K);
    KMatrix out = mul(mul(conj_transpose(hinv, K), beta, K), hinv, K);
    return scale(out, K.inv(lambda), K);
}

}  // namespace eism
