#include "eism/automorphy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "eism/error.hpp"

namespace eism::automorphy {

namespace {

const Complex kI(0, 1);

CMatrix j_form(int n) {
    CMatrix J = CMatrix::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = -CMatrix::Identity(n, n);
    J.bottomLeftCorner(n, n) = CMatrix::Identity(n, n);
    return J;
}

Complex ipow(Complex z, int e) {
    if (e < 0) return 1.0 / ipow(z, -e);
    Complex r = 1;
    for (int i = 0; i < e; ++i) r *= z;
    return r;
}

double rel(double diff, double scale) { return diff / std::max(scale, 1e-300); }

double rel(const CMatrix& lhs, const CMatrix& rhs) { return rel((lhs - rhs).norm(), rhs.norm()); }

double rel(Complex lhs, Complex rhs) { return rel(std::abs(lhs - rhs), std::abs(rhs)); }

}  // namespace

GroupElement::GroupElement(CMatrix m, double nu) : m_(std::move(m)), nu_(nu) {
    if (m_.rows() != m_.cols() || m_.rows() % 2 != 0 || m_.rows() == 0) {
        fail(ErrorKind::ShapeMismatch, "group elements are 2n x 2n");
    }
}

GroupElement GroupElement::identity(int n) { return GroupElement(CMatrix::Identity(2 * n, 2 * n), 1.0); }

GroupElement GroupElement::levi(const CMatrix& h, double lambda) {
    if (lambda <= 0) fail(ErrorKind::InvalidArgument, "similitude must be positive");
    const int n = static_cast<int>(h.rows());
    CMatrix m = CMatrix::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = h.adjoint().inverse();
    m.bottomRightCorner(n, n) = lambda * h;
    return GroupElement(std::move(m), lambda);
}

GroupElement GroupElement::unipotent(const CMatrix& b) {
    const int n = static_cast<int>(b.rows());
    if ((b - b.adjoint()).norm() > 1e-12 * std::max(1.0, b.norm())) {
        fail(ErrorKind::InvalidArgument, "b must be Hermitian");
    }
    CMatrix m = CMatrix::Identity(2 * n, 2 * n);
    m.topRightCorner(n, n) = b;
    return GroupElement(std::move(m), 1.0);
}

GroupElement GroupElement::eta(int n) { return GroupElement(j_form(n), 1.0); }

double GroupElement::similitude_residual() const {
    CMatrix J = j_form(n());
    return rel(m_.adjoint() * J * m_, nu_ * J);
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    if (x.n() != y.n()) fail(ErrorKind::ShapeMismatch, "group elements of different sizes");
    return GroupElement(x.m_ * y.m_, x.nu_ * y.nu_);
}

CMatrix eta_of(const CMatrix& z) { return kI * (z.adjoint() - z); }

bool in_domain(const CMatrix& z) {
    CMatrix e = eta_of(z);
    CMatrix herm = (e + e.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    return es.eigenvalues().minCoeff() > 0;
}

CMatrix i_one(int n) { return kI * CMatrix::Identity(n, n); }

namespace {

CMatrix checked_inverse(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0) || smax / smin > 1e10) {
        fail(ErrorKind::NearSingularAutomorphyFactor, "c z + d is numerically singular");
    }
    return m.inverse();
}

}  // namespace

CMatrix act(const GroupElement& alpha, const CMatrix& z) {
    if (z.rows() != alpha.n()) fail(ErrorKind::ShapeMismatch, "point and group element sizes differ");
    return (alpha.a() * z + alpha.b()) * checked_inverse(alpha.c() * z + alpha.d());
}

Factors factors(const GroupElement& alpha, const CMatrix& z) {
    Factors f;
    f.mu = alpha.c() * z + alpha.d();
    checked_inverse(f.mu);
    f.lambda = alpha.c().conjugate() * z.transpose() + alpha.d().conjugate();
    f.j = f.mu.determinant();
    f.delta = (eta_of(z) / 2.0).determinant().real();
    return f;
}

Complex section_infty(const GroupElement& alpha, const CMatrix& z, int k, int nu, double s) {
    if (alpha.nu() <= 0) fail(ErrorKind::InvalidArgument, "similitude must be positive");
    GroupElement scaled(alpha.matrix() / std::sqrt(alpha.nu()), 1.0);
    Factors f = factors(scaled, z);
    Complex jkn = ipow(f.j, k + nu) * ipow(f.lambda.determinant(), -nu);
    const double e = s - k / 2.0;
    return 1.0 / jkn * std::pow(std::abs(f.j), -2.0 * e) * std::pow(f.delta, e);
}

double CocycleResiduals::max() const { return std::max({lambda, mu, delta_law}); }

CocycleResiduals cocycle_check(const GroupElement& alpha, const GroupElement& beta, const CMatrix& z) {
    CocycleResiduals r;
    GroupElement ba = beta * alpha;
    CMatrix az = act(alpha, z);
    Factors f_ba = factors(ba, z);
    Factors f_b = factors(beta, az);
    Factors f_a = factors(alpha, z);
    r.lambda = rel(f_ba.lambda, f_b.lambda * f_a.lambda);
    r.mu = rel(f_ba.mu, f_b.mu * f_a.mu);
    const double delta_az = (eta_of(az) / 2.0).determinant().real();
    const double predicted = std::pow(alpha.nu(), alpha.n()) * std::pow(std::abs(f_a.j), -2.0) * f_a.delta;
    r.delta_law = rel(std::abs(delta_az - predicted), std::abs(predicted));
    return r;
}

double det_lambda_residual(const GroupElement& alpha, const CMatrix& z) {
    Factors f = factors(alpha, z);
    Complex dl = f.lambda.determinant();
    double r1 = rel(std::abs(std::abs(dl) - std::abs(f.j)), std::abs(f.j));
    Complex predicted = std::conj(alpha.matrix().determinant()) * std::pow(alpha.nu(), -alpha.n()) * f.j;
    double r2 = rel(dl, predicted);
    return std::max(r1, r2);
}

double factorization_residual(const GroupElement& alpha, const GroupElement& g, int k, int nu, double s) {
    const int n = alpha.n();
    CMatrix z = act(g, i_one(n));
    Complex lhs = section_infty(alpha * g, i_one(n), k, nu, s);
    const double delta_z = (eta_of(z) / 2.0).determinant().real();
    Complex rhs = section_infty(alpha, z, k, nu, s) * section_infty(g, i_one(n), k, nu, s) *
                  std::pow(delta_z, k / 2.0 - s);
    return rel(lhs, rhs);
}

GroupElement random_word(int n, std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len_dist(1, std::max(1, max_len));
    std::uniform_int_distribution<int> kind_dist(0, 2);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> lam(0.5, 2.0);
    GroupElement w = GroupElement::identity(n);
    const int len = len_dist(rng);
    for (int t = 0; t < len; ++t) {
        switch (kind_dist(rng)) {
            case 0: {
                CMatrix h = CMatrix::Identity(n, n);
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) h(i, j) += Complex(0.5 * unit(rng), 0.5 * unit(rng));
                }
                w = w * GroupElement::levi(h, lam(rng));
                break;
            }
            case 1: {
                CMatrix b(n, n);
                for (int i = 0; i < n; ++i) {
                    b(i, i) = 2.0 * unit(rng);
                    for (int j = i + 1; j < n; ++j) {
                        b(i, j) = Complex(unit(rng), unit(rng));
                        b(j, i) = std::conj(b(i, j));
                    }
                }
                w = w * GroupElement::unipotent(b);
                break;
            }
            default:
                w = w * GroupElement::eta(n);
        }
    }
    return w;
}

double SelftestReport::max() const { return std::max({cocycle, delta_law, det_lambda, factorization}); }

std::string SelftestReport::to_string() const {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "cases=%d skipped=%d max_residual: cocycle=%.3e delta_law=%.3e det_lambda=%.3e "
                  "factorization=%.3e",
                  cases, skipped, cocycle, delta_law, det_lambda, factorization);
    return buf;
}

SelftestReport selftest(int cases, std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> kdist(1, 6);
    std::uniform_int_distribution<int> nudist(-1, 1);
    std::uniform_real_distribution<double> sdist(0.0, 3.0);
    SelftestReport rep;
    while (rep.cases < cases) {
        const int n = 1 + rep.cases % 2;
        GroupElement alpha = random_word(n, rng);
        GroupElement beta = random_word(n, rng);
        GroupElement g = random_word(n, rng);
        const int k = kdist(rng);
        const int nu = nudist(rng);
        const double s = sdist(rng);
        try {
            CMatrix z = act(g, i_one(n));
            CocycleResiduals c = cocycle_check(alpha, beta, z);
            double dl = det_lambda_residual(alpha, z);
            double fr = factorization_residual(alpha, g, k, nu, s);
            rep.cocycle = std::max({rep.cocycle, c.lambda, c.mu});
            rep.delta_law = std::max(rep.delta_law, c.delta_law);
            rep.det_lambda = std::max(rep.det_lambda, dl);
            rep.factorization = std::max(rep.factorization, fr);
            ++rep.cases;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NearSingularAutomorphyFactor) throw;
            ++rep.skipped;
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace eism::automorphy
