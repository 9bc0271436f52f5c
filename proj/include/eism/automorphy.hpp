#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <string>

namespace eism::automorphy {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// 2n x 2n matrix alpha with alpha^* J alpha = nu J, J = (0 -1; 1 0).
class GroupElement {
public:
    GroupElement(CMatrix m, double nu);
    static GroupElement identity(int n);
    // diag(h^{-*}, lambda h), similitude lambda > 0.
    static GroupElement levi(const CMatrix& h, double lambda);
    // (1 b; 0 1) for Hermitian b.
    static GroupElement unipotent(const CMatrix& b);
    static GroupElement eta(int n);

    int n() const { return static_cast<int>(m_.rows() / 2); }
    const CMatrix& matrix() const { return m_; }
    double nu() const { return nu_; }
    CMatrix a() const { return m_.topLeftCorner(n(), n()); }
    CMatrix b() const { return m_.topRightCorner(n(), n()); }
    CMatrix c() const { return m_.bottomLeftCorner(n(), n()); }
    CMatrix d() const { return m_.bottomRightCorner(n(), n()); }
    // Norm of alpha^* J alpha - nu J relative to |alpha|^2.
    double similitude_residual() const;

    friend GroupElement operator*(const GroupElement& x, const GroupElement& y);

private:
    CMatrix m_;
    double nu_;
};

CMatrix eta_of(const CMatrix& z);  // i(z^* - z)
bool in_domain(const CMatrix& z);
CMatrix i_one(int n);

// (a z + b)(c z + d)^{-1}; NearSingularAutomorphyFactor when c z + d is
// badly conditioned.
CMatrix act(const GroupElement& alpha, const CMatrix& z);

struct Factors {
    CMatrix lambda;  // c-bar z^T + d-bar
    CMatrix mu;      // c z + d
    Complex j;       // det mu
    double delta;    // det(eta(z) / 2)
};

Factors factors(const GroupElement& alpha, const CMatrix& z);

// j^{k,nu}_{alpha'}(z)^{-1} |j_{alpha'}(z)|^{-2(s - k/2)} delta(z)^{s - k/2},
// alpha' = nu(alpha)^{-1/2} alpha.
Complex section_infty(const GroupElement& alpha, const CMatrix& z, int k, int nu, double s);

struct CocycleResiduals {
    double lambda = 0;
    double mu = 0;
    double delta_law = 0;
    double max() const;
};

CocycleResiduals cocycle_check(const GroupElement& alpha, const GroupElement& beta, const CMatrix& z);
// |det lambda| = |j| and det lambda = det(alpha-bar) nu^{-n} j.
double det_lambda_residual(const GroupElement& alpha, const CMatrix& z);
// f(alpha g; i) against f(alpha; g i) f(g; i) delta(g i)^{k/2 - s}.
double factorization_residual(const GroupElement& alpha, const GroupElement& g, int k, int nu, double s);

// Product of 1..max_len random generators with entries bounded by 2.
GroupElement random_word(int n, std::mt19937_64& rng, int max_len = 8);

struct SelftestReport {
    int cases = 0;
    int skipped = 0;
    double cocycle = 0;
    double delta_law = 0;
    double det_lambda = 0;
    double factorization = 0;
    double seconds = 0;
    double max() const;
    std::string to_string() const;
};

// Runs each identity on `cases` random words, alternating n = 1 and n = 2.
SelftestReport selftest(int cases, std::uint64_t seed);

}  // namespace eism::automorphy
