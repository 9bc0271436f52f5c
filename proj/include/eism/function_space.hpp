#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "eism/coeff.hpp"
#include "eism/field.hpp"

namespace eism {

// n x n matrix over Z_p (one place of E = Q).
class PMatrix {
public:
    PMatrix() = default;
    PMatrix(int n, std::vector<PadicElt> entries);
    static PMatrix identity(int n, unsigned long p, int precision);

    int size() const { return n_; }
    const PadicElt& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * n_ + j)]; }
    PadicElt& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * n_ + j)]; }
    const std::vector<PadicElt>& entries() const { return e_; }
    int precision() const;

    PadicElt det() const;
    PMatrix inverse() const;  // NotAUnit when det is not a unit
    PMatrix transpose() const;
    PMatrix scaled(const PadicElt& c) const;
    friend PMatrix operator*(const PMatrix& a, const PMatrix& b);
    bool operator==(const PMatrix& o) const = default;

private:
    int n_ = 0;
    std::vector<PadicElt> e_;
};

// Leading j x j minor.
PadicElt leading_minor(const PMatrix& m, int j);

struct GnPoint {
    CMElt x;
    std::vector<PMatrix> y;  // one matrix per place

    int precision() const;
};

enum class YSupport { all, invertible };

using CosetKey = std::vector<std::int64_t>;

struct CosetKeyHash {
    std::size_t operator()(const CosetKey& k) const noexcept;
};

// Coordinates: the x components (sigma, sigma-bar per place in unitary mode),
// followed by the entries of y row by row, each reduced modulo p^level.
CosetKey coset_key(const GnPoint& pt, const FieldData& field, int level);
GnPoint coset_point(const CosetKey& key, const FieldData& field, int n, int precision);
std::size_t x_coset_count(const FieldData& field, int level);
std::size_t y_coset_count(const FieldData& field, int n, int level, YSupport support);
void for_each_x_coset(const FieldData& field, int level, const std::function<void(const CosetKey&)>& fn);
void for_each_y_coset(const FieldData& field, int n, int level, YSupport support,
                      const std::function<void(const CosetKey&)>& fn);
bool key_in_support(const CosetKey& key, const FieldData& field, int n, int level, YSupport support);

// Random point with unit x and (if requested) invertible y.
GnPoint random_point(const FieldData& field, int n, int precision, YSupport support, std::mt19937_64& rng);
// Image of pt under x -> e x, y -> N(e)^power y.
GnPoint act_by_unit(const GnPoint& pt, const KElt& e, const FieldData& field, int norm_power);

inline constexpr std::size_t kDefaultMaxCells = std::size_t{1} << 22;

class LCFunction {
public:
    using Table = std::unordered_map<CosetKey, Coeff, CosetKeyHash>;

    LCFunction(FieldData field, int n, int level, RingSpec ring, YSupport support = YSupport::invertible);

    const FieldData& field() const { return field_; }
    int n() const { return n_; }
    int level() const { return level_; }
    const RingSpec& ring() const { return ring_; }
    YSupport support() const { return support_; }
    const Table& entries() const { return table_; }

    // Zero values are not stored.
    void set(const CosetKey& key, const Coeff& value);
    Coeff at(const CosetKey& key) const;
    Coeff evaluate(const GnPoint& pt, int j) const;

    LCFunction lifted_to(int level, std::size_t max_cells = kDefaultMaxCells) const;
    LCFunction scaled(const Coeff& c) const;
    friend LCFunction operator+(const LCFunction& a, const LCFunction& b);

private:
    FieldData field_;
    int n_;
    int level_;
    RingSpec ring_;
    YSupport support_;
    Table table_;
};

class ContinuousFunction {
public:
    // evaluator(pt, j) returns F(pt) mod p^j (exact for exact rings) and may
    // assume that pt lies in the support.
    using Evaluator = std::function<Coeff(const GnPoint&, int)>;

    ContinuousFunction(FieldData field, int n, RingSpec ring, YSupport support, Evaluator eval,
                       int level = 0);
    ContinuousFunction(const LCFunction& table);

    const FieldData& field() const { return field_; }
    int n() const { return n_; }
    const RingSpec& ring() const { return ring_; }
    YSupport support() const { return support_; }
    // 0 when the function is not known to be locally constant.
    int level() const { return level_; }
    const LCFunction* table() const { return table_.get(); }

    bool in_support(const GnPoint& pt) const;
    Coeff evaluate(const GnPoint& pt, int j) const;
    // The level-max(j, level) table of values mod p^j.
    LCFunction truncate(int j, std::size_t max_cells = kDefaultMaxCells) const;

    ContinuousFunction scaled(const Coeff& c) const;
    friend ContinuousFunction operator+(const ContinuousFunction& a, const ContinuousFunction& b);
    friend ContinuousFunction operator*(const ContinuousFunction& a, const ContinuousFunction& b);

private:
    FieldData field_;
    int n_;
    RingSpec ring_;
    YSupport support_;
    Evaluator eval_;
    int level_;
    std::shared_ptr<const LCFunction> table_;
};

Coeff evaluate(const ContinuousFunction& F, const GnPoint& pt, int j);

struct SymmetryReport {
    bool pass = true;
    std::string witness;
    explicit operator bool() const { return pass; }
};

struct SampleOptions {
    int samples = 32;
    std::uint64_t seed = 1;
    // 0 means the field precision (or the table level for tables).
    int precision = 0;
    // Skip -1 when a cusp rule already sums over +-1 orbit representatives.
    bool skip_minus_one = false;
};

// F(e x, N(e)^{-1} y) = N_{k,nu}(e) F(x, y) for every unit e.
SymmetryReport check_equivariance(const ContinuousFunction& F, const Weight& w, const SampleOptions& opts = {});
// H(e x, N(e) y) = H(x, y) for every unit e.
SymmetryReport check_unit_invariance(const ContinuousFunction& H, const SampleOptions& opts = {});

// N_{a,nu}(x^{-1} N(x)^n det y) at pt, for Weight{a, nu}.
PadicElt twist_factor(const GnPoint& pt, const Weight& w, const FieldData& field, int n);

ContinuousFunction h_to_f(const ContinuousFunction& H);
ContinuousFunction f_to_h(const ContinuousFunction& F);
ContinuousFunction weight_twist(const ContinuousFunction& F, const Weight& w);
// Divides by the twist instead of multiplying.
ContinuousFunction weight_untwist(const ContinuousFunction& F, const Weight& w);

// Averages H(e x, N(e) y) over the units; requires p not dividing |O_K^x|.
ContinuousFunction symmetrize(const ContinuousFunction& H);
// Averages N_{k,nu}(e)^{-1} F(e x, N(e)^{-1} y).
ContinuousFunction symmetrize_equivariant(const ContinuousFunction& F, const Weight& w);
LCFunction symmetrize(const LCFunction& H);
LCFunction symmetrize_equivariant(const LCFunction& F, const Weight& w);

PadicElt teichmuller(const PadicElt& u);

// A character of Z_p^x: u -> chi_fin(u) * omega(u)^teich * u^power, where
// chi_fin is an optional table on (Z/p^c)^x.
struct PadicCharacter {
    int teich = 0;
    int power = 0;
    int table_level = 0;
    std::unordered_map<long, PadicElt> table;  // residue mod p^table_level -> value

    int level(unsigned long p) const;
    PadicElt operator()(const PadicElt& u) const;
};

struct PartitionSpec {
    std::vector<int> parts;              // n = n_1 + ... + n_r
    std::vector<PadicCharacter> rho;     // one per part
};

// chi on x: one character per x component.
struct XCharacter {
    std::vector<PadicCharacter> components;
    int level(unsigned long p) const;
    PadicElt operator()(const CMElt& x) const;
};

// F_rho(m) = prod_i rho_i(det_{n_1+...+n_i}(m)), zero off GL_n.
PadicElt partition_value(const PartitionSpec& spec, const PMatrix& m);
ContinuousFunction partition_function_continuous(const PartitionSpec& spec, const XCharacter& chi,
                                                 const FieldData& field, int n);
// chi(x) N_{n,0}(x) F_rho(N(x) y^T) tabulated at the given level.
LCFunction partition_function(const PartitionSpec& spec, const XCharacter& chi, const FieldData& field,
                              int n, int level);

// Character of (O_K (x) Z/p^j)^x, x -> zeta_m^{sum s_i log_g(x_i)}.
struct FiniteCharacter {
    int level = 1;
    int order = 1;               // m = phi(p^j)
    std::vector<int> exponents;  // s_i in [0, m)
    bool is_trivial() const;
    std::string to_string() const;
};

struct CharacterComponent {
    FiniteCharacter chi;
    LCFunction component;
};

// Discrete logarithm data for the cyclic group (Z/p^j)^x.
struct CyclicUnits {
    unsigned long p = 0;
    int level = 1;
    long modulus = 1;
    long order = 1;
    long generator = 1;
    std::vector<long> log;  // log[r] for units r, -1 otherwise
    std::vector<long> exp;  // generator^e mod p^j

    static CyclicUnits make(unsigned long p, int level);
};

// p-adic tables decompose only at j = 1 (Teichmueller characters); rational
// tables decompose over Q(zeta_m).
std::vector<CharacterComponent> character_decompose(const LCFunction& F, int j,
                                                    std::size_t max_cells = kDefaultMaxCells);
Coeff character_value(const FiniteCharacter& chi, const CosetKey& key, const FieldData& field,
                      const RingSpec& ring);

struct MonomialSpec {
    std::vector<long> x_exps;   // per x component (sigma, sigma-bar)
    std::vector<long> teich;    // omega(x_c)^s per x component
    long nx_exp = 0;            // N_{K/E}(x)^a
    long ydet_exp = 0;          // det(y)^b
    mpq_class scalar = 1;
};

ContinuousFunction monomial_function(const FieldData& field, int n, const MonomialSpec& spec,
                                     YSupport support = YSupport::invertible, int precision = 0);
// F(x, y) = N_{k,nu}(x): the equivariant extension of 1 for weight (k, nu).
ContinuousFunction weight_character_function(const FieldData& field, int n, const Weight& w, int precision = 0);
ContinuousFunction constant_function(const FieldData& field, int n, const Coeff& c,
                                     YSupport support = YSupport::invertible);

}  // namespace eism
