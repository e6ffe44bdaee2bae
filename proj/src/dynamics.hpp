#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "errors.hpp"

namespace cgf {

using BigInt = mpz_class;
using Rational = mpq_class;  // canonicalized on construction, denominator >= 1

/// Point of the lattice of nonnegative integer vectors (orbit values, exponents).
using LatticePoint = std::vector<BigInt>;

/// Small multi-index used for truncation boxes and derivative orders.
using Index = std::vector<int>;

bool is_nonneg_integer(const Rational& q);
bool is_positive_integer(const Rational& q);

LatticePoint to_lattice(const std::vector<long>& v);
double max_norm(const LatticePoint& n);

/// One residue class of a map: t(n) = A n + b on the class, with the derived
/// integer data lambda = A m and mu = A r + b.
struct Branch {
    std::vector<std::vector<Rational>> A;  // d x d
    std::vector<Rational> b;               // d
    std::vector<long> lambda;              // d, positive
    std::vector<long> mu;                  // d, nonnegative
};

struct GrowthBound {
    Rational amax;                 // ||a||inf for d=1, d*||A||inf for d>1
    Rational bmax;                 // ||b||inf / ||B||inf
    std::optional<Rational> chi;   // bmax/(amax-1), absent when amax = 1
};

/// A validated piecewise-affine map on the lattice of nonnegative integer
/// vectors, branch selected by the componentwise residue mod m. A value of
/// this type existing certifies the integrality conditions on every class.
class CollatzMap {
  public:
    CollatzMap(int d, std::vector<long> m, std::vector<Branch> branches_lex);

    int dim() const { return d_; }
    const std::vector<long>& modulus() const { return m_; }
    long residue_count() const { return static_cast<long>(branches_.size()); }

    /// Branches in lexicographic order of the residue vector (canonical order).
    const std::vector<Branch>& branches() const { return branches_; }
    const Branch& branch(const std::vector<long>& r) const;
    std::vector<long> residue_at(long lex_pos) const;

    const GrowthBound& growth() const { return growth_; }
    long lambda_max(int j) const { return lambda_max_[j]; }

  private:
    int d_;
    std::vector<long> m_;
    std::vector<Branch> branches_;
    GrowthBound growth_;
    std::vector<long> lambda_max_;
};

/// Raw per-residue data prior to validation.
struct RawBranch {
    std::vector<long> r;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
};

/// Checks the integrality conditions on every residue class and computes the
/// derived lambda/mu data. Throws ValidationError on the first violation.
CollatzMap validate_map(int d, const std::vector<long>& m, const std::vector<RawBranch>& raw);

/// Componentwise quotient-remainder: n = q*m + r with 0 <= r_j < m_j.
std::pair<LatticePoint, std::vector<long>> residue_decompose(const LatticePoint& n,
                                                             const std::vector<long>& m);

/// One exact application of the map.
LatticePoint step(const CollatzMap& map, const LatticePoint& n);

/// Orbit [t_0(n), ..., t_k(n)], t_0(n) = n.
std::vector<LatticePoint> iterate(const CollatzMap& map, const LatticePoint& n, int k);

/// Closed-form upper bound on ||t_k(n)||inf from the geometric growth estimate.
double coefficient_bound(const CollatzMap& map, const LatticePoint& n, int k);

/// Lower bound on the w-convergence radius of the bivariate series.
double radius_R_w(const CollatzMap& map);

}  // namespace cgf
