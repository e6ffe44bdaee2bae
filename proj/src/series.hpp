#pragma once

#include <complex>
#include <vector>

#include "dynamics.hpp"

namespace cgf {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Box-truncated multivariate power series with dense complex coefficients.
/// Coefficient of multi-index n (all n_j < limits[j]) sits at the row-major
/// position with the last variable fastest.
class TruncatedSeries {
  public:
    TruncatedSeries(Index limits, std::vector<Complex> coeffs);

    int dim() const { return static_cast<int>(limits_.size()); }
    const Index& limits() const { return limits_; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    const Complex& at(const Index& n) const;  // throws OutOfBox

  private:
    Index limits_;
    std::vector<Complex> coeffs_;
};

struct SeriesVector {
    std::vector<TruncatedSeries> components;  // shared dimension and limits
};

inline constexpr long kDefaultCoeffBudget = 1L << 24;

/// Truncation of the orbit generating functions: component j carries
/// t_{j,k}(n) at exponent n for every n in the box, by exact iteration.
SeriesVector orbit_series(const CollatzMap& map, int k, const Index& limits,
                          long budget = kDefaultCoeffBudget);

/// All truncation levels 0..k at once, sharing the exact orbits (cheaper than
/// repeated orbit_series calls when a whole range is needed).
std::vector<SeriesVector> orbit_series_levels(const CollatzMap& map, int k, const Index& limits,
                                              long budget = kDefaultCoeffBudget);

/// Nested Horner evaluation of the truncated sum.
Complex eval(const TruncatedSeries& s, const CVec& z);

Complex coefficient(const TruncatedSeries& s, const Index& n);

/// Derivative of order ell of the truncation, evaluated at z.
Complex eval_derivative(const TruncatedSeries& s, const Index& ell, const CVec& z);

/// Evaluates every component of a series vector at z.
CVec eval_vector(const SeriesVector& f, const CVec& z);
CVec eval_derivative_vector(const SeriesVector& f, const Index& ell, const CVec& z);

/// Evaluates a series on a full tensor grid of per-variable nodes,
/// nodes[j] holding the values of variable j. Output is row-major over the
/// node grid (last variable fastest).
std::vector<Complex> eval_on_grid(const TruncatedSeries& s, const std::vector<CVec>& nodes);

/// Upper bound on |sum over exponents outside the box of t_{j,k}(n) z^n| for
/// every component j, uniformly over ||z||inf <= componentwise rho, from the
/// geometric growth estimate |t_k(n)| <= C prod (n_j + 1).
double tail_bound(const CollatzMap& map, int k, const Index& limits, const std::vector<double>& rho);

/// Like tail_bound but for the series of derivatives of order ell.
double tail_bound_derivative(const CollatzMap& map, int k, const Index& limits,
                             const std::vector<double>& rho, const Index& ell);

/// Growth constant C(k) with |t_{j,k}(n)| <= C(k) prod (n_j + 1).
double growth_constant(const CollatzMap& map, int k);

/// Exact closed form of the initial generating function, component j equal to
/// z_j / ((1 - z_j)^2 prod_{l != j} (1 - z_l)).
CVec closed_form_f0(const CollatzMap& map, const CVec& z);

}  // namespace cgf
