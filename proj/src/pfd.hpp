#pragma once

#include "series.hpp"

namespace cgf {

/// The function z -> unit * scale * z^exponent (principal branch), with unit a
/// root of unity times +-1. scale == 0 encodes the zero function.
struct FracMonomial {
    Complex unit{1.0, 0.0};
    Rational scale{1};
    Rational exponent{0};

    bool is_zero() const { return scale == 0; }
    Complex eval(const Complex& z) const;

    static FracMonomial zero() { return {Complex(1.0, 0.0), Rational(0), Rational(0)}; }
};

/// All solutions of u^lambda = z^m: p * zeta^l with p the principal branch of
/// z^(m/lambda) and zeta = e^(i 2 pi / lambda).
CVec roots(long lambda, long m, const Complex& z);

/// One-dimensional decomposition of 1/(u^(mu-lambda+1) (u^lambda - z^m)):
/// poles at zero (sigma, order l+1) plus simple roots (tau at phi_l).
struct Pfd1D {
    long lambda = 1;
    long mu = 0;
    long m = 1;
    std::vector<FracMonomial> sigma;  // size max(mu-lambda+1, 0); zero entries possible
    std::vector<FracMonomial> tau;    // size lambda
};

Pfd1D pfd_1d(long lambda, long mu, long m);

/// Per-dimension factor of a product term: coefficient monomial plus the pole
/// location tag (root < 0 means the pole sits at zero).
struct PfdFactor {
    FracMonomial eta;
    int root = -1;
};

struct PfdTermND {
    Index ell;                       // derivative orders, ell_j > 0 forces a zero pole in dim j
    int nu = 0;                      // disambiguator within equal ell
    std::vector<PfdFactor> factors;  // one per dimension
};

/// The full decomposition for one residue class: the term list is the index
/// set with its coefficient and pole data.
struct PfdND {
    std::vector<long> r;
    std::vector<long> lambda, mu;  // per dimension, from the residue class
    std::vector<long> m;
    std::vector<PfdTermND> terms;
};

/// Builds the d-dimensional decomposition by induction on the dimension:
/// 1-D basis terms per variable, then Cartesian products with nu assigned by
/// lexicographic position of the constituent pair within equal ell.
PfdND pfd_nd(const CollatzMap& map, const std::vector<long>& r);

Complex eval_eta(const PfdTermND& term, const CVec& z);

/// Pole vector of a term: zero where tagged, else the principal-branch root.
CVec eval_phi(const PfdND& pfd, const PfdTermND& term, const CVec& z);

/// Coefficient and pole vector of a term with every root index rotated by
/// shift_j (mod lambda_j); the coefficient of a rotated root is recomputed
/// numerically as 1/(lambda phi^mu) so the result depends only on the root
/// value, not on the branch convention.
std::pair<Complex, CVec> eval_eta_phi_shifted(const PfdND& pfd, const PfdTermND& term, const CVec& z,
                                              const std::vector<int>& shift);

/// Sum of all terms eta(z) / prod (u_j - phi_j)^(ell_j + 1); the oracle side
/// of the decomposition. Throws PoleProximity when u comes too close to a pole.
Complex recombine_eval(const PfdND& pfd, const CVec& u, const CVec& z);

/// The rational function the decomposition must reproduce.
Complex kernel_direct(const PfdND& pfd, const CVec& u, const CVec& z);

}  // namespace cgf
