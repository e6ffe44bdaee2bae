#pragma once

#include <functional>

#include "pfd.hpp"

namespace cgf {

struct PolyCircle {
    std::vector<double> radii;
    int nodes_per_circle = 512;  // >= 4
};

struct QuadratureResult {
    Complex value;
    long nodes_used = 0;
    double est_error = 0.0;  // |M-node result - 2M-node result|
};

/// (1/2 pi i) times the contour integral of f over |u| = rho, by the periodic
/// trapezoidal rule with M nodes. Exact for Laurent monomials u^p, |p+1| < M.
QuadratureResult circle_integral(const std::function<Complex(const Complex&)>& f, double rho, int M);

/// Iterated (tensor-product) trapezoidal rule over the poly-circle, with the
/// 1/(2 pi i)^d prefactor. Supports d <= 3.
QuadratureResult polycircle_integral(const std::function<Complex(const CVec&)>& f, const PolyCircle& pc);

/// Midpoint radius strictly inside the admissible interval
/// (|z_j|^(m_j / lambda_j^max), 1) of the contour recursion.
std::vector<double> choose_radius(const CollatzMap& map, const CVec& z);

/// Quadrature evaluation of the contour-recursion right-hand side:
/// sum over residue classes of z^r times the poly-circle integral of the
/// kernel against the previous-level generating functions.
CVec contour_recursion_rhs(const CollatzMap& map, const SeriesVector& f_prev, const CVec& z,
                           const PolyCircle& pc);

}  // namespace cgf
