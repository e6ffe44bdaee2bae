#include "quadrature.hpp"

#include <cmath>
#include <numbers>

namespace cgf {

namespace {

// Kahan-compensated accumulator; summation order is fixed by the caller.
struct Kahan {
    Complex sum{0.0, 0.0};
    Complex c{0.0, 0.0};
    void add(const Complex& x) {
        const Complex y = x - c;
        const Complex t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

CVec circle_nodes(double rho, int M) {
    CVec u(M);
    for (int s = 0; s < M; ++s) {
        const double theta = 2.0 * std::numbers::pi * s / M;
        u[s] = rho * Complex(std::cos(theta), std::sin(theta));
    }
    return u;
}

Complex trapezoid_once(const std::function<Complex(const Complex&)>& f, double rho, int M) {
    const CVec u = circle_nodes(rho, M);
    Kahan acc;
    for (int s = 0; s < M; ++s) {
        const Complex fu = f(u[s]);
        if (!std::isfinite(fu.real()) || !std::isfinite(fu.imag()))
            throw NonFiniteSample("non-finite integrand sample on the contour");
        acc.add(fu * u[s]);
    }
    return acc.sum / static_cast<double>(M);
}

Complex tensor_trapezoid(const std::function<Complex(const CVec&)>& f, const std::vector<double>& radii,
                         int M) {
    const int d = static_cast<int>(radii.size());
    std::vector<CVec> nodes(d);
    for (int j = 0; j < d; ++j) nodes[j] = circle_nodes(radii[j], M);

    Kahan acc;
    std::vector<int> s(d, 0);
    CVec u(d);
    const long total = static_cast<long>(std::pow(static_cast<double>(M), d) + 0.5);
    for (long it = 0; it < total; ++it) {
        Complex jac(1.0, 0.0);
        for (int j = 0; j < d; ++j) {
            u[j] = nodes[j][s[j]];
            jac *= u[j];
        }
        const Complex fu = f(u);
        if (!std::isfinite(fu.real()) || !std::isfinite(fu.imag()))
            throw NonFiniteSample("non-finite integrand sample on the poly-circle");
        acc.add(fu * jac);
        for (int j = d - 1; j >= 0; --j) {
            if (++s[j] < M) break;
            s[j] = 0;
        }
    }
    return acc.sum / std::pow(static_cast<double>(M), d);
}

}  // namespace

QuadratureResult circle_integral(const std::function<Complex(const Complex&)>& f, double rho, int M) {
    if (M < 4) throw Error("at least 4 quadrature nodes required");
    const Complex v = trapezoid_once(f, rho, M);
    const Complex v2 = trapezoid_once(f, rho, 2 * M);
    return {v, M, std::abs(v - v2)};
}

QuadratureResult polycircle_integral(const std::function<Complex(const CVec&)>& f, const PolyCircle& pc) {
    const int d = static_cast<int>(pc.radii.size());
    if (d > 3) throw BudgetExceeded("tensor-product quadrature supports at most 3 dimensions");
    if (pc.nodes_per_circle < 4) throw Error("at least 4 quadrature nodes required");
    const Complex v = tensor_trapezoid(f, pc.radii, pc.nodes_per_circle);
    const Complex v2 = tensor_trapezoid(f, pc.radii, 2 * pc.nodes_per_circle);
    return {v, pc.nodes_per_circle, std::abs(v - v2)};
}

std::vector<double> choose_radius(const CollatzMap& map, const CVec& z) {
    const int d = map.dim();
    std::vector<double> rho(d);
    for (int j = 0; j < d; ++j) {
        const double az = std::abs(z[j]);
        if (az <= 0.0 || az >= 1.0) throw DomainViolation("admissible radii require 0 < |z_j| < 1");
        const double lower = std::pow(az, static_cast<double>(map.modulus()[j]) / map.lambda_max(j));
        rho[j] = 0.5 * (lower + 1.0);
    }
    return rho;
}

CVec contour_recursion_rhs(const CollatzMap& map, const SeriesVector& f_prev, const CVec& z,
                           const PolyCircle& pc) {
    const int d = map.dim();
    if (d > 3) throw BudgetExceeded("tensor-product quadrature supports at most 3 dimensions");
    const int M = pc.nodes_per_circle;
    if (M < 4) throw Error("at least 4 quadrature nodes required");

    std::vector<CVec> nodes(d);
    for (int j = 0; j < d; ++j) nodes[j] = circle_nodes(pc.radii[j], M);

    // previous-level series on the full node grid, shared across residue classes
    std::vector<std::vector<Complex>> fgrid(d);
    for (int c = 0; c < d; ++c) {
        fgrid[c] = eval_on_grid(f_prev.components[c], nodes);
        for (const Complex& v : fgrid[c])
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NonFiniteSample("non-finite series sample on the poly-circle");
    }

    long total = 1;
    for (int j = 0; j < d; ++j) total *= M;

    CVec out(d, Complex(0.0, 0.0));
    for (long pos = 0; pos < map.residue_count(); ++pos) {
        const std::vector<long> r = map.residue_at(pos);
        const Branch& br = map.branch(r);

        // per-dimension kernel factor at each node, including the du/(2 pi i)
        // jacobian u_s / M
        std::vector<CVec> kf(d, CVec(M));
        for (int j = 0; j < d; ++j) {
            const Complex zm = std::pow(z[j], static_cast<int>(map.modulus()[j]));
            const long e = br.mu[j] - br.lambda[j] + 1;
            for (int s = 0; s < M; ++s) {
                const Complex u = nodes[j][s];
                Complex upow(1.0, 0.0);
                for (long i = 0; i < std::labs(e); ++i) upow *= u;
                if (e < 0) upow = 1.0 / upow;
                Complex ul(1.0, 0.0);
                for (long i = 0; i < br.lambda[j]; ++i) ul *= u;
                kf[j][s] = u / (static_cast<double>(M) * upow * (ul - zm));
            }
        }

        Complex zr(1.0, 0.0);
        for (int j = 0; j < d; ++j)
            for (long i = 0; i < r[j]; ++i) zr *= z[j];

        std::vector<Kahan> acc(d);
        std::vector<int> s(d, 0);
        for (long it = 0; it < total; ++it) {
            Complex w(1.0, 0.0);
            for (int j = 0; j < d; ++j) w *= kf[j][s[j]];
            for (int c = 0; c < d; ++c) acc[c].add(w * fgrid[c][it]);
            for (int j = d - 1; j >= 0; --j) {
                if (++s[j] < M) break;
                s[j] = 0;
            }
        }
        for (int c = 0; c < d; ++c) out[c] += zr * acc[c].sum;
    }
    return out;
}

}  // namespace cgf
