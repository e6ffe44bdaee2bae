#include "series.hpp"

#include <algorithm>
#include <cmath>

namespace cgf {

namespace {

long box_size(const Index& limits) {
    long total = 1;
    for (int nj : limits) total *= nj;
    return total;
}

// Horner over one dimension with the given stride/extent, recursing on the
// remaining (faster) dimensions.
Complex horner(const Complex* c, const Index& limits, int dim, const CVec& z) {
    const int d = static_cast<int>(limits.size());
    if (dim == d - 1) {
        Complex acc = 0.0;
        for (int n = limits[dim] - 1; n >= 0; --n) acc = acc * z[dim] + c[n];
        return acc;
    }
    long stride = 1;
    for (int j = dim + 1; j < d; ++j) stride *= limits[j];
    Complex acc = 0.0;
    for (int n = limits[dim] - 1; n >= 0; --n) acc = acc * z[dim] + horner(c + n * stride, limits, dim + 1, z);
    return acc;
}

double falling_factorial(int n, int l) {
    double p = 1.0;
    for (int i = 0; i < l; ++i) p *= static_cast<double>(n - i);
    return p;
}

// Upper bound on sum over n >= N of (n+1)^p x^n, 0 < x < 1.
double poly_geom_tail(int p, double x, long N) {
    if (x <= 0.0) return 0.0;
    const double s = std::sqrt(x);
    // peak of (n+1)^p s^n over nonnegative n
    double peak = 1.0;
    const double nstar = std::max(0.0, -static_cast<double>(p) / std::log(s) - 1.0);
    for (double n : {std::floor(nstar), std::ceil(nstar), 0.0})
        peak = std::max(peak, std::pow(n + 1.0, p) * std::pow(s, n));
    return peak * std::pow(s, static_cast<double>(N)) / (1.0 - s);
}

}  // namespace

TruncatedSeries::TruncatedSeries(Index limits, std::vector<Complex> coeffs)
    : limits_(std::move(limits)), coeffs_(std::move(coeffs)) {
    if (static_cast<long>(coeffs_.size()) != box_size(limits_))
        throw Error("coefficient array size does not match the truncation box");
    for (const Complex& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw NonFiniteSample("non-finite series coefficient");
}

const Complex& TruncatedSeries::at(const Index& n) const {
    long pos = 0;
    for (size_t j = 0; j < limits_.size(); ++j) {
        if (n[j] < 0 || n[j] >= limits_[j]) throw OutOfBox("multi-index outside the truncation box");
        pos = pos * limits_[j] + n[j];
    }
    return coeffs_[pos];
}

SeriesVector orbit_series(const CollatzMap& map, int k, const Index& limits, long budget) {
    const int d = map.dim();
    if (static_cast<int>(limits.size()) != d) throw Error("truncation box dimension mismatch");
    const long total = box_size(limits);
    if (total > budget) throw TruncationTooLarge("truncation box exceeds the coefficient budget");

    std::vector<std::vector<Complex>> coeffs(d, std::vector<Complex>(total));
    LatticePoint n(d, BigInt(0));
    for (long pos = 0; pos < total; ++pos) {
        LatticePoint v = n;
        for (int i = 0; i < k; ++i) v = step(map, v);
        for (int j = 0; j < d; ++j) coeffs[j][pos] = Complex(v[j].get_d(), 0.0);
        // advance the box multi-index, last variable fastest
        for (int j = d - 1; j >= 0; --j) {
            n[j] += 1;
            if (n[j] < limits[j]) break;
            n[j] = 0;
        }
    }

    SeriesVector out;
    for (int j = 0; j < d; ++j) out.components.emplace_back(limits, std::move(coeffs[j]));
    return out;
}

std::vector<SeriesVector> orbit_series_levels(const CollatzMap& map, int k, const Index& limits,
                                              long budget) {
    const int d = map.dim();
    if (static_cast<int>(limits.size()) != d) throw Error("truncation box dimension mismatch");
    const long total = box_size(limits);
    if (total * (k + 1) > budget) throw TruncationTooLarge("truncation boxes exceed the coefficient budget");

    std::vector<LatticePoint> orbit(total);
    {
        LatticePoint n(d, BigInt(0));
        for (long pos = 0; pos < total; ++pos) {
            orbit[pos] = n;
            for (int j = d - 1; j >= 0; --j) {
                n[j] += 1;
                if (n[j] < limits[j]) break;
                n[j] = 0;
            }
        }
    }

    std::vector<SeriesVector> out;
    out.reserve(k + 1);
    for (int level = 0; level <= k; ++level) {
        if (level > 0)
            for (long pos = 0; pos < total; ++pos) orbit[pos] = step(map, orbit[pos]);
        SeriesVector sv;
        for (int j = 0; j < d; ++j) {
            std::vector<Complex> coeffs(total);
            for (long pos = 0; pos < total; ++pos) coeffs[pos] = Complex(orbit[pos][j].get_d(), 0.0);
            sv.components.emplace_back(limits, std::move(coeffs));
        }
        out.push_back(std::move(sv));
    }
    return out;
}

Complex eval(const TruncatedSeries& s, const CVec& z) {
    if (static_cast<int>(z.size()) != s.dim()) throw Error("evaluation point dimension mismatch");
    return horner(s.coeffs().data(), s.limits(), 0, z);
}

Complex coefficient(const TruncatedSeries& s, const Index& n) { return s.at(n); }

Complex eval_derivative(const TruncatedSeries& s, const Index& ell, const CVec& z) {
    const int d = s.dim();
    Index dlim(d);
    for (int j = 0; j < d; ++j) {
        if (ell[j] < 0 || ell[j] >= s.limits()[j]) throw OutOfBox("derivative order outside the truncation box");
        dlim[j] = s.limits()[j] - ell[j];
    }
    std::vector<Complex> dc(static_cast<size_t>(box_size(dlim)));
    Index m(d, 0);
    for (size_t pos = 0; pos < dc.size(); ++pos) {
        double scale = 1.0;
        Index src(d);
        for (int j = 0; j < d; ++j) {
            src[j] = m[j] + ell[j];
            scale *= falling_factorial(src[j], ell[j]);
        }
        dc[pos] = s.at(src) * scale;
        for (int j = d - 1; j >= 0; --j) {
            m[j] += 1;
            if (m[j] < dlim[j]) break;
            m[j] = 0;
        }
    }
    return horner(dc.data(), dlim, 0, z);
}

CVec eval_vector(const SeriesVector& f, const CVec& z) {
    CVec out;
    out.reserve(f.components.size());
    for (const auto& s : f.components) out.push_back(eval(s, z));
    return out;
}

CVec eval_derivative_vector(const SeriesVector& f, const Index& ell, const CVec& z) {
    CVec out;
    out.reserve(f.components.size());
    for (const auto& s : f.components) out.push_back(eval_derivative(s, ell, z));
    return out;
}

std::vector<Complex> eval_on_grid(const TruncatedSeries& s, const std::vector<CVec>& nodes) {
    const int d = s.dim();
    if (static_cast<int>(nodes.size()) != d) throw Error("node grid dimension mismatch");

    // Reduce one dimension at a time, from the last (fastest) to the first:
    // data is indexed by [exponents of dims < dim, nodes of dims >= dim].
    std::vector<Complex> data = s.coeffs();
    long expo_part = box_size(s.limits());
    long node_part = 1;
    for (int dim = d - 1; dim >= 0; --dim) {
        const long N = s.limits()[dim];
        const long M = static_cast<long>(nodes[dim].size());
        expo_part /= N;
        std::vector<Complex> next(static_cast<size_t>(expo_part * M * node_part));
        for (long a = 0; a < expo_part; ++a) {
            const Complex* block = data.data() + a * N * node_part;
            for (long sidx = 0; sidx < M; ++sidx) {
                const Complex u = nodes[dim][sidx];
                Complex* out = next.data() + (a * M + sidx) * node_part;
                for (long b = 0; b < node_part; ++b) {
                    Complex acc = 0.0;
                    for (long n = N - 1; n >= 0; --n) acc = acc * u + block[n * node_part + b];
                    out[b] = acc;
                }
            }
        }
        data = std::move(next);
        node_part *= M;
    }
    return data;
}

double growth_constant(const CollatzMap& map, int k) {
    const GrowthBound& g = map.growth();
    if (!g.chi) return g.bmax.get_d() * k + 1.0;
    const double chi = std::abs(g.chi->get_d());
    return (chi + 1.0) * (std::pow(g.amax.get_d(), k) + 1.0);
}

double tail_bound_derivative(const CollatzMap& map, int k, const Index& limits,
                             const std::vector<double>& rho, const Index& ell) {
    const int d = map.dim();
    const double C = growth_constant(map, k);
    // per-dimension: exact full sum of (n+1) * n!/(n-l)! * rho^(n-l) and an
    // upper bound on its tail beyond the box limit
    double full_prod = 1.0, inbox_prod = 1.0;
    for (int j = 0; j < d; ++j) {
        const double x = rho[j];
        if (x >= 1.0) return HUGE_VAL;
        const int l = ell[j];
        double full = falling_factorial(l + 1, l + 1) / std::pow(1.0 - x, l + 2);  // (l+1)!/(1-x)^(l+2)
        // fall(n+1,l+1) <= ((l+1)(m+1))^(l+1) with m = n-l
        double tail = std::pow(l + 1.0, l + 1) * poly_geom_tail(l + 1, x, std::max<long>(limits[j] - l, 0));
        full_prod *= full;
        inbox_prod *= std::max(full - tail, 0.0);
    }
    return C * std::max(full_prod - inbox_prod, 0.0);
}

double tail_bound(const CollatzMap& map, int k, const Index& limits, const std::vector<double>& rho) {
    return tail_bound_derivative(map, k, limits, rho, Index(map.dim(), 0));
}

CVec closed_form_f0(const CollatzMap& map, const CVec& z) {
    const int d = map.dim();
    for (const Complex& zj : z)
        if (std::abs(zj) >= 1.0) throw DomainViolation("closed-form f0 requires |z_j| < 1");
    CVec out(d);
    for (int j = 0; j < d; ++j) {
        Complex v = z[j] / ((1.0 - z[j]) * (1.0 - z[j]));
        for (int l = 0; l < d; ++l)
            if (l != j) v /= (1.0 - z[l]);
        out[j] = v;
    }
    return out;
}

}  // namespace cgf
