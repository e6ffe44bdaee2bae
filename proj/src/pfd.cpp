#include "pfd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cgf {

namespace {

Complex unit_root(long num, long den) {
    // e^(i 2 pi num / den)
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return Complex(std::cos(theta), std::sin(theta));
}

Complex principal_pow(const Complex& z, const Rational& e) {
    if (z == Complex(0.0, 0.0)) throw ZeroArgument("principal power of zero");
    const double p = e.get_d();
    return std::exp(p * std::log(z));
}

long mod_pos(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

Complex FracMonomial::eval(const Complex& z) const {
    if (is_zero()) return Complex(0.0, 0.0);
    return unit * scale.get_d() * principal_pow(z, exponent);
}

CVec roots(long lambda, long m, const Complex& z) {
    if (z == Complex(0.0, 0.0)) throw ZeroArgument("roots require z != 0");
    const Complex p = principal_pow(z, Rational(m, lambda));
    CVec out(lambda);
    for (long l = 0; l < lambda; ++l) out[l] = p * unit_root(l, lambda);
    return out;
}

Pfd1D pfd_1d(long lambda, long mu, long m) {
    Pfd1D out;
    out.lambda = lambda;
    out.mu = mu;
    out.m = m;

    // residue at the simple root phi_l: 1/(lambda phi_l^mu)
    out.tau.resize(lambda);
    for (long l = 0; l < lambda; ++l) {
        FracMonomial t;
        t.unit = unit_root(mod_pos(-l * mu, lambda), lambda);
        t.scale = Rational(1, lambda);
        t.exponent = Rational(-m * mu, lambda);
        out.tau[l] = t;
    }

    // Laurent principal part at u = 0: coefficient of u^-(l+1) in the
    // geometric expansion -sum_q u^(lambda q - (mu-lambda+1)) z^(-m(q+1))
    if (mu - lambda >= 0) {
        out.sigma.assign(mu - lambda + 1, FracMonomial::zero());
        for (long l = 0; l <= mu - lambda; ++l) {
            const long diff = mu - lambda - l;
            if (diff % lambda == 0) {
                const long q = diff / lambda;
                FracMonomial s;
                s.unit = Complex(-1.0, 0.0);
                s.scale = Rational(1);
                s.exponent = Rational(-m * (q + 1));
                out.sigma[l] = s;
            }
        }
    }
    return out;
}

namespace {

// A term over a prefix of the dimensions, carrying the constituent nu indices
// so the lexicographic disambiguator can be assigned after grouping.
struct PartialTerm {
    Index ell;
    std::vector<int> nus;  // per-dimension source nu (basis position)
    std::vector<PfdFactor> factors;
};

std::vector<PartialTerm> basis_terms(const Pfd1D& p) {
    std::vector<PartialTerm> out;
    // poles at zero of order l+1, l >= 1
    for (long l = 1; l < static_cast<long>(p.sigma.size()); ++l)
        out.push_back({{static_cast<int>(l)}, {0}, {{p.sigma[l], -1}}});
    // simple roots
    for (long l = 0; l < p.lambda; ++l)
        out.push_back({{0}, {static_cast<int>(l)}, {{p.tau[l], static_cast<int>(l)}}});
    // simple pole at zero, when present
    if (!p.sigma.empty()) out.push_back({{0}, {static_cast<int>(p.lambda)}, {{p.sigma[0], -1}}});
    return out;
}

}  // namespace

PfdND pfd_nd(const CollatzMap& map, const std::vector<long>& r) {
    const int d = map.dim();
    const Branch& br = map.branch(r);

    PfdND out;
    out.r = r;
    out.lambda = br.lambda;
    out.mu = br.mu;
    out.m = map.modulus();

    std::vector<PartialTerm> acc = basis_terms(pfd_1d(br.lambda[0], br.mu[0], out.m[0]));
    for (int j = 1; j < d; ++j) {
        const auto next = basis_terms(pfd_1d(br.lambda[j], br.mu[j], out.m[j]));
        std::vector<PartialTerm> prod;
        prod.reserve(acc.size() * next.size());
        for (const auto& a : acc)
            for (const auto& b : next) {
                PartialTerm t;
                t.ell = a.ell;
                t.ell.push_back(b.ell[0]);
                t.nus = a.nus;
                t.nus.push_back(b.nus[0]);
                t.factors = a.factors;
                t.factors.push_back(b.factors[0]);
                prod.push_back(std::move(t));
            }
        acc = std::move(prod);
    }

    // group by ell; nu is the lexicographic position of the constituent nu
    // tuple within its group
    std::stable_sort(acc.begin(), acc.end(), [](const PartialTerm& a, const PartialTerm& b) {
        if (a.ell != b.ell) return a.ell < b.ell;
        return a.nus < b.nus;
    });
    out.terms.reserve(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) {
        int nu = 0;
        if (i > 0 && acc[i - 1].ell == acc[i].ell) nu = out.terms.back().nu + 1;
        out.terms.push_back({acc[i].ell, nu, std::move(acc[i].factors)});
    }
    return out;
}

Complex eval_eta(const PfdTermND& term, const CVec& z) {
    Complex v(1.0, 0.0);
    for (size_t j = 0; j < term.factors.size(); ++j) {
        if (z[j] == Complex(0.0, 0.0)) throw ZeroArgument("eta evaluation requires z_j != 0");
        v *= term.factors[j].eta.eval(z[j]);
        if (v == Complex(0.0, 0.0)) return v;
    }
    return v;
}

CVec eval_phi(const PfdND& pfd, const PfdTermND& term, const CVec& z) {
    const size_t d = term.factors.size();
    CVec out(d, Complex(0.0, 0.0));
    for (size_t j = 0; j < d; ++j) {
        if (z[j] == Complex(0.0, 0.0)) throw ZeroArgument("phi evaluation requires z_j != 0");
        const int root = term.factors[j].root;
        if (root >= 0) out[j] = principal_pow(z[j], Rational(pfd.m[j], pfd.lambda[j])) * unit_root(root, pfd.lambda[j]);
    }
    return out;
}

std::pair<Complex, CVec> eval_eta_phi_shifted(const PfdND& pfd, const PfdTermND& term, const CVec& z,
                                              const std::vector<int>& shift) {
    const size_t d = term.factors.size();
    Complex eta(1.0, 0.0);
    CVec phi(d, Complex(0.0, 0.0));
    for (size_t j = 0; j < d; ++j) {
        if (z[j] == Complex(0.0, 0.0)) throw ZeroArgument("shifted evaluation requires z_j != 0");
        const int root = term.factors[j].root;
        if (root < 0) {
            // pole at zero: the coefficient never involves a root choice
            eta *= term.factors[j].eta.eval(z[j]);
        } else {
            const long lambda = pfd.lambda[j];
            const long l = mod_pos(root + shift[j], lambda);
            const Complex p = principal_pow(z[j], Rational(pfd.m[j], lambda)) * unit_root(l, lambda);
            phi[j] = p;
            Complex pmu(1.0, 0.0);
            for (long i = 0; i < pfd.mu[j]; ++i) pmu *= p;
            eta *= 1.0 / (static_cast<double>(lambda) * pmu);
        }
        if (eta == Complex(0.0, 0.0)) break;
    }
    return {eta, phi};
}

Complex recombine_eval(const PfdND& pfd, const CVec& u, const CVec& z) {
    Complex sum(0.0, 0.0);
    for (const auto& term : pfd.terms) {
        const Complex eta = eval_eta(term, z);
        if (eta == Complex(0.0, 0.0)) continue;
        const CVec phi = eval_phi(pfd, term, z);
        Complex denom(1.0, 0.0);
        for (size_t j = 0; j < u.size(); ++j) {
            const Complex diff = u[j] - phi[j];
            if (std::abs(diff) < 1e-6 * std::abs(u[j]))
                throw PoleProximity("evaluation point too close to a decomposition pole");
            for (int p = 0; p <= term.ell[j]; ++p) denom *= diff;
        }
        sum += eta / denom;
    }
    return sum;
}

Complex kernel_direct(const PfdND& pfd, const CVec& u, const CVec& z) {
    Complex v(1.0, 0.0);
    for (size_t j = 0; j < u.size(); ++j) {
        const Complex zm = std::pow(z[j], static_cast<int>(pfd.m[j]));
        Complex upow(1.0, 0.0);  // u^(mu - lambda + 1), integer exponent of either sign
        const long e = pfd.mu[j] - pfd.lambda[j] + 1;
        for (long i = 0; i < std::labs(e); ++i) upow *= u[j];
        if (e < 0) upow = 1.0 / upow;
        Complex ul(1.0, 0.0);
        for (long i = 0; i < pfd.lambda[j]; ++i) ul *= u[j];
        v /= upow * (ul - zm);
    }
    return v;
}

}  // namespace cgf
