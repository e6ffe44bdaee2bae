#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "presets.hpp"
#include "quadrature.hpp"

using namespace cgf;

namespace {

std::mt19937_64 rng(0x5EEDULL);

double u01() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Complex random_point(double rlo, double rhi) {
    return (rlo + (rhi - rlo) * u01()) * std::polar(1.0, 2.0 * std::numbers::pi * u01());
}

// Independent 1-D oracle: solve for the decomposition coefficients from
// sampled kernel values. Unknowns: sigma_l (l = 0..mu-lambda) and tau_l
// (l = 0..lambda-1); basis functions u^-(l+1) and 1/(u - phi_l). Solved by
// Gaussian elimination on a square system from distinct sample points.
struct LinearPfd {
    std::vector<Complex> sigma, tau;
};

LinearPfd linear_solve_pfd(long lambda, long mu, long m, const Complex& z) {
    const long ns = std::max(mu - lambda + 1, 0L);
    const long dim = ns + lambda;
    const CVec phi = roots(lambda, m, z);
    std::vector<std::vector<Complex>> A(dim, std::vector<Complex>(dim + 1));
    for (long i = 0; i < dim; ++i) {
        // sample points on a ring away from all poles
        const Complex u = 1.7 * std::polar(1.0, 2.0 * std::numbers::pi * (i + 0.3) / dim);
        for (long l = 0; l < ns; ++l) A[i][l] = std::pow(u, static_cast<double>(-(l + 1)));
        for (long l = 0; l < lambda; ++l) A[i][ns + l] = 1.0 / (u - phi[l]);
        Complex upow = std::pow(u, static_cast<double>(mu - lambda + 1));
        Complex ul = std::pow(u, static_cast<double>(lambda));
        Complex zm = std::pow(z, static_cast<double>(m));
        A[i][dim] = 1.0 / (upow * (ul - zm));
    }
    // Gaussian elimination with partial pivoting
    for (long col = 0; col < dim; ++col) {
        long piv = col;
        for (long r = col + 1; r < dim; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        for (long r = 0; r < dim; ++r) {
            if (r == col) continue;
            const Complex f = A[r][col] / A[col][col];
            for (long c = col; c <= dim; ++c) A[r][c] -= f * A[col][c];
        }
    }
    LinearPfd out;
    for (long l = 0; l < ns; ++l) out.sigma.push_back(A[l][dim] / A[l][l]);
    for (long l = 0; l < lambda; ++l) out.tau.push_back(A[ns + l][dim] / A[ns + l][ns + l]);
    return out;
}

}  // namespace

TEST_CASE("roots solve u^lambda = z^m") {
    for (int trial = 0; trial < 20; ++trial) {
        const Complex z = random_point(0.1, 0.9);
        const CVec phi = roots(3, 2, z);
        REQUIRE(phi.size() == 3);
        const Complex zm = z * z;
        for (const Complex& p : phi) CHECK(std::abs(p * p * p - zm) < 1e-12);
    }
    CHECK_THROWS_AS(roots(3, 2, Complex(0.0, 0.0)), ZeroArgument);
}

TEST_CASE("tau closed form: zeta^l / (3 z^{4/3}) for lambda=3, mu=2, m=2") {
    const Pfd1D p = pfd_1d(3, 2, 2);
    REQUIRE(p.tau.size() == 3);
    CHECK(p.sigma.empty());
    const Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex z = random_point(0.1, 0.9);
        for (long l = 0; l < 3; ++l) {
            const Complex expect =
                std::pow(zeta, static_cast<double>(l)) / (3.0 * std::exp((4.0 / 3.0) * std::log(z)));
            CHECK(std::abs(p.tau[l].eval(z) - expect) < 1e-12 * std::abs(expect));
        }
    }
}

TEST_CASE("tau closed form: zeta^{-l} z^{-2/3} / 3 for lambda=3, mu=1, m=2") {
    const Pfd1D p = pfd_1d(3, 1, 2);
    const Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex z = random_point(0.1, 0.9);
        for (long l = 0; l < 3; ++l) {
            const Complex expect = std::pow(zeta, static_cast<double>(-l)) /
                                   (3.0 * std::exp((2.0 / 3.0) * std::log(z)));
            CHECK(std::abs(p.tau[l].eval(z) - expect) < 1e-12 * std::abs(expect));
        }
    }
}

TEST_CASE("sigma terms appear exactly when mu >= lambda") {
    CHECK(pfd_1d(1, 0, 2).sigma.empty());
    CHECK(pfd_1d(6, 4, 2).sigma.empty());

    const Pfd1D p = pfd_1d(1, 2, 1);  // lambda=1, mu=2
    REQUIRE(p.sigma.size() == 2);
    CHECK(!p.sigma[0].is_zero());
    CHECK(!p.sigma[1].is_zero());

    // lambda=2, mu=3: sigma size 2, only l=1 survives (mu-lambda-l = 2q)
    const Pfd1D q = pfd_1d(2, 3, 1);
    REQUIRE(q.sigma.size() == 2);
    CHECK(q.sigma[0].is_zero());
    CHECK(!q.sigma[1].is_zero());
}

TEST_CASE("recombination oracle over every preset and residue class") {
    for (const std::string& name : preset_names()) {
        const CollatzMap m = preset(name);
        for (long pos = 0; pos < m.residue_count(); ++pos) {
            const PfdND pfd = pfd_nd(m, m.residue_at(pos));
            int tested = 0;
            while (tested < 50) {
                CVec u(m.dim()), z(m.dim());
                for (int j = 0; j < m.dim(); ++j) {
                    u[j] = random_point(0.3, 1.6);
                    z[j] = random_point(0.1, 0.6);
                }
                try {
                    const Complex direct = kernel_direct(pfd, u, z);
                    const Complex recomb = recombine_eval(pfd, u, z);
                    CHECK(std::abs(direct - recomb) <= 1e-10 * std::abs(direct));
                    ++tested;
                } catch (const PoleProximity&) {
                    // skipped, not failed
                }
            }
        }
    }
}

TEST_CASE("closed forms agree with the linear-solve oracle") {
    struct Case {
        long lambda, mu, m;
    };
    for (const Case c : {Case{3, 2, 2}, Case{3, 1, 2}, Case{6, 4, 2}, Case{1, 2, 1}, Case{2, 3, 1}}) {
        const Pfd1D p = pfd_1d(c.lambda, c.mu, c.m);
        for (int trial = 0; trial < 5; ++trial) {
            const Complex z = random_point(0.2, 0.7);
            const LinearPfd solved = linear_solve_pfd(c.lambda, c.mu, c.m, z);
            for (size_t l = 0; l < p.tau.size(); ++l)
                CHECK(std::abs(p.tau[l].eval(z) - solved.tau[l]) < 1e-9 * (1.0 + std::abs(solved.tau[l])));
            for (size_t l = 0; l < p.sigma.size(); ++l) {
                const Complex mine = p.sigma[l].is_zero() ? Complex(0.0, 0.0) : p.sigma[l].eval(z);
                CHECK(std::abs(mine - solved.sigma[l]) < 1e-9 * (1.0 + std::abs(solved.sigma[l])));
            }
        }
    }
}

TEST_CASE("closed forms agree with numerical residues on small contours") {
    // tau_l is the residue of the kernel at phi_l; extract it by quadrature
    const long lambda = 3, mu = 2, m = 2;
    const Pfd1D p = pfd_1d(lambda, mu, m);
    const Complex z = Complex(0.35, 0.15);
    const CVec phi = roots(lambda, m, z);
    for (long l = 0; l < lambda; ++l) {
        const auto q = circle_integral(
            [&](const Complex& v) {
                const Complex u = phi[l] + v;
                return 1.0 / (std::pow(u, static_cast<double>(mu - lambda + 1)) *
                              (u * u * u - z * z));
            },
            0.05, 256);
        CHECK(std::abs(q.value - p.tau[l].eval(z)) < 1e-10);
    }
    // sigma_l is the u^{-(l+1)} Laurent coefficient at zero
    const Pfd1D s = pfd_1d(1, 2, 1);
    for (long l = 0; l <= 1; ++l) {
        const auto q = circle_integral(
            [&](const Complex& u) {
                return std::pow(u, static_cast<double>(l)) / (u * u * (u - z));
            },
            0.05, 256);
        const Complex expect = s.sigma[l].is_zero() ? Complex(0.0, 0.0) : s.sigma[l].eval(z);
        CHECK(std::abs(q.value - expect) < 1e-10);
    }
}

TEST_CASE("term list structure for 1-D presets") {
    const CollatzMap m = preset("3n+1");
    const PfdND p0 = pfd_nd(m, {0});
    CHECK(p0.terms.size() == 1);
    CHECK(p0.terms[0].ell == Index{0});
    CHECK(p0.terms[0].nu == 0);

    const PfdND p1 = pfd_nd(m, {1});
    CHECK(p1.terms.size() == 3);
    for (const auto& t : p1.terms) CHECK(t.ell == Index{0});

    const CollatzMap s = preset("mu-ge-lambda");
    const PfdND ps = pfd_nd(s, {0});
    REQUIRE(ps.terms.size() == 3);
    // canonical order: ell ascending, nu within
    CHECK(ps.terms[0].ell == Index{0});
    CHECK(ps.terms[1].ell == Index{0});
    CHECK(ps.terms[2].ell == Index{1});
    CHECK(ps.terms[2].factors[0].root == -1);
}

TEST_CASE("inductive product structure in two dimensions") {
    // both dimensions lambda=1, mu=2: per-dimension terms {(0,root),(0,sigma0),(1,sigma1)}
    const CollatzMap m = validate_map(
        2, {1, 1},
        {{{0, 0},
          {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
          {Rational(2), Rational(2)}}});
    const PfdND p = pfd_nd(m, {0, 0});
    REQUIRE(p.terms.size() == 9);
    // group sizes h_ell: (0,0):4, (0,1):2, (1,0):2, (1,1):1, in lex order of ell
    std::map<Index, int> h;
    for (const auto& t : p.terms) ++h[t.ell];
    CHECK(h[Index{0, 0}] == 4);
    CHECK(h[Index{0, 1}] == 2);
    CHECK(h[Index{1, 0}] == 2);
    CHECK(h[Index{1, 1}] == 1);
    // nu enumerates each group from zero in lexicographic constituent order
    std::map<Index, int> next;
    for (const auto& t : p.terms) CHECK(t.nu == next[t.ell]++);
}

TEST_CASE("branch-shifted evaluation matches the principal branch at shift zero") {
    const CollatzMap m = preset("3n+1");
    const PfdND p = pfd_nd(m, {1});
    const std::vector<int> zero = {0};
    for (int trial = 0; trial < 10; ++trial) {
        const CVec z = {random_point(0.1, 0.6)};
        for (const auto& term : p.terms) {
            const auto [eta, phi] = eval_eta_phi_shifted(p, term, z, zero);
            CHECK(std::abs(eta - eval_eta(term, z)) < 1e-13 * (1.0 + std::abs(eta)));
            const CVec phi0 = eval_phi(p, term, z);
            for (size_t j = 0; j < phi.size(); ++j) CHECK(std::abs(phi[j] - phi0[j]) < 1e-13);
        }
    }
}

TEST_CASE("pole proximity raises instead of returning garbage") {
    const CollatzMap m = preset("3n+1");
    const PfdND p = pfd_nd(m, {1});
    const CVec z = {Complex(0.3, 0.0)};
    const CVec phi = roots(3, 2, z[0]);
    CHECK_THROWS_AS(recombine_eval(p, {phi[0] * (1.0 + 1e-9)}, z), PoleProximity);
}
