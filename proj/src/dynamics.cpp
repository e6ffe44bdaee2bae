#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cgf {

bool is_nonneg_integer(const Rational& q) {
    return q.get_den() == 1 && q.get_num() >= 0;
}

bool is_positive_integer(const Rational& q) {
    return q.get_den() == 1 && q.get_num() >= 1;
}

LatticePoint to_lattice(const std::vector<long>& v) {
    LatticePoint out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

double max_norm(const LatticePoint& n) {
    double best = 0.0;
    for (const auto& x : n) best = std::max(best, std::abs(x.get_d()));
    return best;
}

namespace {

std::string residue_str(const std::vector<long>& r) {
    std::ostringstream os;
    os << "(";
    for (size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << r[j];
    os << ")";
    return os.str();
}

long lex_rank(const std::vector<long>& r, const std::vector<long>& m) {
    long pos = 0;
    for (size_t j = 0; j < m.size(); ++j) pos = pos * m[j] + r[j];
    return pos;
}

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace

CollatzMap::CollatzMap(int d, std::vector<long> m, std::vector<Branch> branches_lex)
    : d_(d), m_(std::move(m)), branches_(std::move(branches_lex)) {
    Rational amax = 0, bmax = 0;
    for (const auto& br : branches_) {
        for (const auto& row : br.A)
            for (const auto& a : row) amax = std::max(amax, abs_q(a));
        for (const auto& b : br.b) bmax = std::max(bmax, abs_q(b));
    }
    amax *= d_;
    // Each component of the step is exactly (lambda_j/m_j) n_j + c_j with
    // c_j = mu_j - r_j lambda_j/m_j; for coupled branches (non-diagonal A)
    // these slopes/offsets can exceed d||A|| and ||B||, so widen to cover both.
    for (long pos = 0; pos < static_cast<long>(branches_.size()); ++pos) {
        const std::vector<long> r = residue_at(pos);
        const Branch& br = branches_[pos];
        for (int j = 0; j < d_; ++j) {
            Rational slope(br.lambda[j], m_[j]);
            slope.canonicalize();
            const Rational offset = Rational(br.mu[j]) - Rational(r[j]) * slope;
            amax = std::max(amax, slope);
            bmax = std::max(bmax, abs_q(offset));
        }
    }
    growth_.amax = amax;
    growth_.bmax = bmax;
    if (amax != 1) growth_.chi = Rational(bmax / (amax - 1));

    lambda_max_.assign(d_, 1);
    for (const auto& br : branches_)
        for (int j = 0; j < d_; ++j) lambda_max_[j] = std::max(lambda_max_[j], br.lambda[j]);
}

const Branch& CollatzMap::branch(const std::vector<long>& r) const {
    return branches_[lex_rank(r, m_)];
}

std::vector<long> CollatzMap::residue_at(long lex_pos) const {
    std::vector<long> r(d_);
    for (int j = d_ - 1; j >= 0; --j) {
        r[j] = lex_pos % m_[j];
        lex_pos /= m_[j];
    }
    return r;
}

CollatzMap validate_map(int d, const std::vector<long>& m, const std::vector<RawBranch>& raw) {
    if (d < 1) throw ValidationError(ValidationError::Kind::MissingResidueClass, "dimension must be >= 1");
    if (static_cast<int>(m.size()) != d)
        throw ValidationError(ValidationError::Kind::MissingResidueClass, "modulus length does not match dimension");
    for (long mj : m)
        if (mj < 1)
            throw ValidationError(ValidationError::Kind::MissingResidueClass, "all moduli must be >= 1");

    long count = 1;
    for (long mj : m) count *= mj;

    std::vector<const RawBranch*> slot(count, nullptr);
    for (const auto& rb : raw) {
        if (static_cast<int>(rb.r.size()) != d) continue;
        bool in_range = true;
        for (int j = 0; j < d; ++j)
            if (rb.r[j] < 0 || rb.r[j] >= m[j]) in_range = false;
        if (!in_range) continue;
        slot[lex_rank(rb.r, m)] = &rb;
    }

    std::vector<Branch> branches(count);
    for (long pos = 0; pos < count; ++pos) {
        // reconstruct residue vector at this lex position
        std::vector<long> r(d);
        long p = pos;
        for (int j = d - 1; j >= 0; --j) {
            r[j] = p % m[j];
            p /= m[j];
        }
        const RawBranch* rb = slot[pos];
        if (!rb)
            throw ValidationError(ValidationError::Kind::MissingResidueClass,
                                  "no branch supplied for residue class r=" + residue_str(r), r);
        if (static_cast<int>(rb->A.size()) != d || static_cast<int>(rb->b.size()) != d)
            throw ValidationError(ValidationError::Kind::MissingResidueClass,
                                  "branch shape mismatch at r=" + residue_str(r), r);

        Branch br;
        br.A = rb->A;
        br.b = rb->b;
        br.lambda.resize(d);
        br.mu.resize(d);
        for (int i = 0; i < d; ++i) {
            Rational lam = 0, mu = rb->b[i];
            for (int j = 0; j < d; ++j) {
                lam += rb->A[i][j] * m[j];
                mu += rb->A[i][j] * r[j];
            }
            if (!is_positive_integer(lam))
                throw ValidationError(ValidationError::Kind::ConditionAViolated,
                                      "lambda_r = A_r m not a positive integer at r=" + residue_str(r) +
                                          " component " + std::to_string(i) + " (value " + lam.get_str() + ")",
                                      r, i);
            if (!is_nonneg_integer(mu))
                throw ValidationError(ValidationError::Kind::ConditionBViolated,
                                      "mu_r = A_r r + b_r not a nonnegative integer at r=" + residue_str(r) +
                                          " component " + std::to_string(i) + " (value " + mu.get_str() + ")",
                                      r, i);
            br.lambda[i] = lam.get_num().get_si();
            br.mu[i] = mu.get_num().get_si();
        }
        branches[pos] = std::move(br);
    }
    return CollatzMap(d, m, std::move(branches));
}

std::pair<LatticePoint, std::vector<long>> residue_decompose(const LatticePoint& n,
                                                             const std::vector<long>& m) {
    const size_t d = m.size();
    LatticePoint q(d);
    std::vector<long> r(d);
    for (size_t j = 0; j < d; ++j) {
        BigInt quo, rem;
        mpz_fdiv_qr_ui(quo.get_mpz_t(), rem.get_mpz_t(), n[j].get_mpz_t(), static_cast<unsigned long>(m[j]));
        q[j] = quo;
        r[j] = rem.get_si();
    }
    return {std::move(q), std::move(r)};
}

LatticePoint step(const CollatzMap& map, const LatticePoint& n) {
    auto [q, r] = residue_decompose(n, map.modulus());
    const Branch& br = map.branch(r);
    const int d = map.dim();
    LatticePoint out(d);
    for (int j = 0; j < d; ++j) out[j] = q[j] * br.lambda[j] + br.mu[j];
    return out;
}

std::vector<LatticePoint> iterate(const CollatzMap& map, const LatticePoint& n, int k) {
    std::vector<LatticePoint> orbit;
    orbit.reserve(k + 1);
    orbit.push_back(n);
    for (int i = 0; i < k; ++i) orbit.push_back(step(map, orbit.back()));
    return orbit;
}

double coefficient_bound(const CollatzMap& map, const LatticePoint& n, int k) {
    const GrowthBound& g = map.growth();
    const double amax = g.amax.get_d();
    const double bmax = g.bmax.get_d();
    const double nn = max_norm(n);
    if (!g.chi) return nn + bmax * k;
    const double chi = g.chi->get_d();
    return std::pow(amax, k) * (nn + chi) - chi;
}

double radius_R_w(const CollatzMap& map) {
    const double amax = map.growth().amax.get_d();
    return std::min(1.0 / amax, 1.0);
}

}  // namespace cgf
