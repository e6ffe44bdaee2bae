#pragma once

#include <optional>
#include <string>

#include "quadrature.hpp"

namespace cgf {

enum class CheckKind {
    Recurrence,
    Contour,
    Bivariate,
    CorollaryStructure,
    Bound,
    Convergence,
    BranchInvariance,
    DeltaIdentity,
};

std::string check_kind_name(CheckKind kind);
CheckKind check_kind_from_name(const std::string& name);  // throws ParseError

/// Every reported tolerance is scale * (tail_multiplier * analytic tails
/// + quadrature estimate + relative_factor * |lhs| + absolute_floor).
struct TolerancePolicy {
    double absolute_floor = 1e-12;
    double relative_factor = 0.0;
    double tail_multiplier = 1.0;
    double scale = 1.0;
};

struct CheckSpec {
    int k_min = 1;
    int k_max = 4;
    std::vector<CVec> z_points;     // empty: defaults for the map dimension
    std::vector<Complex> w_points;  // empty: per-check defaults
    Index limits;                   // empty: default truncation box
    int quad_nodes = 0;  // 0: 512 in one dimension, 128 per circle beyond
    int K = 0;           // w truncation; 0 chooses from the geometric tail target
    long n_max = -1;
    int k_bound = -1;
    unsigned long long seed = 0x5EEDULL;
    TolerancePolicy tol;
};

struct CheckRecord {
    std::string label;
    CVec z;
    std::optional<Complex> w;
    int k = 0;
    int component = 0;
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double abs_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    CheckKind kind = CheckKind::Recurrence;
    std::vector<CheckRecord> records;
    double max_residual = 0.0;
    bool all_pass = true;
    double wall_time_s = 0.0;

    void add(CheckRecord rec);
};

/// 4 deterministic points plus 8 seeded points from the annulus
/// 0.1 <= |z_j| <= 0.6, generated by a fixed bit-level algorithm.
std::vector<CVec> default_z_points(int d, unsigned long long seed);

/// 2000 coefficients in one dimension, 96 per variable in two, 24 beyond.
Index default_limits(int d);

/// Residue-form right-hand side of the functional recurrence at z, from the
/// truncated previous-level series. decomps must hold one decomposition per
/// residue class in canonical order. A non-null shift vector rotates every
/// root list (branch-invariance probe).
CVec recurrence_rhs(const CollatzMap& map, const std::vector<PfdND>& decomps,
                    const SeriesVector& f_prev, const CVec& z,
                    const std::vector<int>* shift = nullptr);

/// Tail bound on the residue-form RHS caused by the truncation of f_prev.
double recurrence_rhs_tail(const CollatzMap& map, const std::vector<PfdND>& decomps, int k_prev,
                           const Index& limits, const CVec& z);

std::vector<PfdND> all_decompositions(const CollatzMap& map);

VerificationReport check_recurrence(const CollatzMap& map, const CheckSpec& spec);
VerificationReport check_contour(const CollatzMap& map, const CheckSpec& spec);
VerificationReport check_bivariate(const CollatzMap& map, const CheckSpec& spec);
VerificationReport check_corollary_structure(const CollatzMap& map);
VerificationReport check_bound(const CollatzMap& map, long n_max, int k_max);
VerificationReport check_branch_invariance(const CollatzMap& map, const CheckSpec& spec);
VerificationReport check_convergence(const CollatzMap& map, const CheckSpec& spec);
VerificationReport check_delta_identity(const CheckSpec& spec);

/// Dispatch by kind, filling spec defaults from the map.
VerificationReport run_check(const CollatzMap& map, CheckKind kind, const CheckSpec& spec);

}  // namespace cgf
