#pragma once

#include <optional>
#include <string>

#include "slicegeo/budget.hpp"
#include "slicegeo/space.hpp"

namespace slicegeo {

/// One generating pair of S^alpha(X): u, v in B_X with |u - v| >= alpha.
struct MidpointTerm {
    double weight = 1.0;
    Vec u, v;
};

/// Convex combination of at most n midpoints; its value lies in S_n^alpha(X).
struct MidpointCombination {
    double alpha = 0.0;
    std::vector<MidpointTerm> terms;
};

/// Throws InvariantViolation naming the violated clause.
void check_combination(const SpaceSpec& spec, const MidpointCombination& c);

Vec combination_value(const SpaceSpec& spec, const MidpointCombination& c);

struct DistResult {
    double upper = 1.0;  // |x - value(witness)|, a certified upper bound
    MidpointCombination witness;
};

/// Best upper bound on d(x, S_n^alpha(X)) found within the budget:
/// multi-start alternation between a convex weight subproblem (exact LP on
/// polytopal norms, conditional gradient otherwise) and projected descent on
/// the pairs with separation restored by half-difference rescaling.
DistResult dist_to_midpoint_hull(const SpaceSpec& spec, const Vec& x, int n, double alpha,
                                 const SolverBudget& budget = {},
                                 const BallGeometry* geo = nullptr);

struct OracleBracket {
    double lower = 0.0;
    double upper = 0.0;
    double slack = 0.0;  // resolution term: upper - slack <= true distance <= upper
    int resolution = 0;
};

/// Independent 2D brute-force oracle for d(x, S_n^alpha): boundary grid pairs
/// for n = 1, a weight grid over midpoint pairs for n = 2, and the convex hull
/// of sampled midpoints for n >= 3 (conv_n saturates at n = 3 in the plane).
OracleBracket oracle_dist_2d(const SpaceSpec& spec, const Vec& x, int n, double alpha,
                             int resolution, const SolverBudget& budget = {});

struct CnAlphaEstimate {
    std::string space_id;
    int n = 1;
    double alpha = 0.0;
    double empirical_value = 0.0;  // max over sampled sphere points of dist upper bounds
    std::optional<double> certified_lower;
    Vec witness_point;
    MidpointCombination witness_combination;
    int samples = 0, starts = 0, iterations = 0;
    std::uint64_t seed = 0;
};

CnAlphaEstimate cn_alpha(const SpaceSpec& spec, int n, double alpha,
                         const SolverBudget& budget = {});

/// Product combiner for X +_p Y (p < inf): turns n- and m-term combinations
/// for the normalized components into an n*m-term combination for (x, y),
/// with membership, separation and the p-mean error bound checked to 1e-9.
MidpointCombination combine_lp_sum(const SpaceSpec& sum_spec, const Vec& x, const Vec& y,
                                   const MidpointCombination& combX,
                                   const MidpointCombination& combY);

}  // namespace slicegeo
