#pragma once

#include "parkgame/game.hpp"
#include "parkgame/rational.hpp"
#include "parkgame/shapley.hpp"

#include <vector>

namespace parkgame {

/// One row of the least-core program over the variables phi_1..phi_n, z.
struct LinearConstraint {
    std::vector<Rational> coefficients;  // length n + 1, z last
    Rational rhs;
    bool equality = false;
};

/// The least-core linear program: minimize z subject to one efficiency
/// equality and one inequality per coalition S (all 2^n of them, the empty
/// and grand coalitions included, in ascending bitmask order).
struct LinearProgramExact {
    int players = 0;
    std::vector<LinearConstraint> constraints;  // equality first
};

struct LpSolution {
    Rational objective;
    std::vector<Rational> point;  // phi_1..phi_n, z
};

/// Materializes the 2^n + 1 constraints. Throws ResourceLimitError for
/// n > 16.
LinearProgramExact build_least_core_lp(const GameView& game);

/// Exact two-phase dense simplex with Bland's rule (entering: lowest eligible
/// variable index; leaving: minimum ratio, ties by lowest basic variable
/// index). Deterministic. Throws std::logic_error on infeasible or unbounded
/// programs, which a well-formed least-core program never produces.
LpSolution solve_lp_exact(const LinearProgramExact& lp);

struct LeastCoreResult {
    Rational z_star;
    Allocation allocation;
    std::vector<Coalition> tight_coalitions;  // Sum_{i in S} phi_i == c(S) + z*
};

/// Least core value and one optimal allocation for the parking game of the
/// profile. Throws NotAParkingFunction / ResourceLimitError as applicable.
LeastCoreResult least_core(const PreferenceProfile& profile);

/// Feasibility of the program with z pinned to a constant (used to certify
/// optimality: z* - epsilon must be infeasible).
bool least_core_feasible_at(const GameView& game, const Rational& z);

/// Under the paper-literal quantifier (S = emptyset included), the core is
/// nonempty exactly when z* == 0.
bool core_is_empty(const PreferenceProfile& profile);

/// How far the Shapley allocation sits outside the least core.
struct ShapleyGapReport {
    Allocation shapley_allocation;
    Rational z_star;
    Rational max_violation;  // max_S (Sum_{i in S} phi_i - c(S) - z*)
    Coalition argmax;        // first coalition attaining the maximum (mask order)
};

ShapleyGapReport shapley_least_core_gap(const PreferenceProfile& profile);

} // namespace parkgame
