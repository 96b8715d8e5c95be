#include "parkgame/leastcore.hpp"

#include "parkgame/errors.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace parkgame {

namespace {

// Dense exact simplex over rows of Rationals. Free structural variables are
// split into positive and negative parts; inequality rows get slacks and
// equality / flipped rows get artificials for phase 1.
class SimplexTableau {
public:
    // `structurals` free variables, constraints over them.
    SimplexTableau(int structurals, const std::vector<LinearConstraint>& rows)
        : num_structural_(structurals) {
        const int m = static_cast<int>(rows.size());
        // Column layout: [u_1..u_p, v_1..v_p] [slacks/surpluses] [artificials] [rhs].
        num_split_ = 2 * num_structural_;
        num_slack_ = m;  // one slack or surplus per inequality; equalities leave theirs unused
        first_artificial_ = num_split_ + num_slack_;

        std::vector<int> artificial_rows;
        matrix_.assign(static_cast<std::size_t>(m),
                       std::vector<Rational>(static_cast<std::size_t>(first_artificial_), Rational()));
        rhs_.assign(static_cast<std::size_t>(m), Rational());
        basis_.assign(static_cast<std::size_t>(m), -1);

        for (int i = 0; i < m; ++i) {
            const LinearConstraint& row = rows[static_cast<std::size_t>(i)];
            if (static_cast<int>(row.coefficients.size()) != num_structural_) {
                throw std::invalid_argument("constraint arity mismatch");
            }
            const bool flip = row.rhs.sign() < 0;  // normalize to rhs >= 0
            const Rational scale = flip ? Rational(-1) : Rational(1);
            for (int j = 0; j < num_structural_; ++j) {
                Rational c = row.coefficients[static_cast<std::size_t>(j)] * scale;
                matrix_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
                matrix_[static_cast<std::size_t>(i)][static_cast<std::size_t>(num_structural_ + j)] = -c;
            }
            rhs_[static_cast<std::size_t>(i)] = row.rhs * scale;
            if (row.equality) {
                artificial_rows.push_back(i);
            } else if (!flip) {
                // a x + slack = rhs, slack basic.
                matrix_[static_cast<std::size_t>(i)][static_cast<std::size_t>(num_split_ + i)] =
                    Rational(1);
                basis_[static_cast<std::size_t>(i)] = num_split_ + i;
            } else {
                // Flipped <= becomes >=: a x - surplus = rhs, artificial basic.
                matrix_[static_cast<std::size_t>(i)][static_cast<std::size_t>(num_split_ + i)] =
                    Rational(-1);
                artificial_rows.push_back(i);
            }
        }

        num_artificial_ = static_cast<int>(artificial_rows.size());
        for (auto& row : matrix_) {
            row.resize(static_cast<std::size_t>(first_artificial_ + num_artificial_), Rational());
        }
        for (int a = 0; a < num_artificial_; ++a) {
            const int i = artificial_rows[static_cast<std::size_t>(a)];
            matrix_[static_cast<std::size_t>(i)][static_cast<std::size_t>(first_artificial_ + a)] =
                Rational(1);
            basis_[static_cast<std::size_t>(i)] = first_artificial_ + a;
        }
    }

    // Returns true when a basic feasible solution exists.
    bool run_phase1() {
        const int cols = total_columns();
        cost_.assign(static_cast<std::size_t>(cols), Rational());
        cost_rhs_ = Rational();
        for (std::size_t i = 0; i < matrix_.size(); ++i) {
            if (basis_[i] >= first_artificial_) {
                for (int j = 0; j < cols; ++j) {
                    cost_[static_cast<std::size_t>(j)] -= matrix_[i][static_cast<std::size_t>(j)];
                }
                cost_rhs_ -= rhs_[i];
            }
        }
        for (int a = 0; a < num_artificial_; ++a) {
            cost_[static_cast<std::size_t>(first_artificial_ + a)] += Rational(1);
        }
        iterate(/*allow_artificial=*/true);
        // Phase-1 objective value is -cost_rhs_.
        return cost_rhs_.is_zero();
    }

    // Pivot any artificial variable that is still basic (at value zero) out
    // of the basis; rows that cannot be pivoted are redundant and harmless
    // because artificial columns are barred from phase 2.
    void expel_artificials() {
        for (std::size_t i = 0; i < matrix_.size(); ++i) {
            if (basis_[i] < first_artificial_) continue;
            assert(rhs_[i].is_zero());
            for (int j = 0; j < first_artificial_; ++j) {
                if (!matrix_[i][static_cast<std::size_t>(j)].is_zero()) {
                    pivot(static_cast<int>(i), j);
                    break;
                }
            }
        }
    }

    // Minimizes `objective` (over all columns; artificial columns excluded).
    void run_phase2(const std::vector<Rational>& structural_objective) {
        const int cols = total_columns();
        cost_.assign(static_cast<std::size_t>(cols), Rational());
        cost_rhs_ = Rational();
        for (int j = 0; j < num_structural_; ++j) {
            cost_[static_cast<std::size_t>(j)] = structural_objective[static_cast<std::size_t>(j)];
            cost_[static_cast<std::size_t>(num_structural_ + j)] =
                -structural_objective[static_cast<std::size_t>(j)];
        }
        // Price out the current basis.
        for (std::size_t i = 0; i < matrix_.size(); ++i) {
            const int b = basis_[i];
            const Rational c = cost_[static_cast<std::size_t>(b)];
            if (c.is_zero()) continue;
            for (int j = 0; j < cols; ++j) {
                cost_[static_cast<std::size_t>(j)] -= c * matrix_[i][static_cast<std::size_t>(j)];
            }
            cost_rhs_ -= c * rhs_[i];
        }
        iterate(/*allow_artificial=*/false);
    }

    Rational objective_value() const { return -cost_rhs_; }

    // Value of structural variable j (the u - v recombination).
    Rational structural_value(int j) const {
        Rational positive = basic_value(j);
        Rational negative = basic_value(num_structural_ + j);
        return positive - negative;
    }

private:
    int total_columns() const { return first_artificial_ + num_artificial_; }

    Rational basic_value(int column) const {
        for (std::size_t i = 0; i < matrix_.size(); ++i) {
            if (basis_[i] == column) return rhs_[i];
        }
        return Rational();
    }

    void iterate(bool allow_artificial) {
        const int limit = allow_artificial ? total_columns() : first_artificial_;
        while (true) {
            // Bland's rule: first column with a negative reduced cost.
            int entering = -1;
            for (int j = 0; j < limit; ++j) {
                if (cost_[static_cast<std::size_t>(j)].sign() < 0) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0) return;  // optimal

            int leaving = -1;
            Rational best_ratio;
            for (std::size_t i = 0; i < matrix_.size(); ++i) {
                const Rational& a = matrix_[i][static_cast<std::size_t>(entering)];
                if (a.sign() <= 0) continue;
                Rational ratio = rhs_[i] / a;
                if (leaving < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[static_cast<std::size_t>(leaving)])) {
                    leaving = static_cast<int>(i);
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) {
                throw std::logic_error("simplex: unbounded program");
            }
            pivot(leaving, entering);
        }
    }

    void pivot(int row, int column) {
        auto& pivot_row = matrix_[static_cast<std::size_t>(row)];
        const Rational inverse = Rational(1) / pivot_row[static_cast<std::size_t>(column)];
        const int cols = total_columns();
        for (int j = 0; j < cols; ++j) {
            pivot_row[static_cast<std::size_t>(j)] *= inverse;
        }
        rhs_[static_cast<std::size_t>(row)] *= inverse;
        for (std::size_t i = 0; i < matrix_.size(); ++i) {
            if (static_cast<int>(i) == row) continue;
            const Rational factor = matrix_[i][static_cast<std::size_t>(column)];
            if (factor.is_zero()) continue;
            for (int j = 0; j < cols; ++j) {
                matrix_[i][static_cast<std::size_t>(j)] -=
                    factor * pivot_row[static_cast<std::size_t>(j)];
            }
            rhs_[i] -= factor * rhs_[static_cast<std::size_t>(row)];
        }
        const Rational cost_factor = cost_[static_cast<std::size_t>(column)];
        if (!cost_factor.is_zero()) {
            for (int j = 0; j < cols; ++j) {
                cost_[static_cast<std::size_t>(j)] -=
                    cost_factor * pivot_row[static_cast<std::size_t>(j)];
            }
            cost_rhs_ -= cost_factor * rhs_[static_cast<std::size_t>(row)];
        }
        basis_[static_cast<std::size_t>(row)] = column;
    }

    int num_structural_;
    int num_split_ = 0;
    int num_slack_ = 0;
    int num_artificial_ = 0;
    int first_artificial_ = 0;
    std::vector<std::vector<Rational>> matrix_;
    std::vector<Rational> rhs_;
    std::vector<Rational> cost_;
    Rational cost_rhs_;
    std::vector<int> basis_;
};

constexpr int kMaxLeastCorePlayers = 16;

void check_player_limit(int n) {
    if (n > kMaxLeastCorePlayers) {
        check_resource(std::uint64_t{1} << n,
                       std::uint64_t{1} << kMaxLeastCorePlayers,
                       "least-core program on " + std::to_string(n) + " players");
    }
}

Rational coalition_sum(const Allocation& allocation, Coalition coalition) {
    Rational sum;
    for (std::size_t i = 0; i < allocation.size(); ++i) {
        if (coalition.contains(static_cast<int>(i) + 1)) sum += allocation[i];
    }
    return sum;
}

} // namespace

LinearProgramExact build_least_core_lp(const GameView& game) {
    const int n = game.players();
    check_player_limit(n);
    LinearProgramExact lp;
    lp.players = n;
    lp.constraints.reserve((std::size_t{1} << n) + 1);

    LinearConstraint efficiency;
    efficiency.coefficients.assign(static_cast<std::size_t>(n) + 1, Rational(1));
    efficiency.coefficients.back() = Rational();  // z does not appear
    efficiency.rhs = Rational(static_cast<std::int64_t>(game.characteristic(Coalition::full(n))));
    efficiency.equality = true;
    lp.constraints.push_back(std::move(efficiency));

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        LinearConstraint row;
        row.coefficients.assign(static_cast<std::size_t>(n) + 1, Rational());
        for (int i = 1; i <= n; ++i) {
            if ((mask >> (i - 1)) & 1) row.coefficients[static_cast<std::size_t>(i - 1)] = Rational(1);
        }
        row.coefficients.back() = Rational(-1);
        row.rhs = Rational(static_cast<std::int64_t>(game.characteristic(Coalition{mask})));
        lp.constraints.push_back(std::move(row));
    }
    return lp;
}

LpSolution solve_lp_exact(const LinearProgramExact& lp) {
    const int structurals = lp.players + 1;
    SimplexTableau tableau(structurals, lp.constraints);
    if (!tableau.run_phase1()) {
        throw std::logic_error("least-core program is infeasible: construction bug");
    }
    tableau.expel_artificials();
    std::vector<Rational> objective(static_cast<std::size_t>(structurals), Rational());
    objective.back() = Rational(1);  // minimize z
    tableau.run_phase2(objective);

    LpSolution solution;
    solution.objective = tableau.objective_value();
    solution.point.reserve(static_cast<std::size_t>(structurals));
    for (int j = 0; j < structurals; ++j) {
        solution.point.push_back(tableau.structural_value(j));
    }
    return solution;
}

LeastCoreResult least_core(const PreferenceProfile& profile) {
    const GameView game{profile};
    const int n = game.players();
    const LinearProgramExact lp = build_least_core_lp(game);
    const LpSolution solution = solve_lp_exact(lp);

    LeastCoreResult result;
    result.z_star = solution.objective;
    result.allocation.assign(solution.point.begin(), solution.point.end() - 1);

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const Coalition coalition{mask};
        const Rational lhs = coalition_sum(result.allocation, coalition);
        const Rational rhs =
            Rational(static_cast<std::int64_t>(game.characteristic(coalition))) + result.z_star;
        if (lhs == rhs) result.tight_coalitions.push_back(coalition);
    }
    return result;
}

bool least_core_feasible_at(const GameView& game, const Rational& z) {
    const int n = game.players();
    check_player_limit(n);
    std::vector<LinearConstraint> rows;
    rows.reserve((std::size_t{1} << n) + 1);

    LinearConstraint efficiency;
    efficiency.coefficients.assign(static_cast<std::size_t>(n), Rational(1));
    efficiency.rhs = Rational(static_cast<std::int64_t>(game.characteristic(Coalition::full(n))));
    efficiency.equality = true;
    rows.push_back(std::move(efficiency));

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        LinearConstraint row;
        row.coefficients.assign(static_cast<std::size_t>(n), Rational());
        for (int i = 1; i <= n; ++i) {
            if ((mask >> (i - 1)) & 1) row.coefficients[static_cast<std::size_t>(i - 1)] = Rational(1);
        }
        row.rhs = Rational(static_cast<std::int64_t>(game.characteristic(Coalition{mask}))) + z;
        rows.push_back(std::move(row));
    }

    SimplexTableau tableau(n, rows);
    return tableau.run_phase1();
}

bool core_is_empty(const PreferenceProfile& profile) {
    return least_core(profile).z_star.sign() > 0;
}

ShapleyGapReport shapley_least_core_gap(const PreferenceProfile& profile) {
    ShapleyGapReport report;
    report.shapley_allocation = shapley(profile);
    const LeastCoreResult lc = least_core(profile);
    report.z_star = lc.z_star;

    const GameView game{profile};
    const int n = game.players();
    const std::uint64_t total = std::uint64_t{1} << n;
    bool first = true;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const Coalition coalition{mask};
        Rational violation = coalition_sum(report.shapley_allocation, coalition) -
                             Rational(static_cast<std::int64_t>(game.characteristic(coalition))) -
                             report.z_star;
        if (first || violation > report.max_violation) {
            report.max_violation = std::move(violation);
            report.argmax = coalition;
            first = false;
        }
    }
    return report;
}

} // namespace parkgame
