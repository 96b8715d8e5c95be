// Acceptance suite: every release criterion, one pass/fail line each.
// Exits nonzero if any criterion fails its exact checks or time budget.

#include "parkgame/factorial.hpp"
#include "parkgame/game.hpp"
#include "parkgame/leastcore.hpp"
#include "parkgame/parking.hpp"
#include "parkgame/shapley.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace parkgame;

namespace {

struct Criterion {
    int number;
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

PreferenceProfile sample_parking_function(int n, std::mt19937_64& rng) {
    std::vector<int> prefs(static_cast<std::size_t>(n));
    while (true) {
        for (int& x : prefs) x = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        PreferenceProfile candidate(prefs);
        if (sorted_criterion_holds(candidate)) return candidate;
    }
}

Rational sum_of(const Allocation& allocation) {
    Rational total;
    for (const Rational& share : allocation) total += share;
    return total;
}

bool expect(bool condition, const std::string& what, std::string& detail) {
    if (!condition && detail.empty()) detail = what;
    return condition;
}

// Shared between criteria 4 and 5: every instance checked for oracle
// equivalence also feeds the axiom suite.
std::vector<std::pair<PreferenceProfile, Allocation>> equivalence_instances;

bool criterion1(std::string& detail) {
    const PreferenceProfile profile({1, 4, 3, 3, 1, 2, 7});
    const Allocation shares = shapley(profile);
    const Allocation expected = {Rational::of(47, 30), Rational::of(17, 30), Rational::of(67, 60),
                                 Rational::of(67, 60), Rational::of(47, 30), Rational::of(16, 15),
                                 Rational(0)};
    bool ok = expect(shares == expected, "allocation mismatch", detail);
    ok = expect(sum_of(shares) == Rational(7), "shares do not sum to 7", detail) && ok;
    return ok;
}

bool criterion2(std::string& detail) {
    // alpha' = (1,1,2,3,3,4,7), rank 6 (preference 4) removed, s = 2, t = 4.
    const std::vector<int> beta = {1, 1, 2, 3, 3, 7};
    QMemo memo;
    const BigInteger block_count = count_Q(beta, 2, 4, 3, memo);
    const BigInteger weight = segment_weight_R(beta, 2, 4, 7, memo);
    // Contribution (t - a' + 1) * Q * R with t - a' + 1 = 1.
    BigInteger contribution = block_count * weight;
    bool ok = expect(block_count == BigInteger(1), "Q(beta,2,4,3) != 1", detail);
    ok = expect(contribution == BigInteger(84), "term is not 84", detail) && ok;
    return ok;
}

bool criterion3(std::string& detail) {
    const PreferenceProfile profile({1, 1, 2});
    const Allocation shares = shapley(profile);
    bool ok = expect(shares == Allocation{Rational::of(5, 6), Rational::of(5, 6),
                                          Rational::of(1, 3)},
                     "Shapley allocation mismatch", detail);

    const LeastCoreResult lc = least_core(profile);
    ok = expect(lc.z_star == Rational(1), "z* != 1", detail) && ok;
    ok = expect(lc.allocation == Allocation{Rational(1), Rational(1), Rational(0)},
                "least-core allocation != (1,1,0)", detail) &&
         ok;

    const ShapleyGapReport gap = shapley_least_core_gap(profile);
    ok = expect(gap.max_violation == Rational::of(1, 6), "violation != 1/6", detail) && ok;
    ok = expect(gap.argmax == Coalition::of({1, 3}), "argmax coalition != {1,3}", detail) && ok;
    const Rational lhs = shares[0] + shares[2];
    ok = expect(lhs == Rational::of(7, 6), "phi_1 + phi_3 != 7/6", detail) && ok;
    ok = expect(Rational(GameView{profile}.characteristic(Coalition::of({1, 3}))) + lc.z_star ==
                    Rational(1),
                "c({1,3}) + z* != 1", detail) &&
         ok;
    return ok;
}

bool criterion4(std::string& detail) {
    equivalence_instances.clear();
    for (int n = 4; n <= 5; ++n) {
        int members = 0;
        for (const auto& p : enumerate_parking_functions(n, n, false)) {
            ++members;
            const Allocation fast = shapley(p);
            const Allocation by_subset = shapley_bruteforce_subset(p);
            const Allocation by_perm = shapley_bruteforce_perm(p);
            if (!expect(fast == by_subset && by_subset == by_perm,
                        "oracle mismatch on " + p.to_string(), detail)) {
                return false;
            }
            equivalence_instances.emplace_back(p, fast);
        }
        const int expected = n == 4 ? 125 : 1296;
        if (!expect(members == expected, "PF_" + std::to_string(n) + " enumeration size", detail)) {
            return false;
        }
    }
    std::mt19937_64 rng(0xACCE0004ULL);
    for (int n = 6; n <= 7; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            const PreferenceProfile p = sample_parking_function(n, rng);
            const Allocation fast = shapley(p);
            const Allocation by_subset = shapley_bruteforce_subset(p);
            const Allocation by_perm = shapley_bruteforce_perm(p);
            if (!expect(fast == by_subset && by_subset == by_perm,
                        "oracle mismatch on " + p.to_string(), detail)) {
                return false;
            }
            equivalence_instances.emplace_back(p, fast);
        }
    }
    return true;
}

bool criterion5(std::string& detail) {
    if (equivalence_instances.empty()) {
        detail = "criterion 4 did not run";
        return false;
    }
    for (const auto& [profile, shares] : equivalence_instances) {
        const int n = profile.cars();
        if (!expect(sum_of(shares) == Rational(total_displacement(profile)),
                    "efficiency fails on " + profile.to_string(), detail)) {
            return false;
        }
        for (int i = 1; i <= n; ++i) {
            if (!expect(shares[static_cast<std::size_t>(i - 1)].sign() >= 0,
                        "negative share on " + profile.to_string(), detail)) {
                return false;
            }
            for (int j = i + 1; j <= n; ++j) {
                if (profile.pref(i) == profile.pref(j) &&
                    !expect(shares[static_cast<std::size_t>(i - 1)] ==
                                shares[static_cast<std::size_t>(j - 1)],
                            "symmetry fails on " + profile.to_string(), detail)) {
                    return false;
                }
            }
        }
        if (n > 5) continue;
        // Nullity, brute force: zero marginals everywhere imply a zero share.
        const GameView game{profile};
        for (int car = 1; car <= n; ++car) {
            const std::uint64_t domain =
                Coalition::full(n).bits & ~(std::uint64_t{1} << (car - 1));
            bool null_player = true;
            std::uint64_t mask = 0;
            while (null_player) {
                if (game.marginal_cost(Coalition{mask}, car) != 0) null_player = false;
                if (mask == domain) break;
                mask = (mask - domain) & domain;
            }
            if (null_player &&
                !expect(shares[static_cast<std::size_t>(car - 1)] == Rational(0),
                        "nullity fails on " + profile.to_string(), detail)) {
                return false;
            }
        }
    }
    return true;
}

bool criterion6(std::string& detail) {
    for (int n = 1; n <= 6; ++n) {
        const auto members = enumerate_parking_functions(n, n, false);
        if (!expect(BigInteger(static_cast<std::int64_t>(members.size())) ==
                        pow(BigInteger(n + 1), static_cast<std::uint64_t>(n - 1)),
                    "PF_" + std::to_string(n) + " count", detail)) {
            return false;
        }
    }
    const std::vector<long long> catalan = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
    for (int n = 1; n <= 8; ++n) {
        const auto members = enumerate_parking_functions(n, n, true);
        if (!expect(static_cast<long long>(members.size()) ==
                        catalan[static_cast<std::size_t>(n)],
                    "Catalan count at n=" + std::to_string(n), detail)) {
            return false;
        }
    }
    for (int n = 1; n <= 6; ++n) {
        for (int m = n; m <= 6; ++m) {
            const auto members = enumerate_parking_functions(n, m, false);
            if (!expect(BigInteger(static_cast<std::int64_t>(members.size())) ==
                            count_parking_functions(n, m),
                        "PF_{" + std::to_string(n) + "," + std::to_string(m) + "} count",
                        detail)) {
                return false;
            }
        }
    }
    return true;
}

bool criterion7(std::string& detail) {
    std::mt19937_64 rng(0xACCE0007ULL);
    int checked = 0;
    while (checked < 1000) {
        const int n = 1 + static_cast<int>(rng() % 7);
        const int m = (rng() & 1) ? n : n + 2;
        std::vector<int> prefs(static_cast<std::size_t>(n));
        for (int& x : prefs) x = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m));
        const PreferenceProfile p(prefs, m);
        if (!is_parking_function(p)) continue;
        std::vector<int> seq(static_cast<std::size_t>(n));
        std::iota(seq.begin(), seq.end(), 0);
        std::shuffle(seq.begin(), seq.end(), rng);
        const auto base = simulate_park(p, ArrivalOrder::identity(n));
        const auto permuted = simulate_park(p, ArrivalOrder::from_sequence(seq));
        if (!expect(permuted.parked(), "permuted order failed to park " + p.to_string(),
                    detail)) {
            return false;
        }
        if (!expect(permuted.displacement == base.displacement,
                    "displacement changed under permutation for " + p.to_string(), detail)) {
            return false;
        }
        const std::set<int> a(base.spots.begin(), base.spots.end());
        const std::set<int> b(permuted.spots.begin(), permuted.spots.end());
        if (!expect(a == b, "occupied set changed under permutation for " + p.to_string(),
                    detail)) {
            return false;
        }
        ++checked;
    }
    return true;
}

bool criterion8(std::string& detail) {
    for (const auto& p : enumerate_parking_functions(4, 4, false)) {
        if (!expect(check_supermodular(GameView{p}).holds,
                    "supermodularity fails on " + p.to_string(), detail)) {
            return false;
        }
    }
    std::mt19937_64 rng(0xACCE0008ULL);
    for (int trial = 0; trial < 100; ++trial) {
        const PreferenceProfile p = sample_parking_function(10, rng);
        if (!expect(check_supermodular(GameView{p}).holds,
                    "supermodularity fails on " + p.to_string(), detail)) {
            return false;
        }
    }
    return true;
}

bool criterion9(std::string& detail) {
    int permutations = 0;
    int displaced = 0;
    for (const auto& p : enumerate_parking_functions(4, 4, false)) {
        const bool modular = is_modular(GameView{p});
        const LeastCoreResult lc = least_core(p);
        if (modular) {
            ++permutations;
            if (!expect(lc.z_star == Rational(0), "z* != 0 on permutation " + p.to_string(),
                        detail)) {
                return false;
            }
        } else {
            ++displaced;
            if (!expect(lc.z_star.sign() > 0, "z* == 0 on non-permutation " + p.to_string(),
                        detail)) {
                return false;
            }
        }
    }
    bool ok = expect(permutations == 24, "expected 24 permutation profiles", detail);
    ok = expect(displaced == 101, "expected 101 non-permutation profiles", detail) && ok;
    return ok;
}

bool criterion10(std::string& detail) {
    std::mt19937_64 rng(0xACCE0010ULL);
    const PreferenceProfile p = sample_parking_function(100, rng);

    const auto start = std::chrono::steady_clock::now();
    const Allocation shares = shapley(p);
    const auto stop = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(stop - start).count();

    bool ok = expect(seconds < 10.0,
                     "polynomial Shapley took " + std::to_string(seconds) + " s", detail);
    ok = expect(sum_of(shares) == Rational(total_displacement(p)),
                "efficiency fails at n=100", detail) &&
         ok;
    bool refused = false;
    try {
        shapley_bruteforce_perm(p);
    } catch (const ResourceLimitError&) {
        refused = true;
    }
    ok = expect(refused, "permutation brute force did not refuse n=100", detail) && ok;
    detail = "poly n=100 in " + std::to_string(seconds) + " s; factorial sum refused";
    return ok;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "golden Shapley values for (1,4,3,3,1,2,7)", 1.0, criterion1},
        {2, "84 term trace at (s=2, t=4), rank 6 of (1,1,2,3,3,4,7)", 1.0, criterion2},
        {3, "counterexample suite for (1,1,2)", 1.0, criterion3},
        {4, "oracle equivalence: PF_4, PF_5 exhaustive; 200 each of PF_6, PF_7", 120.0,
         criterion4},
        {5, "axioms (efficiency, symmetry, nonnegativity, nullity) on criterion-4 instances",
         120.0, criterion5},
        {6, "enumeration counts vs closed forms", 60.0, criterion6},
        {7, "1000 permutation-invariance samples, n <= 7, m in {n, n+2}", 30.0, criterion7},
        {8, "supermodularity: all PF_4 and 100 x PF_10", 60.0, criterion8},
        {9, "core emptiness boundary over PF_4", 120.0, criterion9},
        {10, "PF_100 polynomial Shapley under 10 s; factorial sum refused", 10.0, criterion10},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const auto stop = std::chrono::steady_clock::now();
        const double seconds = std::chrono::duration<double>(stop - start).count();
        if (seconds >= criterion.budget_seconds) {
            ok = false;
            detail = "exceeded " + std::to_string(criterion.budget_seconds) + " s budget";
        }
        std::printf("criterion %2d: %s  %s (%.2f s)%s%s\n", criterion.number,
                    ok ? "PASS" : "FAIL", criterion.name.c_str(), seconds,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failures;
    }
    if (failures == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}
