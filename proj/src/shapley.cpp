#include "parkgame/shapley.hpp"

#include "parkgame/errors.hpp"
#include "parkgame/factorial.hpp"
#include "parkgame/game.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace parkgame {

int lambda_count(std::span<const int> beta, int t) {
    int count = 0;
    for (int b : beta) {
        if (b >= t + 2) ++count;
    }
    return count;
}

int gamma_count(std::span<const int> beta, int s) {
    int count = 0;
    for (int b : beta) {
        if (b <= s - 2) ++count;
    }
    return count;
}

std::vector<int> raise_min(std::vector<int> beta) {
    if (beta.empty()) {
        throw std::invalid_argument("raise_min requires a nonempty tuple");
    }
    const int minimum = *std::min_element(beta.begin(), beta.end());
    for (int& b : beta) {
        if (b == minimum) ++b;
    }
    return beta;
}

namespace {

std::size_t hash_query(std::span<const int> prefs, int s, int t, int k) {
    // FNV-1a over the tuple content and the segment parameters.
    std::size_t h = 14695981039346656037ULL;
    auto mix = [&h](std::size_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    for (int p : prefs) mix(static_cast<std::size_t>(p));
    mix(static_cast<std::size_t>(s) | (static_cast<std::size_t>(t) << 16) |
        (static_cast<std::size_t>(k) << 32));
    return h;
}

} // namespace

std::size_t QMemo::Hash::operator()(const Key& key) const {
    return hash_query(key.prefs, key.s, key.t, key.k);
}

std::size_t QMemo::Hash::operator()(const KeyView& view) const {
    return hash_query(view.prefs, view.s, view.t, view.k);
}

bool QMemo::Eq::operator()(const KeyView& a, const Key& b) const {
    return a.s == b.s && a.t == b.t && a.k == b.k &&
           std::equal(a.prefs.begin(), a.prefs.end(), b.prefs.begin(), b.prefs.end());
}

const BigInteger* QMemo::find(const KeyView& view) const {
#ifdef __cpp_lib_generic_unordered_lookup
    auto it = map_.find(view);
#else
    auto it = map_.find(Key{{view.prefs.begin(), view.prefs.end()}, view.s, view.t, view.k});
#endif
    return it == map_.end() ? nullptr : &it->second;
}

const BigInteger& QMemo::store(Key key, BigInteger value) {
    return map_.insert_or_assign(std::move(key), std::move(value)).first->second;
}

namespace {

// Recursion state for one count_Q evaluation. Derived tuples are suffixes of
// the base tuple with a raised floor: entry j reads max(base[j], floor),
// which is exactly what repeated applications of U produce on a weakly
// increasing tuple. `scratch` materializes that content for memo keys.
struct QContext {
    std::span<const int> base;
    int t = 0;
    QMemo* memo = nullptr;
    std::vector<int> scratch;

    std::span<const int> materialize(int start, int floor) {
        const std::size_t len = base.size() - static_cast<std::size_t>(start);
        scratch.resize(len);
        for (std::size_t j = 0; j < len; ++j) {
            scratch[j] = std::max(base[static_cast<std::size_t>(start) + j], floor);
        }
        return scratch;
    }
};

BigInteger count_q_rec(QContext& ctx, int start, int floor, int s, int k) {
    // Base cases in the order the recursion lists them: k == 0 wins even for
    // an empty tuple or an empty segment.
    if (k == 0) return BigInteger(std::int64_t{1});
    const int remaining = static_cast<int>(ctx.base.size()) - start;
    if (k > ctx.t - s + 1 || k > remaining) return BigInteger();

    // A floor at or below the front entry raises nothing; canonicalize so the
    // memo key is the tuple content alone.
    if (floor <= ctx.base[static_cast<std::size_t>(start)]) floor = 0;

    {
        const auto content = ctx.materialize(start, floor);
        if (const BigInteger* hit = ctx.memo->find({content, s, ctx.t, k})) {
            return *hit;
        }
    }

    const int front = std::max(ctx.base[static_cast<std::size_t>(start)], floor);
    BigInteger result;
    if (front < s) {
        // The first car cannot park in the segment; drop it.
        result = count_q_rec(ctx, start + 1, floor, s, k);
    } else if (front > s) {
        // Nobody can fill spot s; shrink the segment.
        result = count_q_rec(ctx, start, floor, s + 1, k);
    } else {
        // Select the first car (it takes spot s, so cars that preferred s now
        // prefer s + 1: the U step), or skip it.
        result = count_q_rec(ctx, start + 1, front + 1, s + 1, k - 1);
        result += count_q_rec(ctx, start + 1, floor, s, k);
    }

    // The recursion reuses the scratch buffer, so rebuild this state's
    // content for the stored key.
    const auto content = ctx.materialize(start, floor);
    QMemo::Key key{{content.begin(), content.end()}, s, ctx.t, k};
    return ctx.memo->store(std::move(key), std::move(result));
}

void validate_query(std::span<const int> beta, int s, int t, int k) {
    if (s < 1 || t < -1) {
        throw std::invalid_argument("count_Q requires positive segment bounds");
    }
    if (k < 0) {
        throw std::invalid_argument("count_Q requires k >= 0");
    }
    for (std::size_t j = 0; j < beta.size(); ++j) {
        if (beta[j] < 1 || (j > 0 && beta[j] < beta[j - 1])) {
            throw std::invalid_argument("count_Q requires a weakly increasing positive tuple");
        }
    }
}

} // namespace

BigInteger count_Q(std::span<const int> beta, int s, int t, int k, QMemo& memo) {
    validate_query(beta, s, t, k);
    QContext ctx;
    ctx.base = beta;
    ctx.t = t;
    ctx.memo = &memo;
    ctx.scratch.reserve(beta.size());
    return count_q_rec(ctx, 0, 0, s, k);
}

BigInteger count_Q(const SegmentQuery& query, QMemo& memo) {
    return count_Q(query.prefs, query.first_spot, query.last_spot, query.cars, memo);
}

BigInteger count_Q_bruteforce(const SegmentQuery& query) {
    validate_query(query.prefs, query.first_spot, query.last_spot, query.cars);
    const int len = static_cast<int>(query.prefs.size());
    check_resource(static_cast<std::uint64_t>(len), 20, "count_Q_bruteforce tuple size");
    const int k = query.cars;
    if (k == 0) return BigInteger(std::int64_t{1});
    const int street = query.last_spot - query.first_spot + 1;
    if (k > street || k > len) return BigInteger();

    // March through all k-combinations of indices in lexicographic order.
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<char> occupied(static_cast<std::size_t>(street) + 1, 0);
    std::uint64_t matches = 0;
    while (true) {
        std::fill(occupied.begin(), occupied.end(), 0);
        bool all_parked = true;
        for (int idx : pick) {
            const int shifted = query.prefs[static_cast<std::size_t>(idx)] - query.first_spot + 1;
            if (shifted < 1) {
                all_parked = false;  // prefers a spot before the segment
                break;
            }
            int spot = shifted;
            while (spot <= street && occupied[static_cast<std::size_t>(spot)]) ++spot;
            if (spot > street) {
                all_parked = false;
                break;
            }
            occupied[static_cast<std::size_t>(spot)] = 1;
        }
        if (all_parked) ++matches;

        int pos = k - 1;
        while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == len - k + pos) --pos;
        if (pos < 0) break;
        ++pick[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < k; ++q) {
            pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
        }
    }
    return BigInteger(matches);
}

namespace {

// Q(beta, 1, x, j) for every street length x <= max_street, tabulated in one
// pass per diagonal. A size-j selection parks on the street 1..x iff its
// sorted preferences satisfy c_p <= x - j + p for every p, so all (x, j)
// pairs with the same delta = x - j share one staircase bound and one
// knapsack-style sweep over the tuple.
class PrefixStreetTable {
public:
    PrefixStreetTable(std::span<const int> beta, int max_street) {
        table_.resize(static_cast<std::size_t>(std::max(max_street, -1) + 1));
        for (int x = 0; x <= max_street; ++x) {
            table_[static_cast<std::size_t>(x)].resize(static_cast<std::size_t>(x) + 1);
        }
        const int len = static_cast<int>(beta.size());
        std::vector<BigInteger> row;
        for (int delta = 0; delta <= max_street; ++delta) {
            const int jmax = std::min(max_street - delta, len);
            row.assign(static_cast<std::size_t>(jmax) + 1, BigInteger());
            row[0] = BigInteger(std::int64_t{1});
            for (int e = 0; e < len; ++e) {
                const int b = beta[static_cast<std::size_t>(e)];
                const int top = std::min(jmax, e + 1);
                for (int j = top; j >= 1; --j) {
                    if (b <= delta + j) {
                        row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
                    }
                }
            }
            for (int j = 0; j <= jmax; ++j) {
                const int x = delta + j;
                if (x <= max_street) {
                    table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(j)] =
                        row[static_cast<std::size_t>(j)];
                }
            }
        }
    }

    // Requires street <= the max_street the table was built for.
    const BigInteger& get(int street, int k) const {
        static const BigInteger zero;
        static const BigInteger one(std::int64_t{1});
        if (k == 0) return one;
        if (street < 1 || k > street) return zero;
        return table_[static_cast<std::size_t>(street)][static_cast<std::size_t>(k)];
    }

private:
    std::vector<std::vector<BigInteger>> table_;
};

// Shared evaluation of R(beta, s, t). The lambda/gamma double sum is grouped
// by h = lambda + gamma: both factorials depend on the pair only through h,
// since (t-s+1+h) + (n-t+s-h-2) = n - 1.
//
// `paired_factorials[x]` must hold x! * (n-1-x)!, and `qpre(g)` must return
// Q(beta, 1, s-2, g).
template <typename QPre>
BigInteger segment_r(std::span<const int> beta, int s, int t, int n,
                     const std::vector<BigInteger>& paired_factorials,
                     BinomialTable& binomials, QPre&& qpre) {
    const int lam = lambda_count(beta, t);
    const int gam = gamma_count(beta, s);
    const int block = t - s + 1;

    std::vector<BigInteger> grouped(static_cast<std::size_t>(lam + gam) + 1);
    for (int g = 0; g <= gam; ++g) {
        const BigInteger& q = qpre(g);
        if (q.is_zero()) continue;
        for (int l = 0; l <= lam; ++l) {
            grouped[static_cast<std::size_t>(l + g)].add_product(binomials.choose(
                                                                     static_cast<std::size_t>(lam),
                                                                     static_cast<std::size_t>(l)),
                                                                 q);
        }
    }

    BigInteger total;
    for (int h = 0; h <= lam + gam; ++h) {
        if (grouped[static_cast<std::size_t>(h)].is_zero()) continue;
        const int before = block + h;
        if (before > n - 1) {
            // n - t + s - lambda - gamma - 2 < 0: unreachable when the block
            // s..t is actually fillable from beta.
            throw std::logic_error("segment_weight_R: negative factorial argument");
        }
        total.add_product(grouped[static_cast<std::size_t>(h)],
                          paired_factorials[static_cast<std::size_t>(before)]);
    }
    return total;
}

std::vector<BigInteger> paired_factorial_table(int n) {
    std::vector<BigInteger> table(static_cast<std::size_t>(n));
    for (int x = 0; x <= n - 1; ++x) {
        table[static_cast<std::size_t>(x)] =
            factorial(static_cast<std::size_t>(x)) * factorial(static_cast<std::size_t>(n - 1 - x));
    }
    return table;
}

void require_parking_game(const PreferenceProfile& profile) {
    if (profile.spots() != profile.cars()) {
        throw NotAParkingFunction("Shapley values are defined for profiles with m == n, got " +
                                  profile.to_string());
    }
    if (!is_parking_function(profile)) {
        throw NotAParkingFunction(profile.to_string() + " is not a parking function");
    }
}

// Numerator of phi over n! for the car of rank `rank` in the sorted profile.
BigInteger rank_numerator(const std::vector<int>& sorted, int rank, int n, QMemo& memo) {
    const int preferred = sorted[static_cast<std::size_t>(rank - 1)];
    std::vector<int> beta;
    beta.reserve(static_cast<std::size_t>(n) - 1);
    for (int j = 0; j < n; ++j) {
        if (j != rank - 1) beta.push_back(sorted[static_cast<std::size_t>(j)]);
    }

    const std::vector<BigInteger> paired = paired_factorial_table(n);
    BinomialTable binomials;
    const PrefixStreetTable prefix(beta, std::max(preferred - 2, 0));
    // at_most[x] = number of entries <= x, for a cheap reachability test.
    std::vector<int> at_most(static_cast<std::size_t>(n) + 2, 0);
    for (int b : beta) ++at_most[static_cast<std::size_t>(b)];
    for (std::size_t x = 1; x < at_most.size(); ++x) at_most[x] += at_most[x - 1];

    BigInteger numerator;
    for (int s = 1; s <= preferred; ++s) {
        for (int t = preferred; t <= n - 1; ++t) {
            const int block = t - s + 1;
            // The block can only be filled from preferences inside [s, t].
            if (at_most[static_cast<std::size_t>(t)] - at_most[static_cast<std::size_t>(s - 1)] <
                block) {
                continue;
            }
            const BigInteger filled = count_Q(beta, s, t, block, memo);
            if (filled.is_zero()) continue;
            BigInteger weight = segment_r(beta, s, t, n, paired, binomials,
                                          [&](int g) -> const BigInteger& {
                                              return prefix.get(s - 2, g);
                                          });
            weight.multiply_small(static_cast<std::uint64_t>(t - preferred + 1));
            numerator.add_product(filled, weight);
        }
    }
    return numerator;
}

} // namespace

BigInteger segment_weight_R(std::span<const int> beta, int s, int t, int n, QMemo& memo) {
    if (static_cast<int>(beta.size()) != n - 1) {
        throw std::invalid_argument("segment_weight_R requires |beta'| == n - 1");
    }
    if (s < 1 || t < s || t > n - 1) {
        throw std::invalid_argument("segment_weight_R requires 1 <= s <= t <= n - 1");
    }
    validate_query(beta, s, t, 0);
    const std::vector<BigInteger> paired = paired_factorial_table(n);
    BinomialTable binomials;
    std::vector<BigInteger> qpre_cache;
    return segment_r(beta, s, t, n, paired, binomials, [&](int g) -> const BigInteger& {
        while (static_cast<int>(qpre_cache.size()) <= g) {
            qpre_cache.push_back(count_Q(beta, 1, s - 2, static_cast<int>(qpre_cache.size()), memo));
        }
        return qpre_cache[static_cast<std::size_t>(g)];
    });
}

Rational shapley_car(const PreferenceProfile& profile, int car) {
    require_parking_game(profile);
    const int n = profile.cars();
    if (car < 1 || car > n) {
        throw std::invalid_argument("car index outside [1, n]");
    }
    auto [sorted, ranks] = sorted_rearrangement(profile);
    QMemo memo;
    BigInteger numerator = rank_numerator(sorted.prefs(), ranks.rank(car), n, memo);
    return Rational(std::move(numerator), factorial(static_cast<std::size_t>(n)));
}

Allocation shapley(const PreferenceProfile& profile) {
    require_parking_game(profile);
    const int n = profile.cars();
    auto [sorted, ranks] = sorted_rearrangement(profile);
    const BigInteger n_factorial = factorial(static_cast<std::size_t>(n));

    // Cars with equal preferences are symmetric; compute one rank per
    // distinct value and share the result.
    std::unordered_map<int, Rational> share_by_value;
    Allocation allocation(static_cast<std::size_t>(n));
    for (int car = 1; car <= n; ++car) {
        const int value = profile.pref(car);
        auto it = share_by_value.find(value);
        if (it == share_by_value.end()) {
            QMemo memo;
            BigInteger numerator = rank_numerator(sorted.prefs(), ranks.rank(car), n, memo);
            it = share_by_value.emplace(value, Rational(std::move(numerator), n_factorial)).first;
        }
        allocation[static_cast<std::size_t>(car - 1)] = it->second;
    }
    return allocation;
}

Allocation shapley_bruteforce_perm(const PreferenceProfile& profile) {
    require_parking_game(profile);
    const int n = profile.cars();
    std::uint64_t permutations = 1;
    for (int i = 2; i <= n; ++i) {
        if (permutations > ~std::uint64_t{0} / static_cast<std::uint64_t>(i)) {
            permutations = ~std::uint64_t{0};  // saturate; n! overflows past n = 20
            break;
        }
        permutations *= static_cast<std::uint64_t>(i);
    }
    check_resource(permutations, 362880 /* 9! */, "permutation brute force");

    std::vector<long long> accumulated(static_cast<std::size_t>(n), 0);
    std::vector<int> sequence(static_cast<std::size_t>(n));
    std::iota(sequence.begin(), sequence.end(), 0);
    std::vector<char> occupied(static_cast<std::size_t>(n) + 1, 0);
    do {
        std::fill(occupied.begin(), occupied.end(), 0);
        for (int car : sequence) {
            const int want = profile.prefs()[static_cast<std::size_t>(car)];
            int spot = want;
            while (occupied[static_cast<std::size_t>(spot)]) ++spot;
            occupied[static_cast<std::size_t>(spot)] = 1;
            accumulated[static_cast<std::size_t>(car)] += spot - want;
        }
    } while (std::next_permutation(sequence.begin(), sequence.end()));

    Allocation allocation;
    allocation.reserve(static_cast<std::size_t>(n));
    const BigInteger n_factorial = factorial(static_cast<std::size_t>(n));
    for (long long total : accumulated) {
        allocation.emplace_back(BigInteger(static_cast<std::int64_t>(total)), n_factorial);
    }
    return allocation;
}

Allocation shapley_bruteforce_subset(const PreferenceProfile& profile) {
    require_parking_game(profile);
    const int n = profile.cars();
    if (n > 62) {
        throw ResourceLimitError("subset brute force supports at most 62 cars");
    }
    const std::uint64_t units =
        n >= 58 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(n) << (n - 1);
    check_resource(units, std::uint64_t{20} << 19, "subset brute force");

    // Permutation weight per coalition size: |S|! (n - 1 - |S|)!.
    std::vector<BigInteger> weight(static_cast<std::size_t>(n));
    for (int size = 0; size <= n - 1; ++size) {
        weight[static_cast<std::size_t>(size)] =
            factorial(static_cast<std::size_t>(size)) *
            factorial(static_cast<std::size_t>(n - 1 - size));
    }

    const GameView game{profile};
    Allocation allocation;
    allocation.reserve(static_cast<std::size_t>(n));
    const BigInteger n_factorial = factorial(static_cast<std::size_t>(n));
    for (int car = 1; car <= n; ++car) {
        const std::uint64_t domain = Coalition::full(n).bits & ~(std::uint64_t{1} << (car - 1));
        BigInteger numerator;
        std::uint64_t s = 0;
        while (true) {
            const Coalition coalition{s};
            const long long marginal = game.marginal_cost(coalition, car);
            if (marginal != 0) {
                numerator.add_product(weight[static_cast<std::size_t>(coalition.size())],
                                      BigInteger(static_cast<std::int64_t>(marginal)));
            }
            if (s == domain) break;
            s = (s - domain) & domain;
        }
        allocation.emplace_back(std::move(numerator), n_factorial);
    }
    return allocation;
}

} // namespace parkgame
