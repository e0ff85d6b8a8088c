#include "champs/series_average.hpp"

#include "champs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace champs {

namespace {

struct KahanLD {
    long double sum = 0.0L, comp = 0.0L;
    void add(long double v) {
        const long double y = v - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

std::vector<std::uint64_t> sorted_distinct(std::vector<std::uint64_t> D) {
    if (D.empty()) throw std::domain_error("set must be nonempty");
    std::sort(D.begin(), D.end());
    if (std::adjacent_find(D.begin(), D.end()) != D.end())
        throw std::domain_error("set elements must be distinct");
    return D;
}

int nu_raw(const std::vector<std::uint64_t>& D, std::uint64_t p) {
    std::uint64_t residues[20];
    int count = 0;
    for (std::uint64_t d : D) {
        const std::uint64_t r = d % p;
        bool seen = false;
        for (int i = 0; i < count; ++i)
            if (residues[i] == r) { seen = true; break; }
        if (!seen) residues[count++] = r;
    }
    return count;
}

bool occupies_new_class(const std::vector<std::uint64_t>& D, std::uint64_t d0, std::uint64_t p) {
    const std::uint64_t r = d0 % p;
    for (std::uint64_t d : D)
        if (d % p == r) return false;
    return true;
}

} // namespace

Rational a_of(std::uint64_t p, int nu_base, bool extends) {
    if (nu_base < 1 || static_cast<std::uint64_t>(nu_base) >= p)
        throw std::domain_error("a_of: requires 1 <= nu < p");
    const std::int64_t v = nu_base;
    const std::int64_t pi = static_cast<std::int64_t>(p);
    // ((v - v' + 1) p - v) / ((p - v)(p - 1)) with v' = v or v + 1.
    const BigInt numerator = extends ? BigInt(-v) : BigInt(pi - v);
    const BigInt denominator = BigInt(pi - v) * BigInt(pi - 1);
    return Rational(numerator, denominator);
}

RatioTerm ratio_term(const std::vector<std::uint64_t>& D, std::uint64_t d0, std::uint64_t p) {
    if (!is_prime(p)) throw std::domain_error("ratio_term: modulus must be prime");
    const auto set = sorted_distinct(D);
    if (std::binary_search(set.begin(), set.end(), d0))
        throw std::domain_error("ratio_term: d0 must not lie in D");
    RatioTerm t;
    t.p = p;
    t.nu_base = nu_raw(set, p);
    const bool extends = occupies_new_class(set, d0, p);
    t.nu_ext = t.nu_base + (extends ? 1 : 0);
    t.a_value = a_of(p, t.nu_base, extends);
    t.f_value = extends ? p - static_cast<std::uint64_t>(t.nu_base)
                        : static_cast<std::uint64_t>(t.nu_base);
    return t;
}

AIdentityWitness verify_A_identity(std::uint64_t p, const std::vector<std::uint64_t>& D) {
    if (!is_prime(p)) throw std::domain_error("verify_A_identity: modulus must be prime");
    const auto set = sorted_distinct(D);
    AIdentityWitness w;
    w.p = p;
    w.nu_base = nu_raw(set, p);
    if (static_cast<std::uint64_t>(w.nu_base) == p) {
        w.trivial_zero = true; // no residue class left for an extension
        return w;
    }
    w.a_same = a_of(p, w.nu_base, false);
    w.a_new = a_of(p, w.nu_base, true);
    w.f_same = static_cast<std::uint64_t>(w.nu_base);
    w.f_new = p - static_cast<std::uint64_t>(w.nu_base);
    w.sum = w.a_same * Rational(static_cast<std::int64_t>(w.f_same)) +
            w.a_new * Rational(static_cast<std::int64_t>(w.f_new));
    return w;
}

RatioSeriesValue ratio_S(const std::vector<std::uint64_t>& D, std::uint64_t d0,
                         std::uint64_t truncation_prime) {
    const auto set = sorted_distinct(D);
    if (std::binary_search(set.begin(), set.end(), d0))
        throw std::domain_error("ratio_S: d0 must not lie in D");
    const int n = static_cast<int>(set.size());

    auto united = set;
    united.push_back(d0);
    const auto primes = small_primes_up_to(truncation_prime);
    const auto den = singular_series(set, truncation_prime, primes);
    if (den.zero_flag) throw std::domain_error("ratio_S: series of D vanishes");
    const auto num = singular_series(united, truncation_prime, primes);

    RatioSeriesValue out;
    out.tail_bound = (static_cast<double>(n) * n + static_cast<double>(n + 1) * (n + 1)) /
                     static_cast<double>(truncation_prime - 1);
    if (num.zero_flag) {
        out.zero = true;
        return out;
    }
    out.quotient_path = num.value / den.value;

    KahanLD logprod;
    for (std::uint64_t p : primes) {
        const int v = nu_raw(set, p);
        const bool extends = occupies_new_class(set, d0, p);
        if (extends && static_cast<std::uint64_t>(v) == p - 1) {
            out.zero = true; // 1 + a vanishes: extension fills every class
            return out;
        }
        const long double pv = static_cast<long double>(p) - v;
        const long double pm1 = static_cast<long double>(p) - 1;
        const long double a = extends ? -static_cast<long double>(v) / (pv * pm1) : 1.0L / pm1;
        logprod.add(std::log1p(a));
    }
    out.product_path = static_cast<double>(std::exp(logprod.sum));
    return out;
}

AverageReport average_ratio_sum(const std::vector<std::uint64_t>& D_in, std::uint64_t H,
                                std::uint64_t truncation_prime) {
    if (H < 1) throw std::domain_error("average_ratio_sum: H must be >= 1");
    const auto D = sorted_distinct(D_in);
    const int n = static_cast<int>(D.size());
    if (n > 12) throw std::domain_error("average_ratio_sum: set too large");

    const std::uint64_t lo = std::min<std::uint64_t>(D.front(), 1);
    const std::uint64_t hi = std::max<std::uint64_t>(D.back(), H);
    const std::uint64_t span_max = hi - lo;
    const std::uint64_t needed = min_truncation_prime(span_max, n + 1);
    if (truncation_prime < needed)
        throw std::domain_error("average_ratio_sum: truncation prime below required " +
                                std::to_string(needed));

    AverageReport rep;
    rep.D = D;
    rep.H = H;

    const auto primes = small_primes_up_to(truncation_prime);
    const auto den = singular_series(D, truncation_prime, primes);
    if (den.zero_flag) {
        rep.trivial = true; // the Lemma holds trivially; every term vanishes too
        return rep;
    }

    // Split primes at n+1: small primes are handled per d0 (the extension can
    // vanish there), larger primes default to the new-class factor and get a
    // collision adjustment only when p divides some |d0 - d_i|.
    const std::uint64_t small_cut = static_cast<std::uint64_t>(n) + 1;
    std::vector<std::uint64_t> small_primes;
    KahanLD log_den, total_new;
    std::vector<long double> adj_by_prime(span_max + 2, 0.0L); // lg_same - lg_new
    std::vector<bool> is_collision_candidate(span_max + 2, false);
    for (std::uint64_t p : primes) {
        const int v = nu_raw(D, p);
        log_den.add(log_local_factor(n, v, p));
        if (p <= small_cut) {
            small_primes.push_back(p);
            continue;
        }
        const long double lg_new = log_local_factor(n + 1, v + 1, p);
        total_new.add(lg_new);
        if (p <= span_max + 1) {
            adj_by_prime[p] = log_local_factor(n + 1, v, p) - lg_new;
            is_collision_candidate[p] = true;
        }
    }

    // Smallest-prime-factor table for locating collision primes of d0.
    std::vector<std::uint32_t> spf(span_max + 2, 0);
    for (std::uint64_t i = 2; i <= span_max + 1; ++i) {
        if (spf[i]) continue;
        for (std::uint64_t j = i; j <= span_max + 1; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }

    KahanLD total;
    std::vector<std::uint64_t> collision;
    for (std::uint64_t d0 = 1; d0 <= H; ++d0) {
        if (std::binary_search(D.begin(), D.end(), d0)) continue;

        long double log_num = total_new.sum;
        bool vanished = false;
        for (std::uint64_t p : small_primes) {
            auto united_nu = nu_raw(D, p) + (occupies_new_class(D, d0, p) ? 1 : 0);
            if (static_cast<std::uint64_t>(united_nu) == p) { vanished = true; break; }
            log_num += log_local_factor(n + 1, united_nu, p);
        }
        if (vanished) continue;

        collision.clear();
        for (std::uint64_t d : D) {
            std::uint64_t g = d > d0 ? d - d0 : d0 - d;
            while (g > 1) {
                const std::uint64_t p = spf[g];
                if (p > small_cut && is_collision_candidate[p] &&
                    std::find(collision.begin(), collision.end(), p) == collision.end())
                    collision.push_back(p);
                while (g % p == 0) g /= p;
            }
        }
        for (std::uint64_t p : collision) log_num += adj_by_prime[p];

        total.add(std::exp(log_num - log_den.sum));
    }

    rep.sum = static_cast<double>(total.sum);
    rep.deviation = std::abs(rep.sum - static_cast<double>(H));
    rep.normalized = rep.deviation / std::sqrt(static_cast<double>(H));
    return rep;
}

GallagherReport gallagher_ms_average(int k, std::uint64_t d_limit,
                                     std::uint64_t truncation_prime) {
    if (k != 2 && k != 3) throw std::domain_error("gallagher_ms_average: k must be 2 or 3");
    if (d_limit < 2) throw std::domain_error("gallagher_ms_average: D must be >= 2");
    const std::uint64_t cap = k == 2 ? 300 : 60;
    if (d_limit > cap)
        throw BudgetError("gallagher_ms_average: D = " + std::to_string(d_limit) +
                          " exceeds the brute-force budget (" + std::to_string(cap) +
                          " for k = " + std::to_string(k) + ")");
    const std::uint64_t needed = min_truncation_prime(d_limit - 1, k);
    if (truncation_prime < needed)
        throw std::domain_error("gallagher_ms_average: truncation prime below required " +
                                std::to_string(needed));

    const auto primes = small_primes_up_to(truncation_prime);
    std::map<std::vector<std::uint64_t>, double> memo; // normalized set -> value
    auto series_of = [&](std::vector<std::uint64_t> set) {
        std::sort(set.begin(), set.end());
        const std::uint64_t base = set.front();
        for (auto& v : set) v -= base;
        auto it = memo.find(set);
        if (it != memo.end()) return it->second;
        const auto s = singular_series(set, truncation_prime, primes);
        const double v = s.zero_flag ? 0.0 : s.value;
        memo.emplace(std::move(set), v);
        return v;
    };

    GallagherReport rep;
    rep.k = k;
    rep.d_limit = d_limit;
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;

    KahanLD sum;
    if (k == 2) {
        for (std::uint64_t a = 1; a <= d_limit; ++a)
            for (std::uint64_t b = a + 1; b <= d_limit; ++b) {
                sum.add(factorial * series_of({a, b}));
                rep.tuple_count += 2;
            }
    } else {
        for (std::uint64_t a = 1; a <= d_limit; ++a)
            for (std::uint64_t b = a + 1; b <= d_limit; ++b)
                for (std::uint64_t c = b + 1; c <= d_limit; ++c) {
                    sum.add(factorial * series_of({a, b, c}));
                    rep.tuple_count += 6;
                }
    }
    rep.brute_sum = static_cast<double>(sum.sum);

    const double D = static_cast<double>(d_limit);
    const double binom = k * (k - 1) / 2.0;
    const double gamma = std::numbers::egamma_v<double>;
    rep.leading = std::pow(D, k);
    rep.ms_three_term = rep.leading - binom * std::pow(D, k - 1) * std::log(D) +
                        binom * (1.0 - gamma - std::log(2.0 * std::numbers::pi_v<double>)) *
                            std::pow(D, k - 1);
    rep.rel_err_leading = std::abs(rep.leading - rep.brute_sum) / rep.brute_sum;
    rep.rel_err_ms = std::abs(rep.ms_three_term - rep.brute_sum) / rep.brute_sum;
    return rep;
}

OrwReport orw_average(int k, std::uint64_t D, std::uint64_t H, std::uint64_t truncation_prime) {
    if (k < 3 || k > 8) throw std::domain_error("orw_average: k must be in [3, 8]");
    if (H < 1 || H > D) throw std::domain_error("orw_average: need 1 <= H <= D");

    // C(H-1, k-2) inner tuples.
    double tuples = 1.0;
    for (int i = 0; i < k - 2; ++i)
        tuples *= std::max(static_cast<double>(H - 1 - i), 0.0) / (i + 1);
    if (tuples > 300000.0)
        throw BudgetError("orw_average: about " + std::to_string(static_cast<long long>(tuples)) +
                          " tuples exceed the brute-force budget of 300000");

    const std::uint64_t needed = min_truncation_prime(D, k);
    if (truncation_prime < needed)
        throw std::domain_error("orw_average: truncation prime below required " +
                                std::to_string(needed));

    const auto primes = small_primes_up_to(truncation_prime);
    OrwReport rep;
    rep.k = k;
    rep.D = D;
    rep.H = H;

    KahanLD sum;
    std::vector<std::uint64_t> tuple;
    auto rec = [&](auto&& self, std::uint64_t start) -> void {
        if (tuple.size() == static_cast<std::size_t>(k - 2)) {
            std::vector<std::uint64_t> set;
            set.reserve(static_cast<std::size_t>(k));
            set.push_back(0);
            set.insert(set.end(), tuple.begin(), tuple.end());
            set.push_back(D);
            const auto s = singular_series(set, truncation_prime, primes);
            sum.add(s.zero_flag ? 0.0 : s.value);
            ++rep.term_count;
            return;
        }
        for (std::uint64_t d = start; d < H; ++d) {
            tuple.push_back(d);
            self(self, d + 1);
            tuple.pop_back();
        }
    };
    rec(rec, 1);

    rep.lhs_sum = static_cast<double>(sum.sum);
    double factorial = 1.0;
    for (int i = 2; i <= k - 2; ++i) factorial *= i;
    const auto sD = singular_series(std::vector<std::uint64_t>{0, D}, truncation_prime, primes);
    const double series_D = sD.zero_flag ? 0.0 : sD.value;
    rep.rhs_main = series_D * std::pow(static_cast<double>(H), k - 2) / factorial;
    rep.deviation = std::abs(rep.lhs_sum - rep.rhs_main);
    rep.degenerate = rep.term_count == 0;
    rep.normalized = rep.rhs_main > 0.0
                         ? std::abs(rep.lhs_sum / rep.rhs_main - 1.0) *
                               std::sqrt(static_cast<double>(H))
                         : 0.0;
    return rep;
}

} // namespace champs
