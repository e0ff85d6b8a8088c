#include "champs/hl_model.hpp"

#include "champs/errors.hpp"
#include "champs/gap_census.hpp"
#include "champs/prime_engine.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace champs;

namespace {

// Oracle: fixed-grid composite Simpson on the raw t-domain, applied per
// dyadic block so the step scales with t.
double oracle_li_power(double x, int n) {
    if (x <= 2.0) return 0.0;
    auto f = [n](double t) { return 1.0 / std::pow(std::log(t), n); };
    auto block = [&](double a, double b) {
        constexpr std::size_t panels = 4096; // even
        const double h = (b - a) / static_cast<double>(panels);
        double sum = f(a) + f(b);
        for (std::size_t i = 1; i < panels; ++i)
            sum += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
        return sum * h / 3.0;
    };
    double total = 0.0, a = 2.0;
    while (a < x) {
        const double b = std::min(2.0 * a, x);
        total += block(a, b);
        a = b;
    }
    return total;
}

} // namespace

TEST_CASE("li_power edge cases") {
    CHECK(li_power(2.0, 1) == 0.0);
    CHECK_THROWS_AS(li_power(1.9, 1), std::domain_error);
    CHECK_THROWS_AS(li_power(10.0, 0), std::domain_error);
}

TEST_CASE("li_power agrees with an independent Simpson rule") {
    // two independent quadrature routes, 1e-8 relative agreement
    const double v1 = li_power(1e6, 1);
    CHECK(std::abs(v1 / oracle_li_power(1e6, 1) - 1.0) < 1e-8);
    CHECK(v1 == doctest::Approx(78626.5039956821).epsilon(1e-9));

    const double v2 = li_power(1e4, 2);
    CHECK(std::abs(v2 / oracle_li_power(1e4, 2) - 1.0) < 1e-8);
    CHECK(v2 == doctest::Approx(162.2412374429).epsilon(1e-9));

    for (double x : {50.0, 1e3, 1e5, 1e7}) {
        for (int n : {1, 2, 3, 4}) {
            CHECK(std::abs(li_power(x, n) / oracle_li_power(x, n) - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("predict_pi_tuple vanishes exactly on inadmissible sets") {
    const auto p = predict_pi_tuple(1e6, {0, 2, 4});
    CHECK(p.series.zero_flag);
    CHECK(p.integral_form == 0.0);
    CHECK(p.ratio_form == 0.0);
}

TEST_CASE("predict_pi_tuple for D={0} reduces to li and tracks pi(x)") {
    SieveConfig cfg;
    cfg.threads = 2;
    for (double x : {1e5, 1e6, 1e7}) {
        const auto pred = predict_pi_tuple(x, {0});
        CHECK(pred.series.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pred.integral_form == doctest::Approx(li_power(x, 1)).epsilon(1e-12));
        const auto pi_x = count_primes_up_to(static_cast<std::uint64_t>(x), cfg);
        CHECK(std::abs(pred.integral_form / static_cast<double>(pi_x) - 1.0) < 0.01);
    }
    // pinned example: within 0.3% of pi(1e6) = 78498
    const auto pred = predict_pi_tuple(1e6, {0});
    CHECK(std::abs(pred.integral_form / 78498.0 - 1.0) < 0.003);
}

TEST_CASE("predict_pi_tuple twin prediction within 5% of the census at 1e6") {
    const auto pred = predict_pi_tuple(1e6, {0, 2}, 1000000);
    const auto empirical = pi_tuple_empirical(1000000, {0, 2});
    CHECK(empirical == 8169);
    CHECK(std::abs(pred.integral_form / static_cast<double>(empirical) - 1.0) < 0.05);
}

TEST_CASE("predict_N correction factor is the literal formula") {
    const double x = std::exp(100.0); // synthetic large x
    const auto pred = predict_N(x, GapPattern({2}));
    CHECK(pred.correction_factor == doctest::Approx(0.98).epsilon(1e-12));
    CHECK_FALSE(pred.regime_warning);

    const auto p6 = predict_N(1e6, GapPattern({6}));
    CHECK(p6.corrected / p6.main_term ==
          doctest::Approx(1.0 - 6.0 / std::log(1e6)).epsilon(1e-12));
    CHECK(p6.main_term_ratio_form ==
          doctest::Approx(p6.series.value * 1e6 / std::pow(std::log(1e6), 2)).epsilon(1e-12));

    // regime warning attached but values still computed
    const auto tight = predict_N(100.0, GapPattern({30}));
    CHECK(tight.regime_warning);
    CHECK(tight.main_term > 0.0);
}

TEST_CASE("sieve_upper_bound formula instantiation and empirical domination") {
    const std::uint64_t P = 1000000;
    const auto s = singular_series({0, 2}, P);
    const double bound = sieve_upper_bound(1e6, {0, 2}, P);
    CHECK(bound ==
          doctest::Approx(8.0 * s.value * 1e6 / std::pow(std::log(1e6), 2)).epsilon(1e-12));
    CHECK(static_cast<double>(pi_tuple_empirical(1000000, {0, 2})) <= bound);

    // n = 1: 2 x / log x dominates pi(x)
    const double b1 = sieve_upper_bound(1e6, {0}, 1000);
    CHECK(b1 == doctest::Approx(2.0 * 1e6 / std::log(1e6)).epsilon(1e-12));
    CHECK(78498.0 <= b1);

    CHECK_THROWS_AS(sieve_upper_bound(1e6, {0, 2, 4}, 1000), std::domain_error);
}

TEST_CASE("series pair identity: S({0,2m}) = S({0,2}) * prod over odd p | m of (p-1)/(p-2)") {
    const std::uint64_t P = 4096;
    const auto primes = small_primes_up_to(P);
    const auto twin = singular_series({0, 2}, P, primes);
    for (std::uint64_t d = 2; d <= 1000; d += 2) {
        double expected = twin.value;
        for (const auto& [p, e] : factorize(d)) {
            (void)e;
            if (p > 2) expected *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
        }
        const auto s = singular_series({0, d}, P, primes);
        CHECK(s.value == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("predict_champion crossover between gaps 2 and 6 sits at log x = 10") {
    const auto family = PatternFamily::explicit_list({GapPattern({2}), GapPattern({6})});
    const auto below = predict_champion(std::exp(9.5), 1, family, 100000);
    REQUIRE(below.size() == 2);
    CHECK(below[0].pattern == GapPattern({2}));
    const auto above = predict_champion(std::exp(10.5), 1, family, 100000);
    CHECK(above[0].pattern == GapPattern({6}));
}

TEST_CASE("predict_champion k=1 at 1e6 ranks 6 first over the default family") {
    const auto ranked = predict_champion(1e6, 1, PatternFamily::default_family(1e6, 1), 100000);
    REQUIRE_FALSE(ranked.empty());
    CHECK(ranked[0].pattern == GapPattern({6}));
    CHECK(ranked[0].rank == 1);
}

TEST_CASE("predict_champion keeps ties and filters vanishing patterns") {
    // S({0,2,6}) == S({0,4,6}) and d_k matches: an exact tie.
    const auto fam = PatternFamily::explicit_list(
        {GapPattern({2, 6}), GapPattern({4, 6}), GapPattern({2, 4})});
    const auto ranked = predict_champion(1e6, 2, fam, 10000);
    REQUIRE(ranked.size() == 2); // {2,4} has vanishing series and is dropped
    CHECK(ranked[0].rank == 1);
    CHECK(ranked[1].rank == 1);
    CHECK(ranked[0].pattern == GapPattern({2, 6}));
    CHECK(ranked[1].pattern == GapPattern({4, 6}));

    CHECK_THROWS_AS(predict_champion(1e6, 1, PatternFamily{}, 1000), std::domain_error);
    CHECK_THROWS_AS(predict_champion(1e6, 1, fam, 10000), std::domain_error); // k mismatch
}

TEST_CASE("predict_champion singleton family") {
    const auto ranked =
        predict_champion(1e4, 1, PatternFamily::explicit_list({GapPattern({2})}), 10000);
    REQUIRE(ranked.size() == 1);
    CHECK(ranked[0].pattern == GapPattern({2}));
}

TEST_CASE("ranking is invariant under positive scaling of the corrected values") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<int, double>> values;
        for (int i = 0; i < 12; ++i)
            values.push_back({i, static_cast<double>(rng() % 1000) / 8.0});
        const double scale = static_cast<double>(rng() % 50 + 1) / 7.0;
        auto by_value = values, by_scaled = values;
        std::stable_sort(by_value.begin(), by_value.end(),
                         [](auto& a, auto& b) { return a.second > b.second; });
        std::stable_sort(by_scaled.begin(), by_scaled.end(), [&](auto& a, auto& b) {
            return a.second * scale > b.second * scale;
        });
        CHECK(by_value == by_scaled);
    }
}

TEST_CASE("default_family respects the budget guard") {
    CHECK_THROWS_AS(PatternFamily::default_family(1e8, 8), BudgetError);
    const auto fam = PatternFamily::default_family(1e6, 2);
    CHECK_FALSE(fam.patterns.empty());
    for (const auto& pat : fam.patterns) CHECK(pat.k() == 2);
}

TEST_CASE("corrected prediction drifts toward the census for gaps 2, 4, 6" *
          doctest::timeout(600)) {
    SieveConfig cfg;
    cfg.threads = 2;
    const std::vector<std::uint64_t> xs = {10000, 100000, 1000000, 10000000};
    const auto snaps = run_census(xs, 1, Anchor::largest_le_x, cfg);
    for (std::uint32_t gap : {2u, 4u, 6u}) {
        std::vector<double> err;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const auto pred = predict_N(static_cast<double>(xs[i]), GapPattern({gap}), 100000);
            const double emp = static_cast<double>(snaps[i].counts.at(GapPattern({gap})));
            err.push_back(std::abs(emp / pred.corrected - 1.0));
        }
        int decreases = 0;
        for (std::size_t i = 1; i < err.size(); ++i)
            if (err[i] < err[i - 1]) ++decreases;
        CAPTURE(gap);
        CHECK(decreases >= 2); // drift toward 1 in at least 2 of 3 steps
    }
}
