#include "champs/singular_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace champs {

double SingularSeriesValue::lower_enclosure() const {
    return zero_flag ? 0.0 : value * std::exp(-tail_bound);
}

double SingularSeriesValue::upper_enclosure() const {
    return zero_flag ? 0.0 : value * std::exp(tail_bound);
}

namespace {

std::vector<std::uint64_t> normalized_set(std::vector<std::uint64_t> D) {
    if (D.empty()) throw std::domain_error("singular series: set must be nonempty");
    std::sort(D.begin(), D.end());
    if (std::adjacent_find(D.begin(), D.end()) != D.end())
        throw std::domain_error("singular series: set elements must be distinct");
    const std::uint64_t base = D.front();
    for (auto& d : D) d -= base;
    return D;
}

int nu_sorted(const std::vector<std::uint64_t>& D, std::uint64_t p) {
    // Distinct residues of a small sorted set; n is tiny here.
    std::uint64_t residues[16];
    int count = 0;
    for (std::uint64_t d : D) {
        std::uint64_t r = d % p;
        bool seen = false;
        for (int i = 0; i < count; ++i)
            if (residues[i] == r) { seen = true; break; }
        if (!seen) residues[count++] = r;
    }
    return count;
}

} // namespace

int nu(const std::vector<std::uint64_t>& D, std::uint64_t p) {
    if (!is_prime(p)) throw std::domain_error("nu: modulus must be prime");
    if (D.empty()) throw std::domain_error("nu: set must be nonempty");
    if (D.size() > 16) throw std::domain_error("nu: set too large");
    return nu_sorted(D, p);
}

Rational local_factor(const std::vector<std::uint64_t>& D, std::uint64_t p) {
    if (!is_prime(p)) throw std::domain_error("local_factor: modulus must be prime");
    const auto norm = normalized_set(D);
    const int n = static_cast<int>(norm.size());
    const int v = nu_sorted(norm, p);
    // (1-1/p)^{-n} (1-v/p) = p^{n-1} (p-v) / (p-1)^n
    BigUint num = BigUint::pow(BigUint(p), static_cast<unsigned>(n - 1)) *
                  BigUint(p - static_cast<std::uint64_t>(v));
    BigUint den = BigUint::pow(BigUint(p - 1), static_cast<unsigned>(n));
    return Rational(BigInt(1, std::move(num)), BigInt(1, std::move(den)));
}

long double log_local_factor(int n, int nu_p, std::uint64_t p) {
    if (nu_p >= static_cast<int>(p)) return -std::numeric_limits<long double>::infinity();
    const long double pl = static_cast<long double>(p);
    return std::log1p(-static_cast<long double>(nu_p) / pl) -
           n * std::log1p(-1.0L / pl);
}

std::uint64_t min_truncation_prime(std::uint64_t span, int n) {
    const std::uint64_t nn = static_cast<std::uint64_t>(n);
    std::uint64_t need = 2 * nn * nn;
    if (span > need) need = span;
    if (nn + 1 > need) need = nn + 1;
    return need;
}

SingularSeriesValue singular_series(std::vector<std::uint64_t> D, std::uint64_t truncation_prime) {
    const auto primes = small_primes_up_to(std::max<std::uint64_t>(truncation_prime, 2));
    return singular_series(std::move(D), truncation_prime, primes);
}

SingularSeriesValue singular_series(std::vector<std::uint64_t> D, std::uint64_t truncation_prime,
                                    std::span<const std::uint64_t> primes) {
    const auto norm = normalized_set(std::move(D));
    const int n = static_cast<int>(norm.size());
    if (n > 16) throw std::domain_error("singular series: set too large");
    const std::uint64_t span = norm.back();
    const std::uint64_t needed = min_truncation_prime(span, n);
    if (truncation_prime < needed)
        throw std::domain_error("singular series: truncation prime " +
                                std::to_string(truncation_prime) + " below required " +
                                std::to_string(needed) + " (tail bound would be invalid)");

    SingularSeriesValue out;
    out.truncation_prime = truncation_prime;

    // The series vanishes iff nu(p) == p, possible only for p <= n.
    for (std::uint64_t p : primes) {
        if (p > static_cast<std::uint64_t>(n)) break;
        if (nu_sorted(norm, p) == static_cast<int>(p)) {
            out.zero_flag = true;
            return out;
        }
    }

    long double sum = 0.0L, comp = 0.0L; // Kahan
    for (std::uint64_t p : primes) {
        if (p > truncation_prime) break;
        const int v = nu_sorted(norm, p);
        const long double term = log_local_factor(n, v, p);
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    out.value = static_cast<double>(std::exp(sum));
    out.tail_bound = static_cast<double>(n) * static_cast<double>(n) /
                     static_cast<double>(truncation_prime - 1);
    return out;
}

GcdDecomposition gcd_decompose(const GapPattern& D) {
    GcdDecomposition out;
    out.d = D.gcd();
    out.reduced.reserve(D.diffs().size());
    for (std::uint32_t v : D.diffs())
        out.reduced.push_back(static_cast<std::uint32_t>(v / out.d));
    return out;
}

BigUint primorial(unsigned n) {
    if (n == 0) throw std::domain_error("primorial: n must be >= 1");
    // p_n < n (log n + log log n) for n >= 6; generous bound below.
    std::uint64_t bound = 30 + static_cast<std::uint64_t>(
        n * (std::log(n + 1.0) + std::log(std::log(n + 6.0)) + 2.0));
    auto primes = small_primes_up_to(bound);
    while (primes.size() < n) {
        bound *= 2;
        primes = small_primes_up_to(bound);
    }
    BigUint r(1);
    for (unsigned i = 0; i < n; ++i) r.mul_small(static_cast<std::uint32_t>(primes[i]));
    return r;
}

BigUint floor_primorial_exact(const BigUint& y) {
    if (y < BigUint(2)) throw std::domain_error("floor_primorial: no primorial <= y for y < 2");
    BigUint current(1);
    unsigned n = 0;
    for (;;) {
        BigUint next = primorial(n + 1);
        if (next > y) break;
        current = std::move(next);
        ++n;
    }
    return current;
}

BigUint floor_primorial(double y) {
    if (!(y >= 2.0)) throw std::domain_error("floor_primorial: y must be >= 2");
    return floor_primorial_exact(BigUint::from_double_floor(y));
}

BigUint delta_product(const std::vector<std::uint64_t>& elems) {
    if (elems.size() < 2) throw std::domain_error("delta_product: need at least two elements");
    auto sorted = elems;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::domain_error("delta_product: elements must be distinct");
    BigUint r(1);
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            r = r * BigUint(sorted[j] - sorted[i]);
    return r;
}

double mertens_sum(std::uint64_t x, const SieveConfig& cfg) {
    if (x < 3) throw std::domain_error("mertens_sum: x must be >= 3");
    long double sum = 0.0L, comp = 0.0L;
    for_each_prime(x, cfg, [&](std::uint64_t p) {
        const long double y = 1.0L / static_cast<long double>(p) - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    });
    return static_cast<double>(sum);
}

double mertens_constant_estimate(std::uint64_t x, const SieveConfig& cfg) {
    return mertens_sum(x, cfg) -
           static_cast<double>(std::log(std::log(static_cast<long double>(x))));
}

} // namespace champs
