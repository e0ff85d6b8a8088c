#include "champs/hl_model.hpp"

#include "champs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace champs {

namespace {

// Integrand after u = log t: ∫ e^u / u^n du.
double integrand(double u, int n) { return std::exp(u - n * std::log(u)); }

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(double a, double b, double fa, double fm, double fb, double whole, double eps,
             int n, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = integrand(lm, n), frm = integrand(rm, n);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adapt(a, m, fa, flm, fm, left, eps * 0.5, n, depth - 1) +
           adapt(m, b, fm, frm, fb, right, eps * 0.5, n, depth - 1);
}

} // namespace

double li_power(double x, int n) {
    if (n < 1) throw std::domain_error("li_power: n must be >= 1");
    if (!(x >= 2.0)) throw std::domain_error("li_power: x must be >= 2");
    if (x > 1e300) throw CapacityError("li_power: x too large");
    if (x == 2.0) return 0.0;
    const double a = std::log(2.0), b = std::log(x);
    const double fa = integrand(a, n), fb = integrand(b, n);
    const double m = 0.5 * (a + b);
    const double fm = integrand(m, n);
    const double rough = simpson(fa, fm, fb, b - a);
    const double eps = std::max(std::abs(rough) * 1e-12, 1e-300);
    return adapt(a, b, fa, fm, fb, rough, eps, n, 48);
}

PiTuplePrediction predict_pi_tuple(double x, const std::vector<std::uint64_t>& offsets,
                                   std::uint64_t truncation_prime) {
    PiTuplePrediction out;
    out.series = singular_series(offsets, truncation_prime);
    if (out.series.zero_flag) return out;
    const int n = static_cast<int>(offsets.size());
    out.integral_form = out.series.value * li_power(x, n);
    out.ratio_form = out.series.value * x / std::pow(std::log(x), n);
    return out;
}

Prediction predict_N(double x, const GapPattern& D, std::uint64_t truncation_prime) {
    if (!(x >= 2.0)) throw std::domain_error("predict_N: x must be >= 2");
    Prediction out;
    out.x = x;
    out.pattern = D;
    const auto offsets = D.offsets_with_zero();
    const int n = D.k() + 1;
    const double logx = std::log(x);
    out.correction_factor = 1.0 - static_cast<double>(D.last()) / logx;
    out.regime_warning = static_cast<double>(D.last()) >= logx;
    out.series = singular_series(offsets, truncation_prime);
    if (out.series.zero_flag) return out;
    out.main_term = out.series.value * li_power(x, n);
    out.main_term_ratio_form = out.series.value * x / std::pow(logx, n);
    out.corrected = out.main_term * out.correction_factor;
    double factorial = 1.0;
    for (int i = 2; i <= n; ++i) factorial *= i;
    out.sieve_upper = std::pow(2.0, n) * factorial * out.main_term_ratio_form;
    return out;
}

double sieve_upper_bound(double x, const std::vector<std::uint64_t>& offsets,
                         std::uint64_t truncation_prime) {
    if (!(x >= 2.0)) throw std::domain_error("sieve_upper_bound: x must be >= 2");
    const auto series = singular_series(offsets, truncation_prime);
    if (series.zero_flag)
        throw std::domain_error("sieve_upper_bound: undefined for a vanishing singular series");
    const int n = static_cast<int>(offsets.size());
    double factorial = 1.0;
    for (int i = 2; i <= n; ++i) factorial *= i;
    return std::pow(2.0, n) * factorial * series.value * x / std::pow(std::log(x), n);
}

PatternFamily PatternFamily::explicit_list(std::vector<GapPattern> patterns) {
    PatternFamily f;
    f.patterns = std::move(patterns);
    return f;
}

namespace {

// Zero series is detectable from the primes p <= k+1 alone.
bool series_vanishes(const GapPattern& D) {
    const auto offsets = D.offsets_with_zero();
    const int n = static_cast<int>(offsets.size());
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        if (p > static_cast<std::uint64_t>(n)) break;
        std::set<std::uint64_t> residues;
        for (std::uint64_t d : offsets) residues.insert(d % p);
        if (residues.size() == p) return true;
    }
    return false;
}

void enumerate_even_patterns(int k, std::uint32_t dmax, std::vector<std::uint32_t>& acc,
                             std::vector<GapPattern>& out) {
    if (static_cast<int>(acc.size()) == k) {
        GapPattern pat(acc);
        if (!series_vanishes(pat)) out.push_back(std::move(pat));
        return;
    }
    const std::uint32_t start = acc.empty() ? 2 : acc.back() + 2;
    for (std::uint32_t d = start; d <= dmax; d += 2) {
        acc.push_back(d);
        enumerate_even_patterns(k, dmax, acc, out);
        acc.pop_back();
    }
}

} // namespace

PatternFamily PatternFamily::default_family(double x, int k, std::uint32_t dmax_override) {
    if (k < 1 || k > 8) throw std::domain_error("default_family: k must be in [1, 8]");
    if (!(x >= 3.0)) throw std::domain_error("default_family: x must be >= 3");
    std::uint32_t dmax = dmax_override;
    if (dmax == 0) dmax = static_cast<std::uint32_t>(std::ceil(3.0 * k * std::log(x)));

    // Even-difference tuples below the cutoff; others have vanishing series.
    const double choices = static_cast<double>(dmax / 2);
    double combos = 1.0;
    for (int i = 0; i < k; ++i) combos *= std::max(choices - i, 1.0) / (i + 1);
    if (combos > 500000.0)
        throw BudgetError("default_family: about " + std::to_string(static_cast<long long>(combos)) +
                          " candidate patterns; pass an explicit smaller dmax");

    PatternFamily fam;
    std::vector<std::uint32_t> acc;
    enumerate_even_patterns(k, dmax, acc, fam.patterns);

    // Primorial-scaled {1..k} comparison sets from the champion argument.
    const double logx = std::log(x);
    for (double y : {std::sqrt(logx), std::pow(logx, k + 2.0)}) {
        if (y < 2.0) continue;
        const BigUint scale = floor_primorial(y);
        if (!scale.fits_u64()) continue;
        const std::uint64_t s = scale.to_u64();
        if (s * static_cast<std::uint64_t>(k) > UINT32_MAX) continue;
        std::vector<std::uint32_t> diffs;
        for (int i = 1; i <= k; ++i) diffs.push_back(static_cast<std::uint32_t>(s * i));
        GapPattern pat(std::move(diffs));
        if (!series_vanishes(pat)) fam.patterns.push_back(std::move(pat));
    }
    return fam;
}

std::vector<RankedPrediction> predict_champion(double x, int k, const PatternFamily& family,
                                               std::uint64_t truncation_prime) {
    if (family.patterns.empty()) throw std::domain_error("predict_champion: empty pattern family");
    std::set<GapPattern> unique;
    for (const auto& pat : family.patterns) {
        if (pat.k() != k)
            throw std::domain_error("predict_champion: pattern " + pat.to_string() +
                                    " does not have k = " + std::to_string(k));
        unique.insert(pat);
    }

    std::vector<RankedPrediction> out;
    for (const auto& pat : unique) {
        // The truncation precondition scales with the pattern span.
        const std::uint64_t needed = min_truncation_prime(pat.last(), k + 1);
        Prediction pred = predict_N(x, pat, std::max(truncation_prime, needed));
        if (pred.series.zero_flag) continue;
        out.push_back({pat, std::move(pred), 0});
    }
    std::stable_sort(out.begin(), out.end(), [](const RankedPrediction& a, const RankedPrediction& b) {
        if (a.prediction.corrected != b.prediction.corrected)
            return a.prediction.corrected > b.prediction.corrected;
        return a.pattern < b.pattern;
    });
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i > 0 && out[i].prediction.corrected == out[i - 1].prediction.corrected)
            out[i].rank = out[i - 1].rank;
        else
            out[i].rank = static_cast<int>(i) + 1;
    }
    return out;
}

} // namespace champs
