#include "champs/prime_engine.hpp"

#include "champs/errors.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace champs {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void check_limit(std::uint64_t limit) {
    if (limit < 2) throw std::domain_error("sieve limit must be >= 2");
    if (limit > kMaxSieveLimit)
        throw CapacityError("sieve limit exceeds supported range (2^62)");
}

// Sieve all primes in [lo, hi) given base primes covering sqrt(hi-1).
void sieve_segment(std::uint64_t lo, std::uint64_t hi,
                   const std::vector<std::uint64_t>& base,
                   std::vector<std::uint64_t>& out) {
    out.clear();
    if (lo < 2) lo = 2;
    if (lo >= hi) return;
    if (lo <= 2) out.push_back(2);

    std::uint64_t first_odd = lo | 1;
    if (first_odd < 3) first_odd = 3;
    if (first_odd >= hi) return;
    std::size_t n_odds = (hi - first_odd + 1) / 2;
    std::vector<std::uint64_t> bits((n_odds + 63) / 64, 0); // 1 = composite

    for (std::uint64_t p : base) {
        if (p == 2) continue;
        if (p * p >= hi) break;
        std::uint64_t start = p * p;
        if (start < lo) {
            std::uint64_t q = (lo + p - 1) / p;
            start = q * p;
        }
        if ((start & 1) == 0) start += p;
        for (std::uint64_t v = start; v < hi; v += 2 * p) {
            std::uint64_t idx = (v - first_odd) / 2;
            bits[idx >> 6] |= 1ull << (idx & 63);
        }
    }

    for (std::size_t w = 0; w < bits.size(); ++w) {
        std::uint64_t word = ~bits[w];
        while (word) {
            int b = __builtin_ctzll(word);
            word &= word - 1;
            std::size_t idx = w * 64 + static_cast<std::size_t>(b);
            if (idx >= n_odds) break;
            out.push_back(first_odd + 2 * idx);
        }
    }
}

} // namespace

std::vector<std::uint64_t> small_primes_up_to(std::uint64_t limit) {
    check_limit(limit);
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    primes.push_back(2);
    if (limit < 3) return primes;
    std::size_t n_odds = (limit - 1) / 2; // odds 3,5,...,<= limit
    std::vector<bool> composite(n_odds + 1, false);
    for (std::size_t i = 0; i < n_odds; ++i) {
        std::uint64_t p = 3 + 2 * i;
        if (p * p > limit) break;
        if (composite[i]) continue;
        for (std::uint64_t v = p * p; v <= limit; v += 2 * p)
            composite[(v - 3) / 2] = true;
    }
    for (std::size_t i = 0; i < n_odds; ++i)
        if (!composite[i]) primes.push_back(3 + 2 * i);
    return primes;
}

std::vector<std::uint8_t> primality_range(std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return {};
    if (hi - 1 > kMaxSieveLimit) throw CapacityError("primality_range exceeds supported range");
    std::vector<std::uint8_t> out(hi - lo, 0);
    const auto base = small_primes_up_to(isqrt_u64(hi - 1) + 1);
    if (lo <= 2 && 2 < hi) out[2 - lo] = 1;
    std::uint64_t first_odd = (lo < 3 ? 3 : (lo | 1));
    for (std::uint64_t v = first_odd; v < hi; v += 2) out[v - lo] = 1;
    for (std::uint64_t p : base) {
        if (p == 2) continue;
        if (p * p >= hi) break;
        std::uint64_t start = p * p;
        if (start < lo) start = ((lo + p - 1) / p) * p;
        if ((start & 1) == 0) start += p;
        for (std::uint64_t v = start; v < hi; v += 2 * p)
            if (v != p) out[v - lo] = 0;
    }
    // A base prime itself may sit inside [lo, hi); the marking loop skips it.
    return out;
}

struct SegmentStream::Impl {
    std::uint64_t limit;
    std::uint64_t origin;
    std::uint64_t seg_size;
    unsigned threads;
    std::vector<std::uint64_t> base;
    std::uint64_t n_segments;

    // Multi-thread state
    std::atomic<std::uint64_t> next_claim{0};
    std::uint64_t next_emit = 0;
    std::map<std::uint64_t, PrimeSegment> ready;
    std::size_t max_buffered = 4;
    std::mutex mu;
    std::condition_variable cv_produce, cv_consume;
    std::vector<std::thread> workers;
    bool stop = false;

    void bounds(std::uint64_t i, std::uint64_t& lo, std::uint64_t& hi) const {
        lo = origin + i * seg_size;
        hi = origin + (i + 1) * seg_size;
        if (hi > limit + 1) hi = limit + 1;
    }

    PrimeSegment make_segment(std::uint64_t i) const {
        PrimeSegment seg;
        bounds(i, seg.lo, seg.hi);
        sieve_segment(seg.lo, seg.hi, base, seg.primes);
        return seg;
    }

    void worker_loop() {
        for (;;) {
            std::uint64_t i = next_claim.fetch_add(1);
            if (i >= n_segments) return;
            PrimeSegment seg = make_segment(i);
            std::unique_lock<std::mutex> lock(mu);
            cv_produce.wait(lock, [&] {
                return stop || i == next_emit || ready.size() < max_buffered;
            });
            if (stop) return;
            ready.emplace(i, std::move(seg));
            cv_consume.notify_all();
        }
    }
};

SegmentStream::SegmentStream(std::uint64_t limit, std::uint64_t segment_size, unsigned threads,
                             std::uint64_t start)
    : impl_(new Impl) {
    check_limit(limit);
    if (segment_size < 2) throw std::domain_error("segment_size must be >= 2");
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    impl_->limit = limit;
    impl_->origin = start < 2 ? 2 : start;
    impl_->seg_size = segment_size;
    impl_->threads = threads;
    impl_->base = small_primes_up_to(isqrt_u64(limit) + 1);
    impl_->n_segments = impl_->origin > limit
                            ? 0
                            : (limit + 1 - impl_->origin + segment_size - 1) / segment_size;
    impl_->max_buffered = 2 * threads + 2;
    if (threads > 1) {
        impl_->workers.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            impl_->workers.emplace_back([im = impl_] { im->worker_loop(); });
    }
}

SegmentStream::~SegmentStream() {
    {
        std::lock_guard<std::mutex> lock(impl_->mu);
        impl_->stop = true;
    }
    impl_->cv_produce.notify_all();
    for (auto& w : impl_->workers) w.join();
    delete impl_;
}

std::optional<PrimeSegment> SegmentStream::next() {
    Impl& im = *impl_;
    if (im.next_emit >= im.n_segments) return std::nullopt;
    if (im.workers.empty()) {
        PrimeSegment seg = im.make_segment(im.next_emit++);
        return seg;
    }
    std::unique_lock<std::mutex> lock(im.mu);
    im.cv_consume.wait(lock, [&] { return im.ready.count(im.next_emit) != 0; });
    auto it = im.ready.find(im.next_emit);
    PrimeSegment seg = std::move(it->second);
    im.ready.erase(it);
    ++im.next_emit;
    im.cv_produce.notify_all();
    return seg;
}

void for_each_prime(std::uint64_t limit, const SieveConfig& cfg,
                    const std::function<void(std::uint64_t)>& fn) {
    SegmentStream stream(limit, cfg.segment_size, cfg.threads);
    while (auto seg = stream.next())
        for (std::uint64_t p : seg->primes) fn(p);
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit, std::uint64_t segment_size,
                                        unsigned threads) {
    std::vector<std::uint64_t> out;
    SegmentStream stream(limit, segment_size, threads);
    while (auto seg = stream.next())
        out.insert(out.end(), seg->primes.begin(), seg->primes.end());
    return out;
}

std::uint64_t count_primes_up_to(std::uint64_t limit, const SieveConfig& cfg) {
    std::uint64_t n = 0;
    SegmentStream stream(limit, cfg.segment_size, cfg.threads);
    while (auto seg = stream.next()) n += seg->primes.size();
    return n;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

// Strong pseudoprime test to base a; n odd, n > 2, d * 2^s = n - 1.
bool strong_probable_prime(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This witness set decides primality for every n < 3.3e24 (Sorenson &
    // Webster), so the test is deterministic over the uint64 range.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        if (!strong_probable_prime(n, a, d, s)) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: n must be >= 1");
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(p, e);
    }
    for (std::uint64_t p = 7; p * p <= n;) {
        if (is_prime(n)) break;
        for (std::uint64_t q : {p, p + 4}) { // 7, 11, then 13, 17, ...
            if (q * q > n) break;
            int e = 0;
            while (n % q == 0) { n /= q; ++e; }
            if (e) out.emplace_back(q, e);
        }
        p += 6;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int omega_with_multiplicity(std::uint64_t n) {
    if (n == 0) throw std::domain_error("omega_with_multiplicity: n must be >= 1");
    int total = 0;
    for (const auto& [p, e] : factorize(n)) {
        (void)p;
        total += e;
    }
    return total;
}

bool is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    for (const auto& [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return false;
    }
    return true;
}

} // namespace champs
