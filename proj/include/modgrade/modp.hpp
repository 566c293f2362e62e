// Word-size prime-field arithmetic and dense rank computation, used to
// certify rational ranks from below (a mod-q rank never exceeds the Q-rank).
#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <vector>

namespace modgrade {

// Two fixed 62-bit primes used for rank certificates.
inline constexpr uint64_t kCertPrimes[2] = {4611686018427387847ULL, 4611686018427387817ULL};

struct Fq {
    uint64_t p;
    uint64_t add(uint64_t a, uint64_t b) const { uint64_t s = a + b; return s >= p ? s - p : s; }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return (uint64_t)((unsigned __int128)a * b % p);
    }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
    uint64_t from_mpq(const mpq_class& c) const;
};

// Incremental row-reduction over F_q.
class FqEchelon {
public:
    FqEchelon(Fq f, long ncols) : F(f), ncols_(ncols) {}
    bool insert(std::vector<uint64_t> v);   // true if the rank grew
    void reduce(std::vector<uint64_t>& v) const;
    long rank() const { return (long)rows_.size(); }

    Fq F;

private:
    long ncols_;
    std::vector<std::vector<uint64_t>> rows_;
    std::vector<long> pivots_;
};

}  // namespace modgrade
