#include "modgrade/modp.hpp"
#include <stdexcept>

namespace modgrade {

uint64_t Fq::from_mpq(const mpq_class& c) const {
    mpz_class pp((unsigned long)p);
    mpz_class num = c.get_num() % pp, den = c.get_den() % pp;
    if (num < 0) num += pp;
    if (den == 0) throw std::domain_error("denominator divisible by certificate prime");
    uint64_t n = mpz_get_ui(num.get_mpz_t());
    uint64_t d = mpz_get_ui(den.get_mpz_t());
    if (d == 0) throw std::domain_error("denominator divisible by certificate prime");
    return mul(n, inv(d));
}

bool FqEchelon::insert(std::vector<uint64_t> v) {
    reduce(v);
    long p = -1;
    for (long c = 0; c < ncols_; ++c)
        if (v[c]) { p = c; break; }
    if (p < 0) return false;
    uint64_t s = F.inv(v[p]);
    for (long c = p; c < ncols_; ++c) v[c] = F.mul(v[c], s);
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

void FqEchelon::reduce(std::vector<uint64_t>& v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        uint64_t f = v[pivots_[r]];
        if (!f) continue;
        const auto& row = rows_[r];
        for (long c = pivots_[r]; c < ncols_; ++c)
            if (row[c]) v[c] = F.sub(v[c], F.mul(f, row[c]));
    }
}

}  // namespace modgrade
