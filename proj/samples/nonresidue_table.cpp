// Least k-th power non-residue in n + 1 for the first few primes, next to its bound.
#include <kres/fieldcore.hpp>
#include <kres/harness.hpp>

#include <cstdio>

int main() {
    using namespace kres;
    std::printf("%6s %4s %6s %6s %6s\n", "p", "k", "t", "value", "bound");
    for (u64 p = 5; p < 200; ++p) {
        if (!detail::is_prime_u64(p)) continue;
        const PrimeFieldCtx ctx(p);
        for (u64 k : ctx.prime_divisors_p_minus_1()) {
            const auto hit = least_nonresidue_in_ap(ctx, k, {1, 1});
            const u64 t = (p - 1) / k;
            std::printf("%6llu %4llu %6llu %6llu %6llu\n", (unsigned long long)p, (unsigned long long)k,
                        (unsigned long long)t, (unsigned long long)hit->value,
                        (unsigned long long)theorem_bound_ceil(1, 1, t));
        }
    }
}
