#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace hallnum::numtheory {

inline constexpr uint64_t default_prime_bound = 1'000'000;

/// Prime-exponent decomposition of a positive integer. factorize(1) has an
/// empty factor list.
struct Factorization {
  uint64_t n = 1;
  std::vector<std::pair<uint64_t, int>> factors;  // primes strictly increasing
};

/// The residue class `residue` (mod `modulus`).
struct CongruenceClass {
  uint64_t modulus = 2;
  uint64_t residue = 1;
};

struct WitnessPrimeQuery {
  uint64_t a = 0;
  uint64_t b = 0;
  std::size_t count = 1;
  uint64_t search_bound = default_prime_bound;
};

/// Result of a bounded prime search. `bound_exhausted` is set when the bound
/// was reached before `count` primes were found; the primes collected so far
/// are still returned.
struct PrimeList {
  std::vector<uint64_t> primes;
  bool bound_exhausted = false;
};

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t mod);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod);

/// Calls visit(p) for each prime p <= bound in increasing order until visit
/// returns false. Sieve-backed for small bounds, test-backed beyond.
void visit_primes(uint64_t bound, const std::function<bool(uint64_t)>& visit);

/// Deterministic Miller-Rabin, valid for the entire 64-bit range.
bool is_prime(uint64_t n);

/// Trial division plus Pollard rho for large cofactors. Rejects n = 0.
Factorization factorize(uint64_t n);

/// True iff m | n and gcd(m, n/m) = 1 (m is a unitary divisor of n).
bool is_hall_divisor(uint64_t m, uint64_t n);

/// All Hall divisors of n in increasing order; exactly 2^omega(n) of them,
/// one per subset of n's prime-power parts.
std::vector<uint64_t> hall_divisors(uint64_t n);

/// Largest power of the prime p dividing n (1 if p does not divide n).
uint64_t p_part(uint64_t n, uint64_t p);

/// The unique class xi mod (ab)^2 with xi = 1+a (mod a^2) and
/// xi = -1+b (mod b^2). Requires coprime a, b > 1 and (ab)^2 < 2^63.
/// gcd(xi, (ab)^2) = 1 always holds for the result.
CongruenceClass crt_xi(uint64_t a, uint64_t b);

/// Primes p <= bound with p = residue (mod modulus) and
/// gcd(modulus, (p - residue)/modulus) = 1, in increasing order. Rejects
/// classes with gcd(residue, modulus) != 1. Note p = residue itself never
/// qualifies: the quotient is 0 and gcd(modulus, 0) = modulus.
PrimeList primes_in_class_with_gcd(const CongruenceClass& cls, std::size_t count, uint64_t bound);

/// Primes p <= search_bound with a a Hall divisor of p-1 and b a Hall divisor
/// of p+1, in increasing order (so the first entry is the least witness).
/// The conditions are checked directly against every prime; no congruence
/// prefilter is applied, which keeps the "least qualifying prime" guarantee.
PrimeList find_witness_primes(const WitnessPrimeQuery& query);

}  // namespace hallnum::numtheory
