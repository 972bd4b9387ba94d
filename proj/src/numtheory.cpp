#include "hallnum/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hallnum::numtheory {

namespace {

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

// Extended Euclid; requires gcd(a, mod) = 1.
uint64_t mod_inverse(uint64_t a, uint64_t mod) {
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(mod), new_r = static_cast<int64_t>(a % mod);
  while (new_r != 0) {
    int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  if (t < 0) t += static_cast<int64_t>(mod);
  return static_cast<uint64_t>(t);
}

// Pollard's rho, Brent variant. n must be composite, odd, and not a prime
// power of 2. The parameter c is bumped deterministically until a factor
// splits off, so results are reproducible.
uint64_t pollard_brent(uint64_t n) {
  if (n % 2 == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    auto step = [n, c](uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    uint64_t x = 2, y = 2, d = 1;
    uint64_t power = 1, lam = 0;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power *= 2;
        lam = 0;
      }
      // batch gcd over 64 steps
      uint64_t q = 1;
      uint64_t ys = y;
      for (int i = 0; i < 64 && lam < power && d == 1; ++i) {
        y = step(y);
        ++lam;
        uint64_t diff = x > y ? x - y : y - x;
        if (diff == 0) {
          d = n;  // cycle hit; retry with next c
          break;
        }
        q = mul_mod(q, diff, n);
      }
      if (d != n) d = gcd_u64(q, n);
      if (d == n) {
        // backtrack one step at a time
        d = 1;
        do {
          ys = step(ys);
          uint64_t diff = x > ys ? x - ys : ys - x;
          if (diff == 0) {
            d = n;
            break;
          }
          d = gcd_u64(diff, n);
        } while (d == 1);
      }
    }
    if (d != n) return d;
  }
}

void factor_into(uint64_t n, std::vector<uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  uint64_t d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

// Simple prime iteration: sieve when the bound is modest, Miller-Rabin scan
// otherwise. visit returns false to stop early.
template <typename Visit>
void for_primes_upto(uint64_t bound, Visit visit) {
  constexpr uint64_t sieve_limit = 30'000'000;
  if (bound < 2) return;
  if (bound <= sieve_limit) {
    std::vector<bool> composite(bound + 1, false);
    for (uint64_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      if (!visit(i)) return;
      for (uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return;
  }
  if (!visit(2)) return;
  for (uint64_t n = 3; n <= bound; n += 2) {
    if (is_prime(n) && !visit(n)) return;
  }
}

}  // namespace

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t mod) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % mod);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod) {
  uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

void visit_primes(uint64_t bound, const std::function<bool(uint64_t)>& visit) {
  for_primes_upto(bound, [&](uint64_t p) { return visit(p); });
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This base set is a proven deterministic witness set for all n < 2^64.
  for (uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    uint64_t x = pow_mod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Factorization factorize(uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  f.n = n;
  uint64_t rest = n;
  std::vector<uint64_t> primes;
  for (uint64_t d = 2; d <= 100'000 && d * d <= rest; d = (d == 2 ? 3 : d + 2)) {
    while (rest % d == 0) {
      primes.push_back(d);
      rest /= d;
    }
  }
  factor_into(rest, primes);
  std::sort(primes.begin(), primes.end());
  for (uint64_t p : primes) {
    if (!f.factors.empty() && f.factors.back().first == p) {
      ++f.factors.back().second;
    } else {
      f.factors.emplace_back(p, 1);
    }
  }
  return f;
}

bool is_hall_divisor(uint64_t m, uint64_t n) {
  if (m == 0 || n == 0) throw std::invalid_argument("is_hall_divisor: arguments must be positive");
  return n % m == 0 && gcd_u64(m, n / m) == 1;
}

std::vector<uint64_t> hall_divisors(uint64_t n) {
  Factorization f = factorize(n);
  std::vector<uint64_t> divs{1};
  for (auto [p, e] : f.factors) {
    uint64_t pp = 1;
    for (int i = 0; i < e; ++i) pp *= p;
    std::size_t old = divs.size();
    for (std::size_t i = 0; i < old; ++i) divs.push_back(divs[i] * pp);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

uint64_t p_part(uint64_t n, uint64_t p) {
  if (n == 0) throw std::invalid_argument("p_part: n must be positive");
  if (!is_prime(p)) throw std::invalid_argument("p_part: p must be prime");
  uint64_t part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  return part;
}

CongruenceClass crt_xi(uint64_t a, uint64_t b) {
  if (a < 2 || b < 2) throw std::invalid_argument("crt_xi: a and b must exceed 1");
  if (gcd_u64(a, b) != 1) throw std::invalid_argument("crt_xi: a and b must be coprime");
  // (ab)^2 must stay within the supported integer range.
  constexpr uint64_t max_ab = 3'037'000'499;  // floor(sqrt(2^63 - 1))
  if (static_cast<unsigned __int128>(a) * b > max_ab)
    throw std::invalid_argument("crt_xi: (ab)^2 exceeds the supported range");
  uint64_t a2 = a * a, b2 = b * b;
  uint64_t modulus = a2 * b2;
  uint64_t r1 = (1 + a) % a2;
  uint64_t r2 = (b - 1) % b2;
  // xi = r1 + a2 * t with t = (r2 - r1) / a2 (mod b2)
  uint64_t diff = (r2 + b2 - r1 % b2) % b2;
  uint64_t t = mul_mod(diff, mod_inverse(a2 % b2, b2), b2);
  uint64_t xi = r1 + a2 * t;
  if (xi % a2 != r1 || xi % b2 != r2 || gcd_u64(xi, modulus) != 1)
    throw std::logic_error("crt_xi: CRT solution failed self-check");
  return CongruenceClass{modulus, xi};
}

PrimeList primes_in_class_with_gcd(const CongruenceClass& cls, std::size_t count, uint64_t bound) {
  if (cls.modulus < 2) throw std::invalid_argument("primes_in_class_with_gcd: modulus must exceed 1");
  if (cls.residue >= cls.modulus)
    throw std::invalid_argument("primes_in_class_with_gcd: residue must lie below the modulus");
  if (gcd_u64(cls.residue, cls.modulus) != 1)
    throw std::invalid_argument("primes_in_class_with_gcd: residue not coprime to modulus");
  if (count == 0) throw std::invalid_argument("primes_in_class_with_gcd: count must be positive");
  PrimeList out;
  for (uint64_t p = cls.residue; p <= bound; p += cls.modulus) {
    if (p < 2 || !is_prime(p)) continue;
    uint64_t x = (p - cls.residue) / cls.modulus;
    if (gcd_u64(cls.modulus, x) != 1) continue;
    out.primes.push_back(p);
    if (out.primes.size() == count) return out;
  }
  out.bound_exhausted = true;
  return out;
}

PrimeList find_witness_primes(const WitnessPrimeQuery& query) {
  if (query.a < 2 || query.b < 2)
    throw std::invalid_argument("find_witness_primes: a and b must exceed 1");
  if (gcd_u64(query.a, query.b) != 1)
    throw std::invalid_argument("find_witness_primes: a and b must be coprime");
  if (query.count == 0) throw std::invalid_argument("find_witness_primes: count must be positive");
  PrimeList out;
  for_primes_upto(query.search_bound, [&](uint64_t p) {
    if (is_hall_divisor(query.a, p - 1) && is_hall_divisor(query.b, p + 1)) {
      out.primes.push_back(p);
      if (out.primes.size() == query.count) return false;
    }
    return true;
  });
  out.bound_exhausted = out.primes.size() < query.count;
  return out;
}

}  // namespace hallnum::numtheory
