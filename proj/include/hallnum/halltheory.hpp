#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hallnum/numtheory.hpp"
#include "hallnum/psl2.hpp"
#include "hallnum/recognition.hpp"

namespace hallnum::halltheory {

/// The three Hall-number shapes plus the complement. Exactly one tag applies
/// to every m >= 1: prime powers first, then even numbers with odd half,
/// then 12/24/60; everything else is not a Hall number.
enum class ClassTag { prime_power, two_times_odd, exceptional, not_hall };

std::string to_string(ClassTag tag);

struct Classification {
  ClassTag tag = ClassTag::not_hall;
  uint64_t m = 0;
  // Coprime witness split (a, b) with a, b > 2; present exactly for not_hall.
  std::optional<std::pair<uint64_t, uint64_t>> split;
};

Classification classify(uint64_t m);

/// For m that is not a Hall number: (a, b) with ab = m, gcd(a, b) = 1 and
/// a, b > 2. When 4 | m, a is the 2-part of m; when m is odd, a is the
/// p-part for the smallest prime p | m. Returns nullopt for Hall numbers.
std::optional<std::pair<uint64_t, uint64_t>> split_coprime(uint64_t m);

/// Residue family for q^2 characterizing when m is a Hall divisor of
/// (q^2-1)/2: m = 12 -> mod 144 {25, 121}; m = 24 -> mod 288 {49, 241};
/// m = 60 -> mod 3600 {120k+1 : k in {1,7,11,13,17,19,23,29}}.
struct CongruenceFamily {
  uint64_t m = 0;
  uint64_t modulus = 0;
  std::vector<uint64_t> residues;
};

CongruenceFamily congruence_family(uint64_t m);

/// True iff q^2 mod modulus lies in the residue family of m. q must be odd
/// and >= 5.
bool hall_congruence_holds(uint64_t m, uint64_t q);

/// Order of a Sylow 2-subgroup of PSL(2,q) when it is 4 or 8:
/// 4 iff q = 3,5 (mod 8); 8 iff q = 7,9 (mod 16).
enum class Sylow2Class { order4, order8, other };

std::string to_string(Sylow2Class c);

Sylow2Class sylow2_class(uint64_t q);

struct WitnessOptions {
  uint64_t prime_bound = numtheory::default_prime_bound;
  uint64_t group_cap = psl2::default_group_cap;
};

struct HallDivisorEvidence {
  uint64_t m = 0;
  uint64_t cofactor = 0;   // n/m when m | n, else 0
  uint64_t gcd_value = 0;  // gcd(m, cofactor)
};

/// The exhaustive two-generator search completed without finding a subgroup
/// of order m.
struct BruteForceEvidence {
  uint64_t candidates_tried = 0;
  bool exhausted = false;
};

/// One containment case of the subgroup classification: if a subgroup of
/// order m lived in a subgroup of this order, m would divide it.
struct CaseFact {
  std::string dickson_class;
  uint64_t container_order = 0;
  bool m_divides = false;
};

struct CaseAnalysisEvidence {
  std::vector<CaseFact> cases;
  bool exceptional_orders_excluded = false;  // m is not 12, 24 or 60
  bool downgraded_from_brute_force = false;  // group order exceeded the cap
};

/// Machine-checkable certificate that m is not a Hall number: the witness
/// prime p gives a group PSL(2,p) whose order has m as a Hall divisor yet
/// contains no subgroup of order m.
struct WitnessCertificate {
  uint64_t m = 0;
  std::pair<uint64_t, uint64_t> split{0, 0};
  uint64_t witness_prime = 0;
  psl2::GroupKind kind = psl2::GroupKind::psl;
  uint64_t group_order = 0;
  HallDivisorEvidence hall;
  std::variant<BruteForceEvidence, CaseAnalysisEvidence> verification;
  WitnessOptions options;
};

/// Requires classify(m) == not_hall (std::invalid_argument otherwise).
/// Throws budget_exceeded when no witness prime exists under the bound.
/// Brute-force verification runs when the group order fits the cap; larger
/// groups downgrade to the case analysis.
WitnessCertificate generate_witness(uint64_t m, const WitnessOptions& options = {});

enum class VerifyStatus { ok, not_hall_divisor, type_mismatch };

std::string to_string(VerifyStatus s);

/// Verification record for one row of the exceptional-Hall-subgroup table.
struct HallSubgroupReport {
  uint64_t m = 0;
  uint64_t q = 0;       // as requested
  uint32_t group_p = 0; // prime actually used (5 for the q = 4 alias)
  psl2::GroupKind kind = psl2::GroupKind::psl;
  std::optional<std::string> alias_note;
  uint64_t group_order = 0;
  bool congruence_holds = false;
  std::optional<CongruenceFamily> family;
  uint64_t q_squared_mod = 0;
  std::optional<std::string> congruence_note;
  HallDivisorEvidence hall;
  VerifyStatus status = VerifyStatus::not_hall_divisor;
  std::string expected;
  std::string recognized;
  uint64_t subgroup_order = 0;
  std::vector<uint32_t> generator_indices;
  std::vector<std::array<uint32_t, 4>> generator_matrices;
  uint64_t pairs_tried = 0;
  std::vector<std::string> rejected_types;  // order-m types skipped by the search
};

/// Builds the group for (m, q, kind) with m in {12, 24, 60}, checks the
/// congruence/Hall-divisor condition, and searches for a Hall subgroup of
/// the expected type (A4 for 12, S4 for 24, A5 for 60). The search scans
/// order-m subgroups in index order and accepts the first one whose
/// recognized type matches; exhausting the scan without a match is reported
/// as type_mismatch (it would contradict the classification table).
HallSubgroupReport verify_exceptional(uint64_t m, uint64_t q, psl2::GroupKind kind,
                                      uint64_t group_cap = psl2::default_group_cap);

/// Primes q <= bound with q^2 mod modulus in the residue family of m.
numtheory::PrimeList family_primes(uint64_t m, std::size_t count, uint64_t bound);

/// Maps a field-size request to the prime actually used: q = 4 is served by
/// the isomorphic q = 5 group (psl only), primes >= 5 pass through.
std::pair<uint32_t, std::optional<std::string>> resolve_prime_field(uint64_t q,
                                                                    psl2::GroupKind kind);

/// p(p-1)(p+1)/2 for psl, p(p-1)(p+1) for pgl, with overflow checking.
uint64_t group_order_for(uint64_t p, psl2::GroupKind kind);

}  // namespace hallnum::halltheory
