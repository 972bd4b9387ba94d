#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hallnum/psl2.hpp"

namespace hallnum::recognition {

enum class IsoTag { cyclic, dihedral, a4, s4, a5, sl2_3, c2xa4, c5xa4, frobenius, other };

/// Isomorphism type of a small group. `order` is always the group order;
/// cyclic carries n = order, dihedral carries its order 2n (so "D30" is the
/// dihedral group OF ORDER 30), frobenius C_p : C_d carries (p, d).
struct IsoType {
  IsoTag tag = IsoTag::other;
  uint64_t order = 0;
  uint64_t frob_p = 0;
  uint64_t frob_d = 0;
  std::map<uint64_t, uint64_t> spectrum;  // retained for tag == other

  std::string name() const;
  friend bool operator==(const IsoType& a, const IsoType& b) {
    return a.tag == b.tag && a.order == b.order && a.frob_p == b.frob_p && a.frob_d == b.frob_d;
  }
};

/// Identifies subgroups of order <= 120 by order, element-order spectrum,
/// abelianness and center order. The Klein four-group is reported as
/// Dihedral(4). Throws std::invalid_argument above order 120.
IsoType recognize(const psl2::Subgroup& sub);

/// True iff the recognized type of a proper subgroup of PSL(2,p) is
/// consistent with the subgroup classification: contained in C_p:C_{(p-1)/2},
/// in a dihedral group of order p-1 or p+1, or isomorphic to A4, S4, A5.
bool dickson_check(uint32_t p, const psl2::Subgroup& sub);

/// Verifies that the fixed fingerprint profiles (A4, S4, A5, SL2(3), C2xA4,
/// C5xA4, and the cyclic/dihedral families at the shared orders 12, 24, 60)
/// are pairwise distinct as (order, spectrum) pairs. Runs automatically
/// before the first recognition; throws std::logic_error on any collision.
void fingerprint_self_test();

std::map<uint64_t, uint64_t> cyclic_spectrum(uint64_t n);
std::map<uint64_t, uint64_t> dihedral_spectrum(uint64_t order);

}  // namespace hallnum::recognition
