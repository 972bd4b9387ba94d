#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hallnum::psl2 {

inline constexpr uint64_t default_group_cap = 5'000'000;

/// Elements of GF(p) are plain residues; the prime is carried by context.
using FieldElement = uint32_t;

enum class GroupKind { psl, pgl };

std::string to_string(GroupKind kind);

/// A projective 2x2 matrix over GF(p) in canonical form. Two elements are
/// equal exactly when their entry tuples are equal:
///   psl: of the pair {M, -M}, the representative whose first nonzero entry
///        in scan order (a, b, c, d) lies in [1, (p-1)/2]; det = 1.
///   pgl: the scalar multiple whose first nonzero entry equals 1.
struct ProjElement {
  uint32_t p = 0;
  GroupKind kind = GroupKind::psl;
  std::array<FieldElement, 4> e{};  // row-major: a, b, c, d

  friend bool operator==(const ProjElement&, const ProjElement&) = default;
};

/// Builds a canonical element from arbitrary matrix entries (reduced mod p).
/// Requires det != 0; for psl the determinant must additionally be a square
/// mod p (the matrix is then rescaled to det = 1).
ProjElement make_element(uint32_t p, GroupKind kind, std::array<uint32_t, 4> entries);

/// Both operands must share p and kind; the result is canonical.
ProjElement multiply(const ProjElement& g, const ProjElement& h);
ProjElement invert(const ProjElement& g);
bool is_identity(const ProjElement& g);

/// Fully enumerated PSL(2,p) or PGL(2,p). Immutable after construction;
/// element 0 is the identity and `index` is a bijection onto [0, order).
/// Subgroups hold a pointer to their table: keep it alive and unmoved.
struct GroupTable {
  uint32_t p = 0;
  GroupKind kind = GroupKind::psl;
  uint64_t order = 0;
  std::vector<uint64_t> keys;  // packed canonical entries, keys[0] = identity
  std::unordered_map<uint64_t, uint32_t> index;
  std::vector<uint32_t> element_orders;
  std::vector<uint32_t> inverses;
  std::vector<uint32_t> field_inverse;  // field_inverse[x] = x^-1 mod p, x >= 1

  ProjElement element(uint32_t i) const;
  std::optional<uint32_t> index_of(const ProjElement& g) const;
  uint32_t mul(uint32_t i, uint32_t j) const;
  uint32_t inv(uint32_t i) const { return inverses[i]; }
};

/// Enumerates the full group. p must be prime and >= 5; the closed-form
/// order p(p-1)(p+1)/2 (psl) or p(p-1)(p+1) (pgl) must not exceed cap,
/// otherwise budget_exceeded is thrown before any allocation.
GroupTable build_group(uint32_t p, GroupKind kind, uint64_t cap = default_group_cap);

struct Subgroup {
  const GroupTable* group = nullptr;
  std::vector<uint32_t> generator_indices;
  std::vector<uint32_t> element_indices;  // sorted ascending

  uint64_t order() const { return element_indices.size(); }
  bool contains(uint32_t idx) const;
};

/// Cap exceeded is a normal outcome, not an error: `subgroup` is empty and
/// `cap_exceeded` is set when the generated subgroup would exceed cap.
struct ClosureResult {
  std::optional<Subgroup> subgroup;
  bool cap_exceeded = false;
};

/// Subgroup generated by the given elements (all products of generators;
/// inverses come for free in a finite group).
ClosureResult closure(const GroupTable& group, const std::vector<uint32_t>& generators,
                      uint64_t cap);

enum class SearchMode { first, exhaustive };
enum class SearchStatus { found, not_found, budget_exceeded };

struct SubgroupSearchResult {
  SearchStatus status = SearchStatus::not_found;
  std::optional<Subgroup> subgroup;
  bool exhausted = false;  // every candidate generator pair was tried
  std::string reason;      // "lagrange" when m does not divide the group order
  uint64_t pairs_tried = 0;
  uint64_t matches_rejected = 0;  // order-m subgroups rejected by the filter
};

using SubgroupFilter = std::function<bool(const Subgroup&)>;

/// Exhaustive two-generator search for a subgroup of order exactly m.
/// Candidate generators are the elements whose order divides m; unordered
/// pairs (i <= j) are scanned in index order and each closure is capped at m,
/// so NotFound with `exhausted` certifies that no subgroup of order m exists
/// (every subgroup of PSL(2,p) and PGL(2,p) is generated by two elements).
/// An `accept` filter, when given, skips order-m subgroups it rejects;
/// `pair_budget` > 0 aborts the scan after that many pairs.
SubgroupSearchResult find_subgroup_of_order(const GroupTable& group, uint64_t m,
                                            SearchMode mode = SearchMode::first,
                                            const SubgroupFilter& accept = {},
                                            uint64_t pair_budget = 0);

/// { g : g S g^-1 = S }. Conjugation is tested on the subgroup's generators
/// when present, otherwise on all its elements.
Subgroup normalizer(const GroupTable& group, const Subgroup& sub);

std::map<uint64_t, uint64_t> order_spectrum(const GroupTable& group, const Subgroup& sub);
std::map<uint64_t, uint64_t> order_spectrum(const GroupTable& group);

/// The whole group viewed as a Subgroup (generators omitted; membership is
/// total, so conjugation tests fall back to the full element list).
Subgroup whole_group(const GroupTable& group);

}  // namespace hallnum::psl2
