#include "hallnum/psl2.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hallnum/errors.hpp"
#include "hallnum/numtheory.hpp"

namespace hallnum::psl2 {

namespace {

uint64_t pack(const std::array<uint32_t, 4>& e) {
  return (static_cast<uint64_t>(e[0]) << 48) | (static_cast<uint64_t>(e[1]) << 32) |
         (static_cast<uint64_t>(e[2]) << 16) | e[3];
}

std::array<uint32_t, 4> unpack(uint64_t key) {
  return {static_cast<uint32_t>(key >> 48), static_cast<uint32_t>((key >> 32) & 0xffff),
          static_cast<uint32_t>((key >> 16) & 0xffff), static_cast<uint32_t>(key & 0xffff)};
}

uint32_t first_nonzero(const std::array<uint32_t, 4>& e) {
  for (uint32_t x : e)
    if (x != 0) return x;
  return 0;
}

// In-place sign/scale normalization. `scale_inv` maps a nonzero field element
// to its inverse; for psl only negation is available, and exactly one of
// {v, p-v} lands in [1, (p-1)/2] because p is odd.
template <typename Inv>
void canonicalize(std::array<uint32_t, 4>& e, uint32_t p, GroupKind kind, Inv scale_inv) {
  uint32_t v = first_nonzero(e);
  if (v == 0) throw std::invalid_argument("projective element must be nonzero");
  if (kind == GroupKind::psl) {
    if (v > (p - 1) / 2) {
      for (uint32_t& x : e) x = x == 0 ? 0 : p - x;
    }
  } else {
    if (v != 1) {
      uint64_t s = scale_inv(v);
      for (uint32_t& x : e) x = static_cast<uint32_t>(x * s % p);
    }
  }
}

std::array<uint32_t, 4> raw_multiply(const std::array<uint32_t, 4>& g,
                                     const std::array<uint32_t, 4>& h, uint32_t p) {
  uint64_t a = g[0], b = g[1], c = g[2], d = g[3];
  uint64_t e = h[0], f = h[1], x = h[2], y = h[3];
  return {static_cast<uint32_t>((a * e + b * x) % p), static_cast<uint32_t>((a * f + b * y) % p),
          static_cast<uint32_t>((c * e + d * x) % p), static_cast<uint32_t>((c * f + d * y) % p)};
}

std::array<uint32_t, 4> raw_adjugate(const std::array<uint32_t, 4>& g, uint32_t p) {
  return {g[3], g[1] == 0 ? 0 : p - g[1], g[2] == 0 ? 0 : p - g[2], g[0]};
}

bool is_scalar(const std::array<uint32_t, 4>& e) {
  return e[1] == 0 && e[2] == 0 && e[0] == e[3] && e[0] != 0;
}

std::array<uint32_t, 4> mat_pow(std::array<uint32_t, 4> base, uint64_t exp, uint32_t p) {
  std::array<uint32_t, 4> result{1, 0, 0, 1};
  while (exp > 0) {
    if (exp & 1) result = raw_multiply(result, base, p);
    base = raw_multiply(base, base, p);
    exp >>= 1;
  }
  return result;
}

uint32_t slow_field_inverse(uint32_t x, uint32_t p) {
  return static_cast<uint32_t>(numtheory::pow_mod(x, p - 2, p));
}

void check_context(const ProjElement& g, const ProjElement& h) {
  if (g.p != h.p || g.kind != h.kind)
    throw std::invalid_argument("projective elements from different groups");
}

// Epoch-stamped membership scratch so repeated closures avoid reallocation.
struct ClosureScratch {
  std::vector<uint32_t> stamp;
  uint32_t epoch = 0;
  std::vector<uint32_t> elems;

  explicit ClosureScratch(uint64_t group_order) : stamp(group_order, 0) {}

  void begin() {
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
    elems.clear();
  }
};

// BFS over right-multiplication by the generators, starting at the identity.
// Returns false when the closure would exceed cap (scratch.elems then holds
// a partial, meaningless set).
bool closure_into(const GroupTable& group, const std::vector<uint32_t>& generators, uint64_t cap,
                  ClosureScratch& scratch) {
  scratch.begin();
  if (cap == 0) return false;
  scratch.elems.push_back(0);
  scratch.stamp[0] = scratch.epoch;
  for (std::size_t qi = 0; qi < scratch.elems.size(); ++qi) {
    uint32_t x = scratch.elems[qi];
    for (uint32_t g : generators) {
      uint32_t y = group.mul(x, g);
      if (scratch.stamp[y] != scratch.epoch) {
        if (scratch.elems.size() >= cap) return false;
        scratch.stamp[y] = scratch.epoch;
        scratch.elems.push_back(y);
      }
    }
  }
  return true;
}

Subgroup make_subgroup(const GroupTable& group, const std::vector<uint32_t>& generators,
                       std::vector<uint32_t> elems) {
  std::sort(elems.begin(), elems.end());
  if (group.order % elems.size() != 0)
    throw std::logic_error("closure produced a set violating Lagrange");
  Subgroup sub;
  sub.group = &group;
  for (uint32_t g : generators) {
    if (std::find(sub.generator_indices.begin(), sub.generator_indices.end(), g) ==
        sub.generator_indices.end())
      sub.generator_indices.push_back(g);
  }
  sub.element_indices = std::move(elems);
  return sub;
}

}  // namespace

std::string to_string(GroupKind kind) { return kind == GroupKind::psl ? "psl" : "pgl"; }

ProjElement make_element(uint32_t p, GroupKind kind, std::array<uint32_t, 4> entries) {
  if (p < 5 || !numtheory::is_prime(p)) throw std::invalid_argument("p must be a prime >= 5");
  for (uint32_t& x : entries) x %= p;
  uint64_t det =
      ((static_cast<uint64_t>(entries[0]) * entries[3]) % p + p -
       (static_cast<uint64_t>(entries[1]) * entries[2]) % p) %
      p;
  if (det == 0) throw std::invalid_argument("matrix must be invertible");
  if (kind == GroupKind::psl && det != 1) {
    // Rescale to det = 1; possible exactly when det is a square mod p.
    uint32_t root = 0;
    for (uint32_t s = 1; s < p; ++s) {
      if (static_cast<uint64_t>(s) * s % p == det) {
        root = s;
        break;
      }
    }
    if (root == 0)
      throw std::invalid_argument("matrix with non-square determinant is not in PSL(2,p)");
    uint64_t scale = slow_field_inverse(root, p);
    for (uint32_t& x : entries) x = static_cast<uint32_t>(x * scale % p);
  }
  ProjElement g{p, kind, entries};
  canonicalize(g.e, p, kind, [p](uint32_t v) { return slow_field_inverse(v, p); });
  return g;
}

ProjElement multiply(const ProjElement& g, const ProjElement& h) {
  check_context(g, h);
  ProjElement r{g.p, g.kind, raw_multiply(g.e, h.e, g.p)};
  canonicalize(r.e, r.p, r.kind, [&](uint32_t v) { return slow_field_inverse(v, r.p); });
  return r;
}

ProjElement invert(const ProjElement& g) {
  ProjElement r{g.p, g.kind, raw_adjugate(g.e, g.p)};
  canonicalize(r.e, r.p, r.kind, [&](uint32_t v) { return slow_field_inverse(v, r.p); });
  return r;
}

bool is_identity(const ProjElement& g) { return is_scalar(g.e); }

ProjElement GroupTable::element(uint32_t i) const {
  if (i >= order) throw std::invalid_argument("element index out of range");
  return ProjElement{p, kind, unpack(keys[i])};
}

std::optional<uint32_t> GroupTable::index_of(const ProjElement& g) const {
  if (g.p != p || g.kind != kind)
    throw std::invalid_argument("element belongs to a different group");
  auto it = index.find(pack(g.e));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

uint32_t GroupTable::mul(uint32_t i, uint32_t j) const {
  std::array<uint32_t, 4> prod = raw_multiply(unpack(keys[i]), unpack(keys[j]), p);
  canonicalize(prod, p, kind, [this](uint32_t v) { return field_inverse[v]; });
  auto it = index.find(pack(prod));
  if (it == index.end()) throw std::logic_error("group table is not closed under multiplication");
  return it->second;
}

GroupTable build_group(uint32_t p, GroupKind kind, uint64_t cap) {
  if (p < 5 || !numtheory::is_prime(p)) throw std::invalid_argument("p must be a prime >= 5");
  if (p > 65521) throw std::invalid_argument("p exceeds the packed-representation limit (65521)");
  uint64_t order = static_cast<uint64_t>(p) * (p - 1) * (p + 1);
  if (kind == GroupKind::psl) order /= 2;
  if (order > cap)
    throw budget_exceeded("group order " + std::to_string(order) + " exceeds cap " +
                          std::to_string(cap));

  GroupTable t;
  t.p = p;
  t.kind = kind;
  t.order = order;

  // Batch field inverses: inv[1] = 1, inv[i] = -(p/i) * inv[p mod i].
  t.field_inverse.assign(p, 0);
  if (p > 1) t.field_inverse[1] = 1;
  for (uint32_t i = 2; i < p; ++i)
    t.field_inverse[i] =
        static_cast<uint32_t>(static_cast<uint64_t>(p - p / i) * t.field_inverse[p % i] % p);

  auto scale_inv = [&t](uint32_t v) { return t.field_inverse[v]; };

  t.keys.reserve(order);
  t.index.reserve(order * 5 / 4);
  auto add = [&](std::array<uint32_t, 4> e) {
    canonicalize(e, p, kind, scale_inv);
    uint64_t key = pack(e);
    if (t.index.emplace(key, 0).second) t.keys.push_back(key);
  };

  if (kind == GroupKind::psl) {
    // All of SL(2,p) by solving ad - bc = 1 row-wise, then fold out the sign.
    for (uint32_t a = 1; a < p; ++a) {
      uint64_t ainv = t.field_inverse[a];
      for (uint32_t b = 0; b < p; ++b) {
        for (uint32_t c = 0; c < p; ++c) {
          uint32_t d = static_cast<uint32_t>((1 + static_cast<uint64_t>(b) * c) % p * ainv % p);
          add({a, b, c, d});
        }
      }
    }
    for (uint32_t b = 1; b < p; ++b) {
      uint32_t c = p - t.field_inverse[b];  // bc = -1
      for (uint32_t d = 0; d < p; ++d) add({0, b, c, d});
    }
  } else {
    // Canonical representatives of PGL(2,p) directly: first nonzero entry 1.
    for (uint32_t b = 0; b < p; ++b) {
      for (uint32_t c = 0; c < p; ++c) {
        uint32_t bc = static_cast<uint32_t>(static_cast<uint64_t>(b) * c % p);
        for (uint32_t d = 0; d < p; ++d) {
          if (d != bc) add({1, b, c, d});
        }
      }
    }
    for (uint32_t c = 1; c < p; ++c) {
      for (uint32_t d = 0; d < p; ++d) add({0, 1, c, d});
    }
  }

  if (t.keys.size() != order) throw std::logic_error("group enumeration count mismatch");

  std::sort(t.keys.begin(), t.keys.end());
  uint64_t id_key = pack({1, 0, 0, 1});
  auto id_pos = std::lower_bound(t.keys.begin(), t.keys.end(), id_key);
  if (id_pos == t.keys.end() || *id_pos != id_key)
    throw std::logic_error("identity missing from group enumeration");
  std::swap(t.keys.front(), *id_pos);
  t.index.clear();
  for (uint32_t i = 0; i < order; ++i) t.index[t.keys[i]] = i;

  t.inverses.resize(order);
  for (uint32_t i = 0; i < order; ++i) {
    std::array<uint32_t, 4> adj = raw_adjugate(unpack(t.keys[i]), p);
    canonicalize(adj, p, kind, scale_inv);
    t.inverses[i] = t.index.at(pack(adj));
  }

  // Element orders. Every order divides p, (p-1)/2 or (p+1)/2 in PSL(2,p)
  // (p-1, p+1 in PGL); start from the matching exponent and strip primes.
  std::vector<uint64_t> exponents;
  if (kind == GroupKind::psl)
    exponents = {static_cast<uint64_t>(p - 1) / 2, static_cast<uint64_t>(p + 1) / 2, p};
  else
    exponents = {static_cast<uint64_t>(p - 1), static_cast<uint64_t>(p + 1), p};
  std::vector<numtheory::Factorization> exponent_factors;
  for (uint64_t n : exponents) exponent_factors.push_back(numtheory::factorize(n));

  t.element_orders.resize(order);
  t.element_orders[0] = 1;
  for (uint32_t i = 1; i < order; ++i) {
    std::array<uint32_t, 4> g = unpack(t.keys[i]);
    uint64_t ord = 0;
    for (std::size_t k = 0; k < exponents.size(); ++k) {
      if (!is_scalar(mat_pow(g, exponents[k], p))) continue;
      ord = exponents[k];
      for (auto [r, e] : exponent_factors[k].factors) {
        for (int j = 0; j < e && ord % r == 0; ++j) {
          if (is_scalar(mat_pow(g, ord / r, p)))
            ord /= r;
          else
            break;
        }
      }
      break;
    }
    if (ord == 0) {
      // Unreachable for these groups; kept as a correctness backstop.
      std::array<uint32_t, 4> x = g;
      ord = 1;
      while (!is_scalar(x)) {
        x = raw_multiply(x, g, p);
        if (++ord > order) throw std::logic_error("element order exceeds group order");
      }
    }
    t.element_orders[i] = static_cast<uint32_t>(ord);
  }

  return t;
}

bool Subgroup::contains(uint32_t idx) const {
  return std::binary_search(element_indices.begin(), element_indices.end(), idx);
}

ClosureResult closure(const GroupTable& group, const std::vector<uint32_t>& generators,
                      uint64_t cap) {
  for (uint32_t g : generators) {
    if (g >= group.order) throw std::invalid_argument("generator index out of range");
  }
  ClosureScratch scratch(group.order);
  if (!closure_into(group, generators, cap, scratch)) return {std::nullopt, true};
  return {make_subgroup(group, generators, scratch.elems), false};
}

SubgroupSearchResult find_subgroup_of_order(const GroupTable& group, uint64_t m, SearchMode mode,
                                            const SubgroupFilter& accept, uint64_t pair_budget) {
  (void)mode;  // first and exhaustive share one scan; both stop at the first
               // accepted subgroup, and a completed scan certifies absence.
  if (m == 0) throw std::invalid_argument("subgroup order must be positive");
  SubgroupSearchResult result;
  if (m > group.order || group.order % m != 0) {
    result.exhausted = true;
    result.reason = "lagrange";
    return result;
  }
  std::vector<uint32_t> candidates;
  for (uint32_t i = 0; i < group.order; ++i) {
    if (m % group.element_orders[i] == 0) candidates.push_back(i);
  }
  ClosureScratch scratch(group.order);
  std::vector<uint32_t> gens(2);
  for (std::size_t ii = 0; ii < candidates.size(); ++ii) {
    for (std::size_t jj = ii; jj < candidates.size(); ++jj) {
      ++result.pairs_tried;
      if (pair_budget > 0 && result.pairs_tried > pair_budget) {
        result.status = SearchStatus::budget_exceeded;
        result.exhausted = false;
        return result;
      }
      gens[0] = candidates[ii];
      gens[1] = candidates[jj];
      if (!closure_into(group, gens, m, scratch)) continue;
      if (scratch.elems.size() != m) continue;
      Subgroup sub = make_subgroup(group, gens, scratch.elems);
      if (accept && !accept(sub)) {
        ++result.matches_rejected;
        continue;
      }
      result.status = SearchStatus::found;
      result.subgroup = std::move(sub);
      return result;
    }
  }
  result.status = SearchStatus::not_found;
  result.exhausted = true;
  return result;
}

Subgroup normalizer(const GroupTable& group, const Subgroup& sub) {
  if (sub.group != &group) throw std::invalid_argument("subgroup belongs to a different group");
  const std::vector<uint32_t>& probe =
      sub.generator_indices.empty() ? sub.element_indices : sub.generator_indices;
  std::vector<uint32_t> elems;
  for (uint32_t g = 0; g < group.order; ++g) {
    uint32_t ginv = group.inv(g);
    bool normalizes = true;
    for (uint32_t s : probe) {
      if (!sub.contains(group.mul(group.mul(g, s), ginv))) {
        normalizes = false;
        break;
      }
    }
    if (normalizes) elems.push_back(g);
  }
  return make_subgroup(group, {}, std::move(elems));
}

std::map<uint64_t, uint64_t> order_spectrum(const GroupTable& group, const Subgroup& sub) {
  if (sub.group != &group) throw std::invalid_argument("subgroup belongs to a different group");
  std::map<uint64_t, uint64_t> spec;
  for (uint32_t i : sub.element_indices) ++spec[group.element_orders[i]];
  return spec;
}

std::map<uint64_t, uint64_t> order_spectrum(const GroupTable& group) {
  std::map<uint64_t, uint64_t> spec;
  for (uint32_t o : group.element_orders) ++spec[o];
  return spec;
}

Subgroup whole_group(const GroupTable& group) {
  Subgroup sub;
  sub.group = &group;
  sub.element_indices.resize(group.order);
  std::iota(sub.element_indices.begin(), sub.element_indices.end(), 0);
  return sub;
}

}  // namespace hallnum::psl2
