#include "hallnum/recognition.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "hallnum/numtheory.hpp"

namespace hallnum::recognition {

namespace {

using Spectrum = std::map<uint64_t, uint64_t>;

struct Profile {
  IsoTag tag;
  uint64_t order;
  Spectrum spectrum;
  bool abelian;
  uint64_t center_order;
};

// Fixed fingerprints of the named small groups.
const std::vector<Profile>& profiles() {
  static const std::vector<Profile> table = {
      {IsoTag::a4, 12, {{1, 1}, {2, 3}, {3, 8}}, false, 1},
      {IsoTag::s4, 24, {{1, 1}, {2, 9}, {3, 8}, {4, 6}}, false, 1},
      {IsoTag::a5, 60, {{1, 1}, {2, 15}, {3, 20}, {5, 24}}, false, 1},
      {IsoTag::sl2_3, 24, {{1, 1}, {2, 1}, {3, 8}, {4, 6}, {6, 8}}, false, 2},
      {IsoTag::c2xa4, 24, {{1, 1}, {2, 7}, {3, 8}, {6, 8}}, false, 2},
      {IsoTag::c5xa4, 60, {{1, 1}, {2, 3}, {3, 8}, {5, 4}, {10, 12}, {15, 32}}, false, 5},
  };
  return table;
}

uint64_t euler_phi(uint64_t n) {
  uint64_t phi = n;
  for (auto [p, e] : numtheory::factorize(n).factors) phi = phi / p * (p - 1);
  return phi;
}

bool run_self_test_once() {
  fingerprint_self_test();
  return true;
}

struct Probes {
  uint64_t order;
  Spectrum spectrum;
  bool abelian;
  uint64_t center_order;
  uint64_t max_order;
};

Probes probe(const psl2::Subgroup& sub) {
  const psl2::GroupTable& g = *sub.group;
  Probes pr;
  pr.order = sub.order();
  pr.spectrum = psl2::order_spectrum(g, sub);
  pr.max_order = pr.spectrum.rbegin()->first;
  pr.abelian = true;
  pr.center_order = 0;
  for (uint32_t x : sub.element_indices) {
    bool central = true;
    for (uint32_t y : sub.element_indices) {
      if (g.mul(x, y) != g.mul(y, x)) {
        central = false;
        pr.abelian = false;
        break;
      }
    }
    if (central) ++pr.center_order;
  }
  return pr;
}

}  // namespace

std::map<uint64_t, uint64_t> cyclic_spectrum(uint64_t n) {
  Spectrum s;
  for (uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) s[d] = euler_phi(d);
  }
  return s;
}

std::map<uint64_t, uint64_t> dihedral_spectrum(uint64_t order) {
  if (order % 2 != 0 || order < 4)
    throw std::invalid_argument("dihedral order must be even and >= 4");
  uint64_t n = order / 2;
  Spectrum s = cyclic_spectrum(n);
  s[2] += n;
  return s;
}

void fingerprint_self_test() {
  std::vector<std::pair<uint64_t, Spectrum>> prints;
  for (const Profile& pr : profiles()) prints.emplace_back(pr.order, pr.spectrum);
  for (uint64_t n : {12ULL, 24ULL, 60ULL}) {
    prints.emplace_back(n, cyclic_spectrum(n));
    prints.emplace_back(n, dihedral_spectrum(n));
  }
  for (std::size_t i = 0; i < prints.size(); ++i) {
    for (std::size_t j = i + 1; j < prints.size(); ++j) {
      if (prints[i] == prints[j])
        throw std::logic_error("fingerprint profiles are not pairwise distinct");
    }
  }
}

std::string IsoType::name() const {
  switch (tag) {
    case IsoTag::cyclic:
      return "C" + std::to_string(order);
    case IsoTag::dihedral:
      return "D" + std::to_string(order);
    case IsoTag::a4:
      return "A4";
    case IsoTag::s4:
      return "S4";
    case IsoTag::a5:
      return "A5";
    case IsoTag::sl2_3:
      return "SL2(3)";
    case IsoTag::c2xa4:
      return "C2xA4";
    case IsoTag::c5xa4:
      return "C5xA4";
    case IsoTag::frobenius:
      return "C" + std::to_string(frob_p) + ":C" + std::to_string(frob_d);
    case IsoTag::other:
      return "other(order=" + std::to_string(order) + ")";
  }
  return "?";
}

IsoType recognize(const psl2::Subgroup& sub) {
  static const bool self_tested = run_self_test_once();
  (void)self_tested;
  if (sub.group == nullptr) throw std::invalid_argument("subgroup has no group table");
  if (sub.order() == 0) throw std::invalid_argument("subgroup is empty");
  if (sub.order() > 120) throw std::invalid_argument("recognition is limited to order <= 120");

  Probes pr = probe(sub);
  IsoType t;
  t.order = pr.order;

  if (pr.max_order == pr.order) {  // has an element of full order
    t.tag = IsoTag::cyclic;
    return t;
  }
  for (const Profile& profile : profiles()) {
    if (profile.order == pr.order && profile.spectrum == pr.spectrum &&
        profile.abelian == pr.abelian && profile.center_order == pr.center_order) {
      t.tag = profile.tag;
      return t;
    }
  }
  // Klein four-group counts as the dihedral group of order 4.
  if (pr.order == 4 && pr.spectrum == Spectrum{{1, 1}, {2, 3}}) {
    t.tag = IsoTag::dihedral;
    return t;
  }
  if (pr.order % 2 == 0 && pr.order >= 6) {
    uint64_t n = pr.order / 2;
    bool index2_cyclic = pr.spectrum.count(n) > 0;
    uint64_t involutions = pr.spectrum.count(2) ? pr.spectrum.at(2) : 0;
    if (index2_cyclic && involutions >= n && pr.spectrum == dihedral_spectrum(pr.order)) {
      t.tag = IsoTag::dihedral;
      return t;
    }
  }
  // Frobenius C_p : C_d inside the Borel subgroup: order p*d with a normal
  // Sylow-p of order p (exactly p-1 elements of order p) and d | (p-1)/2.
  uint32_t p = sub.group->p;
  if (pr.order % p == 0) {
    uint64_t d = pr.order / p;
    uint64_t order_p_count = pr.spectrum.count(p) ? pr.spectrum.at(p) : 0;
    if (d >= 2 && ((static_cast<uint64_t>(p) - 1) / 2) % d == 0 && order_p_count == p - 1) {
      t.tag = IsoTag::frobenius;
      t.frob_p = p;
      t.frob_d = d;
      return t;
    }
  }
  t.tag = IsoTag::other;
  t.spectrum = pr.spectrum;
  return t;
}

bool dickson_check(uint32_t p, const psl2::Subgroup& sub) {
  if (sub.group == nullptr) throw std::invalid_argument("subgroup has no group table");
  if (sub.group->kind != psl2::GroupKind::psl)
    throw std::invalid_argument("dickson_check applies to subgroups of PSL(2,p)");
  if (sub.group->p != p) throw std::invalid_argument("p does not match the subgroup's group");
  if (sub.order() == sub.group->order)
    throw std::invalid_argument("dickson_check applies to proper subgroups");

  uint64_t half_minus = (static_cast<uint64_t>(p) - 1) / 2;
  uint64_t half_plus = (static_cast<uint64_t>(p) + 1) / 2;
  IsoType t = recognize(sub);
  switch (t.tag) {
    case IsoTag::cyclic: {
      uint64_t n = t.order;
      return n == 1 || n == p || half_minus % n == 0 || half_plus % n == 0;
    }
    case IsoTag::dihedral: {
      uint64_t n = t.order / 2;
      // Inside D_{p-1} or D_{p+1}; the dihedral group of order 2p is the
      // Frobenius group C_p:C_2 inside the Borel, present when 2 | (p-1)/2.
      return half_minus % n == 0 || half_plus % n == 0 || (n == p && half_minus % 2 == 0);
    }
    case IsoTag::frobenius:
      return t.frob_p == p && half_minus % t.frob_d == 0;
    case IsoTag::a4:
    case IsoTag::s4:
    case IsoTag::a5:
      return true;
    default:
      return false;
  }
}

}  // namespace hallnum::recognition
