#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "hallnum/errors.hpp"
#include "hallnum/psl2.hpp"

using namespace hallnum::psl2;
using hallnum::budget_exceeded;

namespace {

// Order by naive repeated multiplication against the table.
uint64_t oracle_order(const GroupTable& g, uint32_t i) {
  uint64_t ord = 1;
  uint32_t x = i;
  while (x != 0) {
    x = g.mul(x, i);
    ++ord;
  }
  return ord;
}

uint32_t det_mod(const std::array<uint32_t, 4>& e, uint32_t p) {
  uint64_t ad = static_cast<uint64_t>(e[0]) * e[3] % p;
  uint64_t bc = static_cast<uint64_t>(e[1]) * e[2] % p;
  return static_cast<uint32_t>((ad + p - bc) % p);
}

// Every subgroup reachable by closing tuples of up to `max_gens` elements,
// identified by its sorted element-index list.
std::set<std::vector<uint32_t>> generated_subgroups(const GroupTable& g, int max_gens) {
  std::set<std::vector<uint32_t>> out;
  uint32_t n = static_cast<uint32_t>(g.order);
  for (uint32_t i = 0; i < n; ++i) {
    auto c1 = closure(g, {i}, g.order);
    out.insert(c1.subgroup->element_indices);
    if (max_gens < 2) continue;
    for (uint32_t j = i; j < n; ++j) {
      auto c2 = closure(g, {i, j}, g.order);
      out.insert(c2.subgroup->element_indices);
      if (max_gens < 3) continue;
      for (uint32_t k = j; k < n; ++k) {
        auto c3 = closure(g, {i, j, k}, g.order);
        out.insert(c3.subgroup->element_indices);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("group orders match the closed formulas") {
  CHECK(build_group(5, GroupKind::psl).order == 60);
  CHECK(build_group(5, GroupKind::pgl).order == 120);
  CHECK(build_group(7, GroupKind::psl).order == 168);
  CHECK(build_group(13, GroupKind::psl).order == 1092);
  CHECK(build_group(29, GroupKind::psl).order == 12180);
  for (uint32_t p : {5u, 7u, 11u, 13u, 17u, 19u}) {
    uint64_t n = static_cast<uint64_t>(p) * (p - 1) * (p + 1);
    CHECK(build_group(p, GroupKind::psl).order == n / 2);
    CHECK(build_group(p, GroupKind::pgl).order == n);
  }
}

TEST_CASE("build_group validates p and enforces the cap") {
  CHECK_THROWS_AS(build_group(4, GroupKind::psl), std::invalid_argument);
  CHECK_THROWS_AS(build_group(9, GroupKind::psl), std::invalid_argument);
  CHECK_THROWS_AS(build_group(3, GroupKind::psl), std::invalid_argument);
  CHECK_THROWS_AS(build_group(2, GroupKind::pgl), std::invalid_argument);
  CHECK_THROWS_AS(build_group(65537, GroupKind::psl), std::invalid_argument);
  CHECK_THROWS_AS(build_group(29, GroupKind::psl, 5000), budget_exceeded);
  CHECK_NOTHROW(build_group(29, GroupKind::psl, 12180));
}

TEST_CASE("identity sits at index 0 and indexing is a bijection") {
  for (auto kind : {GroupKind::psl, GroupKind::pgl}) {
    auto g = build_group(13, kind);
    CHECK(is_identity(g.element(0)));
    CHECK(g.element(0).e == std::array<uint32_t, 4>{1, 0, 0, 1});
    std::set<uint64_t> seen;
    for (uint32_t i = 0; i < g.order; ++i) {
      auto e = g.element(i);
      auto idx = g.index_of(e);
      REQUIRE(idx.has_value());
      CHECK(*idx == i);
      seen.insert((static_cast<uint64_t>(e.e[0]) << 48) | (static_cast<uint64_t>(e.e[1]) << 32) |
                  (static_cast<uint64_t>(e.e[2]) << 16) | e.e[3]);
    }
    CHECK(seen.size() == g.order);
    CHECK_THROWS_AS(g.element(static_cast<uint32_t>(g.order)), std::invalid_argument);
  }
}

TEST_CASE("canonical form: psl folds signs to det 1, pgl scales the lead entry to 1") {
  SUBCASE("psl representative is stable under negation and repeated canonicalization") {
    uint32_t p = 13;
    auto g = build_group(p, GroupKind::psl);
    for (uint32_t i = 0; i < g.order; ++i) {
      auto e = g.element(i);
      CHECK(det_mod(e.e, p) == 1);
      uint32_t lead = 0;
      for (uint32_t x : e.e) {
        if (x != 0) {
          lead = x;
          break;
        }
      }
      CHECK(lead >= 1);
      CHECK(lead <= (p - 1) / 2);
      // canonical of the canonical entries is itself
      CHECK(make_element(p, GroupKind::psl, e.e) == e);
      // canonical of the negated matrix is the same element
      std::array<uint32_t, 4> neg;
      for (int k = 0; k < 4; ++k) neg[k] = e.e[k] == 0 ? 0 : p - e.e[k];
      CHECK(make_element(p, GroupKind::psl, neg) == e);
    }
  }
  SUBCASE("pgl representative is scale-invariant") {
    uint32_t p = 7;
    auto g = build_group(p, GroupKind::pgl);
    for (uint32_t i = 0; i < g.order; ++i) {
      auto e = g.element(i);
      uint32_t lead = 0;
      for (uint32_t x : e.e) {
        if (x != 0) {
          lead = x;
          break;
        }
      }
      CHECK(lead == 1);
      for (uint32_t s = 1; s < p; ++s) {
        std::array<uint32_t, 4> scaled;
        for (int k = 0; k < 4; ++k)
          scaled[k] = static_cast<uint32_t>(static_cast<uint64_t>(e.e[k]) * s % p);
        CHECK(make_element(p, GroupKind::pgl, scaled) == e);
      }
    }
  }
  SUBCASE("psl rescales square determinants and rejects non-squares") {
    // det 4 = 2^2 is a square mod 5; det 2 is not.
    auto e = make_element(5, GroupKind::psl, {2, 0, 0, 2});
    CHECK(det_mod(e.e, 5) == 1);
    CHECK_THROWS_AS(make_element(5, GroupKind::psl, {1, 0, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_element(5, GroupKind::psl, {1, 1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_element(5, GroupKind::psl, {0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(make_element(4, GroupKind::psl, {1, 0, 0, 1}), std::invalid_argument);
  }
}

TEST_CASE("multiplication and inversion satisfy the group laws") {
  auto g = build_group(13, GroupKind::psl);
  auto h = build_group(7, GroupKind::pgl);
  std::mt19937 rng(2026);
  for (const auto* table : {&g, &h}) {
    std::uniform_int_distribution<uint32_t> pick(0, static_cast<uint32_t>(table->order - 1));
    for (int t = 0; t < 300; ++t) {
      auto a = table->element(pick(rng));
      auto b = table->element(pick(rng));
      auto c = table->element(pick(rng));
      CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
      CHECK(multiply(a, invert(a)) == table->element(0));
      CHECK(multiply(invert(a), a) == table->element(0));
      CHECK(invert(invert(a)) == a);
      CHECK(multiply(a, table->element(0)) == a);
      CHECK(multiply(table->element(0), a) == a);
      // table lookup multiplication agrees with the free-function product
      uint32_t ia = *table->index_of(a), ib = *table->index_of(b);
      CHECK(table->element(table->mul(ia, ib)) == multiply(a, b));
      CHECK(table->element(table->inv(ia)) == invert(a));
    }
  }
  CHECK_THROWS_AS(multiply(g.element(1), h.element(1)), std::invalid_argument);
  CHECK_THROWS_AS(g.index_of(h.element(1)), std::invalid_argument);
}

TEST_CASE("element orders match naive repeated multiplication") {
  for (auto kind : {GroupKind::psl, GroupKind::pgl}) {
    for (uint32_t p : {5u, 7u, 11u}) {
      auto g = build_group(p, kind);
      for (uint32_t i = 0; i < g.order; ++i) {
        CHECK(g.element_orders[i] == oracle_order(g, i));
        // orders divide p, (p-1)/2 or (p+1)/2 (psl); p, p-1 or p+1 (pgl)
        uint64_t o = g.element_orders[i];
        bool divides = false;
        std::vector<uint64_t> exps;
        if (kind == GroupKind::psl)
          exps = {p, static_cast<uint64_t>(p - 1) / 2, static_cast<uint64_t>(p + 1) / 2};
        else
          exps = {p, static_cast<uint64_t>(p - 1), static_cast<uint64_t>(p + 1)};
        for (uint64_t e : exps) divides = divides || (e % o == 0);
        CHECK(divides);
      }
    }
  }
}

TEST_CASE("order spectrum of PSL(2,5)") {
  auto g = build_group(5, GroupKind::psl);
  std::map<uint64_t, uint64_t> want{{1, 1}, {2, 15}, {3, 20}, {5, 24}};
  CHECK(order_spectrum(g) == want);
  CHECK(order_spectrum(g, whole_group(g)) == want);
  uint64_t total = 0;
  for (auto [o, c] : order_spectrum(g)) {
    (void)o;
    total += c;
  }
  CHECK(total == g.order);
}

TEST_CASE("closure generates subgroups, honors caps, and verifies closedness") {
  auto g = build_group(7, GroupKind::psl);

  auto trivial = closure(g, {}, 10);
  REQUIRE(trivial.subgroup.has_value());
  CHECK(trivial.subgroup->order() == 1);
  CHECK(trivial.subgroup->element_indices == std::vector<uint32_t>{0});

  auto id_only = closure(g, {0}, 10);
  CHECK(id_only.subgroup->order() == 1);

  // cyclic closures have the generator's order
  for (uint32_t i = 0; i < g.order; ++i) {
    auto c = closure(g, {i}, g.order);
    REQUIRE(c.subgroup.has_value());
    CHECK(c.subgroup->order() == g.element_orders[i]);
  }

  // closedness under multiplication and inversion, plus Lagrange
  std::mt19937 rng(5);
  std::uniform_int_distribution<uint32_t> pick(0, static_cast<uint32_t>(g.order - 1));
  for (int t = 0; t < 60; ++t) {
    auto c = closure(g, {pick(rng), pick(rng)}, g.order);
    REQUIRE(c.subgroup.has_value());
    const auto& sub = *c.subgroup;
    CHECK(g.order % sub.order() == 0);
    CHECK(sub.contains(0));
    if (sub.order() <= 120) {
      for (uint32_t x : sub.element_indices) {
        CHECK(sub.contains(g.inv(x)));
        for (uint32_t y : sub.element_indices) CHECK(sub.contains(g.mul(x, y)));
      }
    }
  }

  // caps are respected: the whole group does not fit under 100
  std::vector<uint32_t> all;
  for (uint32_t i = 0; i < g.order; ++i) all.push_back(i);
  auto whole = closure(g, all, g.order);
  REQUIRE(whole.subgroup.has_value());
  CHECK(whole.subgroup->order() == g.order);
  auto capped = closure(g, all, 100);
  CHECK(capped.cap_exceeded);
  CHECK_FALSE(capped.subgroup.has_value());

  CHECK_THROWS_AS(closure(g, {static_cast<uint32_t>(g.order)}, 10), std::invalid_argument);
}

TEST_CASE("find_subgroup_of_order covers found, lagrange, exhaustion, filter and budget") {
  auto g = build_group(5, GroupKind::psl);

  auto r12 = find_subgroup_of_order(g, 12);
  REQUIRE(r12.status == SearchStatus::found);
  CHECK(r12.subgroup->order() == 12);
  for (uint32_t gen : r12.subgroup->generator_indices) CHECK(r12.subgroup->contains(gen));

  auto rwhole = find_subgroup_of_order(g, 60);
  REQUIRE(rwhole.status == SearchStatus::found);
  CHECK(rwhole.subgroup->order() == 60);

  auto r7 = find_subgroup_of_order(g, 7);
  CHECK(r7.status == SearchStatus::not_found);
  CHECK(r7.exhausted);
  CHECK(r7.reason == "lagrange");
  CHECK(r7.pairs_tried == 0);

  // 15 and 20 divide 60, but the group has no subgroup of either order
  for (uint64_t m : {15ULL, 20ULL}) {
    auto r = find_subgroup_of_order(g, m, SearchMode::exhaustive);
    CHECK(r.status == SearchStatus::not_found);
    CHECK(r.exhausted);
    CHECK(r.pairs_tried > 0);
  }

  // a reject-all filter turns every match into a rejection
  auto rfil = find_subgroup_of_order(g, 12, SearchMode::first,
                                     [](const Subgroup&) { return false; });
  CHECK(rfil.status == SearchStatus::not_found);
  CHECK(rfil.exhausted);
  CHECK(rfil.matches_rejected > 0);

  auto rbud = find_subgroup_of_order(g, 12, SearchMode::first, {}, 1);
  CHECK(rbud.status == SearchStatus::budget_exceeded);
  CHECK_FALSE(rbud.exhausted);

  CHECK_THROWS_AS(find_subgroup_of_order(g, 0), std::invalid_argument);
}

TEST_CASE("normalizer: whole group, trivial subgroup, and dihedral normalizers of C5") {
  auto g = build_group(5, GroupKind::psl);
  CHECK(normalizer(g, whole_group(g)).order() == g.order);
  auto trivial = closure(g, {}, 2);
  CHECK(normalizer(g, *trivial.subgroup).order() == g.order);

  // the normalizer of an order-5 cyclic subgroup of PSL(2,5) is dihedral of order 10
  for (uint32_t i = 0; i < g.order; ++i) {
    if (g.element_orders[i] != 5) continue;
    auto c5 = closure(g, {i}, 5);
    REQUIRE(c5.subgroup.has_value());
    auto n = normalizer(g, *c5.subgroup);
    CHECK(n.order() == 10);
    for (uint32_t x : c5.subgroup->element_indices) CHECK(n.contains(x));
  }

  // and in PSL(2,29) it is dihedral of order 30
  auto big = build_group(29, GroupKind::psl);
  uint32_t five = 0;
  while (big.element_orders[five] != 5) ++five;
  auto c5 = closure(big, {five}, 5);
  auto n = normalizer(big, *c5.subgroup);
  CHECK(n.order() == 30);
  auto spec = order_spectrum(big, n);
  CHECK(spec[2] == 15);  // dihedral of order 30: 15 reflections
  CHECK(spec[15] == 8);
}

TEST_CASE("pair-generated and triple-generated subgroup sets coincide for PSL(2,5)") {
  auto g = build_group(5, GroupKind::psl);
  auto pairs = generated_subgroups(g, 2);
  auto triples = generated_subgroups(g, 3);
  CHECK(pairs == triples);
  CHECK(pairs.size() > 50);  // sanity: many distinct subgroups
  // every generated subgroup satisfies Lagrange
  for (const auto& elems : pairs) CHECK(g.order % elems.size() == 0);
}
