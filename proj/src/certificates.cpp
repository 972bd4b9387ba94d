#include "hallnum/certificates.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "hallnum/errors.hpp"
#include "hallnum/numtheory.hpp"
#include "hallnum/psl2.hpp"
#include "hallnum/recognition.hpp"

namespace hallnum::certificates {

using nlohmann::json;
namespace ht = halltheory;
namespace nt = numtheory;

namespace {

json hall_divisor_json(const ht::HallDivisorEvidence& ev) {
  return json{{"m", ev.m}, {"cofactor", ev.cofactor}, {"gcd", ev.gcd_value}};
}

std::optional<psl2::GroupKind> parse_kind(const std::string& s) {
  if (s == "psl") return psl2::GroupKind::psl;
  if (s == "pgl") return psl2::GroupKind::pgl;
  return std::nullopt;
}

struct Checker {
  std::vector<std::string> failures;

  void fail(const std::string& msg) { failures.push_back(msg); }
  bool require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
    return ok;
  }
};

// Typed field access; missing or mistyped fields become recorded failures.
template <typename T>
std::optional<T> field(const json& j, const char* key, Checker& c) {
  auto it = j.find(key);
  if (it == j.end()) {
    c.fail(std::string("missing field: ") + key);
    return std::nullopt;
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    c.fail(std::string("field has the wrong type: ") + key);
    return std::nullopt;
  }
}

std::string expected_type_name(uint64_t m) {
  switch (m) {
    case 12: return "A4";
    case 24: return "S4";
    case 60: return "A5";
  }
  return "";
}

recognition::IsoTag expected_type_tag(uint64_t m) {
  switch (m) {
    case 12: return recognition::IsoTag::a4;
    case 24: return recognition::IsoTag::s4;
    default: return recognition::IsoTag::a5;
  }
}

void check_witness_impl(const json& j, Checker& c) {
  auto m = field<uint64_t>(j, "m", c);
  auto classification = field<std::string>(j, "classification", c);
  auto split = field<std::vector<uint64_t>>(j, "split", c);
  auto witness = field<uint64_t>(j, "witness_prime", c);
  auto group = field<json>(j, "group", c);
  auto hall = field<json>(j, "hall_divisor", c);
  auto verification = field<json>(j, "verification", c);
  auto options = field<json>(j, "options", c);
  field<std::string>(j, "tool_version", c);
  if (!m || !classification || !split || !witness || !group || !hall || !verification ||
      !options)
    return;

  if (!c.require(*m >= 1, "m must be positive")) return;
  auto cls = ht::classify(*m);
  c.require(*classification == "not_hall", "classification must be not_hall");
  if (!c.require(cls.tag == ht::ClassTag::not_hall,
                 "m = " + std::to_string(*m) + " is a Hall number; no certificate can exist"))
    return;
  auto [a, b] = *cls.split;
  c.require(split->size() == 2 && (*split)[0] == a && (*split)[1] == b,
            "split does not match the canonical coprime split (" + std::to_string(a) + ", " +
                std::to_string(b) + ")");

  uint64_t p = *witness;
  c.require(nt::is_prime(p), "witness_prime is not prime");
  if (p < 5) {
    c.fail("witness_prime must be at least 5");
    return;
  }
  c.require(nt::is_hall_divisor(a, p - 1),
            std::to_string(a) + " is not a Hall divisor of p - 1");
  c.require(nt::is_hall_divisor(b, p + 1),
            std::to_string(b) + " is not a Hall divisor of p + 1");

  auto prime_bound = field<uint64_t>(*options, "prime_bound", c);
  auto group_cap = field<uint64_t>(*options, "group_cap", c);
  if (!prime_bound || !group_cap) return;
  nt::WitnessPrimeQuery query;
  query.a = a;
  query.b = b;
  query.count = 1;
  query.search_bound = *prime_bound;
  auto least = nt::find_witness_primes(query);
  c.require(!least.primes.empty() && least.primes.front() == p,
            "witness_prime is not the least witness under the recorded bound");

  auto kind_str = field<std::string>(*group, "kind", c);
  auto group_p = field<uint64_t>(*group, "p", c);
  auto group_order = field<uint64_t>(*group, "order", c);
  if (!kind_str || !group_p || !group_order) return;
  c.require(*kind_str == "psl", "witness groups are always psl");
  c.require(*group_p == p, "group.p does not match witness_prime");
  uint64_t order = ht::group_order_for(p, psl2::GroupKind::psl);
  if (!c.require(*group_order == order, "group.order does not equal p(p-1)(p+1)/2")) return;

  auto h_m = field<uint64_t>(*hall, "m", c);
  auto h_cof = field<uint64_t>(*hall, "cofactor", c);
  auto h_gcd = field<uint64_t>(*hall, "gcd", c);
  if (!h_m || !h_cof || !h_gcd) return;
  c.require(*h_m == *m, "hall_divisor.m does not match m");
  if (!c.require(order % *m == 0, "m does not divide the group order")) return;
  c.require(*h_cof == order / *m, "hall_divisor.cofactor is not order/m");
  c.require(*h_gcd == std::gcd(*m, order / *m), "hall_divisor.gcd is not gcd(m, order/m)");
  c.require(std::gcd(*m, order / *m) == 1, "m is not a Hall divisor of the group order");

  auto mode = field<std::string>(*verification, "mode", c);
  if (!mode) return;
  if (*mode == "brute_force") {
    auto tried = field<uint64_t>(*verification, "candidates_tried", c);
    auto exhausted = field<bool>(*verification, "exhausted", c);
    if (!tried || !exhausted) return;
    c.require(*exhausted, "brute-force evidence must be exhausted");
    if (!c.require(order <= *group_cap,
                   "brute_force mode recorded but the group order exceeds the recorded cap"))
      return;
    auto table = psl2::build_group(static_cast<uint32_t>(p), psl2::GroupKind::psl, *group_cap);
    auto replay = psl2::find_subgroup_of_order(table, *m, psl2::SearchMode::exhaustive);
    c.require(replay.status == psl2::SearchStatus::not_found,
              "replayed search found a subgroup of order m");
    c.require(replay.exhausted, "replayed search did not exhaust the candidate pairs");
    c.require(replay.pairs_tried == *tried,
              "candidates_tried does not match the replayed search (" +
                  std::to_string(replay.pairs_tried) + " pairs)");
  } else if (*mode == "case_analysis") {
    auto cases = field<json>(*verification, "cases", c);
    auto excluded = field<bool>(*verification, "exceptional_orders_excluded", c);
    if (!cases || !excluded) return;
    c.require(*excluded, "exceptional_orders_excluded must hold");
    if (!c.require(cases->is_array(), "cases must be an array")) return;
    std::map<std::string, uint64_t> expected_containers = {
        {"borel_frobenius", p * (p - 1) / 2}, {"dihedral_p_minus_1", p - 1},
        {"dihedral_p_plus_1", p + 1},         {"a4", 12},
        {"s4", 24},                           {"a5", 60}};
    std::set<std::string> seen;
    for (const auto& entry : *cases) {
      auto cls_name = field<std::string>(entry, "class", c);
      auto container = field<uint64_t>(entry, "container_order", c);
      auto divides = field<bool>(entry, "m_divides", c);
      if (!cls_name || !container || !divides) return;
      auto it = expected_containers.find(*cls_name);
      if (!c.require(it != expected_containers.end(), "unknown case class: " + *cls_name))
        return;
      seen.insert(*cls_name);
      c.require(*container == it->second,
                "container_order for " + *cls_name + " should be " + std::to_string(it->second));
      bool really_divides = it->second % *m == 0;
      c.require(*divides == really_divides, "m_divides recorded wrongly for " + *cls_name);
      if (really_divides) {
        // Only the order-60 container can be divisible by a non-Hall m, and
        // the claim is settled by exhausting the concrete 60-element group.
        if (!c.require(it->second == 60,
                       "class " + *cls_name + " is divisible by m; certificate is unsound"))
          return;
        auto a5_model = psl2::build_group(5, psl2::GroupKind::psl, 100);
        auto replay = psl2::find_subgroup_of_order(a5_model, *m, psl2::SearchMode::exhaustive);
        c.require(replay.status == psl2::SearchStatus::not_found && replay.exhausted,
                  "order-60 groups do contain a subgroup of order m; certificate is unsound");
      }
    }
    for (const auto& [name, container] : expected_containers) {
      (void)container;
      c.require(seen.count(name) == 1, "missing case class: " + name);
    }
  } else {
    c.fail("unknown verification mode: " + *mode);
  }
}

void check_report_impl(const json& j, Checker& c) {
  auto m = field<uint64_t>(j, "m", c);
  auto q = field<uint64_t>(j, "q", c);
  auto group = field<json>(j, "group", c);
  auto congruence = field<json>(j, "congruence", c);
  auto hall = field<json>(j, "hall_divisor", c);
  auto status = field<std::string>(j, "status", c);
  auto expected = field<std::string>(j, "expected", c);
  field<std::string>(j, "tool_version", c);
  if (!m || !q || !group || !congruence || !hall || !status || !expected) return;

  if (!c.require(*m == 12 || *m == 24 || *m == 60, "m must be 12, 24 or 60")) return;
  auto kind_str = field<std::string>(*group, "kind", c);
  auto group_p = field<uint64_t>(*group, "p", c);
  auto group_order = field<uint64_t>(*group, "order", c);
  if (!kind_str || !group_p || !group_order) return;
  auto kind = parse_kind(*kind_str);
  if (!c.require(kind.has_value(), "group.kind must be psl or pgl")) return;

  uint32_t p = 0;
  try {
    p = ht::resolve_prime_field(*q, *kind).first;
  } catch (const std::exception& e) {
    c.fail(std::string("q is not a valid field size: ") + e.what());
    return;
  }
  c.require(*group_p == p, "group.p does not match the resolved field prime");
  uint64_t order = ht::group_order_for(p, *kind);
  if (!c.require(*group_order == order, "group.order does not match the closed form")) return;

  bool holds_expected = nt::is_hall_divisor(*m, order);
  auto holds = field<bool>(*congruence, "holds", c);
  if (!holds) return;
  c.require(*holds == holds_expected,
            "congruence.holds disagrees with the direct Hall-divisor check");
  if (congruence->contains("modulus")) {
    auto modulus = field<uint64_t>(*congruence, "modulus", c);
    auto residues = field<std::vector<uint64_t>>(*congruence, "residues", c);
    auto q2 = field<uint64_t>(*congruence, "q_squared_mod", c);
    if (!modulus || !residues || !q2) return;
    uint64_t family_m = (*kind == psl2::GroupKind::pgl && *m == 24) ? 12 : *m;
    ht::CongruenceFamily fam;
    try {
      fam = ht::congruence_family(family_m);
    } catch (const std::exception& e) {
      c.fail(std::string("no residue family applies: ") + e.what());
      return;
    }
    c.require(*modulus == fam.modulus, "congruence.modulus does not match the family");
    c.require(*residues == fam.residues, "congruence.residues do not match the family");
    c.require(*q2 == static_cast<uint64_t>(p) * p % fam.modulus,
              "q_squared_mod is not q^2 reduced by the modulus");
    bool member = std::find(fam.residues.begin(), fam.residues.end(),
                            static_cast<uint64_t>(p) * p % fam.modulus) != fam.residues.end();
    bool has_note = congruence->contains("note");
    c.require(member == *holds || has_note,
              "family membership disagrees with congruence.holds and no note explains why");
  }

  auto h_m = field<uint64_t>(*hall, "m", c);
  auto h_cof = field<uint64_t>(*hall, "cofactor", c);
  auto h_gcd = field<uint64_t>(*hall, "gcd", c);
  if (!h_m || !h_cof || !h_gcd) return;
  c.require(*h_m == *m, "hall_divisor.m does not match m");
  uint64_t cof = order % *m == 0 ? order / *m : 0;
  c.require(*h_cof == cof, "hall_divisor.cofactor mismatch");
  c.require(*h_gcd == (cof == 0 ? 0 : std::gcd(*m, cof)), "hall_divisor.gcd mismatch");

  c.require(*expected == expected_type_name(*m), "expected type does not match m");

  if (*status == "not_hall_divisor") {
    c.require(!holds_expected, "status not_hall_divisor but m Hall-divides the order");
    return;
  }
  if (!c.require(holds_expected, "status " + *status + " requires m to Hall-divide the order"))
    return;

  if (*status == "ok") {
    auto generators = field<json>(j, "generators", c);
    auto sub_order = field<uint64_t>(j, "subgroup_order", c);
    auto recognized = field<std::string>(j, "recognized", c);
    if (!generators || !sub_order || !recognized) return;
    if (!c.require(generators->is_array() && !generators->empty(),
                   "generators must be a non-empty array"))
      return;
    auto table = psl2::build_group(p, *kind, order);
    std::vector<uint32_t> gen_indices;
    for (const auto& g : *generators) {
      auto idx = field<uint64_t>(g, "index", c);
      auto mat = field<std::vector<uint64_t>>(g, "matrix", c);
      if (!idx || !mat) return;
      if (!c.require(*idx < order, "generator index out of range")) return;
      auto elem = table.element(static_cast<uint32_t>(*idx));
      bool mat_ok = mat->size() == 4;
      for (std::size_t k = 0; mat_ok && k < 4; ++k) mat_ok = (*mat)[k] == elem.e[k];
      c.require(mat_ok, "generator matrix does not match the element at its index");
      gen_indices.push_back(static_cast<uint32_t>(*idx));
    }
    auto closed = psl2::closure(table, gen_indices, *m);
    if (!c.require(!closed.cap_exceeded && closed.subgroup.has_value(),
                   "generators do not close into a subgroup of order at most m"))
      return;
    c.require(closed.subgroup->order() == *m, "generated subgroup does not have order m");
    c.require(*sub_order == closed.subgroup->order(), "subgroup_order mismatch");
    auto type = recognition::recognize(*closed.subgroup);
    c.require(type.name() == *recognized, "recognized type does not match the subgroup");
    c.require(type.tag == expected_type_tag(*m), "subgroup is not of the expected type");
    return;
  }
  if (*status == "type_mismatch") {
    // Such a report would contradict the classification table; replay the
    // filtered search to confirm the claim before accepting the shape.
    auto table = psl2::build_group(p, *kind, order);
    auto want = expected_type_tag(*m);
    auto accept = [&](const psl2::Subgroup& s) { return recognition::recognize(s).tag == want; };
    auto replay = psl2::find_subgroup_of_order(table, *m, psl2::SearchMode::first, accept);
    c.require(replay.status == psl2::SearchStatus::not_found,
              "replayed search does find a subgroup of the expected type");
    return;
  }
  c.fail("unknown status: " + *status);
}

}  // namespace

json to_json(const ht::WitnessCertificate& cert) {
  json j;
  j["m"] = cert.m;
  j["classification"] = "not_hall";
  j["split"] = json::array({cert.split.first, cert.split.second});
  j["witness_prime"] = cert.witness_prime;
  j["group"] = {{"kind", psl2::to_string(cert.kind)},
                {"p", cert.witness_prime},
                {"order", cert.group_order}};
  j["hall_divisor"] = hall_divisor_json(cert.hall);
  if (std::holds_alternative<ht::BruteForceEvidence>(cert.verification)) {
    const auto& ev = std::get<ht::BruteForceEvidence>(cert.verification);
    j["verification"] = {{"mode", "brute_force"},
                         {"candidates_tried", ev.candidates_tried},
                         {"exhausted", ev.exhausted}};
  } else {
    const auto& ev = std::get<ht::CaseAnalysisEvidence>(cert.verification);
    json cases = json::array();
    for (const auto& fact : ev.cases) {
      cases.push_back({{"class", fact.dickson_class},
                       {"container_order", fact.container_order},
                       {"m_divides", fact.m_divides}});
    }
    j["verification"] = {{"mode", "case_analysis"},
                         {"cases", cases},
                         {"exceptional_orders_excluded", ev.exceptional_orders_excluded},
                         {"downgraded_from_brute_force", ev.downgraded_from_brute_force}};
  }
  j["options"] = {{"prime_bound", cert.options.prime_bound},
                  {"group_cap", cert.options.group_cap}};
  j["tool_version"] = kToolVersion;
  return j;
}

json to_json(const ht::HallSubgroupReport& rep) {
  json j;
  j["m"] = rep.m;
  j["q"] = rep.q;
  j["group"] = {{"kind", psl2::to_string(rep.kind)}, {"p", rep.group_p},
                {"order", rep.group_order}};
  if (rep.alias_note) j["alias_note"] = *rep.alias_note;
  json cong;
  cong["holds"] = rep.congruence_holds;
  if (rep.family) {
    cong["modulus"] = rep.family->modulus;
    cong["residues"] = rep.family->residues;
    cong["q_squared_mod"] = rep.q_squared_mod;
  }
  if (rep.congruence_note) cong["note"] = *rep.congruence_note;
  j["congruence"] = cong;
  j["hall_divisor"] = hall_divisor_json(rep.hall);
  j["status"] = ht::to_string(rep.status);
  j["expected"] = rep.expected;
  if (rep.status == ht::VerifyStatus::ok) {
    json gens = json::array();
    for (std::size_t i = 0; i < rep.generator_indices.size(); ++i) {
      const auto& mat = rep.generator_matrices[i];
      gens.push_back({{"index", rep.generator_indices[i]},
                      {"matrix", json::array({mat[0], mat[1], mat[2], mat[3]})}});
    }
    j["generators"] = gens;
    j["subgroup_order"] = rep.subgroup_order;
    j["recognized"] = rep.recognized;
    j["pairs_tried"] = rep.pairs_tried;
    if (!rep.rejected_types.empty()) j["rejected_types"] = rep.rejected_types;
  } else if (rep.status == ht::VerifyStatus::type_mismatch) {
    j["pairs_tried"] = rep.pairs_tried;
    j["rejected_types"] = rep.rejected_types;
  }
  j["tool_version"] = kToolVersion;
  return j;
}

std::string stable_dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> check_witness_certificate(const json& j) {
  Checker c;
  if (!j.is_object()) {
    c.fail("certificate must be a JSON object");
    return c.failures;
  }
  try {
    check_witness_impl(j, c);
  } catch (const std::exception& e) {
    c.fail(std::string("exception while checking: ") + e.what());
  }
  return c.failures;
}

std::vector<std::string> check_subgroup_report(const json& j) {
  Checker c;
  if (!j.is_object()) {
    c.fail("report must be a JSON object");
    return c.failures;
  }
  try {
    check_report_impl(j, c);
  } catch (const std::exception& e) {
    c.fail(std::string("exception while checking: ") + e.what());
  }
  return c.failures;
}

}  // namespace hallnum::certificates
