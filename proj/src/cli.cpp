#include "hallnum/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hallnum/certificates.hpp"
#include "hallnum/errors.hpp"
#include "hallnum/halltheory.hpp"
#include "hallnum/numtheory.hpp"
#include "hallnum/psl2.hpp"

namespace hallnum::cli {

using nlohmann::json;
namespace ht = halltheory;
namespace nt = numtheory;

namespace {

std::string describe(const ht::Classification& cls) {
  switch (cls.tag) {
    case ht::ClassTag::prime_power:
      return "Hall number (prime power)";
    case ht::ClassTag::two_times_odd:
      return "Hall number (twice an odd number)";
    case ht::ClassTag::exceptional:
      return "Hall number (exceptional: 12, 24 or 60)";
    case ht::ClassTag::not_hall:
      return "not a Hall number (coprime split " + std::to_string(cls.split->first) + " * " +
             std::to_string(cls.split->second) + ")";
  }
  return "unknown";
}

std::string group_name(psl2::GroupKind kind, uint32_t p) {
  return (kind == psl2::GroupKind::psl ? "PSL(2," : "PGL(2,") + std::to_string(p) + ")";
}

int cmd_classify(uint64_t m, bool with_witness, const ht::WitnessOptions& opt, bool json_out,
                 std::ostream& out) {
  auto cls = ht::classify(m);
  json j;
  j["m"] = m;
  j["classification"] = ht::to_string(cls.tag);
  if (cls.split) j["split"] = json::array({cls.split->first, cls.split->second});
  std::optional<json> cert;
  if (with_witness && cls.tag == ht::ClassTag::not_hall) {
    cert = certificates::to_json(ht::generate_witness(m, opt));
    j["witness"] = *cert;
  }
  if (json_out) {
    out << certificates::stable_dump(j);
  } else {
    out << m << ": " << describe(cls) << "\n";
    if (cert) out << certificates::stable_dump(*cert);
  }
  return exit_ok;
}

int cmd_witness(uint64_t m, const ht::WitnessOptions& opt, std::ostream& out) {
  auto cert = ht::generate_witness(m, opt);
  out << certificates::stable_dump(certificates::to_json(cert));
  return exit_ok;
}

int cmd_verify(uint64_t m, uint64_t q, psl2::GroupKind kind, uint64_t cap, bool json_out,
               std::ostream& out) {
  auto rep = ht::verify_exceptional(m, q, kind, cap);
  if (json_out) {
    out << certificates::stable_dump(certificates::to_json(rep));
  } else {
    out << "group " << group_name(rep.kind, rep.group_p) << ", order " << rep.group_order
        << "\n";
    if (rep.alias_note) out << "note: " << *rep.alias_note << "\n";
    out << "m = " << m << ": "
        << (rep.congruence_holds ? "Hall divisor of the group order"
                                 : "not a Hall divisor of the group order")
        << " (q^2 = " << rep.q_squared_mod << " mod "
        << (rep.family ? rep.family->modulus : 0) << ")\n";
    switch (rep.status) {
      case ht::VerifyStatus::ok:
        out << "found Hall subgroup of order " << rep.subgroup_order << ", type "
            << rep.recognized << " (expected " << rep.expected << ")\n";
        break;
      case ht::VerifyStatus::not_hall_divisor:
        out << "no Hall subgroup of order " << m << " exists\n";
        break;
      case ht::VerifyStatus::type_mismatch:
        out << "no subgroup of the expected type " << rep.expected << " was found\n";
        break;
    }
  }
  return rep.status == ht::VerifyStatus::ok ? exit_ok : exit_negative;
}

int cmd_primes(uint64_t a, uint64_t b, std::size_t count, uint64_t bound, bool json_out,
               std::ostream& out, std::ostream& err) {
  nt::WitnessPrimeQuery query;
  query.a = a;
  query.b = b;
  query.count = count;
  query.search_bound = bound;
  auto list = nt::find_witness_primes(query);
  if (json_out) {
    json j{{"a", a},
           {"b", b},
           {"count", count},
           {"bound", bound},
           {"primes", list.primes},
           {"bound_exhausted", list.bound_exhausted}};
    out << certificates::stable_dump(j);
  } else {
    for (uint64_t p : list.primes) out << p << "\n";
  }
  if (list.bound_exhausted) {
    err << "warning: search bound " << bound << " reached after " << list.primes.size()
        << " of " << count << " primes\n";
    return exit_budget;
  }
  return exit_ok;
}

int cmd_family(uint64_t m, std::size_t count, uint64_t bound, bool json_out, std::ostream& out,
               std::ostream& err) {
  auto list = ht::family_primes(m, count, bound);
  if (json_out) {
    auto fam = ht::congruence_family(m);
    json j{{"m", m},
           {"modulus", fam.modulus},
           {"residues", fam.residues},
           {"count", count},
           {"bound", bound},
           {"primes", list.primes},
           {"bound_exhausted", list.bound_exhausted}};
    out << certificates::stable_dump(j);
  } else {
    for (uint64_t p : list.primes) out << p << "\n";
  }
  if (list.bound_exhausted) {
    err << "warning: search bound " << bound << " reached after " << list.primes.size()
        << " of " << count << " primes\n";
    return exit_budget;
  }
  return exit_ok;
}

int cmd_inspect(uint64_t q, psl2::GroupKind kind, uint64_t cap, bool json_out,
                std::ostream& out) {
  auto [p, note] = ht::resolve_prime_field(q, kind);
  auto table = psl2::build_group(p, kind, cap);
  auto spectrum = psl2::order_spectrum(table);
  uint64_t sylow2 = nt::p_part(table.order, 2);
  if (json_out) {
    json sp = json::array();
    for (auto [o, c] : spectrum) sp.push_back(json::array({o, c}));
    json j{{"q", q},
           {"p", p},
           {"kind", psl2::to_string(kind)},
           {"order", table.order},
           {"sylow2_order", sylow2},
           {"order_spectrum", sp}};
    if (note) j["alias_note"] = *note;
    out << certificates::stable_dump(j);
  } else {
    out << group_name(kind, p) << ", order " << table.order << "\n";
    if (note) out << "note: " << *note << "\n";
    out << "sylow-2 order: " << sylow2 << "\n";
    out << "element order spectrum:\n";
    for (auto [o, c] : spectrum) out << "  " << o << ": " << c << "\n";
  }
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  uint64_t default_cap = psl2::default_group_cap;
  if (const char* s = std::getenv("HALLNUM_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) {
      default_cap = v;
    } else {
      err << "warning: ignoring invalid HALLNUM_CAP value\n";
    }
  }

  CLI::App app{"Hall number classifier with machine-checkable counterexample certificates"};
  app.require_subcommand(1);

  uint64_t m = 0, q = 0, a = 0, b = 0;
  uint64_t bound = nt::default_prime_bound;
  uint64_t cap = default_cap;
  std::size_t count = 1;
  bool with_witness = false;
  bool json_out = false;
  std::string kind_str = "psl";

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", json_out, "emit JSON"); };
  auto add_kind = [&](CLI::App* sub) {
    sub->add_option("--kind", kind_str, "group family: psl or pgl")
        ->check(CLI::IsMember({"psl", "pgl"}));
  };

  auto* c_classify = app.add_subcommand("classify", "decide whether m is a Hall number");
  c_classify->add_option("m", m, "positive integer")->required();
  c_classify->add_flag("--witness", with_witness,
                       "emit a counterexample certificate when m is not a Hall number");
  c_classify->add_option("--bound", bound, "witness prime search bound");
  c_classify->add_option("--cap", cap, "group size cap for the witness search");
  add_json(c_classify);

  auto* c_witness = app.add_subcommand("witness", "emit a counterexample certificate for m");
  c_witness->add_option("m", m, "integer that is not a Hall number")->required();
  c_witness->add_option("--bound", bound, "witness prime search bound");
  c_witness->add_option("--cap", cap, "group size cap for the exhaustive search");
  add_json(c_witness);

  auto* c_verify = app.add_subcommand("verify", "verify the Hall subgroup of order m in a group");
  c_verify->add_option("m", m, "12, 24 or 60")->required();
  c_verify->add_option("q", q, "field size: a prime >= 5, or 4")->required();
  add_kind(c_verify);
  c_verify->add_option("--cap", cap, "group size cap");
  add_json(c_verify);

  auto* c_primes = app.add_subcommand("primes", "list witness primes for the coprime pair (a, b)");
  c_primes->add_option("a", a, "Hall divisor required of p - 1")->required();
  c_primes->add_option("b", b, "Hall divisor required of p + 1")->required();
  c_primes->add_option("--count", count, "number of primes to collect");
  c_primes->add_option("--bound", bound, "search bound");
  add_json(c_primes);

  auto* c_family = app.add_subcommand("family", "list primes q whose group has a Hall subgroup of order m");
  c_family->add_option("m", m, "12, 24 or 60")->required();
  c_family->add_option("--count", count, "number of primes to collect");
  c_family->add_option("--bound", bound, "search bound");
  add_json(c_family);

  auto* c_inspect = app.add_subcommand("inspect", "enumerate a group and print its order data");
  c_inspect->add_option("q", q, "field size: a prime >= 5, or 4")->required();
  add_kind(c_inspect);
  c_inspect->add_option("--cap", cap, "group size cap");
  add_json(c_inspect);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  auto kind = kind_str == "pgl" ? psl2::GroupKind::pgl : psl2::GroupKind::psl;
  try {
    if (app.got_subcommand(c_classify))
      return cmd_classify(m, with_witness, ht::WitnessOptions{bound, cap}, json_out, out);
    if (app.got_subcommand(c_witness))
      return cmd_witness(m, ht::WitnessOptions{bound, cap}, out);
    if (app.got_subcommand(c_verify)) return cmd_verify(m, q, kind, cap, json_out, out);
    if (app.got_subcommand(c_primes)) return cmd_primes(a, b, count, bound, json_out, out, err);
    if (app.got_subcommand(c_family)) return cmd_family(m, count, bound, json_out, out, err);
    if (app.got_subcommand(c_inspect)) return cmd_inspect(q, kind, cap, json_out, out);
  } catch (const budget_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_budget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace hallnum::cli
