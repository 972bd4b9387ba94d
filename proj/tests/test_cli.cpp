#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hallnum/certificates.hpp"
#include "hallnum/cli.hpp"

using hallnum::certificates::check_subgroup_report;
using hallnum::certificates::check_witness_certificate;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = hallnum::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("classify prints one human-readable line per shape") {
  auto r = run_cli({"classify", "60"});
  CHECK(r.code == hallnum::cli::exit_ok);
  CHECK(r.out == "60: Hall number (exceptional: 12, 24 or 60)\n");
  CHECK(r.err.empty());

  CHECK(run_cli({"classify", "1"}).out == "1: Hall number (prime power)\n");
  CHECK(run_cli({"classify", "6"}).out == "6: Hall number (twice an odd number)\n");
  CHECK(run_cli({"classify", "20"}).out == "20: not a Hall number (coprime split 4 * 5)\n");
  CHECK(run_cli({"classify", "243"}).out == "243: Hall number (prime power)\n");
}

TEST_CASE("classify --json emits a parsable record") {
  auto r = run_cli({"classify", "20", "--json"});
  CHECK(r.code == hallnum::cli::exit_ok);
  auto j = json::parse(r.out);
  CHECK(j["m"] == 20);
  CHECK(j["classification"] == "not_hall");
  CHECK(j["split"] == json::array({4, 5}));
  CHECK_FALSE(j.contains("witness"));

  auto hall = json::parse(run_cli({"classify", "12", "--json"}).out);
  CHECK(hall["classification"] == "exceptional");
  CHECK_FALSE(hall.contains("split"));
}

TEST_CASE("classify --witness attaches a checkable certificate for non-Hall m") {
  // the small cap forces the fast case-analysis path
  auto r = run_cli({"classify", "20", "--witness", "--cap", "1000", "--json"});
  CHECK(r.code == hallnum::cli::exit_ok);
  auto j = json::parse(r.out);
  REQUIRE(j.contains("witness"));
  CHECK(check_witness_certificate(j["witness"]).empty());

  // in human mode the certificate follows the classification line
  auto human = run_cli({"classify", "20", "--witness", "--cap", "1000"});
  CHECK(human.code == hallnum::cli::exit_ok);
  auto newline = human.out.find('\n');
  REQUIRE(newline != std::string::npos);
  CHECK(contains(human.out.substr(0, newline), "not a Hall number"));
  CHECK(check_witness_certificate(json::parse(human.out.substr(newline + 1))).empty());

  // --witness is a no-op for Hall numbers
  auto hall = run_cli({"classify", "12", "--witness"});
  CHECK(hall.code == hallnum::cli::exit_ok);
  CHECK(hall.out == "12: Hall number (exceptional: 12, 24 or 60)\n");
}

TEST_CASE("witness emits certificates and maps errors to exit codes") {
  auto r = run_cli({"witness", "20", "--cap", "1000"});
  CHECK(r.code == hallnum::cli::exit_ok);
  auto j = json::parse(r.out);
  CHECK(j["witness_prime"] == 29);
  CHECK(j["verification"]["mode"] == "case_analysis");
  CHECK(check_witness_certificate(j).empty());

  auto invalid = run_cli({"witness", "12"});
  CHECK(invalid.code == hallnum::cli::exit_usage);
  CHECK(invalid.out.empty());
  CHECK(contains(invalid.err, "error:"));

  auto exhausted = run_cli({"witness", "20", "--bound", "20"});
  CHECK(exhausted.code == hallnum::cli::exit_budget);
  CHECK(contains(exhausted.err, "error:"));
}

TEST_CASE("verify reports the Hall subgroup search and distinguishes negatives") {
  auto r = run_cli({"verify", "12", "5"});
  CHECK(r.code == hallnum::cli::exit_ok);
  CHECK(contains(r.out, "group PSL(2,5), order 60"));
  CHECK(contains(r.out, "found Hall subgroup of order 12, type A4 (expected A4)"));

  auto neg = run_cli({"verify", "12", "7"});
  CHECK(neg.code == hallnum::cli::exit_negative);
  CHECK(contains(neg.out, "not a Hall divisor"));
  CHECK(contains(neg.out, "no Hall subgroup of order 12 exists"));

  auto pgl = run_cli({"verify", "24", "5", "--kind", "pgl", "--json"});
  CHECK(pgl.code == hallnum::cli::exit_ok);
  auto j = json::parse(pgl.out);
  CHECK(j["group"]["kind"] == "pgl");
  CHECK(j["recognized"] == "S4");
  CHECK(check_subgroup_report(j).empty());

  auto whole = run_cli({"verify", "60", "5", "--json"});
  CHECK(whole.code == hallnum::cli::exit_ok);
  auto wj = json::parse(whole.out);
  CHECK(wj["status"] == "ok");
  CHECK(wj["subgroup_order"] == 60);
  CHECK(check_subgroup_report(wj).empty());

  auto alias = run_cli({"verify", "12", "4", "--json"});
  CHECK(alias.code == hallnum::cli::exit_ok);
  auto aj = json::parse(alias.out);
  CHECK(aj["q"] == 4);
  CHECK(aj["group"]["p"] == 5);
  CHECK(aj.contains("alias_note"));
  CHECK(check_subgroup_report(aj).empty());

  CHECK(run_cli({"verify", "13", "5"}).code == hallnum::cli::exit_usage);
  CHECK(run_cli({"verify", "12", "9"}).code == hallnum::cli::exit_usage);
  CHECK(run_cli({"verify", "12", "13", "--cap", "100"}).code == hallnum::cli::exit_budget);
}

TEST_CASE("primes lists witness primes, one per line or as JSON") {
  auto r = run_cli({"primes", "4", "5", "--count", "2"});
  CHECK(r.code == hallnum::cli::exit_ok);
  CHECK(r.out == "29\n109\n");
  CHECK(r.err.empty());

  auto j = json::parse(run_cli({"primes", "4", "5", "--count", "2", "--json"}).out);
  CHECK(j["primes"] == json::array({29, 109}));
  CHECK(j["bound_exhausted"] == false);

  auto bad = run_cli({"primes", "4", "6"});
  CHECK(bad.code == hallnum::cli::exit_usage);
  CHECK(contains(bad.err, "error:"));

  auto partial = run_cli({"primes", "4", "5", "--count", "3", "--bound", "50"});
  CHECK(partial.code == hallnum::cli::exit_budget);
  CHECK(partial.out == "29\n");
  CHECK(contains(partial.err, "warning:"));
}

TEST_CASE("family lists the primes whose groups carry the exceptional subgroup") {
  auto r = run_cli({"family", "60", "--count", "1"});
  CHECK(r.code == hallnum::cli::exit_ok);
  CHECK(r.out == "11\n");

  auto j = json::parse(run_cli({"family", "12", "--count", "4", "--json"}).out);
  CHECK(j["primes"] == json::array({5, 11, 13, 29}));
  CHECK(j["modulus"] == 144);
  CHECK(j["residues"] == json::array({25, 121}));

  CHECK(run_cli({"family", "7"}).code == hallnum::cli::exit_usage);

  auto partial = run_cli({"family", "60", "--count", "10", "--bound", "100"});
  CHECK(partial.code == hallnum::cli::exit_budget);
  CHECK(partial.out == "11\n29\n59\n61\n");
  CHECK(contains(partial.err, "warning:"));
}

TEST_CASE("inspect prints the group order data") {
  auto r = run_cli({"inspect", "5"});
  CHECK(r.code == hallnum::cli::exit_ok);
  CHECK(contains(r.out, "PSL(2,5), order 60"));
  CHECK(contains(r.out, "sylow-2 order: 4"));
  CHECK(contains(r.out, "  5: 24"));

  auto j = json::parse(run_cli({"inspect", "5", "--json"}).out);
  CHECK(j["order"] == 60);
  CHECK(j["sylow2_order"] == 4);
  CHECK(j["order_spectrum"] ==
        json::array({json::array({1, 1}), json::array({2, 15}), json::array({3, 20}),
                     json::array({5, 24})}));

  auto alias = json::parse(run_cli({"inspect", "4", "--json"}).out);
  CHECK(alias["q"] == 4);
  CHECK(alias["p"] == 5);
  CHECK(alias.contains("alias_note"));

  auto pgl = json::parse(run_cli({"inspect", "13", "--kind", "pgl", "--json"}).out);
  CHECK(pgl["order"] == 2184);
  CHECK(pgl["sylow2_order"] == 8);

  CHECK(run_cli({"inspect", "6"}).code == hallnum::cli::exit_usage);
  CHECK(run_cli({"inspect", "4", "--kind", "pgl"}).code == hallnum::cli::exit_usage);
}

TEST_CASE("argument errors and help go through the usual exit codes") {
  CHECK(run_cli({}).code == hallnum::cli::exit_usage);
  CHECK(run_cli({"frobnicate"}).code == hallnum::cli::exit_usage);
  CHECK(run_cli({"classify"}).code == hallnum::cli::exit_usage);
  CHECK(run_cli({"verify", "12"}).code == hallnum::cli::exit_usage);
  CHECK(run_cli({"verify", "12", "5", "--kind", "other"}).code == hallnum::cli::exit_usage);
  CHECK(run_cli({"classify", "0"}).code == hallnum::cli::exit_usage);

  auto help = run_cli({"--help"});
  CHECK(help.code == hallnum::cli::exit_ok);
  CHECK(contains(help.out, "classify"));
  CHECK(contains(help.out, "witness"));
  CHECK(contains(help.out, "verify"));
}

TEST_CASE("HALLNUM_CAP overrides the default group cap") {
  setenv("HALLNUM_CAP", "100", 1);
  auto capped = run_cli({"verify", "12", "13"});
  CHECK(capped.code == hallnum::cli::exit_budget);

  // an explicit --cap wins over the environment
  auto explicit_cap = run_cli({"verify", "12", "13", "--cap", "2000"});
  CHECK(explicit_cap.code == hallnum::cli::exit_ok);

  setenv("HALLNUM_CAP", "notanumber", 1);
  auto warned = run_cli({"classify", "60"});
  CHECK(warned.code == hallnum::cli::exit_ok);
  CHECK(contains(warned.err, "warning"));
  CHECK(warned.out == "60: Hall number (exceptional: 12, 24 or 60)\n");

  unsetenv("HALLNUM_CAP");
  auto clean = run_cli({"classify", "60"});
  CHECK(clean.err.empty());
}
