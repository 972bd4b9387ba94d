#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hallnum/halltheory.hpp"

namespace hallnum::certificates {

inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json to_json(const halltheory::WitnessCertificate& cert);
nlohmann::json to_json(const halltheory::HallSubgroupReport& report);

/// dump(2) plus a trailing newline. Keys serialize in sorted order, so
/// parse -> stable_dump -> parse round-trips to identical bytes.
std::string stable_dump(const nlohmann::json& j);

/// Re-derives every claim of a serialized witness certificate from scratch:
/// classification and split of m, primality and least-ness of the witness,
/// the group order, the Hall-divisor arithmetic, and the verification
/// evidence (brute-force searches are replayed; case-analysis facts are
/// recomputed). Returns one message per failed check; empty means valid.
/// Unknown fields are ignored.
std::vector<std::string> check_witness_certificate(const nlohmann::json& j);

/// Same contract for a Hall subgroup verification report: rebuilds the
/// group, re-closes the recorded generators, and re-recognizes the subgroup.
std::vector<std::string> check_subgroup_report(const nlohmann::json& j);

}  // namespace hallnum::certificates
