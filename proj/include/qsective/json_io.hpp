#pragma once

/**
 * @file json_io.hpp
 * @brief Stable JSON serialization of reports and certificate replay
 *        verification. Field names are snake_case and emission order is
 *        fixed, so identical inputs produce byte-identical documents.
 *
 * Values that can exceed 64 bits (big witness moduli) are emitted as
 * decimal strings; everything else is a plain JSON number.
 */

#include <string>

#include <nlohmann/json.hpp>

#include "qsective/arith.hpp"
#include "qsective/classifier.hpp"
#include "qsective/generate.hpp"
#include "qsective/oracle.hpp"
#include "qsective/qfree.hpp"
#include "qsective/residue.hpp"

namespace qsective {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json json_big(uint128 v) {
  if (v <= UINT64_MAX) return json(uint64_t(v));
  return json(to_string(v));
}

inline uint128 parse_big(const json& j) {
  if (j.is_number_unsigned()) return uint128(j.get<uint64_t>());
  if (j.is_number_integer()) return uint128(j.get<int64_t>());
  auto v = parse_int128(j.get<std::string>());
  if (!v || *v < 0) throw validation_error(validation_error::violation::domain, "bad big integer");
  return uint128(*v);
}

inline json to_json(const CoveringReport& rep, const std::vector<Hyperplane>& planes) {
  json j;
  j["q"] = rep.q;
  j["k"] = rep.k;
  json hp = json::array();
  for (const auto& h : planes) hp.push_back(h.coeffs);
  j["hyperplanes"] = hp;
  j["covers"] = rep.covers;
  j["uncovered_vector"] = rep.uncovered_vector ? json(*rep.uncovered_vector) : json(nullptr);
  if (rep.per_vector_assignment) {
    json digest;
    digest["vectors_total"] = rep.per_vector_assignment->size();
    std::vector<uint64_t> counts(planes.size(), 0);
    for (int32_t idx : *rep.per_vector_assignment) ++counts[size_t(idx)];
    digest["counts_per_hyperplane"] = counts;
    j["per_vector_assignment"] = digest;
  } else {
    j["per_vector_assignment"] = nullptr;
  }
  return j;
}

inline const char* to_string(Verdict v) {
  return v == Verdict::intersective ? "intersective" : "not_intersective";
}

inline const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::covering_fails: return "covering_fails";
    case FailureReason::mod_qq_fails: return "mod_qq_fails";
    case FailureReason::prime_condition_fails: return "prime_condition_fails";
    case FailureReason::k_equals_one: return "k_equals_one";
  }
  return "?";
}

inline json to_json(const ClassificationReport& rep) {
  json j;
  j["q"] = rep.q;
  j["entries"] = rep.entries;
  j["verdict"] = to_string(rep.verdict);
  j["primes"] = rep.matrix.primes;
  j["nu"] = rep.matrix.nu;
  j["condition1"] = to_json(rep.condition1, rep.hyperplanes);
  if (rep.condition2) {
    json w;
    w["index"] = rep.condition2->index;
    w["root"] = rep.condition2->root ? json_big(*rep.condition2->root) : json(nullptr);
    j["condition2"] = w;
  } else {
    j["condition2"] = nullptr;
  }
  json c3;
  for (const auto& [p, w] : rep.condition3) {
    if (w) {
      json e;
      e["index"] = w->index;
      e["root"] = w->root ? json_big(*w->root) : json(nullptr);
      c3[std::to_string(p)] = e;
    } else {
      c3[std::to_string(p)] = nullptr;
    }
  }
  j["condition3"] = c3;
  j["failure_reason"] = rep.failure_reason ? json(to_string(*rep.failure_reason)) : json(nullptr);
  j["failing_prime"] = rep.failing_prime ? json(*rep.failing_prime) : json(nullptr);
  return j;
}

inline json to_json(const WitnessCertificate& cert) {
  json j;
  j["modulus"] = json_big(cert.modulus);
  const char* ctype = cert.construction == WitnessCertificate::Construction::lemma2_prime_power
                          ? "lemma2_prime_power"
                          : cert.construction == WitnessCertificate::Construction::searched_prime
                                ? "searched_prime"
                                : "direct";
  json c;
  c["type"] = ctype;
  c["p"] = cert.p;
  c["exponent"] = cert.exponent;
  j["construction"] = c;
  j["verification"] =
      cert.verification == WitnessCertificate::Verification::full_scan ? "full_scan"
                                                                       : "lemma_chain";
  return j;
}

inline WitnessCertificate witness_from_json(const json& j) {
  WitnessCertificate cert;
  cert.modulus = parse_big(j.at("modulus"));
  std::string t = j.at("construction").at("type").get<std::string>();
  cert.construction = t == "lemma2_prime_power"
                          ? WitnessCertificate::Construction::lemma2_prime_power
                          : t == "searched_prime" ? WitnessCertificate::Construction::searched_prime
                                                  : WitnessCertificate::Construction::direct;
  cert.p = j.at("construction").at("p").get<int64_t>();
  cert.exponent = j.at("construction").at("exponent").get<int>();
  cert.verification = j.at("verification").get<std::string>() == "full_scan"
                          ? WitnessCertificate::Verification::full_scan
                          : WitnessCertificate::Verification::lemma_chain;
  return cert;
}

inline json to_json(const OracleVerdict& verdict) {
  json j;
  j["bound"] = verdict.bound;
  j["checked_moduli"] = verdict.checked_moduli;
  j["first_failure"] = verdict.first_failure ? to_json(*verdict.first_failure) : json(nullptr);
  return j;
}

inline json to_json(const RootCertificate& cert) {
  json j;
  j["modulus"] = json_big(cert.modulus);
  j["root"] = json_big(cert.root);
  j["factor_index"] = cert.factor_index ? json(*cert.factor_index) : json(nullptr);
  json parts = json::array();
  for (const auto& part : cert.parts) {
    json p;
    p["p"] = part.p;
    p["e"] = part.e;
    p["factor_index"] = part.factor_index;
    p["local_root"] = json_big(part.local_root);
    parts.push_back(p);
  }
  j["parts"] = parts;
  return j;
}

inline json to_json(const DensityScan& scan) {
  json j;
  j["bound"] = scan.bound;
  j["primes_checked"] = scan.primes_checked;
  j["primes_with_power"] = scan.primes_with_power;
  j["fraction"] = scan.fraction();
  return j;
}

inline json to_json(const MinedPair& mp) {
  json j;
  j["p1"] = mp.p1;
  j["p2"] = mp.p2;
  j["classification"] = to_json(mp.family.report);
  j["power_mod_qq"] = mp.family.power_mod_qq;
  j["p1_power_mod_p2"] = mp.family.p1_power_mod_p2;
  j["p2_power_mod_p1"] = mp.family.p2_power_mod_p1;
  j["spot_check"] = to_json(mp.spot_check);
  return j;
}

// ---------------------------------------------------------------------------
// Replay verification: parse a serialized document back and re-check its
// embedded certificates by direct modular arithmetic.
// ---------------------------------------------------------------------------

inline ProblemInstance instance_from_json(const json& j) {
  return validate_instance(j.at("q").get<int64_t>(), j.at("entries").get<std::vector<int64_t>>(),
                           /*allow_duplicates=*/true);
}

/// Re-verify a classification document: verdict reproduces and every
/// witness root re-checks.
inline bool verify_classification_json(const json& j) {
  ProblemInstance inst = instance_from_json(j);
  ClassificationReport fresh = classify(inst);
  if (std::string(to_string(fresh.verdict)) != j.at("verdict").get<std::string>()) return false;
  uint128 qq = checked_pow(uint128(inst.q), unsigned(inst.q));
  if (!j.at("condition2").is_null()) {
    size_t idx = j.at("condition2").at("index").get<size_t>();
    if (idx >= inst.entries.size()) return false;
    if (!j.at("condition2").at("root").is_null()) {
      uint128 root = parse_big(j.at("condition2").at("root"));
      if (mod_pow(int128(root), uint128(inst.q), NaturalModulus(qq)) !=
          normalize_mod(inst.entries[idx], qq))
        return false;
    }
  }
  for (auto it = j.at("condition3").begin(); it != j.at("condition3").end(); ++it) {
    if (it.value().is_null()) continue;
    int64_t p = std::stoll(it.key());
    size_t idx = it.value().at("index").get<size_t>();
    if (idx >= inst.entries.size()) return false;
    if (normalize_mod(inst.entries[idx], uint128(p)) == 0) return false;
    if (!it.value().at("root").is_null()) {
      uint128 root = parse_big(it.value().at("root"));
      if (mod_pow(int128(root), uint128(inst.q), NaturalModulus(uint128(p))) !=
          normalize_mod(inst.entries[idx], uint128(p)))
        return false;
    }
  }
  if (!j.at("condition1").at("uncovered_vector").is_null()) {
    std::vector<int> v = j.at("condition1").at("uncovered_vector").get<std::vector<int>>();
    for (const auto& hp : j.at("condition1").at("hyperplanes")) {
      int64_t s = 0;
      std::vector<int> coeffs = hp.get<std::vector<int>>();
      for (size_t i = 0; i < coeffs.size(); ++i) s += int64_t(coeffs[i]) * v[i];
      if (s % inst.q == 0) return false;  // claimed-uncovered vector is covered
    }
  }
  return true;
}

/// Re-verify a witness document against its embedded instance.
inline bool verify_witness_json(const json& j) {
  ProblemInstance inst = instance_from_json(j);
  return verify_witness(inst, witness_from_json(j.at("witness")));
}

/// Re-verify a root certificate: the product vanishes at the root.
inline bool verify_root_json(const json& j) {
  if (j.at("certificate").is_null()) return true;
  ProblemInstance inst = instance_from_json(j);
  uint128 m = parse_big(j.at("certificate").at("modulus"));
  uint128 root = parse_big(j.at("certificate").at("root"));
  if (m == 1) return true;
  NaturalModulus nm(m);
  uint128 xq = mod_pow(int128(root), uint128(inst.q), nm);
  uint128 prod = 1 % m;
  for (int64_t a : inst.entries)
    prod = mul_mod(prod, normalize_mod(int128(xq) - int128(normalize_mod(a, m)), m), m);
  return prod == 0;
}

}  // namespace qsective
