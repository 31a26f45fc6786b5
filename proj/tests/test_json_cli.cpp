#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <sstream>
#include <string>

#include "qsective/json_io.hpp"

using namespace qsective;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Run the installed binary and capture stdout (stderr discarded).
RunResult run(const std::string& args) {
  std::string cmd = std::string(QSECTIVE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("json round-trips for the witness certificate") {
  WitnessCertificate cert;
  cert.modulus = checked_pow(uint128(7), 12);
  cert.construction = WitnessCertificate::Construction::lemma2_prime_power;
  cert.verification = WitnessCertificate::Verification::lemma_chain;
  cert.p = 7;
  cert.exponent = 12;
  json j = to_json(cert);
  CHECK(j["modulus"].get<uint64_t>() == uint64_t(cert.modulus));
  WitnessCertificate back = witness_from_json(j);
  CHECK(back.modulus == cert.modulus);
  CHECK(back.construction == cert.construction);
  CHECK(back.p == 7);
}

TEST_CASE("moduli beyond 64 bits serialize as decimal strings") {
  WitnessCertificate cert;
  cert.modulus = checked_pow(uint128(251), 9);  // about 72 bits
  json j = to_json(cert);
  CHECK(j["modulus"].is_string());
  CHECK(witness_from_json(j).modulus == cert.modulus);
  CHECK(parse_big(json("170141183460469231731687303715884105727")) == kMaxModulus);
}

TEST_CASE("classification json replays and verifies") {
  ClassificationReport rep = classify(validate_instance(3, {7, 251, 1757, 12299}));
  json j = to_json(rep);
  CHECK(j["verdict"] == "intersective");
  CHECK(j["condition2"]["index"] == 1);
  CHECK(j["condition1"]["hyperplanes"][3] == json::array({2, 1}));
  CHECK(verify_classification_json(json::parse(j.dump())));

  // tamper with the witness root: replay must fail
  json bad = j;
  bad["condition2"]["root"] = 5;  // 5^3 = 17 != 8 (mod 27)
  CHECK_FALSE(verify_classification_json(bad));
  // tamper with the verdict
  bad = j;
  bad["verdict"] = "not_intersective";
  CHECK_FALSE(verify_classification_json(bad));
}

TEST_CASE("uncovered-vector documents are cross-checked on replay") {
  ClassificationReport rep = classify(validate_instance(3, {1757, 12299}));
  json j = to_json(rep);
  CHECK(j["verdict"] == "not_intersective");
  CHECK_FALSE(j["condition1"]["uncovered_vector"].is_null());
  CHECK(verify_classification_json(j));
  json bad = j;
  bad["condition1"]["uncovered_vector"] = json::array({0, 0});  // origin is always covered
  CHECK_FALSE(verify_classification_json(bad));
}

TEST_CASE("cli classify emits a schema-versioned document") {
  RunResult r = run("classify --q 3 --a 7,251,1757,12299");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["qsective_schema"] == 1);
  CHECK(doc["verdict"] == "intersective");
  CHECK(doc["condition3"]["7"]["index"] == 1);
  CHECK(doc["condition3"]["251"]["index"] == 0);
  CHECK(verify_classification_json(doc));
}

TEST_CASE("cli output is byte-identical across runs") {
  for (std::string args : {std::string("classify --q 3 --a 7,251,1757,12299 --cross-check"),
                           std::string("witness --q 3 --a 2,4"),
                           std::string("covering --q 5 --a 2,3,6,12,18,48"),
                           std::string("mine --q 3 --bound 60")}) {
    RunResult r1 = run(args);
    RunResult r2 = run(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(!r1.out.empty());
  }
}

TEST_CASE("cli radq reports signed and absolute radicals") {
  RunResult r = run("radq --q 3 --n -104");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["signed"] == -13);
  CHECK(doc["abs"] == 13);
  CHECK(run("radq --q 3 --n 0").exit_code == 2);
  CHECK(run("radq --q 4 --n 10").exit_code == 2);
}

TEST_CASE("cli residue and hensel agree with the library") {
  json doc = json::parse(run("residue --q 3 --a 251 --mod 27").out);
  CHECK(doc["is_power"] == true);
  CHECK(mod_pow(int128(doc["root"].get<uint64_t>()), 3, NaturalModulus(27)) == 8);
  CHECK(json::parse(run("residue --q 3 --a 7 --mod 27").out)["is_power"] == false);

  json h = json::parse(run("hensel --q 3 --a 251 --p 3 --b 5").out);
  REQUIRE(h["root"].is_number());
  CHECK(mod_pow(int128(h["root"].get<uint64_t>()), 3, NaturalModulus(243)) == 251 % 243);
  CHECK(h["modulus"] == 243);
}

TEST_CASE("cli rootmod produces a verifiable certificate") {
  RunResult r = run("rootmod --q 3 --a 7,251,1757,12299 --m 1350 --verify");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  REQUIRE_FALSE(doc["certificate"].is_null());
  CHECK(verify_root_json(doc));
  CHECK(json::parse(run("rootmod --q 3 --a 2,4 --m 7").out)["certificate"].is_null());
}

TEST_CASE("cli witness re-verifies under --verify") {
  RunResult r = run("witness --q 3 --a 7 --verify");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["witness"]["modulus"] == 13);
  CHECK(verify_witness_json(doc));
}

TEST_CASE("cli mine emits one parseable document per line") {
  RunResult r = run("mine --q 3 --bound 251");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  bool saw_7_251 = false;
  size_t count = 0;
  while (std::getline(lines, line)) {
    json doc = json::parse(line);
    CHECK(doc["qsective_schema"] == 1);
    CHECK(doc["classification"]["verdict"] == "intersective");
    if (doc["p1"] == 7 && doc["p2"] == 251) saw_7_251 = true;
    ++count;
  }
  CHECK(saw_7_251);
  CHECK(count > 0);
}

TEST_CASE("cli exit codes distinguish failure classes") {
  CHECK(run("classify --q 3 --a 8,5").exit_code == 2);        // 8 is a cube
  CHECK(run("classify --q 3 --a 5,0").exit_code == 2);
  CHECK(run("classify --q 3 --a 5,+7").exit_code == 2);       // '+' rejected
  CHECK(run("classify --q 6 --a 2,3").exit_code == 2);
  CHECK(run("oracle --q 3 --a 2,4 --bound 99000000").exit_code == 3);
  CHECK(run("witness --q 3 --a 7,251,1757,12299").exit_code == 2);  // intersective
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("minlc --q 3 --k 9").exit_code == 3);  // 3^9 states exceed the mask width
  CHECK(run("minlc --q 3 --k 1").exit_code == 2);
}

TEST_CASE("cli generate mirrors the family report") {
  json doc = json::parse(run("generate q3 --p1 7 --p2 251").out);
  CHECK(doc["classification"]["verdict"] == "intersective");
  CHECK(doc["power_mod_qq"] == true);
  json q5 = json::parse(run("generate q5 --p1 2 --p2 3").out);
  CHECK(q5["classification"]["entries"] == json::array({2, 3, 6, 12, 18, 48}));
}
