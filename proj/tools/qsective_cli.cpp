// Command-line surface for the intersective-polynomial decision toolkit.
// Every subcommand emits a single JSON document on stdout (JSON-lines for
// `mine`); a human-readable summary goes to stderr with --pretty.
//
// Exit codes: 0 success, 2 input-validation failure, 3 bound refusal,
// 1 internal error.

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsective/qsective.hpp"

namespace {

using qsective::json;

// Comma-separated decimal integers; leading '-' allowed, '+' and
// whitespace rejected.
std::vector<int64_t> parse_entry_list(const std::string& s) {
  std::vector<int64_t> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty())
      throw qsective::validation_error(qsective::validation_error::violation::domain,
                                       "empty element in integer list");
    size_t i = tok[0] == '-' ? 1 : 0;
    if (i == tok.size())
      throw qsective::validation_error(qsective::validation_error::violation::domain,
                                       "bad integer '" + tok + "'");
    for (; i < tok.size(); ++i)
      if (tok[i] < '0' || tok[i] > '9')
        throw qsective::validation_error(qsective::validation_error::violation::domain,
                                         "bad integer '" + tok + "': only digits and a leading "
                                         "minus are accepted");
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw qsective::width_error("integer '" + tok + "' out of 64-bit range");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

qsective::uint128 parse_modulus(const std::string& s) {
  auto v = qsective::parse_int128(s);
  if (!v || *v < 1)
    throw qsective::validation_error(qsective::validation_error::violation::domain,
                                     "bad modulus '" + s + "'");
  return qsective::uint128(*v);
}

void emit(const json& doc, bool pretty, const std::string& summary) {
  std::cout << doc.dump() << "\n";
  if (pretty) std::cerr << summary << "\n";
}

json document() {
  json doc;
  doc["qsective_schema"] = qsective::kSchemaVersion;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decide whether prod_j (x^q - a_j) has roots modulo every integer"};
  app.require_subcommand(1);

  bool pretty = false;
  bool verify = false;
  app.add_flag("--pretty", pretty, "human-readable summary on stderr");
  app.add_flag("--verify", verify, "re-parse the emitted JSON and re-verify its certificates");

  int64_t q = 3;
  std::string a_list;
  std::string a_single;
  std::string mod_str;
  std::string m_str;
  int64_t p_flag = 0, p1 = 0, p2 = 0;
  int b_flag = 1, k_flag = 2;
  uint64_t oracle_bound = 100000, search_bound = 1000000, bound = 10000;
  bool cross_check = false;
  int64_t n_value = 0;

  auto* c_classify = app.add_subcommand("classify", "full decision with certificates");
  c_classify->add_option("--q", q)->required();
  c_classify->add_option("--a", a_list)->required();
  c_classify->add_option("--oracle-bound", oracle_bound);
  c_classify->add_flag("--cross-check", cross_check);

  auto* c_oracle = app.add_subcommand("oracle", "brute-force solvability scan");
  c_oracle->add_option("--q", q)->required();
  c_oracle->add_option("--a", a_list)->required();
  c_oracle->add_option("--bound", bound)->required();

  auto* c_witness = app.add_subcommand("witness", "witness modulus for a failing instance");
  c_witness->add_option("--q", q)->required();
  c_witness->add_option("--a", a_list)->required();
  c_witness->add_option("--search-bound", search_bound);

  auto* c_radq = app.add_subcommand("radq", "signed and absolute q-free radicals");
  c_radq->add_option("--q", q)->required();
  c_radq->add_option("--n", n_value)->required();

  auto* c_covering = app.add_subcommand("covering", "hyperplanes and covering check");
  c_covering->add_option("--q", q)->required();
  c_covering->add_option("--a", a_list)->required();

  auto* c_residue = app.add_subcommand("residue", "q-th power residue test modulo m");
  c_residue->add_option("--q", q)->required();
  c_residue->add_option("--a", a_single)->required();
  c_residue->add_option("--mod", mod_str)->required();

  auto* c_hensel = app.add_subcommand("hensel", "root of x^q = a modulo p^b by lifting");
  c_hensel->add_option("--q", q)->required();
  c_hensel->add_option("--a", a_single)->required();
  c_hensel->add_option("--p", p_flag)->required();
  c_hensel->add_option("--b", b_flag)->required();

  auto* c_rootmod = app.add_subcommand("rootmod", "root of the product polynomial modulo m");
  c_rootmod->add_option("--q", q)->required();
  c_rootmod->add_option("--a", a_list)->required();
  c_rootmod->add_option("--m", m_str)->required();

  auto* c_generate = app.add_subcommand("generate", "example family over a prime pair");
  c_generate->require_subcommand(1);
  auto* c_gen_q3 = c_generate->add_subcommand("q3", "quadruple family");
  auto* c_gen_q5 = c_generate->add_subcommand("q5", "sextuple family");
  for (auto* sub : {c_gen_q3, c_gen_q5}) {
    sub->add_option("--p1", p1)->required();
    sub->add_option("--p2", p2)->required();
  }

  auto* c_mine = app.add_subcommand("mine", "enumerate qualifying prime pairs (JSON-lines)");
  c_mine->add_option("--q", q)->required();
  c_mine->add_option("--bound", bound)->required();

  auto* c_minlc = app.add_subcommand("minlc", "minimum linear covering size of F_q^k");
  c_minlc->add_option("--q", q)->required();
  c_minlc->add_option("--k", k_flag)->required();

  // let --pretty / --verify appear after the subcommand
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*c_classify) {
      auto inst = qsective::validate_instance(q, parse_entry_list(a_list));
      auto rep = qsective::classify(inst);
      json doc = document();
      doc.update(qsective::to_json(rep));
      if (cross_check) {
        auto verdict = qsective::scan_solvability(inst, oracle_bound);
        auto rscan = qsective::check_residue_everywhere(inst, 10000);
        json cc;
        cc["oracle"] = qsective::to_json(verdict);
        json rs;
        rs["bound"] = rscan.bound;
        rs["primes_checked"] = rscan.primes_checked;
        rs["first_failing_prime"] =
            rscan.first_failing_prime == 0 ? json(nullptr) : json(rscan.first_failing_prime);
        cc["residue_scan"] = rs;
        cc["oracle_agrees"] = (rep.verdict == qsective::Verdict::intersective) ==
                              !verdict.first_failure.has_value();
        cc["residue_scan_agrees"] =
            rep.condition1.covers == (rscan.first_failing_prime == 0);
        doc["cross_check"] = cc;
      }
      if (verify && !qsective::verify_classification_json(json::parse(doc.dump())))
        throw qsective::error("classification replay verification failed");
      emit(doc, pretty, std::string("verdict: ") + qsective::to_string(rep.verdict));
    } else if (*c_oracle) {
      auto inst = qsective::validate_instance(q, parse_entry_list(a_list));
      auto verdict = qsective::scan_solvability(inst, bound);
      json doc = document();
      doc["q"] = q;
      doc["entries"] = inst.entries;
      doc.update(qsective::to_json(verdict));
      emit(doc, pretty,
           verdict.first_failure
               ? "first failure at modulus " + qsective::to_string(verdict.first_failure->modulus)
               : "no failing prime power up to " + std::to_string(bound));
    } else if (*c_witness) {
      auto inst = qsective::validate_instance(q, parse_entry_list(a_list));
      auto rep = qsective::classify(inst);
      if (rep.verdict == qsective::Verdict::intersective)
        throw qsective::validation_error(qsective::validation_error::violation::domain,
                                         "instance is intersective; no witness modulus exists");
      auto cert = qsective::find_witness(inst, rep, search_bound);
      json doc = document();
      doc["q"] = q;
      doc["entries"] = inst.entries;
      doc["failure_reason"] = qsective::to_string(*rep.failure_reason);
      doc["witness"] = qsective::to_json(cert);
      if (verify && !qsective::verify_witness_json(json::parse(doc.dump())))
        throw qsective::error("witness replay verification failed");
      emit(doc, pretty, "witness modulus " + qsective::to_string(cert.modulus));
    } else if (*c_radq) {
      if (n_value == 0)
        throw qsective::validation_error(qsective::validation_error::violation::zero_entry,
                                         "n must be nonzero");
      if (q < 3 || q % 2 == 0 || !qsective::is_prime(qsective::uint128(q)))
        throw qsective::validation_error(qsective::validation_error::violation::not_odd_prime,
                                         "q must be an odd prime");
      json doc = document();
      doc["q"] = q;
      doc["n"] = n_value;
      doc["signed"] = int64_t(qsective::rad_q_signed(n_value, q));
      doc["abs"] = uint64_t(qsective::rad_q_abs(n_value, q));
      emit(doc, pretty, "rad_" + std::to_string(q) + "(" + std::to_string(n_value) + ")");
    } else if (*c_covering) {
      auto inst = qsective::validate_instance(q, parse_entry_list(a_list));
      auto matrix = qsective::exponent_matrix(inst);
      auto planes = qsective::hyperplanes_of(matrix);
      auto rep = qsective::check_covering(planes, q, int(matrix.k()));
      json doc = document();
      doc["entries"] = inst.entries;
      doc.update(qsective::to_json(rep, planes));
      emit(doc, pretty, rep.covers ? "covers F_q^k" : "does not cover F_q^k");
    } else if (*c_residue) {
      auto a = qsective::parse_int128(a_single);
      if (!a)
        throw qsective::validation_error(qsective::validation_error::violation::domain,
                                         "bad integer for --a");
      qsective::NaturalModulus m(parse_modulus(mod_str));
      auto root = qsective::is_qth_power_mod(*a, q, m);
      json doc = document();
      doc["q"] = q;
      doc["a"] = a_single;
      doc["mod"] = qsective::json_big(m.value);
      doc["is_power"] = root.has_value();
      doc["root"] = root ? qsective::json_big(*root) : json(nullptr);
      emit(doc, pretty, root ? "q-th power" : "not a q-th power");
    } else if (*c_hensel) {
      auto a = qsective::parse_int128(a_single);
      if (!a)
        throw qsective::validation_error(qsective::validation_error::violation::domain,
                                         "bad integer for --a");
      if (!qsective::is_prime(qsective::uint128(p_flag)))
        throw qsective::validation_error(qsective::validation_error::violation::domain,
                                         "--p must be prime");
      json doc = document();
      doc["q"] = q;
      doc["a"] = a_single;
      doc["p"] = p_flag;
      doc["b"] = b_flag;
      auto root = qsective::solve_prime_power(*a, q, p_flag, b_flag);
      doc["modulus"] = qsective::json_big(qsective::checked_pow(qsective::uint128(p_flag),
                                                               unsigned(b_flag)));
      doc["root"] = root ? qsective::json_big(*root) : json(nullptr);
      doc["failure"] = root ? json(nullptr) : json("no q-th root of a modulo p^b");
      emit(doc, pretty, root ? "root " + qsective::to_string(*root) : "no root");
    } else if (*c_rootmod) {
      auto inst = qsective::validate_instance(q, parse_entry_list(a_list));
      auto m = parse_modulus(m_str);
      auto cert = qsective::root_mod(inst, m);
      json doc = document();
      doc["q"] = q;
      doc["entries"] = inst.entries;
      doc["certificate"] = cert ? qsective::to_json(*cert) : json(nullptr);
      if (verify && !qsective::verify_root_json(json::parse(doc.dump())))
        throw qsective::error("root certificate replay verification failed");
      emit(doc, pretty, cert ? "root " + qsective::to_string(cert->root) : "no root");
    } else if (*c_gen_q3 || *c_gen_q5) {
      auto fr = *c_gen_q3 ? qsective::family_q3(p1, p2) : qsective::family_q5(p1, p2);
      json doc = document();
      doc["p1"] = p1;
      doc["p2"] = p2;
      doc["power_mod_qq"] = fr.power_mod_qq;
      doc["p1_power_mod_p2"] = fr.p1_power_mod_p2;
      doc["p2_power_mod_p1"] = fr.p2_power_mod_p1;
      doc["classification"] = qsective::to_json(fr.report);
      emit(doc, pretty, std::string("verdict: ") + qsective::to_string(fr.report.verdict));
    } else if (*c_mine) {
      size_t count = 0;
      qsective::mine_pairs(q, bound, [&](const qsective::MinedPair& mp) {
        json line = document();
        line.update(qsective::to_json(mp));
        std::cout << line.dump() << "\n";
        ++count;
        if (pretty) std::cerr << "pair (" << mp.p1 << ", " << mp.p2 << ")\n";
      });
      if (pretty) std::cerr << count << " pairs\n";
    } else if (*c_minlc) {
      int size = qsective::min_covering_size(q, k_flag);
      json doc = document();
      doc["q"] = q;
      doc["k"] = k_flag;
      doc["min_covering_size"] = size;
      emit(doc, pretty, "minimum covering size " + std::to_string(size));
    }
  } catch (const qsective::bound_error& e) {
    std::cerr << "bound refusal: " << e.what() << "\n";
    return 3;
  } catch (const qsective::validation_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const qsective::width_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
