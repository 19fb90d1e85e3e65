#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mes/eml.hpp"
#include "mes/free_algebra.hpp"
#include "mes/parser.hpp"
#include "mes/selfcheck.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mes::MesError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::uint64_t seed_from_env() {
  if (const char* s = std::getenv("MES_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw mes::MesError("MES_SEED must be a non-negative integer");
    }
  }
  return 0;
}

// Collects one record per check; emits plain text as it goes and the
// line-delimited structured report at the end.
class Reporter {
 public:
  explicit Reporter(std::string records_path)
      : records_path_(std::move(records_path)) {}

  void add(const std::string& name, bool passed, const std::string& witness) {
    records_.push_back({{"name", name},
                        {"status", passed ? "pass" : "fail"},
                        {"witness", witness}});
    if (!passed) failed_ = true;
  }

  bool all_passed() const { return !failed_; }

  void flush() const {
    if (records_path_.empty()) return;
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (records_path_ != "-") {
      file.open(records_path_);
      if (!file) throw mes::MesError("cannot write: " + records_path_);
      os = &file;
    }
    for (const auto& r : records_) *os << r.dump() << "\n";
  }

 private:
  std::string records_path_;
  std::vector<json> records_;
  bool failed_ = false;
};

std::string witness_text(const mes::DecisionWitness& w) {
  std::ostringstream os;
  os << "model { " << w.model.to_string() << " }, environment "
     << w.witness.env.to_string() << ", at " << w.witness.coarity_elem
     << ": lhs=" << w.witness.lhs_value << " rhs=" << w.witness.rhs_value;
  return os.str();
}

int cmd_check_proof(const std::string& pres_path, const std::string& proof_path,
                    std::size_t audit_k, Reporter& rep) {
  mes::Presentation p = mes::parse_presentation(read_file(pres_path));
  mes::ProofPtr proof = mes::parse_proof(p.signature, read_file(proof_path));
  try {
    mes::Judgement j = mes::check(p, proof);
    std::cout << "accepted: " << j.to_string() << "\n";
    rep.add("check-proof", true, j.to_string());
  } catch (const mes::ProofError& e) {
    std::cout << "rejected: " << e.what() << "\n";
    rep.add("check-proof", false, e.what());
    return 1;
  }
  if (audit_k > 0) {
    mes::SoundnessReport audit = mes::soundness_audit(p, proof, audit_k);
    std::cout << "soundness audit: " << audit.models_checked
              << " models checked, " << audit.counterexamples.size()
              << " counterexamples\n";
    std::string w;
    for (const auto& ce : audit.counterexamples)
      w += "model { " + ce.model.to_string() + " } env " +
           ce.witness.env.to_string() + "; ";
    rep.add("soundness-audit", audit.sound(), w);
    if (!audit.sound()) return 1;
  }
  return 0;
}

int cmd_models(const std::string& pres_path, std::size_t max_size,
               Reporter& rep) {
  mes::Presentation p = mes::parse_presentation(read_file(pres_path));
  mes::ModelEnumerator models(p, max_size);
  std::size_t n = 0;
  while (auto m = models.next()) {
    ++n;
    std::cout << "model " << n << ": " << m->to_string() << "\n";
    rep.add("model-" + std::to_string(n), true, m->to_string());
  }
  std::cout << n << " model(s) of size <= " << max_size << "\n";
  rep.add("model-count", true, std::to_string(n));
  return 0;
}

int cmd_free(const std::string& pres_path, const std::string& gens_csv,
             std::size_t depth, Reporter& rep) {
  mes::Presentation p = mes::parse_presentation(read_file(pres_path));
  std::vector<std::string> gens;
  std::stringstream ss(gens_csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) gens.push_back(item);
  mes::FreeAlgebraResult r =
      mes::build_free_algebra(p, mes::FinSet(gens), depth);
  if (!r.is_finite()) {
    std::cout << "truncated at depth " << r.depth << " with "
              << r.table->class_count() << " classes so far\n";
    rep.add("free-algebra", true,
            "truncated at depth " + std::to_string(r.depth));
    rep.flush();
    return 2;
  }
  std::cout << "stabilized at depth " << r.depth << "; "
            << r.algebra.carrier.size() << " classes\n";
  for (const auto& cls : r.algebra.carrier) std::cout << "  [" << cls << "]\n";
  std::cout << "tables: " << r.algebra.to_string() << "\n";
  rep.add("free-algebra", true,
          std::to_string(r.algebra.carrier.size()) + " classes");
  return 0;
}

int cmd_decide(const std::string& pres_path, const std::string& eq_text,
               std::size_t depth, std::size_t max_size, Reporter& rep) {
  mes::Presentation p = mes::parse_presentation(read_file(pres_path));
  mes::Equation e = mes::parse_equation(p.signature, eq_text);
  mes::Decision d = mes::decide(p, e, depth, max_size);
  std::cout << d.verdict_name() << ": " << d.detail << "\n";
  std::string w;
  if (d.witness) {
    w = witness_text(*d.witness);
    std::cout << "witness: " << w << "\n";
  }
  rep.add("decide", d.verdict != mes::Decision::Verdict::Unknown, w.empty() ? d.detail : w);
  rep.flush();
  switch (d.verdict) {
    case mes::Decision::Verdict::Equal:
      return 0;
    case mes::Decision::Verdict::NotEqual:
      return 1;
    case mes::Decision::Verdict::Unknown:
      return 2;
  }
  return 2;
}

int cmd_selfcheck(std::size_t sizes, Reporter& rep) {
  mes::SelfCheckOptions opt;
  opt.max_size = sizes;
  opt.seed = seed_from_env();
  auto results = mes::run_selfcheck(opt);
  std::size_t failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.module << "/" << r.name;
    if (!r.passed) {
      std::cout << "  (" << r.detail << ")";
      ++failed;
    }
    std::cout << "\n";
    rep.add(r.module + "/" + r.name, r.passed, r.detail);
  }
  std::cout << (results.size() - failed) << "/" << results.size()
            << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equational systems over finite sets: proof checking, model "
               "enumeration, free algebras and equational decision"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string records_path;
  app.add_option("--records", records_path,
                 "write line-delimited JSON records to this file ('-' for "
                 "stdout)");

  std::string pres_path, proof_path, gens_csv, eq_text;
  std::size_t audit_k = 0, max_size = 3, depth = 4, sizes = 2;

  auto* c1 = app.add_subcommand("check-proof", "check a proof file");
  c1->add_option("pres", pres_path, "presentation file")->required();
  c1->add_option("proof", proof_path, "proof file")->required();
  c1->add_option("--audit-k", audit_k,
                 "re-check the conclusion against all models of size <= N");

  auto* c2 = app.add_subcommand("models", "enumerate finite models");
  c2->add_option("pres", pres_path, "presentation file")->required();
  c2->add_option("--max-size", max_size, "carrier size bound")->required();

  auto* c3 = app.add_subcommand("free", "build a free algebra");
  c3->add_option("pres", pres_path, "presentation file")->required();
  c3->add_option("--gens", gens_csv, "comma-separated generators")->required();
  c3->add_option("--depth", depth, "stage bound (default 4)");

  auto* c4 = app.add_subcommand("decide", "decide an equational consequence");
  c4->add_option("pres", pres_path, "presentation file")->required();
  c4->add_option("--eq", eq_text, "equation \"lhs = rhs\"")->required();
  c4->add_option("--depth", depth, "free-algebra stage bound (default 4)");
  c4->add_option("--max-size", max_size, "countermodel screen bound");

  auto* c5 = app.add_subcommand("selfcheck", "run the module law suites");
  c5->add_option("--sizes", sizes, "size cap for exhaustive suites");

  CLI11_PARSE(app, argc, argv);

  Reporter rep(records_path);
  try {
    int code = 0;
    if (c1->parsed()) code = cmd_check_proof(pres_path, proof_path, audit_k, rep);
    else if (c2->parsed()) code = cmd_models(pres_path, max_size, rep);
    else if (c3->parsed()) return cmd_free(pres_path, gens_csv, depth, rep);
    else if (c4->parsed()) return cmd_decide(pres_path, eq_text, depth, max_size, rep);
    else if (c5->parsed()) code = cmd_selfcheck(sizes, rep);
    rep.flush();
    return code;
  } catch (const mes::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const mes::MesError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
