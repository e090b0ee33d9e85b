/**
 * @file qcg3.cpp
 * @brief Command-line front end: table, verify, su2 and weights subcommands.
 *
 * Exit codes: 0 success, 2 invalid arguments, 3 verification failure.
 */
#include "qcg3/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace qcg3;

constexpr int kBadArguments = 2;
constexpr int kVerificationFailed = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string backend = "exact";
  std::string q = "9/10";
  unsigned precision = 60;
  std::string format = "json";
  std::string out;

  mpq_class q_value() const {
    mpq_class v;
    if (v.set_str(q, 10) != 0) throw UsageError("--q: not a rational number: " + q);
    v.canonicalize();
    if (v <= 0) throw UsageError("--q must be positive");
    if (v == 1) throw UsageError("--q must differ from 1 for generic-q runs");
    return v;
  }
  void check() const {
    if (backend != "exact" && backend != "numeric") throw UsageError("--backend must be exact or numeric");
    if (precision < 30) throw UsageError("--precision must be at least 30");
    if (format != "json" && format != "csv" && format != "text") throw UsageError("--format must be json, csv or text");
    q_value();
  }
  NumericField numeric() const { return NumericField(q_value(), precision); }
  ExactField exact() const { return ExactField(ZeroTestPoint{q_value(), precision}); }
};

int max_n() {
  if (const char* env = std::getenv("QCG3_MAX_N")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
  }
  return 6;
}

void check_labels(int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw UsageError("--n1 and --n2 must be nonnegative");
  const int limit = max_n();
  if (n1 > limit || n2 > limit)
    throw UsageError("labels exceed the size guard " + std::to_string(limit) + " (set QCG3_MAX_N to raise it)");
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw UsageError("cannot open output file " + cfg.out);
  os << text;
}

template <class Doc>
std::string render(const RunConfig& cfg, const Doc& doc) {
  if (cfg.format == "csv") return emit_csv(doc);
  if (cfg.format == "text") return emit_text(doc);
  return emit_json(doc);
}

template <class S>
bool channel_complete(const QcgChannel<S>& ch, const std::map<Weight, int>& count) {
  for (const auto& [wv, mu] : enumerate_weights(ch.rep)) {
    auto it = count.find(wv.w);
    if (it == count.end() || it->second != mu) return false;
  }
  return true;
}

/// Cheap structural checks run on every emitted table.
template <ScalarField F>
std::optional<std::string> table_sanity(const F& f, const QcgTable<typename F::value_type>& t) {
  const auto& nf = f.numeric();
  const Tolerances tol(nf);
  for (const auto& ch : t.channels) {
    std::map<Weight, int> count;
    for (const auto& st : ch.states) {
      ++count[st.omega];
      Real norm = nf.zero();
      for (const auto& [k, c] : st.terms) {
        const Weight w1 = first_weight(k), w2 = second_weight(k);
        if (Weight{w1.A + w2.A, w1.B + w2.B} != t.setup.offset(ch.s) + st.omega) return "weight additivity";
        const Real v = f.evaluate(c);
        norm += v * v;
      }
      if (abs(norm - nf.one()) > tol.table) return "norm";
    }
    if (!channel_complete(ch, count)) return "multiplicity";
  }
  return std::nullopt;
}

template <ScalarField F>
int run_table(const F& f, const RunConfig& cfg, int n1, int n2, std::optional<int> s) {
  TableOptions opt;
  if (s) {
    if (*s < 0 || *s > std::min(n1, n2)) throw UsageError("--s must lie in [0, min(n1, n2)]");
    opt.only_s = *s;
  }
  const auto table = qcg_table(f, n1, n2, opt);
  if (auto bad = table_sanity(f, table)) {
    std::cerr << "verification failed: " << *bad << "\n";
    return kVerificationFailed;
  }
  write_output(cfg, render(cfg, make_document(f, table)));
  return 0;
}

/// Hidden negative-control hook: QCG3_FAULT_INJECT=1 perturbs one coefficient before checking.
bool fault_injection() {
  const char* env = std::getenv("QCG3_FAULT_INJECT");
  return env && std::string(env) == "1";
}

template <ScalarField F>
int run_verify(const F& f, const RunConfig& cfg, int n1, int n2) {
  VerifyOptions opt;
  if (fault_injection()) {
    opt.tamper_numeric = [&f](QcgTable<Real>& t) {
      auto& c = t.channels.back().states.back().terms.begin()->second;
      c = c * f.numeric().rational(mpq_class(3, 2));
    };
    opt.tamper_exact = [](QcgTable<ExactScalar>& t) {
      auto& c = t.channels.back().states.back().terms.begin()->second;
      c = c * ExactField{}.rational(mpq_class(3, 2));
    };
  }
  const auto lines = verify_pipeline(f, n1, n2, opt);
  if (cfg.format == "json") {
    write_output(cfg, emit_json(lines));
  } else {
    std::ostringstream os;
    for (const auto& l : lines)
      os << (l.pass() ? "PASS " : "FAIL ") << l.name << " " << l.value.to_string(6) << " (tol "
         << l.tolerance.to_string(3) << ")\n";
    write_output(cfg, os.str());
  }
  if (const auto* bad = first_failure(lines)) {
    std::cerr << "verification failed: " << bad->name << " = " << bad->value.to_string(6) << "\n";
    return kVerificationFailed;
  }
  return 0;
}

HalfInt parse_half(const std::string& flag, const std::string& text) {
  try {
    return HalfInt::parse(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(flag + ": malformed half-integer '" + text + "'");
  }
}

template <ScalarField F>
int run_su2(const F& f, const RunConfig& cfg, const Su2CgKey& key) {
  const auto closed = su2_qcg(f, key);
  const auto series = su2_qcg_hypergeometric(f, key);
  const auto diff = closed - series;
  const auto& nf = f.numeric();
  std::ostringstream os;
  if (cfg.format == "json") {
    Json j{{"closed_form", f.to_string(closed)},
           {"hypergeometric", f.to_string(series)},
           {"difference", f.is_zero(diff) ? std::string("0") : f.to_string(diff)},
           {"numeric", nf.to_string(f.evaluate(closed))}};
    os << j.dump(2) << "\n";
  } else {
    os << "closed_form    " << f.to_string(closed) << "\n"
       << "hypergeometric " << f.to_string(series) << "\n"
       << "difference     " << (f.is_zero(diff) ? std::string("0") : f.to_string(diff)) << "\n"
       << "numeric        " << nf.to_string(f.evaluate(closed)) << "\n";
  }
  write_output(cfg, os.str());
  return 0;
}

template <class Fn>
int with_backend(const RunConfig& cfg, Fn&& fn) {
  cfg.check();
  if (cfg.backend == "numeric") return fn(cfg.numeric());
  return fn(cfg.exact());
}

void add_config(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--backend", cfg.backend, "exact or numeric")->capture_default_str();
  sub->add_option("--q", cfg.q, "evaluation point as a rational string")->capture_default_str();
  sub->add_option("--precision", cfg.precision, "decimal digits (>= 30)")->capture_default_str();
  sub->add_option("--format", cfg.format, "json, csv or text")->capture_default_str();
  sub->add_option("--out", cfg.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Clebsch-Gordan coefficients of U_q(sl3) for symmetric representations"};
  app.require_subcommand(1);
  RunConfig cfg;
  int n1 = 0, n2 = 0, n = 0, m = 0;
  std::optional<int> s;
  std::string j1 = "1/2", j2 = "1/2", m1 = "1/2", m2 = "-1/2", j = "0", mm = "0";

  auto* table = app.add_subcommand("table", "emit the coefficient table of (n1,0) x (n2,0)");
  table->add_option("--n1", n1)->required();
  table->add_option("--n2", n2)->required();
  table->add_option("--s", s, "emit only channel s");
  add_config(table, cfg);

  auto* verify = app.add_subcommand("verify", "check a table against the brute-force oracle");
  verify->add_option("--n1", n1)->required();
  verify->add_option("--n2", n2)->required();
  add_config(verify, cfg);

  auto* su2 = app.add_subcommand("su2", "one U_q(sl2) coefficient by both closed forms");
  su2->add_option("--j1", j1)->capture_default_str();
  su2->add_option("--j2", j2)->capture_default_str();
  su2->add_option("--m1", m1)->capture_default_str();
  su2->add_option("--m2", m2)->capture_default_str();
  su2->add_option("--j", j)->capture_default_str();
  su2->add_option("--m", mm)->capture_default_str();
  add_config(su2, cfg);

  auto* weights = app.add_subcommand("weights", "weight diagram of (n,m) with multiplicities");
  weights->add_option("--n", n)->required();
  weights->add_option("--m", m)->required();
  weights->add_option("--format", cfg.format, "json, csv or text")->capture_default_str();
  weights->add_option("--out", cfg.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadArguments;
  }

  try {
    if (*table) {
      check_labels(n1, n2);
      return with_backend(cfg, [&](const auto& f) { return run_table(f, cfg, n1, n2, s); });
    }
    if (*verify) {
      check_labels(n1, n2);
      return with_backend(cfg, [&](const auto& f) { return run_verify(f, cfg, n1, n2); });
    }
    if (*su2) {
      const Su2CgKey key{parse_half("--j1", j1), parse_half("--j2", j2), parse_half("--m1", m1),
                         parse_half("--m2", m2),  parse_half("--j", j),   parse_half("--m", mm)};
      return with_backend(cfg, [&](const auto& f) { return run_su2(f, cfg, key); });
    }
    if (n < 0 || m < 0 || n > 12 || m > 12) throw UsageError("--n and --m must lie in [0, 12]");
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
      throw UsageError("--format must be json, csv or text");
    write_output(cfg, render(cfg, make_weights_document(Rep{n, m})));
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerificationFailed;
  }
}
