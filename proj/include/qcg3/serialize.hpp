/**
 * @file serialize.hpp
 * @brief Table and report documents with JSON, CSV and text emitters.
 *
 * A TableDocument is the string-level image of a QcgTable: exact scalars in
 * canonical form and numeric values as decimal strings. Emission is
 * deterministic and the JSON form parses back to an equal document.
 */
#pragma once

#include "qcg3/oracle.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qcg3 {

struct TermRecord {
  Weight omega1, omega2;
  std::optional<std::string> exact, numeric;
  bool operator==(const TermRecord&) const = default;
};

struct StateRecord {
  Weight omega;
  int t = 0;
  std::vector<TermRecord> terms;
  bool operator==(const StateRecord&) const = default;
};

struct ChannelRecord {
  int s = 0;
  long dim = 0;
  std::vector<StateRecord> states;
  bool operator==(const ChannelRecord&) const = default;
};

struct TableDocument {
  int n1 = 0, n2 = 0;
  std::string backend;
  std::optional<std::string> q;
  std::optional<unsigned> precision;
  std::vector<ChannelRecord> channels;
  bool operator==(const TableDocument&) const = default;

  std::size_t state_count() const {
    std::size_t n = 0;
    for (const auto& c : channels) n += c.states.size();
    return n;
  }
};

/// String image of a table; numeric columns are evaluated at the field's evaluation point.
template <ScalarField F>
TableDocument make_document(const F& f, const QcgTable<typename F::value_type>& table) {
  const auto& nf = f.numeric();
  constexpr bool exact = std::is_same_v<F, ExactField>;
  TableDocument doc;
  doc.n1 = table.setup.n1;
  doc.n2 = table.setup.n2;
  doc.backend = F::name;
  doc.q = nf.q().get_str();
  doc.precision = nf.digits();
  for (const auto& ch : table.channels) {
    ChannelRecord cr{ch.s, ch.rep.dimension(), {}};
    for (const auto& st : ch.states) {
      StateRecord sr{st.omega, st.t, {}};
      for (const auto& [key, c] : st.terms) {
        TermRecord tr{first_weight(key), second_weight(key), std::nullopt, nf.to_string(f.evaluate(c))};
        if constexpr (exact) tr.exact = f.to_string(c);
        sr.terms.push_back(std::move(tr));
      }
      cr.states.push_back(std::move(sr));
    }
    doc.channels.push_back(std::move(cr));
  }
  return doc;
}

using Json = nlohmann::ordered_json;

inline Json weight_json(Weight w) { return Json::array({w.A, w.B}); }
inline Weight weight_from_json(const Json& j) { return Weight{j.at(0).get<int>(), j.at(1).get<int>()}; }

inline Json to_json(const TableDocument& doc) {
  Json out;
  out["n1"] = doc.n1;
  out["n2"] = doc.n2;
  out["backend"] = doc.backend;
  if (doc.q) out["q"] = *doc.q;
  if (doc.precision) out["precision"] = *doc.precision;
  out["channels"] = Json::array();
  for (const auto& ch : doc.channels) {
    Json cj{{"s", ch.s}, {"dim", ch.dim}, {"states", Json::array()}};
    for (const auto& st : ch.states) {
      Json sj{{"Omega", weight_json(st.omega)}, {"t", st.t}, {"terms", Json::array()}};
      for (const auto& t : st.terms) {
        Json tj{{"omega1", weight_json(t.omega1)}, {"omega2", weight_json(t.omega2)}};
        if (t.exact) tj["exact"] = *t.exact;
        if (t.numeric) tj["numeric"] = *t.numeric;
        sj["terms"].push_back(std::move(tj));
      }
      cj["states"].push_back(std::move(sj));
    }
    out["channels"].push_back(std::move(cj));
  }
  return out;
}

/// Inverse of to_json; throws nlohmann::json::exception on schema violations.
inline TableDocument document_from_json(const Json& j) {
  TableDocument doc;
  doc.n1 = j.at("n1").get<int>();
  doc.n2 = j.at("n2").get<int>();
  doc.backend = j.at("backend").get<std::string>();
  if (j.contains("q")) doc.q = j.at("q").get<std::string>();
  if (j.contains("precision")) doc.precision = j.at("precision").get<unsigned>();
  for (const auto& cj : j.at("channels")) {
    ChannelRecord ch{cj.at("s").get<int>(), cj.at("dim").get<long>(), {}};
    for (const auto& sj : cj.at("states")) {
      StateRecord st{weight_from_json(sj.at("Omega")), sj.at("t").get<int>(), {}};
      for (const auto& tj : sj.at("terms")) {
        TermRecord t{weight_from_json(tj.at("omega1")), weight_from_json(tj.at("omega2")), std::nullopt, std::nullopt};
        if (tj.contains("exact")) t.exact = tj.at("exact").get<std::string>();
        if (tj.contains("numeric")) t.numeric = tj.at("numeric").get<std::string>();
        st.terms.push_back(std::move(t));
      }
      ch.states.push_back(std::move(st));
    }
    doc.channels.push_back(std::move(ch));
  }
  return doc;
}

inline std::string emit_json(const TableDocument& doc) { return to_json(doc).dump(2) + "\n"; }
inline TableDocument parse_json(const std::string& text) { return document_from_json(Json::parse(text)); }

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string emit_csv(const TableDocument& doc) {
  std::ostringstream os;
  os << "s,t,Omega_A,Omega_B,o1_A,o1_B,o2_A,o2_B,exact,numeric\n";
  for (const auto& ch : doc.channels)
    for (const auto& st : ch.states)
      for (const auto& t : st.terms)
        os << ch.s << ',' << st.t << ',' << st.omega.A << ',' << st.omega.B << ',' << t.omega1.A << ','
           << t.omega1.B << ',' << t.omega2.A << ',' << t.omega2.B << ',' << detail::csv_field(t.exact.value_or(""))
           << ',' << detail::csv_field(t.numeric.value_or("")) << '\n';
  return os.str();
}

inline std::string emit_text(const TableDocument& doc) {
  std::ostringstream os;
  os << "(" << doc.n1 << ",0) x (" << doc.n2 << ",0)  backend=" << doc.backend;
  if (doc.q) os << "  q=" << *doc.q;
  if (doc.precision) os << "  digits=" << *doc.precision;
  os << "\n";
  for (const auto& ch : doc.channels) {
    os << "\nchannel s=" << ch.s << "  dim=" << ch.dim << "  states=" << ch.states.size() << "\n";
    for (const auto& st : ch.states) {
      os << "  Omega=(" << st.omega.A << "," << st.omega.B << ") t=" << st.t << "\n";
      for (const auto& t : st.terms) {
        os << "    (" << t.omega1.A << "," << t.omega1.B << ")x(" << t.omega2.A << "," << t.omega2.B << ")  ";
        if (t.exact) os << *t.exact << "  ";
        if (t.numeric) os << "[" << *t.numeric << "]";
        os << "\n";
      }
    }
  }
  return os.str();
}

/// Weight diagram rows (A, B, multiplicity) with the total dimension.
struct WeightsDocument {
  Rep rep;
  std::vector<std::pair<Weight, int>> rows;
  long dimension = 0;
  int max_multiplicity = 0;
};

inline WeightsDocument make_weights_document(Rep rep) {
  WeightsDocument doc{rep, {}, 0, 0};
  for (const auto& [wv, mu] : enumerate_weights(rep)) {
    doc.rows.emplace_back(wv.w, mu);
    doc.dimension += mu;
    doc.max_multiplicity = std::max(doc.max_multiplicity, mu);
  }
  return doc;
}

inline std::string emit_json(const WeightsDocument& doc) {
  Json out{{"n", doc.rep.n}, {"m", doc.rep.m}, {"weights", Json::array()}};
  for (const auto& [w, mu] : doc.rows) out["weights"].push_back(Json{{"A", w.A}, {"B", w.B}, {"multiplicity", mu}});
  out["dimension"] = doc.dimension;
  out["max_multiplicity"] = doc.max_multiplicity;
  return out.dump(2) + "\n";
}

inline std::string emit_csv(const WeightsDocument& doc) {
  std::ostringstream os;
  os << "A,B,multiplicity\n";
  for (const auto& [w, mu] : doc.rows) os << w.A << ',' << w.B << ',' << mu << '\n';
  return os.str();
}

inline std::string emit_text(const WeightsDocument& doc) {
  std::ostringstream os;
  os << "   A    B  mult\n";
  for (const auto& [w, mu] : doc.rows) {
    char line[48];
    std::snprintf(line, sizeof line, "%4d %4d %5d\n", w.A, w.B, mu);
    os << line;
  }
  os << "dim " << doc.dimension << "\n";
  return os.str();
}

/// Named residual with its tolerance.
struct ResidualLine {
  std::string name;
  Real value;
  Real tolerance;
  bool pass() const { return value <= tolerance; }
};

inline std::string emit_json(const std::vector<ResidualLine>& lines, unsigned digits = 6) {
  Json out = Json::object();
  for (const auto& l : lines)
    out[l.name] = Json{{"value", l.value.to_string(digits)}, {"tolerance", l.tolerance.to_string(digits)},
                       {"pass", l.pass()}};
  return out.dump(2) + "\n";
}

}  // namespace qcg3
