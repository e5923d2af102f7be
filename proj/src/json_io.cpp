#include "gmf/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gmf/error.hpp"

namespace gmf::io {

namespace {

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::ParseError, std::string(what) + " must be a number");
  return j.get<double>();
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep the value a JSON float even when it prints as an integer.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

Json sequence_to_json(const IndexSequence& s) {
  Json out = Json::array();
  for (int x : s.entries()) out.push_back(x + 1);
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
    throw Error(ErrorCode::ParseError, "matrix JSON needs an \"entries\" array");
  }
  const auto& rows = j["entries"];
  const std::size_t n = rows.size();
  if (j.contains("n") && number(j["n"], "n") != static_cast<double>(n)) {
    throw Error(ErrorCode::ParseError, "\"n\" does not match the number of rows");
  }
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw Error(ErrorCode::NotSquare, "row " + std::to_string(i + 1) + " has the wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = rows[i][k];
      if (e.is_number()) {
        a(i, k) = e.get<double>();
      } else if (e.is_object()) {
        const double re = e.contains("re") ? number(e["re"], "re") : 0.0;
        const double im = e.contains("im") ? number(e["im"], "im") : 0.0;
        a(i, k) = Complex(re, im);
      } else {
        throw Error(ErrorCode::ParseError, "entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ") is not a number");
      }
      if (!std::isfinite(a(i, k).real()) || !std::isfinite(a(i, k).imag())) {
        throw Error(ErrorCode::ParseError, "non-finite entry");
      }
    }
  }
  return a;
}

std::string matrix_to_text(const ComplexMatrix& a) {
  std::ostringstream out;
  out << "{\n  \"n\": " << a.rows() << ",\n  \"entries\": [";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out << (i ? ",\n    [" : "\n    [");
    for (std::size_t k = 0; k < a.cols(); ++k) {
      out << (k ? ", " : "") << "{\"re\": " << g17(a(i, k).real()) << ", \"im\": " << g17(a(i, k).imag()) << "}";
    }
    out << "]";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

GroupPtr group_from_json(const Json& j) {
  if (j.is_string()) return std::make_shared<const PermGroup>(named_group(j.get<std::string>()));
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "group must be a name or an object");
  if (j.contains("named")) return std::make_shared<const PermGroup>(named_group(j["named"].get<std::string>()));
  if (!j.contains("n") || !j.contains("generators")) {
    throw Error(ErrorCode::ParseError, "group JSON needs \"n\" and \"generators\"");
  }
  const int n = static_cast<int>(number(j["n"], "n"));
  if (n < 1 || n > 16) throw Error(ErrorCode::ParseError, "group degree out of range");
  std::vector<Permutation> gens;
  for (const auto& g : j["generators"]) {
    if (!g.is_string()) throw Error(ErrorCode::ParseError, "generators are cycle strings");
    gens.push_back(Permutation::parse_cycles(g.get<std::string>(), n));
  }
  std::string name = j.value("name", std::string{});
  if (name.empty()) name = "G_" + std::to_string(n);
  return std::make_shared<const PermGroup>(PermGroup::generate(n, gens, name));
}

GroupPtr group_from_arg(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    const auto j = read_json_file(arg);
    return group_from_json(j.contains("group") ? j["group"] : j);
  }
  return std::make_shared<const PermGroup>(named_group(arg));
}

CharacterFn character_from_json(const Json& j, const GroupPtr& group) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array()) {
    throw Error(ErrorCode::ParseError, "character JSON needs a \"values\" array");
  }
  GroupPtr g = group;
  if (j.contains("group")) {
    auto own = group_from_json(j["group"]);
    if (g && !g->same_as(*own)) throw Error(ErrorCode::GroupMismatch, "character JSON names a different group");
    if (!g) g = own;
  }
  if (!g) throw Error(ErrorCode::ParseError, "character JSON without a group");
  const std::size_t r = g->classes().size();
  std::vector<Complex> values(r);
  std::vector<bool> seen(r, false);
  for (const auto& v : j["values"]) {
    if (!v.is_object() || !v.contains("class_rep")) throw Error(ErrorCode::ParseError, "value entries need \"class_rep\"");
    const auto p = Permutation::parse_cycles(v["class_rep"].get<std::string>(), g->degree());
    const auto idx = g->index_of(p);
    if (!idx) throw Error(ErrorCode::ElementNotInGroup, v["class_rep"].get<std::string>() + " is not in " + g->name());
    const auto c = g->class_of(*idx);
    values[c] = Complex(v.contains("re") ? number(v["re"], "re") : 0.0, v.contains("im") ? number(v["im"], "im") : 0.0);
    seen[c] = true;
  }
  for (std::size_t c = 0; c < r; ++c) {
    if (!seen[c]) {
      throw Error(ErrorCode::ValidationFailed,
                  "no value for the class of " + g->element(g->classes()[c].representative).to_cycle_string());
    }
  }
  CharacterFn chi(g, values, j.value("label", std::string("user")));
  const double deg = chi.degree().real();
  for (auto x : chi.values()) {
    if (std::abs(x) > deg + 1e-9) throw Error(ErrorCode::ValidationFailed, "|chi(g)| exceeds chi(e)");
  }
  const auto table = character_table(g);
  if (!decompose_character(chi, table.irreducibles).is_character) {
    throw Error(ErrorCode::ValidationFailed, "values are not a character of " + g->name());
  }
  return chi;
}

CharacterFn character_from_arg(const std::string& arg, const GroupPtr& group) {
  if (arg == "principal") return principal_character(group);
  if (arg == "sign") return sign_character(group);
  if (arg.rfind("irr:", 0) == 0) {
    const auto table = character_table(group);
    std::size_t k = 0;
    try {
      k = std::stoul(arg.substr(4));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad character index in '" + arg + "'");
    }
    if (k >= table.irreducibles.size()) {
      throw Error(ErrorCode::IndexOutOfRange, group->name() + " has " + std::to_string(table.irreducibles.size()) +
                                                   " irreducible characters");
    }
    return table.irreducibles[k];
  }
  if (arg.rfind("partition:", 0) == 0) return sn_character(Partition::parse(arg.substr(10)), group);
  if (std::filesystem::is_regular_file(arg)) return character_from_json(read_json_file(arg), group);
  throw Error(ErrorCode::ParseError, "unknown character '" + arg + "'");
}

Json to_json(const GmfValue& v) {
  return Json{{"value", complex_to_json(v.value)},
              {"normalized", complex_to_json(v.normalized)},
              {"group_order", v.group_order},
              {"chi_degree", v.chi_degree}};
}

Json to_json(const OmegaSet& s) {
  Json reps = Json::array();
  for (const auto& r : s.representatives) reps.push_back(sequence_to_json(r));
  return Json{{"group", s.group_name},
              {"character", s.character_label},
              {"total_sequences", s.total_sequences},
              {"omega_size", s.members.size()},
              {"representatives", reps}};
}

Json to_json(const DecompositionReport& r) {
  Json orbits = Json::array();
  for (const auto& t : r.per_orbit_terms) {
    orbits.push_back(Json{{"representative", sequence_to_json(t.representative)}, {"orbit_size", t.orbit_size}, {"term", t.term}});
  }
  return Json{{"group", r.group_name},
              {"character", r.character_label},
              {"n", r.n},
              {"group_order", r.group_order},
              {"principal", r.principal},
              {"linear_formula", r.linear_formula},
              {"lhs_normalized_gmf", complex_to_json(r.lhs_normalized_gmf)},
              {"det_term", complex_to_json(r.det_term)},
              {"delta_term", r.delta_term},
              {"residual_sum", r.residual_sum},
              {"reconstructed", complex_to_json(r.reconstructed)},
              {"identity_residual", r.identity_residual},
              {"relative_identity_residual", r.relative_identity_residual},
              {"gamma0_term", r.gamma0_term},
              {"gamma1_term", r.gamma1_term},
              {"max_vanishing_term", r.max_vanishing_term},
              {"det_check_residual", r.det_check_residual},
              {"delta_check_residual", r.delta_check_residual},
              {"orbits_total", r.orbits_total},
              {"orbits_in_omega", r.orbits_in_omega},
              {"orbits_excluded", r.orbits_excluded},
              {"orbits_contributing", r.orbits_contributing},
              {"per_orbit_terms", orbits}};
}

Json to_json(const PermanentExpansion& e) {
  return Json{{"permanent", complex_to_json(e.permanent)},
              {"det_term", complex_to_json(e.det_term)},
              {"first_column_term", e.first_column_term},
              {"last_column_term", e.last_column_term},
              {"last_column_term_explicit", e.last_column_term_explicit},
              {"rest", e.rest},
              {"reconstructed", e.reconstructed}};
}

Json to_json(const CharacterTable& t) {
  const auto& g = *t.group;
  Json classes = Json::array();
  for (const auto& c : g.classes()) {
    classes.push_back(Json{{"representative", g.element(c.representative).to_cycle_string()}, {"size", c.members.size()}});
  }
  Json rows = Json::array();
  for (const auto& chi : t.irreducibles) {
    Json values = Json::array();
    for (auto v : chi.values()) values.push_back(complex_to_json(v));
    rows.push_back(Json{{"label", chi.label()}, {"degree", chi.degree().real()}, {"values", values}});
  }
  return Json{{"group", g.name()},
              {"n", g.degree()},
              {"order", g.order()},
              {"classes", classes},
              {"characters", rows},
              {"row_orthogonality_residual", t.row_orthogonality_residual},
              {"column_orthogonality_residual", t.column_orthogonality_residual},
              {"attempts", t.attempts}};
}

Json to_json(const EpsilonData& e) {
  return Json{{"n", e.n},           {"group_order", e.group_order}, {"alpha", e.alpha},
              {"alpha0", e.alpha0}, {"m_n", e.m_n},                 {"eps_ng", e.eps_ng},
              {"eps_bar_ng", e.eps_bar_ng}, {"eps_n", e.eps_n}};
}

Json to_json(const ConjectureReport& r) {
  Json out{{"matrix_id", r.matrix_id}, {"n", r.n}, {"verdict", std::string(to_string(r.verdict))}};
  if (!r.proposition.empty()) out["proposition"] = r.proposition;
  out["notes"] = r.notes;
  if (r.criterion) {
    const auto& c = *r.criterion;
    Json table = Json::array();
    for (const auto& e : c.table) {
      table.push_back(Json{{"row", e.row + 1}, {"col", e.col + 1}, {"abs", e.abs_value},
                           {"ratio", std::isfinite(e.ratio) ? Json(e.ratio) : Json(nullptr)}});
    }
    out["criterion"] = Json{{"epsilon", to_json(c.epsilon)},
                            {"max_off_column", c.max_off_column},
                            {"slack", c.slack},
                            {"passed", c.passed},
                            {"det", c.det},
                            {"bound_principal", c.bound_principal},
                            {"bound_nonprincipal", c.bound_nonprincipal},
                            {"table", table}};
  }
  if (!r.classifiers.empty()) {
    Json cls = Json::array();
    for (const auto& c : r.classifiers) cls.push_back(Json{{"name", c.name}, {"fired", c.fired}, {"detail", c.detail}});
    out["classifiers"] = cls;
  }
  if (r.zero_block) {
    Json rows = Json::array();
    Json cols = Json::array();
    for (int i : r.zero_block->rows) rows.push_back(i + 1);
    for (int i : r.zero_block->cols) cols.push_back(i + 1);
    out["zero_block"] = Json{{"rows", rows}, {"cols", cols}};
  }
  if (r.rank_one_diag) {
    Json v = Json::array();
    for (auto x : r.rank_one_diag->v) v.push_back(complex_to_json(x));
    out["rank_one_diag"] = Json{{"fits", r.rank_one_diag->fits}, {"v", v}, {"d", r.rank_one_diag->d},
                                {"residual", r.rank_one_diag->residual}};
  }
  if (!r.margins.empty()) {
    Json margins = Json::array();
    for (const auto& m : r.margins) {
      margins.push_back(Json{{"group", m.group},
                             {"character", m.character},
                             {"chi_degree", m.chi_degree},
                             {"normalized_gmf", complex_to_json(m.normalized_gmf)},
                             {"permanent", complex_to_json(m.permanent)},
                             {"margin", m.margin},
                             {"rechecked", m.rechecked}});
    }
    out["margins"] = margins;
    out["min_margin"] = r.min_margin;
    out["scale"] = r.scale;
  }
  out["tolerance"] = r.tolerance;
  return out;
}

}  // namespace gmf::io
