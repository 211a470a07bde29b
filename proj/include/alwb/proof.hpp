#ifndef ALWB_PROOF_HPP
#define ALWB_PROOF_HPP

#include "alwb/formula.hpp"
#include "alwb/parser.hpp"

#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace alwb {

struct AxiomSchema {
  std::string name;
  Formula tmpl;  // over schema variables phi = p0, psi = p1, xi = p2, chi = p3
};

inline const std::vector<std::string>& schema_var_names() {
  static const std::vector<std::string> names = {"phi", "psi", "xi", "chi"};
  return names;
}

inline const std::vector<AxiomSchema>& axioms() {
  static const std::vector<AxiomSchema> all = [] {
    const std::pair<const char*, const char*> rows[] = {
        {"sf", "(p0 -> p1) -> ((p1 -> p2) -> (p0 -> p2))"},
        {"e", "(p0 -> (p1 -> p2)) -> (p1 -> (p0 -> p2))"},
        {"id", "p0 -> p0"},
        {"abe", "((p0 -> p1) -> p1) -> p0"},
        {"ub1", "p0 -> p0 \\/ p1"},
        {"ub2", "p1 -> p0 \\/ p1"},
        {"lb1", "p0 /\\ p1 -> p0"},
        {"lb2", "p0 /\\ p1 -> p1"},
        {"sup", "(p0 -> p3) /\\ (p1 -> p3) -> (p0 \\/ p1 -> p3)"},
        {"inf", "(p3 -> p0) /\\ (p3 -> p1) -> (p3 -> p0 /\\ p1)"},
        {"push", "p0 -> (t -> p0)"},
        {"pop", "(t -> p0) -> p0"},
        {"res1", "(p0 -> (p1 -> p2)) -> (p0 * p1 -> p2)"},
        {"res2", "(p0 * p1 -> p2) -> (p0 -> (p1 -> p2))"},
    };
    std::vector<AxiomSchema> out;
    for (const auto& [name, text] : rows) out.push_back({name, parse_formula(text, false)});
    return out;
  }();
  return all;
}

inline const AxiomSchema* find_axiom(std::string_view name) {
  for (const auto& a : axioms())
    if (a.name == name) return &a;
  return nullptr;
}

namespace detail {

inline bool match_into(const Formula& pattern, const Formula& x, Substitution& sigma) {
  if (pattern.kind() == Kind::Var) {
    auto [it, inserted] = sigma.emplace(pattern.var_index(), x);
    return inserted || it->second == x;
  }
  if (pattern.kind() != x.kind()) return false;
  if (!is_binary(pattern.kind())) return true;
  return match_into(pattern.left(), x.left(), sigma) && match_into(pattern.right(), x.right(), sigma);
}

}  // namespace detail

/// The substitution taking the schema's template to `x`, if any.
inline std::optional<Substitution> match_axiom(const Formula& x, const AxiomSchema& schema) {
  Substitution sigma;
  if (!detail::match_into(schema.tmpl, x, sigma)) return std::nullopt;
  return sigma;
}

struct Hypothesis {
  std::size_t index;
};
struct AxiomUse {
  std::string name;
  Substitution substitution;  // may be partial; missing variables are matched
};
struct ModusPonens {
  std::size_t minor, major;  // major is minor -> current
};
struct Adjunction {
  std::size_t left, right;
};

using Justification = std::variant<Hypothesis, AxiomUse, ModusPonens, Adjunction>;

struct ProofStep {
  Formula formula;
  Justification justification;
};

struct Proof {
  Consecution claimed;
  std::vector<ProofStep> steps;
};

struct ProofResult {
  bool accepted = true;
  std::size_t step = 0;
  std::string reason;

  static ProofResult accept() { return {}; }
  static ProofResult reject(std::size_t step, std::string reason) { return {false, step, std::move(reason)}; }
};

namespace detail {

inline std::string check_step(const Proof& proof, std::size_t i) {
  const ProofStep& s = proof.steps[i];
  auto earlier = [&](std::size_t j) -> const Formula* { return j < i ? &proof.steps[j].formula : nullptr; };

  if (auto* h = std::get_if<Hypothesis>(&s.justification)) {
    if (h->index >= proof.claimed.premises.size()) return "no premise " + std::to_string(h->index);
    if (!(proof.claimed.premises[h->index] == s.formula)) return "formula differs from premise " + std::to_string(h->index);
    return {};
  }
  if (auto* a = std::get_if<AxiomUse>(&s.justification)) {
    const AxiomSchema* schema = find_axiom(a->name);
    if (!schema) return "unknown axiom '" + a->name + "'";
    auto sigma = match_axiom(s.formula, *schema);
    if (!sigma) return "not an instance of " + a->name;
    for (const auto& [v, phi] : a->substitution) {
      auto it = sigma->find(v);
      const std::string name = v < schema_var_names().size() ? schema_var_names()[v] : "p" + std::to_string(v);
      if (it == sigma->end()) return "axiom " + a->name + " has no variable " + name;
      if (!(it->second == phi)) return "substitution for " + name + " does not match the formula";
    }
    return {};
  }
  if (auto* mp = std::get_if<ModusPonens>(&s.justification)) {
    const Formula* minor = earlier(mp->minor);
    const Formula* major = earlier(mp->major);
    if (!minor || !major) return "mp must cite earlier steps";
    if (!(*major == Formula::impl(*minor, s.formula)))
      return "step " + std::to_string(mp->major) + " is not step " + std::to_string(mp->minor) + " -> this formula";
    return {};
  }
  const auto& adj = std::get<Adjunction>(s.justification);
  const Formula* l = earlier(adj.left);
  const Formula* r = earlier(adj.right);
  if (!l || !r) return "adj must cite earlier steps";
  if (!(s.formula == Formula::meet(*l, *r)))
    return "formula is not step " + std::to_string(adj.left) + " /\\ step " + std::to_string(adj.right);
  return {};
}

}  // namespace detail

/// Checks every step in order and reports the earliest failure.
inline ProofResult check_proof(const Proof& proof) {
  if (proof.steps.empty()) return ProofResult::reject(0, "empty proof");
  for (std::size_t i = 0; i < proof.steps.size(); ++i)
    if (auto why = detail::check_step(proof, i); !why.empty()) return ProofResult::reject(i, why);
  const std::size_t last = proof.steps.size() - 1;
  if (!(proof.steps[last].formula == proof.claimed.conclusion)) return ProofResult::reject(last, "last step is not the claimed conclusion");
  return ProofResult::accept();
}

class ProofFormatError : public std::runtime_error {
 public:
  ProofFormatError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::size_t parse_index(std::string_view s, std::size_t line) {
  s = trim_ws(s);
  if (s.empty()) throw ProofFormatError("expected a step number", line);
  std::size_t n = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ProofFormatError("bad number '" + std::string(s) + "'", line);
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  return n;
}

inline std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline Substitution parse_axiom_substitution(std::string_view s, std::size_t line) {
  Substitution sigma;
  s = trim_ws(s);
  while (!s.empty()) {
    auto comma = s.find(',');
    std::string_view item = trim_ws(s.substr(0, comma));
    s = comma == std::string_view::npos ? std::string_view{} : trim_ws(s.substr(comma + 1));
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ProofFormatError("expected var=formula", line);
    std::string_view var = trim_ws(item.substr(0, eq));
    std::size_t idx = schema_var_names().size();
    for (std::size_t k = 0; k < schema_var_names().size(); ++k)
      if (schema_var_names()[k] == var) idx = k;
    if (idx == schema_var_names().size()) throw ProofFormatError("unknown schema variable '" + std::string(var) + "'", line);
    try {
      sigma[idx] = parse_formula(item.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ProofFormatError(e.what(), line);
    }
  }
  return sigma;
}

inline Justification parse_justification(std::string_view s, std::size_t line) {
  s = trim_ws(s);
  auto sp = s.find_first_of(" \t");
  std::string_view head = s.substr(0, sp);
  std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim_ws(s.substr(sp));
  auto pair = [&]() -> std::pair<std::size_t, std::size_t> {
    auto w = words(rest);
    if (w.size() != 2) throw ProofFormatError(std::string(head) + " takes two step numbers", line);
    return {parse_index(w[0], line), parse_index(w[1], line)};
  };
  if (head == "hyp") return Hypothesis{parse_index(rest, line)};
  if (head == "mp") {
    auto [i, j] = pair();
    return ModusPonens{i, j};
  }
  if (head == "adj") {
    auto [i, j] = pair();
    return Adjunction{i, j};
  }
  if (head == "ax") {
    auto sp2 = rest.find_first_of(" \t");
    std::string name(rest.substr(0, sp2));
    if (name.empty()) throw ProofFormatError("ax needs a schema name", line);
    Substitution sigma;
    if (sp2 != std::string_view::npos) sigma = parse_axiom_substitution(rest.substr(sp2), line);
    return AxiomUse{name, sigma};
  }
  throw ProofFormatError("unknown justification '" + std::string(head) + "'", line);
}

}  // namespace detail

/// Line format: `claim: <consecution>`, then `<n>: <formula> ; <justification>` with
/// steps numbered from 0. Blank lines and lines starting with '#' are skipped.
inline Proof parse_proof(std::istream& in) {
  Proof proof;
  bool have_claim = false;
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = detail::trim_ws(raw);
    if (line.empty() || line.front() == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ProofFormatError("expected ':'", line_no);
    std::string_view label = detail::trim_ws(line.substr(0, colon));
    std::string_view body = line.substr(colon + 1);
    try {
      if (label == "claim") {
        if (have_claim) throw ProofFormatError("duplicate claim", line_no);
        proof.claimed = parse_consecution(body);
        have_claim = true;
        continue;
      }
      if (!have_claim) throw ProofFormatError("claim must come first", line_no);
      if (detail::parse_index(label, line_no) != proof.steps.size())
        throw ProofFormatError("expected step " + std::to_string(proof.steps.size()), line_no);
      auto semi = body.rfind(';');
      if (semi == std::string_view::npos) throw ProofFormatError("expected ';' before the justification", line_no);
      proof.steps.push_back({parse_formula(body.substr(0, semi)), detail::parse_justification(body.substr(semi + 1), line_no)});
    } catch (const ParseError& e) {
      throw ProofFormatError(e.what(), line_no);
    }
  }
  if (!have_claim) throw ProofFormatError("missing claim", line_no);
  return proof;
}

inline Proof parse_proof(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_proof(in);
}

inline std::string format_justification(const Justification& j) {
  if (auto* h = std::get_if<Hypothesis>(&j)) return "hyp " + std::to_string(h->index);
  if (auto* mp = std::get_if<ModusPonens>(&j)) return "mp " + std::to_string(mp->minor) + " " + std::to_string(mp->major);
  if (auto* adj = std::get_if<Adjunction>(&j)) return "adj " + std::to_string(adj->left) + " " + std::to_string(adj->right);
  const auto& a = std::get<AxiomUse>(j);
  std::string out = "ax " + a.name;
  const char* sep = " ";
  for (const auto& [v, phi] : a.substitution) {
    out += sep + schema_var_names().at(v) + "=" + print_formula(phi);
    sep = ", ";
  }
  return out;
}

inline std::string format_proof(const Proof& proof) {
  std::string out = "claim: " + print_consecution(proof.claimed) + "\n";
  for (std::size_t i = 0; i < proof.steps.size(); ++i)
    out += std::to_string(i) + ": " + print_formula(proof.steps[i].formula) + " ; " + format_justification(proof.steps[i].justification) + "\n";
  return out;
}

}  // namespace alwb

#endif  // ALWB_PROOF_HPP
