#include "hpq/input.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hpq/rational.hpp"

namespace hpq {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Splits on whitespace and commas.
std::vector<std::string> tokens_of(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& what) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& tok, const std::string& source,
                    int line, const std::string& field) {
  if (auto r = parse_rational(tok)) return rat_to_double(*r);
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() + tok.size() && !tok.empty()) return v;
  fail(source, line, "field '" + field + "': cannot parse number '" + tok + "'");
}

bool is_integer_token(const std::string& tok) {
  if (tok.empty()) return false;
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

struct RawEdge {
  int line;
  std::string a, b;
  std::string value;
};

}  // namespace

ParsedInput parse_run_text(const std::string& text,
                           const std::string& source_name) {
  enum class Section { None, Coxeter, Matrices };
  Section section = Section::None;
  bool saw_coxeter = false;
  bool saw_matrices = false;

  // Reflection-table state, resolved after the whole file is read so that
  // declaration order inside the table does not matter (except that edges
  // need the generator list for label lookup, handled at resolution time).
  long long gen_count = -1;
  std::vector<std::string> gen_labels;
  Rat default_alpha = 1;
  int generators_line = -1;
  std::vector<RawEdge> edges;

  MatrixInput mat;
  bool saw_gram = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        fail(source_name, lineno, "unterminated table header '" + line + "'");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name == "coxeter") {
        section = Section::Coxeter;
        saw_coxeter = true;
      } else if (name == "matrices") {
        section = Section::Matrices;
        saw_matrices = true;
      } else {
        fail(source_name, lineno,
             "unknown table '" + name + "' (expected coxeter or matrices)");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(source_name, lineno, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(source_name, lineno, "empty key");
    if (value.empty()) fail(source_name, lineno, "field '" + key + "': empty value");

    if (section == Section::None)
      fail(source_name, lineno, "entry before any table header");

    if (section == Section::Coxeter) {
      const auto key_toks = tokens_of(key);
      if (key == "generators") {
        const auto toks = tokens_of(value);
        if (toks.size() == 1 && is_integer_token(toks[0])) {
          gen_count = std::stoll(toks[0]);
        } else {
          gen_labels = toks;
          gen_count = static_cast<long long>(toks.size());
        }
        if (gen_count < 1)
          fail(source_name, lineno, "field 'generators': need at least one");
        generators_line = lineno;
      } else if (key == "default_alpha") {
        auto r = parse_rational(value);
        if (!r)
          fail(source_name, lineno,
               "field 'default_alpha': expected a rational or decimal, got '" +
                   value + "'");
        default_alpha = *r;
      } else if (key_toks.size() == 3 && key_toks[0] == "edge") {
        edges.push_back({lineno, key_toks[1], key_toks[2], value});
      } else {
        fail(source_name, lineno,
             "unknown key '" + key +
                 "' in [coxeter] (expected generators, default_alpha, or "
                 "'edge I J')");
      }
    } else {
      const auto key_toks = tokens_of(key);
      if (key == "dim") {
        const auto toks = tokens_of(value);
        if (toks.size() != 1 || !is_integer_token(toks[0]))
          fail(source_name, lineno, "field 'dim': expected a positive integer");
        mat.dim = static_cast<int>(std::stoll(toks[0]));
        if (mat.dim < 2)
          fail(source_name, lineno, "field 'dim': must be at least 2");
      } else if (key == "gram" || (key_toks.size() == 2 && key_toks[0] == "generator")) {
        if (mat.dim == 0)
          fail(source_name, lineno,
               "field '" + key + "': declare dim before any matrix");
        const auto toks = tokens_of(value);
        const std::size_t want =
            static_cast<std::size_t>(mat.dim) * static_cast<std::size_t>(mat.dim);
        if (toks.size() != want)
          fail(source_name, lineno,
               "field '" + key + "': expected " + std::to_string(want) +
                   " entries (row-major), got " + std::to_string(toks.size()));
        MatrixXd m(mat.dim, mat.dim);
        for (int i = 0; i < mat.dim; ++i)
          for (int j = 0; j < mat.dim; ++j)
            m(i, j) = parse_number(toks[static_cast<std::size_t>(i) * mat.dim + j],
                                   source_name, lineno, key);
        if (key == "gram") {
          if (saw_gram) fail(source_name, lineno, "field 'gram': given twice");
          mat.gram = m;
          saw_gram = true;
        } else {
          mat.generators.emplace_back(key_toks[1], m);
        }
      } else {
        fail(source_name, lineno,
             "unknown key '" + key +
                 "' in [matrices] (expected dim, gram, or 'generator NAME')");
      }
    }
  }

  if (saw_coxeter == saw_matrices)
    throw ParseError(source_name +
                     ": expected exactly one of [coxeter] or [matrices]");

  ParsedInput out;
  if (saw_coxeter) {
    if (gen_count < 0)
      throw ParseError(source_name + ": [coxeter] is missing 'generators'");
    CoxeterSpec spec(static_cast<int>(gen_count), default_alpha);
    if (!gen_labels.empty()) spec.labels = gen_labels;

    auto resolve = [&](const RawEdge& e, const std::string& tok) -> int {
      if (is_integer_token(tok)) {
        const long long v = std::stoll(tok);
        if (v < 1 || v > gen_count)
          fail(source_name, e.line,
               "edge endpoint " + tok + " out of range 1.." +
                   std::to_string(gen_count));
        return static_cast<int>(v - 1);
      }
      for (int i = 0; i < spec.n; ++i)
        if (spec.labels[static_cast<std::size_t>(i)] == tok) return i;
      fail(source_name, e.line, "unknown generator label '" + tok + "'");
    };
    for (const RawEdge& e : edges) {
      if (e.line < generators_line)
        fail(source_name, e.line, "edge declared before 'generators'");
      const int i = resolve(e, e.a);
      const int j = resolve(e, e.b);
      if (i == j) fail(source_name, e.line, "edge endpoints must differ");
      const auto vtoks = tokens_of(e.value);
      if (vtoks[0] == "commute") {
        if (vtoks.size() != 1)
          fail(source_name, e.line, "'commute' takes no weight");
        spec.set_commute(i, j);
      } else if (vtoks[0] == "infty") {
        Rat a = default_alpha;
        if (vtoks.size() == 2) {
          auto r = parse_rational(vtoks[1]);
          if (!r)
            fail(source_name, e.line,
                 "edge weight: expected a rational or decimal, got '" +
                     vtoks[1] + "'");
          a = *r;
        } else if (vtoks.size() > 2) {
          fail(source_name, e.line, "'infty' takes at most one weight");
        }
        spec.set_free(i, j, a);
      } else {
        fail(source_name, e.line,
             "edge kind must be 'commute' or 'infty', got '" + vtoks[0] + "'");
      }
    }
    spec.validate();
    out.coxeter = std::move(spec);
  } else {
    if (!saw_gram)
      throw ParseError(source_name + ": [matrices] is missing 'gram'");
    if (mat.generators.empty())
      throw ParseError(source_name +
                       ": [matrices] needs at least one 'generator NAME' row");
    out.matrices = std::move(mat);
  }
  return out;
}

ParsedInput parse_run_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_text(buf.str(), path);
}

void set_tolerance(Tolerances& tol, const std::string& key, double value) {
  if (key == "tol_null") tol.tol_null = value;
  else if (key == "tol_sign") tol.tol_sign = value;
  else if (key == "tol_degenerate") tol.tol_degenerate = value;
  else if (key == "dedupe_radius") tol.dedupe_radius = value;
  else if (key == "tol_proximal") tol.tol_proximal = value;
  else if (key == "tol_membership") tol.tol_membership = value;
  else if (key == "form_residual_rel") tol.form_residual_rel = value;
  else
    throw std::invalid_argument(
        "unknown tolerance key '" + key +
        "' (valid: tol_null, tol_sign, tol_degenerate, dedupe_radius, "
        "tol_proximal, tol_membership, form_residual_rel)");
}

void apply_tolerance_override(Tolerances& tol, const std::string& kv) {
  const std::size_t eq = kv.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
    throw std::invalid_argument("tolerance override must look like KEY=VALUE, got '" +
                                kv + "'");
  const std::string key = trim(kv.substr(0, eq));
  const std::string val = trim(kv.substr(eq + 1));
  char* end = nullptr;
  const double v = std::strtod(val.c_str(), &end);
  if (end != val.c_str() + val.size() || val.empty())
    throw std::invalid_argument("cannot parse tolerance value '" + val + "'");
  set_tolerance(tol, key, v);
}

}  // namespace hpq
