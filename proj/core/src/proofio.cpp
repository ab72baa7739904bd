#include "wsr/proofio.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace wsr {

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
};

// Splits into tokens, dropping comment lines (first token starting with 'c')
// and anything after a '%' end marker.
std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1, pos = 0;
  bool line_start = true, comment = false;
  while (pos < text.size()) {
    char ch = text[pos];
    if (ch == '\n') {
      ++line;
      ++pos;
      line_start = true;
      comment = false;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\f' || ch == '\v') {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])))
      ++end;
    std::string_view tok = text.substr(pos, end - pos);
    pos = end;
    if (line_start && tok[0] == 'c')
      comment = true;
    line_start = false;
    if (comment)
      continue;
    if (tok == "%")
      break;
    tokens.push_back({tok, line});
  }
  return tokens;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    return std::nullopt;
  return v;
}

class TokenStream {
public:
  explicit TokenStream(std::string_view text) : tokens_(tokenize(text)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const Token &peek() const { return tokens_[pos_]; }
  const Token &next() { return tokens_[pos_++]; }
  std::size_t line() const {
    if (tokens_.empty())
      return 1;
    return done() ? tokens_.back().line : tokens_[pos_].line;
  }

  std::int32_t literal_or_zero(const char *context) {
    if (done())
      throw ParseError(line(), std::string("unexpected end of input in ") + context);
    const Token &t = next();
    auto v = to_int(t.text);
    if (!v)
      throw ParseError(t.line, "expected literal in " + std::string(context) + ", got '" + std::string(t.text) + "'");
    if (*v > INT32_MAX || *v < -INT32_MAX)
      throw ParseError(t.line, "literal out of range");
    return static_cast<std::int32_t>(*v);
  }

  // Reads literals up to and including the terminating 0.
  std::vector<Lit> literals(const char *context) {
    std::vector<Lit> lits;
    for (;;) {
      auto v = literal_or_zero(context);
      if (v == 0)
        return lits;
      lits.emplace_back(v);
    }
  }

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Clause make_clause(const std::vector<Lit> &lits, std::size_t line, const char *what) {
  auto c = Clause::from(lits);
  if (!c)
    throw ParseError(line, std::string("tautological ") + what);
  return std::move(*c);
}

Substitution read_witness(TokenStream &in) {
  std::size_t line = in.line();
  Substitution s;
  std::vector<std::uint32_t> seen;
  auto claim = [&](Var v, std::size_t at) {
    for (auto x : seen)
      if (x == v.index)
        throw ParseError(at, "variable " + std::to_string(v.index) + " mapped twice in witness");
    seen.push_back(v.index);
  };
  for (Lit l : in.literals("witness cube")) {
    claim(l.var(), line);
    s.assign(l.var(), Atom::constant(!l.is_negative()));
  }
  for (;;) {
    std::size_t at = in.line();
    auto a = in.literal_or_zero("witness pairs");
    if (a == 0)
      break;
    auto b = in.literal_or_zero("witness pairs");
    if (b == 0)
      throw ParseError(at, "ill-formed pair section: odd number of literals");
    Lit from(a), to(b);
    claim(from.var(), at);
    Atom img = Atom::literal(to);
    s.assign(from.var(), from.is_negative() ? img.complement() : img);
  }
  return s;
}

void append_lits(std::string &out, std::span<const Lit> lits) {
  for (Lit l : lits) {
    out += std::to_string(l.dimacs());
    out += ' ';
  }
  out += '0';
}

} // namespace

DimacsFormula parse_dimacs(std::string_view text) {
  TokenStream in(text);
  DimacsFormula result;
  if (in.done() || in.peek().text != "p")
    throw ParseError(in.line(), "missing 'p cnf' header");
  std::size_t header_line = in.next().line;
  if (in.done() || in.next().text != "cnf")
    throw ParseError(header_line, "malformed header: expected 'p cnf <vars> <clauses>'");
  std::optional<std::int64_t> vars, clauses;
  if (!in.done())
    vars = to_int(in.next().text);
  if (!in.done())
    clauses = to_int(in.next().text);
  if (!vars || !clauses || *vars < 0 || *clauses < 0 || *vars > INT32_MAX)
    throw ParseError(header_line, "malformed header: expected 'p cnf <vars> <clauses>'");
  result.num_vars = static_cast<std::uint32_t>(*vars);
  result.declared_clauses = static_cast<std::size_t>(*clauses);

  std::size_t parsed = 0;
  while (!in.done()) {
    std::size_t line = in.line();
    std::vector<Lit> lits;
    for (;;) {
      if (in.done())
        throw ParseError(line, "truncated clause: missing terminating 0");
      const Token &t = in.next();
      auto v = to_int(t.text);
      if (!v)
        throw ParseError(t.line, "expected literal, got '" + std::string(t.text) + "'");
      if (*v == 0)
        break;
      if (*v > *vars || *v < -*vars)
        throw ParseError(t.line, "literal " + std::string(t.text) + " out of range");
      lits.emplace_back(static_cast<std::int32_t>(*v));
    }
    result.formula.add(make_clause(lits, line, "input clause"));
    ++parsed;
  }
  if (parsed != result.declared_clauses)
    throw ParseError(header_line, "header declares " + std::to_string(result.declared_clauses) +
                                      " clauses, found " + std::to_string(parsed));
  return result;
}

Proof parse_wsr_proof(std::string_view text) {
  TokenStream in(text);
  Proof proof;
  while (!in.done()) {
    std::size_t line = in.line();
    if (in.peek().text == "d") {
      in.next();
      proof.push_back(Deletion{make_clause(in.literals("deletion"), line, "deletion")});
      continue;
    }
    if (!to_int(in.peek().text))
      throw ParseError(line, "unexpected token '" + std::string(in.peek().text) + "'");
    Introduction intro{make_clause(in.literals("clause"), line, "clause"), {}, {}};
    bool seen_witness = false;
    while (!in.done()) {
      auto tok = in.peek().text;
      std::size_t at = in.peek().line;
      if (tok == "s") {
        if (seen_witness || !intro.modulo.empty())
          throw ParseError(at, "witness must appear once, before modulo blocks");
        in.next();
        intro.witness = read_witness(in);
        seen_witness = true;
      } else if (tok == "m") {
        in.next();
        intro.modulo.push_back(make_clause(in.literals("modulo block"), at, "modulo clause"));
      } else {
        break;
      }
    }
    proof.push_back(std::move(intro));
  }
  return proof;
}

Proof parse_dpr_proof(std::string_view text) {
  TokenStream in(text);
  Proof proof;
  while (!in.done()) {
    std::size_t line = in.line();
    if (in.peek().text == "d") {
      in.next();
      proof.push_back(Deletion{make_clause(in.literals("deletion"), line, "deletion")});
      continue;
    }
    auto lits = in.literals("clause");
    std::size_t split = lits.size();
    for (std::size_t k = 1; k < lits.size(); ++k)
      if (lits[k] == lits[0]) {
        split = k;
        break;
      }
    std::vector<Lit> clause_lits(lits.begin(), lits.begin() + static_cast<std::ptrdiff_t>(split));
    Introduction intro{make_clause(clause_lits, line, "clause"), {}, {}};
    if (split < lits.size()) {
      std::vector<Lit> cube_lits(lits.begin() + static_cast<std::ptrdiff_t>(split), lits.end());
      auto q = Cube::from(cube_lits);
      if (!q)
        throw ParseError(line, "contradictory witness cube");
      intro.witness = from_cube(*q);
    }
    proof.push_back(std::move(intro));
  }
  return proof;
}

Substitution parse_witness(std::string_view text) {
  TokenStream in(text);
  auto s = read_witness(in);
  if (!in.done())
    throw ParseError(in.line(), "trailing tokens after witness");
  return s;
}

/*------------------------------------------------------------------------*/

std::string serialize_dimacs(const Formula &f, std::uint32_t num_vars) {
  std::string out = "p cnf " + std::to_string(num_vars) + " " + std::to_string(f.size()) + "\n";
  for (const auto &c : f) {
    append_lits(out, c.lits());
    out += '\n';
  }
  return out;
}

std::string serialize_dimacs(const Formula &f) { return serialize_dimacs(f, f.max_var()); }

std::string serialize_witness(const Substitution &s) {
  std::string out;
  for (const auto &[v, img] : s.entries())
    if (!img.is_literal())
      out += std::to_string(img.is_top() ? static_cast<std::int64_t>(v.index) : -static_cast<std::int64_t>(v.index)) + " ";
  out += "0";
  for (const auto &[v, img] : s.entries())
    if (img.is_literal())
      out += " " + std::to_string(v.index) + " " + std::to_string(img.lit().dimacs());
  out += " 0";
  return out;
}

std::string serialize_instruction(const ProofInstruction &instruction) {
  std::string out;
  if (const auto *del = std::get_if<Deletion>(&instruction)) {
    out = "d ";
    append_lits(out, del->clause.lits());
    return out;
  }
  const auto &intro = std::get<Introduction>(instruction);
  append_lits(out, intro.clause.lits());
  if (!intro.witness.is_identity())
    out += " s " + serialize_witness(intro.witness);
  for (const auto &m : intro.modulo) {
    out += " m ";
    append_lits(out, m.lits());
  }
  return out;
}

std::string serialize_proof(const Proof &proof) {
  std::string out;
  for (const auto &ins : proof) {
    out += serialize_instruction(ins);
    out += '\n';
  }
  return out;
}

std::size_t count_introductions(const Proof &proof) {
  std::size_t n = 0;
  for (const auto &ins : proof)
    n += std::holds_alternative<Introduction>(ins);
  return n;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write '" + path + "'");
  out << contents;
  if (!out)
    throw Error("write failed for '" + path + "'");
}

} // namespace wsr
