#include "lyapna/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "lyapna/errors.hpp"

namespace lyapna {

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  std::unique_ptr<ExprAST> parse() {
    auto e = expr();
    skip_ws();
    if (pos_ != src_.size()) throw SyntaxError(pos_, "end of input");
    return e;
  }

 private:
  std::unique_ptr<ExprAST> node(ExprAST::Kind k, std::size_t off) {
    auto n = std::make_unique<ExprAST>();
    n->kind = k;
    n->offset = off;
    return n;
  }

  std::unique_ptr<ExprAST> expr() {
    skip_ws();
    std::size_t off = pos_;
    std::unique_ptr<ExprAST> acc;
    if (peek() == '-') {
      ++pos_;
      auto n = node(ExprAST::Kind::Neg, off);
      n->lhs = term();
      acc = std::move(n);
    } else {
      acc = term();
    }
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') return acc;
      std::size_t at = pos_++;
      auto n = node(c == '+' ? ExprAST::Kind::Add : ExprAST::Kind::Sub, at);
      n->lhs = std::move(acc);
      n->rhs = term();
      acc = std::move(n);
    }
  }

  std::unique_ptr<ExprAST> term() {
    auto acc = factor();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '*' && c != '/') return acc;
      std::size_t at = pos_++;
      auto n = node(c == '*' ? ExprAST::Kind::Mul : ExprAST::Kind::Div, at);
      n->lhs = std::move(acc);
      n->rhs = factor();
      acc = std::move(n);
    }
  }

  std::unique_ptr<ExprAST> factor() {
    auto base = atom();
    skip_ws();
    if (peek() != '^') return base;
    std::size_t at = pos_++;
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw SyntaxError(pos_, "a nonnegative integer exponent (write negative powers as 1/t^k)");
    auto n = node(ExprAST::Kind::Pow, at);
    n->exponent = read_uint();
    n->lhs = std::move(base);
    return n;
  }

  std::unique_ptr<ExprAST> atom() {
    skip_ws();
    std::size_t off = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      auto e = expr();
      skip_ws();
      if (peek() != ')') throw SyntaxError(pos_, "')'");
      ++pos_;
      return e;
    }
    if (c == 'i') {
      ++pos_;
      return node(ExprAST::Kind::Imag, off);
    }
    if (c == 't') {
      ++pos_;
      return node(ExprAST::Kind::Var, off);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto n = node(ExprAST::Kind::Rational, off);
      n->value = Rat(read_uint());
      return n;
    }
    throw SyntaxError(pos_, "a rational, 'i', 't', or '('");
  }

  long read_uint() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::string digits(src_.substr(start, pos_ - start));
    if (digits.size() > 12) throw SyntaxError(start, "a smaller integer literal");
    return std::stol(digits);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  std::string_view src_;
  std::size_t pos_ = 0;
};

Series pow_series(const Series& base, long e) {
  Series acc = Series::one();
  Series b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace

Series ExprAST::eval() const {
  switch (kind) {
    case Kind::Rational:
      return Series::constant(GRat(value));
    case Kind::Imag:
      return Series::constant(GRat::i());
    case Kind::Var:
      return Series::monomial(GRat(1), 1);
    case Kind::Neg:
      return -lhs->eval();
    case Kind::Add:
      return lhs->eval() + rhs->eval();
    case Kind::Sub:
      return lhs->eval() - rhs->eval();
    case Kind::Mul:
      return lhs->eval() * rhs->eval();
    case Kind::Div: {
      Series den = rhs->eval();
      if (den.is_exact_zero()) throw ZeroDivision("division by zero in expression");
      if (den.term_count() != 1) throw NonMonomialDivision(offset);
      return lhs->eval() * den.inv();
    }
    case Kind::Pow:
      return pow_series(lhs->eval(), exponent);
  }
  throw SyntaxError(offset, "a well-formed expression");
}

std::unique_ptr<ExprAST> parse_expr_ast(std::string_view src) {
  return ExprParser(src).parse();
}

Series parse_laurent(std::string_view src) { return parse_expr_ast(src)->eval(); }

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Rat parse_weight(const std::string& s) {
  Series w = parse_laurent(s);
  if (w.is_exact_zero()) return Rat(0);
  if (!w.is_exact() || w.term_count() != 1 || w.ord() != Ord(Rat(0)) || !w.leading().is_real())
    throw ConfigError("weight '" + s + "' is not a rational constant");
  return w.leading().re();
}

long parse_long(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("value for '" + key + "' is not an integer: " + s);
  }
}

}  // namespace

ParsedSpec parse_spec(std::string_view src) {
  ParsedSpec out;
  bool symmetrize = false;

  struct PendingGen {
    std::string name;
    std::string entry[4];
    bool has_entry[4] = {false, false, false, false};
    std::string weight;
    bool has_weight = false;
  };
  std::vector<PendingGen> pending;
  enum class Section { Top, Defaults, Generator };
  Section section = Section::Top;

  std::istringstream in{std::string(src)};
  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      std::string head = trim(line.substr(1, line.size() - 2));
      if (head == "defaults") {
        section = Section::Defaults;
      } else if (head.rfind("generator", 0) == 0) {
        std::string name = trim(head.substr(9));
        if (name.empty())
          throw ConfigError("line " + std::to_string(lineno) + ": generator needs a name");
        pending.push_back(PendingGen{});
        pending.back().name = name;
        section = Section::Generator;
      } else {
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + head + "]");
      }
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    switch (section) {
      case Section::Top:
        if (key == "symmetrize") {
          if (value != "true" && value != "false")
            throw ConfigError("line " + std::to_string(lineno) + ": symmetrize must be true or false");
          symmetrize = value == "true";
        } else {
          throw ConfigError("line " + std::to_string(lineno) + ": unknown top-level key '" + key + "'");
        }
        break;
      case Section::Defaults:
        if (key == "n")
          out.defaults.n = parse_long(value, key);
        else if (key == "S")
          out.defaults.samples = parse_long(value, key);
        else if (key == "seed")
          out.defaults.seed = parse_long(value, key);
        else
          throw ConfigError("line " + std::to_string(lineno) + ": unknown defaults key '" + key + "'");
        break;
      case Section::Generator: {
        PendingGen& g = pending.back();
        if (key == "weight") {
          g.weight = value;
          g.has_weight = true;
        } else if (key.size() == 1 && key[0] >= 'a' && key[0] <= 'd') {
          g.entry[key[0] - 'a'] = value;
          g.has_entry[key[0] - 'a'] = true;
        } else {
          throw ConfigError("line " + std::to_string(lineno) + ": unknown generator key '" + key + "'");
        }
        break;
      }
    }
  }

  if (pending.empty()) throw ConfigError("no [generator ...] sections found");
  Rat total(0);
  for (const auto& g : pending) {
    if (!g.has_weight) throw ConfigError("generator '" + g.name + "' has no weight");
    for (int k = 0; k < 4; ++k)
      if (!g.has_entry[k])
        throw ConfigError("generator '" + g.name + "' is missing entry '" +
                          std::string(1, static_cast<char>('a' + k)) + "'");
    Rat w = parse_weight(g.weight);
    if (w <= 0) throw WeightsNotNormalized("generator '" + g.name + "' has non-positive weight");
    MatNA m{parse_laurent(g.entry[0]), parse_laurent(g.entry[1]), parse_laurent(g.entry[2]),
            parse_laurent(g.entry[3])};
    if (!(m.det() - Series::one()).is_exact_zero()) throw DetNotOne(g.name);
    out.measure.gens.push_back({g.name, m, w});
    total += w;
  }
  if (total != 1)
    throw WeightsNotNormalized("weights sum to " + rat_to_string(total) + ", expected 1");

  if (symmetrize) {
    MeasureSpec sym;
    sym.symmetric = true;
    const Rat half(1, 2);
    for (const auto& g : out.measure.gens) {
      Rat w = g.weight * half;
      w.canonicalize();
      sym.gens.push_back({g.name, g.mat, w});
      sym.gens.push_back({g.name + "^-1", g.mat.inverse(), w});
    }
    out.measure = std::move(sym);
  }
  return out;
}

ParsedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

}  // namespace lyapna
