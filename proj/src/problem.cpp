#include "supermech/problem.hpp"

#include <cctype>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "supermech/errors.hpp"
#include "supermech/format.hpp"

namespace supermech {

const SymmetryDecl* ProblemFile::find_symmetry(std::string_view name) const {
  for (const auto& s : symmetries) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const Signature& eta_signature() {
  static const Signature signature({}, {"eta"});
  return signature;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

struct Position {
  int line = 1;
  int column = 1;
};

enum class Tok { name, number, punct, arrow, separator, end };

struct Token {
  Tok kind;
  std::string text;
  Position pos;
};

[[noreturn]] void syntax(const std::string& what, Position pos) {
  throw SyntaxError(what, pos.line, pos.column);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  Position pos;
  int nesting = 0;  // () and [] suppress line breaks
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t j = 0; j < count; ++j) {
      if (text[i + j] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
    i += count;
  };

  while (i < text.size()) {
    const char c = text[i];
    const Position start = pos;
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (c == '\n') {
      if (nesting == 0) out.push_back({Tok::separator, "\n", start});
      advance(1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == ';') {
      out.push_back({Tok::separator, ";", start});
      advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tok::name, std::string(text.substr(i, j - i)), start});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          j = k;
        }
      }
      out.push_back({Tok::number, std::string(text.substr(i, j - i)), start});
      advance(j - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", start});
      advance(2);
    } else if (std::string_view("+-*/^=[](){},").find(c) != std::string_view::npos) {
      if (c == '(' || c == '[') ++nesting;
      if ((c == ')' || c == ']') && nesting > 0) --nesting;
      out.push_back({Tok::punct, std::string(1, c), start});
      advance(1);
    } else {
      syntax(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::end, "", pos});
  return out;
}

// ---------------------------------------------------------------------------
// Expression syntax tree
// ---------------------------------------------------------------------------

struct Node {
  enum class Kind { number, atom, negate, add, subtract, multiply, divide, power };
  Kind kind;
  Position pos;
  Rational value;               // number
  std::string name;             // atom
  std::optional<int> index;     // atom
  Position index_pos;           // atom
  int exponent = 0;             // power
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};
using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind kind, Position pos, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto node = std::make_unique<Node>();
  node->kind = kind;
  node->pos = pos;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[cursor_]; }
  Token take() { return tokens_[cursor_ == tokens_.size() - 1 ? cursor_ : cursor_++]; }
  bool at(Tok kind, std::string_view text = {}) const {
    return peek().kind == kind && (text.empty() || peek().text == text);
  }
  bool accept(Tok kind, std::string_view text = {}) {
    if (!at(kind, text)) return false;
    take();
    return true;
  }
  Token expect(Tok kind, std::string_view text, const std::string& what) {
    if (!at(kind, text)) syntax("expected " + what + describe_found(), peek().pos);
    return take();
  }
  std::string describe_found() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::end:
        return ", found end of input";
      case Tok::separator:
        return ", found end of statement";
      default:
        return ", found '" + t.text + "'";
    }
  }
  void skip_separators() {
    while (accept(Tok::separator)) {
    }
  }
  void end_statement() {
    if (at(Tok::end) || at(Tok::punct, "}")) return;
    if (!accept(Tok::separator)) syntax("expected end of statement" + describe_found(), peek().pos);
  }

  NodePtr expression() {
    NodePtr lhs = product();
    while (at(Tok::punct, "+") || at(Tok::punct, "-")) {
      Token op = take();
      NodePtr rhs = product();
      lhs = make(op.text == "+" ? Node::Kind::add : Node::Kind::subtract, op.pos, std::move(lhs),
                 std::move(rhs));
    }
    return lhs;
  }

  int integer(const std::string& what) {
    Token t = expect(Tok::number, {}, what);
    for (char c : t.text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) syntax(what + " must be an integer", t.pos);
    }
    if (t.text.size() > 6) syntax(what + " is too large", t.pos);
    return std::stoi(t.text);
  }

  Rational number() {
    Token t = expect(Tok::number, {}, "a number");
    return literal(t);
  }

  static Rational literal(const Token& t) {
    try {
      return parse_rational(t.text);
    } catch (const std::invalid_argument&) {
      syntax("malformed number '" + t.text + "'", t.pos);
    }
  }

 private:
  NodePtr product() {
    NodePtr lhs = unary();
    while (at(Tok::punct, "*") || at(Tok::punct, "/")) {
      Token op = take();
      NodePtr rhs = unary();
      lhs = make(op.text == "*" ? Node::Kind::multiply : Node::Kind::divide, op.pos, std::move(lhs),
                 std::move(rhs));
    }
    return lhs;
  }

  NodePtr unary() {
    if (at(Tok::punct, "-")) {
      Token op = take();
      return make(Node::Kind::negate, op.pos, unary());
    }
    if (accept(Tok::punct, "+")) return unary();
    NodePtr base = primary();
    if (at(Tok::punct, "^")) {
      Token op = take();
      int exponent = integer("exponent");
      base = make(Node::Kind::power, op.pos, std::move(base));
      base->exponent = exponent;
    }
    return base;
  }

  NodePtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::number) {
      NodePtr node = make(Node::Kind::number, t.pos);
      node->value = literal(take());
      return node;
    }
    if (t.kind == Tok::name) {
      Token name = take();
      NodePtr node = make(Node::Kind::atom, name.pos);
      node->name = name.text;
      if (accept(Tok::punct, "[")) {
        node->index_pos = peek().pos;
        node->index = integer("jet index");
        expect(Tok::punct, "]", "']'");
      }
      return node;
    }
    if (accept(Tok::punct, "(")) {
      NodePtr inner = expression();
      expect(Tok::punct, ")", "')'");
      return inner;
    }
    syntax("expected an expression" + describe_found(), t.pos);
  }

  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
};

// ---------------------------------------------------------------------------
// Resolution against declared coordinates
// ---------------------------------------------------------------------------

struct Scope {
  const Signature* signature;
  int max_order;
  int index_offset = 0;  // eta[i] is stored at order i-1
  std::string range_note;
};

SuperExpr resolve(const Node& node, const Scope& scope) {
  switch (node.kind) {
    case Node::Kind::number:
      return SuperExpr(node.value);
    case Node::Kind::atom: {
      auto base = scope.signature->base(node.name);
      if (!base) {
        throw UnknownCoordinate("unknown coordinate '" + node.name + "'", node.pos.line,
                                node.pos.column);
      }
      int index = node.index.value_or(scope.index_offset);
      int order = index - scope.index_offset;
      if (order < 0 || order > scope.max_order) {
        Position at = node.index ? node.index_pos : node.pos;
        throw IndexOutOfRange(node.name + "[" + std::to_string(index) + "] is out of range " +
                                  scope.range_note,
                              at.line, at.column);
      }
      return SuperExpr::generator(base->raised(order));
    }
    case Node::Kind::negate:
      return -resolve(*node.lhs, scope);
    case Node::Kind::add:
      return resolve(*node.lhs, scope) + resolve(*node.rhs, scope);
    case Node::Kind::subtract:
      return resolve(*node.lhs, scope) - resolve(*node.rhs, scope);
    case Node::Kind::multiply:
      return resolve(*node.lhs, scope) * resolve(*node.rhs, scope);
    case Node::Kind::divide: {
      SuperExpr divisor = resolve(*node.rhs, scope);
      if (!divisor.is_constant()) syntax("division by a non-constant expression", node.pos);
      if (divisor.is_zero()) syntax("division by zero", node.pos);
      return resolve(*node.lhs, scope).scaled(1 / divisor.constant_term());
    }
    case Node::Kind::power:
      return pow(resolve(*node.lhs, scope), node.exponent);
  }
  throw std::logic_error("unhandled expression node");
}

Scope coordinate_scope(const Signature& signature, int max_order) {
  return {&signature, max_order, 0, "(indices run from 0 to " + std::to_string(max_order) + ")"};
}

Parity checked_parity(const SuperExpr& e, Position pos, const std::string& what) {
  if (e.is_zero()) return Parity::even;
  try {
    return parity_of(e);
  } catch (const MixedParity&) {
    syntax(what + " mixes even and odd terms", pos);
  }
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct PendingExpr {
  NodePtr node;
  Position pos;
};

struct PendingSymmetry {
  std::string name;
  Position pos;
  std::vector<std::pair<Token, PendingExpr>> components;
};

struct PendingInit {
  Token coordinate;
  std::optional<int> index;
  Position index_pos;
  PendingExpr value;
};

struct PendingSimulation {
  Position pos;
  std::optional<int> n;
  std::optional<Rational> dt;
  std::optional<Rational> t_end;
  std::vector<PendingInit> init;
};

struct PendingProblem {
  std::vector<std::string> even;
  std::vector<std::string> odd;
  std::optional<int> order;
  Position order_pos;
  std::optional<PendingExpr> lagrangian;
  std::vector<PendingSymmetry> symmetries;
  std::vector<std::pair<Token, PendingExpr>> charges;
  std::optional<PendingSimulation> simulation;
};

PendingExpr pending(Parser& p) {
  Position pos = p.peek().pos;
  return {p.expression(), pos};
}

void parse_simulation(Parser& p, PendingSimulation& sim) {
  p.expect(Tok::punct, "{", "'{'");
  p.skip_separators();
  while (!p.accept(Tok::punct, "}")) {
    Token key = p.expect(Tok::name, {}, "a simulation setting");
    if (key.text == "init") {
      PendingInit init;
      init.coordinate = p.expect(Tok::name, {}, "a coordinate");
      if (p.accept(Tok::punct, "[")) {
        init.index_pos = p.peek().pos;
        init.index = p.integer("jet index");
        p.expect(Tok::punct, "]", "']'");
      }
      p.expect(Tok::punct, "=", "'='");
      init.value = pending(p);
      sim.init.push_back(std::move(init));
    } else if (key.text == "n" || key.text == "dt" || key.text == "t") {
      p.expect(Tok::punct, "=", "'='");
      if (key.text == "n") {
        if (sim.n) syntax("n is set twice", key.pos);
        sim.n = p.integer("n");
      } else {
        auto& slot = key.text == "dt" ? sim.dt : sim.t_end;
        if (slot) syntax(key.text + " is set twice", key.pos);
        Position at = p.peek().pos;
        Rational value = p.number();
        if (p.accept(Tok::punct, "/")) {
          Rational den = p.number();
          if (den == 0) syntax("division by zero", at);
          value /= den;
        }
        slot = value;
      }
    } else {
      syntax("unknown simulation setting '" + key.text + "'", key.pos);
    }
    p.end_statement();
    p.skip_separators();
  }
}

PendingProblem parse_statements(Parser& p) {
  PendingProblem out;
  std::set<std::string> names;
  p.skip_separators();
  while (!p.at(Tok::end)) {
    Token head = p.expect(Tok::name, {}, "a statement");
    if (head.text == "even" || head.text == "odd") {
      auto& list = head.text == "even" ? out.even : out.odd;
      if (!p.at(Tok::name)) syntax("expected a coordinate name" + p.describe_found(), p.peek().pos);
      while (p.at(Tok::name)) {
        Token name = p.take();
        if (name.text == "eta") syntax("'eta' is reserved for Grassmann generators", name.pos);
        if (!names.insert(name.text).second) syntax("coordinate '" + name.text + "' is declared twice", name.pos);
        list.push_back(name.text);
        p.accept(Tok::punct, ",");
      }
    } else if (head.text == "order") {
      if (out.order) syntax("order is set twice", head.pos);
      out.order_pos = p.peek().pos;
      out.order = p.integer("order");
      if (*out.order < 1) syntax("order must be at least 1", out.order_pos);
    } else if (head.text == "L") {
      if (out.lagrangian) syntax("the Lagrangian is set twice", head.pos);
      p.expect(Tok::punct, "=", "'='");
      out.lagrangian = pending(p);
    } else if (head.text == "symmetry") {
      PendingSymmetry sym;
      Token name = p.expect(Tok::name, {}, "a symmetry name");
      sym.name = name.text;
      sym.pos = name.pos;
      for (const auto& other : out.symmetries) {
        if (other.name == sym.name) syntax("symmetry '" + sym.name + "' is declared twice", name.pos);
      }
      p.expect(Tok::punct, "{", "'{'");
      p.skip_separators();
      while (!p.accept(Tok::punct, "}")) {
        Token coordinate = p.expect(Tok::name, {}, "a coordinate");
        p.expect(Tok::arrow, {}, "'->'");
        sym.components.emplace_back(coordinate, pending(p));
        p.end_statement();
        p.skip_separators();
      }
      out.symmetries.push_back(std::move(sym));
    } else if (head.text == "charge") {
      Token name = p.expect(Tok::name, {}, "a charge name");
      for (const auto& [other, expr] : out.charges) {
        if (other.text == name.text) syntax("charge '" + name.text + "' is declared twice", name.pos);
      }
      p.expect(Tok::punct, "=", "'='");
      out.charges.emplace_back(name, pending(p));
    } else if (head.text == "simulate") {
      if (out.simulation) syntax("only one simulate block is allowed", head.pos);
      PendingSimulation sim;
      sim.pos = head.pos;
      parse_simulation(p, sim);
      out.simulation = std::move(sim);
    } else {
      syntax("unknown statement '" + head.text + "'", head.pos);
    }
    p.end_statement();
    p.skip_separators();
  }
  return out;
}

ProblemFile resolve_problem(PendingProblem pending, Position end) {
  ProblemFile out;
  if (pending.even.empty() && pending.odd.empty()) syntax("no coordinates are declared", end);
  if (!pending.order) syntax("missing 'order' statement", end);
  if (!pending.lagrangian) syntax("missing Lagrangian 'L = ...'", end);
  out.signature = Signature(pending.even, pending.odd);
  out.order = *pending.order;
  const int k = out.order;
  const int phase_order = 2 * k - 1;

  out.lagrangian = resolve(*pending.lagrangian->node, coordinate_scope(out.signature, k));
  if (checked_parity(out.lagrangian, pending.lagrangian->pos, "the Lagrangian") != Parity::even) {
    syntax("the Lagrangian must be even", pending.lagrangian->pos);
  }

  const Scope phase = coordinate_scope(out.signature, phase_order);
  for (auto& sym : pending.symmetries) {
    SymmetryDecl decl;
    decl.name = sym.name;
    std::optional<Parity> parity;
    for (auto& [coordinate, value] : sym.components) {
      auto base = out.signature.base(coordinate.text);
      if (!base) {
        throw UnknownCoordinate("unknown coordinate '" + coordinate.text + "'", coordinate.pos.line,
                                coordinate.pos.column);
      }
      if (decl.components.count(*base)) syntax("component for '" + coordinate.text + "' is given twice", coordinate.pos);
      SuperExpr e = resolve(*value.node, phase);
      if (!e.is_zero()) {
        Parity field = checked_parity(e, value.pos, "the component") + base->parity;
        if (parity && *parity != field) syntax("components disagree on the parity of the symmetry", value.pos);
        parity = field;
      }
      decl.components[*base] = e;
    }
    decl.parity = parity.value_or(Parity::even);
    std::erase_if(decl.components, [](const auto& entry) { return entry.second.is_zero(); });
    out.symmetries.push_back(std::move(decl));
  }

  for (auto& [name, value] : pending.charges) {
    ChargeDecl decl{name.text, resolve(*value.node, phase)};
    checked_parity(decl.expr, value.pos, "the charge");
    out.charges.push_back(std::move(decl));
  }

  if (pending.simulation) {
    auto& sim = *pending.simulation;
    SimulationSpec spec;
    if (sim.n) spec.n = *sim.n;
    if (spec.n < 0 || spec.n > kMaxGrassmannGenerators) {
      syntax("n must lie in 0.." + std::to_string(kMaxGrassmannGenerators), sim.pos);
    }
    if (sim.dt) spec.dt = *sim.dt;
    if (sim.t_end) spec.t_end = *sim.t_end;
    if (spec.dt <= 0) syntax("dt must be positive", sim.pos);
    if (spec.t_end < 0) syntax("t must be non-negative", sim.pos);
    Scope eta{&eta_signature(), spec.n - 1, 1,
              "(Grassmann generators run from 1 to " + std::to_string(spec.n) + ")"};
    for (auto& init : sim.init) {
      auto base = out.signature.base(init.coordinate.text);
      if (!base) {
        throw UnknownCoordinate("unknown coordinate '" + init.coordinate.text + "'",
                                init.coordinate.pos.line, init.coordinate.pos.column);
      }
      int index = init.index.value_or(0);
      if (index > phase_order) {
        throw IndexOutOfRange(init.coordinate.text + "[" + std::to_string(index) +
                                  "] is out of range (indices run from 0 to " +
                                  std::to_string(phase_order) + ")",
                              init.index_pos.line, init.index_pos.column);
      }
      Generator x = base->raised(index);
      if (spec.init.count(x)) syntax("initial value is given twice", init.coordinate.pos);
      SuperExpr value = resolve(*init.value.node, eta);
      if (!value.is_zero() && checked_parity(value, init.value.pos, "the initial value") != x.parity) {
        syntax("initial value of " + out.signature.name(x) + " has the wrong parity", init.value.pos);
      }
      if (!value.is_zero()) spec.init[x] = value;
    }
    out.simulation = std::move(spec);
  }
  return out;
}

std::string print_eta(const SuperExpr& e) {
  // eta generators are stored one order below their printed index
  std::string text = format_expr(e, eta_signature());
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    out += text[i];
    if (text.compare(i, 4, "eta[") == 0) {
      out += "ta[";
      i += 4;
      std::size_t close = text.find(']', i);
      out += std::to_string(std::stoi(text.substr(i, close - i)) + 1);
      i = close - 1;
    }
  }
  return out;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  Parser parser(tokenize(text));
  PendingProblem pending = parse_statements(parser);
  return resolve_problem(std::move(pending), parser.peek().pos);
}

SuperExpr parse_expression(std::string_view text, const Signature& signature, int max_order) {
  Parser parser(tokenize(text));
  parser.skip_separators();
  NodePtr node = parser.expression();
  parser.skip_separators();
  if (!parser.at(Tok::end)) syntax("unexpected input after expression", parser.peek().pos);
  return resolve(*node, coordinate_scope(signature, max_order));
}

std::string print_problem(const ProblemFile& problem) {
  std::ostringstream out;
  const Signature& sig = problem.signature;
  auto names = [](const std::vector<std::string>& list) {
    std::string joined;
    for (const auto& n : list) joined += " " + n;
    return joined;
  };
  if (!sig.even_names().empty()) out << "even" << names(sig.even_names()) << "\n";
  if (!sig.odd_names().empty()) out << "odd" << names(sig.odd_names()) << "\n";
  out << "order " << problem.order << "\n";
  out << "L = " << format_expr(problem.lagrangian, sig) << "\n";
  for (const auto& sym : problem.symmetries) {
    out << "symmetry " << sym.name << " {\n";
    for (const auto& [base, value] : sym.components) {
      out << "  " << sig.base_name(base) << " -> " << format_expr(value, sig) << "\n";
    }
    out << "}\n";
  }
  for (const auto& charge : problem.charges) {
    out << "charge " << charge.name << " = " << format_expr(charge.expr, sig) << "\n";
  }
  if (problem.simulation) {
    const auto& sim = *problem.simulation;
    out << "simulate {\n";
    out << "  n = " << sim.n << "\n";
    out << "  dt = " << to_string(sim.dt) << "\n";
    out << "  t = " << to_string(sim.t_end) << "\n";
    for (const auto& [x, value] : sim.init) {
      out << "  init " << sig.name(x) << " = " << print_eta(value) << "\n";
    }
    out << "}\n";
  }
  return out.str();
}

VectorField symmetry_field(const SymmetryDecl& symmetry, const ProblemFile& problem) {
  VectorField out(0, 2 * problem.order - 1, symmetry.parity);
  for (const auto& [base, value] : symmetry.components) out.set(base, value);
  return out;
}

NumericState initial_state(const ProblemFile& problem) {
  SimulationSpec spec = problem.simulation.value_or(SimulationSpec{});
  NumericState state;
  state.n = spec.n;
  for (const auto& x : problem.signature.coordinates(2 * problem.order - 1)) {
    state.values.emplace(x, GrassmannValue(spec.n));
  }
  for (const auto& [x, value] : spec.init) {
    GrassmannValue v(spec.n);
    for (const auto& [m, c] : value.terms()) {
      unsigned mask = 0;
      for (const auto& g : m.odd()) mask |= 1u << g.order;
      v[mask] += to_double(c);
    }
    state.values.at(x) = v;
  }
  return state;
}

}  // namespace supermech
