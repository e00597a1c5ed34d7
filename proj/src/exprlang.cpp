#include "frontal/exprlang.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace frontal::expr {

const char* func_name(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::tan: return "tan";
    case Func::exp: return "exp";
    case Func::log: return "log";
    case Func::sqrt: return "sqrt";
    case Func::atan: return "atan";
  }
  return "?";
}

namespace {

bool lookup_func(std::string_view name, Func& out) {
  static constexpr std::pair<std::string_view, Func> kTable[] = {
      {"sin", Func::sin}, {"cos", Func::cos},   {"tan", Func::tan},   {"exp", Func::exp},
      {"log", Func::log}, {"sqrt", Func::sqrt}, {"atan", Func::atan},
  };
  for (const auto& [n, f] : kTable)
    if (n == name) {
      out = f;
      return true;
    }
  return false;
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ", ";
    s += items[i];
  }
  return s;
}

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end, invalid };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      tok_ = {Tok::end, start, {}};
      return;
    }
    const char c = src_[pos_];
    auto digit = [&](std::size_t i) { return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i])); };
    if (digit(pos_) || (c == '.' && digit(pos_ + 1))) {
      while (digit(pos_)) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        while (digit(pos_)) ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t k = pos_ + 1;
        if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
        if (digit(k)) {
          pos_ = k;
          while (digit(pos_)) ++pos_;
        }
      }
      tok_ = {Tok::number, start, src_.substr(start, pos_ - start)};
      const std::string s(tok_.text);
      tok_.number = std::strtod(s.c_str(), nullptr);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_ = {Tok::ident, start, src_.substr(start, pos_ - start)};
      return;
    }
    ++pos_;
    Tok k = Tok::invalid;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      default: break;
    }
    tok_ = {k, start, src_.substr(start, 1)};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_{Tok::end, 0, {}};
};

NodePtr make(NodeKind k, std::size_t offset, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->offset = offset;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  NodePtr parse_all() {
    NodePtr e = expr();
    if (lex_.peek().kind != Tok::end) fail({"operator", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& t = lex_.peek();
    std::string found = t.kind == Tok::end ? "end of input" : "'" + std::string(t.text) + "'";
    std::string message = "syntax error at offset " + std::to_string(t.offset) + ": found " + found +
                          ", expected one of {" + join(expected) + "}";
    throw ParseError(std::move(message), t.offset, std::move(expected));
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
      const Token op = lex_.take();
      lhs = make(op.kind == Tok::plus ? NodeKind::add : NodeKind::sub, op.offset, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (lex_.peek().kind == Tok::star || lex_.peek().kind == Tok::slash) {
      const Token op = lex_.take();
      lhs = make(op.kind == Tok::star ? NodeKind::mul : NodeKind::div, op.offset, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    if (lex_.peek().kind == Tok::minus) {
      const Token op = lex_.take();
      return make(NodeKind::neg, op.offset, unary());
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (lex_.peek().kind == Tok::caret) {
      const Token op = lex_.take();
      return make(NodeKind::pow, op.offset, base, unary());
    }
    return base;
  }

  NodePtr atom() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::number: {
        lex_.take();
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::number;
        n->number = t.number;
        n->offset = t.offset;
        return n;
      }
      case Tok::ident: {
        lex_.take();
        if (lex_.peek().kind == Tok::lparen) {
          Func f;
          if (!lookup_func(t.text, f))
            throw ParseError("unknown function '" + std::string(t.text) + "' at offset " + std::to_string(t.offset),
                             t.offset, {"sin", "cos", "tan", "exp", "log", "sqrt", "atan"});
          lex_.take();
          auto n = std::make_shared<Node>();
          n->kind = NodeKind::call;
          n->func = f;
          n->offset = t.offset;
          n->lhs = expr();
          if (lex_.peek().kind != Tok::rparen) fail({"')'"});
          lex_.take();
          return n;
        }
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::ident;
        n->name = std::string(t.text);
        n->offset = t.offset;
        return n;
      }
      case Tok::lparen: {
        lex_.take();
        NodePtr inner = expr();
        if (lex_.peek().kind != Tok::rparen) fail({"')'"});
        lex_.take();
        return inner;
      }
      default: fail({"number", "identifier", "'('", "'-'"});
    }
  }

  Lexer lex_;
};

int precedence(const Node& n) {
  switch (n.kind) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul:
    case NodeKind::div: return 2;
    case NodeKind::neg: return 3;
    case NodeKind::pow: return 4;
    default: return 5;
  }
}

void print_to(const Node& n, std::string& out);

void print_child(const Node& n, bool parens, std::string& out) {
  if (parens) out += '(';
  print_to(n, out);
  if (parens) out += ')';
}

void print_to(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      return;
    }
    case NodeKind::ident: out += n.name; return;
    case NodeKind::call:
      out += func_name(n.func);
      out += '(';
      print_to(*n.lhs, out);
      out += ')';
      return;
    case NodeKind::neg:
      out += '-';
      print_child(*n.lhs, precedence(*n.lhs) < 3, out);
      return;
    case NodeKind::pow:
      print_child(*n.lhs, precedence(*n.lhs) < 5, out);
      out += '^';
      print_child(*n.rhs, precedence(*n.rhs) < 3, out);
      return;
    default: {
      const int p = precedence(n);
      print_child(*n.lhs, precedence(*n.lhs) < p, out);
      out += n.kind == NodeKind::add ? "+" : n.kind == NodeKind::sub ? "-" : n.kind == NodeKind::mul ? "*" : "/";
      print_child(*n.rhs, precedence(*n.rhs) <= p, out);
      return;
    }
  }
}

bool same(const Node* a, const Node* b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::number: return a->number == b->number;
    case NodeKind::ident: return a->name == b->name;
    case NodeKind::call: return a->func == b->func && same(a->lhs.get(), b->lhs.get());
    case NodeKind::neg: return same(a->lhs.get(), b->lhs.get());
    default: return same(a->lhs.get(), b->lhs.get()) && same(a->rhs.get(), b->rhs.get());
  }
}

void collect(const Node& n, std::set<std::string>& out) {
  if (n.kind == NodeKind::ident) out.insert(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

bool constant_value(std::string_view name, double& v) {
  if (name == "pi") {
    v = std::numbers::pi;
    return true;
  }
  if (name == "e") {
    v = std::numbers::e;
    return true;
  }
  return false;
}

[[noreturn]] void domain_fail(const Node* node, const char* what) {
  std::string msg = std::string(what);
  if (node) msg += " in '" + print(*node) + "'";
  throw DomainError(msg);
}

double apply_func(Func f, double x, const Node* node) {
  switch (f) {
    case Func::sin: return std::sin(x);
    case Func::cos: return std::cos(x);
    case Func::tan:
      if (std::cos(x) == 0.0) domain_fail(node, "tan at a pole");
      return std::tan(x);
    case Func::exp: return std::exp(x);
    case Func::log:
      if (!(x > 0.0)) domain_fail(node, "log of a non-positive number");
      return std::log(x);
    case Func::sqrt:
      if (x < 0.0) domain_fail(node, "sqrt of a negative number");
      return std::sqrt(x);
    case Func::atan: return std::atan(x);
  }
  return 0.0;
}

Taylor apply_func(Func f, const Taylor& x) {
  switch (f) {
    case Func::sin: return sin(x);
    case Func::cos: return cos(x);
    case Func::tan: return tan(x);
    case Func::exp: return exp(x);
    case Func::log: return log(x);
    case Func::sqrt: return sqrt(x);
    case Func::atan: return atan(x);
  }
  return x;
}

double real_pow(double a, double b, const Node* node) {
  if (a == 0.0 && b < 0.0) domain_fail(node, "division by zero");
  if (a < 0.0 && b != std::floor(b)) domain_fail(node, "non-integer power of a negative number");
  return std::pow(a, b);
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected)
    : Error(what), offset_(offset), expected_(std::move(expected)) {}

std::set<std::string> Expr::identifiers() const {
  std::set<std::string> out;
  if (root_) collect(*root_, out);
  return out;
}

std::string Expr::to_string() const { return root_ ? print(*root_) : std::string(); }

bool operator==(const Expr& a, const Expr& b) { return same(a.root_.get(), b.root_.get()); }

Expr parse(std::string_view text) { return Expr(Parser(text).parse_all()); }

std::string print(const Node& n) {
  std::string out;
  print_to(n, out);
  return out;
}

std::string print(const Expr& e) { return e.to_string(); }

// ---------------------------------------------------------------------------
// Program

Program::Program(const Expr& e, const std::vector<std::string>& variables,
                 const std::map<std::string, double>& parameters)
    : source_(e) {
  if (e.empty()) throw PreconditionError("empty expression");
  emit(e.ptr(), variables, parameters);
  std::size_t depth = 0;
  for (const auto& in : code_) {
    switch (in.op) {
      case Op::constant:
      case Op::variable: ++depth; break;
      case Op::neg:
      case Op::call: break;
      default: --depth; break;
    }
    max_stack_ = std::max(max_stack_, depth);
  }
}

void Program::emit(const NodePtr& n, const std::vector<std::string>& variables,
                   const std::map<std::string, double>& parameters) {
  Instr in{};
  in.node = n.get();
  switch (n->kind) {
    case NodeKind::number:
      in.op = Op::constant;
      in.value = n->number;
      break;
    case NodeKind::ident: {
      auto it = std::find(variables.begin(), variables.end(), n->name);
      if (it != variables.end()) {
        in.op = Op::variable;
        in.slot = static_cast<int>(it - variables.begin());
      } else if (auto p = parameters.find(n->name); p != parameters.end()) {
        in.op = Op::constant;
        in.value = p->second;
      } else if (double c; constant_value(n->name, c)) {
        in.op = Op::constant;
        in.value = c;
      } else {
        throw ResolveError("unresolved identifier '" + n->name + "' at offset " + std::to_string(n->offset));
      }
      break;
    }
    case NodeKind::neg:
      emit(n->lhs, variables, parameters);
      in.op = Op::neg;
      break;
    case NodeKind::call:
      emit(n->lhs, variables, parameters);
      in.op = Op::call;
      in.func = n->func;
      break;
    default:
      emit(n->lhs, variables, parameters);
      emit(n->rhs, variables, parameters);
      in.op = n->kind == NodeKind::add   ? Op::add
              : n->kind == NodeKind::sub ? Op::sub
              : n->kind == NodeKind::mul ? Op::mul
              : n->kind == NodeKind::div ? Op::div
                                         : Op::pow;
      break;
  }
  code_.push_back(in);
}

double Program::eval(std::span<const double> vars) const {
  double stack[64] = {};
  std::vector<double> heap;
  double* s = stack;
  if (max_stack_ > 64) {
    heap.resize(max_stack_);
    s = heap.data();
  }
  std::size_t top = 0;
  for (const auto& in : code_) {
    switch (in.op) {
      case Op::constant: s[top++] = in.value; break;
      case Op::variable: s[top++] = vars[in.slot]; break;
      case Op::neg: s[top - 1] = -s[top - 1]; break;
      case Op::call: s[top - 1] = apply_func(in.func, s[top - 1], in.node); break;
      case Op::add: --top; s[top - 1] += s[top]; break;
      case Op::sub: --top; s[top - 1] -= s[top]; break;
      case Op::mul: --top; s[top - 1] *= s[top]; break;
      case Op::div:
        --top;
        if (s[top] == 0.0) domain_fail(in.node, "division by zero");
        s[top - 1] /= s[top];
        break;
      case Op::pow:
        --top;
        s[top - 1] = real_pow(s[top - 1], s[top], in.node);
        break;
    }
  }
  if (!std::isfinite(s[0])) domain_fail(&source_.root(), "non-finite value");
  return s[0];
}

Taylor Program::eval(std::span<const double> vars, int order) const {
  std::vector<Taylor> s;
  s.reserve(max_stack_);
  for (const auto& in : code_) {
    try {
      switch (in.op) {
        case Op::constant: s.emplace_back(in.value, order); break;
        case Op::variable: s.push_back(Taylor::variable(vars[in.slot], in.slot, order)); break;
        case Op::neg: s.back() = -s.back(); break;
        case Op::call: s.back() = apply_func(in.func, s.back()); break;
        default: {
          Taylor rhs = std::move(s.back());
          s.pop_back();
          Taylor& lhs = s.back();
          switch (in.op) {
            case Op::add: lhs += rhs; break;
            case Op::sub: lhs -= rhs; break;
            case Op::mul: lhs *= rhs; break;
            case Op::div: lhs /= rhs; break;
            default: lhs = pow(lhs, rhs); break;
          }
        }
      }
    } catch (const DomainError& err) {
      domain_fail(in.node, err.what());
    }
  }
  for (double c : s.back().coeffs())
    if (!std::isfinite(c)) domain_fail(&source_.root(), "non-finite value");
  return s.back();
}

// ---------------------------------------------------------------------------
// evaluate

Jet evaluate(const Expr& e, const std::map<std::string, double>& bindings, int order,
             const std::vector<std::string>& diff_vars) {
  if (diff_vars.size() > 2) throw PreconditionError("at most two differentiation variables");
  if (order < 0 || order > Taylor::kMaxOrder) throw PreconditionError("jet order must be in 0..3");
  std::vector<double> vals;
  std::map<std::string, double> params;
  for (const auto& name : diff_vars) {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw ResolveError("differentiation variable '" + name + "' is not bound");
    vals.push_back(it->second);
  }
  for (const auto& [k, v] : bindings)
    if (std::find(diff_vars.begin(), diff_vars.end(), k) == diff_vars.end()) params[k] = v;
  Program prog(e, diff_vars, params);
  Jet j;
  j.nvars = std::max<int>(1, static_cast<int>(diff_vars.size()));
  j.order = order;
  j.comps.push_back(prog.eval(vals, order));
  return j;
}

Jet evaluate(const Expr& e, const std::map<std::string, double>& bindings, int order) {
  std::vector<std::string> vars;
  if (bindings.count("u") || bindings.count("v")) {
    for (const char* n : {"u", "v"})
      if (bindings.count(n)) vars.emplace_back(n);
  } else if (bindings.count("t")) {
    vars.emplace_back("t");
  } else if (bindings.count("x")) {
    vars.emplace_back("x");
  }
  return evaluate(e, bindings, order, vars);
}

// ---------------------------------------------------------------------------
// MapDef

void MapDef::validate() const {
  if (variables.empty() || variables.size() > 2) throw PreconditionError("map '" + name + "' needs 1 or 2 variables");
  if (components.empty()) throw PreconditionError("map '" + name + "' has no components");
  for (const auto& c : components) {
    for (const auto& id : c.identifiers()) {
      double dummy;
      const bool known = std::find(variables.begin(), variables.end(), id) != variables.end() ||
                         parameters.count(id) || constant_value(id, dummy);
      if (!known) throw ResolveError("map '" + name + "': unresolved identifier '" + id + "'");
    }
  }
}

Map MapDef::compile() const {
  validate();
  auto progs = std::make_shared<std::vector<Program>>();
  for (const auto& c : components) progs->emplace_back(c, variables, parameters);
  const int in = static_cast<int>(variables.size());
  const int out = static_cast<int>(components.size());
  auto eval = [progs](std::span<const double> x, std::span<double> y) {
    for (std::size_t c = 0; c < progs->size(); ++c) y[c] = (*progs)[c].eval(x);
  };
  auto jet = [progs, in](std::span<const double> x, int order) {
    Jet j;
    j.nvars = in;
    j.order = order;
    j.comps.reserve(progs->size());
    for (const auto& p : *progs) j.comps.push_back(p.eval(x, order));
    return j;
  };
  return Map(in, out, eval, jet);
}

MapDef make_mapdef(std::string name, std::vector<std::string> variables,
                   const std::vector<std::string>& component_texts, std::map<std::string, double> parameters) {
  MapDef m;
  m.name = std::move(name);
  m.variables = std::move(variables);
  m.parameters = std::move(parameters);
  for (const auto& t : component_texts) m.components.push_back(parse(t));
  m.validate();
  return m;
}

Profile make_profile(std::string_view text, const std::string& var,
                     const std::map<std::string, double>& parameters) {
  auto prog = std::make_shared<Program>(parse(text), std::vector<std::string>{var}, parameters);
  auto at = [prog](double x, int k) { return prog->eval(std::span<const double>(&x, 1), k).partial(k, 0); };
  return {[=](double x) { return at(x, 0); }, [=](double x) { return at(x, 1); }, [=](double x) { return at(x, 2); }};
}

std::vector<std::string> split_components(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  return out;
}

}  // namespace frontal::expr
