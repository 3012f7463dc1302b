#include "isolab/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

namespace isolab {

enum class Kind { constant, variable, add, sub, mul, div, neg, pow, call };
enum class Func { exp_, log_, sin_, cos_, tan_, sinh_, cosh_, tanh_, sqrt_ };

struct Expr::Node {
  Kind kind;
  Complex value{};                      // constant
  int exponent = 0;                     // pow
  Func func = Func::exp_;               // call
  std::shared_ptr<const Node> a, b;

  Node(Kind k) : kind(k) {}
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_const(Complex c) {
  auto n = std::make_shared<Expr::Node>(Kind::constant);
  n->value = c;
  return n;
}

NodePtr make_var() { return std::make_shared<Expr::Node>(Kind::variable); }

bool is_const(const NodePtr& n, Complex c) {
  return n->kind == Kind::constant && n->value == c;
}

NodePtr make_bin(Kind k, NodePtr a, NodePtr b) {
  // Light folding so printed derivatives stay readable.
  if (k == Kind::add) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
  }
  if (k == Kind::sub && is_const(b, 0.0)) return a;
  if (k == Kind::mul) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (a->kind == Kind::constant && b->kind == Kind::constant)
      return make_const(a->value * b->value);
  }
  if (k == Kind::div && is_const(b, 1.0)) return a;
  auto n = std::make_shared<Expr::Node>(k);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_neg(NodePtr a) {
  if (a->kind == Kind::constant) return make_const(-a->value);
  auto n = std::make_shared<Expr::Node>(Kind::neg);
  n->a = std::move(a);
  return n;
}

NodePtr make_pow(NodePtr a, int e) {
  if (e == 1) return a;
  if (e == 0) return make_const(1.0);
  auto n = std::make_shared<Expr::Node>(Kind::pow);
  n->a = std::move(a);
  n->exponent = e;
  return n;
}

NodePtr make_call(Func f, NodePtr a) {
  auto n = std::make_shared<Expr::Node>(Kind::call);
  n->func = f;
  n->a = std::move(a);
  return n;
}

const char* func_name(Func f) {
  switch (f) {
    case Func::exp_: return "exp";
    case Func::log_: return "log";
    case Func::sin_: return "sin";
    case Func::cos_: return "cos";
    case Func::tan_: return "tan";
    case Func::sinh_: return "sinh";
    case Func::cosh_: return "cosh";
    case Func::tanh_: return "tanh";
    case Func::sqrt_: return "sqrt";
  }
  return "?";
}

class Parser {
public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected input", pos_);
    return e;
  }

private:
  const std::string& s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (eat('+'))
        e = make_bin(Kind::add, e, term());
      else if (eat('-'))
        e = make_bin(Kind::sub, e, term());
      else
        return e;
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      if (eat('*'))
        e = make_bin(Kind::mul, e, factor());
      else if (eat('/'))
        e = make_bin(Kind::div, e, factor());
      else
        return e;
    }
  }

  NodePtr factor() {
    NodePtr b = base();
    if (eat('^')) return make_pow(b, integer());
    return b;
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    bool negative = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      negative = s_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected integer exponent", start);
    long val = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      val = val * 10 + (s_[pos_] - '0');
      if (val > 1000) throw ParseError("exponent too large", start);
      ++pos_;
    }
    return negative ? -static_cast<int>(val) : static_cast<int>(val);
  }

  NodePtr base() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return make_neg(base());
    }
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belonged to something else
      }
    }
    try {
      return make_const(std::stod(s_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      throw ParseError("malformed number", start);
    }
  }

  NodePtr ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "z") return make_var();
    if (name == "i") return make_const(Complex(0, 1));
    static const std::pair<const char*, Func> table[] = {
        {"exp", Func::exp_},   {"log", Func::log_},   {"sin", Func::sin_},
        {"cos", Func::cos_},   {"tan", Func::tan_},   {"sinh", Func::sinh_},
        {"cosh", Func::cosh_}, {"tanh", Func::tanh_}, {"sqrt", Func::sqrt_}};
    for (const auto& [fname, f] : table) {
      if (name == fname) {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return make_call(f, arg);
      }
    }
    throw ParseError("unknown function '" + name + "'", start);
  }
};

Complex eval_node(const Expr::Node& n, Complex z) {
  switch (n.kind) {
    case Kind::constant: return n.value;
    case Kind::variable: return z;
    case Kind::add: return eval_node(*n.a, z) + eval_node(*n.b, z);
    case Kind::sub: return eval_node(*n.a, z) - eval_node(*n.b, z);
    case Kind::mul: return eval_node(*n.a, z) * eval_node(*n.b, z);
    case Kind::div: {
      Complex den = eval_node(*n.b, z);
      if (den == Complex(0, 0)) throw PoleError("division by zero", z);
      return eval_node(*n.a, z) / den;
    }
    case Kind::neg: return -eval_node(*n.a, z);
    case Kind::pow: {
      Complex b = eval_node(*n.a, z);
      int e = n.exponent;
      if (e < 0) {
        if (b == Complex(0, 0)) throw PoleError("negative power of zero", z);
        b = 1.0 / b;
        e = -e;
      }
      Complex r = 1.0;
      while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
      }
      return r;
    }
    case Kind::call: {
      Complex a = eval_node(*n.a, z);
      switch (n.func) {
        case Func::exp_: return std::exp(a);
        case Func::log_:
          if (a == Complex(0, 0)) throw PoleError("log of zero", z);
          return std::log(a);
        case Func::sin_: return std::sin(a);
        case Func::cos_: return std::cos(a);
        case Func::tan_: return std::tan(a);
        case Func::sinh_: return std::sinh(a);
        case Func::cosh_: return std::cosh(a);
        case Func::tanh_: return std::tanh(a);
        case Func::sqrt_: return std::sqrt(a);
      }
      return {};
    }
  }
  return {};
}

NodePtr diff_node(const NodePtr& n);

NodePtr diff_call(const Expr::Node& n) {
  NodePtr a = n.a;
  NodePtr da = diff_node(a);
  NodePtr outer;
  switch (n.func) {
    case Func::exp_: outer = make_call(Func::exp_, a); break;
    case Func::log_: return make_bin(Kind::div, da, a);
    case Func::sin_: outer = make_call(Func::cos_, a); break;
    case Func::cos_: outer = make_neg(make_call(Func::sin_, a)); break;
    case Func::tan_:
      outer = make_bin(Kind::add, make_const(1.0), make_pow(make_call(Func::tan_, a), 2));
      break;
    case Func::sinh_: outer = make_call(Func::cosh_, a); break;
    case Func::cosh_: outer = make_call(Func::sinh_, a); break;
    case Func::tanh_:
      outer = make_bin(Kind::sub, make_const(1.0), make_pow(make_call(Func::tanh_, a), 2));
      break;
    case Func::sqrt_:
      return make_bin(Kind::div, da,
                      make_bin(Kind::mul, make_const(2.0), make_call(Func::sqrt_, a)));
  }
  return make_bin(Kind::mul, outer, da);
}

NodePtr diff_node(const NodePtr& n) {
  switch (n->kind) {
    case Kind::constant: return make_const(0.0);
    case Kind::variable: return make_const(1.0);
    case Kind::add: return make_bin(Kind::add, diff_node(n->a), diff_node(n->b));
    case Kind::sub: return make_bin(Kind::sub, diff_node(n->a), diff_node(n->b));
    case Kind::mul:
      return make_bin(Kind::add, make_bin(Kind::mul, diff_node(n->a), n->b),
                      make_bin(Kind::mul, n->a, diff_node(n->b)));
    case Kind::div:
      // (a/b)' = a'/b - a b'/b^2
      return make_bin(Kind::sub, make_bin(Kind::div, diff_node(n->a), n->b),
                      make_bin(Kind::div, make_bin(Kind::mul, n->a, diff_node(n->b)),
                               make_pow(n->b, 2)));
    case Kind::neg: return make_neg(diff_node(n->a));
    case Kind::pow:
      return make_bin(Kind::mul,
                      make_bin(Kind::mul, make_const(static_cast<double>(n->exponent)),
                               make_pow(n->a, n->exponent - 1)),
                      diff_node(n->a));
    case Kind::call: return diff_call(*n);
  }
  return make_const(0.0);
}

void print_complex(std::ostream& os, Complex c) {
  if (c.imag() == 0.0) {
    os << c.real();
  } else if (c.real() == 0.0) {
    if (c.imag() == 1.0)
      os << "i";
    else
      os << c.imag() << "*i";
  } else {
    os << "(" << c.real() << "+" << c.imag() << "*i)";
  }
}

int precedence(Kind k) {
  switch (k) {
    case Kind::add:
    case Kind::sub: return 1;
    case Kind::mul:
    case Kind::div: return 2;
    case Kind::neg: return 3;
    case Kind::pow: return 4;
    default: return 5;
  }
}

void print_node(std::ostream& os, const Expr::Node& n, int parent_prec) {
  int prec = precedence(n.kind);
  bool parens = prec < parent_prec;
  if (parens) os << "(";
  switch (n.kind) {
    case Kind::constant: print_complex(os, n.value); break;
    case Kind::variable: os << "z"; break;
    case Kind::add:
      print_node(os, *n.a, prec);
      os << " + ";
      print_node(os, *n.b, prec);
      break;
    case Kind::sub:
      print_node(os, *n.a, prec);
      os << " - ";
      print_node(os, *n.b, prec + 1);
      break;
    case Kind::mul:
      print_node(os, *n.a, prec);
      os << "*";
      print_node(os, *n.b, prec);
      break;
    case Kind::div:
      print_node(os, *n.a, prec);
      os << "/";
      print_node(os, *n.b, prec + 1);
      break;
    case Kind::neg:
      os << "-";
      print_node(os, *n.a, prec + 1);
      break;
    case Kind::pow:
      print_node(os, *n.a, prec + 1);
      os << "^" << n.exponent;
      break;
    case Kind::call:
      os << func_name(n.func) << "(";
      print_node(os, *n.a, 0);
      os << ")";
      break;
  }
  if (parens) os << ")";
}

}  // namespace

Complex Expr::eval(Complex z) const {
  if (!node_) throw DomainError("evaluating empty expression");
  return eval_node(*node_, z);
}

Expr Expr::derivative() const {
  if (!node_) throw DomainError("differentiating empty expression");
  return Expr(diff_node(node_));
}

std::string Expr::print() const {
  if (!node_) return "";
  std::ostringstream os;
  os.precision(17);
  print_node(os, *node_, 0);
  return os.str();
}

Expr parse_expr(const std::string& text) { return Expr(Parser(text).run()); }

Expr expr_constant(Complex c) { return Expr(make_const(c)); }
Expr expr_variable() { return Expr(make_var()); }

const std::vector<NamedWeierstrass>& weierstrass_presets() {
  static const std::vector<NamedWeierstrass> presets = {
      {"enneper", "z", "2*z", "Enneper surface data g = z, h = 2z"},
      {"tanh-darboux", "z - tanh(z + 1)", "2*z",
       "spectral transform of the Enneper data at t = 1/2 with ghat(0) = -tanh(1)"},
  };
  return presets;
}

Expr tanh_darboux_ghat(Complex z0) {
  NodePtr shifted = make_bin(Kind::sub, make_var(), make_const(z0));
  return Expr(make_bin(Kind::sub, make_var(), make_call(Func::tanh_, shifted)));
}

}  // namespace isolab
