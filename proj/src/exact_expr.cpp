#include "tvo/exact_expr.hpp"

#include <cctype>
#include <cmath>

#include "tvo/errors.hpp"

namespace tvo {

namespace {

// Recursive-descent evaluator over
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := unary ('^' signed-integer)?
//   unary  := '-' unary | primary
//   primary:= number | 'i' | 'pi' | name '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  cd run() {
    const cd v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SchemaError,
                "closed form '" + text_ + "' at position " +
                    std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(
                                      text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  cd expr() {
    cd v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  cd term() {
    cd v = factor();
    for (;;) {
      if (eat('*'))
        v *= factor();
      else if (eat('/')) {
        const cd d = factor();
        if (std::abs(d) == 0.0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  cd factor() {
    cd v = unary();
    if (eat('^')) {
      const bool neg = eat('-');
      skip_space();
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("exponent must be an integer");
      long long e = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        e = 10 * e + (text_[pos_++] - '0');
      cd r = 1.0;
      for (long long k = 0; k < e; ++k) r *= v;
      v = neg ? cd(1.0) / r : r;
    }
    return v;
  }

  cd unary() { return eat('-') ? -unary() : primary(); }

  cd primary() {
    skip_space();
    if (eat('(')) {
      const cd v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail("expected a number, name, or '('");
  }

  cd number() {
    size_t end = pos_;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) ||
            text_[end] == '.'))
      ++end;
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      size_t k = end + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) {
        while (k < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[k])))
          ++k;
        end = k;
      }
    }
    const std::string lit = text_.substr(pos_, end - pos_);
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(lit, &used);
    } catch (const std::exception&) {
      fail("bad numeric literal '" + lit + "'");
    }
    if (used != lit.size()) fail("bad numeric literal '" + lit + "'");
    pos_ = end;
    return v;
  }

  cd name() {
    size_t end = pos_;
    while (end < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[end])))
      ++end;
    const std::string id = text_.substr(pos_, end - pos_);
    pos_ = end;
    if (id == "i") return cd(0.0, 1.0);
    if (id == "pi") return kPi;
    if (!eat('(')) fail("unknown constant '" + id + "'");
    const cd arg = expr();
    if (!eat(')')) fail("expected ')' after argument of " + id);
    if (id == "sqrt") return std::sqrt(arg);
    if (id == "exp") return std::exp(arg);
    if (id == "conj") return std::conj(arg);
    fail("unknown function '" + id + "'");
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

cd evaluate_closed_form(const std::string& text) { return Parser(text).run(); }

}  // namespace tvo
