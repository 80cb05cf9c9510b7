#include "nikulin/expression.hpp"

#include <cctype>
#include <optional>

namespace nikulin {

namespace {

class Parser {
 public:
  Parser(const NamedModel& model, std::string_view text) : model_(model), text_(text) {}

  LatticeVector parse() {
    LatticeVector total = LatticeVector::zero(model_.lambda_y());
    skip_blanks();
    if (at_end()) throw ParseError("empty expression", pos_);
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_blanks();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      LatticeVector t = term();
      total = sign > 0 ? total + t : total - t;
      first = false;
      skip_blanks();
    }
    return total;
  }

 private:
  LatticeVector term() {
    std::optional<Integer> coefficient;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coefficient = integer(false);
      skip_blanks();
      if (peek() != '*') throw ParseError("expected '*' after coefficient", pos_);
      ++pos_;
      skip_blanks();
    }
    const std::size_t name_pos = pos_;
    if (!std::isalpha(static_cast<unsigned char>(peek()))) throw ParseError("expected a vector name", pos_);
    std::string name;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) name += text_[pos_++];
    skip_blanks();
    std::optional<Integer> arg;
    if (peek() == '(') {
      ++pos_;
      skip_blanks();
      arg = integer(true);
      skip_blanks();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
    }
    try {
      LatticeVector v = model_.named(name, arg);
      return coefficient ? *coefficient * v : v;
    } catch (const DomainError& e) {
      throw ParseError(e.what(), name_pos);
    }
  }

  Integer integer(bool allow_sign) {
    std::string digits;
    if (allow_sign && peek() == '-') digits += text_[pos_++];
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected an integer", pos_);
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += text_[pos_++];
    return Integer(digits);
  }

  void skip_blanks() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  const NamedModel& model_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LatticeVector parse_vector_expression(const NamedModel& model, std::string_view text) {
  return Parser(model, text).parse();
}

std::string format_basis_expression(const NamedModel& model, const LatticeVector& v) {
  if (!v.lattice()->same_as(*model.lambda_y())) throw DomainError("expected a vector of LY");
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Integer& c = v[i];
    if (c == 0) continue;
    std::string name;
    if (i < layout::kY_E8) name = "u" + std::to_string(i + 1);
    else if (i < layout::kY_Gamma1) name = "eps" + std::to_string(i - layout::kY_E8 + 1);
    else name = i == layout::kY_Gamma1 ? "gamma1" : "gamma2";
    const Integer magnitude = abs(c);
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (magnitude != 1) out += magnitude.get_str() + "*";
    out += name;
  }
  return out.empty() ? "0" : out;
}

}  // namespace nikulin
