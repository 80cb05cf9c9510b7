#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "nikulin/lattice.hpp"
#include "nikulin/model.hpp"

namespace nikulin {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Vector expressions over the named classes of Lambda_Y.
///
///   expr ::= [sign] term { sign term }
///   term ::= [int '*'] name [ '(' int ')' ]
///   sign ::= '+' | '-'
///   int  ::= ['-'] digit { digit }        (only inside parentheses may it be signed)
///   name ::= letter { letter | digit }
///
/// Blanks are ignored between tokens. Names are those of NamedModel::named:
/// L(i), u(k) or u1..u6, eps(k) or eps1..eps8, e1, e2, ew, gamma1, gamma2,
/// deltaY, SigmaY, w. Example: "2*L(1) - deltaY".
LatticeVector parse_vector_expression(const NamedModel& model, std::string_view text);

/// Writes v in the basis names u1..u6, eps1..eps8, gamma1, gamma2, in a form
/// parse_vector_expression reads back.
std::string format_basis_expression(const NamedModel& model, const LatticeVector& v);

}  // namespace nikulin
