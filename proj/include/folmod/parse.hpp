#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folmod/bipoly.hpp"

namespace folmod {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) +
                           ", column " + std::to_string(col)),
        line(line),
        col(col) {}
  int line, col;
};

struct ParseResult {
  enum Kind { kPoly, kForm, kLogPresentation } kind;
  Tower tower;
  BiPoly poly;
  OneForm form;
  LogPresentation logp;
};

// Parses one expression in the input grammar (tokens x y i dx dy d( ) + -
// * / ^ and rational literals). The token `i` adjoins x^2+1 on first use.
ParseResult parse_expression(const std::string& text, Tower tower = {});

struct DivisorEntry {
  std::string label;
  TowerElem coeff;
  std::optional<BiPoly> equation;
};

struct InputFile {
  enum Kind { kFoliation, kDivisor, kList } kind;
  Tower tower;
  // foliation: exactly one of these
  std::optional<OneForm> form;
  std::optional<LogPresentation> logp;
  // list:
  std::vector<BiPoly> polys;
  // divisor:
  std::vector<DivisorEntry> entries;
};

// Parses a whole input file: header line `foliation:` | `divisor:` | `list:`
// then one expression (or comma-separated list) per line; `#` comments.
InputFile parse_file(const std::string& text);

// canonical printers (parse of the printed form reproduces the value)
std::string print_form(const Tower& t, const OneForm& w);
std::string print_log(const Tower& t, const LogPresentation& lp);

}  // namespace folmod
