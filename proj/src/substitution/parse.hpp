#ifndef APTK_SUBSTITUTION_PARSE_HPP
#define APTK_SUBSTITUTION_PARSE_HPP

#include "substitution/rule.hpp"

namespace aptk {

struct ParseError : std::runtime_error {
    int line = 0, column = 0;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg), line(l), column(c) {}
};

// Parse a rule file (JSON text, UTF-8). Performs structural parsing only;
// call rule.validate() for the geometric/combinatorial invariants.
SubstitutionRule parse_rule(const std::string& text);

// Deterministic serialization; parse(serialize(r)) reproduces r.
std::string serialize_rule(const SubstitutionRule& rule);

} // namespace aptk

#endif
