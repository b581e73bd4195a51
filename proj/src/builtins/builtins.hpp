#ifndef APTK_BUILTINS_BUILTINS_HPP
#define APTK_BUILTINS_BUILTINS_HPP

#include "substitution/rule.hpp"

#include <string>
#include <vector>

namespace aptk {

std::vector<std::string> builtin_names();
bool is_builtin(const std::string& name);
SubstitutionRule builtin_rule(const std::string& name);
std::string builtin_rule_text(const std::string& name);  // serialized form

} // namespace aptk

#endif
