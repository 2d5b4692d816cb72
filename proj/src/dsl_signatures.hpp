#ifndef WCALC_DSL_SIGNATURES_HPP
#define WCALC_DSL_SIGNATURES_HPP

#include <string>
#include <vector>

namespace wcalc::dsl {

struct Param {
  std::string name;
  bool required;
};

struct Signature {
  std::string keyword;
  std::string name;
  std::vector<Param> params;
};

// nullptr when `name` is not a known constructor/operation for `keyword`.
const Signature* find_signature(const std::string& keyword, const std::string& name);
std::vector<std::string> names_for(const std::string& keyword);

}  // namespace wcalc::dsl

#endif
