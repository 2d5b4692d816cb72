#ifndef WCALC_JSON_HPP
#define WCALC_JSON_HPP

#include <json.hpp>

namespace wcalc {

// Insertion-ordered JSON: evidence maps and reports keep the order in which
// diagnostics were recorded, which keeps reports byte-stable.
using Json = nlohmann::ordered_json;

// Copy of `j` with every non-finite number replaced by "+inf", "-inf" or
// "nan". Plain nlohmann output would turn these into null.
Json sanitize(const Json& j);

// Inverse for single values: accepts a number or one of the three strings.
double json_to_double(const Json& j);

}  // namespace wcalc

#endif
