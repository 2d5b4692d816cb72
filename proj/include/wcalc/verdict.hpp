#ifndef WCALC_VERDICT_HPP
#define WCALC_VERDICT_HPP

#include <cstddef>
#include <optional>
#include <string>

#include "wcalc/json.hpp"

namespace wcalc {

enum class Status { Holds, Fails, Undetermined };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

// Index (or index pair) at which a defining inequality is violated.
struct Witness {
  std::size_t first = 0;
  std::optional<std::size_t> second;
};

// Three-valued finite-horizon result. Fails always has a witness; evidence is
// an ordered JSON object of named diagnostics.
struct Verdict {
  std::string condition;
  Status status = Status::Undetermined;
  std::optional<Witness> witness;
  std::size_t horizon = 0;
  Json evidence = Json::object();

  static Verdict holds(std::string cond, std::size_t horizon);
  static Verdict fails(std::string cond, std::size_t horizon, Witness w);
  static Verdict undetermined(std::string cond, std::size_t horizon);

  bool is_holds() const { return status == Status::Holds; }
  bool is_fails() const { return status == Status::Fails; }
  bool is_undetermined() const { return status == Status::Undetermined; }
};

Json to_json(const Verdict& v);

// Conjunction in the three-valued sense: any Fails wins, then Undetermined.
Status combine_all(std::initializer_list<Status> parts);

}  // namespace wcalc

#endif
