#ifndef WCALC_RELATIONS_HPP
#define WCALC_RELATIONS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wcalc/config.hpp"
#include "wcalc/sequences.hpp"
#include "wcalc/verdict.hpp"

namespace wcalc {

enum class RelationTag {
  preceq, approx, triangle, pointwise_le, quotient_le, preceq_phi, approx_phi, triangle_phi
};

struct RelationId {
  RelationTag tag = RelationTag::preceq;
  std::optional<ExponentSequence> phi;  // present iff a *_phi tag

  static RelationId parse(const std::string& name,
                          std::optional<ExponentSequence> phi = std::nullopt);
  std::string name() const;
};

Verdict compare(const WeightSequence& M, const WeightSequence& N,
                const RelationId& rel, std::size_t horizon, const Thresholds& th = {});

// Every pair of the list Phi-equivalent; also reports the spread of the
// Phi-normalized log ratios per pair.
Verdict compare_phi_constancy(const std::vector<WeightSequence>& MM,
                              const ExponentSequence& phi, std::size_t horizon,
                              const Thresholds& th = {});

}  // namespace wcalc

#endif
