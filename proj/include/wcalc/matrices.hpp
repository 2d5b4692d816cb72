#ifndef WCALC_MATRICES_HPP
#define WCALC_MATRICES_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcalc/config.hpp"
#include "wcalc/json.hpp"
#include "wcalc/sequences.hpp"
#include "wcalc/verdict.hpp"

namespace wcalc {

enum class MatrixKind { ScaleFamily, PTTMatrix, SigmaMatrix, MatrixScale, ExponentFamilyScale, Generic };

// One-parameter family c -> M^(c). Elements are built on demand and cached so
// their memo tables survive across queries.
class WeightMatrix {
 public:
  // M^(c)_j = c^{Phi_j} M_j
  static WeightMatrix scale_family(WeightSequence M, ExponentSequence phi);
  // M^(c)_j = c^{j^sigma} j^{tau j^sigma}
  static WeightMatrix ptt(double tau, double sigma);
  // M^(tau)_j = tau^{j^sigma} j^{tau j^sigma}
  static WeightMatrix sigma(double sigma);
  // N^(c)_j c^{Phi_j}
  static WeightMatrix matrix_scale(WeightMatrix N, ExponentSequence phi);
  // c^{Phi^c_j} M_j
  static WeightMatrix exponent_family_scale(WeightSequence M, ExponentFamily F);
  static WeightMatrix generic(std::vector<std::pair<double, WeightSequence>> elements);

  WeightSequence element(double c) const;
  double term(double c, std::size_t j) const { return element(c).log_term(j); }

  MatrixKind kind() const;
  Json describe() const;
  // ScaleFamily only.
  std::optional<ExponentSequence> phi() const;
  std::optional<WeightSequence> base() const;
  // Generic only: the indices supplied at construction.
  std::vector<double> indices() const;

  struct Impl;

 private:
  explicit WeightMatrix(std::shared_ptr<Impl> p) : impl_(std::move(p)) {}
  std::shared_ptr<Impl> impl_;
};

// Validates the pointwise order log M^(a)_j <= log M^(b)_j for consecutive
// grid indices a < b and j <= horizon (OrderViolation), and for
// ExponentFamilyScale the requirement Phi^a_j log a <= Phi^b_j log b.
WeightMatrix build_matrix(WeightMatrix MM, const std::vector<double>& index_grid,
                          std::size_t horizon = 64);

// Convexity of Phi, monotonicity of Phi_j / j, and monotone quotients of
// c^{Phi_j} M_j at c = 1, over [1, horizon].
Json phi_growth_diagnostics(const WeightSequence& M, const ExponentSequence& phi,
                            std::size_t horizon);

enum class MatrixCondTag { L, mg, dc, rai, FdB, BR, sc, constant };
enum class Flavor { Roumieu, Beurling };

struct MatrixConditionId {
  MatrixCondTag tag = MatrixCondTag::L;
  Flavor flavor = Flavor::Roumieu;
  static MatrixConditionId parse(const std::string& name, const std::string& flavor = "roumieu");
  std::string name() const;
};
std::string to_string(Flavor f);

struct MatrixCheckOptions {
  double h = 2.0;                                  // C in the L condition
  std::size_t fdb_horizon = kDefaultFdbHorizon;    // cap for the O(K^3) DP
  std::size_t extension_steps = 4;                 // geometric steps past the grid
  Thresholds th{};
};

struct IndexResult {
  double alpha = 0.0;
  Verdict verdict;
  std::optional<double> beta;
  std::optional<double> constant;
};

struct MatrixReport {
  MatrixConditionId cond;
  std::vector<IndexResult> per_index;
  Json extra = Json::object();
  Status overall() const;
};

MatrixReport check_matrix_condition(const WeightMatrix& MM, const MatrixConditionId& cond,
                                    const std::vector<double>& index_grid, std::size_t horizon,
                                    const MatrixCheckOptions& opt = {});

Json to_json(const MatrixReport& r);

// Sequence j -> log m_j = log M_j - log j!.
WeightSequence reduced_sequence(const WeightSequence& M);

// log (m°)_k for k = 0..K, where m is given by its log terms.
std::vector<double> composition_sequence(const WeightSequence& m, std::size_t K);

// For each c a partner d (larger for Roumieu, smaller for Beurling) whose gap
// Phi^d_j/j log d - Phi^c_j/j log c has a non-vanishing positive tail.
Verdict check_exponent_family_absorption(const ExponentFamily& F, Flavor flavor,
                                         const std::vector<double>& index_grid,
                                         std::size_t horizon, const Thresholds& th = {});

}  // namespace wcalc

#endif
