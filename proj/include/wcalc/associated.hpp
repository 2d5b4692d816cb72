#ifndef WCALC_ASSOCIATED_HPP
#define WCALC_ASSOCIATED_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wcalc/config.hpp"
#include "wcalc/json.hpp"
#include "wcalc/sequences.hpp"
#include "wcalc/verdict.hpp"

namespace wcalc {

// Horizon used for maximizer searches on families that are log-convex by
// construction; evaluation there costs O(log j*) terms, so it can be huge.
inline constexpr std::size_t kClosedFormOmegaHorizon = std::size_t{1} << 30;

struct OmegaValue {
  double value = 0.0;
  std::optional<std::size_t> index;  // attaining j, sequence-backed only
};

// omega(t), either the associated function of a weight sequence,
// omega_M(t) = sup_j (j log t - log M_j), or an explicit evaluator. Values are
// plain doubles (they are logarithms already); sequence terms stay in log
// scale.
class OmegaFunction {
 public:
  // horizon == 0 picks kClosedFormOmegaHorizon for log-convex families and
  // the default horizon (or table length - 1) otherwise.
  static OmegaFunction from_sequence(WeightSequence M, std::size_t horizon = 0);
  static OmegaFunction from_function(std::function<double(double)> omega_of_t,
                                     std::string label, Json params = Json::object());

  // Evaluation at u = log t; t = 0 is u = -inf.
  OmegaValue at_log(double u) const;
  OmegaValue eval(double t) const;
  double operator()(double t) const { return eval(t).value; }

  const std::optional<WeightSequence>& sequence() const { return seq_; }
  std::size_t horizon() const { return horizon_; }
  Json describe() const;

 private:
  std::optional<WeightSequence> seq_;
  std::function<double(double)> fn_;
  std::string label_;
  Json params_;
  std::size_t horizon_ = 0;
  bool bisect_ = false;
};

// omega_M(t) evaluated with an explicit horizon for the maximizer search.
OmegaValue omega_eval(const OmegaFunction& w, double t,
                      std::optional<std::size_t> horizon = std::nullopt);

// sup_j (j u - log M_j) over 0 <= j <= horizon by exhaustive scan.
OmegaValue omega_exhaustive(const WeightSequence& M, double u, std::size_t horizon);

struct ConjugateResult {
  double value = 0.0;
  double u_star = 0.0;  // log of the maximizing t
};

// phi*(s) = sup_u (s u - omega(e^u)) over the grid, refined by golden
// section around the best grid point.
ConjugateResult young_conjugate(const OmegaFunction& w, double s,
                                const LogGrid& grid = {});

// (1/ell) phi*(ell j)
double assoc_matrix_term(const OmegaFunction& w, double ell, std::size_t j,
                         const LogGrid& grid = {});

// sup_t (j log t - omega(t)); equals log M_j for omega = omega_M with M
// log-convex, normalized, with divergent roots.
double recover_term(const OmegaFunction& w, std::size_t j, const LogGrid& grid = {});

// Sequence j -> (1/ell) phi*(ell j).
WeightSequence from_omega(const OmegaFunction& w, double ell, const LogGrid& grid = {});

enum class AssocMode { bigO, smallO, numeric_ratio };
AssocMode parse_assoc_mode(const std::string& s);
std::string to_string(AssocMode m);

// bigO: some c <= c_max with sup_j [log N_j - (1/c) log M_{cj}] stabilized.
// smallO: every c <= c_max with sup_j [(1/c) log N_{cj} - log M_j] stabilized.
// numeric_ratio: omega_M / omega_N over the grid.
Verdict assoc_relation_check(const WeightSequence& M, const WeightSequence& N,
                             AssocMode mode, std::size_t c_max, std::size_t horizon,
                             const LogGrid& grid = {}, const Thresholds& th = {});

struct OmegaRow {
  double t = 0.0;
  double omega = 0.0;
  std::optional<std::size_t> index;
};

// omega over the grid; throws DomainError if the evaluated values are not
// non-decreasing and convex in log t (to 1e-9).
std::vector<OmegaRow> omega_table(const OmegaFunction& w, const LogGrid& grid);
std::string omega_csv(const std::vector<OmegaRow>& rows);

}  // namespace wcalc

#endif
