#ifndef WCALC_WITNESS_HPP
#define WCALC_WITNESS_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "wcalc/config.hpp"
#include "wcalc/json.hpp"
#include "wcalc/matrices.hpp"
#include "wcalc/sequences.hpp"
#include "wcalc/verdict.hpp"

namespace wcalc {

enum class BoundsSource { synthetic, theta, user };

// log sup_K |f^(j)| for j = 0..J.
struct DerivBounds {
  std::vector<double> bounds;
  std::string label;
  BoundsSource source = BoundsSource::user;

  // CSV with columns j,log_bound (header optional, rows in any order but
  // indices must cover 0..J exactly once).
  static DerivBounds from_csv(const std::string& text, std::string label = "csv");
  // {"label": ..., "bounds": [...]} or a bare array.
  static DerivBounds from_json(const Json& j);
  static DerivBounds synthetic(std::vector<double> bounds, std::string label);
  Json to_json() const;
};

std::string to_string(BoundsSource s);

struct ThetaOptions {
  bool shift_nu = false;  // use nu_{j+1} in place of nu_j
};

// Partial sum of sum_j N_j / (2^j nu_j^j) exp(2 i nu_j t) over j <= T + 1, so
// the omitted tail is at most 2^{-T}.
std::complex<double> theta_eval(const WeightSequence& N, double t, std::size_t truncation,
                                const ThetaOptions& opt = {});

// log |theta_N^(k)(0)| = log sum_j N_j 2^{k-j} nu_j^{k-j}, j <= truncation.
double theta_derivative_log_bound(const WeightSequence& N, std::size_t k,
                                  std::size_t truncation, const ThetaOptions& opt = {});

DerivBounds theta_bounds(const WeightSequence& N, std::size_t J, std::size_t truncation,
                         const ThetaOptions& opt = {});

// sup_j (f_j - Phi_j log h - log M_j)
double seminorm(const DerivBounds& f, const WeightSequence& M, const ExponentSequence& phi,
                double h);

struct MembershipCell {
  double c = 0.0;
  double h = 0.0;
  double seminorm = 0.0;
  std::size_t argmax = 0;
  bool stable = false;
  bool diverging = false;
};

struct MembershipReport {
  Verdict roumieu;
  Verdict beurling;
  std::vector<MembershipCell> cells;
};

MembershipReport classify_membership(const DerivBounds& f, const WeightMatrix& MM,
                                     const ExponentSequence& phi,
                                     const std::vector<double>& index_grid,
                                     const std::vector<double>& h_grid,
                                     const Thresholds& th = {});

Json to_json(const MembershipReport& r);

}  // namespace wcalc

#endif
