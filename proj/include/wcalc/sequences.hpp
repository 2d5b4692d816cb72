#ifndef WCALC_SEQUENCES_HPP
#define WCALC_SEQUENCES_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wcalc/json.hpp"

namespace wcalc {

// Phi_j >= 0. Linear: j. Power{sigma}: j^sigma. Table: explicit values.
class ExponentSequence {
 public:
  enum class Kind { Linear, Power, Table };

  static ExponentSequence linear();
  static ExponentSequence power(double sigma);
  static ExponentSequence table(std::vector<double> values);

  double operator()(std::size_t j) const;
  Kind kind() const { return kind_; }
  double sigma() const { return sigma_; }
  std::optional<std::size_t> length() const;

  Json describe() const;
  std::string dsl() const;

 private:
  Kind kind_ = Kind::Linear;
  double sigma_ = 1.0;
  std::shared_ptr<const std::vector<double>> values_;
};

// a -> Phi^a. Constant families return the same sequence for every index.
class ExponentFamily {
 public:
  static ExponentFamily constant(ExponentSequence phi);
  static ExponentFamily generic(std::function<ExponentSequence(double)> f,
                                std::string label);

  ExponentSequence at(double a) const;
  bool is_constant() const { return constant_.has_value(); }
  Json describe() const;

 private:
  std::optional<ExponentSequence> constant_;
  std::function<ExponentSequence(double)> fn_;
  std::string label_;
};

// Lazily evaluated weight sequence, stored as log M_j. Copies share the
// memo cache.
class WeightSequence {
 public:
  static WeightSequence gevrey(double s);
  static WeightSequence ptt(double tau, double sigma);
  static WeightSequence scaled(WeightSequence base, ExponentSequence phi,
                               double c);
  // Entries in linear scale (must be positive).
  static WeightSequence table(const std::vector<double>& linear_terms);
  static WeightSequence table_log(std::vector<double> log_terms);
  // Sequence given by an arbitrary log-term evaluator; `family` and `params`
  // only feed describe().
  static WeightSequence custom(std::string family, Json params,
                               std::function<double(std::size_t)> log_term);
  // Reduced quotients set to 1 below `patch`, unchanged from there on.
  static WeightSequence regularized(WeightSequence base, std::size_t patch);

  double log_term(std::size_t j) const;
  // log mu_j, with mu_0 = 1.
  double quotient_log(std::size_t j) const;
  // log m_j = log M_j - log j!.
  double reduced_log(std::size_t j) const;
  // log M_0 .. log M_n.
  std::vector<double> log_terms(std::size_t n) const;

  const std::string& family() const;
  Json describe() const;
  std::optional<std::size_t> length() const;
  // True for families that are log-convex by construction, so maximizer
  // searches over mu may use bisection.
  bool known_log_convex() const;
  // For Regularized: the patch index j''. 0 otherwise.
  std::size_t patch_index() const;
  std::optional<WeightSequence> base() const;

  struct Impl;

 private:
  explicit WeightSequence(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

// Builds a sequence from its JSON description {family, params}.
WeightSequence make_sequence(const Json& desc);

// Strongly log-convex normalized equivalent of M on [0, horizon], obtained by
// replacing the reduced quotients before the first index j'' from which they
// are non-decreasing and at least 1. Returns M itself (patch index 0) when no
// patch is needed. Throws PreconditionFailed when j'' > horizon / 2.
WeightSequence regularize_slc(const WeightSequence& M, std::size_t horizon);

}  // namespace wcalc

#endif
