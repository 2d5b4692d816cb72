#ifndef WCALC_ERRORS_HPP
#define WCALC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcalc {

// Root of every library error. `kind()` is a stable short identifier that
// ends up in JSON error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain-error", w) {}
};

struct InvalidParameter : Error {
  InvalidParameter(const std::string& field, const std::string& w)
      : Error("invalid-parameter", field + ": " + w), field(field) {}
  std::string field;
};

struct TableExhausted : Error {
  TableExhausted(std::size_t index, std::size_t length)
      : Error("table-exhausted", "index " + std::to_string(index) +
                                     " beyond table of length " +
                                     std::to_string(length)),
        index(index) {}
  std::size_t index;
};

struct HorizonTooSmall : Error {
  HorizonTooSmall(std::size_t got, std::size_t need)
      : Error("horizon-too-small", "horizon " + std::to_string(got) +
                                       " below required " +
                                       std::to_string(need)) {}
};

struct PreconditionFailed : Error {
  explicit PreconditionFailed(const std::string& w)
      : Error("precondition-failed", w) {}
};

struct SupNotAttained : Error {
  explicit SupNotAttained(const std::string& w)
      : Error("sup-not-attained", w) {}
};

struct MaximizerOnBoundary : Error {
  explicit MaximizerOnBoundary(const std::string& w)
      : Error("maximizer-on-boundary", w) {}
};

struct OrderViolation : Error {
  OrderViolation(double alpha, double beta, std::size_t j)
      : Error("order-violation",
              "matrix order violated between indices " +
                  std::to_string(alpha) + " and " + std::to_string(beta) +
                  " at j=" + std::to_string(j)),
        alpha(alpha), beta(beta), j(j) {}
  double alpha, beta;
  std::size_t j;
};

// Phi^a_j log a <= Phi^b_j log b violated for an exponent family.
struct FamilyOrderViolation : Error {
  FamilyOrderViolation(double a, double b, std::size_t j)
      : Error("family-order-violation",
              "exponent family order violated between indices " +
                  std::to_string(a) + " and " + std::to_string(b) +
                  " at j=" + std::to_string(j)) {}
};

struct GridTooSmall : Error {
  explicit GridTooSmall(const std::string& w) : Error("grid-too-small", w) {}
};

}  // namespace wcalc

#endif
