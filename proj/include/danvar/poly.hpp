#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace danvar {

using Rational = mpq_class;
using Integer = mpz_class;

/// One exponent per variable slot. Slots 0..n-1 are the x-variables; the
/// trailing slots are named by the Ring that owns the polynomial.
using Exponents = std::vector<std::int32_t>;

/// Graded-lexicographic order, largest first: total degree, then
/// lexicographic with slot 0 > slot 1 > ... (x1 > ... > xn > y > z > u).
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Variable naming and Laurent context. Polynomials themselves only carry a
/// slot count; the ring is needed for parsing and printing.
class Ring {
 public:
  Ring(int n, std::vector<std::string> tail, bool laurent = false);

  /// x1..xn, y, z, u
  static Ring ambient(int n, bool laurent = false);

  int n() const { return n_; }
  int nvars() const { return n_ + static_cast<int>(tail_.size()); }
  bool laurent() const { return laurent_; }
  std::string name(int slot) const;
  std::optional<int> slot_of(std::string_view name) const;
  Ring with_laurent(bool laurent) const { return Ring(n_, tail_, laurent); }

 private:
  int n_;
  std::vector<std::string> tail_;
  bool laurent_;
};

/// Integer or minus infinity (the degree of 0).
class ExtDegree {
 public:
  ExtDegree() = default;  // -inf
  explicit ExtDegree(std::int64_t v) : value_(v) {}
  static ExtDegree minus_infinity() { return ExtDegree(); }

  bool is_minus_infinity() const { return !value_.has_value(); }
  std::int64_t value() const;

  friend bool operator==(const ExtDegree&, const ExtDegree&) = default;
  friend std::strong_ordering operator<=>(const ExtDegree& a, const ExtDegree& b);
  friend ExtDegree operator+(const ExtDegree& a, const ExtDegree& b);
  friend std::ostream& operator<<(std::ostream& os, const ExtDegree& d);

 private:
  std::optional<std::int64_t> value_;
};

/// Sparse multivariate (Laurent) polynomial over Q. Terms are kept in
/// graded-lex order with no zero coefficients.
class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c);
  static Poly monomial(Exponents e, const Rational& c = 1);
  static Poly variable(int nvars, int slot, std::int32_t power = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Rational coeff(const Exponents& e) const;
  bool is_constant() const;
  Rational constant_term() const;
  /// All exponents nonnegative.
  bool is_polynomial() const;

  /// Max / min exponent of a slot; 0 for the zero polynomial.
  std::int32_t degree_in(int slot) const;
  std::int32_t min_degree_in(int slot) const;
  std::int64_t total_degree() const;
  bool depends_on(int slot) const;

  void add_term(const Exponents& e, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned k) const;
  /// Multiply by the monomial x^shift (exponent addition with overflow check).
  Poly shifted(const Exponents& shift) const;
  Poly derivative(int slot) const;
  /// Coefficient of slot^power, as a polynomial with that slot's exponent zeroed.
  Poly coefficient_in(int slot, std::int32_t power) const;
  /// Replace the variable in `slot` by `value`. Negative powers of the slot
  /// require `value` to be a single term.
  Poly substitute(int slot, const Poly& value) const;
  /// Simultaneous substitution; std::nullopt keeps the variable. The result
  /// has `target_nvars` slots; kept variables must exist there.
  Poly compose(const std::vector<std::optional<Poly>>& images, int target_nvars) const;
  /// Set x_slot := 0 (polynomial in that slot required).
  Poly evaluate_zero(int slot) const;
  /// Drop or append trailing slots (dropped slots must not occur).
  Poly resized(int nvars) const;

 private:
  int nvars_ = 0;
  TermMap terms_;
};

Exponents add_exponents(const Exponents& a, const Exponents& b);

std::string to_string(const Poly& p, const Ring& ring);
Poly parse_poly(std::string_view text, const Ring& ring);

/// Positive integer weights on the x-variables and y; the z weight is derived
/// once a hypersurface (m, r) is bound. Slots past z carry weight 0.
struct WeightVector {
  std::vector<std::int64_t> dx;
  std::int64_t dy = 1;
  std::optional<std::int64_t> dz;

  WeightVector bound(const Exponents& m, int r) const;
  std::int64_t weight(const Exponents& e) const;
  std::string to_string() const;
};

ExtDegree weight_degree(const Poly& p, const WeightVector& w);
/// Terms of maximal weight. Throws std::invalid_argument on p == 0.
Poly principal_component(const Poly& p, const WeightVector& w);
bool is_homogeneous(const Poly& p, const WeightVector& w);

struct DivisionResult {
  Poly quotient;
  Poly remainder;
};

/// Division by a polynomial monic in `slot`; all other slots are treated as
/// coefficients (so Laurent x-coefficients are fine). Throws on non-monic Q.
DivisionResult y_division(const Poly& f, const Poly& q, int slot);

}  // namespace danvar
