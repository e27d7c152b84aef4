#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace tpl {

/// Characteristic, degree and monic modulus (low-to-high coefficients, length k+1).
struct FieldDescriptor {
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  std::vector<std::uint32_t> modulus;

  static FieldDescriptor prime(std::uint32_t p);
  /// Built-in modulus for orders 4, 8, 9, 16, 25, 27, 49 (and any prime).
  static FieldDescriptor standard(std::uint32_t p, std::uint32_t k);

  std::uint32_t order() const;
  bool operator==(const FieldDescriptor&) const = default;
};

class FieldElement;

/// GF(p^k). Instances are interned and live for the whole program.
class Field {
 public:
  static const Field& get(const FieldDescriptor& desc);
  static const Field& prime(std::uint32_t p);
  /// Field of prime-power order q with the built-in modulus.
  static const Field& of_order(std::uint32_t q);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  const FieldDescriptor& descriptor() const noexcept { return desc_; }
  std::uint32_t characteristic() const noexcept { return desc_.p; }
  std::uint32_t degree() const noexcept { return desc_.k; }
  std::uint32_t order() const noexcept { return order_; }

  // Raw arithmetic on canonical indices 0..order-1.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    return desc_.k == 1 ? (a + b) % desc_.p : add_[a * order_ + b];
  }
  std::uint32_t neg(std::uint32_t a) const noexcept {
    return desc_.k == 1 ? (a == 0 ? 0 : desc_.p - a) : neg_[a];
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return desc_.k == 1 ? static_cast<std::uint32_t>((std::uint64_t{a} * b) % desc_.p)
                        : mul_[a * order_ + b];
  }
  /// Throws DIVISION_BY_ZERO on 0.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t from_int(long long n) const noexcept;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement element(std::uint32_t index) const;
  FieldElement from_integer(long long n) const;
  FieldElement from_coefficients(const std::vector<std::uint32_t>& coeffs) const;

  std::vector<std::uint32_t> coefficients(std::uint32_t index) const;
  std::uint32_t index_of(const std::vector<std::uint32_t>& coeffs) const;

 private:
  explicit Field(FieldDescriptor desc);
  friend struct FieldRegistry;

  FieldDescriptor desc_;
  std::uint32_t order_;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

/// Canonical element: an index whose base-p digits are the polynomial coefficients.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const Field& f, std::uint32_t index) : field_(&f), v_(index) {}

  const Field* field() const noexcept { return field_; }
  std::uint32_t index() const noexcept { return v_; }
  bool is_zero() const noexcept { return v_ == 0; }
  bool is_one() const noexcept { return v_ == 1; }
  std::vector<std::uint32_t> coefficients() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }
  FieldElement inverse() const;
  FieldElement pow(unsigned long long e) const;

  bool operator==(const FieldElement& o) const noexcept {
    return field_ == o.field_ && v_ == o.v_;
  }
  bool operator!=(const FieldElement& o) const noexcept { return !(*this == o); }

  /// "3" over prime fields, "c0,c1,...,c{k-1}" over extensions.
  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  std::uint32_t v_ = 0;
};

/// Valuation or depth: a finite integer, a truncation floor, or +infinity.
class Valuation {
 public:
  enum class Kind { Finite, Saturated, Infinite };

  static Valuation finite(int v) { return {Kind::Finite, v}; }
  static Valuation saturated(int bound) { return {Kind::Saturated, bound}; }
  static Valuation infinite() { return {Kind::Infinite, 0}; }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  /// Finite value, or the truncation floor when saturated.
  int value() const noexcept { return value_; }
  /// True when the quantity is only known to be at least value().
  bool beyond_truncation() const noexcept { return kind_ != Kind::Finite; }

  bool operator==(const Valuation&) const = default;
  std::string to_string() const;

 private:
  Valuation(Kind k, int v) : kind_(k), value_(v) {}
  Kind kind_;
  int value_;
};

/// Power series over GF(p^k) truncated at t^order.
class Jet {
 public:
  static Jet zero(const Field& f, int order);
  static Jet exact_zero(const Field& f, int order);
  static Jet constant(const FieldElement& c, int order);
  static Jet monomial(const FieldElement& c, int power, int order);
  static Jet from_coefficients(const std::vector<FieldElement>& coeffs, int order);

  const Field& field() const noexcept { return *field_; }
  int order() const noexcept { return order_; }
  bool is_exact_zero() const noexcept { return exact_zero_; }
  FieldElement coefficient(int i) const;

  Valuation valuation() const;
  /// Coefficient at the valuation; zero when the jet has no finite valuation.
  FieldElement leading_coefficient() const;
  bool is_unit() const;

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator-() const;
  /// Division by a unit jet.
  Jet operator/(const Jet& o) const;
  Jet inverse() const;

  bool operator==(const Jet& o) const;
  std::string to_string() const;

 private:
  Jet(const Field& f, int order);
  void check_compatible(const Jet& o) const;

  const Field* field_;
  int order_;
  std::vector<std::uint32_t> c_;
  bool exact_zero_ = false;
};

/// val(a-b) - val(a) for equal finite valuations.
Valuation cancellation_depth(const Jet& a, const Jet& b);

struct TieDepthResult {
  Valuation lhs;  ///< valuation of ad - bc
  Valuation rhs;  ///< valuation of ad/(bc) - 1
  bool equal;
};

TieDepthResult tie_depth_crossratio_check(const Jet& a, const Jet& b, const Jet& c, const Jet& d);

/// Dense matrix over a finite field, row-major, entries stored as raw indices.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(const Field& f, std::size_t rows, std::size_t cols);

  const Field& field() const noexcept { return *field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElement at(std::size_t r, std::size_t c) const { return {*field_, raw(r, c)}; }
  void set(std::size_t r, std::size_t c, const FieldElement& x);
  std::uint32_t raw(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::uint32_t& raw(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  FieldMatrix operator*(const FieldMatrix& o) const;
  FieldMatrix operator+(const FieldMatrix& o) const;
  bool operator==(const FieldMatrix& o) const;

 private:
  const Field* field_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> data_;
};

bool is_prime(std::uint64_t n);
/// Decomposes q = p^k; returns false when q is not a prime power.
bool prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& k);

}  // namespace tpl
