#include "tpl/gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "tpl/error.hpp"

namespace tpl {

namespace {

constexpr std::uint32_t kMaxPrime = 1u << 16;
constexpr std::uint32_t kMaxExtensionOrder = 1024;

using Poly = std::vector<std::uint32_t>;  // low-to-high coefficients over GF(p)

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::make_tuple(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_tuple(new_r, r - quot * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - lead} * b[i]) % p);
    }
    trim(a);
  }
  return a;
}

bool irreducible(const Poly& m, std::uint32_t p) {
  const std::uint32_t k = static_cast<std::uint32_t>(m.size() - 1);
  // A reducible polynomial has a monic factor of degree at most k/2.
  for (std::uint32_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly f(d + 1);
      std::uint64_t x = idx;
      for (std::uint32_t i = 0; i < d; ++i) {
        f[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      f[d] = 1;
      if (poly_mod(m, f, p).empty()) return false;
    }
  }
  return true;
}

std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
  std::uint32_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& k) {
  if (q < 2) return false;
  std::uint32_t d = 2;
  while (q % d != 0) ++d;
  std::uint32_t e = 0, rest = q;
  while (rest % d == 0) {
    rest /= d;
    ++e;
  }
  if (rest != 1) return false;
  p = d;
  k = e;
  return true;
}

FieldDescriptor FieldDescriptor::prime(std::uint32_t p) { return FieldDescriptor{p, 1, {0, 1}}; }

FieldDescriptor FieldDescriptor::standard(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return prime(p);
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> builtin = {
      {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}}, {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},       {{3, 3}, {1, 2, 0, 1}}, {{5, 2}, {2, 4, 1}},
      {{7, 2}, {3, 6, 1}},
  };
  if (auto it = builtin.find({p, k}); it != builtin.end()) return FieldDescriptor{p, k, it->second};
  if (!is_prime(p) || k > 4) {
    fail(ErrorCode::InvalidDescriptor, "no built-in modulus for p=" + std::to_string(p) +
                                           " k=" + std::to_string(k));
  }
  // First monic irreducible in index order.
  const std::uint32_t count = ipow(p, k);
  for (std::uint32_t idx = 0; idx < count; ++idx) {
    Poly m(k + 1);
    std::uint32_t x = idx;
    for (std::uint32_t i = 0; i < k; ++i) {
      m[i] = x % p;
      x /= p;
    }
    m[k] = 1;
    if (m[0] != 0 && irreducible(m, p)) return FieldDescriptor{p, k, m};
  }
  fail(ErrorCode::InvalidDescriptor, "no irreducible polynomial found");
}

std::uint32_t FieldDescriptor::order() const { return ipow(p, k); }

struct FieldRegistry {
  std::mutex mu;
  std::map<std::tuple<std::uint32_t, std::uint32_t, Poly>, std::unique_ptr<Field>> fields;

  static FieldRegistry& instance() {
    static FieldRegistry reg;
    return reg;
  }

  const Field& get(const FieldDescriptor& d) {
    FieldDescriptor key = d;
    if (key.k == 1) key.modulus = {0, 1};
    std::lock_guard lock(mu);
    auto tag = std::make_tuple(key.p, key.k, key.modulus);
    auto it = fields.find(tag);
    if (it == fields.end()) {
      it = fields.emplace(tag, std::unique_ptr<Field>(new Field(key))).first;
    }
    return *it->second;
  }
};

Field::Field(FieldDescriptor desc) : desc_(std::move(desc)) {
  const std::uint32_t p = desc_.p, k = desc_.k;
  if (!is_prime(p) || p >= kMaxPrime) fail(ErrorCode::InvalidDescriptor, "p must be a prime below 65536");
  if (k < 1 || k > 4) fail(ErrorCode::InvalidDescriptor, "extension degree must be in 1..4");
  order_ = ipow(p, k);
  if (k == 1) {
    inv_.assign(p, 0);
    for (std::uint32_t a = 1; a < p; ++a) inv_[a] = inv_mod(a, p);
    return;
  }
  if (order_ > kMaxExtensionOrder) fail(ErrorCode::InvalidDescriptor, "extension field too large");
  if (desc_.modulus.size() != k + 1 || desc_.modulus[k] != 1) {
    fail(ErrorCode::InvalidDescriptor, "modulus must be monic of degree k");
  }
  for (auto c : desc_.modulus) {
    if (c >= p) fail(ErrorCode::InvalidDescriptor, "modulus coefficient out of range");
  }
  if (!irreducible(desc_.modulus, p)) fail(ErrorCode::InvalidDescriptor, "modulus is reducible");

  const std::uint32_t q = order_;
  add_.resize(std::size_t{q} * q);
  mul_.resize(std::size_t{q} * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  std::vector<Poly> polys(q);
  for (std::uint32_t a = 0; a < q; ++a) polys[a] = coefficients(a);
  for (std::uint32_t a = 0; a < q; ++a) {
    Poly n(k);
    for (std::uint32_t i = 0; i < k; ++i) n[i] = (p - polys[a][i]) % p;
    neg_[a] = index_of(n);
    for (std::uint32_t b = 0; b < q; ++b) {
      Poly s(k);
      for (std::uint32_t i = 0; i < k; ++i) s[i] = (polys[a][i] + polys[b][i]) % p;
      add_[a * q + b] = index_of(s);
      Poly prod(2 * k - 1, 0);
      for (std::uint32_t i = 0; i < k; ++i) {
        for (std::uint32_t j = 0; j < k; ++j) {
          prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{polys[a][i]} * polys[b][j]) % p);
        }
      }
      Poly r = poly_mod(prod, desc_.modulus, p);
      r.resize(k, 0);
      mul_[a * q + b] = index_of(r);
    }
  }
  for (std::uint32_t a = 1; a < q; ++a) {
    for (std::uint32_t b = 1; b < q; ++b) {
      if (mul_[a * q + b] == 1) {
        inv_[a] = b;
        break;
      }
    }
  }
}

const Field& Field::get(const FieldDescriptor& desc) { return FieldRegistry::instance().get(desc); }

const Field& Field::prime(std::uint32_t p) { return get(FieldDescriptor::prime(p)); }

const Field& Field::of_order(std::uint32_t q) {
  std::uint32_t p = 0, k = 0;
  if (!prime_power(q, p, k)) fail(ErrorCode::UnsupportedOrder, std::to_string(q) + " is not a prime power");
  return get(FieldDescriptor::standard(p, k));
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) fail(ErrorCode::DivisionByZero);
  return inv_[a];
}

std::uint32_t Field::from_int(long long n) const noexcept {
  long long r = n % static_cast<long long>(desc_.p);
  if (r < 0) r += desc_.p;
  return static_cast<std::uint32_t>(r);
}

FieldElement Field::zero() const { return {*this, 0}; }
FieldElement Field::one() const { return {*this, 1}; }

FieldElement Field::element(std::uint32_t index) const {
  if (index >= order_) fail(ErrorCode::InvalidArgument, "field index out of range");
  return {*this, index};
}

FieldElement Field::from_integer(long long n) const { return {*this, from_int(n)}; }

FieldElement Field::from_coefficients(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() > desc_.k) fail(ErrorCode::InvalidArgument, "too many coefficients");
  Poly c(coeffs);
  for (auto& x : c) x %= desc_.p;
  c.resize(desc_.k, 0);
  return {*this, index_of(c)};
}

std::vector<std::uint32_t> Field::coefficients(std::uint32_t index) const {
  Poly c(desc_.k);
  for (std::uint32_t i = 0; i < desc_.k; ++i) {
    c[i] = index % desc_.p;
    index /= desc_.p;
  }
  return c;
}

std::uint32_t Field::index_of(const std::vector<std::uint32_t>& coeffs) const {
  std::uint32_t idx = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) idx = idx * desc_.p + coeffs[i];
  return idx;
}

// ---------------------------------------------------------------------------

namespace {
const Field& same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() == nullptr || a.field() != b.field()) fail(ErrorCode::DescriptorMismatch);
  return *a.field();
}
}  // namespace

std::vector<std::uint32_t> FieldElement::coefficients() const { return field_->coefficients(v_); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
  const Field& f = same_field(*this, o);
  return {f, f.add(v_, o.v_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  const Field& f = same_field(*this, o);
  return {f, f.sub(v_, o.v_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  const Field& f = same_field(*this, o);
  return {f, f.mul(v_, o.v_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  const Field& f = same_field(*this, o);
  return {f, f.div(v_, o.v_)};
}
FieldElement FieldElement::operator-() const { return {*field_, field_->neg(v_)}; }
FieldElement FieldElement::inverse() const { return {*field_, field_->inv(v_)}; }

FieldElement FieldElement::pow(unsigned long long e) const {
  FieldElement result = field_->one(), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string FieldElement::to_string() const {
  if (field_ == nullptr) return "?";
  if (field_->degree() == 1) return std::to_string(v_);
  std::string s;
  for (auto c : coefficients()) {
    if (!s.empty()) s += ',';
    s += std::to_string(c);
  }
  return s;
}

std::string Valuation::to_string() const {
  switch (kind_) {
    case Kind::Finite: return std::to_string(value_);
    case Kind::Saturated: return "SATURATED(" + std::to_string(value_) + ")";
    case Kind::Infinite: return "INFINITY";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Jet::Jet(const Field& f, int order) : field_(&f), order_(order), c_(static_cast<std::size_t>(order), 0) {
  if (order < 1) fail(ErrorCode::InvalidArgument, "jet order must be >= 1");
}

Jet Jet::zero(const Field& f, int order) { return Jet(f, order); }

Jet Jet::exact_zero(const Field& f, int order) {
  Jet j(f, order);
  j.exact_zero_ = true;
  return j;
}

Jet Jet::constant(const FieldElement& c, int order) { return monomial(c, 0, order); }

Jet Jet::monomial(const FieldElement& c, int power, int order) {
  Jet j(*c.field(), order);
  if (power < 0) fail(ErrorCode::InvalidArgument, "negative power");
  if (power < order) j.c_[static_cast<std::size_t>(power)] = c.index();
  return j;
}

Jet Jet::from_coefficients(const std::vector<FieldElement>& coeffs, int order) {
  if (coeffs.empty()) fail(ErrorCode::InvalidArgument, "empty coefficient list");
  Jet j(*coeffs.front().field(), order);
  for (std::size_t i = 0; i < coeffs.size() && i < j.c_.size(); ++i) {
    if (coeffs[i].field() != j.field_) fail(ErrorCode::DescriptorMismatch);
    j.c_[i] = coeffs[i].index();
  }
  return j;
}

FieldElement Jet::coefficient(int i) const {
  if (i < 0 || i >= order_) return field_->zero();
  return {*field_, c_[static_cast<std::size_t>(i)]};
}

Valuation Jet::valuation() const {
  if (exact_zero_) return Valuation::infinite();
  for (int i = 0; i < order_; ++i) {
    if (c_[static_cast<std::size_t>(i)] != 0) return Valuation::finite(i);
  }
  return Valuation::saturated(order_);
}

FieldElement Jet::leading_coefficient() const {
  const Valuation v = valuation();
  return v.is_finite() ? coefficient(v.value()) : field_->zero();
}

bool Jet::is_unit() const { return !exact_zero_ && c_[0] != 0; }

void Jet::check_compatible(const Jet& o) const {
  if (field_ != o.field_ || order_ != o.order_) fail(ErrorCode::DescriptorMismatch);
}

Jet Jet::operator+(const Jet& o) const {
  check_compatible(o);
  if (exact_zero_) return o;
  if (o.exact_zero_) return *this;
  Jet r(*field_, order_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_->add(c_[i], o.c_[i]);
  return r;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& x : r.c_) x = field_->neg(x);
  return r;
}

Jet Jet::operator-(const Jet& o) const { return *this + (-o); }

Jet Jet::operator*(const Jet& o) const {
  check_compatible(o);
  if (exact_zero_ || o.exact_zero_) return exact_zero(*field_, order_);
  Jet r(*field_, order_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; i + j < c_.size(); ++j) {
      r.c_[i + j] = field_->add(r.c_[i + j], field_->mul(c_[i], o.c_[j]));
    }
  }
  return r;
}

Jet Jet::inverse() const {
  if (!is_unit()) fail(ErrorCode::DivisionByZero, "jet is not a unit");
  // Solve (this * r) = 1 coefficient by coefficient.
  Jet r(*field_, order_);
  const std::uint32_t inv0 = field_->inv(c_[0]);
  r.c_[0] = inv0;
  for (std::size_t n = 1; n < c_.size(); ++n) {
    std::uint32_t acc = 0;
    for (std::size_t i = 1; i <= n; ++i) acc = field_->add(acc, field_->mul(c_[i], r.c_[n - i]));
    r.c_[n] = field_->mul(field_->neg(acc), inv0);
  }
  return r;
}

Jet Jet::operator/(const Jet& o) const {
  check_compatible(o);
  return *this * o.inverse();
}

bool Jet::operator==(const Jet& o) const {
  return field_ == o.field_ && order_ == o.order_ && exact_zero_ == o.exact_zero_ && c_ == o.c_;
}

std::string Jet::to_string() const {
  if (exact_zero_) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < order_; ++i) {
    if (c_[static_cast<std::size_t>(i)] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << coefficient(i).to_string() << ')';
    if (i == 1) os << "t";
    if (i > 1) os << "t^" << i;
  }
  if (first) os << "0";
  os << " + O(t^" << order_ << ')';
  return os.str();
}

Valuation cancellation_depth(const Jet& a, const Jet& b) {
  const Valuation va = a.valuation(), vb = b.valuation();
  if (!va.is_finite() || !vb.is_finite() || va.value() != vb.value()) {
    fail(ErrorCode::ValuationMismatch, "val(a)=" + va.to_string() + " val(b)=" + vb.to_string());
  }
  const Valuation vd = (a - b).valuation();
  if (vd.is_finite()) return Valuation::finite(vd.value() - va.value());
  return Valuation::saturated(a.order() - va.value());
}

TieDepthResult tie_depth_crossratio_check(const Jet& a, const Jet& b, const Jet& c, const Jet& d) {
  for (const Jet* j : {&a, &b, &c, &d}) {
    if (!j->is_unit()) fail(ErrorCode::PreconditionViolated, "tie depth requires unit jets");
  }
  const Jet ad = a * d, bc = b * c;
  const Valuation lhs = (ad - bc).valuation();
  const Jet one = Jet::constant(a.field().one(), a.order());
  const Valuation rhs = (ad / bc - one).valuation();
  const bool equal = lhs.is_finite() ? lhs == rhs : rhs.beyond_truncation();
  return {lhs, rhs, equal};
}

// ---------------------------------------------------------------------------

FieldMatrix::FieldMatrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(&f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

void FieldMatrix::set(std::size_t r, std::size_t c, const FieldElement& x) {
  if (x.field() != field_) fail(ErrorCode::DescriptorMismatch);
  data_[r * cols_ + c] = x.index();
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
  if (field_ != o.field_) fail(ErrorCode::DescriptorMismatch);
  if (cols_ != o.rows_) fail(ErrorCode::ShapeMismatch, "inner dimensions differ");
  FieldMatrix r(*field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint32_t a = raw(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        r.raw(i, j) = field_->add(r.raw(i, j), field_->mul(a, o.raw(k, j)));
      }
    }
  }
  return r;
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& o) const {
  if (field_ != o.field_) fail(ErrorCode::DescriptorMismatch);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::ShapeMismatch, "shapes differ");
  FieldMatrix r(*field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_->add(data_[i], o.data_[i]);
  return r;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

}  // namespace tpl
