#include "danvar/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

namespace danvar {

namespace {

std::int32_t checked_add(std::int32_t a, std::int32_t b) {
  std::int32_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("exponent overflow");
  return out;
}

std::int32_t checked_mul(std::int32_t a, std::int32_t b) {
  std::int32_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("exponent overflow");
  return out;
}

std::int64_t exponent_sum(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::int64_t{0});
}

void require_same_arity(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars() && !a.is_zero() && !b.is_zero())
    throw std::invalid_argument("polynomials over different variable sets");
}

}  // namespace

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = exponent_sum(a), db = exponent_sum(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      position_(position) {}

Ring::Ring(int n, std::vector<std::string> tail, bool laurent)
    : n_(n), tail_(std::move(tail)), laurent_(laurent) {
  if (n < 0) throw std::invalid_argument("negative variable count");
}

Ring Ring::ambient(int n, bool laurent) { return Ring(n, {"y", "z", "u"}, laurent); }

std::string Ring::name(int slot) const {
  if (slot < 0 || slot >= nvars()) throw std::out_of_range("variable slot");
  if (slot < n_) return "x" + std::to_string(slot + 1);
  return tail_[static_cast<std::size_t>(slot - n_)];
}

std::optional<int> Ring::slot_of(std::string_view name) const {
  if (name.size() > 1 && name[0] == 'x' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const int k = std::stoi(std::string(name.substr(1)));
    if (k >= 1 && k <= n_) return k - 1;
    return std::nullopt;
  }
  for (std::size_t i = 0; i < tail_.size(); ++i)
    if (tail_[i] == name) return n_ + static_cast<int>(i);
  return std::nullopt;
}

std::int64_t ExtDegree::value() const {
  if (!value_) throw std::logic_error("degree is -infinity");
  return *value_;
}

std::strong_ordering operator<=>(const ExtDegree& a, const ExtDegree& b) {
  if (a.is_minus_infinity() || b.is_minus_infinity())
    return (!a.is_minus_infinity()) <=> (!b.is_minus_infinity());
  return *a.value_ <=> *b.value_;
}

ExtDegree operator+(const ExtDegree& a, const ExtDegree& b) {
  if (a.is_minus_infinity() || b.is_minus_infinity()) return ExtDegree::minus_infinity();
  return ExtDegree(*a.value_ + *b.value_);
}

std::ostream& operator<<(std::ostream& os, const ExtDegree& d) {
  if (d.is_minus_infinity()) return os << "-inf";
  return os << d.value();
}

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
  return out;
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Poly Poly::monomial(Exponents e, const Rational& c) {
  Poly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Poly Poly::variable(int nvars, int slot, std::int32_t power) {
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e.at(static_cast<std::size_t>(slot)) = power;
  return monomial(std::move(e));
}

Rational Poly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::int32_t v) { return v == 0; });
}

Rational Poly::constant_term() const { return coeff(Exponents(static_cast<std::size_t>(nvars_), 0)); }

bool Poly::is_polynomial() const {
  for (const auto& [e, c] : terms_)
    for (auto v : e)
      if (v < 0) return false;
  return true;
}

std::int32_t Poly::degree_in(int slot) const {
  if (terms_.empty()) return 0;
  std::int32_t d = std::numeric_limits<std::int32_t>::min();
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(slot)]);
  return d;
}

std::int32_t Poly::min_degree_in(int slot) const {
  if (terms_.empty()) return 0;
  std::int32_t d = std::numeric_limits<std::int32_t>::max();
  for (const auto& [e, c] : terms_) d = std::min(d, e[static_cast<std::size_t>(slot)]);
  return d;
}

std::int64_t Poly::total_degree() const {
  std::int64_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, exponent_sum(e));
  return d;
}

bool Poly::depends_on(int slot) const {
  for (const auto& [e, c] : terms_)
    if (e[static_cast<std::size_t>(slot)] != 0) return true;
  return false;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) {
    if (terms_.empty() && nvars_ == 0)
      nvars_ = static_cast<int>(e.size());
    else
      throw std::invalid_argument("exponent vector has wrong length");
  }
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_arity(*this, o);
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_arity(*this, o);
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_arity(a, b);
  Poly out(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(add_exponents(ea, eb), ca * cb);
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(nvars_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Poly Poly::shifted(const Exponents& shift) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(add_exponents(e, shift), c);
  return out;
}

Poly Poly::derivative(int slot) const {
  Poly out(nvars_);
  const auto s = static_cast<std::size_t>(slot);
  for (const auto& [e, c] : terms_) {
    if (e[s] == 0) continue;
    Exponents d = e;
    d[s] -= 1;
    out.add_term(d, c * e[s]);
  }
  return out;
}

Poly Poly::coefficient_in(int slot, std::int32_t power) const {
  Poly out(nvars_);
  const auto s = static_cast<std::size_t>(slot);
  for (const auto& [e, c] : terms_) {
    if (e[s] != power) continue;
    Exponents d = e;
    d[s] = 0;
    out.terms_.emplace(std::move(d), c);
  }
  return out;
}

Poly Poly::substitute(int slot, const Poly& value) const {
  std::vector<std::optional<Poly>> images(static_cast<std::size_t>(nvars_));
  images[static_cast<std::size_t>(slot)] = value;
  return compose(images, nvars_);
}

Poly Poly::compose(const std::vector<std::optional<Poly>>& images, int target_nvars) const {
  if (static_cast<int>(images.size()) != nvars_) throw std::invalid_argument("compose: image count mismatch");
  // power cache per substituted slot
  std::vector<std::map<std::int32_t, Poly>> cache(images.size());
  auto power_of = [&](std::size_t slot, std::int32_t k) -> const Poly& {
    auto it = cache[slot].find(k);
    if (it != cache[slot].end()) return it->second;
    const Poly& img = *images[slot];
    Poly value;
    if (k >= 0) {
      value = img.pow(static_cast<unsigned>(k));
    } else {
      if (img.size() != 1) throw std::domain_error("negative power of a non-monomial substitution");
      const auto& [e, c] = *img.terms_.begin();
      Exponents inv(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) inv[i] = checked_mul(-e[i], -k);
      Rational ci = 1 / c;
      Rational cp = 1;
      for (std::int32_t i = 0; i < -k; ++i) cp *= ci;
      value = monomial(inv, cp);
    }
    return cache[slot].emplace(k, std::move(value)).first->second;
  };

  Poly out(target_nvars);
  for (const auto& [e, c] : terms_) {
    Exponents kept(static_cast<std::size_t>(target_nvars), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (images[i] || e[i] == 0) continue;
      if (static_cast<int>(i) >= target_nvars) throw std::invalid_argument("compose: kept variable outside target");
      kept[i] = e[i];
    }
    Poly term = monomial(kept, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!images[i] || e[i] == 0) continue;
      if (images[i]->nvars() != target_nvars && !images[i]->is_zero())
        throw std::invalid_argument("compose: image has wrong arity");
      if (images[i]->is_zero()) {
        if (e[i] < 0) throw std::domain_error("negative power of zero");
        term = Poly(target_nvars);
        break;
      }
      term = term * power_of(i, e[i]);
    }
    out += term;
  }
  return out;
}

Poly Poly::evaluate_zero(int slot) const {
  Poly out(nvars_);
  const auto s = static_cast<std::size_t>(slot);
  for (const auto& [e, c] : terms_) {
    if (e[s] < 0) throw std::domain_error("evaluating a pole at zero");
    if (e[s] == 0) out.terms_.emplace(e, c);
  }
  return out;
}

Poly Poly::resized(int nvars) const {
  Poly out(nvars);
  for (const auto& [e, c] : terms_) {
    Exponents d(static_cast<std::size_t>(nvars), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (static_cast<int>(i) < nvars)
        d[i] = e[i];
      else if (e[i] != 0)
        throw std::invalid_argument("resized: dropping a variable that occurs");
    }
    out.terms_.emplace(std::move(d), c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// printing and parsing

namespace {

std::string monomial_string(const Exponents& e, const Ring& ring) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.name(static_cast<int>(i));
    if (e[i] != 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int nvars() const { return ring_.nvars(); }

  Poly expr() {
    skip_ws();
    Poly acc;
    if (accept('-'))
      acc = -term();
    else {
      accept('+');
      acc = term();
    }
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Integer digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::int32_t exponent() {
    const bool negative = accept('-');
    const Integer v = digits();
    if (!v.fits_sint_p()) fail("exponent out of range");
    const long e = v.get_si();
    if (e > std::numeric_limits<std::int32_t>::max()) fail("exponent out of range");
    return static_cast<std::int32_t>(negative ? -e : e);
  }

  Poly factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      if (accept('^')) {
        const std::size_t at = pos_;
        const auto e = exponent();
        if (e < 0) throw ParseError("negative power of a parenthesized expression", at);
        return inner.pow(static_cast<unsigned>(e));
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const Integer num = digits();
      Integer den = 1;
      if (accept('/')) {
        den = digits();
        if (den == 0) fail("zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      return Poly::constant(nvars(), q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      ++pos_;
      if (c == 'x') {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      const auto slot = ring_.slot_of(name);
      if (!slot) throw ParseError("unknown variable '" + name + "'", start);
      std::int32_t e = 1;
      if (accept('^')) {
        const std::size_t at = pos_;
        e = exponent();
        if (e < 0 && *slot >= ring_.n())
          throw ParseError("negative exponent on " + name, at);
        if (e < 0 && !ring_.laurent())
          throw ParseError("negative exponent on " + name + " outside a Laurent ring", at);
      }
      return Poly::variable(nvars(), *slot, e);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }
};

}  // namespace

std::string to_string(const Poly& p, const Ring& ring) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p) {
    const bool negative = sgn(c) < 0;
    const Rational mag = abs(c);
    const std::string mono = monomial_string(e, ring);
    std::string body;
    if (mono.empty())
      body = mag.get_str();
    else if (mag == 1)
      body = mono;
    else
      body = mag.get_str() + "*" + mono;
    if (first)
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

Poly parse_poly(std::string_view text, const Ring& ring) {
  Poly p = Parser(text, ring).parse();
  if (p.is_zero()) return Poly(ring.nvars());
  return p;
}

// ---------------------------------------------------------------------------
// weights

WeightVector WeightVector::bound(const Exponents& m, int r) const {
  if (m.size() != dx.size()) throw std::invalid_argument("weight vector and multi-index differ in length");
  WeightVector out = *this;
  std::int64_t s = 0;
  for (std::size_t k = 0; k < m.size(); ++k) s += m[k] * dx[k];
  out.dz = r * dy - s;
  return out;
}

std::int64_t WeightVector::weight(const Exponents& e) const {
  const std::size_t n = dx.size();
  if (e.size() < n + 1) throw std::invalid_argument("exponent vector shorter than the weighted variables");
  std::int64_t w = 0;
  for (std::size_t k = 0; k < n; ++k) w += dx[k] * e[k];
  w += dy * e[n];
  if (e.size() > n + 1 && e[n + 1] != 0) {
    if (!dz) throw std::logic_error("z weight requested before binding to a hypersurface");
    w += *dz * e[n + 1];
  }
  return w;
}

std::string WeightVector::to_string() const {
  std::ostringstream os;
  os << "dx=(";
  for (std::size_t k = 0; k < dx.size(); ++k) os << (k ? "," : "") << dx[k];
  os << ") dy=" << dy;
  if (dz) os << " dz=" << *dz;
  return os.str();
}

ExtDegree weight_degree(const Poly& p, const WeightVector& w) {
  if (p.is_zero()) return ExtDegree::minus_infinity();
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (const auto& [e, c] : p) best = std::max(best, w.weight(e));
  return ExtDegree(best);
}

Poly principal_component(const Poly& p, const WeightVector& w) {
  if (p.is_zero()) throw std::invalid_argument("principal component of the zero polynomial");
  const auto top = weight_degree(p, w).value();
  Poly out(p.nvars());
  for (const auto& [e, c] : p)
    if (w.weight(e) == top) out.add_term(e, c);
  return out;
}

bool is_homogeneous(const Poly& p, const WeightVector& w) {
  if (p.is_zero()) return true;
  const auto top = w.weight(p.begin()->first);
  for (const auto& [e, c] : p)
    if (w.weight(e) != top) return false;
  return true;
}

DivisionResult y_division(const Poly& f, const Poly& q, int slot) {
  if (q.is_zero() || q.min_degree_in(slot) < 0) throw std::invalid_argument("divisor must be polynomial in the division variable");
  const auto r = q.degree_in(slot);
  if (r < 1) throw std::invalid_argument("divisor has degree 0 in the division variable");
  const Poly lead = q.coefficient_in(slot, r);
  if (!(lead.is_constant() && lead.constant_term() == 1)) throw std::invalid_argument("divisor is not monic");

  const int nv = std::max(f.nvars(), q.nvars());
  DivisionResult out{Poly(nv), f};
  while (!out.remainder.is_zero()) {
    const auto d = out.remainder.degree_in(slot);
    if (d < r) break;
    Poly step = out.remainder.coefficient_in(slot, d);
    Exponents shift(static_cast<std::size_t>(nv), 0);
    shift[static_cast<std::size_t>(slot)] = d - r;
    step = step.shifted(shift);
    out.quotient += step;
    out.remainder -= step * q;
  }
  return out;
}

}  // namespace danvar
