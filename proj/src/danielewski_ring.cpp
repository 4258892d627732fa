#include "danvar/danielewski_ring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace danvar {

std::string SigmaFamily::violation(int n) const {
  const Exponents origin(static_cast<std::size_t>(n + 3), 0);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (const auto& [e, c] : sigma[i]) {
      for (std::size_t s = static_cast<std::size_t>(n); s < e.size(); ++s)
        if (e[s] != 0) return "sigma_" + std::to_string(i + 1) + " depends on a non-x variable";
      for (int k = 0; k < n; ++k)
        if (e[static_cast<std::size_t>(k)] < 0) return "sigma_" + std::to_string(i + 1) + " is not a polynomial";
    }
  }
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i].constant_term() == sigma[j].constant_term())
        return "condition (1): sigma_" + std::to_string(i + 1) + "(0) = sigma_" + std::to_string(j + 1) + "(0)";
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (const auto& [e, c] : sigma[i]) {
      if (e == origin) continue;
      for (int k = 0; k < n; ++k)
        if (e[static_cast<std::size_t>(k)] < 1)
          return "condition (2): a non-constant monomial of sigma_" + std::to_string(i + 1) +
                 " is not divisible by x1*...*xn";
    }
  return {};
}

DanielewskiHypersurface::DanielewskiHypersurface(int n, Exponents m, Poly q, std::optional<SigmaFamily> sigma)
    : n_(n), m_(std::move(m)), q_(std::move(q)), r_(0), sigma_(std::move(sigma)) {
  if (n_ < 1) throw std::invalid_argument("hypersurface needs n >= 1");
  if (static_cast<int>(m_.size()) != n_) throw std::invalid_argument("multi-index length differs from n");
  if (std::any_of(m_.begin(), m_.end(), [](std::int32_t v) { return v < 1; }))
    throw std::invalid_argument("multi-index entries must be >= 1");
  if (q_.is_zero()) throw std::invalid_argument("Q must be nonzero");
  if (q_.nvars() != nvars()) throw std::invalid_argument("Q must use the ambient variables x1..xn, y, z, u");
  if (!q_.is_polynomial()) throw std::invalid_argument("Q must be a polynomial");
  if (q_.depends_on(z_slot()) || q_.depends_on(u_slot())) throw std::invalid_argument("Q may only involve x and y");
  r_ = q_.degree_in(y_slot());
  const Poly lead = q_.coefficient_in(y_slot(), r_);
  if (!(lead.is_constant() && lead.constant_term() == 1)) throw std::invalid_argument("Q must be monic in y");
  if (r_ < 2) throw std::invalid_argument("Q must have degree r >= 2 in y");
  if (sigma_) {
    if (static_cast<int>(sigma_->sigma.size()) != r_) throw std::invalid_argument("sigma family size differs from r");
    for (auto& s : sigma_->sigma)
      if (s.nvars() != nvars()) {
        if (s.is_zero())
          s = Poly(nvars());
        else
          throw std::invalid_argument("sigma polynomials must use the ambient variables");
      }
    if (auto why = sigma_->violation(n_); !why.empty()) throw std::invalid_argument(why);
    Poly prod = Poly::constant(nvars(), 1);
    for (const auto& s : sigma_->sigma) prod = prod * (Poly::variable(nvars(), y_slot()) - s);
    if (!(prod == q_)) throw std::invalid_argument("Q differs from prod (y - sigma_i)");
  }
}

DanielewskiHypersurface DanielewskiHypersurface::from_sigma(int n, Exponents m, std::vector<Poly> sigma) {
  const int nv = n + 3;
  Poly prod = Poly::constant(nv, 1);
  for (auto& s : sigma) {
    if (s.is_zero()) s = Poly(nv);
    prod = prod * (Poly::variable(nv, n) - s);
  }
  return DanielewskiHypersurface(n, std::move(m), std::move(prod), SigmaFamily{std::move(sigma)});
}

DanielewskiHypersurface DanielewskiHypersurface::homogenized(int n, Exponents m, int r) {
  return DanielewskiHypersurface(n, std::move(m), Poly::variable(n + 3, n, r));
}

Exponents DanielewskiHypersurface::x_power(int sign, int nv) const {
  Exponents e(static_cast<std::size_t>(nv < 0 ? nvars() : nv), 0);
  for (int k = 0; k < n_; ++k) e[static_cast<std::size_t>(k)] = sign * m_[static_cast<std::size_t>(k)];
  return e;
}

Poly DanielewskiHypersurface::defining_polynomial() const {
  Exponents e = x_power();
  e[static_cast<std::size_t>(z_slot())] = 1;
  return Poly::monomial(e) - q_;
}

Poly DanielewskiHypersurface::z_image(int nv) const {
  if (nv < 0) nv = nvars();
  return q_.resized(nv).shifted(x_power(-1, nv));
}

std::string DanielewskiHypersurface::describe() const {
  const Ring rg = ring();
  std::ostringstream os;
  os << to_string(Poly::monomial([&] {
          Exponents e = x_power();
          e[static_cast<std::size_t>(z_slot())] = 1;
          return e;
        }()),
                  rg)
     << " - (" << to_string(q_, rg) << ")";
  return os.str();
}

bool is_reduced(const DanielewskiHypersurface& h, const Poly& p) {
  const auto z = static_cast<std::size_t>(h.z_slot());
  for (const auto& [e, c] : p) {
    if (e[z] < 1) continue;
    bool divisible = true;
    for (int k = 0; k < h.n(); ++k)
      if (e[static_cast<std::size_t>(k)] < h.m()[static_cast<std::size_t>(k)]) divisible = false;
    if (divisible) return false;
  }
  return true;
}

RingElement normal_form(const DanielewskiHypersurface& h, const Poly& p) {
  const int nv = p.is_zero() ? h.nvars() : p.nvars();
  if (nv < h.n() + 2) throw std::invalid_argument("normal_form: too few variables");
  const auto z = static_cast<std::size_t>(h.z_slot());
  const Poly q = h.q().resized(nv);
  std::map<std::int32_t, Poly> qpow;
  auto q_to = [&](std::int32_t k) -> const Poly& {
    auto it = qpow.find(k);
    if (it == qpow.end()) it = qpow.emplace(k, q.pow(static_cast<unsigned>(k))).first;
    return it->second;
  };

  Poly result(nv);
  Poly work = p;
  while (!work.is_zero()) {
    Poly next(nv);
    for (const auto& [e, c] : work) {
      std::int32_t k = e[z];
      for (int i = 0; i < h.n() && k > 0; ++i)
        k = std::min(k, e[static_cast<std::size_t>(i)] >= 0 ? e[static_cast<std::size_t>(i)] / h.m()[static_cast<std::size_t>(i)] : 0);
      if (k <= 0) {
        result.add_term(e, c);
        continue;
      }
      Exponents rest = e;
      for (int i = 0; i < h.n(); ++i) rest[static_cast<std::size_t>(i)] -= k * h.m()[static_cast<std::size_t>(i)];
      rest[z] -= k;
      next += q_to(k).shifted(rest) * c;
    }
    work = std::move(next);
  }
  return RingElement{std::move(result)};
}

Poly laurent_embed(const DanielewskiHypersurface& h, const Poly& ambient) {
  const int nv = ambient.is_zero() ? h.nvars() : ambient.nvars();
  std::vector<std::optional<Poly>> images(static_cast<std::size_t>(nv));
  images[static_cast<std::size_t>(h.z_slot())] = h.z_image(nv);
  return ambient.compose(images, nv);
}

Poly laurent_embed(const DanielewskiHypersurface& h, const RingElement& e) { return laurent_embed(h, e.normal_form); }

MembershipResult laurent_membership(const DanielewskiHypersurface& h, const Poly& f) {
  const int nv = f.is_zero() ? h.nvars() : f.nvars();
  if (f.depends_on(h.z_slot())) throw std::invalid_argument("laurent_membership: input must not involve z");
  MembershipResult out;
  const Poly q = h.q().resized(nv);
  const Exponents xm = h.x_power(1, nv);
  Poly cur = f;
  while (!cur.is_zero()) {
    auto div = y_division(cur, q, h.y_slot());
    out.expansion.push_back(std::move(div.remainder));
    cur = div.quotient.shifted(xm);
  }
  for (std::size_t k = 0; k < out.expansion.size(); ++k)
    if (!out.expansion[k].is_polynomial()) {
      out.offending = k;
      return out;
    }
  Poly ambient(nv);
  for (std::size_t k = 0; k < out.expansion.size(); ++k)
    ambient += out.expansion[k] * Poly::variable(nv, h.z_slot(), static_cast<std::int32_t>(k));
  out.element = normal_form(h, ambient);
  return out;
}

Poly chart_coordinate(const DanielewskiHypersurface& h, int sheet) {
  if (!h.sigma()) throw std::invalid_argument("chart coordinates need a sigma family");
  const auto& sig = h.sigma()->sigma;
  if (sheet < 1 || sheet > static_cast<int>(sig.size())) throw std::out_of_range("sheet index");
  const int nv = h.nvars();
  const Poly y = Poly::variable(nv, h.y_slot());
  Poly t = (y - sig[static_cast<std::size_t>(sheet - 1)]).shifted(h.x_power(-1));
  Poly check = t;
  for (std::size_t j = 0; j < sig.size(); ++j)
    if (static_cast<int>(j) != sheet - 1) check = check * (y - sig[j]);
  if (!(check == h.z_image())) throw std::logic_error("chart coordinate does not reproduce z");
  return t;
}

SpecialFiberDecomposition special_fiber(const DanielewskiHypersurface& h) {
  Poly p = h.q();
  for (int k = 0; k < h.n(); ++k) p = p.evaluate_zero(k);
  SpecialFiberDecomposition out;
  out.p = UPoly::from_poly(p, h.y_slot());
  out.factors = squarefree_decomposition(out.p);
  for (const auto& f : out.factors) out.components += f.factor.degree();
  return out;
}

}  // namespace danvar
