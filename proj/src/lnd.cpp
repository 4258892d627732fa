#include "danvar/lnd.hpp"

#include <algorithm>
#include <sstream>

#include "danvar/linalg.hpp"

namespace danvar {

namespace {

int ambient_nvars(const Poly& p, int fallback) { return p.is_zero() ? fallback : p.nvars(); }

Rational factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

}  // namespace

Derivation::Derivation(DanielewskiHypersurface owner, std::vector<Poly> images)
    : owner_(std::move(owner)), images_(std::move(images)) {
  const int n = owner_.n();
  if (static_cast<int>(images_.size()) != n + 2)
    throw std::invalid_argument("derivation needs images of x1..xn, y, z");
  for (auto& img : images_) {
    if (img.is_zero()) img = Poly(owner_.nvars());
    if (img.nvars() != owner_.nvars()) throw std::invalid_argument("derivation image uses the wrong variable layout");
    if (!img.is_polynomial()) throw std::invalid_argument("derivation images must be polynomials");
    if (img.depends_on(owner_.u_slot())) throw std::invalid_argument("derivation images may only involve x, y, z");
  }
  const Poly df = apply(owner_.defining_polynomial());
  if (!df.is_zero())
    throw std::invalid_argument("ideal not preserved: dF has normal form " + to_string(df, owner_.ring()));
}

bool Derivation::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const Poly& p) { return p.is_zero(); });
}

Poly Derivation::apply(const Poly& p) const {
  const int nv = ambient_nvars(p, owner_.nvars());
  if (nv < owner_.nvars()) throw std::invalid_argument("derivation applied to a polynomial with too few variables");
  Poly out(nv);
  for (int s = 0; s < owner_.n() + 2; ++s) {
    const Poly& img = images_[static_cast<std::size_t>(s)];
    if (img.is_zero() || !p.depends_on(s)) continue;
    out += p.derivative(s) * img.resized(nv);
  }
  return normal_form(owner_, out).normal_form;
}

Derivation canonical_derivation(const DanielewskiHypersurface& h) {
  std::vector<Poly> images(static_cast<std::size_t>(h.n() + 2), Poly(h.nvars()));
  images[static_cast<std::size_t>(h.y_slot())] = Poly::monomial(h.x_power());
  images[static_cast<std::size_t>(h.z_slot())] = h.q().derivative(h.y_slot());
  return Derivation(h, std::move(images));
}

Derivation jacobian_derivation(const DanielewskiHypersurface& h, int k) {
  if (k < 1 || k > h.n()) throw std::out_of_range("coordinate index");
  if (h.m()[static_cast<std::size_t>(k - 1)] != 1) throw std::invalid_argument("jacobian derivation needs m_k = 1");
  const Poly f = h.defining_polynomial();
  std::vector<Poly> images(static_cast<std::size_t>(h.n() + 2), Poly(h.nvars()));
  images[static_cast<std::size_t>(k - 1)] = f.derivative(h.y_slot());
  images[static_cast<std::size_t>(h.y_slot())] = -f.derivative(k - 1);
  return Derivation(h, std::move(images));
}

std::optional<ExtDegree> degree(const Derivation& d, const Poly& b, int cap) {
  Poly cur = normal_form(d.owner(), b).normal_form;
  if (cur.is_zero()) return ExtDegree::minus_infinity();
  for (int k = 0; k <= cap; ++k) {
    Poly next = d.apply(cur);
    if (next.is_zero()) return ExtDegree(k);
    cur = std::move(next);
  }
  return std::nullopt;
}

std::string NilpotencyCertificate::describe(const Ring& ring) const {
  std::ostringstream os;
  if (!certified) {
    os << "Inconclusive: some generator survives " << cap << " applications";
    return os.str();
  }
  os << "locally nilpotent on generators:";
  for (std::size_t s = 0; s < steps.size(); ++s) os << " " << ring.name(static_cast<int>(s)) << ":" << steps[s];
  os << " (N = " << bound << ")";
  return os.str();
}

NilpotencyCertificate certify_nilpotency(const Derivation& d, int cap) {
  NilpotencyCertificate out;
  out.cap = cap;
  out.certified = true;
  const auto& h = d.owner();
  for (int s = 0; s < h.n() + 2; ++s) {
    auto deg = degree(d, Poly::variable(h.nvars(), s), cap);
    if (!deg) {
      out.certified = false;
      out.steps.push_back(-1);
      continue;
    }
    const int k = deg->is_minus_infinity() ? 0 : static_cast<int>(deg->value()) + 1;
    out.steps.push_back(k);
    out.bound = std::max(out.bound, k);
  }
  return out;
}

std::optional<std::vector<Poly>> exponential(const Derivation& d, const Poly& b, int cap) {
  std::vector<Poly> coeffs;
  Poly cur = normal_form(d.owner(), b).normal_form;
  for (int k = 0; !cur.is_zero(); ++k) {
    if (k > cap) return std::nullopt;
    coeffs.push_back(cur * Rational(1 / factorial(k)));
    cur = d.apply(cur);
  }
  return coeffs;
}

Poly exponential_series(const Derivation& d, const Poly& b, const Poly& time, int cap) {
  const int nv = time.nvars();
  auto coeffs = exponential(d, b.resized(std::min(ambient_nvars(b, nv), nv)), cap);
  if (!coeffs) throw std::runtime_error("exponential: nilpotency cap exceeded");
  Poly out(nv);
  Poly power = Poly::constant(nv, 1);
  for (const auto& c : *coeffs) {
    out += c.resized(nv) * power;
    power = power * time;
  }
  return out;
}

Poly flow(const Derivation& d, const Poly& p, const Poly& time, int cap) {
  const auto& h = d.owner();
  const int nv = time.nvars();
  std::vector<std::optional<Poly>> images(static_cast<std::size_t>(nv));
  for (int s = 0; s < h.n() + 2; ++s)
    images[static_cast<std::size_t>(s)] = exponential_series(d, Poly::variable(h.nvars(), s), time, cap);
  return normal_form(h, p.resized(nv).compose(images, nv)).normal_form;
}

std::vector<Exponents> reduced_monomials(const DanielewskiHypersurface& h, int max_degree) {
  const int n = h.n();
  std::vector<Exponents> out;
  Exponents e(static_cast<std::size_t>(h.nvars()), 0);
  // enumerate exponents of x1..xn, y, z with total degree <= max_degree
  auto rec = [&](auto&& self, int slot, int left) -> void {
    if (slot == n + 2) {
      if (is_reduced(h, Poly::monomial(e))) out.push_back(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[static_cast<std::size_t>(slot)] = a;
      self(self, slot + 1, left - a);
    }
    e[static_cast<std::size_t>(slot)] = 0;
  };
  rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) { return GrlexGreater{}(b, a); });
  return out;
}

std::vector<Poly> kernel_power_bounded(const Derivation& d, int power, int max_degree) {
  if (power < 1) throw std::invalid_argument("kernel power must be >= 1");
  const auto basis = reduced_monomials(d.owner(), max_degree);
  std::map<Exponents, SparseRow, GrlexGreater> rows;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    Poly img = Poly::monomial(basis[col]);
    for (int k = 0; k < power; ++k) img = d.apply(img);
    for (const auto& [e, c] : img) rows[e][static_cast<int>(col)] = c;
  }
  Echelon ech(static_cast<int>(basis.size()));
  for (auto& [e, row] : rows) ech.add_row(std::move(row));
  std::vector<Poly> out;
  for (const auto& v : ech.nullspace()) {
    Poly p(d.owner().nvars());
    for (const auto& [col, c] : v) p.add_term(basis[static_cast<std::size_t>(col)], c);
    out.push_back(std::move(p));
  }
  return out;
}

Poly random_ring_element(const DanielewskiHypersurface& h, int max_degree, std::mt19937_64& rng) {
  const auto monos = reduced_monomials(h, max_degree);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<std::size_t> count(1, std::min<std::size_t>(monos.size(), 5));
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  Poly out(h.nvars());
  const std::size_t terms = count(rng);
  for (std::size_t i = 0; i < terms; ++i) {
    const int c = coeff(rng);
    if (c != 0) out.add_term(monos[pick(rng)], c);
  }
  return out;
}

ActionReport action_axioms_check(const Derivation& d, int samples, std::uint64_t seed, int cap) {
  ActionReport report;
  const auto& h = d.owner();
  const int nv = h.nvars() + 2;
  const int s_slot = h.nvars(), t_slot = h.nvars() + 1;
  const Ring ring(h.n(), {"y", "z", "u", "s", "t"});
  const Poly s = Poly::variable(nv, s_slot), t = Poly::variable(nv, t_slot);

  auto fail = [&](const std::string& what) {
    if (report.ok) report.counterexample = what;
    report.ok = false;
    report.transcript.push_back("FAILED " + what);
  };

  std::vector<Poly> subjects;
  for (int g = 0; g < h.n() + 2; ++g) subjects.push_back(Poly::variable(h.nvars(), g));
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) subjects.push_back(random_ring_element(h, 3, rng));

  for (const auto& b : subjects) {
    const auto coeffs = exponential(d, b, cap);
    if (!coeffs) {
      fail("exponential of " + to_string(b, h.ring()) + " exceeds the nilpotency cap");
      continue;
    }
    Poly lhs(nv);
    Poly tk = Poly::constant(nv, 1);
    for (const auto& c : *coeffs) {
      lhs += exponential_series(d, c, s, cap) * tk;
      tk = tk * t;
    }
    const Poly rhs = exponential_series(d, b, s + t, cap);
    const std::string label = to_string(b, h.ring());
    if (normal_form(h, lhs - rhs).normal_form.is_zero())
      report.transcript.push_back("exp(s d) exp(t d) = exp((s+t) d) on " + label);
    else
      fail("co-action identity on " + label + ": difference " + to_string(normal_form(h, lhs - rhs).normal_form, ring));
    // the series and the substitution homomorphism agree
    const Poly series = exponential_series(d, b, t, cap);
    const Poly subst = flow(d, b, t, cap);
    if (!(series == subst)) fail("exp(t d) is not a homomorphism on " + label);
  }
  for (int i = 0; i < samples; ++i) {
    const Poly a = random_ring_element(h, 2, rng), b = random_ring_element(h, 2, rng);
    const Poly prod = normal_form(h, a * b).normal_form;
    const Poly lhs = exponential_series(d, prod, t, cap);
    const Poly rhs = normal_form(h, exponential_series(d, a, t, cap) * exponential_series(d, b, t, cap)).normal_form;
    if (!(lhs == rhs)) fail("multiplicativity of exp(t d) on (" + to_string(a, h.ring()) + ")*(" + to_string(b, h.ring()) + ")");
  }
  if (samples > 0 && report.ok) report.transcript.push_back("exp(t d)(a b) = exp(t d)(a) exp(t d)(b) on " + std::to_string(samples) + " random pairs");
  const Poly fimg = flow(d, h.defining_polynomial(), t, cap);
  if (fimg.is_zero())
    report.transcript.push_back("exp(t d)(F) = 0 identically in t");
  else
    fail("flow does not preserve F: " + to_string(fimg, ring));
  return report;
}

Derivation conjugate_by_flow(const Derivation& d, const Derivation& e, const Rational& c, int cap) {
  const auto& h = d.owner();
  if (!(e.owner() == h)) throw std::invalid_argument("derivations on different hypersurfaces");
  const int nv = h.nvars();
  const Poly fwd = Poly::constant(nv, c), back = Poly::constant(nv, -c);
  std::vector<Poly> images;
  for (int g = 0; g < h.n() + 2; ++g) {
    const Poly pulled = flow(e, Poly::variable(nv, g), back, cap);
    images.push_back(flow(e, d.apply(pulled), fwd, cap));
  }
  return Derivation(h, std::move(images));
}

}  // namespace danvar
