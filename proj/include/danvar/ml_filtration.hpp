#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "danvar/danielewski_ring.hpp"
#include "danvar/lnd.hpp"
#include "danvar/poly.hpp"

namespace danvar {

/// Two distinct monomials of equal weight whose difference is not a multiple
/// of the relation vector of x^[m] z y^{-r}; std::nullopt if none.
std::optional<std::pair<Exponents, Exponents>> genericity_collision(const DanielewskiHypersurface& h,
                                                                   const WeightVector& w,
                                                                   const std::vector<Exponents>& support);

struct AdmissibleWeight {
  WeightVector weight;  // bound: dz = r*dy - sum m_k dx_k
  bool rescaled = false;
  std::vector<std::string> log;
};

/// Rescales the seed until the principal component of Q is y^r and the
/// support (monomials of Q plus `extra_support`) is generic. Each step
/// multiplies d_y (or, for collisions invisible to d_y, one x weight) by the
/// smallest prime exceeding the current weight spread.
AdmissibleWeight admissible_weight(const DanielewskiHypersurface& h, const WeightVector& seed,
                                   const std::vector<Exponents>& extra_support = {});

/// Weight of b in B: the weight degree of its Laurent image.
ExtDegree filtration_degree(const DanielewskiHypersurface& h, const WeightVector& w, const Poly& b);

/// gr(b): principal component of the Laurent image of b, read in the
/// homogenized ring. Throws if it is not a member there (inadmissible weight).
Poly graded_image(const DanielewskiHypersurface& h, const WeightVector& w, const Poly& b);

struct GradedDerivation {
  WeightVector weight;
  std::vector<ExtDegree> t;  // per generator x1..xn, y, z
  std::int64_t t0 = 0;
  Derivation graded;  // on the homogenized hypersurface
  std::vector<std::string> transcript;
};

/// t(gen) = d(dgen) - d(gen); t0 = max; gr d(gen) = gr(dgen) if t(gen) = t0,
/// else 0. Rejects the zero derivation and weights for which Q has another
/// principal term; throws if gr d does not preserve x^[m] z - y^r.
GradedDerivation graded_derivation(const Derivation& d, const WeightVector& w);

struct InequalityReport {
  bool ok = true;
  int checked = 0;
  int inconclusive = 0;
  std::vector<std::string> transcript;
};

/// deg_d(b) >= deg_{gr d}(gr b) on the given elements.
InequalityReport degree_inequality_check(const Derivation& d, const GradedDerivation& gd,
                                         const std::vector<Poly>& samples, int cap = kDefaultNilpotencyCap);

struct UniquenessReport {
  bool ok = true;
  WeightVector weight;  // after any genericity rescaling
  int checked = 0;
  std::vector<std::string> transcript;
};

/// Every w-homogeneous element of the homogenized ring normal-forms to a
/// single monomial, and equal-weight ambient monomials differ only along the
/// relation direction. The weight is first rescaled, if needed, until it is
/// generic on every monomial a sampled slice can contain.
UniquenessReport homogeneous_normal_form_uniqueness(const DanielewskiHypersurface& hr, const WeightVector& w,
                                                    int samples, std::uint64_t seed = 1, int max_degree = 4);

/// Ambient monomials in x, y, z of total degree <= max_degree and weight `target`.
std::vector<Exponents> monomials_of_weight(const DanielewskiHypersurface& h, const WeightVector& w,
                                           std::int64_t target, int max_degree);

class SearchOverflow : public std::runtime_error {
 public:
  SearchOverflow(std::uint64_t size, std::uint64_t limit);
  std::uint64_t size() const { return size_; }

 private:
  std::uint64_t size_;
};

struct HomogeneousLnd {
  Derivation derivation;
  std::int64_t t0 = 0;
  NilpotencyCertificate certificate;
  bool x_in_kernel = false;
  ExtDegree z_degree;
};

struct SearchResult {
  WeightVector weight;
  std::uint64_t candidates = 0;
  std::vector<HomogeneousLnd> lnds;
};

inline constexpr std::uint64_t kDefaultSearchLimit = 1u << 20;

/// Homogeneous derivations of the homogenized ring whose generator images are
/// scalar multiples of single reduced monomials of degree <= D, preserving
/// the relation and locally nilpotent on generators within N steps.
SearchResult homogeneous_lnd_search(const DanielewskiHypersurface& hr, int max_degree, int nilpotency_cap,
                                    std::uint64_t limit = kDefaultSearchLimit);

/// Intersection of the bounded kernels of the catalog: an upper bound for the
/// degree <= D part of the Makar-Limanov invariant.
std::vector<Poly> ml_upper_bound(const DanielewskiHypersurface& h, const std::vector<Derivation>& catalog,
                                 int max_degree);

}  // namespace danvar
