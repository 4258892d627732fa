#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "danvar/danielewski_ring.hpp"
#include "danvar/poly.hpp"

namespace danvar {

/// Z_{n,r}: affine n-space with an r-fold system of coordinate hyperplanes.
struct BaseScheme {
  int n = 1;
  int r = 1;
  friend bool operator==(const BaseScheme&, const BaseScheme&) = default;
};

/// Transition data of a principal C_+-bundle over Z_{n,r}.
///
/// Convention: on overlaps t_i = t_j + g_ij, so g_ji = -g_ij and
/// g_ik = g_ij + g_jk. Sheets are numbered 1..r. Values are Laurent
/// polynomials in x1..xn stored in the ambient layout (nvars = n + 3).
class Cocycle {
 public:
  /// `upper` holds g_ij for i < j; missing pairs are zero. Throws if an
  /// entry involves non-x variables or the cocycle identity fails.
  Cocycle(BaseScheme base, std::map<std::pair<int, int>, Poly> upper);

  const BaseScheme& base() const { return base_; }
  int nvars() const { return base_.n + 3; }
  Poly g(int i, int j) const;
  const std::map<std::pair<int, int>, Poly>& upper() const { return upper_; }

  friend bool operator==(const Cocycle&, const Cocycle&) = default;

 private:
  BaseScheme base_;
  std::map<std::pair<int, int>, Poly> upper_;
};

/// g = x^{-pole} * residue with residue a polynomial divisible by no x_k.
struct PoleData {
  Exponents pole;  // length n
  Poly residue;
};

PoleData pole_decomposition(const Poly& g, int n);

struct AffinenessWitness {
  enum class Reason { RegularEntry, NonPositivePole, UnitIdealFailure };
  Reason reason;
  int i = 0, j = 0;
  int component = 0;  // 1-based coordinate index
  Poly restriction;   // residue with x_component := 0 (unit-ideal failures)
  /// residue(0) = 0, i.e. the residue lies in (x1, ..., xn)
  bool residue_in_maximal_ideal = false;
  std::string describe() const;
};

struct AffinenessVerdict {
  enum class Kind { Affine, NotSeparated };
  Kind kind = Kind::Affine;
  std::optional<AffinenessWitness> witness;
  std::map<std::pair<int, int>, PoleData> poles;
  /// For Affine verdicts with r >= 2: the multi-indices m_{1i} were checked to
  /// be totally ordered componentwise.
  bool total_order_verified = false;
  std::string describe() const;
};

AffinenessVerdict affineness(const Cocycle& c);

/// g_ij = x^{-[m]} (sigma_j - sigma_i).
Cocycle sigma_cocycle(const BaseScheme& base, const SigmaFamily& sigma, const Exponents& m);
/// Cocycle of a sigma-hypersurface over Z_{n,r}.
Cocycle hypersurface_cocycle(const DanielewskiHypersurface& h);

struct CoboundaryResult {
  /// h with h_1 = 0 and (delta h)_ij = h_i - h_j = (c1 - c2)_ij.
  std::optional<std::vector<Poly>> cochain;
  std::optional<int> offending_sheet;
  Poly witness;  // the candidate h_j that has a pole
};

CoboundaryResult coboundary_test(const Cocycle& c1, const Cocycle& c2);

/// Canonical multiset of pole multi-indices up to one simultaneous
/// permutation of the coordinates. Requires an Affine cocycle.
using PoleSignature = std::vector<Exponents>;
PoleSignature pole_signature(const Cocycle& c);
std::string to_string(const PoleSignature& s);

/// Acts on a cocycle: c'_ij(x) = lambda * c_{pi(i) pi(j)}(psi(x)) with
/// psi(x)_k = s_k * x_{tau(k)}.
struct RestrictedAction {
  std::vector<int> sheet_permutation;       // pi, 1-based values
  std::vector<int> coordinate_permutation;  // tau, 1-based values
  std::vector<Rational> scaling;            // s_k
  Rational lambda = 1;
};

Cocycle apply_action(const Cocycle& c, const RestrictedAction& a);

struct OrbitVerdict {
  bool in_orbit = false;
  std::optional<RestrictedAction> action;
  std::optional<std::vector<Poly>> coboundary;  // action(c1) - c2 = delta h
  bool signatures_differ = false;
  /// Some permutation pair matched except that the torus/scalar equations had
  /// no rational solution.
  bool witness_outside_rationals = false;
  std::string describe() const;
};

/// Decides membership in one orbit of (torus x| coordinate permutations) x
/// sheet permutations x C^* scaling, modulo coboundaries. Only this subgroup
/// of Aut(Z_{n,r}) x C^* is searched.
OrbitVerdict restricted_orbit_test(const Cocycle& c1, const Cocycle& c2);

/// Projection forgetting x_k and y when m_k = 1; it defines a second
/// C_+-bundle structure on a sigma-hypersurface.
struct SecondFibration {
  int dropped = 0;  // 1-based k with m_k = 1
  std::vector<std::string> base_coordinates;
  std::string description;
};

std::optional<SecondFibration> second_fibration(const DanielewskiHypersurface& h);

}  // namespace danvar
