#pragma once

#include <optional>
#include <string>
#include <vector>

#include "danvar/bundle_cocycle.hpp"
#include "danvar/danielewski_ring.hpp"
#include "danvar/poly.hpp"

namespace danvar {

/// Chart coordinates x1..xn (Laurent), t (source chart), w (target chart),
/// u (source line), v (target line).
Ring chart_ring(int n);
int chart_t(int n);
int chart_w(int n);
int chart_u(int n);
int chart_v(int n);

struct SolverCaps {
  int t_degree = 0;
  int x_degree = 0;  // total degree in x1..xn
};

/// t-degree <= r * max(|m|, |m'|), x-degree <= 4 * max component of m + m'.
SolverCaps default_caps(const DanielewskiHypersurface& source, const DanielewskiHypersurface& target);

struct CochainResult {
  /// H_i(x, t) in the chart ring with H_i(t + g_ij) - H_j(t) = g'_ij.
  std::optional<std::vector<Poly>> h;
  SolverCaps caps;  // caps of the solution, or the last caps tried
  int rank = 0;
  int unknowns = 0;
  int equations = 0;
  std::string describe() const;
};

/// Iterative deepening over t-degree, then x-degree. Only H_1 is unknown:
/// H_j = H_1(t + g_1j) - g'_1j must be polynomial, so the equations say that
/// every polar coefficient vanishes. Solutions are re-verified by substitution.
CochainResult coboundary_solve(const Cocycle& g, const Cocycle& gprime, SolverCaps caps);

/// Checks H_i(t + g_ij) - H_j(t) = g'_ij for all pairs and that every H_i is
/// a polynomial in x and t. Returns the failing identity or an empty string.
std::string trivialization_failure(const Cocycle& g, const Cocycle& gprime, const std::vector<Poly>& h);

struct ChartMap {
  int sheet = 0;
  Poly w, v;            // forward, in (x, t, u)
  Poly t_inv, u_inv;    // inverse, in (x, w, v)
};

/// Images of y', z', u' in B[u] (normal forms in the ambient ring of the source).
struct AmbientForm {
  Poly y, z, u;
};

struct TranscriptEntry {
  std::string identity;
  std::string status;  // "verified" or "FAILED"
};

struct IsoCertificate {
  DanielewskiHypersurface source;
  DanielewskiHypersurface target;
  std::vector<Poly> h;       // trivializes the target cocycle on the source
  std::vector<Poly> hprime;  // trivializes the source cocycle on the target
  std::vector<ChartMap> charts;
  std::optional<AmbientForm> ambient;  // absent for chartwise-only certificates
  std::vector<TranscriptEntry> transcript;
  std::vector<std::string> conventions;
  SolverCaps caps_h, caps_hprime;
};

std::vector<std::string> certificate_conventions();

struct IsoResult {
  std::optional<IsoCertificate> certificate;
  CochainResult h, hprime;  // solver data (Inconclusive when certificate is empty)
};

inline constexpr int kAmbientDegreeCeiling = 400;

/// Solves both trivializations concurrently, builds the chart maps, computes
/// the ambient form, and verifies every identity. Throws std::logic_error
/// naming the failing identity if verification fails.
IsoResult build_iso(const DanielewskiHypersurface& source, const DanielewskiHypersurface& target,
                    std::optional<SolverCaps> caps = std::nullopt);

struct RecheckResult {
  bool ok = true;
  std::vector<TranscriptEntry> transcript;
  std::optional<std::string> failing;
};

/// Re-runs every identity from the certificate data alone.
RecheckResult recheck(const IsoCertificate& cert);

}  // namespace danvar
