#include "danvar/cli.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "danvar/bundle_cocycle.hpp"
#include "danvar/cancellation.hpp"
#include "danvar/lnd.hpp"
#include "danvar/ml_filtration.hpp"
#include "danvar/records.hpp"

namespace danvar {

namespace {

struct Report {
  Json body = Json::object();
  int code = kExitVerified;
};

Json sign_conventions() {
  Json j = Json::array();
  const auto all = certificate_conventions();
  for (std::size_t i = 0; i < 4 && i < all.size(); ++i) j.push_back(all[i]);
  return j;
}

Json conventions(const std::string& weights, const Json& caps) {
  return Json{{"sign", sign_conventions()}, {"weights", weights}, {"caps", caps}};
}

Json poly_list(const std::vector<Poly>& ps, const Ring& ring) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_string(p, ring));
  return a;
}

std::string exps_string(const Exponents& e) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < e.size(); ++k) os << (k ? "," : "") << e[k];
  os << ")";
  return os.str();
}

std::string degree_string(const std::optional<ExtDegree>& d, int cap) {
  if (!d) return "Inconclusive (cap " + std::to_string(cap) + ")";
  std::ostringstream os;
  os << *d;
  return os.str();
}

/// A job file holds either a bare hypersurface record or
/// { "hypersurface": ..., "derivation": ... }.
struct HypersurfaceJob {
  DanielewskiHypersurface h;
  std::optional<Derivation> derivation;
};

HypersurfaceJob load_hypersurface_job(const std::string& file) {
  const Json j = read_json_file(file);
  if (j.is_object() && j.contains("hypersurface")) {
    auto h = hypersurface_from_json(j["hypersurface"]);
    std::optional<Derivation> d;
    if (j.contains("derivation")) d = derivation_from_json(h, j["derivation"]);
    return {std::move(h), std::move(d)};
  }
  return {hypersurface_from_json(j), std::nullopt};
}

Cocycle load_cocycle(const Json& j, const std::string& path) {
  if (j.is_object() && j.contains("g")) return cocycle_from_json(j, path);
  const auto h = hypersurface_from_json(j, path);
  if (!h.sigma()) throw RecordError(path, "hypersurface record needs \"sigma\" to define a cocycle");
  return hypersurface_cocycle(h);
}

Json affineness_json(const Cocycle& c, const AffinenessVerdict& v) {
  const Ring lr = Ring::ambient(c.base().n, true);
  Json j;
  j["verdict"] = v.kind == AffinenessVerdict::Kind::Affine ? "Affine" : "NotSeparated";
  j["summary"] = v.describe();
  Json poles = Json::array();
  for (const auto& [ij, pd] : v.poles)
    poles.push_back({{"pair", std::to_string(ij.first) + std::to_string(ij.second)},
                     {"pole", exps_string(pd.pole)},
                     {"residue", to_string(pd.residue, lr)}});
  j["poles"] = poles;
  if (v.witness) {
    j["witness"] = {{"pair", std::to_string(v.witness->i) + std::to_string(v.witness->j)},
                    {"component", v.witness->component},
                    {"reason", v.witness->describe()}};
    if (v.witness->reason == AffinenessWitness::Reason::UnitIdealFailure)
      j["witness"]["restriction"] = to_string(v.witness->restriction, lr);
  }
  if (v.kind == AffinenessVerdict::Kind::Affine) {
    j["total_order_verified"] = v.total_order_verified;
    j["pole_signature"] = to_string(pole_signature(c));
  }
  return j;
}

Report check_cocycle(const std::string& file) {
  const Json j = read_json_file(file);
  const Cocycle c = load_cocycle(j, "cocycle");
  Report rep;
  rep.body["command"] = "check-cocycle";
  rep.body["conventions"] = conventions("none", Json::object());
  rep.body["cocycle"] = to_json(c);
  const auto v = affineness(c);
  rep.body["affineness"] = affineness_json(c, v);
  if (v.kind != AffinenessVerdict::Kind::Affine) rep.code = kExitNegative;
  if (j.is_object() && j.contains("compare")) {
    const Cocycle c2 = load_cocycle(j["compare"], "compare");
    const Ring lr = Ring::ambient(c.base().n, true);
    Json cmp;
    cmp["cocycle"] = to_json(c2);
    const auto cob = coboundary_test(c, c2);
    if (cob.cochain) {
      cmp["cohomologous"] = true;
      cmp["cochain"] = poly_list(*cob.cochain, lr);
    } else {
      cmp["cohomologous"] = false;
      cmp["offending_sheet"] = *cob.offending_sheet;
      cmp["witness"] = to_string(cob.witness, lr);
      rep.code = kExitNegative;
    }
    const auto v2 = affineness(c2);
    cmp["affineness"] = affineness_json(c2, v2);
    if (v.kind == AffinenessVerdict::Kind::Affine && v2.kind == AffinenessVerdict::Kind::Affine)
      cmp["restricted_orbit"] = restricted_orbit_test(c, c2).describe();
    rep.body["compare"] = cmp;
  }
  rep.body["status"] = rep.code == kExitVerified ? "verified" : "verified-negative";
  return rep;
}

Report build_variety(const std::string& file) {
  const auto job = load_hypersurface_job(file);
  const auto& h = job.h;
  const Ring ring = h.ring(), lr = h.ring(true);
  Report rep;
  rep.body["command"] = "build-variety";
  rep.body["conventions"] = conventions("none", Json::object());
  rep.body["hypersurface"] = to_json(h);
  rep.body["equation"] = to_string(h.defining_polynomial(), ring) + " = 0";
  rep.body["r"] = h.r();
  const auto sf = special_fiber(h);
  Json factors = Json::array();
  for (const auto& f : sf.factors) factors.push_back({{"factor", f.factor.to_string()}, {"multiplicity", f.multiplicity}});
  rep.body["special_fiber"] = {{"P", sf.p.to_string()}, {"factors", factors}, {"components", sf.components}};
  const auto d = canonical_derivation(h);
  rep.body["canonical_derivation"] = to_json(d);
  if (h.sigma()) {
    const Cocycle c = hypersurface_cocycle(h);
    rep.body["cocycle"] = to_json(c);
    Json charts = Json::array();
    for (int i = 1; i <= h.r(); ++i) charts.push_back(to_string(chart_coordinate(h, i), lr));
    rep.body["chart_coordinates"] = charts;
    rep.body["affineness"] = affineness_json(c, affineness(c));
    if (auto sfib = second_fibration(h))
      rep.body["second_fibration"] = sfib->description;
    else
      rep.body["second_fibration"] = nullptr;
  }
  rep.body["status"] = "verified";
  return rep;
}

Derivation job_derivation(const HypersurfaceJob& job) { return job.derivation ? *job.derivation : canonical_derivation(job.h); }

Report lnd_verify(const std::string& file, int cap, int samples) {
  const auto job = load_hypersurface_job(file);
  const auto& h = job.h;
  const Derivation d = job_derivation(job);
  const Ring ring = h.ring();
  Report rep;
  rep.body["command"] = "lnd-verify";
  rep.body["conventions"] = conventions("none", Json{{"nilpotency", cap}});
  rep.body["hypersurface"] = to_json(h);
  rep.body["derivation"] = to_json(d);
  rep.body["ideal_preservation"] = "d(" + to_string(h.defining_polynomial(), ring) + ") = 0 in B";
  const auto cert = certify_nilpotency(d, cap);
  rep.body["nilpotency"] = cert.describe(ring);
  Json degrees = Json::object();
  for (int g = 0; g < h.n() + 2; ++g) degrees[ring.name(g)] = degree_string(degree(d, Poly::variable(h.nvars(), g), cap), cap);
  rep.body["degrees"] = degrees;
  if (!cert.certified) {
    rep.code = kExitInconclusive;
    rep.body["status"] = "inconclusive";
    return rep;
  }
  Json flows = Json::object();
  const Ring tr(h.n(), {"y", "z", "u", "t"});
  const Poly t = Poly::variable(h.nvars() + 1, h.nvars());
  for (int g = 0; g < h.n() + 2; ++g)
    flows[ring.name(g)] = to_string(exponential_series(d, Poly::variable(h.nvars(), g), t, cap), tr);
  rep.body["exp_td"] = flows;
  const auto axioms = action_axioms_check(d, samples, 1, cap);
  rep.body["action_axioms"] = axioms.transcript;
  if (!axioms.ok) {
    rep.code = kExitNegative;
    rep.body["counterexample"] = *axioms.counterexample;
  }
  rep.body["status"] = rep.code == kExitVerified ? "verified" : "verified-negative";
  return rep;
}

Report ml_bound(const std::string& file, int max_degree, const std::string& catalog_file, bool second, int cap) {
  const auto job = load_hypersurface_job(file);
  const auto& h = job.h;
  std::vector<Derivation> catalog{canonical_derivation(h)};
  if (job.derivation) catalog.push_back(*job.derivation);
  if (!catalog_file.empty()) {
    const Json c = read_json_file(catalog_file);
    if (!c.is_array()) throw RecordError("catalog", "expected a JSON list of derivation records");
    for (std::size_t i = 0; i < c.size(); ++i) catalog.push_back(derivation_from_json(h, c[i], "catalog[" + std::to_string(i) + "]"));
  }
  if (second) {
    for (int k = 1; k <= h.n(); ++k)
      if (h.m()[static_cast<std::size_t>(k - 1)] == 1) {
        catalog.push_back(jacobian_derivation(h, k));
        break;
      }
  }
  const Ring ring = h.ring();
  Report rep;
  rep.body["command"] = "ml-bound";
  rep.body["conventions"] = conventions("none", Json{{"degree", max_degree}, {"nilpotency", cap}});
  rep.body["hypersurface"] = to_json(h);
  Json cat = Json::array();
  bool all_certified = true;
  for (const auto& d : catalog) {
    const auto cert = certify_nilpotency(d, cap);
    all_certified = all_certified && cert.certified;
    Json e = to_json(d);
    e["nilpotency"] = cert.describe(ring);
    cat.push_back(e);
  }
  rep.body["catalog"] = cat;
  if (!all_certified) {
    rep.code = kExitInconclusive;
    rep.body["status"] = "inconclusive";
    return rep;
  }
  rep.body["upper_bound_label"] = "upper bound for the degree <= " + std::to_string(max_degree) +
                                  " part of the Makar-Limanov invariant (intersection of catalog kernels)";
  rep.body["basis"] = poly_list(ml_upper_bound(h, catalog, max_degree), ring);
  rep.body["status"] = "verified";
  return rep;
}

WeightVector parse_weights(const std::string& text, int n) {
  std::vector<std::int64_t> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing characters");
      vals.push_back(v);
    } catch (const std::exception&) {
      throw RecordError("--weights", "expected comma-separated integers");
    }
  }
  if (static_cast<int>(vals.size()) != n + 1)
    throw RecordError("--weights", "expected " + std::to_string(n + 1) + " weights (x1..xn, y)");
  WeightVector w;
  w.dx.assign(vals.begin(), vals.end() - 1);
  w.dy = vals.back();
  return w;
}

Report gr_check(const std::string& file, const std::string& weights, int samples, std::uint64_t seed, int cap) {
  const auto job = load_hypersurface_job(file);
  const auto& h = job.h;
  const Derivation d = job_derivation(job);
  const Ring ring = h.ring();
  WeightVector seed_w = parse_weights(weights, h.n());
  std::vector<Exponents> support;
  for (const auto& img : d.images())
    for (const auto& [e, c] : img) support.push_back(e);
  AdmissibleWeight aw;
  try {
    aw = admissible_weight(h, seed_w, support);
  } catch (const std::invalid_argument& e) {
    throw RecordError("--weights", e.what());
  }
  Report rep;
  rep.body["command"] = "gr-check";
  rep.body["conventions"] = conventions(aw.weight.to_string(), Json{{"nilpotency", cap}, {"samples", samples}, {"seed", seed}});
  rep.body["hypersurface"] = to_json(h);
  rep.body["derivation"] = to_json(d);
  rep.body["weight"] = {{"seed", seed_w.bound(h.m(), h.r()).to_string()}, {"admissible", aw.weight.to_string()}, {"rescaling", aw.log}};
  std::optional<GradedDerivation> gd;
  try {
    gd.emplace(graded_derivation(d, aw.weight));
  } catch (const std::invalid_argument& e) {
    rep.body["graded"] = e.what();
    rep.body["status"] = "verified-negative";
    rep.code = kExitNegative;
    return rep;
  }
  rep.body["graded"] = {{"t0", gd->t0}, {"transcript", gd->transcript}, {"images", to_json(gd->graded)}};
  std::mt19937_64 rng(seed);
  std::vector<Poly> elems;
  for (int i = 0; i < samples; ++i) elems.push_back(random_ring_element(h, 4, rng));
  const auto ineq = degree_inequality_check(d, *gd, elems, cap);
  rep.body["degree_inequality"] = {{"checked", ineq.checked}, {"inconclusive", ineq.inconclusive}, {"holds", ineq.ok}};
  if (!ineq.ok) {
    rep.code = kExitNegative;
    Json bad = Json::array();
    for (const auto& l : ineq.transcript)
      if (l.rfind("VIOLATION", 0) == 0) bad.push_back(l);
    rep.body["violations"] = bad;
  } else if (ineq.inconclusive > 0) {
    rep.code = kExitInconclusive;
  }
  rep.body["status"] = rep.code == kExitVerified ? "verified" : rep.code == kExitNegative ? "verified-negative" : "inconclusive";
  return rep;
}

Report cancel_certificate(const std::string& src_file, const std::string& tgt_file, std::optional<int> tcap,
                          std::optional<int> xcap, const std::string& out_file) {
  const auto src = hypersurface_from_json(read_json_file(src_file), "source");
  const auto tgt = hypersurface_from_json(read_json_file(tgt_file), "target");
  if (!src.sigma() || !tgt.sigma()) throw RecordError("source", "both records need a \"sigma\" family");
  if (src.n() != tgt.n() || src.r() != tgt.r()) throw RecordError("target", "source and target live over different Z_{n,r}");
  SolverCaps caps = default_caps(src, tgt);
  if (tcap) caps.t_degree = *tcap;
  if (xcap) caps.x_degree = *xcap;
  if (caps.t_degree < 0 || caps.x_degree < 0) throw RecordError("caps", "caps must be nonnegative");
  Report rep;
  rep.body["command"] = "cancel-certificate";
  rep.body["conventions"] = conventions("none", Json{{"t_degree", caps.t_degree}, {"x_degree", caps.x_degree}});
  rep.body["source"] = to_json(src);
  rep.body["target"] = to_json(tgt);
  const Cocycle g = hypersurface_cocycle(src), gp = hypersurface_cocycle(tgt);
  const auto cob = coboundary_test(g, gp);
  Json cmp;
  cmp["cohomologous"] = cob.cochain.has_value();
  if (affineness(g).kind == AffinenessVerdict::Kind::Affine && affineness(gp).kind == AffinenessVerdict::Kind::Affine) {
    cmp["pole_signatures"] = {to_string(pole_signature(g)), to_string(pole_signature(gp))};
    cmp["restricted_orbit"] = restricted_orbit_test(g, gp).describe();
  }
  cmp["unit_exponent"] = {second_fibration(src).has_value(), second_fibration(tgt).has_value()};
  rep.body["comparison"] = cmp;
  const auto res = build_iso(src, tgt, caps);
  rep.body["solver"] = {{"H", res.h.describe()}, {"Hprime", res.hprime.describe()}};
  if (!res.certificate) {
    rep.code = kExitInconclusive;
    rep.body["status"] = "inconclusive";
    return rep;
  }
  const Json cert = to_json(*res.certificate);
  const Ring cr = chart_ring(src.n());
  rep.body["H"] = poly_list(res.certificate->h, cr);
  rep.body["Hprime"] = poly_list(res.certificate->hprime, cr);
  rep.body["ambient"] = cert["ambient"];
  rep.body["identities_verified"] = res.certificate->transcript.size();
  if (!out_file.empty()) {
    std::ofstream out(out_file);
    if (!out) throw RecordError(out_file, "cannot write certificate");
    out << cert.dump(2) << "\n";
    rep.body["certificate"] = out_file;
  } else {
    rep.body["certificate"] = cert;
  }
  rep.body["status"] = "verified";
  return rep;
}

Report recheck_file(const std::string& file) {
  const auto cert = certificate_from_json(read_json_file(file));
  RecheckResult res;
  try {
    res = recheck(cert);
  } catch (const std::invalid_argument& e) {
    throw RecordError("certificate", e.what());
  }
  Report rep;
  rep.body["command"] = "recheck";
  rep.body["conventions"] = conventions("none", Json::object());
  Json tr = Json::array();
  for (const auto& e : res.transcript) tr.push_back(e.status + ": " + e.identity);
  rep.body["transcript"] = tr;
  if (!res.ok) {
    rep.code = kExitNegative;
    rep.body["failing_identity"] = *res.failing;
  }
  rep.body["status"] = res.ok ? "verified" : "verified-negative";
  return rep;
}

void render(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    out << pad << key << ":";
    if ((value.is_object() || value.is_array()) && value.empty()) {
      out << " " << value.dump() << "\n";
    } else if (value.is_object()) {
      out << "\n";
      render(value, out, indent + 2);
    } else if (value.is_array()) {
      out << "\n";
      for (const auto& e : value) {
        if (e.is_string())
          out << pad << "  - " << e.get<std::string>() << "\n";
        else if (e.is_object()) {
          out << pad << "  -\n";
          render(e, out, indent + 4);
        } else
          out << pad << "  - " << e.dump() << "\n";
      }
    } else if (value.is_string()) {
      out << " " << value.get<std::string>() << "\n";
    } else {
      out << " " << value.dump() << "\n";
    }
  }
}

void diagnostic(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Danielewski varieties: cocycles, LNDs, graded derivations and cancellation certificates", "danvar"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Print the machine-readable report instead of the summary");

  std::string file, file2, catalog, out_file, weights = "";
  int nil_cap = kDefaultNilpotencyCap, degree_cap = 3, samples = 5, gr_samples = 100;
  std::uint64_t seed = 1;
  std::optional<int> tcap, xcap;
  bool second = false;

  auto* cc = app.add_subcommand("check-cocycle", "Affineness verdict for a cocycle or sigma-hypersurface record");
  cc->add_option("FILE", file, "JSON record")->required();
  auto* bv = app.add_subcommand("build-variety", "Describe a hypersurface, its charts, cocycle and special fiber");
  bv->add_option("FILE", file, "Hypersurface record")->required();
  auto* lv = app.add_subcommand("lnd-verify", "Certify a derivation as locally nilpotent and check the action axioms");
  lv->add_option("FILE", file, "Hypersurface record, optionally with a derivation")->required();
  lv->add_option("--nilpotency-cap", nil_cap, "Iteration cap")->check(CLI::Range(0, 100000));
  lv->add_option("--samples", samples, "Random elements for the action checks")->check(CLI::Range(0, 10000));
  auto* mb = app.add_subcommand("ml-bound", "Truncated upper bound for the Makar-Limanov invariant");
  mb->add_option("FILE", file, "Hypersurface record")->required();
  mb->add_option("--degree-cap", degree_cap, "Degree cap D")->check(CLI::Range(0, 64));
  mb->add_option("--catalog", catalog, "JSON list of derivation records");
  mb->add_option("--nilpotency-cap", nil_cap, "Iteration cap")->check(CLI::Range(0, 100000));
  mb->add_flag("--second-fibration", second, "Add the derivation of the second fibration when some m_k = 1");
  auto* gc = app.add_subcommand("gr-check", "Graded derivation and degree inequality for a weight vector");
  gc->add_option("FILE", file, "Hypersurface record, optionally with a derivation")->required();
  gc->add_option("--weights", weights, "Weights d_x1,...,d_xn,d_y")->required();
  gc->add_option("--samples", gr_samples, "Random elements for the inequality")->check(CLI::Range(0, 100000));
  gc->add_option("--seed", seed, "Random seed");
  gc->add_option("--nilpotency-cap", nil_cap, "Iteration cap")->check(CLI::Range(0, 100000));
  auto* ce = app.add_subcommand("cancel-certificate", "Build a verified isomorphism X x C -> X' x C");
  ce->add_option("SRC", file, "Source hypersurface record")->required();
  ce->add_option("TGT", file2, "Target hypersurface record")->required();
  ce->add_option("--t-cap", tcap, "Cap on the t-degree of the cochains")->check(CLI::Range(0, 64));
  ce->add_option("--x-cap", xcap, "Cap on the x-degree of the cochains")->check(CLI::Range(0, 256));
  ce->add_option("-o,--output", out_file, "Certificate output file");
  auto* rc = app.add_subcommand("recheck", "Re-verify a certificate from its JSON file alone");
  rc->add_option("CERT", file, "Certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    diagnostic(err, "usage", e.what());
    return kExitInputError;
  }

  Report rep;
  try {
    if (*cc)
      rep = check_cocycle(file);
    else if (*bv)
      rep = build_variety(file);
    else if (*lv)
      rep = lnd_verify(file, nil_cap, samples);
    else if (*mb)
      rep = ml_bound(file, degree_cap, catalog, second, nil_cap);
    else if (*gc)
      rep = gr_check(file, weights, gr_samples, seed, nil_cap);
    else if (*ce)
      rep = cancel_certificate(file, file2, tcap, xcap, out_file);
    else
      rep = recheck_file(file);
  } catch (const RecordError& e) {
    diagnostic(err, "input", e.what());
    return kExitInputError;
  } catch (const ParseError& e) {
    diagnostic(err, "parse", e.what());
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    diagnostic(err, "input", e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    diagnostic(err, "internal", e.what());
    return kExitInputError;
  }
  if (json)
    out << rep.body.dump(2) << "\n";
  else
    render(rep.body, out, 0);
  return rep.code;
}

}  // namespace danvar
