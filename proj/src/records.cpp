#include "danvar/records.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace danvar {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw RecordError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw RecordError(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw RecordError(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -(1 << 30) || v > (1 << 30)) throw RecordError(path, "integer out of range");
  return static_cast<int>(v);
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw RecordError(path, "expected a string");
  return j.get<std::string>();
}

Poly get_poly(const Json& j, const Ring& ring, const std::string& path) {
  const std::string text = get_string(j, path);
  try {
    return parse_poly(text, ring);
  } catch (const ParseError& e) {
    throw RecordError(path, e.what());
  }
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw RecordError(path, "expected an array");
  return j;
}

template <class F>
auto wrap(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const RecordError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw RecordError(path, e.what());
  } catch (const std::out_of_range& e) {
    throw RecordError(path, e.what());
  }
}

}  // namespace

DanielewskiHypersurface hypersurface_from_json(const Json& j, const std::string& path) {
  const int n = get_int(field(j, "n", path), path + ".n");
  if (n < 1 || n > 64) throw RecordError(path + ".n", "n must be between 1 and 64");
  const Ring ring = Ring::ambient(n);
  Exponents m;
  const auto& jm = array(field(j, "m", path), path + ".m");
  for (std::size_t k = 0; k < jm.size(); ++k) m.push_back(get_int(jm[k], path + ".m[" + std::to_string(k) + "]"));
  std::optional<SigmaFamily> sigma;
  if (j.contains("sigma")) {
    const auto& js = array(j["sigma"], path + ".sigma");
    SigmaFamily s;
    for (std::size_t i = 0; i < js.size(); ++i)
      s.sigma.push_back(get_poly(js[i], ring, path + ".sigma[" + std::to_string(i) + "]"));
    sigma = std::move(s);
  }
  return wrap(path, [&] {
    if (!j.contains("Q")) {
      if (!sigma) throw RecordError(path, "missing field \"Q\"");
      return DanielewskiHypersurface::from_sigma(n, m, sigma->sigma);
    }
    return DanielewskiHypersurface(n, m, get_poly(j["Q"], ring, path + ".Q"), sigma);
  });
}

Json to_json(const DanielewskiHypersurface& h) {
  const Ring ring = h.ring();
  Json j;
  j["n"] = h.n();
  j["m"] = h.m();
  j["Q"] = to_string(h.q(), ring);
  if (h.sigma()) {
    Json s = Json::array();
    for (const auto& p : h.sigma()->sigma) s.push_back(to_string(p, ring));
    j["sigma"] = s;
  }
  return j;
}

Cocycle cocycle_from_json(const Json& j, const std::string& path) {
  const int n = get_int(field(j, "n", path), path + ".n");
  const int r = get_int(field(j, "r", path), path + ".r");
  if (n < 1 || n > 64) throw RecordError(path + ".n", "n must be between 1 and 64");
  if (r < 1 || r > 64) throw RecordError(path + ".r", "r must be between 1 and 64");
  const Ring ring = Ring::ambient(n, true);
  std::map<std::pair<int, int>, Poly> upper;
  const auto& jg = array(field(j, "g", path), path + ".g");
  for (std::size_t k = 0; k < jg.size(); ++k) {
    const std::string p = path + ".g[" + std::to_string(k) + "]";
    int a = get_int(field(jg[k], "i", p), p + ".i");
    int b = get_int(field(jg[k], "j", p), p + ".j");
    Poly v = get_poly(field(jg[k], "value", p), ring, p + ".value");
    if (a < 1 || b < 1 || a > r || b > r || a == b) throw RecordError(p, "sheet indices must be distinct and in 1..r");
    if (a > b) {
      std::swap(a, b);
      v = -v;
    }
    if (!upper.emplace(std::make_pair(a, b), std::move(v)).second) throw RecordError(p, "duplicate entry for this pair");
  }
  return wrap(path, [&] { return Cocycle(BaseScheme{n, r}, std::move(upper)); });
}

Json to_json(const Cocycle& c) {
  const Ring ring = Ring::ambient(c.base().n, true);
  Json j;
  j["n"] = c.base().n;
  j["r"] = c.base().r;
  Json g = Json::array();
  for (int i = 1; i <= c.base().r; ++i)
    for (int k = i + 1; k <= c.base().r; ++k) g.push_back({{"i", i}, {"j", k}, {"value", to_string(c.g(i, k), ring)}});
  j["g"] = g;
  return j;
}

Derivation derivation_from_json(const DanielewskiHypersurface& h, const Json& j, const std::string& path) {
  const Ring ring = h.ring();
  const auto& jx = array(field(j, "dx", path), path + ".dx");
  if (static_cast<int>(jx.size()) != h.n()) throw RecordError(path + ".dx", "expected " + std::to_string(h.n()) + " entries");
  std::vector<Poly> images;
  for (std::size_t k = 0; k < jx.size(); ++k) images.push_back(get_poly(jx[k], ring, path + ".dx[" + std::to_string(k) + "]"));
  images.push_back(get_poly(field(j, "dy", path), ring, path + ".dy"));
  images.push_back(get_poly(field(j, "dz", path), ring, path + ".dz"));
  return wrap(path, [&] { return Derivation(h, std::move(images)); });
}

Json to_json(const Derivation& d) {
  const Ring ring = d.owner().ring();
  Json j;
  Json dx = Json::array();
  for (int k = 0; k < d.owner().n(); ++k) dx.push_back(to_string(d.image(k), ring));
  j["dx"] = dx;
  j["dy"] = to_string(d.image(d.owner().y_slot()), ring);
  j["dz"] = to_string(d.image(d.owner().z_slot()), ring);
  return j;
}

Json to_json(const IsoCertificate& cert) {
  const Ring cr = chart_ring(cert.source.n());
  const Ring ar = cert.source.ring();
  Json j;
  j["source"] = to_json(cert.source);
  j["target"] = to_json(cert.target);
  Json h = Json::array(), hp = Json::array();
  for (const auto& p : cert.h) h.push_back(to_string(p, cr));
  for (const auto& p : cert.hprime) hp.push_back(to_string(p, cr));
  j["H"] = h;
  j["Hprime"] = hp;
  Json charts = Json::array();
  for (const auto& c : cert.charts)
    charts.push_back({{"sheet", c.sheet},
                      {"w", to_string(c.w, cr)},
                      {"v", to_string(c.v, cr)},
                      {"t", to_string(c.t_inv, cr)},
                      {"u", to_string(c.u_inv, cr)}});
  j["charts"] = charts;
  if (cert.ambient)
    j["ambient"] = {{"y", to_string(cert.ambient->y, ar)}, {"z", to_string(cert.ambient->z, ar)}, {"u", to_string(cert.ambient->u, ar)}};
  else
    j["ambient"] = nullptr;
  Json tr = Json::array();
  for (const auto& e : cert.transcript) tr.push_back({{"identity", e.identity}, {"status", e.status}});
  j["transcript"] = tr;
  j["conventions"] = cert.conventions;
  j["caps"] = {{"H", {{"t_degree", cert.caps_h.t_degree}, {"x_degree", cert.caps_h.x_degree}}},
               {"Hprime", {{"t_degree", cert.caps_hprime.t_degree}, {"x_degree", cert.caps_hprime.x_degree}}}};
  return j;
}

IsoCertificate certificate_from_json(const Json& j) {
  const std::string path = "certificate";
  auto src = hypersurface_from_json(field(j, "source", path), path + ".source");
  auto tgt = hypersurface_from_json(field(j, "target", path), path + ".target");
  if (src.n() != tgt.n()) throw RecordError(path, "source and target have different n");
  const Ring cr = chart_ring(src.n());
  const Ring ar = src.ring();
  auto polys = [&](const char* key) {
    std::vector<Poly> out;
    const auto& a = array(field(j, key, path), path + "." + key);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_poly(a[i], cr, path + "." + key + "[" + std::to_string(i) + "]"));
    return out;
  };
  IsoCertificate cert{src, tgt, polys("H"), polys("Hprime"), {}, std::nullopt, {}, {}, {}, {}};
  const auto& charts = array(field(j, "charts", path), path + ".charts");
  for (std::size_t i = 0; i < charts.size(); ++i) {
    const std::string p = path + ".charts[" + std::to_string(i) + "]";
    cert.charts.push_back(ChartMap{get_int(field(charts[i], "sheet", p), p + ".sheet"),
                                   get_poly(field(charts[i], "w", p), cr, p + ".w"),
                                   get_poly(field(charts[i], "v", p), cr, p + ".v"),
                                   get_poly(field(charts[i], "t", p), cr, p + ".t"),
                                   get_poly(field(charts[i], "u", p), cr, p + ".u")});
  }
  const auto& amb = field(j, "ambient", path);
  if (!amb.is_null())
    cert.ambient = AmbientForm{get_poly(field(amb, "y", path + ".ambient"), ar, path + ".ambient.y"),
                               get_poly(field(amb, "z", path + ".ambient"), ar, path + ".ambient.z"),
                               get_poly(field(amb, "u", path + ".ambient"), ar, path + ".ambient.u")};
  if (j.contains("transcript"))
    for (const auto& e : array(j["transcript"], path + ".transcript"))
      cert.transcript.push_back({get_string(field(e, "identity", path + ".transcript"), path + ".transcript"),
                                 get_string(field(e, "status", path + ".transcript"), path + ".transcript")});
  if (j.contains("conventions"))
    for (const auto& e : array(j["conventions"], path + ".conventions")) cert.conventions.push_back(get_string(e, path + ".conventions"));
  if (j.contains("caps")) {
    auto caps = [&](const char* key) {
      const auto& c = field(j["caps"], key, path + ".caps");
      return SolverCaps{get_int(field(c, "t_degree", path + ".caps"), path + ".caps"),
                        get_int(field(c, "x_degree", path + ".caps"), path + ".caps")};
    };
    cert.caps_h = caps("H");
    cert.caps_hprime = caps("Hprime");
  }
  return cert;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RecordError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw RecordError(path, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace danvar
