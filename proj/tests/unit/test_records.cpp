#include <doctest.h>

#include "danvar/records.hpp"
#include "support.hpp"

using namespace danvar;
using testsupport::P;

namespace {

std::string error_path(const std::function<void()>& f) {
  try {
    f();
  } catch (const RecordError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("hypersurface records") {
  const auto h = hypersurface_from_json(Json::parse(R"({"n": 1, "m": [2], "sigma": ["1", "-1"]})"));
  CHECK(h.r() == 2);
  CHECK(h.q() == P("y^2 - 1", h.ring()));
  const auto back = hypersurface_from_json(to_json(h));
  CHECK(back == h);
  REQUIRE(back.sigma());
  CHECK(back.sigma()->sigma.size() == 2);
  const auto q = hypersurface_from_json(Json::parse(R"({"n": 2, "m": [1, 3], "Q": "y^3 + x1*y"})"));
  CHECK(hypersurface_from_json(to_json(q)) == q);
  CHECK_FALSE(hypersurface_from_json(to_json(q)).sigma());
}

TEST_CASE("hypersurface schema errors") {
  CHECK(error_path([] { hypersurface_from_json(Json::parse(R"({"m": [1], "Q": "y^2"})")); }) == "hypersurface");
  CHECK(error_path([] { hypersurface_from_json(Json::parse(R"({"n": 0, "m": [], "Q": "y^2"})")); }) == "hypersurface.n");
  CHECK(error_path([] { hypersurface_from_json(Json::parse(R"({"n": 1, "m": [1]})")); }) == "hypersurface");
  CHECK(error_path([] { hypersurface_from_json(Json::parse(R"({"n": 1, "m": ["a"], "Q": "y^2"})")); }) != "<no error>");
  CHECK(error_path([] { hypersurface_from_json(Json::parse(R"({"n": 1, "m": [1], "Q": "y^2 +"})")); }) != "<no error>");
  CHECK(error_path([] { hypersurface_from_json(Json::parse(R"([1, 2])")); }) == "hypersurface");
}

TEST_CASE("cocycle records") {
  const auto c = cocycle_from_json(Json::parse(R"({"n": 1, "r": 2, "g": [{"i": 2, "j": 1, "value": "2*x1^-1"}]})"));
  const Ring lr = Ring::ambient(1, true);
  CHECK(c.g(1, 2) == P("-2*x1^-1", lr));
  const auto back = cocycle_from_json(to_json(c));
  CHECK(back.g(1, 2) == c.g(1, 2));
  CHECK(error_path([] {
          cocycle_from_json(Json::parse(
              R"({"n": 1, "r": 2, "g": [{"i": 1, "j": 2, "value": "1"}, {"i": 2, "j": 1, "value": "-1"}]})"));
        }) != "<no error>");
  CHECK(error_path([] { cocycle_from_json(Json::parse(R"({"n": 1, "r": 2, "g": [{"i": 1, "j": 3, "value": "1"}]})")); }) !=
        "<no error>");
}

TEST_CASE("derivation records") {
  const auto h = testsupport::sigma_pm1({1});
  const auto d = derivation_from_json(h, Json::parse(R"({"dx": ["0"], "dy": "x1", "dz": "2*y"})"));
  CHECK(d.images() == canonical_derivation(h).images());
  CHECK(derivation_from_json(h, to_json(d)).images() == d.images());
  CHECK(error_path([&] { derivation_from_json(h, Json::parse(R"({"dx": [], "dy": "x1", "dz": "2*y"})")); }) ==
        "derivation.dx");
}

TEST_CASE("read_json_file errors") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), RecordError);
}
