#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "danvar/bundle_cocycle.hpp"
#include "danvar/cancellation.hpp"
#include "danvar/danielewski_ring.hpp"
#include "danvar/lnd.hpp"

namespace danvar {

using Json = nlohmann::ordered_json;

/// Schema violation in an input record; `path` locates the offending field.
class RecordError : public std::runtime_error {
 public:
  RecordError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// { "n": int, "m": [int...], "Q": "poly", "sigma": ["poly"...] }. "Q" may be
/// omitted when "sigma" is given.
DanielewskiHypersurface hypersurface_from_json(const Json& j, const std::string& path = "hypersurface");
Json to_json(const DanielewskiHypersurface& h);

/// { "n": int, "r": int, "g": [ {"i": int, "j": int, "value": "laurent"} ... ] }
Cocycle cocycle_from_json(const Json& j, const std::string& path = "cocycle");
Json to_json(const Cocycle& c);

/// { "dx": ["poly"...], "dy": "poly", "dz": "poly" }
Derivation derivation_from_json(const DanielewskiHypersurface& h, const Json& j, const std::string& path = "derivation");
Json to_json(const Derivation& d);

Json to_json(const IsoCertificate& cert);
IsoCertificate certificate_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace danvar
