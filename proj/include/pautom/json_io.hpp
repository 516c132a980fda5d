#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pautom/spectral.hpp"
#include "pautom/statistics.hpp"
#include "pautom/tree_action.hpp"
#include "pautom/wreath.hpp"

namespace pautom {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, const std::string& path)
      : std::runtime_error(message + " at " + (path.empty() ? "/" : path)), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Element format, recursive: a level-1 element is a 2-array over {0,1,2}
/// with 0 = undefined; deeper elements are {"a":[t1,t2],"children":{...}}
/// where "children" holds exactly the keys "1"/"2" with a defined at that
/// branch. parse/serialize round-trip to the identical element.
nlohmann::json element_to_json(const WreathElement& x);
WreathElement element_from_json(const nlohmann::json& j, int level);
WreathElement element_from_string(const std::string& text, int level);

/// {"n":..., "rows":[j or 0, ...]} with 0 = undefined row.
nlohmann::json matrix_to_json(const ActionMatrix& a);
ActionMatrix matrix_from_json(const nlohmann::json& j);

/// {"n":..., "zeros":..., "cycles":[k1,k2,...]}.
nlohmann::json measure_to_json(const SpectralMeasure& m);
SpectralMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const VerificationReport& rep);

}  // namespace pautom
