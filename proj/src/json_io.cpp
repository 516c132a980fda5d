#include "pautom/json_io.hpp"

namespace pautom {

using nlohmann::json;

namespace {

json i2_to_json(const I2Element& a) {
  return json::array({a.image(1), a.image(2)});
}

I2Element i2_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("expected a 2-array of images", path);
  std::uint8_t im[2];
  for (int i = 0; i < 2; ++i) {
    if (!j[i].is_number_unsigned() || j[i].get<std::uint64_t>() > 2)
      throw ParseError("image entries must be 0, 1 or 2", path);
    im[i] = j[i].get<std::uint8_t>();
  }
  if (im[0] != 0 && im[0] == im[1]) throw ParseError("images are not injective", path);
  return I2Element::of(im[0], im[1]);
}

WreathElement::Ptr element_ptr_from_json(const json& j, int level, const std::string& path) {
  if (level < 1) throw ParseError("element level must be >= 1", path);
  if (level == 1) {
    if (j.is_object())
      throw ParseError("expected a level-1 element (2-array), found an object", path);
    return std::make_shared<const WreathElement>(i2_from_json(j, path));
  }
  if (!j.is_object()) throw ParseError("expected an object with \"a\" and \"children\"", path);
  if (!j.contains("a")) throw ParseError("missing key \"a\"", path);
  if (!j.contains("children")) throw ParseError("missing key \"children\"", path);
  for (const auto& [key, _] : j.items())
    if (key != "a" && key != "children") throw ParseError("unexpected key \"" + key + "\"", path);
  const I2Element a = i2_from_json(j["a"], path + "/a");
  const json& children = j["children"];
  if (!children.is_object()) throw ParseError("\"children\" must be an object", path + "/children");
  WreathElement::Ptr ch[2];
  for (const auto& [key, value] : children.items()) {
    if (key != "1" && key != "2")
      throw ParseError("child keys must be \"1\" or \"2\"", path + "/children/" + key);
    const int b = key[0] - '0';
    if (!a.defined(b))
      throw ParseError("child present for branch outside dom(a)", path + "/children/" + key);
    ch[b - 1] = element_ptr_from_json(value, level - 1, path + "/children/" + key);
  }
  for (int b = 1; b <= 2; ++b)
    if (a.defined(b) && !ch[b - 1])
      throw ParseError("missing child for branch " + std::to_string(b) + " in dom(a)",
                       path + "/children");
  return std::make_shared<const WreathElement>(level, a, ch[0], ch[1]);
}

}  // namespace

json element_to_json(const WreathElement& x) {
  if (x.level() == 1) return i2_to_json(x.top());
  json children = json::object();
  for (int b = 1; b <= 2; ++b)
    if (x.top().defined(b)) children[std::to_string(b)] = element_to_json(*x.child(b));
  return json{{"a", i2_to_json(x.top())}, {"children", children}};
}

WreathElement element_from_json(const json& j, int level) {
  return *element_ptr_from_json(j, level, "");
}

WreathElement element_from_string(const std::string& text, int level) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), "");
  }
  return element_from_json(j, level);
}

json matrix_to_json(const ActionMatrix& a) {
  return json{{"n", a.depth()}, {"rows", a.rows()}};
}

ActionMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
    throw ParseError("expected {\"n\":..., \"rows\":[...]}", "");
  const int depth = j["n"].get<int>();
  std::vector<std::uint32_t> rows;
  for (std::size_t i = 0; i < j["rows"].size(); ++i) {
    const auto& r = j["rows"][i];
    if (!r.is_number_unsigned())
      throw ParseError("row images must be nonnegative integers", "/rows/" + std::to_string(i));
    rows.push_back(r.get<std::uint32_t>());
  }
  return ActionMatrix(depth, std::move(rows));
}

json measure_to_json(const SpectralMeasure& m) {
  return json{{"n", m.depth}, {"zeros", m.zero_multiplicity}, {"cycles", m.cycle_lengths}};
}

SpectralMeasure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("zeros") || !j.contains("cycles"))
    throw ParseError("expected {\"n\":..., \"zeros\":..., \"cycles\":[...]}", "");
  SpectralMeasure m;
  m.depth = j["n"].get<int>();
  m.zero_multiplicity = j["zeros"].get<std::uint64_t>();
  m.cycle_lengths = j["cycles"].get<std::vector<std::uint64_t>>();
  std::uint64_t total = m.zero_multiplicity;
  for (std::uint64_t len : m.cycle_lengths) total += len;
  if (total != m.dim())
    throw ParseError("zeros plus cycle lengths must sum to 2^n", "");
  return m;
}

json report_to_json(const VerificationReport& rep) {
  json claims = json::array();
  for (const Claim& c : rep.claims) {
    json jc{{"claim", c.claim},
            {"expected", c.expected},
            {"computed", c.computed},
            {"pass", c.pass}};
    if (!c.note.empty()) jc["note"] = c.note;
    claims.push_back(jc);
  }
  return json{{"n_cap", rep.level_cap}, {"all_pass", rep.all_pass()}, {"claims", claims}};
}

}  // namespace pautom
