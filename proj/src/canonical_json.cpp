#include "moodfilm/canonical_json.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace moodfilm {

std::string format_number(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite number in canonical JSON");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 3);
  if (ec != std::errc{}) throw std::invalid_argument("number too large for canonical JSON");
  std::string out(buf, end);
  while (out.back() == '0') out.pop_back();
  if (out.back() == '.') out.pop_back();
  if (out == "-0") out = "0";
  return out;
}

namespace {

void dump_into(const nlohmann::json& v, std::string& out) {
  using value_t = nlohmann::json::value_t;
  switch (v.type()) {
    case value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {  // std::map: keys already sorted
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump(-1, ' ', false);
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        dump_into(v[i], out);
      }
      out += ']';
      break;
    }
    case value_t::number_float:
      out += format_number(v.get<double>());
      break;
    case value_t::discarded:
      throw std::invalid_argument("discarded value in canonical JSON");
    default:
      out += v.dump(-1, ' ', false);
      break;
  }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& value) {
  std::string out;
  dump_into(value, out);
  out += '\n';
  return out;
}

}  // namespace moodfilm
