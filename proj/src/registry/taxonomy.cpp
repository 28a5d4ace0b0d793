#include <algorithm>
#include <sstream>

#include "common/error.hpp"
#include "registry/registry.hpp"

namespace semreg::registry {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Taxonomy parse_taxonomy(std::string_view text) {
  Taxonomy t;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string_view key = trim(body.substr(0, colon));
      const std::string_view value = trim(body.substr(colon + 1));
      if (key == "name") {
        t.name = std::string(value);
      } else if (key == "tmodel-key") {
        t.tmodel_key = std::string(value);
      } else if (key == "checked") {
        t.checked = value != "false";
      }
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument, "taxonomy line " + std::to_string(line_no) + " has no tab separator",
                  {{"line", std::to_string(line_no)}});
    }
    t.values.emplace_back(std::string(trim(line.substr(0, tab))), std::string(trim(line.substr(tab + 1))));
  }
  if (t.name.empty() || t.tmodel_key.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "taxonomy file needs '# name:' and '# tmodel-key:' headers");
  }
  std::sort(t.values.begin(), t.values.end());
  return t;
}

std::string format_taxonomy(const Taxonomy& taxonomy) {
  std::ostringstream out;
  out << "# name: " << taxonomy.name << "\n# tmodel-key: " << taxonomy.tmodel_key
      << "\n# checked: " << (taxonomy.checked ? "true" : "false") << '\n';
  for (const auto& [code, label] : taxonomy.values) out << code << '\t' << label << '\n';
  return out.str();
}

}  // namespace semreg::registry
