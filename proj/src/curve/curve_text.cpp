#include "pegboard/curve_text.hpp"

#include <sstream>
#include <vector>

#include "pegboard/errors.hpp"

namespace pegboard {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

[[noreturn]] void syntax(std::size_t line, std::size_t col, const std::string& what) {
  throw Error(ErrorCode::SyntaxError,
              "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

}  // namespace

CurveDiagram parse_curve_text(std::string_view text, std::string source) {
  CurveDiagram d;
  d.source = std::move(source);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tok[0].text == "component") {
      if (tok.size() != 2) syntax(line_no, tok[0].column, "expected 'component winding=<0|1>'");
      if (tok[1].text == "winding=0" || tok[1].text == "winding=1") {
        d.components.push_back(Component{{}, tok[1].text.back() - '0'});
      } else {
        syntax(line_no, tok[1].column, "expected winding=0 or winding=1");
      }
    } else if (tok[0].text == "v") {
      if (d.components.empty()) syntax(line_no, tok[0].column, "vertex before any component header");
      if (tok.size() != 3) syntax(line_no, tok[0].column, "expected 'v <x> <y>'");
      Rational xy[2];
      for (int k = 0; k < 2; ++k) {
        try {
          xy[k] = Rational::parse(tok[1 + k].text);
        } catch (const std::invalid_argument& e) {
          syntax(line_no, tok[1 + k].column, e.what());
        }
      }
      d.components.back().vertices.push_back({xy[0], xy[1]});
    } else {
      syntax(line_no, tok[0].column, "unknown directive '" + std::string(tok[0].text) + "'");
    }
    if (end == text.size()) break;
  }
  require_valid(d);
  return d;
}

std::string emit_curve_text(const CurveDiagram& d) {
  CurveDiagram c = canonicalize(d);
  std::ostringstream os;
  if (!c.source.empty()) os << "# " << c.source << "\n";
  for (const auto& comp : c.components) {
    os << "component winding=" << comp.winding << "\n";
    for (const auto& v : comp.vertices) os << "v " << v.x.str() << " " << v.y.str() << "\n";
  }
  return os.str();
}

}  // namespace pegboard
