#pragma once

// Characteristic definition files:
//
//   # comment
//   name = routine_tasks
//
//   [definition]
//   source = Some Handbook (2011)
//       First line of the definition body, indented.
//       Further indented lines continue the same body.
//
// Each [definition] block needs an indented, nonempty body. Definition order
// is preserved.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "occ2vec/error.hpp"
#include "occ2vec/text.hpp"

namespace occ2vec {

struct CharacteristicDefinition {
  std::string name;
  std::vector<std::string> definitions;
  std::vector<std::string> source_labels;
};

inline CharacteristicDefinition parse_characteristic(std::string_view content, const std::string& what) {
  CharacteristicDefinition def;
  std::vector<std::string> bodies;
  bool in_block = false;
  std::size_t block_line = 0;
  std::size_t line_no = 0;

  auto close_block = [&] {
    if (!in_block) return;
    std::string body = text::clean(bodies.back());
    if (body.empty()) throw InputError(what + ": definition starting at line " + std::to_string(block_line) + " has an empty body");
    def.definitions.push_back(std::move(body));
    in_block = false;
  };

  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    std::string line(raw);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const bool indented = text::is_space(static_cast<unsigned char>(line.front()));

    if (trimmed == "[definition]") {
      close_block();
      in_block = true;
      block_line = line_no;
      bodies.emplace_back();
      def.source_labels.emplace_back();
      continue;
    }
    if (in_block && indented) {
      bodies.back() += ' ';
      bodies.back() += trimmed;
      continue;
    }
    const auto eq = trimmed.find('=');
    if (eq == std::string_view::npos)
      throw InputError(what + ": line " + std::to_string(line_no) + ": expected 'key = value' or an indented body");
    const auto key = text::trim(trimmed.substr(0, eq));
    const auto value = text::clean(trimmed.substr(eq + 1));
    if (key == "name" && !in_block && def.definitions.empty()) {
      def.name = value;
    } else if (key == "source" && in_block && bodies.back().empty()) {
      def.source_labels.back() = value;
    } else {
      throw InputError(what + ": line " + std::to_string(line_no) + ": unexpected key '" + std::string(key) + "'");
    }
  }
  close_block();

  if (def.name.empty()) throw InputError(what + ": missing 'name = ...'");
  if (def.definitions.empty()) throw InputError(what + ": no [definition] blocks");
  return def;
}

inline CharacteristicDefinition load_characteristic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open characteristic file " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_characteristic(content, path.string());
}

}  // namespace occ2vec
