#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace switchminer::xml {

// Small DOM built on expat. Enough for the XES and PNML subsets we read.
struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<std::unique_ptr<Element>> children;
  std::string text;
  std::size_t line = 0;

  std::optional<std::string_view> attribute(std::string_view key) const;
  const Element* child(std::string_view child_name) const;
  std::vector<const Element*> children_named(std::string_view child_name) const;
};

// Throws ParseError carrying the offending line number.
std::unique_ptr<Element> parse(std::string_view document);

std::string escape(std::string_view raw);

}  // namespace switchminer::xml
