#include "switchminer/core/xml.hpp"

#include <expat.h>

#include <algorithm>

#include "switchminer/core/error.hpp"

namespace switchminer::xml {

std::optional<std::string_view> Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return std::string_view(v);
  }
  return std::nullopt;
}

const Element* Element::child(std::string_view child_name) const {
  for (const auto& c : children) {
    if (c->name == child_name) return c.get();
  }
  return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view child_name) const {
  std::vector<const Element*> out;
  for (const auto& c : children) {
    if (c->name == child_name) out.push_back(c.get());
  }
  return out;
}

namespace {

struct Builder {
  XML_Parser parser = nullptr;
  std::unique_ptr<Element> root;
  std::vector<Element*> stack;

  static void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
    auto* self = static_cast<Builder*>(user);
    auto element = std::make_unique<Element>();
    element->name = name;
    element->line = static_cast<std::size_t>(XML_GetCurrentLineNumber(self->parser));
    for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
      element->attributes.emplace_back(attrs[i], attrs[i + 1]);
    }
    Element* raw = element.get();
    if (self->stack.empty()) {
      self->root = std::move(element);
    } else {
      self->stack.back()->children.push_back(std::move(element));
    }
    self->stack.push_back(raw);
  }

  static void on_end(void* user, const XML_Char*) {
    static_cast<Builder*>(user)->stack.pop_back();
  }

  static void on_text(void* user, const XML_Char* s, int len) {
    auto* self = static_cast<Builder*>(user);
    if (!self->stack.empty()) self->stack.back()->text.append(s, static_cast<std::size_t>(len));
  }
};

struct ParserHandle {
  XML_Parser parser;
  ParserHandle() : parser(XML_ParserCreate("UTF-8")) {}
  ~ParserHandle() { XML_ParserFree(parser); }
  ParserHandle(const ParserHandle&) = delete;
  ParserHandle& operator=(const ParserHandle&) = delete;
};

}  // namespace

std::unique_ptr<Element> parse(std::string_view document) {
  ParserHandle handle;
  if (handle.parser == nullptr) throw InternalError("unable to allocate XML parser");
  Builder builder;
  builder.parser = handle.parser;
  XML_SetUserData(handle.parser, &builder);
  XML_SetElementHandler(handle.parser, &Builder::on_start, &Builder::on_end);
  XML_SetCharacterDataHandler(handle.parser, &Builder::on_text);

  constexpr std::size_t kChunk = 1 << 20;
  std::size_t offset = 0;
  do {
    const std::size_t len = std::min(kChunk, document.size() - offset);
    const bool last = offset + len == document.size();
    if (XML_Parse(handle.parser, document.data() + offset, static_cast<int>(len), last) ==
        XML_STATUS_ERROR) {
      const auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(handle.parser));
      throw ParseError("XML error at line " + std::to_string(line) + ": " +
                           XML_ErrorString(XML_GetErrorCode(handle.parser)),
                       line);
    }
    offset += len;
  } while (offset < document.size());
  if (!builder.root) throw ParseError("XML document has no root element", 1);
  return std::move(builder.root);
}

std::string escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace switchminer::xml
