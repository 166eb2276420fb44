#include "jobgraph/node_key.hpp"

#include "jobgraph/error.hpp"

namespace jobgraph {

namespace {

constexpr char kHex[] = "0123456789ABCDEF";

void escape_byte(std::string& out, unsigned char c) {
  out.push_back('%');
  out.push_back(kHex[c >> 4]);
  out.push_back(kHex[c & 15]);
}

std::string encode(const NodeRef& node, bool underscore_spaces) {
  std::string out = node.kind == NodeKind::Job ? "J:" : "T:";
  for (unsigned char c : node.key) {
    if (c == ' ' && underscore_spaces)
      out.push_back('_');
    else if (c <= ' ' || c == '%' || c == 0x7f || (c == '_' && underscore_spaces))
      escape_byte(out, c);
    else
      out.push_back(static_cast<char>(c));
  }
  return out;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::string walk_token(const NodeRef& node) { return encode(node, true); }

std::string embedding_token(const NodeRef& node) { return encode(node, false); }

static NodeRef decode(std::string_view token, bool underscore_spaces) {
  if (token.size() < 3 || token[1] != ':' || (token[0] != 'J' && token[0] != 'T'))
    throw InputError("node token '" + std::string(token) + "' lacks a J: or T: prefix");
  NodeRef node{token[0] == 'J' ? NodeKind::Job : NodeKind::Tag, {}};
  for (std::size_t i = 2; i < token.size(); ++i) {
    const char c = token[i];
    if (c == '_' && underscore_spaces) {
      node.key.push_back(' ');
    } else if (c == '%') {
      if (i + 2 >= token.size())
        throw InputError("truncated escape in '" + std::string(token) + "'");
      const int hi = hex_value(token[i + 1]);
      const int lo = hex_value(token[i + 2]);
      if (hi < 0 || lo < 0) throw InputError("bad escape in '" + std::string(token) + "'");
      node.key.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    } else {
      node.key.push_back(c);
    }
  }
  return node;
}

NodeRef parse_walk_token(std::string_view token) { return decode(token, true); }

NodeRef parse_embedding_token(std::string_view token) { return decode(token, false); }

}  // namespace jobgraph
