#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <system_error>
#include <unordered_set>

#include "jobgraph/embedding.hpp"
#include "jobgraph/error.hpp"
#include "jobgraph/node_key.hpp"

namespace jobgraph {

namespace {

const char* skip_spaces(const char* p, const char* end) {
  while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  return p;
}

const char* token_end(const char* p, const char* end) {
  while (p != end && *p != ' ' && *p != '\t' && *p != '\r') ++p;
  return p;
}

}  // namespace

void save_embeddings(std::ostream& out, const EmbeddingMatrix& m) {
  out << m.rows() << ' ' << m.dim() << '\n';
  char buf[64];
  std::string line;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    line = embedding_token(m.nodes[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < m.dim(); ++c) {
      auto res = std::to_chars(buf, buf + sizeof buf, m.input_vectors(r, c));
      line.push_back(' ');
      line.append(buf, res.ptr);
    }
    line.push_back('\n');
    out << line;
  }
}

EmbeddingMatrix load_embeddings(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(1, "missing 'count dim' header");
  long long count = -1, dim = -1;
  {
    const char* p = line.data();
    const char* end = p + line.size();
    p = skip_spaces(p, end);
    auto r1 = std::from_chars(p, end, count);
    p = skip_spaces(r1.ptr, end);
    auto r2 = std::from_chars(p, end, dim);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} || skip_spaces(r2.ptr, end) != end || count < 0 || dim < 1)
      throw FormatError(1, "malformed header '" + line + "'");
  }
  std::vector<NodeRef> nodes;
  nodes.reserve(static_cast<std::size_t>(count));
  std::unordered_set<std::string> keys;
  EmbeddingMatrix::Matrix vectors(count, dim);
  for (long long r = 0; r < count; ++r) {
    const std::size_t line_no = static_cast<std::size_t>(r) + 2;
    if (!std::getline(in, line)) throw FormatError(line_no, "expected " + std::to_string(count) + " rows");
    const char* p = skip_spaces(line.data(), line.data() + line.size());
    const char* end = line.data() + line.size();
    const char* key_end = token_end(p, end);
    if (!keys.emplace(p, key_end).second) throw FormatError(line_no, "duplicate node key");
    try {
      nodes.push_back(parse_embedding_token({p, static_cast<std::size_t>(key_end - p)}));
    } catch (const InputError& e) {
      throw FormatError(line_no, e.what());
    }
    p = key_end;
    for (long long c = 0; c < dim; ++c) {
      p = skip_spaces(p, end);
      double v = 0;
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc{} || (res.ptr != end && *res.ptr != ' ' && *res.ptr != '\t' && *res.ptr != '\r'))
        throw FormatError(line_no, "row has fewer than " + std::to_string(dim) + " numeric values");
      vectors(r, c) = v;
      p = res.ptr;
    }
    if (skip_spaces(p, end) != end) throw FormatError(line_no, "row has more than " + std::to_string(dim) + " values");
  }
  while (std::getline(in, line))
    if (!line.empty()) throw FormatError(static_cast<std::size_t>(count) + 2, "rows beyond the declared count");

  EmbeddingMatrix m(std::move(nodes), dim);
  m.input_vectors = std::move(vectors);
  return m;
}

void save_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  save_embeddings(out, m);
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  return load_embeddings(in);
}

}  // namespace jobgraph
