#pragma once

#include <string>
#include <string_view>

#include "jobgraph/graph.hpp"

namespace jobgraph {

/// "J:sales_manager" style token for walk files: spaces become '_', and
/// literal '_', '%' and control bytes are percent-escaped.
std::string walk_token(const NodeRef& node);

/// "J:sales%20manager" style token for embedding files: spaces, '%' and
/// control bytes are percent-escaped.
std::string embedding_token(const NodeRef& node);

/// Inverses of the two encodings. Throw InputError on a missing kind prefix
/// or a bad escape.
NodeRef parse_walk_token(std::string_view token);
NodeRef parse_embedding_token(std::string_view token);

}  // namespace jobgraph
