#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coembed/meanshift.hpp"
#include "coembed/types.hpp"

namespace coembed {

/// CSV export `index,x,y,...` with 9 significant digits.
void write_embedding_csv(std::ostream& out, const Embedding& Y);

/// Reads the format written by write_embedding_csv (header optional).
Embedding read_embedding_csv(std::istream& in);

/// Two-column sidecar `original_id<TAB>dense_index`.
void write_mapping_tsv(std::ostream& out, const std::vector<std::string>& labels);

/// Clustering export; modes serialize as null when the clustering carries
/// none (e.g. spectral).
std::string clustering_to_json(const Clustering& c);
Clustering clustering_from_json(const std::string& text);

/// Deterministic SVG scatter; points colored by cluster when given,
/// opacity scaled by the item degrees when given.
std::string svg_scatter(const Embedding& Y, const Clustering* clusters,
                        const std::vector<int>* degrees);

/// Shortest representation with 9 significant digits.
std::string format_double(double v);

} // namespace coembed
