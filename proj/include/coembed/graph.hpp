#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "coembed/types.hpp"

namespace coembed {

struct Edge {
  int resource = 0;
  int tag = 0;
  std::int64_t count = 1;
};

/// Sparse bipartite incidence structure between resources and tags.
/// Immutable after construction; adjacency is stored in CSR form on both
/// sides, neighbor lists sorted by index.
class BipartiteGraph {
public:
  BipartiteGraph() = default;

  /// Builds a graph from an edge list. Duplicate (resource, tag) pairs are
  /// merged; when `keep_counts` is set their counts are summed, otherwise
  /// the merge is silent and the edge stays binary.
  /// Throws std::invalid_argument on out-of-range indices or counts < 1.
  static BipartiteGraph build(int n_resources, int n_tags,
                              std::vector<Edge> edges, bool keep_counts,
                              std::vector<std::string> resource_labels = {},
                              std::vector<std::string> tag_labels = {});

  int n_resources() const { return n_resources_; }
  int n_tags() const { return n_tags_; }
  std::int64_t n_edges() const { return static_cast<std::int64_t>(r_adj_.size()); }
  bool has_counts() const { return has_counts_; }

  int resource_degree(int r) const;
  int tag_degree(int t) const;

  /// Tags incident to resource r, ascending.
  std::span<const int> tags_of(int r) const;
  /// Resources incident to tag t, ascending.
  std::span<const int> resources_of(int t) const;
  /// Edge counts parallel to tags_of(r). All 1 when the graph is binary.
  std::span<const std::int64_t> resource_counts(int r) const;
  /// Edge counts parallel to resources_of(t).
  std::span<const std::int64_t> tag_counts(int t) const;

  /// Labels are empty vectors when the graph was built without them.
  const std::vector<std::string>& resource_labels() const { return resource_labels_; }
  const std::vector<std::string>& tag_labels() const { return tag_labels_; }

  /// Label helpers falling back to the stringified index.
  std::string resource_label(int r) const;
  std::string tag_label(int t) const;

  /// All edges sorted by (resource, tag).
  std::vector<Edge> edges() const;

private:
  int n_resources_ = 0;
  int n_tags_ = 0;
  bool has_counts_ = false;
  // resource-major CSR
  std::vector<std::int64_t> r_offsets_;
  std::vector<int> r_adj_;
  std::vector<std::int64_t> r_cnt_;
  // tag-major CSR
  std::vector<std::int64_t> t_offsets_;
  std::vector<int> t_adj_;
  std::vector<std::int64_t> t_cnt_;
  std::vector<std::string> resource_labels_;
  std::vector<std::string> tag_labels_;
};

/// Orientation over a BipartiteGraph: which side currently plays the role
/// of samples. Transposing is O(1) and never copies the graph.
class GraphView {
public:
  explicit GraphView(const BipartiteGraph& g, bool tags_as_samples = false)
      : g_(&g), tags_as_samples_(tags_as_samples) {}

  const BipartiteGraph& graph() const { return *g_; }
  bool tags_as_samples() const { return tags_as_samples_; }

  int n_samples() const;
  int n_features() const;
  int sample_degree(int s) const;
  int feature_degree(int f) const;
  std::span<const int> features_of(int s) const;
  std::span<const std::int64_t> counts_of(int s) const;
  std::string sample_label(int s) const;
  std::string feature_label(int f) const;

  GraphView transpose() const { return GraphView(*g_, !tags_as_samples_); }

private:
  const BipartiteGraph* g_;
  bool tags_as_samples_;
};

/// Degree of an item on the view's sample side.
/// Throws std::out_of_range for an invalid index.
int degree(const GraphView& view, int item);

/// Parses the tab-separated edge-list format:
///   resource_id<TAB>tag_id[<TAB>count]
/// Lines starting with '#' and blank lines are skipped. String ids are
/// mapped to dense indices in first-seen order and kept as labels.
/// Throws ParseError on malformed lines and DataError on empty input.
BipartiteGraph load_edge_list(std::istream& in);

/// Inverse of load_edge_list, written by (resource, tag) index order.
void save_edge_list(const BipartiteGraph& g, std::ostream& out);

/// A derived graph plus, per side, the original index each new index came
/// from (new index -> index in the input graph).
struct DerivedGraph {
  BipartiteGraph graph;
  std::vector<int> resource_origin;
  std::vector<int> tag_origin;
};

/// Maximal subgraph in which every resource has degree >= min_resource_degree
/// and every tag has degree >= min_tag_degree. Items are removed
/// alternately side by side until a fixed point is reached.
DerivedGraph filter_min_degree(const BipartiteGraph& g, int min_resource_degree,
                               int min_tag_degree);

/// Uniform without-replacement sample of min(target, n_resources) resources
/// with their induced edges. The tag side is left untouched. Deterministic
/// for a fixed seed.
DerivedGraph sample_resources(const BipartiteGraph& g, int target,
                              std::uint64_t seed);

/// O(1) role exchange.
GraphView transpose(const GraphView& view);

} // namespace coembed
