#include "coembed/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace coembed {

namespace {

void build_csr(int n_nodes, const std::vector<Edge>& edges, bool resource_major,
               std::vector<std::int64_t>& offsets, std::vector<int>& adj,
               std::vector<std::int64_t>& cnt) {
  offsets.assign(static_cast<std::size_t>(n_nodes) + 1, 0);
  for (const Edge& e : edges) {
    int node = resource_major ? e.resource : e.tag;
    ++offsets[static_cast<std::size_t>(node) + 1];
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];

  adj.resize(edges.size());
  cnt.resize(edges.size());
  std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    int node = resource_major ? e.resource : e.tag;
    int other = resource_major ? e.tag : e.resource;
    std::int64_t pos = cursor[static_cast<std::size_t>(node)]++;
    adj[static_cast<std::size_t>(pos)] = other;
    cnt[static_cast<std::size_t>(pos)] = e.count;
  }
}

} // namespace

BipartiteGraph BipartiteGraph::build(int n_resources, int n_tags,
                                     std::vector<Edge> edges, bool keep_counts,
                                     std::vector<std::string> resource_labels,
                                     std::vector<std::string> tag_labels) {
  if (n_resources < 0 || n_tags < 0)
    throw std::invalid_argument("negative node count");
  if (!resource_labels.empty() &&
      resource_labels.size() != static_cast<std::size_t>(n_resources))
    throw std::invalid_argument("resource label count mismatch");
  if (!tag_labels.empty() && tag_labels.size() != static_cast<std::size_t>(n_tags))
    throw std::invalid_argument("tag label count mismatch");

  for (const Edge& e : edges) {
    if (e.resource < 0 || e.resource >= n_resources || e.tag < 0 || e.tag >= n_tags)
      throw std::invalid_argument("edge index out of range");
    if (e.count < 1) throw std::invalid_argument("edge count must be >= 1");
  }

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.resource != b.resource ? a.resource < b.resource : a.tag < b.tag;
  });
  // merge duplicates; counts are summed only when kept
  std::vector<Edge> merged;
  merged.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!merged.empty() && merged.back().resource == e.resource &&
        merged.back().tag == e.tag) {
      if (keep_counts) merged.back().count += e.count;
    } else {
      merged.push_back(e);
      if (!keep_counts) merged.back().count = 1;
    }
  }

  BipartiteGraph g;
  g.n_resources_ = n_resources;
  g.n_tags_ = n_tags;
  g.has_counts_ = keep_counts;
  g.resource_labels_ = std::move(resource_labels);
  g.tag_labels_ = std::move(tag_labels);
  build_csr(n_resources, merged, true, g.r_offsets_, g.r_adj_, g.r_cnt_);
  build_csr(n_tags, merged, false, g.t_offsets_, g.t_adj_, g.t_cnt_);
  return g;
}

int BipartiteGraph::resource_degree(int r) const {
  if (r < 0 || r >= n_resources_) throw std::out_of_range("resource index");
  return static_cast<int>(r_offsets_[r + 1] - r_offsets_[r]);
}

int BipartiteGraph::tag_degree(int t) const {
  if (t < 0 || t >= n_tags_) throw std::out_of_range("tag index");
  return static_cast<int>(t_offsets_[t + 1] - t_offsets_[t]);
}

std::span<const int> BipartiteGraph::tags_of(int r) const {
  if (r < 0 || r >= n_resources_) throw std::out_of_range("resource index");
  return {r_adj_.data() + r_offsets_[r],
          static_cast<std::size_t>(r_offsets_[r + 1] - r_offsets_[r])};
}

std::span<const int> BipartiteGraph::resources_of(int t) const {
  if (t < 0 || t >= n_tags_) throw std::out_of_range("tag index");
  return {t_adj_.data() + t_offsets_[t],
          static_cast<std::size_t>(t_offsets_[t + 1] - t_offsets_[t])};
}

std::span<const std::int64_t> BipartiteGraph::resource_counts(int r) const {
  if (r < 0 || r >= n_resources_) throw std::out_of_range("resource index");
  return {r_cnt_.data() + r_offsets_[r],
          static_cast<std::size_t>(r_offsets_[r + 1] - r_offsets_[r])};
}

std::span<const std::int64_t> BipartiteGraph::tag_counts(int t) const {
  if (t < 0 || t >= n_tags_) throw std::out_of_range("tag index");
  return {t_cnt_.data() + t_offsets_[t],
          static_cast<std::size_t>(t_offsets_[t + 1] - t_offsets_[t])};
}

std::string BipartiteGraph::resource_label(int r) const {
  if (r < 0 || r >= n_resources_) throw std::out_of_range("resource index");
  return resource_labels_.empty() ? std::to_string(r) : resource_labels_[r];
}

std::string BipartiteGraph::tag_label(int t) const {
  if (t < 0 || t >= n_tags_) throw std::out_of_range("tag index");
  return tag_labels_.empty() ? std::to_string(t) : tag_labels_[t];
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(r_adj_.size());
  for (int r = 0; r < n_resources_; ++r) {
    auto ts = tags_of(r);
    auto cs = resource_counts(r);
    for (std::size_t i = 0; i < ts.size(); ++i)
      out.push_back({r, ts[i], cs[i]});
  }
  return out;
}

int GraphView::n_samples() const {
  return tags_as_samples_ ? g_->n_tags() : g_->n_resources();
}

int GraphView::n_features() const {
  return tags_as_samples_ ? g_->n_resources() : g_->n_tags();
}

int GraphView::sample_degree(int s) const {
  return tags_as_samples_ ? g_->tag_degree(s) : g_->resource_degree(s);
}

int GraphView::feature_degree(int f) const {
  return tags_as_samples_ ? g_->resource_degree(f) : g_->tag_degree(f);
}

std::span<const int> GraphView::features_of(int s) const {
  return tags_as_samples_ ? g_->resources_of(s) : g_->tags_of(s);
}

std::span<const std::int64_t> GraphView::counts_of(int s) const {
  return tags_as_samples_ ? g_->tag_counts(s) : g_->resource_counts(s);
}

std::string GraphView::sample_label(int s) const {
  return tags_as_samples_ ? g_->tag_label(s) : g_->resource_label(s);
}

std::string GraphView::feature_label(int f) const {
  return tags_as_samples_ ? g_->resource_label(f) : g_->tag_label(f);
}

int degree(const GraphView& view, int item) { return view.sample_degree(item); }

GraphView transpose(const GraphView& view) { return view.transpose(); }

BipartiteGraph load_edge_list(std::istream& in) {
  std::unordered_map<std::string, int> r_ids, t_ids;
  std::vector<std::string> r_labels, t_labels;
  std::vector<Edge> edges;
  bool any_count = false;

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3)
      throw ParseError("expected 2 or 3 tab-separated fields", line_no);
    if (fields[0].empty() || fields[1].empty())
      throw ParseError("empty id field", line_no);

    Edge e;
    auto intern = [](std::unordered_map<std::string, int>& ids,
                     std::vector<std::string>& labels, const std::string& key) {
      auto [it, inserted] = ids.emplace(key, static_cast<int>(labels.size()));
      if (inserted) labels.push_back(key);
      return it->second;
    };
    e.resource = intern(r_ids, r_labels, fields[0]);
    e.tag = intern(t_ids, t_labels, fields[1]);
    if (fields.size() == 3) {
      any_count = true;
      std::int64_t c = 0;
      try {
        std::size_t pos = 0;
        c = std::stoll(fields[2], &pos);
        if (pos != fields[2].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("count is not an integer: '" + fields[2] + "'", line_no);
      }
      if (c < 1) throw ParseError("count must be a positive integer", line_no);
      e.count = c;
    }
    edges.push_back(e);
  }

  if (edges.empty()) throw DataError("edge list is empty");
  const int n_resources = static_cast<int>(r_labels.size());
  const int n_tags = static_cast<int>(t_labels.size());
  return BipartiteGraph::build(n_resources, n_tags, std::move(edges), any_count,
                               std::move(r_labels), std::move(t_labels));
}

void save_edge_list(const BipartiteGraph& g, std::ostream& out) {
  for (const Edge& e : g.edges()) {
    out << g.resource_label(e.resource) << '\t' << g.tag_label(e.tag);
    if (g.has_counts()) out << '\t' << e.count;
    out << '\n';
  }
}

namespace {

DerivedGraph induce(const BipartiteGraph& g, const std::vector<char>& r_alive,
                    const std::vector<char>& t_alive) {
  DerivedGraph out;
  std::vector<int> r_new(g.n_resources(), -1), t_new(g.n_tags(), -1);
  for (int r = 0; r < g.n_resources(); ++r)
    if (r_alive[r]) {
      r_new[r] = static_cast<int>(out.resource_origin.size());
      out.resource_origin.push_back(r);
    }
  for (int t = 0; t < g.n_tags(); ++t)
    if (t_alive[t]) {
      t_new[t] = static_cast<int>(out.tag_origin.size());
      out.tag_origin.push_back(t);
    }

  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (r_alive[e.resource] && t_alive[e.tag])
      edges.push_back({r_new[e.resource], t_new[e.tag], e.count});

  std::vector<std::string> r_labels, t_labels;
  if (!g.resource_labels().empty())
    for (int r : out.resource_origin) r_labels.push_back(g.resource_labels()[r]);
  if (!g.tag_labels().empty())
    for (int t : out.tag_origin) t_labels.push_back(g.tag_labels()[t]);

  out.graph = BipartiteGraph::build(static_cast<int>(out.resource_origin.size()),
                                    static_cast<int>(out.tag_origin.size()),
                                    std::move(edges), g.has_counts(),
                                    std::move(r_labels), std::move(t_labels));
  return out;
}

} // namespace

DerivedGraph filter_min_degree(const BipartiteGraph& g, int min_resource_degree,
                               int min_tag_degree) {
  if (min_resource_degree < 0 || min_tag_degree < 0)
    throw std::invalid_argument("degree thresholds must be >= 0");

  std::vector<char> r_alive(g.n_resources(), 1), t_alive(g.n_tags(), 1);
  std::vector<int> r_deg(g.n_resources()), t_deg(g.n_tags());
  for (int r = 0; r < g.n_resources(); ++r) r_deg[r] = g.resource_degree(r);
  for (int t = 0; t < g.n_tags(); ++t) t_deg[t] = g.tag_degree(t);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int r = 0; r < g.n_resources(); ++r) {
      if (r_alive[r] && r_deg[r] < min_resource_degree) {
        r_alive[r] = 0;
        changed = true;
        for (int t : g.tags_of(r)) --t_deg[t];
      }
    }
    for (int t = 0; t < g.n_tags(); ++t) {
      if (t_alive[t] && t_deg[t] < min_tag_degree) {
        t_alive[t] = 0;
        changed = true;
        for (int r : g.resources_of(t)) --r_deg[r];
      }
    }
  }
  return induce(g, r_alive, t_alive);
}

DerivedGraph sample_resources(const BipartiteGraph& g, int target,
                              std::uint64_t seed) {
  if (target < 1) throw std::invalid_argument("sample target must be >= 1");

  int keep = std::min(target, g.n_resources());
  std::vector<int> order(static_cast<std::size_t>(g.n_resources()));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  // partial Fisher-Yates: the first `keep` entries are the sample
  for (int i = 0; i < keep; ++i) {
    std::uniform_int_distribution<int> pick(i, g.n_resources() - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  std::vector<char> r_alive(g.n_resources(), 0), t_alive(g.n_tags(), 1);
  for (int i = 0; i < keep; ++i) r_alive[order[i]] = 1;
  return induce(g, r_alive, t_alive);
}

} // namespace coembed
