#include "coembed/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace coembed {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_embedding_csv(std::ostream& out, const Embedding& Y) {
  out << "index";
  const char* names[] = {"x", "y", "z"};
  for (int d = 0; d < Y.cols(); ++d) {
    if (d < 3)
      out << ',' << names[d];
    else
      out << ",c" << d;
  }
  out << '\n';
  for (int i = 0; i < Y.rows(); ++i) {
    out << i;
    for (int d = 0; d < Y.cols(); ++d) out << ',' << format_double(Y(i, d));
    out << '\n';
  }
}

Embedding read_embedding_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("index", 0) == 0) continue; // header
    std::stringstream ss(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(ss, field, ',')) {
      try {
        values.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw ParseError("bad numeric field '" + field + "'", line_no);
      }
    }
    if (values.size() < 2) throw ParseError("expected index plus coordinates", line_no);
    values.erase(values.begin()); // index column
    if (!rows.empty() && rows.back().size() != values.size())
      throw ParseError("inconsistent column count", line_no);
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw DataError("embedding CSV is empty");

  Embedding Y(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t d = 0; d < rows[i].size(); ++d)
      Y(static_cast<int>(i), static_cast<int>(d)) = rows[i][d];
  return Y;
}

void write_mapping_tsv(std::ostream& out, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << labels[i] << '\t' << i << '\n';
}

std::string clustering_to_json(const Clustering& c) {
  nlohmann::ordered_json root;
  root["n_clusters"] = c.n_clusters;
  nlohmann::ordered_json clusters = nlohmann::ordered_json::array();
  for (int id = 0; id < c.n_clusters; ++id) {
    nlohmann::ordered_json entry;
    entry["id"] = id;
    const std::vector<int> members = c.members(id);
    entry["size"] = members.size();
    if (c.modes.rows() == c.n_clusters) {
      nlohmann::ordered_json mode = nlohmann::ordered_json::array();
      for (int d = 0; d < c.modes.cols(); ++d) mode.push_back(c.modes(id, d));
      entry["mode"] = mode;
    } else {
      entry["mode"] = nullptr;
    }
    entry["members"] = members;
    clusters.push_back(entry);
  }
  root["clusters"] = clusters;
  return root.dump(2) + "\n";
}

Clustering clustering_from_json(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad clustering JSON: ") + e.what());
  }

  Clustering out;
  out.n_clusters = root.at("n_clusters").get<int>();
  std::size_t n_items = 0;
  for (const auto& entry : root.at("clusters"))
    n_items += entry.at("members").size();
  out.labels.assign(n_items, -1);

  bool any_mode = false;
  std::vector<std::vector<double>> modes(out.n_clusters);
  for (const auto& entry : root.at("clusters")) {
    const int id = entry.at("id").get<int>();
    if (id < 0 || id >= out.n_clusters) throw DataError("cluster id out of range");
    for (const auto& m : entry.at("members")) {
      const int item = m.get<int>();
      if (item < 0 || item >= static_cast<int>(n_items) || out.labels[item] != -1)
        throw DataError("members do not form a partition");
      out.labels[item] = id;
    }
    if (!entry.at("mode").is_null()) {
      any_mode = true;
      modes[id] = entry.at("mode").get<std::vector<double>>();
    }
  }
  if (any_mode) {
    const int dim = modes.empty() ? 0 : static_cast<int>(modes[0].size());
    out.modes = Matrix::Zero(out.n_clusters, dim);
    for (int id = 0; id < out.n_clusters; ++id) {
      if (static_cast<int>(modes[id].size()) != dim)
        throw DataError("inconsistent mode dimensions");
      for (int d = 0; d < dim; ++d) out.modes(id, d) = modes[id][d];
    }
  } else {
    out.modes = Matrix(0, 0);
  }
  return out;
}

namespace {

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
    "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7",
    "#dbdb8d", "#9edae5",
};

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

} // namespace

std::string svg_scatter(const Embedding& Y, const Clustering* clusters,
                        const std::vector<int>* degrees) {
  if (Y.cols() < 2) throw std::invalid_argument("need at least 2 dimensions");
  const int n = static_cast<int>(Y.rows());
  const double width = 800.0, height = 800.0, margin = 30.0;

  double min_x = Y.col(0).minCoeff(), max_x = Y.col(0).maxCoeff();
  double min_y = Y.col(1).minCoeff(), max_y = Y.col(1).maxCoeff();
  const double span_x = std::max(max_x - min_x, 1e-12);
  const double span_y = std::max(max_y - min_y, 1e-12);

  int max_degree = 1;
  if (degrees)
    for (int d : *degrees) max_degree = std::max(max_degree, d);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int i = 0; i < n; ++i) {
    const double px = margin + (Y(i, 0) - min_x) / span_x * (width - 2 * margin);
    const double py =
        height - (margin + (Y(i, 1) - min_y) / span_y * (height - 2 * margin));
    const char* color = "#1f77b4";
    if (clusters) {
      const int label = clusters->labels[i];
      color = kPalette[label % static_cast<int>(std::size(kPalette))];
    }
    double opacity = 0.8;
    if (degrees)
      opacity = 0.25 + 0.75 * static_cast<double>((*degrees)[i]) / max_degree;
    out << "<circle cx=\"" << fmt3(px) << "\" cy=\"" << fmt3(py)
        << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\""
        << fmt3(opacity) << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace coembed
