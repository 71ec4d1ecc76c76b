#include <doctest.h>

#include <sstream>

#include "coembed/io.hpp"

using namespace coembed;

TEST_CASE("embedding CSV round trip") {
  Matrix Y(3, 2);
  Y << 1.234567891234, -0.5, 1e-12, 42.0, 0.0, -7.125;

  std::ostringstream out;
  write_embedding_csv(out, Y);
  const std::string text = out.str();
  CHECK(text.rfind("index,x,y\n", 0) == 0);

  std::istringstream in(text);
  Matrix back = read_embedding_csv(in);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 2);
  // 9 significant digits survive the round trip
  CHECK((back - Y).cwiseAbs().maxCoeff() < 1e-8);

  // identical bytes when written twice
  std::ostringstream again;
  write_embedding_csv(again, Y);
  CHECK(again.str() == text);
}

TEST_CASE("clustering JSON round trip") {
  Clustering c;
  c.labels = {0, 1, 0, 0, 1};
  c.n_clusters = 2;
  c.modes = Matrix(2, 2);
  c.modes << 1.5, -2.25, 0.0, 3.75;

  const std::string text = clustering_to_json(c);
  Clustering back = clustering_from_json(text);
  CHECK(back.n_clusters == 2);
  CHECK(back.labels == c.labels);
  CHECK((back.modes - c.modes).cwiseAbs().maxCoeff() == 0.0);

  SUBCASE("modes serialize as null when absent") {
    c.modes = Matrix(0, 0);
    const std::string no_modes = clustering_to_json(c);
    CHECK(no_modes.find("\"mode\": null") != std::string::npos);
    Clustering back2 = clustering_from_json(no_modes);
    CHECK(back2.modes.rows() == 0);
    CHECK(back2.labels == c.labels);
  }

  SUBCASE("non-partition input is rejected") {
    CHECK_THROWS_AS(
        clustering_from_json(
            R"({"n_clusters":1,"clusters":[{"id":0,"size":2,"mode":null,"members":[0,0]}]})"),
        DataError);
  }
}

TEST_CASE("svg scatter") {
  Matrix Y(3, 2);
  Y << 0.0, 0.0, 1.0, 0.5, -1.0, 2.0;

  SUBCASE("one circle per point") {
    const std::string svg = svg_scatter(Y, nullptr, nullptr);
    std::size_t count = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) {
      ++count;
      pos += 7;
    }
    CHECK(count == 3);
  }

  SUBCASE("clusters color the points distinctly") {
    Clustering c;
    c.labels = {0, 1, 0};
    c.n_clusters = 2;
    const std::string svg = svg_scatter(Y, &c, nullptr);
    CHECK(svg.find("#1f77b4") != std::string::npos);
    CHECK(svg.find("#ff7f0e") != std::string::npos);
  }

  SUBCASE("degrees drive opacity and output is deterministic") {
    std::vector<int> degrees = {1, 10, 5};
    const std::string a = svg_scatter(Y, nullptr, &degrees);
    const std::string b = svg_scatter(Y, nullptr, &degrees);
    CHECK(a == b);
    CHECK(a.find("fill-opacity=\"1.000\"") != std::string::npos); // degree 10
  }
}
