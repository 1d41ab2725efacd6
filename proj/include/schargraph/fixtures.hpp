#ifndef SCHARGRAPH_FIXTURES_HPP
#define SCHARGRAPH_FIXTURES_HPP

// Golden fixtures compiled into the library so the corpus cannot drift from the code.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schargraph/graph_core.hpp"
#include "schargraph/star_calculus.hpp"

namespace schargraph::fixtures {

struct Fixture {
  std::string name;
  std::string kind;  // "pair" or "star"
  std::string summary;
  const char* json;
};

inline const std::vector<Fixture>& all() {
  static const std::vector<Fixture> list = {
      {"small_pair", "pair", "p=q=2; G_P has two isolated vertices, G_Q is disconnected",
       R"({"p":2,"q":2,"signsP":["+","-"],"signsQ":["+","-"],
           "matching":[[[1,1],[2,1]],[[1,2],[2,2]]]})"},
      {"scharlemann_bigon", "pair", "p=q=4; order-2 Scharlemann cycle on Q vertices {2,4} with labels 3,4",
       R"({"p":4,"q":4,"signsP":["+","-","+","-"],"signsQ":["+","-","+","-"],
           "matching":[[[1,1],[1,2]],[[1,3],[2,1]],[[2,2],[2,3]],[[2,4],[4,1]],
                       [[3,1],[4,3]],[[3,3],[1,4]],[[4,2],[3,4]],[[4,4],[3,2]]]})"},
      {"scharlemann_clash", "pair", "p=4, q=6; Scharlemann cycles of orders 3 and 2 in G_Q, not realizable",
       R"({"p":4,"q":6,"signsP":["+","-","+","-"],"signsQ":["-","+","-","+","-","+"],
           "matching":[[[2,3],[1,1]],[[2,5],[1,3]],[[2,1],[1,5]],[[1,2],[2,4]],[[1,4],[2,6]],[[1,6],[4,2]],[[3,2],[3,3]],[[3,4],[4,6]],[[3,6],[4,4]],[[4,1],[3,5]],[[4,3],[2,2]],[[4,5],[3,1]]]})"},
      {"greatweb", "pair", "p=8, q=12; Scharlemann cycle on {2,4}, a 5-cycle on {1,3} bounding the great web {2,4,6,8}",
       R"({"p":8,"q":12,"signsP":["+","-","+","-","+","-","+","-"],"signsQ":["-","+","-","+","-","+","-","+","-","+","-","+"],
           "matching":[[[1,2],[2,4]],[[1,4],[2,2]],[[1,6],[8,6]],[[1,8],[8,8]],[[1,10],[8,10]],[[1,12],[8,12]],[[2,1],[5,3]],[[2,3],[8,4]],[[2,5],[5,5]],[[2,7],[5,7]],[[2,9],[5,9]],[[2,11],[2,10]],[[3,2],[3,3]],[[3,4],[4,4]],[[3,6],[4,6]],[[3,8],[4,8]],[[3,10],[4,10]],[[3,12],[2,12]],[[4,1],[4,2]],[[4,3],[3,1]],[[4,5],[3,5]],[[4,7],[3,7]],[[4,9],[3,9]],[[4,11],[5,11]],[[5,2],[6,2]],[[5,4],[1,3]],[[5,6],[2,6]],[[5,8],[2,8]],[[5,10],[3,11]],[[5,12],[4,12]],[[6,1],[6,10]],[[6,3],[5,1]],[[6,5],[7,1]],[[6,7],[7,5]],[[6,9],[7,7]],[[6,11],[6,12]],[[7,2],[7,3]],[[7,4],[6,6]],[[7,6],[6,8]],[[7,8],[6,4]],[[7,10],[7,9]],[[7,12],[7,11]],[[8,1],[1,1]],[[8,3],[8,2]],[[8,5],[1,5]],[[8,7],[1,7]],[[8,9],[1,9]],[[8,11],[1,11]]]})"},
      {"nested_descent", "pair", "p=q=4; the loop at Q vertex 1 bounds {2,4}, whose inner face holds {3}",
       R"({"p":4,"q":4,"signsP":["+","-","+","-"],"signsQ":["+","-","+","-"],
           "matching":[[[1,1],[2,1]],[[1,3],[1,4]],[[2,2],[1,2]],[[2,4],[3,2]],[[3,1],[4,1]],[[3,3],[2,3]],[[4,2],[3,4]],[[4,4],[4,3]]]})"},
      {"model_vertices", "star", "model vertex with A={4,7}, C={1,6}",
       R"({"sign":"+",
           "labels":[{"id":1,"parity":"-"},{"id":2,"parity":"+"},{"id":3,"parity":"-"},{"id":4,"parity":"+"},
                     {"id":5,"parity":"-"},{"id":6,"parity":"-"},{"id":7,"parity":"+"},{"id":8,"parity":"+"}],
           "L":[1,2,3,4,5,6,7,8],
           "omega":["out","out","out","in","in","out","in","in"]})"},
  };
  return list;
}

inline const Fixture& find(const std::string& name) {
  for (const auto& f : all())
    if (f.name == name) return f;
  throw Error("USAGE", "unknown fixture '" + name + "'");
}

inline nlohmann::json json(const std::string& name) { return nlohmann::json::parse(find(name).json); }

inline IntersectionPair pair(const std::string& name) {
  const auto& f = find(name);
  if (f.kind != "pair") throw Error("USAGE", "fixture '" + name + "' is not a pair");
  return pair_from_json(json(name));
}

inline Star star(const std::string& name) {
  const auto& f = find(name);
  if (f.kind != "star") throw Error("USAGE", "fixture '" + name + "' is not a star");
  return star_from_json(json(name));
}

}  // namespace schargraph::fixtures

#endif  // SCHARGRAPH_FIXTURES_HPP
