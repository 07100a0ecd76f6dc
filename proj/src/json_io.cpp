#include "hochlab/json_io.hpp"

#include "hochlab/errors.hpp"

namespace hochlab {

Json to_json(const RationalMatrix& m) {
  Json entries = Json::array();
  for (const auto& [r, c, v] : m.triplets()) entries.push_back({r, c, to_string(v)});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

RationalMatrix matrix_from_json(const Json& j) {
  try {
    RationalMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    for (const auto& e : j.at("entries")) {
      auto r = e.at(0).get<std::size_t>(), c = e.at(1).get<std::size_t>();
      if (r >= m.rows() || c >= m.cols()) throw ParseError("matrix entry out of range");
      m.set(r, c, parse_rational(e.at(2).get<std::string>()));
    }
    return m;
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("malformed matrix: ") + ex.what());
  }
}

Json to_json(const SparseVector& v) {
  Json entries = Json::array();
  for (const auto& [i, x] : v.entries()) entries.push_back({i, to_string(x)});
  return {{"dim", v.dim()}, {"entries", entries}};
}

Json to_json(const GradedSpace& s) {
  Json degrees = Json::object();
  for (int q : s.degrees()) {
    Json labels = Json::array();
    for (const auto& l : s.labels(q)) labels.push_back(l.str());
    degrees[std::to_string(q)] = labels;
  }
  return {{"degrees", degrees}};
}

GradedSpace space_from_json(const Json& j) {
  GradedSpace s;
  try {
    for (const auto& [key, labels] : j.at("degrees").items()) {
      std::vector<Label> ls;
      for (const auto& l : labels) ls.push_back(Label::parse(l.get<std::string>()));
      s.set_degree(std::stoi(key), std::move(ls));
    }
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("malformed graded space: ") + ex.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("degree keys must be integers");
  }
  return s;
}

Json to_json(const ChainComplexWindow& c) {
  Json j = to_json(c.space);
  j["window"] = {c.deg_min, c.deg_max};
  j["truncated"] = {c.truncated_below, c.truncated_above};
  Json d = Json::object();
  for (const auto& [q, m] : c.differential)
    if (!m.is_zero()) d[std::to_string(q)] = to_json(m);
  j["differential"] = d;
  return j;
}

ChainComplexWindow complex_from_json(const Json& j) {
  ChainComplexWindow c;
  c.space = space_from_json(j);
  try {
    c.deg_min = j.at("window").at(0).get<int>();
    c.deg_max = j.at("window").at(1).get<int>();
    if (j.contains("truncated")) {
      c.truncated_below = j["truncated"].at(0).get<bool>();
      c.truncated_above = j["truncated"].at(1).get<bool>();
    }
    if (j.contains("differential"))
      for (const auto& [key, m] : j["differential"].items()) c.differential[std::stoi(key)] = matrix_from_json(m);
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("malformed complex: ") + ex.what());
  }
  c.validate();
  return c;
}

Json to_json(const HomologyResult& h) {
  Json out = Json::object();
  for (const auto& [q, dh] : h.degrees) {
    Json reps = Json::array();
    for (const auto& r : dh.representatives) reps.push_back(to_json(r));
    out[std::to_string(q)] = {{"reliable", dh.reliable}, {"dim", dh.dimension}, {"representatives", reps}};
  }
  return out;
}

}  // namespace hochlab
