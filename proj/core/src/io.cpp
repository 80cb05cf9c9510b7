#include "nikulin/io.hpp"

#include <fstream>
#include <sstream>

namespace nikulin {

Json integer_to_json(const Integer& a) {
  if (auto small = to_int64(a)) return *small;
  return a.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<uint64_t>()));
    return Integer(std::to_string(j.get<int64_t>()));
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Integer out;
    if (s.empty() || out.set_str(s, 10) != 0) throw IoError("not an integer: \"" + s + "\"");
    return out;
  }
  throw IoError("expected an integer, got " + j.dump());
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw IoError("expected a nonempty list of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) throw IoError("matrix rows must be nonempty lists");
  IntMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw IoError("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer_from_json(j[r][c]);
  }
  return m;
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw IoError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw IoError(std::string("missing field \"") + name + "\"");
  return *it;
}

}  // namespace

Json lattice_to_json(const Lattice& lattice) {
  Json j;
  j["label"] = lattice.label();
  j["rank"] = lattice.rank();
  j["gram"] = matrix_to_json(lattice.gram());
  return j;
}

LatticePtr lattice_from_json(const Json& j) {
  const Json& label = field(j, "label");
  const Json& rank = field(j, "rank");
  if (!label.is_string()) throw IoError("\"label\" must be a string");
  if (!rank.is_number_unsigned() || rank.get<std::size_t>() == 0) throw IoError("\"rank\" must be a positive integer");
  IntMatrix gram = matrix_from_json(field(j, "gram"));
  if (gram.rows() != rank.get<std::size_t>() || gram.cols() != gram.rows())
    throw IoError("\"gram\" must be rank x rank");
  return Lattice::make(label.get<std::string>(), std::move(gram));
}

LatticeResolver model_resolver(const NamedModel& model) {
  return [&model](const std::string& label) -> LatticePtr {
    for (const auto* l : {&model.lambda_y(), &model.lambda_x(), &model.lambda_fix(), &model.lambda_fix_doubled()})
      if ((*l)->label() == label) return *l;
    throw IoError("unknown lattice label \"" + label + "\" (known: LY, LX, Lfix, " +
                  model.lambda_fix_doubled()->label() + ")");
  };
}

Json vector_to_json(const LatticeVector& v) {
  Json j;
  j["lattice"] = v.lattice()->label();
  Json coords = Json::array();
  for (const auto& c : v.coords()) coords.push_back(integer_to_json(c));
  j["coords"] = std::move(coords);
  return j;
}

LatticeVector vector_from_json(const Json& j, const LatticeResolver& resolve) {
  const Json& label = field(j, "lattice");
  const Json& coords = field(j, "coords");
  if (!label.is_string()) throw IoError("\"lattice\" must be a string");
  if (!coords.is_array()) throw IoError("\"coords\" must be a list");
  LatticePtr lattice = resolve(label.get<std::string>());
  if (coords.size() != lattice->rank())
    throw IoError("expected " + std::to_string(lattice->rank()) + " coordinates for " + lattice->label() + ", got " +
                  std::to_string(coords.size()));
  std::vector<Integer> c;
  c.reserve(coords.size());
  for (const auto& x : coords) c.push_back(integer_from_json(x));
  return LatticeVector(std::move(lattice), std::move(c));
}

Json orbit_to_json(const OrbitSet& orbit) {
  Json j;
  j["seed"] = vector_to_json(orbit.seed);
  j["exhausted"] = orbit.exhausted;
  j["hit_coord_bound"] = orbit.hit_coord_bound;
  j["hit_frontier_cap"] = orbit.hit_frontier_cap;
  j["hit_depth_cap"] = orbit.hit_depth_cap;
  j["depth_reached"] = orbit.depth_reached;
  j["size"] = orbit.size();
  Json members = Json::array();
  for (std::size_t i = 0; i < orbit.size(); ++i) members.push_back(vector_to_json(orbit.member(i)));
  j["members"] = std::move(members);
  return j;
}

Json word_to_json(const GeneratorWord& word) {
  Json j = Json::array();
  for (auto g : word) j.push_back(g);
  return j;
}

GeneratorWord word_from_json(const Json& j) {
  if (!j.is_array()) throw IoError("a generator word is a list of indices");
  GeneratorWord w;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw IoError("generator indices must be nonnegative integers");
    w.push_back(x.get<std::size_t>());
  }
  return w;
}

EtaVariant eta_variant_from_json(const Json& j) {
  const Json& name = field(j, "name");
  if (!name.is_string() || name.get<std::string>().empty()) throw IoError("\"name\" must be a nonempty string");
  IntMatrix m = matrix_from_json(field(j, "matrix"));
  if (m.rows() != 16 || m.cols() != 15) throw IoError("eta matrix must have 16 rows and 15 columns");
  return {name.get<std::string>(), std::move(m)};
}

Json eta_variant_to_json(const EtaVariant& variant) {
  Json j;
  j["name"] = variant.name;
  j["matrix"] = matrix_to_json(variant.matrix);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace nikulin
