#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "nikulin/lattice.hpp"
#include "nikulin/model.hpp"
#include "nikulin/orbit.hpp"

namespace nikulin {

using Json = nlohmann::ordered_json;

/// Malformed input file or failed file access.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integers are written as JSON numbers when they fit in int64 and as
/// decimal strings otherwise; the reader accepts both.
Json integer_to_json(const Integer& a);
Integer integer_from_json(const Json& j);

/// {"label": str, "rank": n, "gram": [[int,...],...]}
Json lattice_to_json(const Lattice& lattice);
LatticePtr lattice_from_json(const Json& j);

/// Maps a lattice label to a lattice.
using LatticeResolver = std::function<LatticePtr(const std::string&)>;
/// Resolves LY, LX, Lfix and Lfix(2) against the model.
LatticeResolver model_resolver(const NamedModel& model);

/// {"lattice": label, "coords": [int,...]}
Json vector_to_json(const LatticeVector& v);
LatticeVector vector_from_json(const Json& j, const LatticeResolver& resolve);

/// {"seed": vector, "exhausted": bool, ..., "members": [vector,...]} with
/// members in lexicographic order.
Json orbit_to_json(const OrbitSet& orbit);
/// Generator words are lists of generator indices.
Json word_to_json(const GeneratorWord& word);
GeneratorWord word_from_json(const Json& j);

/// {"name": str, "matrix": [[int,...],...]} with 16 rows and 15 columns.
EtaVariant eta_variant_from_json(const Json& j);
Json eta_variant_to_json(const EtaVariant& variant);

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace nikulin
