#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hodgeworks/hodge.hpp"

namespace hodgeworks::io {

/// Insertion-ordered so that emitted files are canonical and byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr std::string_view kFormat = "hodgeworks-complex v1";

/// Malformed or invalid input; the message names the offending location.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Direction { Decreasing, Increasing };

/// A filtration as written in a file. Increasing ones are stored as F^p = W_{-p}.
struct NamedFiltration {
  std::string name;
  Direction direction = Direction::Decreasing;
  Filtration<Gaussian> filtration;
};

/// A complex with any number of compatible filtrations. Data is held over
/// Q(i); `field` only records which scalars the file may contain.
struct ComplexFile {
  std::string field = "rational";
  Complex<Gaussian> complex;
  std::vector<NamedFiltration> filtrations;

  /// The unique filtration when `name` is empty.
  const NamedFiltration& filtration(std::string_view name) const;
  FilteredComplex<Gaussian> filtered(std::string_view name) const;
};

Json parse_json(std::string_view text, std::string_view origin);
Json read_json_file(const std::string& path);
/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

/// Integers bare, fractions "a/b", non-real values "a+b*i".
std::string scalar_text(const Gaussian& x);

/// Value of "kind", checking the format tag.
std::string kind_of(const Json& j);

Json to_json(const ComplexFile& k);
ComplexFile complex_from_json(const Json& j);

Json to_json(const Diagram& k);
Diagram diagram_from_json(const Json& j);

Json to_json(const MixedHodgeStructure& h);
MixedHodgeStructure mhs_from_json(const Json& j);

Json to_json(const PreMorphism& f, const Diagram& x, const Diagram& y);
PreMorphism premorphism_from_json(const Json& j, const Diagram& x, const Diagram& y);

/// The source diagram travels with the model so that it can be replayed alone.
struct ModelBundle {
  Diagram source;
  MinimalModel model;
};

Json to_json(const ModelBundle& b);
ModelBundle model_from_json(const Json& j);

/// {"format", "report": {command, version, verdicts, tables}}.
Json report(std::string_view command, Json verdicts, Json tables);
Json to_json(const AxiomVerdict& v);

}  // namespace hodgeworks::io
