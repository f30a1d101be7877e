#include "hodgeworks/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace hodgeworks::io {

namespace {

using G = Gaussian;
using Q = Rational;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError((path.empty() ? std::string("/") : path) + ": " + what);
}

std::string at_key(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string at_index(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

const Json& member(const Json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + std::string(key) + "'");
  return *it;
}

const Json* optional_member(const Json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

int int_key(const std::string& key, const std::string& path) {
  int out = 0;
  const char* end = key.data() + key.size();
  const auto [ptr, ec] = std::from_chars(key.data(), end, out);
  if (ec != std::errc() || ptr != end) fail(path, "'" + key + "' is not an integer key");
  return out;
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

Index count(const Json& j, const std::string& path) {
  const int n = integer(j, path);
  if (n < 0) fail(path, "expected a non-negative integer");
  return n;
}

G scalar_from(const Json& j, const std::string& path, bool rational) {
  G out;
  if (j.is_number_integer()) {
    out = G(Q(j.get<long>()));
  } else if (j.is_string()) {
    try {
      out = G::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  } else {
    fail(path, "expected an exact scalar (integer or string such as \"1/2\" or \"1/2+3*i\")");
  }
  if (rational && !out.is_rational()) fail(path, "non-real scalar in rational data");
  return out;
}

std::string rational_text(const Q& x) {
  return x.denominator() == "1" ? x.numerator() : x.numerator() + "/" + x.denominator();
}

Json matrix_json(const Matrix<G>& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(scalar_text(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// rows = -1 accepts any number of rows.
Matrix<G> matrix_from(const Json& j, Index rows, Index cols, const std::string& path, bool rational) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  const Index n = static_cast<Index>(j.size());
  if (rows >= 0 && n != rows) {
    fail(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(n));
  }
  Matrix<G> m = zeros<G>(n, cols);
  for (Index i = 0; i < n; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    const std::string rpath = at_index(path, static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      fail(rpath, "expected a row of " + std::to_string(cols) + " entries");
    }
    for (Index k = 0; k < cols; ++k) {
      m(i, k) = scalar_from(row[static_cast<std::size_t>(k)], at_index(rpath, static_cast<std::size_t>(k)), rational);
    }
  }
  return m;
}

Direction direction_from(const Json& j, const std::string& path) {
  if (j == "decreasing") return Direction::Decreasing;
  if (j == "increasing") return Direction::Increasing;
  fail(path, "direction must be \"decreasing\" or \"increasing\"");
}

const char* direction_text(Direction d) { return d == Direction::Decreasing ? "decreasing" : "increasing"; }

/// Declared levels in file indexing, ascending. A level with no stored
/// subspaces (whole up to a jump to zero) is written as one whole level.
std::vector<std::pair<int, Subspace<G>>> declared_levels(const Flag<G>& f, Direction dir) {
  std::vector<std::pair<int, Subspace<G>>> out;
  if (f.ambient() == 0) return out;
  if (f.levels().empty()) {
    out.emplace_back(f.first() - 1, Subspace<G>::whole(f.ambient()));
  } else {
    for (int p = f.first(); p < f.end(); ++p) out.emplace_back(p, f.at(p));
  }
  if (dir == Direction::Increasing) {
    for (auto& [p, s] : out) p = -p;
    std::reverse(out.begin(), out.end());
  }
  return out;
}

/// Between declared levels the chain holds its last declared value; before
/// the first it is the initial value and after the last the terminal one
/// (whole then zero when decreasing, zero then whole when increasing). No
/// declared level gives F^p = everything for p <= 0, i.e. W_m = everything
/// for m >= 0.
Flag<G> completed(Index ambient, Direction dir, const std::map<int, Subspace<G>>& declared, const std::string& path) {
  if (declared.empty()) return Flag<G>(ambient);
  const int lo = declared.begin()->first;
  const int hi = declared.rbegin()->first;
  auto value = [&](int key) { return std::prev(declared.upper_bound(key))->second; };
  try {
    if (dir == Direction::Decreasing) return Flag<G>::tabulate(ambient, lo, hi, value);
    return Flag<G>::tabulate(ambient, -hi, -lo, [&](int p) { return value(-p); });
  } catch (const std::invalid_argument&) {
    fail(path, std::string("declared levels are not ") + direction_text(dir));
  }
}

GradedShape shape_from(const Json& degrees, const std::string& path) {
  if (!degrees.is_object()) fail(path, "expected a map degree -> dimension");
  std::map<int, Index> dims;
  for (const auto& [key, value] : degrees.items()) dims[int_key(key, path)] = count(value, at_key(path, key));
  GradedShape shape;
  if (dims.empty()) return shape;
  shape.lo = dims.begin()->first;
  for (int n = shape.lo; n <= dims.rbegin()->first; ++n) shape.dims.push_back(dims.count(n) ? dims[n] : 0);
  return shape;
}

Json shape_json(const GradedShape& shape) {
  Json out = Json::object();
  for (int n = shape.lo; n <= shape.hi(); ++n) out[std::to_string(n)] = shape.dim(n);
  return out;
}

/// Blocks X^n -> Y^{n+k} keyed by n; both sides must be nonzero to be written.
Json blocks_json(const GradedMap<G>& f) {
  Json out = Json::object();
  for (int n = f.source().lo; n <= f.source().hi(); ++n) {
    if (f.source().dim(n) == 0 || f.target().dim(n + f.degree()) == 0) continue;
    out[std::to_string(n)] = matrix_json(f.block(n));
  }
  return out;
}

GradedMap<G> blocks_from(const Json& j, const GradedShape& source, const GradedShape& target, int degree,
                         const std::string& path, bool rational) {
  if (!j.is_object()) fail(path, "expected a map degree -> matrix");
  GradedMap<G> f(source, target, degree);
  for (const auto& [key, value] : j.items()) {
    const int n = int_key(key, path);
    const std::string bpath = at_key(path, key);
    const Index rows = target.dim(n + degree);
    const Index cols = source.dim(n);
    const Matrix<G> m = matrix_from(value, rows, cols, bpath, rational);
    if (!source.in_range(n)) {
      if (!is_zero(m)) fail(bpath, "degree outside the source range");
      continue;
    }
    f.set(n, m);
  }
  return f;
}

Json filtration_json(const Filtration<G>& f, const GradedShape& shape, Direction dir) {
  std::map<int, std::vector<std::pair<int, Subspace<G>>>> by_level;
  for (int n = shape.lo; n <= shape.hi(); ++n) {
    for (auto& [level, s] : declared_levels(f.flag(n), dir)) by_level[level].emplace_back(n, std::move(s));
  }
  Json levels = Json::object();
  for (const auto& [level, entries] : by_level) {
    Json degrees = Json::object();
    for (const auto& [n, s] : entries) degrees[std::to_string(n)] = matrix_json(s.basis());
    levels[std::to_string(level)] = std::move(degrees);
  }
  Json out = Json::object();
  out["direction"] = direction_text(dir);
  out["levels"] = std::move(levels);
  return out;
}

Filtration<G> filtration_from(const Json& j, const GradedShape& shape, Direction& dir, const std::string& path,
                              bool rational) {
  dir = direction_from(member(j, "direction", path), at_key(path, "direction"));
  const Json& levels = member(j, "levels", path);
  const std::string lpath = at_key(path, "levels");
  if (!levels.is_object()) fail(lpath, "expected a map level -> degree -> generator rows");
  std::map<int, std::map<int, Subspace<G>>> declared;  // degree -> level -> subspace
  for (const auto& [lkey, degrees] : levels.items()) {
    const int level = int_key(lkey, lpath);
    const std::string dpath = at_key(lpath, lkey);
    if (!degrees.is_object()) fail(dpath, "expected a map degree -> generator rows");
    for (const auto& [nkey, rows] : degrees.items()) {
      const int n = int_key(nkey, dpath);
      const std::string rpath = at_key(dpath, nkey);
      if (!shape.in_range(n)) fail(rpath, "degree outside the complex");
      declared[n].emplace(level, Subspace<G>::span(matrix_from(rows, -1, shape.dim(n), rpath, rational)));
    }
  }
  std::vector<Flag<G>> flags;
  for (int n = shape.lo; n <= shape.hi(); ++n) {
    flags.push_back(completed(shape.dim(n), dir, declared[n], at_key(path, "degree " + std::to_string(n))));
  }
  return Filtration<G>(shape.lo, std::move(flags));
}

Complex<G> complex_from(const Json& j, const GradedShape& shape, const std::string& path, bool rational) {
  std::map<int, Matrix<G>> d;
  if (const Json* dj = optional_member(j, "differential", path)) {
    const std::string dpath = at_key(path, "differential");
    if (!dj->is_object()) fail(dpath, "expected a map degree -> matrix");
    for (const auto& [key, value] : dj->items()) {
      const int n = int_key(key, dpath);
      const Matrix<G> m = matrix_from(value, shape.dim(n + 1), shape.dim(n), at_key(dpath, key), rational);
      if (!shape.in_range(n) || !shape.in_range(n + 1)) {
        if (!is_zero(m)) fail(at_key(dpath, key), "differential leaves the declared degrees");
        continue;
      }
      d[n] = m;
    }
  }
  try {
    return Complex<G>(shape, d);
  } catch (const std::invalid_argument& e) {
    fail(at_key(path, "differential"), e.what());
  }
}

Json complex_body(const Complex<G>& k) {
  Json out = Json::object();
  out["degrees"] = shape_json(k.shape());
  Json d = Json::object();
  for (int n = k.lo(); n < k.hi(); ++n) {
    if (k.dim(n) == 0 || k.dim(n + 1) == 0) continue;
    d[std::to_string(n)] = matrix_json(k.d(n));
  }
  out["differential"] = std::move(d);
  return out;
}

void check_header(const Json& j, std::string_view kind) {
  const std::string found = kind_of(j);
  if (found != kind) fail("/kind", "expected a " + std::string(kind) + " file, found '" + found + "'");
}

Json header(std::string_view kind) {
  Json out = Json::object();
  out["format"] = kFormat;
  out["kind"] = kind;
  return out;
}

const char* kind_text(VertexKind k) {
  switch (k) {
    case VertexKind::Rational:
      return "rational";
    case VertexKind::Complex:
      return "complex";
    case VertexKind::Bifiltered:
      return "bifiltered";
  }
  return "rational";
}

VertexKind kind_from(const Json& j, const std::string& path) {
  if (j == "rational") return VertexKind::Rational;
  if (j == "complex") return VertexKind::Complex;
  if (j == "bifiltered") return VertexKind::Bifiltered;
  fail(path, "vertex kind must be \"rational\", \"complex\" or \"bifiltered\"");
}

Json diagram_body(const Diagram& k) {
  Json kinds = Json::array();
  for (const auto kind : k.shape().kinds) kinds.push_back(kind_text(kind));
  Json arrows = Json::array();
  for (const auto& a : k.shape().arrows) arrows.push_back(Json::array({a.source, a.target}));
  Json shape = Json::object();
  shape["vertices"] = std::move(kinds);
  shape["arrows"] = std::move(arrows);

  Json vertices = Json::array();
  for (const auto& v : k.vertices()) {
    Json body = complex_body(v.complex());
    Json filtrations = Json::object();
    filtrations["W"] = filtration_json(v.filtration(), v.shape(), Direction::Increasing);
    if (v.hodge()) filtrations["F"] = filtration_json(*v.hodge(), v.shape(), Direction::Decreasing);
    body["filtrations"] = std::move(filtrations);
    vertices.push_back(std::move(body));
  }
  Json comparisons = Json::array();
  for (const auto& phi : k.comparisons()) comparisons.push_back(blocks_json(phi));

  Json out = header("diagram");
  out["shape"] = std::move(shape);
  out["vertices"] = std::move(vertices);
  out["comparisons"] = std::move(comparisons);
  return out;
}

Flag<Q> rational_flag(const Flag<G>& f) {
  std::vector<Subspace<Q>> levels;
  for (const auto& l : f.levels()) levels.push_back(Subspace<Q>::span(to_rational(l.basis())));
  return Flag<Q>(f.ambient(), f.first(), std::move(levels));
}

Json flag_json(const Flag<G>& f, Direction dir) {
  Json levels = Json::object();
  for (const auto& [level, s] : declared_levels(f, dir)) levels[std::to_string(level)] = matrix_json(s.basis());
  Json out = Json::object();
  out["direction"] = direction_text(dir);
  out["levels"] = std::move(levels);
  return out;
}

Flag<G> flag_from(const Json& j, Index ambient, const std::string& path, bool rational) {
  const Direction dir = direction_from(member(j, "direction", path), at_key(path, "direction"));
  const Json& levels = member(j, "levels", path);
  const std::string lpath = at_key(path, "levels");
  if (!levels.is_object()) fail(lpath, "expected a map level -> generator rows");
  std::map<int, Subspace<G>> declared;
  for (const auto& [key, rows] : levels.items()) {
    declared.emplace(int_key(key, lpath), Subspace<G>::span(matrix_from(rows, -1, ambient, at_key(lpath, key), rational)));
  }
  return completed(ambient, dir, declared, path);
}

Json premorphism_maps(const std::vector<DiagramMap>& maps) {
  Json out = Json::array();
  for (const auto& m : maps) out.push_back(blocks_json(m));
  return out;
}

}  // namespace

const NamedFiltration& ComplexFile::filtration(std::string_view name) const {
  if (name.empty()) {
    if (filtrations.size() != 1) {
      throw InputError("the complex has " + std::to_string(filtrations.size()) +
                       " filtrations; choose one with --filtration");
    }
    return filtrations.front();
  }
  for (const auto& f : filtrations) {
    if (f.name == name) return f;
  }
  throw InputError("no filtration named '" + std::string(name) + "'");
}

FilteredComplex<G> ComplexFile::filtered(std::string_view name) const {
  return FilteredComplex<G>(complex, filtration(name).filtration);
}

Json parse_json(std::string_view text, std::string_view origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string(origin) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_json(text.str(), path);
}

namespace {

bool is_flat(const Json& j) {
  return std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
}

/// Like dump(2), except that arrays of scalars stay on one line.
void pretty(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_array() && (j.empty() || is_flat(j))) {
    out += j.dump();
  } else if (j.is_array()) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += pad;
      pretty(j[k], indent + 2, out);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "]";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (const auto& [key, value] : j.items()) {
      out += pad + Json(key).dump() + ": ";
      pretty(value, indent + 2, out);
      out += ++k < j.size() ? ",\n" : "\n";
    }
    out += close + "}";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  pretty(j, 0, out);
  return out + "\n";
}

std::string scalar_text(const G& x) {
  if (x.is_rational()) return rational_text(x.real());
  std::string im = rational_text(x.imag()) + "*i";
  if (x.real().is_zero()) return im;
  return rational_text(x.real()) + (x.imag().sign() > 0 ? "+" : "") + im;
}

std::string kind_of(const Json& j) {
  const Json& format = member(j, "format", "");
  if (format != kFormat) fail("/format", "expected \"" + std::string(kFormat) + "\"");
  const Json& kind = member(j, "kind", "");
  if (!kind.is_string()) fail("/kind", "expected a string");
  return kind.get<std::string>();
}

Json to_json(const ComplexFile& k) {
  Json out = header("complex");
  out["field"] = k.field;
  Json body = complex_body(k.complex);
  out["degrees"] = std::move(body["degrees"]);
  out["differential"] = std::move(body["differential"]);
  Json filtrations = Json::object();
  for (const auto& f : k.filtrations) filtrations[f.name] = filtration_json(f.filtration, k.complex.shape(), f.direction);
  out["filtrations"] = std::move(filtrations);
  return out;
}

ComplexFile complex_from_json(const Json& j) {
  check_header(j, "complex");
  ComplexFile out;
  const Json& field = member(j, "field", "");
  if (field != "rational" && field != "gaussian") fail("/field", "field must be \"rational\" or \"gaussian\"");
  out.field = field.get<std::string>();
  const bool rational = out.field == "rational";
  const GradedShape shape = shape_from(member(j, "degrees", ""), "/degrees");
  out.complex = complex_from(j, shape, "", rational);
  if (const Json* fj = optional_member(j, "filtrations", "")) {
    if (!fj->is_object()) fail("/filtrations", "expected a map name -> filtration");
    for (const auto& [name, value] : fj->items()) {
      const std::string path = at_key("/filtrations", name);
      NamedFiltration f;
      f.name = name;
      f.filtration = filtration_from(value, shape, f.direction, path, rational);
      try {
        FilteredComplex<G>(out.complex, f.filtration);
      } catch (const std::invalid_argument& e) {
        fail(path, e.what());
      }
      out.filtrations.push_back(std::move(f));
    }
  }
  return out;
}

Json to_json(const Diagram& k) { return diagram_body(k); }

Diagram diagram_from_json(const Json& j) {
  check_header(j, "diagram");
  const Json& sj = member(j, "shape", "");
  ZigzagShape shape;
  const Json& kinds = member(sj, "vertices", "/shape");
  if (!kinds.is_array()) fail("/shape/vertices", "expected an array of vertex kinds");
  for (std::size_t i = 0; i < kinds.size(); ++i) shape.kinds.push_back(kind_from(kinds[i], at_index("/shape/vertices", i)));
  const Json& arrows = member(sj, "arrows", "/shape");
  if (!arrows.is_array()) fail("/shape/arrows", "expected an array of [source, target] pairs");
  for (std::size_t u = 0; u < arrows.size(); ++u) {
    const std::string path = at_index("/shape/arrows", u);
    if (!arrows[u].is_array() || arrows[u].size() != 2) fail(path, "expected [source, target]");
    shape.arrows.push_back({integer(arrows[u][0], path), integer(arrows[u][1], path)});
  }
  try {
    shape.degrees();
  } catch (const std::invalid_argument& e) {
    fail("/shape", e.what());
  }

  const Json& vj = member(j, "vertices", "");
  if (!vj.is_array() || vj.size() != shape.kinds.size()) fail("/vertices", "expected one complex per vertex");
  std::vector<DiagramVertex> vertices;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    const std::string path = at_index("/vertices", i);
    const bool rational = shape.kinds[i] == VertexKind::Rational;
    const GradedShape gs = shape_from(member(vj[i], "degrees", path), at_key(path, "degrees"));
    const Complex<G> c = complex_from(vj[i], gs, path, rational);
    const Json& fj = member(vj[i], "filtrations", path);
    const std::string fpath = at_key(path, "filtrations");
    Direction dir;
    Filtration<G> w = filtration_from(member(fj, "W", fpath), gs, dir, at_key(fpath, "W"), rational);
    std::optional<Filtration<G>> f;
    if (const Json* hj = optional_member(fj, "F", fpath)) f = filtration_from(*hj, gs, dir, at_key(fpath, "F"), rational);
    try {
      vertices.emplace_back(c, std::move(w), std::move(f));
    } catch (const std::invalid_argument& e) {
      fail(fpath, e.what());
    }
  }

  const Json& cj = member(j, "comparisons", "");
  if (!cj.is_array() || cj.size() != shape.arrows.size()) fail("/comparisons", "expected one map per arrow");
  std::vector<DiagramMap> comparisons;
  for (std::size_t u = 0; u < cj.size(); ++u) {
    const auto& a = shape.arrows[u];
    comparisons.push_back(blocks_from(cj[u], vertices[static_cast<std::size_t>(a.source)].shape(),
                                      vertices[static_cast<std::size_t>(a.target)].shape(), 0,
                                      at_index("/comparisons", u), false));
  }
  try {
    return Diagram(std::move(shape), std::move(vertices), std::move(comparisons));
  } catch (const std::invalid_argument& e) {
    fail("", e.what());
  }
}

Json to_json(const MixedHodgeStructure& h) {
  Json out = header("mhs");
  out["dim"] = h.dim();
  out["weight"] = flag_json(to_gaussian(h.weight()), Direction::Increasing);
  out["hodge"] = flag_json(h.hodge(), Direction::Decreasing);
  out["comparison"] = matrix_json(h.comparison());
  return out;
}

MixedHodgeStructure mhs_from_json(const Json& j) {
  check_header(j, "mhs");
  const Index dim = count(member(j, "dim", ""), "/dim");
  const Flag<Q> w = rational_flag(flag_from(member(j, "weight", ""), dim, "/weight", true));
  const Flag<G> f = flag_from(member(j, "hodge", ""), dim, "/hodge", false);
  std::optional<Matrix<G>> c;
  if (const Json* cj = optional_member(j, "comparison", "")) c = matrix_from(*cj, dim, dim, "/comparison", false);
  try {
    return MixedHodgeStructure(w, f, c);
  } catch (const std::exception& e) {
    fail("/comparison", e.what());
  }
}

Json to_json(const PreMorphism& f, const Diagram&, const Diagram&) {
  Json out = Json::object();
  out["degree"] = f.degree;
  out["r"] = f.r;
  out["f"] = premorphism_maps(f.f);
  out["legs"] = premorphism_maps(f.legs);
  return out;
}

PreMorphism premorphism_from_json(const Json& j, const Diagram& x, const Diagram& y) {
  PreMorphism out;
  out.degree = integer(member(j, "degree", ""), "/degree");
  out.r = integer(member(j, "r", ""), "/r");
  const Json& fj = member(j, "f", "");
  if (!fj.is_array() || static_cast<int>(fj.size()) != x.shape().size()) fail("/f", "expected one map per vertex");
  for (std::size_t i = 0; i < fj.size(); ++i) {
    const int v = static_cast<int>(i);
    out.f.push_back(blocks_from(fj[i], x.vertex(v).shape(), y.vertex(v).shape(), out.degree, at_index("/f", i), false));
  }
  const Json& lj = member(j, "legs", "");
  if (!lj.is_array() || lj.size() != x.shape().arrows.size()) fail("/legs", "expected one map per arrow");
  for (std::size_t u = 0; u < lj.size(); ++u) {
    const auto& a = x.shape().arrows[u];
    out.legs.push_back(blocks_from(lj[u], x.vertex(a.source).shape(), y.vertex(a.target).shape(), out.degree - 1,
                                   at_index("/legs", u), false));
  }
  return out;
}

Json to_json(const ModelBundle& b) {
  const Diagram& k = b.source;
  const Diagram& h = b.model.cohomology;
  Json out = header("minimal-model");
  out["source"] = to_json(k);
  out["cohomology"] = to_json(h);
  out["sigma"] = to_json(b.model.sigma, h, k);
  out["rho"] = to_json(b.model.rho, k, h);
  out["homotopy"] = to_json(b.model.homotopy, k, k);
  return out;
}

ModelBundle model_from_json(const Json& j) {
  check_header(j, "minimal-model");
  auto nested = [&](std::string_view key, auto&& parse) {
    try {
      return parse(member(j, key, ""));
    } catch (const InputError& e) {
      throw InputError("/" + std::string(key) + e.what());
    }
  };
  ModelBundle out;
  out.source = nested("source", [](const Json& v) { return diagram_from_json(v); });
  out.model.cohomology = nested("cohomology", [](const Json& v) { return diagram_from_json(v); });
  const Diagram& k = out.source;
  const Diagram& h = out.model.cohomology;
  out.model.sigma = nested("sigma", [&](const Json& v) { return premorphism_from_json(v, h, k); });
  out.model.rho = nested("rho", [&](const Json& v) { return premorphism_from_json(v, k, h); });
  out.model.homotopy = nested("homotopy", [&](const Json& v) { return premorphism_from_json(v, k, k); });
  return out;
}

Json to_json(const AxiomVerdict& v) {
  Json witnesses = Json::array();
  for (const auto& w : v.witnesses) {
    Json wj = Json::object();
    wj["axiom"] = w.axiom;
    wj["degree"] = w.degree;
    wj["level"] = w.level;
    if (w.stage >= 0) wj["stage"] = w.stage;
    wj["detail"] = w.detail;
    witnesses.push_back(std::move(wj));
  }
  Json out = Json::object();
  out["axiom"] = v.axiom;
  out["pass"] = v.pass;
  out["witnesses"] = std::move(witnesses);
  return out;
}

Json report(std::string_view command, Json verdicts, Json tables) {
  Json body = Json::object();
  body["command"] = command;
  body["version"] = 1;
  body["verdicts"] = std::move(verdicts);
  body["tables"] = std::move(tables);
  Json out = Json::object();
  out["format"] = kFormat;
  out["report"] = std::move(body);
  return out;
}

}  // namespace hodgeworks::io
