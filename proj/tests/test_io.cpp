#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hodgeworks/io.hpp"

using namespace hodgeworks;
using io::Json;

using G = Gaussian;
using Q = Rational;

namespace {

std::string data_file(const std::string& name) { return std::string(HODGEWORKS_DATA_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

io::ComplexFile complex_file(const FilteredComplex<G>& k, const std::string& field, io::Direction dir) {
  io::ComplexFile out;
  out.field = field;
  out.complex = k.complex();
  out.filtrations.push_back({"W", dir, k.filtration()});
  if (k.hodge()) out.filtrations.push_back({"F", io::Direction::Decreasing, *k.hodge()});
  return out;
}

bool same(const io::ComplexFile& a, const io::ComplexFile& b) {
  if (a.field != b.field || !(a.complex == b.complex) || a.filtrations.size() != b.filtrations.size()) return false;
  for (std::size_t k = 0; k < a.filtrations.size(); ++k) {
    const auto& x = a.filtrations[k];
    const auto& y = b.filtrations[k];
    if (x.name != y.name || x.direction != y.direction || !(x.filtration == y.filtration)) return false;
  }
  return true;
}

io::ComplexFile parse_complex(std::string_view text) { return io::complex_from_json(io::parse_json(text, "inline")); }

/// Throws an InputError whose message contains `needle`.
void check_rejected(std::string_view text, const std::string& needle) {
  try {
    parse_complex(text);
    FAIL("accepted: " << text);
  } catch (const io::InputError& e) {
    CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, std::string(e.what()));
  }
}

Subspace<G> span_rows(std::initializer_list<std::initializer_list<G>> rows) {
  return Subspace<G>::span(from_rows<G>(rows));
}

}  // namespace

TEST_CASE("scalar text round-trips") {
  CHECK(io::scalar_text(G(Q(3))) == "3");
  CHECK(io::scalar_text(G(Q(-1, 2))) == "-1/2");
  CHECK(io::scalar_text(G(Q(1, 2), Q(3))) == "1/2+3*i");
  CHECK(io::scalar_text(G(Q(0), Q(-1))) == "-1*i");
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const G x = rng.small_gaussian(0.2, 0.3) / G(Q(rng.uniform(1, 7)));
    CHECK(G::parse(io::scalar_text(x)) == x);
  }
}

TEST_CASE("filtration completion") {
  const auto k = parse_complex(R"({
    "format": "hodgeworks-complex v1", "kind": "complex", "field": "rational",
    "degrees": {"0": 3},
    "filtrations": {
      "F": {"direction": "decreasing", "levels": {"-1": {"0": [[1, 0, 0], [0, 1, 0]]}, "2": {"0": [[1, 0, 0]]}}},
      "W": {"direction": "increasing", "levels": {"0": {"0": [[0, 0, 1]]}, "2": {"0": [[0, 1, 0], [0, 0, 1]]}}},
      "T": {"direction": "decreasing", "levels": {}}
    }})");
  const auto& f = k.filtration("F").filtration.flag(0);
  CHECK(f.at(-2).is_whole());
  CHECK(f.at(-1).dim() == 2);
  CHECK(f.at(1) == f.at(-1));  // held until the next declared level
  CHECK(f.at(2) == span_rows({{1, 0, 0}}));
  CHECK(f.at(3).is_zero());

  // Increasing: zero below the first declared level, whole above the last.
  const auto& w = k.filtration("W").filtration.flag(0);
  CHECK(w.at(1).is_zero());                         // W_{-1}
  CHECK(w.at(0) == span_rows({{0, 0, 1}}));         // W_0
  CHECK(w.at(-1) == w.at(0));                       // W_1
  CHECK(w.at(-2).dim() == 2);                       // W_2
  CHECK(w.at(-3).is_whole());                       // W_3

  const auto& t = k.filtration("T").filtration.flag(0);
  CHECK(t == Flag<G>(3));
  CHECK_THROWS_AS(k.filtration(""), io::InputError);
  CHECK_THROWS_AS(k.filtration("G"), io::InputError);
}

TEST_CASE("complex files round-trip canonically") {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    const bool gaussian = t % 2 == 1;
    const auto dir = t % 3 == 0 ? io::Direction::Increasing : io::Direction::Decreasing;
    const auto k = gaussian ? random_bifiltered_complex<G>(rng) : to_gaussian(random_filtered_complex<Q>(rng));
    const io::ComplexFile file = complex_file(k, gaussian ? "gaussian" : "rational", dir);
    const std::string text = io::dump(io::to_json(file));
    const io::ComplexFile back = parse_complex(text);
    CHECK(same(file, back));
    CHECK(io::dump(io::to_json(back)) == text);
  }
}

TEST_CASE("hand-written files canonicalize to a fixed point") {
  for (const char* name : {"worked_example.json", "trivial_acyclic.json"}) {
    const auto k = io::complex_from_json(io::read_json_file(data_file(name)));
    const std::string canonical = io::dump(io::to_json(k));
    CHECK(io::dump(io::to_json(parse_complex(canonical))) == canonical);
  }
  const auto ex = io::complex_from_json(io::read_json_file(data_file("worked_example.json")));
  CHECK(page(ex.filtered("F"), 1).dims() == std::map<std::pair<int, int>, Index>{{{1, 0}, 1}});
}

TEST_CASE("invalid complex files are rejected with a location") {
  const std::string head = R"("format": "hodgeworks-complex v1", "kind": "complex", "field": "rational", )";
  check_rejected(R"({"format": "hodgeworks-complex v1", "kind": "complex", "field": )", "parse error");
  check_rejected(R"({"format": "other", "kind": "complex"})", "/format");
  check_rejected("{" + head + R"("degrees": {"0": 1, "1": 1, "2": 1}, "differential": {"0": [[1]], "1": [[1]]}})",
                 "/differential");
  check_rejected("{" + head + R"("degrees": {"0": 2}, "differential": {}, "filtrations": {"F": {"direction": "decreasing",
                 "levels": {"0": {"0": [[1, 0]]}, "1": {"0": [[0, 1]]}}}}})",
                 "not decreasing");
  check_rejected("{" + head + R"("degrees": {"0": 1, "1": 1}, "differential": {"0": [[1]]}, "filtrations": {"F":
                 {"direction": "decreasing", "levels": {"1": {"0": [[1]]}}}}})",
                 "/filtrations/F");
  check_rejected("{" + head + R"("degrees": {"0": 2}, "differential": {}, "filtrations": {"F": {"direction": "decreasing",
                 "levels": {"0": {"0": [[1]]}}}}})",
                 "/filtrations/F/levels/0/0/0");
  check_rejected("{" + head + R"("degrees": {"0": 1}, "filtrations": {"F": {"direction": "decreasing",
                 "levels": {"0": {"0": [["i"]]}}}}})",
                 "non-real");
  check_rejected("{" + head + R"("degrees": {"x": 1}})", "not an integer key");
  check_rejected("{" + head + R"("degrees": {"0": 1, "1": 1}, "differential": {"0": [[0.5]]}})", "exact scalar");
}

TEST_CASE("diagram files round-trip") {
  Rng rng(8);
  std::vector<Diagram> cases = {p1_model(), dec_w(p1_model())};
  for (const char* a : {"MH0", "MH1", "MH2", "AH0", "AH1", "AH2"}) cases.push_back(negative_control(a));
  for (int t = 0; t < 12; ++t) cases.push_back(random_diagram(rng, ZigzagShape::hodge(t % 2 == 0 ? 2 : 4)));
  for (int t = 0; t < 6; ++t) cases.push_back(random_diagram(rng, ZigzagShape::uniform(2, VertexKind::Complex)));
  for (int t = 0; t < 6; ++t) cases.push_back(hodge_diagram(random_mhs_complex(rng)));
  for (const auto& k : cases) {
    const std::string text = io::dump(io::to_json(k));
    const Diagram back = io::diagram_from_json(io::parse_json(text, "inline"));
    CHECK(back == k);
    CHECK(io::dump(io::to_json(back)) == text);
  }
}

TEST_CASE("committed sample diagrams match the library objects") {
  CHECK(read_text(data_file("p1_mhc.json")) == io::dump(io::to_json(p1_model())));
  CHECK(read_text(data_file("p1_ahc.json")) == io::dump(io::to_json(dec_w(p1_model()))));
  for (const std::string a : {"MH0", "MH1", "MH2", "AH0", "AH1", "AH2"}) {
    CHECK(read_text(data_file("control_" + a + ".json")) == io::dump(io::to_json(negative_control(a))));
  }
  CHECK(io::mhs_from_json(io::read_json_file(data_file("tate1.json"))) == tate(1));
}

TEST_CASE("mixed Hodge structure files round-trip") {
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    const MixedHodgeStructure h = random_mhs(rng);
    const std::string text = io::dump(io::to_json(h));
    const auto back = io::mhs_from_json(io::parse_json(text, "inline"));
    CHECK(back == h);
    CHECK(io::dump(io::to_json(back)) == text);
  }
  // Comparison defaults to the identity.
  const auto h = io::mhs_from_json(io::parse_json(R"({"format": "hodgeworks-complex v1", "kind": "mhs", "dim": 1,
      "weight": {"direction": "increasing", "levels": {"0": [[1]]}},
      "hodge": {"direction": "decreasing", "levels": {"0": [[1]]}}})", "inline"));
  CHECK(h == tate(0));
  CHECK_THROWS_AS(io::mhs_from_json(io::parse_json(R"({"format": "hodgeworks-complex v1", "kind": "mhs", "dim": 1,
      "weight": {"direction": "increasing", "levels": {"0": [[1]]}},
      "hodge": {"direction": "decreasing", "levels": {}}, "comparison": [[0]]})", "inline")),
                  io::InputError);
}

TEST_CASE("minimal model bundles replay after a round-trip") {
  Rng rng(17);
  for (int t = 0; t < 5; ++t) {
    const Diagram k = hodge_diagram(random_mhs_complex(rng));
    const io::ModelBundle b{k, minimal_model(k)};
    const std::string text = io::dump(io::to_json(b));
    const io::ModelBundle back = io::model_from_json(io::parse_json(text, "inline"));
    CHECK(back.source == k);
    CHECK(back.model.sigma == b.model.sigma);
    CHECK(back.model.rho == b.model.rho);
    CHECK(back.model.homotopy == b.model.homotopy);
    CHECK(back.model.verify(back.source));
  }
}

TEST_CASE("reports carry the envelope") {
  AxiomVerdict v{"MH2", false, {{"MH2", 2, 0, -1, "impure"}}};
  const Json r = io::report("check", Json::array({io::to_json(v)}), Json::object());
  CHECK(r["format"] == io::kFormat);
  CHECK(r["report"]["command"] == "check");
  CHECK(r["report"]["verdicts"][0]["witnesses"][0]["degree"] == 2);
  CHECK_FALSE(r["report"]["verdicts"][0]["witnesses"][0].contains("stage"));
}
