#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "hodgeworks/io.hpp"

using namespace hodgeworks;
using io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data_file(const std::string& name) { return std::string(HODGEWORKS_DATA_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Fresh scratch directory, removed on destruction.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("hodgeworks-" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

Json report_of(const Run& r) { return io::parse_json(r.out, "stdout")["report"]; }

}  // namespace

TEST_CASE("check reports each axiom and sets the exit status") {
  const Run p1 = run({"check", data_file("p1_mhc.json"), "--mode", "mhc"});
  CHECK(p1.code == cli::kPass);
  CHECK(p1.out.find("check mhc: PASS") != std::string::npos);
  CHECK(run({"check", data_file("p1_ahc.json"), "--mode", "ahc"}).code == cli::kPass);

  for (const std::string axiom : {"MH0", "MH1", "MH2", "AH0", "AH1", "AH2"}) {
    const std::string mode = axiom[0] == 'M' ? "mhc" : "ahc";
    const Run r = run({"check", data_file("control_" + axiom + ".json"), "--mode", mode, "--format", "json"});
    CHECK(r.code == cli::kCheckFailed);
    for (const auto& v : report_of(r)["verdicts"]) {
      CHECK(v["pass"].get<bool>() == (v["axiom"] != axiom));
      if (v["axiom"] == axiom) CHECK_FALSE(v["witnesses"].empty());
    }
  }
  const Json mh2 = report_of(run({"check", data_file("control_MH2.json"), "--mode", "mhc", "--format", "json"}));
  CHECK(mh2["verdicts"][2]["witnesses"][0]["degree"] == 2);
  CHECK(mh2["verdicts"][2]["witnesses"][0]["level"] == 0);
}

TEST_CASE("dec_w output piped into the ahc check passes") {
  Rng rng(2);
  Scratch s("pipe");
  for (int t = 0; t < 4; ++t) {
    const Diagram k = s_w(hodge_diagram(random_mhs_complex(rng)));
    std::ofstream(s.path("k.json")) << io::dump(io::to_json(dec_w(k)));
    CHECK(run({"check", s.path("k.json"), "--mode", "ahc"}).code == cli::kPass);
  }
}

TEST_CASE("pages") {
  const Json trivial = report_of(run({"pages", data_file("trivial_acyclic.json"), "--stage", "1", "--format", "json"}));
  CHECK(trivial["tables"]["pages"][1]["cells"].empty());

  const Run ex = run({"pages", data_file("worked_example.json"), "--stage", "1", "--format", "json"});
  CHECK(ex.code == cli::kPass);
  const Json e1 = report_of(ex)["tables"]["pages"][1]["cells"];
  REQUIRE(e1.size() == 1);
  CHECK(e1[0] == Json({{"p", 1}, {"q", 0}, {"dim", 1}}));

  // Bête filtration of a 3-term complex: E_2 is H(K) on the row q = 0.
  Rng rng(3);
  Scratch s("pages");
  for (int t = 0; t < 5; ++t) {
    const Complex<Rational> c = random_complex<Rational>(rng, 0, 3, 3);
    const auto bete = shift(FilteredComplex<Rational>::trivially_filtered(c));
    io::ComplexFile file;
    file.complex = to_gaussian(c);
    file.filtrations.push_back({"sigma", io::Direction::Decreasing, to_gaussian(bete.filtration())});
    std::ofstream(s.path("bete.json")) << io::dump(io::to_json(file));
    const Json t2 = report_of(run({"pages", s.path("bete.json"), "--stage", "2", "--format", "json"}));
    std::map<int, Index> row;
    for (const auto& c2 : t2["tables"]["pages"][2]["cells"]) {
      CHECK(c2["q"] == 0);
      row[c2["p"].get<int>()] = c2["dim"].get<Index>();
    }
    for (int n = 0; n <= 2; ++n) CHECK(row[n] == c.betti(n));
  }
}

TEST_CASE("decalage round-trips byte for byte") {
  Scratch s("decalage");
  for (int seed = 0; seed < 25; ++seed) {
    const std::string k = s.path("k.json");
    REQUIRE(run({"--seed", std::to_string(seed), "decalage", "--direction", "shift", "-o", k}).code == cli::kPass);
    const std::string canonical = read_text(k);
    REQUIRE(run({"decalage", k, "--direction", "shift", "-o", s.path("s.json")}).code == cli::kPass);
    REQUIRE(run({"decalage", s.path("s.json"), "--direction", "dec", "-o", s.path("d.json")}).code == cli::kPass);
    REQUIRE(run({"decalage", s.path("s.json"), "--direction", "dec*", "-o", s.path("e.json")}).code == cli::kPass);
    CHECK(read_text(s.path("d.json")) == canonical);
    CHECK(read_text(s.path("e.json")) == canonical);
    CHECK(run({"verify", k, s.path("s.json"), s.path("d.json")}).code == cli::kPass);
  }
}

TEST_CASE("decalage emits the canonical filtration and lowers the C_r stage") {
  const Run r = run({"decalage", data_file("trivial_acyclic.json")});
  REQUIRE(r.code == cli::kPass);
  const auto dec = io::complex_from_json(io::parse_json(r.out, "stdout"));
  const auto& tau = dec.filtration("F").filtration;
  // τ: Z^n at p = -n.
  CHECK(tau.at(0, 0).is_zero());
  CHECK(tau.at(-1, 1).is_whole());
  CHECK(tau.at(0, 1).is_zero());

  Rng rng(6);
  Scratch s("cr");
  for (int t = 0; t < 10; ++t) {
    const auto k = shift(shift(to_gaussian(random_filtered_complex<Rational>(rng))));  // in C_2
    REQUIRE(is_in_cr(k, 2));
    io::ComplexFile file;
    file.complex = k.complex();
    file.filtrations.push_back({"F", io::Direction::Decreasing, k.filtration()});
    std::ofstream(s.path("k.json")) << io::dump(io::to_json(file));
    const Run d = run({"decalage", s.path("k.json")});
    REQUIRE(d.code == cli::kPass);
    CHECK(is_in_cr(io::complex_from_json(io::parse_json(d.out, "stdout")).filtered("F"), 1));
  }
}

TEST_CASE("ext and homset") {
  const Json same = report_of(run({"ext", data_file("tate0.json"), data_file("tate0.json"), "-n", "1", "--format",
                                   "json"}));
  CHECK(same["tables"]["dimension"] == 0);
  const Json twist = report_of(run({"ext", data_file("tate0.json"), data_file("tate1.json"), "-n", "1", "--format",
                                    "json"}));
  CHECK(twist["tables"]["dimension"] == 1);
  CHECK(twist["tables"]["representatives"].size() == 1);
  CHECK(report_of(run({"ext", data_file("tate0.json"), data_file("tate1.json"), "-n", "2", "--format", "json"}))
            ["tables"]["dimension"] == 0);

  const Run h = run({"homset", data_file("q0_complex.json"), data_file("q0_complex.json"), "--format", "json"});
  CHECK(h.code == cli::kPass);
  CHECK(report_of(h)["tables"]["total"] == 1);
  for (int seed = 0; seed < 6; ++seed) {
    const Run r = run({"--seed", std::to_string(seed), "homset", "--format", "json"});
    CHECK(r.code == cli::kPass);
    CHECK(report_of(r)["tables"]["total"] == report_of(r)["tables"]["direct"]);
  }
}

TEST_CASE("minimal model corpora replay") {
  Scratch s("minimal");
  const Run r = run({"--seed", "40", "minimal", "--count", "6", "-o", s.path("corpus")});
  CHECK(r.code == cli::kPass);
  std::vector<std::string> args = {"verify"};
  for (const auto& e : fs::directory_iterator(s.path("corpus"))) args.push_back(e.path().string());
  CHECK(args.size() == 7);
  CHECK(run(args).code == cli::kPass);

  // Zero differential: H(K) = K and the model is the identity.
  const Run z = run({"minimal", data_file("p1_ahc.json")});
  REQUIRE(z.code == cli::kPass);
  const io::ModelBundle b = io::model_from_json(io::parse_json(z.out, "stdout"));
  CHECK(b.model.sigma == PreMorphism::identity(b.source, 0));

  // Tampering with a replayed certificate is caught.
  Json tampered = io::parse_json(read_text(s.path("corpus/minimal-40.json")), "corpus");
  tampered["sigma"]["f"][0] = Json::object();
  std::ofstream(s.path("bad.json")) << io::dump(tampered);
  CHECK(run({"verify", s.path("bad.json")}).code == cli::kCheckFailed);
}

TEST_CASE("machine output is deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"--seed", "9", "pages", "--format", "json"},
        std::vector<std::string>{"--seed", "9", "check", "--mode", "mhc", "--format", "json"},
        std::vector<std::string>{"--seed", "9", "minimal"},
        std::vector<std::string>{"--seed", "9", "ext", "-n", "1", "--format", "json"}}) {
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("input errors exit with status 2") {
  Scratch s("errors");
  std::ofstream(s.path("broken.json")) << "{\"format\": ";
  CHECK(run({"check", s.path("missing.json"), "--mode", "mhc"}).code == cli::kInputError);
  const Run broken = run({"check", s.path("broken.json"), "--mode", "mhc"});
  CHECK(broken.code == cli::kInputError);
  CHECK(broken.err.find("parse error") != std::string::npos);
  CHECK(run({"check", data_file("p1_mhc.json"), "--mode", "xyz"}).code == cli::kInputError);
  CHECK(run({"check", data_file("p1_mhc.json")}).code == cli::kInputError);
  CHECK(run({"pages", data_file("p1_mhc.json")}).code == cli::kInputError);
  CHECK(run({"ext", data_file("impure.json"), data_file("tate0.json")}).code == cli::kInputError);
  CHECK(run({"homset", data_file("control_AH2.json"), data_file("p1_ahc.json")}).code == cli::kInputError);
  CHECK(run({"minimal", data_file("control_AH1.json")}).code == cli::kInputError);
  CHECK(run({"pages", data_file("worked_example.json"), "--filtration", "G"}).code == cli::kInputError);
  CHECK(run({}).code == cli::kInputError);
  CHECK(run({"--help"}).code == cli::kPass);
}
