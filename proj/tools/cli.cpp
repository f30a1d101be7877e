#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include "hodgeworks/io.hpp"

namespace hodgeworks::cli {

namespace {

using io::InputError;
using io::Json;
using G = Gaussian;

struct Options {
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> inputs;
  std::string filtration;
  std::optional<int> stage;
  std::string mode;
  std::string direction = "dec";
  std::string output;
  int degree = 1;
  int count = 1;
};

/// Aligned text table; numeric columns are right-aligned, others left-aligned.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width(header_.size(), 0);
    auto measure = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    };
    measure(header_);
    for (const auto& r : rows_) measure(r);
    std::vector<bool> left(header_.size(), false);
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        const bool numeric = !r[c].empty() && r[c].find_first_not_of("-0123456789") == std::string::npos;
        if (!numeric) left[c] = true;
      }
    }
    auto line = [&](const std::vector<std::string>& row) {
      std::string text;
      for (std::size_t c = 0; c < row.size(); ++c) {
        const std::string pad(width[c] - row[c].size(), ' ');
        if (c > 0) text += "  ";
        text += left[c] ? row[c] + pad : pad + row[c];
      }
      while (!text.empty() && text.back() == ' ') text.pop_back();
      out << text << "\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    if (rows_.empty()) out << "(none)\n";
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string matrix_text(const Matrix<G>& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    out += "  [";
    for (Index k = 0; k < m.cols(); ++k) out += (k ? ", " : "") + io::scalar_text(m(i, k));
    out += "]\n";
  }
  return m.rows() == 0 ? "  (empty)\n" : out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(path + ": cannot write file");
  f << text;
}

/// Artifacts go to --output when given, otherwise to stdout.
void emit(const Options& o, const Json& artifact, std::ostream& out) {
  if (o.output.empty()) {
    out << io::dump(artifact);
  } else {
    write_file(o.output, io::dump(artifact));
  }
}

void require_inputs(const Options& o, std::size_t n, const char* what) {
  if (!o.seed && o.inputs.size() != n) throw InputError(std::string("expected ") + what);
}

io::ComplexFile random_complex_file(std::uint64_t seed) {
  Rng rng(seed);
  io::ComplexFile k;
  const auto fk = random_filtered_complex<Rational>(rng);
  k.complex = to_gaussian(fk.complex());
  k.filtrations.push_back({"F", io::Direction::Decreasing, to_gaussian(fk.filtration())});
  return k;
}

io::ComplexFile complex_input(const Options& o) {
  require_inputs(o, 1, "one complex file");
  if (o.seed) return random_complex_file(*o.seed);
  return io::complex_from_json(io::read_json_file(o.inputs[0]));
}

Diagram diagram_input(const std::string& path) { return io::diagram_from_json(io::read_json_file(path)); }

void print_verdicts(const HodgeVerdict& v, std::ostream& out) {
  Table t({"axiom", "pass", "witnesses"});
  for (const auto& a : v.axioms) t.add({a.axiom, yes_no(a.pass), std::to_string(a.witnesses.size())});
  t.print(out);
  for (const auto& a : v.axioms) {
    for (const auto& w : a.witnesses) {
      out << "  " << w.axiom << " degree " << w.degree << " level " << w.level;
      if (w.stage >= 0) out << " stage " << w.stage;
      out << ": " << w.detail << "\n";
    }
  }
}

Json verdicts_json(const HodgeVerdict& v) {
  Json out = Json::array();
  for (const auto& a : v.axioms) out.push_back(io::to_json(a));
  return out;
}

Json single_verdict(std::string_view name, bool pass, const std::string& detail = {}) {
  AxiomVerdict v{std::string(name), pass, {}};
  if (!pass && !detail.empty()) v.witnesses.push_back({std::string(name), 0, 0, -1, detail});
  return Json::array({io::to_json(v)});
}

int cmd_pages(const Options& o, std::ostream& out) {
  const io::ComplexFile file = complex_input(o);
  const auto k = file.filtered(o.filtration);
  const int inf = infinity_stage(k);
  const int r_max = o.stage.value_or(inf);
  if (r_max < 0) throw InputError("--stage must be non-negative");

  Json pages = Json::array();
  for (int r = 0; r <= r_max; ++r) {
    Json cells = Json::array();
    for (const auto& [pq, d] : page(k, r).dims()) cells.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", d}});
    pages.push_back({{"r", r}, {"cells", std::move(cells)}});
  }

  const auto e_inf = page(k, std::max(inf, 1));
  const auto [plo, phi] = k.filtration().graded_window();
  Json limit = Json::array();
  bool agree = true;
  for (int n = k.lo(); n <= k.hi(); ++n) {
    for (int p = plo; p <= phi; ++p) {
      const Index e = e_inf.dim(p, n - p);
      const Index g = graded_cohomology_dim(k, p, n);
      agree = agree && e == g;
      if (e != 0 || g != 0) limit.push_back({{"n", n}, {"p", p}, {"e_infinity", e}, {"graded_cohomology", g}});
    }
  }

  if (o.format == "json") {
    Json tables = Json::object();
    tables["pages"] = pages;
    tables["infinity_stage"] = inf;
    tables["limit"] = limit;
    out << io::dump(io::report("pages", single_verdict("E_inf = Gr H", agree), std::move(tables)));
  } else {
    for (const auto& pj : pages) {
      out << "E_" << pj["r"].get<int>() << "\n";
      Table t({"p", "q", "dim"});
      for (const auto& c : pj["cells"]) {
        t.add({std::to_string(c["p"].get<int>()), std::to_string(c["q"].get<int>()),
               std::to_string(c["dim"].get<Index>())});
      }
      t.print(out);
    }
    out << "E_inf (stage " << inf << ") against Gr H\n";
    Table t({"n", "p", "E_inf", "Gr H"});
    for (const auto& c : limit) {
      t.add({std::to_string(c["n"].get<int>()), std::to_string(c["p"].get<int>()),
             std::to_string(c["e_infinity"].get<Index>()), std::to_string(c["graded_cohomology"].get<Index>())});
    }
    t.print(out);
    out << "E_inf = Gr H: " << yes_no(agree) << "\n";
  }
  return agree ? kPass : kCheckFailed;
}

int cmd_decalage(const Options& o, std::ostream& out) {
  io::ComplexFile file = complex_input(o);
  const io::NamedFiltration& chosen = file.filtration(o.filtration);
  const auto k = FilteredComplex<G>(file.complex, chosen.filtration);
  FilteredComplex<G> result;
  if (o.direction == "dec") {
    result = decalage(k);
  } else if (o.direction == "dec*") {
    result = dual_decalage(k);
  } else {
    result = shift(k);
  }
  for (auto& f : file.filtrations) {
    if (f.name == chosen.name) f.filtration = result.filtration();
  }
  emit(o, io::to_json(file), out);
  return kPass;
}

Diagram random_hodge_diagram(std::uint64_t seed, bool mhc) {
  Rng rng(seed);
  const Diagram k = hodge_diagram(random_mhs_complex(rng));
  return mhc ? s_w(k) : k;
}

int cmd_check(const Options& o, std::ostream& out) {
  require_inputs(o, 1, "one diagram file");
  const Diagram k = o.seed ? random_hodge_diagram(*o.seed, o.mode == "mhc") : diagram_input(o.inputs[0]);
  const HodgeVerdict v = check_hodge(k, o.mode);
  if (o.format == "json") {
    Json tables = Json::object();
    tables["mode"] = o.mode;
    tables["pass"] = v.pass();
    out << io::dump(io::report("check", verdicts_json(v), std::move(tables)));
  } else {
    out << "check " << o.mode << ": " << (v.pass() ? "PASS" : "FAIL") << "\n";
    print_verdicts(v, out);
  }
  return v.pass() ? kPass : kCheckFailed;
}

MixedHodgeStructure validated_mhs(const MixedHodgeStructure& h, const std::string& name) {
  const MhsReport r = is_mhs(h);
  if (!r.ok) {
    throw InputError(name + ": not a mixed Hodge structure (Gr^W_" + std::to_string(r.failing_weights.front()) +
                     " is not pure)");
  }
  return h;
}

int cmd_ext(const Options& o, std::ostream& out) {
  if (!o.seed && o.inputs.size() != 2) throw InputError("expected two MHS files");
  std::vector<MixedHodgeStructure> hs;
  if (o.seed) {
    Rng rng(*o.seed);
    hs = {random_mhs(rng), random_mhs(rng)};
  } else {
    for (const auto& path : o.inputs) hs.push_back(io::mhs_from_json(io::read_json_file(path)));
  }
  const std::vector<std::string> names = o.seed ? std::vector<std::string>{"H", "H'"} : o.inputs;
  for (std::size_t k = 0; k < hs.size(); ++k) validated_mhs(hs[k], names[k]);
  if (o.degree < 0) throw InputError("--degree must be non-negative");

  const ExtGroup e = ext(hs[0], hs[1], o.degree);
  if (o.format == "json") {
    Json reps = Json::array();
    for (const auto& m : e.representatives) {
      Json rows = Json::array();
      for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(io::scalar_text(m(i, c)));
        rows.push_back(std::move(row));
      }
      reps.push_back(std::move(rows));
    }
    Json tables = Json::object();
    tables["degree"] = e.degree;
    tables["dimension"] = e.dimension;
    tables["representatives"] = std::move(reps);
    if (o.degree == 1) {
      const CarlsonData c = carlson_data(hs[0], hs[1]);
      tables["carlson"] = {{"numerator", c.numerator},
                           {"rational", c.rational},
                           {"hodge", c.hodge},
                           {"intersection", c.intersection}};
    }
    out << io::dump(io::report("ext", Json::array(), std::move(tables)));
  } else {
    out << "ext^" << e.degree << " = " << e.dimension << " (dimension over Q)\n";
    for (std::size_t k = 0; k < e.representatives.size(); ++k) {
      out << "representative " << k << "\n" << matrix_text(e.representatives[k]);
    }
  }
  return kPass;
}

Diagram validated_ahc(const Diagram& k, const std::string& name) {
  const HodgeVerdict v = check_ahc(k);
  for (const auto& a : v.axioms) {
    if (!a.pass) throw InputError(name + ": not an absolute Hodge complex (" + a.axiom + " fails)");
  }
  return k;
}

int cmd_homset(const Options& o, std::ostream& out) {
  if (!o.seed && o.inputs.size() != 2) throw InputError("expected two diagram files");
  Diagram k;
  Diagram l;
  if (o.seed) {
    Rng rng(*o.seed);
    const auto pool = random_mhs_pool(rng);
    k = hodge_diagram(random_mhs_complex(rng, pool, 3));
    l = hodge_diagram(random_mhs_complex(rng, pool, 3));
  } else {
    k = validated_ahc(diagram_input(o.inputs[0]), o.inputs[0]);
    l = validated_ahc(diagram_input(o.inputs[1]), o.inputs[1]);
  }
  const Homset h = homset(k, l);
  const bool agree = h.total == h.direct;
  if (o.format == "json") {
    Json summands = Json::array();
    for (const auto& s : h.summands) summands.push_back({{"degree", s.degree}, {"hom", s.hom}, {"ext1", s.ext1}});
    Json tables = Json::object();
    tables["summands"] = std::move(summands);
    tables["total"] = h.total;
    tables["direct"] = h.direct;
    out << io::dump(io::report("homset", single_verdict("formula = direct", agree), std::move(tables)));
  } else {
    Table t({"n", "Hom", "Ext1"});
    for (const auto& s : h.summands) t.add({std::to_string(s.degree), std::to_string(s.hom), std::to_string(s.ext1)});
    t.print(out);
    out << "total " << h.total << ", direct " << h.direct << ", agree: " << yes_no(agree) << "\n";
  }
  return agree ? kPass : kCheckFailed;
}

int cmd_minimal(const Options& o, std::ostream& out) {
  std::vector<std::pair<std::string, Diagram>> jobs;
  if (o.seed) {
    if (o.count < 1) throw InputError("--count must be positive");
    if (o.count > 1 && o.output.empty()) throw InputError("--count above 1 needs --output DIR");
    for (int c = 0; c < o.count; ++c) {
      const std::uint64_t s = *o.seed + static_cast<std::uint64_t>(c);
      jobs.emplace_back("minimal-" + std::to_string(s) + ".json", random_hodge_diagram(s, false));
    }
  } else {
    require_inputs(o, 1, "one diagram file");
    jobs.emplace_back(o.inputs[0], validated_ahc(diagram_input(o.inputs[0]), o.inputs[0]));
  }

  const bool corpus = o.seed && o.count > 1;
  if (corpus) std::filesystem::create_directories(o.output);
  Table t({"file", "verified"});
  Json files = Json::array();
  bool all = true;
  for (const auto& [name, k] : jobs) {
    const io::ModelBundle b{k, minimal_model(k)};
    const bool ok = b.model.verify(k);
    all = all && ok;
    const std::string dump = io::dump(io::to_json(b));
    if (o.output.empty()) {
      out << dump;
      continue;
    }
    const std::string path = corpus ? (std::filesystem::path(o.output) / name).string() : o.output;
    write_file(path, dump);
    t.add({path, yes_no(ok)});
    files.push_back({{"path", path}, {"verified", ok}});
  }
  if (!o.output.empty()) {
    if (o.format == "json") {
      Json tables = Json::object();
      tables["files"] = std::move(files);
      out << io::dump(io::report("minimal", single_verdict("models verify", all), std::move(tables)));
    } else {
      t.print(out);
    }
  }
  return all ? kPass : kCheckFailed;
}

/// Parses the artifact and replays the checks its kind carries.
AxiomVerdict verify_file(const std::string& path, const std::string& mode) {
  AxiomVerdict v{path, true, {}};
  auto fail = [&](const std::string& detail) {
    v.pass = false;
    v.witnesses.push_back({path, 0, 0, -1, detail});
  };
  const Json j = io::read_json_file(path);
  const std::string kind = io::kind_of(j);
  if (kind == "complex") {
    io::complex_from_json(j);
  } else if (kind == "diagram") {
    const Diagram k = io::diagram_from_json(j);
    if (!mode.empty()) {
      for (const auto& a : check_hodge(k, mode).axioms) {
        if (!a.pass) fail(a.axiom + " fails");
      }
    }
  } else if (kind == "mhs") {
    const MhsReport r = is_mhs(io::mhs_from_json(j));
    for (int w : r.failing_weights) fail("Gr^W_" + std::to_string(w) + " is not pure");
  } else if (kind == "minimal-model") {
    const io::ModelBundle b = io::model_from_json(j);
    if (!b.model.verify(b.source)) fail("model identities do not replay");
  } else {
    throw InputError(path + ": unknown kind '" + kind + "'");
  }
  return v;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.inputs.empty()) throw InputError("expected at least one file");
  Json verdicts = Json::array();
  Table t({"file", "pass"});
  bool all = true;
  for (const auto& path : o.inputs) {
    const AxiomVerdict v = verify_file(path, o.mode);
    all = all && v.pass;
    verdicts.push_back(io::to_json(v));
    t.add({path, yes_no(v.pass)});
  }
  if (o.format == "json") {
    out << io::dump(io::report("verify", std::move(verdicts), Json::object()));
  } else {
    t.print(out);
  }
  return all ? kPass : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Filtered complexes, spectral sequences and mixed Hodge diagrams over exact fields.", "hodgeworks");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Generate a random input instead of reading files");

  auto* pages = app.add_subcommand("pages", "Spectral sequence pages of a filtered complex");
  pages->add_option("input", o.inputs, "Complex file");
  pages->add_option("--filtration", o.filtration, "Filtration name");
  pages->add_option("--stage", o.stage, "Last page to print (default: the stage where pages stabilize)");

  auto* dec = app.add_subcommand("decalage", "Decalage, dual decalage or shift of one filtration");
  dec->add_option("input", o.inputs, "Complex file");
  dec->add_option("--filtration", o.filtration, "Filtration name");
  dec->add_option("--direction", o.direction, "dec, dec* or shift")->check(CLI::IsMember({"dec", "dec*", "shift"}));
  dec->add_option("-o,--output", o.output, "Output file");

  auto* check = app.add_subcommand("check", "Mixed or absolute Hodge complex axioms");
  check->add_option("input", o.inputs, "Diagram file");
  check->add_option("--mode", o.mode, "mhc or ahc")->required()->check(CLI::IsMember({"mhc", "ahc"}));

  auto* ext_cmd = app.add_subcommand("ext", "Ext groups between mixed Hodge structures");
  ext_cmd->add_option("input", o.inputs, "Two MHS files");
  ext_cmd->add_option("-n,--degree", o.degree, "Ext degree");

  auto* homset_cmd = app.add_subcommand("homset", "Hom-set decomposition between absolute Hodge complexes");
  homset_cmd->add_option("input", o.inputs, "Two diagram files");

  auto* minimal = app.add_subcommand("minimal", "Minimal model of an absolute Hodge complex");
  minimal->add_option("input", o.inputs, "Diagram file");
  minimal->add_option("-o,--output", o.output, "Output file, or directory with --count");
  minimal->add_option("--count", o.count, "Number of seeded instances");

  auto* verify = app.add_subcommand("verify", "Re-validate emitted artifacts");
  verify->add_option("input", o.inputs, "Files")->required();
  verify->add_option("--mode", o.mode, "Also check diagrams as mhc or ahc")->check(CLI::IsMember({"mhc", "ahc"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (pages->parsed()) return cmd_pages(o, out);
    if (dec->parsed()) return cmd_decalage(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (ext_cmd->parsed()) return cmd_ext(o, out);
    if (homset_cmd->parsed()) return cmd_homset(o, out);
    if (minimal->parsed()) return cmd_minimal(o, out);
    return cmd_verify(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace hodgeworks::cli
