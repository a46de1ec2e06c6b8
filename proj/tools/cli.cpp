#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "ssgh/cache.hpp"
#include "ssgh/complex.hpp"
#include "ssgh/homology.hpp"
#include "ssgh/semistable.hpp"
#include "ssgh/surgery.hpp"
#include "ssgh/gluing.hpp"

namespace ssgh::cli {

namespace {

using nlohmann::json;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
  ValidityReport violations;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    DomainError err("malformed JSON in " + path);
    err.violations.push_back({"malformed-json", e.what()});
    throw err;
  }
}

void write_artifact(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << j.dump(2) << "\n";
}

void print_violations(std::ostream& out, const ValidityReport& report) {
  for (const auto& v : report) {
    out << "  " << v.name;
    if (!v.detail.empty()) out << ": " << v.detail;
    out << "\n";
  }
}

json violations_json(const ValidityReport& report) {
  json a = json::array();
  for (const auto& v : report) a.push_back({{"name", v.name}, {"detail", v.detail}});
  return a;
}

std::vector<int> parse_ids(const std::string& text) {
  std::vector<int> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw CLI::ValidationError("--edges", "not an integer: " + item);
    ids.push_back(v);
  }
  return ids;
}

Point cusp_at(const RibbonGraph& g, int h) {
  if (h < 0 || h >= g.half_edge_count()) throw GraphError("half-edge " + std::to_string(h) + " out of range");
  return {g.on_circle(h) ? PointKind::kCircleCusp : PointKind::kCusp, h};
}

RibbonGraph load_valid_graph(const std::string& path) {
  RibbonGraph g = graph_from_json(read_json(path));
  ValidityReport r = validate(g, false);
  if (!r.empty()) {
    DomainError err(path + " is not a valid ribbon graph");
    err.violations = std::move(r);
    throw err;
  }
  return g;
}

// Cached complex document: dimensions and boundary matrices.
struct ComplexData {
  std::vector<std::size_t> dims;
  std::vector<BoundaryMatrix> matrices;
  std::size_t zero_generators = 0;
};

json complex_json(int g, int n, const ComplexData& c) {
  json ms = json::array();
  for (const auto& m : c.matrices) ms.push_back(to_json(m));
  return {{"g", g}, {"n", n}, {"dims", c.dims}, {"zero_generators", c.zero_generators}, {"matrices", ms}};
}

ComplexData load_complex(int g, int n, int threads, const CatalogCache& cache) {
  const std::string key = CatalogCache::artifact_key("complex", g, n);
  if (auto text = cache.load(key)) {
    try {
      json j = json::parse(*text);
      ComplexData c;
      c.dims = j.at("dims").get<std::vector<std::size_t>>();
      c.zero_generators = j.at("zero_generators").get<std::size_t>();
      for (const auto& m : j.at("matrices")) c.matrices.push_back(matrix_from_json(m));
      return c;
    } catch (const std::exception&) {
      // unreadable entry, recompute
    }
  }
  Catalog cat = build_catalog(g, n, threads);
  ComplexData c;
  for (int k = 0; k <= cat.top_degree(); ++k) c.dims.push_back(cat.dimension(k));
  c.zero_generators = cat.zero_generators;
  c.matrices = boundary_matrices(cat, {}, threads);
  cache.store(key, complex_json(g, n, c).dump());
  return c;
}

json load_catalog(int g, int n, std::optional<int> k, int threads, const CatalogCache& cache) {
  const std::string key = CatalogCache::artifact_key("catalog", g, n, k);
  if (auto text = cache.load(key)) {
    try {
      return json::parse(*text);
    } catch (const json::parse_error&) {
      // recompute
    }
  }
  Catalog cat = build_catalog(g, n, threads);
  json j = catalog_to_json(cat, k);
  j["zero_generators"] = cat.zero_generators;
  cache.store(key, j.dump());
  return j;
}

void print_dims(std::ostream& out, const std::vector<std::size_t>& dims) {
  out << std::setw(4) << "k" << std::setw(10) << "dim" << "\n";
  for (std::size_t k = 0; k < dims.size(); ++k) out << std::setw(4) << k << std::setw(10) << dims[k] << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semistable ribbon graphs and their graph complex", "ssgh"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", code_version_hash());

  std::string out_path;
  int threads = 0;
  bool no_cache = false;
  app.add_option("--out", out_path, "Write the JSON artifact to this path");
  app.add_option("--threads", threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--no-cache", no_cache, "Recompute instead of reading the catalog cache");

  std::string file1, file2, edges_text;
  int vertex = -1, cycle1 = -1, cycle2 = -1;
  int genus = 0, labels = 0;
  std::optional<int> degree;

  auto* validate_cmd = app.add_subcommand("validate", "Check a graph, sequence or semistable document");
  validate_cmd->add_option("FILE", file1)->required();
  auto* derive_cmd = app.add_subcommand("derive", "Vertices, boundary cycles, components and type");
  derive_cmd->add_option("FILE", file1)->required();
  auto* collapse_cmd = app.add_subcommand("collapse", "Collapse an edge subset");
  collapse_cmd->add_option("FILE", file1)->required();
  collapse_cmd->add_option("--edges", edges_text, "Comma separated edge ids")->required();
  auto* blowup_cmd = app.add_subcommand("blowup", "Blow up a vertex");
  blowup_cmd->add_option("FILE", file1)->required();
  blowup_cmd->add_option("--vertex", vertex, "Any half-edge of the vertex")->required();
  auto* glue_cmd = app.add_subcommand("glue", "Glue an injective cycle of FILE1 onto a cycle of FILE2");
  glue_cmd->add_option("FILE1", file1)->required();
  glue_cmd->add_option("FILE2", file2)->required();
  glue_cmd->add_option("--cycle1", cycle1, "Half-edge of the injective cycle in FILE1")->required();
  glue_cmd->add_option("--cycle2", cycle2, "Half-edge of the target cycle in FILE2")->required();

  auto add_type = [&](CLI::App* cmd) {
    cmd->add_option("-g", genus, "Genus")->required()->check(CLI::NonNegativeNumber);
    cmd->add_option("-n", labels, "Number of labels")->required()->check(CLI::NonNegativeNumber);
  };
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List generators of the complex");
  add_type(enumerate_cmd);
  enumerate_cmd->add_option("-k", degree, "Only this degree")->check(CLI::NonNegativeNumber);
  auto* matrices_cmd = app.add_subcommand("matrices", "Boundary matrices of the complex");
  add_type(matrices_cmd);
  auto* verify_cmd = app.add_subcommand("verify-d2", "Check that consecutive boundary matrices compose to zero");
  add_type(verify_cmd);
  auto* homology_cmd = app.add_subcommand("homology", "Integral homology of the complex");
  add_type(homology_cmd);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CatalogCache cache = CatalogCache::from_environment(!no_cache);
  try {
    if (*validate_cmd) {
      json j = read_json(file1);
      ValidityReport report;
      std::string what = "graph";
      try {
        if (j.contains("nodes")) {
          what = "semistable graph";
          report = validate_semistable(semistable_from_json(j));
        } else if (j.contains("sequence")) {
          what = "sequence";
          report = validate_sequence(sequence_from_json(j));
        } else {
          report = validate(graph_from_json(j));
        }
      } catch (const GraphError& e) {
        report.push_back({"malformed-document", e.what()});
      }
      write_artifact(out_path, {{"valid", report.empty()}, {"violations", violations_json(report)}});
      if (report.empty()) {
        out << "valid " << what << "\n";
        return 0;
      }
      out << "invalid " << what << "\n";
      print_violations(out, report);
      return 1;
    }
    if (*derive_cmd) {
      json j = read_json(file1);
      RibbonGraph g = graph_from_json(j);
      if (auto r = validate(g, false); !r.empty()) {
        DomainError e(file1 + " is not a valid ribbon graph");
        e.violations = std::move(r);
        throw e;
      }
      DerivedStructure d = derive(g);
      json doc = {{"vertices", d.vertices}, {"boundary_cycles", d.boundary_cycles}, {"components", d.components}};
      json genera = json::array();
      for (std::size_t c = 0; c < d.components.size(); ++c) genera.push_back(component_genus(g, d, static_cast<int>(c)));
      doc["genera"] = genera;
      out << "vertices " << d.vertices.size() << ", edges " << g.edge_count() << ", boundary cycles "
          << d.cusp_count() << ", components " << d.components.size() << "\n";
      if (d.components.size() == 1) {
        TopologicalType t = topological_type(g);
        doc["type"] = {{"g", t.genus}, {"n", t.label_count}};
        out << "type (" << t.genus << "," << t.label_count << ")\n";
      }
      if (j.contains("sequence")) {
        SequencedGraph sq = sequence_from_json(j);
        if (auto r = validate_sequence(sq); !r.empty()) {
          DomainError e(file1 + " is not a semistable sequence");
          e.violations = std::move(r);
          throw e;
        }
        doc["degree"] = ssgh::degree(sq);
        doc["semistable"] = to_json(from_sequence(sq));
        out << "sequence length " << sq.length() << ", degree " << ssgh::degree(sq) << "\n";
      }
      write_artifact(out_path, doc);
      return 0;
    }
    if (*collapse_cmd) {
      RibbonGraph g = load_valid_graph(file1);
      std::vector<int> ids;
      for (int h : parse_ids(edges_text)) {
        if (h < 0 || h >= g.half_edge_count()) throw GraphError("edge " + std::to_string(h) + " out of range");
        ids.push_back(g.edge_of(h));
      }
      EdgeSet z(std::move(ids));
      SubsetClass kind = classify_subset(g, z);
      CollapseResult r = edge_collapse(g, z);
      json pairs = json::array();
      for (const auto& p : r.pairs) pairs.push_back({p.vertex.rep, p.cycle.rep});
      const char* name = kind.negligible()   ? "negligible"
                         : kind.stable()     ? "stable"
                         : kind.semistable() ? "semistable"
                                             : "neither";
      out << "subset is " << name
          << "; result has " << r.graph.edge_count() << " edges, " << r.pairs.size() << " exceptional pairs\n";
      write_artifact(out_path, {{"graph", to_json(r.graph)},
                                {"origin", r.origin},
                                {"semistable_part", r.semistable_part.ids()},
                                {"exceptional_pairs", pairs}});
      return 0;
    }
    if (*blowup_cmd) {
      RibbonGraph g = load_valid_graph(file1);
      BlowUpResult r = blow_up(g, vertex);
      out << "blown up vertex through " << vertex << "; new cycle through " << r.cycle_rep << "\n";
      write_artifact(out_path, {{"graph", to_json(r.graph)}, {"cycle", r.cycle_rep}});
      return 0;
    }
    if (*glue_cmd) {
      RibbonGraph a = load_valid_graph(file1);
      RibbonGraph b = load_valid_graph(file2);
      Point p1 = cusp_at(a, cycle1);
      Point p2 = cusp_at(b, cycle2);
      p2.rep += a.half_edge_count();
      auto family = gluing_family(disjoint_union(a, b), p1, p2);
      json classes = json::array();
      for (const auto& c : family) classes.push_back(to_json(c.graph));
      out << family.size() << " glued classes\n";
      write_artifact(out_path, {{"classes", classes}});
      return 0;
    }
    if (*enumerate_cmd) {
      json cat = load_catalog(genus, labels, degree, threads, cache);
      std::size_t total = 0;
      for (const auto& d : cat.at("degrees")) {
        const auto& gens = d.at("generators");
        total += gens.size();
        out << "degree " << d.at("k").get<int>() << ": " << gens.size() << " generators\n";
        if (degree) {
          for (const auto& gen : gens) {
            out << "  " << gen.at("id").get<std::string>() << "  edges "
                << gen.at("graph").at("half_edges").get<int>() / 2 << "  length " << gen.at("length").get<int>()
                << "\n";
          }
        }
      }
      if (degree && total == 0) out << "degree " << *degree << ": 0 generators\n";
      write_artifact(out_path, cat);
      return 0;
    }
    if (*matrices_cmd) {
      ComplexData c = load_complex(genus, labels, threads, cache);
      print_dims(out, c.dims);
      for (const auto& m : c.matrices) {
        out << "d_" << m.degree << ": " << m.rows.size() << " x " << m.cols.size() << ", " << m.entries.size()
            << " nonzero\n";
      }
      write_artifact(out_path, complex_json(genus, labels, c));
      return 0;
    }
    if (*verify_cmd) {
      ComplexData c = load_complex(genus, labels, threads, cache);
      DSquaredReport r = verify_d_squared(c.matrices);
      write_artifact(out_path, to_json(r));
      if (r.ok) {
        out << "d²=0: OK\n";
        return 0;
      }
      out << "d²=0: FAIL at degree " << r.degree << " entry (" << r.row << ", " << r.col << ") = " << r.value
          << " [" << r.row_generator << " <- " << r.col_generator << "]\n";
      return 1;
    }
    if (*homology_cmd) {
      ComplexData c = load_complex(genus, labels, threads, cache);
      HomologyProfile p = homology_profile(genus, labels, c.dims, c.matrices, threads);
      out << std::setw(4) << "k" << std::setw(10) << "dim" << std::setw(10) << "rank" << std::setw(8) << "betti"
          << "  torsion\n";
      for (const auto& d : p.degrees) {
        out << std::setw(4) << d.k << std::setw(10) << d.dim << std::setw(10) << d.rank << std::setw(8) << d.betti
            << " ";
        for (const auto& t : d.torsion) out << " Z/" << t;
        out << "\n";
      }
      out << "euler characteristic " << p.euler_from_cells() << "\n";
      write_artifact(out_path, to_json(p));
      return 0;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    print_violations(err, e.violations);
    return 1;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ssgh::cli
