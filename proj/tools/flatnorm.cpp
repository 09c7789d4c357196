#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flatnorm/flatnorm.hpp"

using namespace flatnorm;
using nlohmann::json;

namespace {

struct Globals {
  std::string json_path;
  std::string csv_path;
  int threads = 1;
  double tol = 1e-9;
};

// exit codes
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

std::string num(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, r.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

json real_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string complex_str(Complex z) { return "(" + num(z.real()) + ", " + num(z.imag()) + ")"; }

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FlatError(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
}

void emit_json(const Globals& g, const json& doc) {
  if (g.json_path.empty()) return;
  write_text(g.json_path, doc.dump(2) + "\n");
}

bool quiet(const Globals& g) { return g.json_path == "-" || g.csv_path == "-"; }

Surface load_surface(const std::string& path) { return io::surface_from_json(io::read_json_file(path)); }

/// Reads a cochain for `s`, or for its double cover when the file carries
/// twice as many values.
Cochain load_cochain(const std::string& path, const Surface& s) {
  const json doc = io::read_json_file(path);
  int n = s.num_half_edges();
  if (!s.is_translation() && doc.contains("values") && doc["values"].is_object() &&
      static_cast<int>(doc["values"].size()) == 2 * n) {
    n *= 2;
  }
  return io::cochain_from_json(doc, n);
}

json saddle_json(const SaddleConnection& sc) {
  return {{"start", sc.start},
          {"end", sc.end},
          {"first", sc.first},
          {"crossings", sc.crossings},
          {"holonomy", io::complex_to_json(sc.holonomy)},
          {"length", sc.length}};
}

json agy_json(const AGYResult& a) {
  json j = {{"value", a.value}, {"cutoff", a.cutoff}, {"stabilized", a.stabilized}, {"connections", a.connections}};
  j["certificate"] = a.certificate ? saddle_json(*a.certificate) : json(nullptr);
  return j;
}

json report_json(const CompareReport& r) {
  json j = {{"scale", r.scale},
            {"area", r.area},
            {"genus", r.genus},
            {"flips", r.flips},
            {"systole", r.systole},
            {"r", r.r},
            {"agy", agy_json(r.agy)},
            {"teich_upper", r.teich_upper},
            {"teich_lower", r.teich_lower},
            {"lower_constant", r.lower_constant()},
            {"upper_constant", real_json(r.upper_constant())},
            {"lower_constant_check", r.lower_constant_check},
            {"upper_constant_check", r.upper_constant_check},
            {"lower_advisory", r.lower_advisory},
            {"upper_advisory", r.upper_advisory},
            {"passed", r.passed()},
            {"warnings", r.warnings}};
  j["hodge_bound_check"] = r.hodge_bound_check ? json(*r.hodge_bound_check) : json(nullptr);
  j["hodge_ratio"] = r.hodge_ratio ? json(*r.hodge_ratio) : json(nullptr);
  return j;
}

json surface_summary(const Surface& s) {
  json angles = json::array();
  for (const auto& [v, a] : cone_angles(s)) angles.push_back({{"vertex", v}, {"angle", a}, {"angle_over_pi", a / std::numbers::pi}});
  return {{"kind", s.is_translation() ? "translation" : "half-translation"},
          {"genus", s.genus()},
          {"area", area(s)},
          {"vertices", s.map().num_vertices()},
          {"edges", s.map().num_edges()},
          {"faces", s.map().num_faces()},
          {"cone_angles", angles},
          {"shortest_edge", s.shortest_edge()},
          {"longest_edge", s.longest_edge()}};
}

int cmd_validate(const Globals& g, const std::string& path) {
  const Surface s = load_surface(path);
  if (!quiet(g)) {
    std::printf("valid %s surface: genus %d, %d vertices, %d edges, %d triangles\n",
                s.is_translation() ? "translation" : "half-translation", s.genus(), s.map().num_vertices(),
                s.map().num_edges(), s.map().num_faces());
  }
  json j = surface_summary(s);
  j["valid"] = true;
  emit_json(g, j);
  return kOk;
}

int cmd_info(const Globals& g, const std::string& path) {
  const Surface s = load_surface(path);
  json j = surface_summary(s);
  std::optional<double> sys;
  if (s.is_translation()) sys = systole(s);
  j["systole"] = sys ? json(*sys) : json(nullptr);
  if (!quiet(g)) {
    std::printf("kind: %s\ngenus: %d\narea: %s\n", j["kind"].get<std::string>().c_str(), s.genus(), num(area(s)).c_str());
    std::printf("vertices: %d  edges: %d  triangles: %d\n", s.map().num_vertices(), s.map().num_edges(),
                s.map().num_faces());
    for (const auto& [v, a] : cone_angles(s)) std::printf("  vertex %d: cone angle %s pi\n", v, num(a / std::numbers::pi).c_str());
    if (sys) std::printf("systole: %s\n", num(*sys).c_str());
  }
  emit_json(g, j);
  return kOk;
}

int cmd_delaunay(const Globals& g, const std::string& path, const std::string& emit, const std::string& cochain,
                 const std::string& cochain_out) {
  const Surface s = load_surface(path);
  std::vector<Cochain> carry;
  if (!cochain.empty()) carry.push_back(io::cochain_from_json(io::read_json_file(cochain), s.num_half_edges()));
  const auto d = delaunayize(s, carry);
  if (!emit.empty()) io::write_json_file(emit, io::surface_to_json(d.surface));
  if (!cochain_out.empty()) {
    if (carry.empty()) throw FlatError(ErrorCode::UsageError, "--cochain-out needs --cochain");
    io::write_json_file(cochain_out, io::cochain_to_json(d.carried[0]));
  }
  const auto& r = d.report;
  if (!quiet(g)) {
    std::printf("flips: %d\nall delaunay: %s\nshortest edge: %s\n", r.flips_performed, r.all_delaunay ? "yes" : "no",
                num(r.min_edge_length).c_str());
  }
  emit_json(g, {{"flips_performed", r.flips_performed},
                {"all_delaunay", r.all_delaunay},
                {"min_edge_length", r.min_edge_length},
                {"circumradii", r.circumradii}});
  return r.all_delaunay ? kOk : kCheckFailed;
}

int cmd_saddles(const Globals& g, const std::string& path, double max_length) {
  const Surface s = load_surface(path);
  const auto scs = enumerate_saddles(s, max_length, {.threads = g.threads});
  json list = json::array();
  for (const auto& sc : scs) list.push_back(saddle_json(sc));
  if (!g.csv_path.empty()) {
    std::ostringstream csv;
    csv << "start,end,re,im,length,crossings\n";
    for (const auto& sc : scs) {
      csv << sc.start << ',' << sc.end << ',' << num(sc.holonomy.real()) << ',' << num(sc.holonomy.imag()) << ','
          << num(sc.length) << ',' << sc.crossings.size() << '\n';
    }
    write_text(g.csv_path, csv.str());
  }
  if (!quiet(g)) {
    std::printf("%zu saddle connections of length <= %s\n", scs.size(), num(max_length).c_str());
    for (const auto& sc : scs) {
      std::printf("  %d -> %d  holonomy %s  length %s\n", sc.start, sc.end, complex_str(sc.holonomy).c_str(),
                  num(sc.length).c_str());
    }
  }
  emit_json(g, {{"max_length", max_length}, {"count", scs.size()}, {"connections", list}});
  return kOk;
}

int cmd_homology(const Globals& g, const std::string& path, const std::string& cochain) {
  const Surface s = load_surface(path);
  const int rank = h1_rank(s);
  const int dim = cocycle_space_dim(s);
  const auto basis = h1_basis(s);
  json j = {{"genus", s.genus()}, {"h1_rank", rank}, {"cocycle_dimension", dim}, {"a", basis.a}, {"b", basis.b}};
  if (!quiet(g)) {
    std::printf("genus: %d\nH1 rank: %d\ncocycle dimension: %d\n", s.genus(), rank, dim);
  }
  if (!cochain.empty()) {
    const Cochain eta = io::cochain_from_json(io::read_json_file(cochain), s.num_half_edges());
    const auto p = periods(s, basis, eta);
    const Complex self = hermitian_pairing(p, p);
    json pa = json::array(), pb = json::array();
    for (auto z : p.a) pa.push_back(io::complex_to_json(z));
    for (auto z : p.b) pb.push_back(io::complex_to_json(z));
    j["periods"] = {{"a", pa}, {"b", pb}};
    j["self_pairing"] = io::complex_to_json(self);
    if (!quiet(g)) {
      for (std::size_t k = 0; k < p.a.size(); ++k) {
        std::printf("  A%zu: %s  B%zu: %s\n", k + 1, complex_str(p.a[k]).c_str(), k + 1, complex_str(p.b[k]).c_str());
      }
      std::printf("self pairing: %s\n", complex_str(self).c_str());
    }
    const double h = hodge_norm(p);
    j["hodge_norm"] = h;
    if (!quiet(g)) std::printf("hodge norm: %s\n", num(h).c_str());
  }
  emit_json(g, j);
  return kOk;
}

int cmd_cover(const Globals& g, const std::string& path, const std::string& emit) {
  const Surface s = load_surface(path);
  const DoubleCover c = double_cover(s);
  const auto ram = c.ramification_vertices();
  const int dim = anti_invariant_dimension(c);
  if (!emit.empty()) {
    json doc = io::surface_to_json(c.total);
    doc["tau"] = c.tau;
    doc["proj"] = c.proj;
    io::write_json_file(emit, doc);
  }
  if (!quiet(g)) {
    std::printf("cover genus: %d\nramification vertices: %zu\ncover area: %s\nanti-invariant dimension: %d\n",
                c.total.genus(), ram.size(), num(area(c.total)).c_str(), dim);
  }
  emit_json(g, {{"genus", c.total.genus()},
                {"base_genus", s.genus()},
                {"ramification_vertices", ram},
                {"area", area(c.total)},
                {"base_area", area(s)},
                {"anti_invariant_dimension", dim}});
  return kOk;
}

int cmd_agy(const Globals& g, const std::string& path, const std::string& cochain, double cutoff) {
  const Surface s = load_surface(path);
  const Cochain eta = load_cochain(cochain, s);
  Surface total = s;
  Cochain e = eta;
  if (!s.is_translation()) {
    const DoubleCover c = double_cover(s);
    e = static_cast<int>(eta.values.size()) == s.num_half_edges() ? lift(c, eta) : eta;
    total = c.total;
  }
  const auto a = agy_norm(total, e, cutoff, {.threads = g.threads});
  if (!quiet(g)) {
    std::printf("agy norm: %s\ncutoff: %s\nconnections: %zu\nstabilized: %s\n", num(a.value).c_str(),
                num(a.cutoff).c_str(), a.connections, a.stabilized ? "yes" : "no");
  }
  emit_json(g, agy_json(a));
  return kOk;
}

int cmd_compare(const Globals& g, const std::string& path, const std::string& cochain, const std::string& beta,
                double cutoff) {
  const Surface s = load_surface(path);
  const Cochain eta = load_cochain(cochain, s);
  std::optional<Cochain> b;
  if (!beta.empty()) b = load_cochain(beta, s);
  CompareOptions opts;
  opts.cutoff = cutoff;
  opts.tol = g.tol;
  opts.enumerate.threads = g.threads;
  const auto r = compare(s, eta, b, opts);
  if (!quiet(g)) {
    std::printf("r: %s\nagy: %s%s\nteich upper: %s\nteich lower: %s\n", num(r.r).c_str(), num(r.agy.value).c_str(),
                r.agy.stabilized ? "" : " (not stabilized)", num(r.teich_upper).c_str(), num(r.teich_lower).c_str());
    std::printf("lower constant check: %s%s\n", r.lower_constant_check ? "pass" : "fail",
                r.lower_advisory ? " (advisory)" : "");
    std::printf("upper constant check: %s%s\n", r.upper_constant_check ? "pass" : "fail",
                r.upper_advisory ? " (advisory)" : "");
    if (r.hodge_bound_check) std::printf("hodge bound check: %s\n", *r.hodge_bound_check ? "pass" : "fail");
    for (const auto& w : r.warnings) std::printf("warning: %s\n", w.c_str());
  }
  emit_json(g, report_json(r));
  return r.passed() ? kOk : kCheckFailed;
}

int cmd_kw_scan(const Globals& g, const std::vector<double>& eps, double cutoff) {
  CompareOptions opts;
  opts.cutoff = cutoff;
  opts.tol = g.tol;
  opts.enumerate.threads = g.threads;
  const auto rows = kw_scan(eps, opts);
  std::ostringstream csv;
  csv << "eps,r,agy,teich_upper,teich_lower,lower_check,upper_check\n";
  json list = json::array();
  bool ok = true;
  for (const auto& row : rows) {
    const auto& r = row.report;
    csv << num(row.eps) << ',' << num(r.r) << ',' << num(r.agy.value) << ',' << num(r.teich_upper) << ','
        << num(r.teich_lower) << ',' << (r.lower_constant_check ? "true" : "false") << ','
        << (r.upper_constant_check ? "true" : "false") << '\n';
    json j = report_json(r);
    j["eps"] = row.eps;
    list.push_back(j);
    ok = ok && r.passed();
  }
  if (g.csv_path.empty()) {
    if (g.json_path != "-") std::cout << csv.str();
  } else {
    write_text(g.csv_path, csv.str());
  }
  emit_json(g, {{"rows", list}});
  return ok ? kOk : kCheckFailed;
}

int cmd_example(const Globals& g, const std::string& name, double eps, std::uint64_t seed, const std::string& emit,
                const std::string& cochain_out, const std::string& cochain_kind) {
  const gallery::ExampleSpec spec{name, eps, seed};
  const Surface s = gallery::build_example(spec);
  if (!emit.empty()) io::write_json_file(emit, io::surface_to_json(s));
  if (!cochain_out.empty()) {
    std::string kind = cochain_kind;
    if (kind.empty()) kind = name == "kw" ? "twist" : "conj-omega";
    Cochain c;
    if (kind == "twist") {
      if (name != "kw") throw FlatError(ErrorCode::NoSuchCylinder, "only the kw example carries a cylinder");
      const auto kw = gallery::kw_surface(eps);
      c = gallery::twist_cochain(kw.surface, kw.cylinder);
    } else if (kind == "random") {
      c = gallery::random_cochain(s, seed);
    } else if (kind == "omega") {
      c = omega_cochain(s);
    } else if (kind == "conj-omega") {
      c = conj_omega_cochain(s);
    } else {
      throw FlatError(ErrorCode::UsageError, "unknown cochain kind '" + kind + "'");
    }
    io::write_json_file(cochain_out, io::cochain_to_json(c));
  }
  if (emit.empty() && g.json_path.empty()) std::cout << io::surface_to_json(s).dump(2) << "\n";
  else if (!quiet(g)) std::printf("%s: genus %d, area %s\n", name.c_str(), s.genus(), num(area(s)).c_str());
  json j = surface_summary(s);
  j["name"] = name;
  emit_json(g, j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatnorm: flat-surface geometry and Teichmuller/AGY norm comparisons"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--json", g.json_path, "write machine-readable JSON to this path ('-' for stdout)");
  app.add_option("--csv", g.csv_path, "write CSV to this path ('-' for stdout)");
  app.add_option("--threads", g.threads, "worker threads for saddle enumeration")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "tolerance for inequality checks")->check(CLI::PositiveNumber);

  std::string surface, cochain, beta, emit, cochain_out, name, cochain_kind;
  double cutoff = 0.0, max_length = 1.0, eps = 0.1;
  std::uint64_t seed = 0;
  std::vector<double> eps_list{0.1, 0.05, 0.025};

  auto* validate = app.add_subcommand("validate", "check a surface document");
  validate->add_option("surface", surface)->required();
  auto* info = app.add_subcommand("info", "genus, area, cone angles, systole");
  info->add_option("surface", surface)->required();
  auto* delaunay = app.add_subcommand("delaunay", "flip to a Delaunay triangulation");
  delaunay->add_option("surface", surface)->required();
  delaunay->add_option("--emit", emit, "write the flipped surface");
  delaunay->add_option("--cochain", cochain, "cochain to carry through the flips");
  delaunay->add_option("--cochain-out", cochain_out, "write the carried cochain");
  auto* saddles = app.add_subcommand("saddles", "enumerate saddle connections");
  saddles->add_option("surface", surface)->required();
  saddles->add_option("--max-length,-L", max_length, "length bound")->check(CLI::PositiveNumber);
  auto* homology = app.add_subcommand("homology", "symplectic basis and periods");
  homology->add_option("surface", surface)->required();
  homology->add_option("--cochain", cochain, "cochain whose periods to report");
  auto* cover = app.add_subcommand("cover", "orientation double cover");
  cover->add_option("surface", surface)->required();
  cover->add_option("--emit", emit, "write the cover with tau and proj");
  auto* agy = app.add_subcommand("agy", "AGY norm of a cochain");
  agy->add_option("surface", surface)->required();
  agy->add_option("--cochain", cochain)->required();
  agy->add_option("--cutoff", cutoff, "length cutoff (default: twice the longest Delaunay edge)")->check(CLI::NonNegativeNumber);
  auto* cmp = app.add_subcommand("compare", "check both Teichmuller/AGY inequalities");
  cmp->add_option("surface", surface)->required();
  cmp->add_option("--cochain", cochain)->required();
  cmp->add_option("--beta", beta, "holomorphic cochain for the Hodge bound");
  cmp->add_option("--cutoff", cutoff)->check(CLI::NonNegativeNumber);
  auto* scan = app.add_subcommand("kw-scan", "slit-torus sharpness scan");
  scan->add_option("--eps", eps_list, "comma-separated eps values")->delimiter(',')->check(CLI::Range(0.0, 0.5));
  scan->add_option("--cutoff", cutoff)->check(CLI::NonNegativeNumber);
  auto* example = app.add_subcommand("example", "build a gallery surface");
  example->add_option("name", name)->required()->check(CLI::IsMember(gallery::example_names()));
  example->add_option("--eps", eps, "slit width for kw");
  example->add_option("--seed", seed, "seed for random cochains");
  example->add_option("--emit", emit, "write the surface");
  example->add_option("--cochain-out", cochain_out, "write a tangent cochain");
  example->add_option("--cochain-kind", cochain_kind, "twist, random, omega or conj-omega");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) return cmd_validate(g, surface);
    if (*info) return cmd_info(g, surface);
    if (*delaunay) return cmd_delaunay(g, surface, emit, cochain, cochain_out);
    if (*saddles) return cmd_saddles(g, surface, max_length);
    if (*homology) return cmd_homology(g, surface, cochain);
    if (*cover) return cmd_cover(g, surface, emit);
    if (*agy) return cmd_agy(g, surface, cochain, cutoff);
    if (*cmp) return cmd_compare(g, surface, cochain, beta, cutoff);
    if (*scan) return cmd_kw_scan(g, eps_list, cutoff);
    if (*example) return cmd_example(g, name, eps, seed, emit, cochain_out, cochain_kind);
  } catch (const FlatError& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
