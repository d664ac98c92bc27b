#include "hyperlim/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hyperlim {

namespace {

// Next non-empty line with comments removed.
bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::string tuple_key(const std::vector<int>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
  return s;
}

std::vector<int> parse_key(const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size()) throw ParseError("bad tuple key '" + key + "'");
      out.push_back(v - 1);
    } catch (const std::logic_error&) {
      throw ParseError("bad tuple key '" + key + "'");
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Json to_json(const DiscreteMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"point", a.point}, {"mass", a.mass}});
  return {{"dimension", mu.dimension()}, {"atoms", atoms}};
}

DiscreteMeasure measure_from_json(const Json& j) {
  try {
    int d = j.at("dimension").get<int>();
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back({a.at("point").get<std::vector<double>>(), a.at("mass").get<double>()});
    return DiscreteMeasure(d, std::move(atoms));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("measure JSON: ") + e.what());
  }
}

Json to_json(const TestFunction& f) {
  auto* sp = dynamic_cast<const FiniteSymmetricSpace*>(&f.space());
  if (!sp) throw std::invalid_argument("to_json: only functions on finite symmetric spaces are serializable");
  Json values = Json::object();
  for (std::size_t c = 0; c < sp->class_count(); ++c)
    if (f[c] != 0.0) values[tuple_key(sp->representative(c))] = f[c];
  return {{"space", {{"n", sp->n()}, {"s", sp->s()}, {"family", to_string(sp->family())}}}, {"values", values}};
}

TestFunction test_function_from_json(const Json& j, const Hypergraph* h) {
  try {
    const auto& s = j.at("space");
    auto space = build_space(s.at("n").get<int>(), s.at("s").get<int>(),
                             measure_family_from_string(s.value("family", std::string("uniform"))), h);
    std::vector<double> vals(space->class_count(), 0.0);
    for (const auto& [key, v] : j.at("values").items()) {
      auto t = parse_key(key);
      if (static_cast<int>(t.size()) != space->s() ||
          std::any_of(t.begin(), t.end(), [&](int i) { return i < 0 || i >= space->n(); }))
        throw ParseError("test function JSON: key '" + key + "' is not a point of the space");
      vals[space->class_of(t)] = v.get<double>();
    }
    bool clamped = std::all_of(vals.begin(), vals.end(), [](double v) { return v >= -1.0 && v <= 1.0; });
    return TestFunction(space, std::move(vals), clamped);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("test function JSON: ") + e.what());
  }
}

void write_hypergraph(std::ostream& os, const Hypergraph& h) {
  os << "n " << h.vertex_count() << '\n';
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    auto edge = h.edge(e);
    for (std::size_t i = 0; i < edge.size(); ++i) os << (i ? " " : "") << edge[i] + 1;
    os << '\n';
  }
}

Hypergraph read_hypergraph(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw ParseError("hypergraph file: missing header");
  std::istringstream head(line);
  std::string tag;
  long long n = -1;
  if (!(head >> tag >> n) || tag != "n" || n < 0) throw ParseError("hypergraph file: header must be 'n <count>'");
  std::vector<std::vector<int>> edges;
  while (next_line(is, line)) {
    std::istringstream ls(line);
    std::vector<int> e;
    long long v;
    while (ls >> v) {
      if (v < 1 || v > n) throw ParseError("hypergraph file: vertex id out of range: " + std::to_string(v));
      e.push_back(static_cast<int>(v - 1));
    }
    if (!ls.eof()) throw ParseError("hypergraph file: bad token in '" + line + "'");
    edges.push_back(std::move(e));
  }
  return Hypergraph(static_cast<int>(n), std::move(edges));
}

void write_tensor(std::ostream& os, const SymmetricTensor& t) {
  os << t.order() << ' ' << t.dimension() << '\n';
  const auto nz = t.nonzeros();
  for (std::size_t e = 0; e < nz.size(); ++e) {
    for (int i = 0; i < nz.order; ++i) os << nz.indices[e * nz.order + i] + 1 << ' ';
    os << fmt(nz.values[e]) << '\n';
  }
}

SymmetricTensor read_tensor(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw ParseError("tensor file: missing header");
  std::istringstream head(line);
  int r = 0, n = 0;
  if (!(head >> r >> n) || r < 1 || n < 1) throw ParseError("tensor file: header must be 'r n'");
  std::vector<std::pair<std::vector<int>, double>> entries;
  while (next_line(is, line)) {
    std::istringstream ls(line);
    std::vector<int> idx(r);
    for (auto& i : idx) {
      if (!(ls >> i)) throw ParseError("tensor file: short line '" + line + "'");
      if (i < 1 || i > n) throw ParseError("tensor file: index out of range in '" + line + "'");
      --i;
    }
    double v;
    std::string extra;
    if (!(ls >> v) || (ls >> extra)) throw ParseError("tensor file: bad value in '" + line + "'");
    entries.emplace_back(std::move(idx), v);
  }
  return SymmetricTensor::from_entries(r, n, std::move(entries));
}

void write_hypergraphon(std::ostream& os, const StepHypergraphon& w) {
  const auto& res = w.grid().resolution_by_level();
  os << w.k();
  if (std::all_of(res.begin(), res.end(), [&](int m) { return m == res[0]; }))
    os << ' ' << res[0];
  else
    for (int m : res) os << ' ' << m;
  os << '\n';
  for (std::size_t c = 0; c < w.grid().cell_count(); ++c)
    if (w.grid().canonical(c) == c) os << c << ' ' << fmt(w.values()[c]) << '\n';
}

StepHypergraphon read_hypergraphon(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw ParseError("hypergraphon file: missing header");
  std::istringstream head(line);
  int k = 0;
  if (!(head >> k) || k < 2 || k > 6) throw ParseError("hypergraphon file: bad order");
  std::vector<int> res;
  int m;
  while (head >> m) res.push_back(m);
  if (res.size() == 1) res.assign(k - 1, res[0]);
  if (static_cast<int>(res.size()) != k - 1) throw ParseError("hypergraphon file: need 1 or k-1 resolutions");
  Grid g(CoordinateIndex::proper(k), res);
  std::vector<double> vals(g.cell_count(), 0.0);
  const auto perms = [&] {
    std::vector<std::vector<int>> out;
    std::vector<int> p(k);
    for (int i = 0; i < k; ++i) p[i] = i;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  while (next_line(is, line)) {
    std::istringstream ls(line);
    long long code;
    double v;
    if (!(ls >> code >> v)) throw ParseError("hypergraphon file: bad line '" + line + "'");
    if (code < 0 || static_cast<std::size_t>(code) >= g.cell_count())
      throw ParseError("hypergraphon file: cell index out of range");
    for (const auto& sigma : perms) vals[g.permute(static_cast<std::size_t>(code), sigma)] = v;
  }
  bool is_signed = std::any_of(vals.begin(), vals.end(), [](double v) { return v < 0.0; });
  return StepHypergraphon(k, std::move(res), std::move(vals), is_signed);
}

Json aux_to_json(const ModelSpec& spec, std::uint64_t seed, const GeneratedHypergraph& g) {
  auto pairs = [](const std::vector<std::pair<int, int>>& v) {
    Json a = Json::array();
    for (auto [i, j] : v) a.push_back({i + 1, j + 1});
    return a;
  };
  Json j = {{"model", format_model_spec(spec)}, {"seed", seed}, {"n", spec.n}, {"r", spec.r}};
  j["edge_count"] = g.hypergraph.edge_count();
  if (!g.graph_edges.empty()) j["graph_edges"] = pairs(g.graph_edges);
  if (!g.arcs.empty()) j["arcs"] = pairs(g.arcs);
  if (!g.symmetric_set.empty()) j["symmetric_set"] = pairs(g.symmetric_set);
  if (!g.blocks.empty()) {
    Json b = Json::array();
    for (int x : g.blocks) b.push_back(x + 1);
    j["blocks"] = b;
  }
  if (!g.pair_colors.empty()) {
    static const char* names[] = {"white", "black", "grey"};
    Json c = Json::array();
    for (auto x : g.pair_colors) c.push_back(names[static_cast<int>(x)]);
    j["pair_colors"] = c;
  }
  return j;
}

Json to_json(const ProfileSample& p) {
  Json laws = Json::array();
  for (std::size_t t = 0; t < p.laws.size(); ++t) {
    Json m = to_json(p.laws[t]);
    m["tuple"] = t;
    m["catalog"] = p.tuples[t].label;
    laws.push_back(std::move(m));
  }
  return {{"operator", p.operator_id}, {"k", p.k}, {"order", p.order}, {"laws", laws}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace hyperlim
