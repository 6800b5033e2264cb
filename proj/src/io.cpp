#include "qmd/io.hpp"

#include <fstream>
#include <sstream>

namespace qmd::io {

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

json betti_json(const Betti& b) { return json(b); }

}  // namespace

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << dump(j);
  if (!out) throw IoError("write failed: " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const GridMask& m) {
  json j;
  j["dims"] = m.dims;
  j["periodic"] = m.periodic;
  json cells = json::array();
  for (auto c : m.cells) cells.push_back(c ? 1 : 0);
  j["cells"] = std::move(cells);
  return j;
}

GridMask mask_from_json(const json& j) {
  GridMask m(get<std::vector<std::size_t>>(j, "dims"), get<std::vector<bool>>(j, "periodic"));
  const auto cells = get<std::vector<int>>(j, "cells");
  if (cells.size() != m.cells.size()) throw SchemaError("mask: cells length does not match dims");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] != 0 && cells[i] != 1) throw SchemaError("mask: cells must be 0 or 1");
    m.set(i, cells[i] == 1);
  }
  return m;
}

json to_json(const ScalarField& f) {
  json j;
  j["dims"] = f.dims;
  j["spacing"] = f.spacing;
  j["periodic"] = f.periodic;
  j["origin"] = f.origin;
  j["values"] = f.values;
  return j;
}

ScalarField field_from_json(const json& j) {
  std::vector<double> origin;
  if (j.is_object() && j.contains("origin")) origin = get<std::vector<double>>(j, "origin");
  ScalarField f(get<std::vector<std::size_t>>(j, "dims"), get<std::vector<double>>(j, "spacing"),
                get<std::vector<bool>>(j, "periodic"), origin);
  f.values = get<std::vector<double>>(j, "values");
  try {
    f.validate();
  } catch (const std::exception& e) {
    throw SchemaError(std::string("field: ") + e.what());
  }
  return f;
}

json to_json(const QMDDescriptor& d) {
  json pieces = json::array();
  for (const Piece& p : d.pieces) {
    json pj;
    pj["name"] = p.name;
    pj["action"] = p.action;
    pj["iota"] = p.iota;
    if (p.betti) pj["betti"] = betti_json(*p.betti);
    if (p.complex) {
      json gens = json::array(), diff = json::array();
      for (const auto& [name, deg] : p.complex->generators) gens.push_back({{"name", name}, {"degree", deg}});
      for (const auto& [from, to] : p.complex->differential) diff.push_back({{"from", from}, {"to", to}});
      pj["complex"] = {{"generators", gens}, {"differential", diff}};
    }
    if (p.mask) pj["mask"] = to_json(*p.mask);
    pieces.push_back(std::move(pj));
  }
  json cross = json::array();
  for (const CrossTerm& c : d.cross_terms) cross.push_back({{"from", c.from}, {"to", c.to}});
  return {{"pieces", pieces}, {"cross_terms", cross}};
}

QMDDescriptor descriptor_from_json(const json& j) {
  QMDDescriptor d;
  const json pieces = get<json>(j, "pieces");
  if (!pieces.is_array()) throw SchemaError("descriptor: pieces must be an array");
  for (const json& pj : pieces) {
    Piece p;
    p.name = get<std::string>(pj, "name");
    p.action = get<double>(pj, "action");
    p.iota = get<int>(pj, "iota");
    int kinds = 0;
    if (pj.contains("betti")) {
      p.betti = get<Betti>(pj, "betti");
      ++kinds;
    }
    if (pj.contains("complex")) {
      const json cj = pj.at("complex");
      LocalComplex lc;
      for (const json& g : get<json>(cj, "generators")) lc.generators.emplace_back(get<std::string>(g, "name"), get<int>(g, "degree"));
      if (cj.contains("differential"))
        for (const json& e : cj.at("differential"))
          lc.differential.emplace_back(get<std::string>(e, "from"), get<std::string>(e, "to"));
      p.complex = std::move(lc);
      ++kinds;
    }
    if (pj.contains("mask")) {
      p.mask = mask_from_json(pj.at("mask"));
      ++kinds;
    }
    if (kinds != 1) throw SchemaError("descriptor: piece " + p.name + " needs exactly one of betti, complex, mask");
    d.pieces.push_back(std::move(p));
  }
  if (j.contains("cross_terms"))
    for (const json& c : j.at("cross_terms")) d.cross_terms.push_back({get<std::string>(c, "from"), get<std::string>(c, "to")});
  return d;
}

json to_json(const LagrangianLinePath& p) { return {{"times", p.times}, {"angles", p.angles}}; }

LagrangianLinePath path_from_json(const json& j) {
  LagrangianLinePath p{get<std::vector<double>>(j, "times"), get<std::vector<double>>(j, "angles")};
  try {
    p.validate();
  } catch (const PathError& e) {
    throw SchemaError(std::string("path: ") + e.what());
  }
  return p;
}

json to_json(const SubmanifoldChart& s) { return {{"axes", s.axes}, {"base", s.base}}; }

json to_json(const DegeneracyReport& r) {
  json j;
  j["classification"] = to_string(r.classification);
  j["passed"] = r.passed;
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  j["details"] = details;
  j["negative_index"] = r.negative_index ? json(*r.negative_index) : json(nullptr);
  json spectra = json::array();
  for (const NodeSpectrum& s : r.hessian_spectra) spectra.push_back({{"node", s.node}, {"eigenvalues", s.eigenvalues}});
  j["hessian_spectra"] = spectra;
  j["notes"] = r.notes;
  return j;
}

json to_json(const IsolationReport& r) {
  json steps = json::array();
  for (const IsolationStep& s : r.steps) steps.push_back({{"t", s.t}, {"isolated", s.isolated}});
  return {{"steps", steps},
          {"isolated_before_end", r.isolated_before_end},
          {"end_within_s", r.end_within_s},
          {"end_equals_c", r.end_equals_c},
          {"passed", r.passed}};
}

json to_json(const catalog::CaseReport& r) {
  json checks = json::array();
  for (const catalog::Check& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"origin", catalog::to_string(c.origin)},
                      {"expected", c.expected},
                      {"actual", c.actual},
                      {"passed", c.passed}});
  return {{"name", r.name}, {"inputs", r.inputs}, {"checks", checks}, {"passed", r.passed}};
}

json page_report(const FilteredComplex& fc, int first_page, int last_page) {
  json j;
  j["convention"] = {{"indexing", "homological"},
                     {"p", "rank of the piece after a stable sort by action, from 1"},
                     {"q", "local degree + iota - p"},
                     {"differential_bidegree", "(-k, k-1)"}};
  json levels = json::array();
  for (const auto& [p, label] : fc.level_labels) {
    json l = {{"p", p}, {"piece", label}};
    const auto it = fc.level_actions.find(p);
    if (it != fc.level_actions.end()) l["action"] = it->second;
    levels.push_back(std::move(l));
  }
  j["levels"] = levels;
  json pages = json::array();
  for (int k = first_page; k <= last_page; ++k) {
    const Page pg = page(fc, k);
    json entries = json::array();
    for (const auto& [pq, dim] : pg.dims()) entries.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", dim}});
    pages.push_back({{"k", k}, {"entries", entries}});
  }
  j["pages"] = pages;
  const Convergence conv = converge(fc);
  j["stable_index"] = conv.stable_index;
  json einf = json::array();
  std::map<int, std::size_t> graded;
  for (const auto& [pq, dim] : conv.einf.dims()) {
    einf.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", dim}});
    graded[pq.first + pq.second] += dim;
  }
  j["einf"] = einf;
  bool ok = true;
  json total = json::array();
  const auto homology = total_homology(fc);
  for (const auto& [n, dim] : homology) {
    total.push_back({{"n", n}, {"dim", dim}});
    const auto it = graded.find(n);
    if ((it == graded.end() ? 0 : it->second) != dim) ok = false;
  }
  for (const auto& [n, dim] : graded)
    if (dim && !homology.count(n)) ok = false;
  j["total_homology"] = total;
  j["associated_graded_ok"] = ok;
  return j;
}

}  // namespace qmd::io
