#ifndef CSTARCAT_SPEC_IO_HPP
#define CSTARCAT_SPEC_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cstarcat/action.hpp"
#include "cstarcat/category.hpp"

namespace cstarcat {

using json = nlohmann::json;  // std::map-backed: keys emit in sorted order

// The on-disk description of a category, an optional group and action,
// and an optional task list. Matrices are nested arrays of [re, im]
// pairs; hom bases need not be orthonormal (ingestion orthonormalizes).
struct SpecObject {
  std::string id;
  std::size_t dim = 0;
};

struct SpecHom {
  std::string src;
  std::string dst;
  std::vector<ComplexMatrix> basis;
};

struct SpecIntertwiner {
  std::size_t g = 0;
  std::string object;
  ComplexMatrix matrix;
};

struct SpecDocument {
  std::string version = "1";
  std::vector<SpecObject> objects;
  std::vector<SpecHom> homs;
  std::optional<std::vector<std::vector<std::size_t>>> group_table;
  std::optional<std::vector<std::map<std::string, std::string>>> object_perm;
  std::vector<SpecIntertwiner> intertwiners;
  std::vector<std::string> tasks;
};

namespace io_detail {

inline ParseError err_at(const std::string& path, const std::string& what) {
  return ParseError(path + ": " + what);
}

inline ComplexMatrix parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array()) throw err_at(path, "matrix must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) throw err_at(path, "row must be an array");
    cols = j[0].size();
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw err_at(path + "[" + std::to_string(i) + "]", "ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      const json& e = j[i][k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw err_at(path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]",
                     "entry must be [re, im]");
      m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

inline json emit_matrix(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace io_detail

inline SpecDocument parse_spec(const json& j) {
  SpecDocument doc;
  if (!j.is_object()) throw io_detail::err_at("$", "document must be an object");
  if (j.contains("version")) doc.version = j.at("version").get<std::string>();

  if (!j.contains("category"))
    throw io_detail::err_at("$.category", "missing category section");
  const json& cat = j.at("category");
  if (!cat.contains("objects") || !cat.at("objects").is_array())
    throw io_detail::err_at("$.category.objects", "missing object list");
  for (std::size_t i = 0; i < cat.at("objects").size(); ++i) {
    const json& o = cat.at("objects")[i];
    const std::string path = "$.category.objects[" + std::to_string(i) + "]";
    if (!o.contains("id") || !o.at("id").is_string())
      throw io_detail::err_at(path + ".id", "object id must be a string");
    if (!o.contains("dim") || !o.at("dim").is_number_unsigned())
      throw io_detail::err_at(path + ".dim", "dim must be a nonnegative integer");
    doc.objects.push_back({o.at("id").get<std::string>(), o.at("dim").get<std::size_t>()});
  }
  if (cat.contains("hom")) {
    for (std::size_t i = 0; i < cat.at("hom").size(); ++i) {
      const json& h = cat.at("hom")[i];
      const std::string path = "$.category.hom[" + std::to_string(i) + "]";
      SpecHom sh;
      if (!h.contains("src") || !h.contains("dst"))
        throw io_detail::err_at(path, "hom entry needs src and dst");
      sh.src = h.at("src").get<std::string>();
      sh.dst = h.at("dst").get<std::string>();
      if (h.contains("basis"))
        for (std::size_t b = 0; b < h.at("basis").size(); ++b)
          sh.basis.push_back(io_detail::parse_matrix(
              h.at("basis")[b], path + ".basis[" + std::to_string(b) + "]"));
      doc.homs.push_back(std::move(sh));
    }
  }

  if (j.contains("group")) {
    const json& g = j.at("group");
    if (!g.contains("table") || !g.at("table").is_array())
      throw io_detail::err_at("$.group.table", "missing multiplication table");
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : g.at("table"))
      table.push_back(row.get<std::vector<std::size_t>>());
    if (g.contains("order") && g.at("order").get<std::size_t>() != table.size())
      throw io_detail::err_at("$.group.order", "order disagrees with the table");
    doc.group_table = std::move(table);
  }

  if (j.contains("action")) {
    const json& a = j.at("action");
    if (a.contains("object_perm")) {
      std::vector<std::map<std::string, std::string>> perm;
      for (const auto& p : a.at("object_perm"))
        perm.push_back(p.get<std::map<std::string, std::string>>());
      doc.object_perm = std::move(perm);
    }
    if (a.contains("intertwiners")) {
      for (std::size_t i = 0; i < a.at("intertwiners").size(); ++i) {
        const json& v = a.at("intertwiners")[i];
        const std::string path = "$.action.intertwiners[" + std::to_string(i) + "]";
        SpecIntertwiner si;
        si.g = v.at("g").get<std::size_t>();
        si.object = v.at("object").get<std::string>();
        si.matrix = io_detail::parse_matrix(v.at("matrix"), path + ".matrix");
        doc.intertwiners.push_back(std::move(si));
      }
    }
  }

  if (j.contains("tasks")) doc.tasks = j.at("tasks").get<std::vector<std::string>>();
  return doc;
}

inline SpecDocument parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_spec(j);
}

inline json emit_spec(const SpecDocument& doc) {
  json j;
  j["version"] = doc.version;
  json objs = json::array();
  for (const auto& o : doc.objects) objs.push_back({{"dim", o.dim}, {"id", o.id}});
  j["category"]["objects"] = std::move(objs);
  json homs = json::array();
  for (const auto& h : doc.homs) {
    json basis = json::array();
    for (const auto& b : h.basis) basis.push_back(io_detail::emit_matrix(b));
    homs.push_back({{"basis", std::move(basis)}, {"dst", h.dst}, {"src", h.src}});
  }
  j["category"]["hom"] = std::move(homs);
  if (doc.group_table) {
    j["group"]["order"] = doc.group_table->size();
    j["group"]["table"] = *doc.group_table;
  }
  if (doc.object_perm) j["action"]["object_perm"] = *doc.object_perm;
  if (!doc.intertwiners.empty()) {
    json vs = json::array();
    for (const auto& v : doc.intertwiners)
      vs.push_back({{"g", v.g},
                    {"matrix", io_detail::emit_matrix(v.matrix)},
                    {"object", v.object}});
    j["action"]["intertwiners"] = std::move(vs);
  }
  if (!doc.tasks.empty()) j["tasks"] = doc.tasks;
  return j;
}

struct IngestResult {
  FinCStarCat cat;
  std::optional<FiniteGroup> group;
  std::optional<GAction> action;
  // change of basis per hom pair: coefficients of the raw basis elements
  // in the orthonormalized basis
  std::map<std::pair<std::string, std::string>, ComplexMatrix> basis_change;
  Report category_validation;
  std::optional<Report> action_validation;
};

// Builds the concrete structures: orthonormalizes the hom bases
// (recording the change of basis) and runs the module validators.
inline IngestResult ingest(const SpecDocument& doc, const Tolerances& tol = Tolerances{}) {
  IngestResult out;
  for (const auto& o : doc.objects) out.cat.add_object(o.id, o.dim);
  for (const auto& h : doc.homs) {
    std::size_t s = out.cat.index_of(h.src);
    std::size_t d = out.cat.index_of(h.dst);
    MatrixSubspace space(out.cat.object(d).dim, out.cat.object(s).dim);
    for (const auto& b : h.basis) {
      if (b.rows() != out.cat.object(d).dim || b.cols() != out.cat.object(s).dim)
        throw ParseError("hom basis " + h.src + "->" + h.dst +
                         " has shape inconsistent with the declared dims");
      space.extend(b);
    }
    ComplexMatrix change(space.dim(), h.basis.size());
    for (std::size_t k = 0; k < h.basis.size(); ++k) {
      std::vector<cplx> c = space.coefficients(h.basis[k]);
      for (std::size_t i = 0; i < space.dim(); ++i) change(i, k) = c[i];
    }
    out.basis_change[{h.src, h.dst}] = std::move(change);
    out.cat.set_hom(s, d, std::move(space));
  }
  out.category_validation = validate(out.cat, tol);

  if (doc.group_table) {
    out.group = FiniteGroup(*doc.group_table);
    std::vector<std::map<std::string, std::string>> perm;
    if (doc.object_perm) {
      perm = *doc.object_perm;
    } else {
      perm.resize(out.group->order());
      for (std::size_t g = 0; g < out.group->order(); ++g)
        for (const auto& o : out.cat.objects()) perm[g][o.id] = o.id;
    }
    std::map<std::pair<std::size_t, std::string>, ComplexMatrix> v;
    for (const auto& si : doc.intertwiners) v[{si.g, si.object}] = si.matrix;
    out.action = GAction(*out.group, out.cat, std::move(perm), std::move(v));
    out.action_validation = out.action->validate(tol);
  }
  return out;
}

inline IngestResult ingest_file(const std::string& path,
                                const Tolerances& tol = Tolerances{}) {
  return ingest(parse_spec_file(path), tol);
}

// Reports rendered as JSON with canonical (sorted) keys.
inline json report_to_json(const Report& rep) {
  json j;
  j["title"] = rep.title;
  j["pass"] = rep.all_pass();
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"details", c.details},
                      {"name", c.name},
                      {"pass", c.pass},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance}});
  j["checks"] = std::move(checks);
  return j;
}

inline std::string report_to_text(const Report& rep) {
  std::ostringstream os;
  os << rep.title << ":\n";
  for (const auto& c : rep.checks) {
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << " (residual "
       << c.residual << " <= " << c.tolerance << ")";
    if (!c.details.empty()) os << " " << c.details;
    os << "\n";
  }
  return os.str();
}

}  // namespace cstarcat

#endif
