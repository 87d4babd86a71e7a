#include "gradecert/shell/spec_io.hpp"

#include <algorithm>
#include <sstream>

#include "gradecert/algcore/quiver.hpp"
#include "json.hpp"

namespace gradecert::shell {

namespace {

using nlohmann::json;
using la::Field;
using la::Scalar;
using la::Vector;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorKind::Parse, "at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports "... at line L, column C: ..."
    fail(ErrorKind::Parse, e.what());
  }
}

// Access helpers that carry a JSON pointer for diagnostics.
struct Node {
  const json& j;
  std::string path;

  bool has(const char* key) const { return j.is_object() && j.contains(key); }
  Node at(const char* key) const {
    if (!j.is_object()) bad(path, "expected an object");
    if (!j.contains(key)) bad(path + "/" + key, "missing field");
    return {j.at(key), path + "/" + key};
  }
  Node at(std::size_t i) const { return {j.at(i), path + "/" + std::to_string(i)}; }
  const json::array_t& array() const {
    if (!j.is_array()) bad(path, "expected an array");
    return j.get_ref<const json::array_t&>();
  }
  std::size_t size() const { return array().size(); }
  std::string str() const {
    if (!j.is_string()) bad(path, "expected a string");
    return j.get<std::string>();
  }
  std::size_t index(std::size_t bound) const {
    if (!j.is_number_unsigned()) bad(path, "expected a nonnegative integer");
    const auto v = j.get<std::uint64_t>();
    if (v >= bound) bad(path, "index " + std::to_string(v) + " out of range (< " + std::to_string(bound) + ")");
    return static_cast<std::size_t>(v);
  }
  long long integer() const {
    if (!j.is_number_integer()) bad(path, "expected an integer");
    return j.get<long long>();
  }
  Scalar scalar(Field f) const {
    if (j.is_number_integer()) return Scalar(f, j.get<long long>());
    if (!j.is_string()) bad(path, "expected a scalar (integer or \"num/den\" string)");
    try {
      return Scalar::parse(f, j.get<std::string>());
    } catch (const Error& e) {
      bad(path, e.what());
    }
  }
  mpz_class big_integer() const {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    if (!j.is_string()) bad(path, "expected an integer or a decimal string");
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) bad(path, "not a decimal integer");
    return z;
  }
  Vector vector(Field f, std::size_t n) const {
    if (size() != n) bad(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(size()));
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(at(i).scalar(f));
    return v;
  }
};

Field parse_field(const Node& n) {
  try {
    return Field::parse(n.str());
  } catch (const Error& e) {
    bad(n.path, e.what());
  }
}

qhk::WeightPoset poset_from(const Node& n, std::optional<std::size_t> size) {
  std::size_t count = 0;
  if (n.has("size")) count = static_cast<std::size_t>(n.at("size").index(static_cast<std::size_t>(-1)));
  else if (size) count = *size;
  else bad(n.path + "/size", "missing field (no idempotents to infer it from)");
  if (size && count != *size)
    bad(n.path + "/size", "poset has " + std::to_string(count) + " elements but there are " + std::to_string(*size) +
                              " idempotents");
  std::vector<std::pair<std::size_t, std::size_t>> less;
  const Node rel = n.at("relations");
  for (std::size_t r = 0; r < rel.size(); ++r) {
    const Node pair = rel.at(r);
    if (pair.size() != 2) bad(pair.path, "expected [a, b] meaning a < b");
    less.emplace_back(pair.at(std::size_t{0}).index(count), pair.at(1).index(count));
  }
  try {
    return qhk::WeightPoset::from_relations(count, less);
  } catch (const Error& e) {
    bad(rel.path, e.what());
  }
}

alg::AlgebraPtr quiver_from(const Node& q, Field f, const std::string& name) {
  alg::QuiverPresentation p;
  p.name = name;
  p.field = f;
  p.vertex_count = static_cast<std::size_t>(q.at("vertices").index(static_cast<std::size_t>(-1)));
  const Node arrows = q.at("arrows");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const Node a = arrows.at(i);
    alg::Arrow ar;
    ar.source = a.at("source").index(p.vertex_count);
    ar.target = a.at("target").index(p.vertex_count);
    ar.label = a.at("label").str();
    ar.grade = a.has("grade") ? static_cast<int>(a.at("grade").integer()) : 1;
    p.arrows.push_back(ar);
  }
  if (q.has("relations")) {
    const Node rels = q.at("relations");
    for (std::size_t r = 0; r < rels.size(); ++r) {
      const Node terms = rels.at(r);
      alg::Relation rel;
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const Node term = terms.at(t);
        std::vector<std::string> path;
        const Node labels = term.at("path");
        for (std::size_t k = 0; k < labels.size(); ++k) path.push_back(labels.at(k).str());
        rel.terms.emplace_back(term.has("coef") ? term.at("coef").scalar(f) : Scalar::one(f), path);
      }
      p.relations.push_back(rel);
    }
  }
  if (q.has("truncation")) p.truncation_degree = static_cast<std::size_t>(q.at("truncation").index(1000));
  return alg::from_quiver(p);
}

std::string quote(const std::string& s) { return json(s).dump(); }

std::string scalar_array(const Vector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + quote(v[i].to_string());
  return out + "]";
}

template <class T, class F>
std::string block(const std::vector<T>& rows, F&& line) {
  if (rows.empty()) return "[]";
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) out += "    " + line(rows[i]) + (i + 1 < rows.size() ? ",\n" : "\n");
  return out + "  ]";
}

std::string poset_json(const qhk::WeightPoset& p) {
  std::string out = "{\"size\": " + std::to_string(p.size()) + ", \"relations\": [";
  const auto rel = p.covers();
  for (std::size_t i = 0; i < rel.size(); ++i)
    out += (i ? ", " : "") + std::string("[") + std::to_string(rel[i].first) + ", " + std::to_string(rel[i].second) + "]";
  return out + "]}";
}

}  // namespace

AlgebraFile parse_algebra_spec(std::string_view text) {
  const json doc = parse_json(text);
  const Node root{doc, ""};
  if (!doc.is_object()) bad("", "expected an object");
  const Field f = parse_field(root.at("field"));
  const std::string name = root.has("name") ? root.at("name").str() : "algebra";

  AlgebraFile out;
  if (root.has("quiver")) {
    for (const char* k : {"mult", "unit", "dim"})
      if (root.has(k)) bad(std::string("/") + k, "not allowed next to a quiver block");
    out.algebra = quiver_from(root.at("quiver"), f, name);
  } else {
    alg::AlgebraSpec s;
    s.name = name;
    s.field = f;
    s.dim = root.at("dim").index(static_cast<std::size_t>(-1));
    const Node labels = root.at("labels");
    if (labels.size() != s.dim) bad(labels.path, "expected " + std::to_string(s.dim) + " labels");
    for (std::size_t i = 0; i < s.dim; ++i) s.labels.push_back(labels.at(i).str());
    const Node grades = root.at("grades");
    if (grades.size() != s.dim) bad(grades.path, "expected " + std::to_string(s.dim) + " grades");
    for (std::size_t i = 0; i < s.dim; ++i) s.grades.push_back(static_cast<int>(grades.at(i).integer()));
    const Node mult = root.at("mult");
    for (std::size_t m = 0; m < mult.size(); ++m) {
      const Node e = mult.at(m);
      if (e.size() != 4) bad(e.path, "expected [i, j, k, coefficient]");
      s.mult.push_back({e.at(std::size_t{0}).index(s.dim), e.at(1).index(s.dim), e.at(2).index(s.dim), e.at(3).scalar(f)});
    }
    s.unit = root.at("unit").vector(f, s.dim);
    if (root.has("idempotents")) {
      const Node idem = root.at("idempotents");
      std::vector<Vector> es;
      for (std::size_t i = 0; i < idem.size(); ++i) es.push_back(idem.at(i).vector(f, s.dim));
      s.idempotents = es;
    }
    if (root.has("radical_basis")) {
      const Node rad = root.at("radical_basis");
      std::vector<Vector> rows;
      for (std::size_t i = 0; i < rad.size(); ++i) rows.push_back(rad.at(i).vector(f, s.dim));
      s.radical_basis = rows;
      s.radical_source = alg::RadicalSource::Supplied;
    }
    out.algebra = alg::build_algebra(std::move(s));
  }
  if (root.has("poset")) {
    std::optional<std::size_t> n;
    if (out.algebra->idempotents()) n = out.algebra->idempotents()->size();
    out.poset = poset_from(root.at("poset"), n);
  }
  return out;
}

std::string emit_algebra_spec(const alg::GradedAlgebra& a, const std::optional<qhk::WeightPoset>& poset) {
  const alg::AlgebraSpec& s = a.spec();
  std::vector<alg::MultEntry> mult;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (const auto& [k, c] : a.product(i, j)) mult.push_back({i, j, k, c});
  std::sort(mult.begin(), mult.end(), [](const auto& x, const auto& y) {
    return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
  });

  std::ostringstream os;
  os << "{\n";
  os << "  \"name\": " << quote(s.name) << ",\n";
  os << "  \"field\": " << quote(s.field.to_string()) << ",\n";
  os << "  \"dim\": " << s.dim << ",\n";
  os << "  \"labels\": [";
  for (std::size_t i = 0; i < s.dim; ++i) os << (i ? ", " : "") << quote(s.labels[i]);
  os << "],\n";
  os << "  \"grades\": [";
  for (std::size_t i = 0; i < s.dim; ++i) os << (i ? ", " : "") << s.grades[i];
  os << "],\n";
  os << "  \"unit\": " << scalar_array(s.unit) << ",\n";
  os << "  \"mult\": " << block(mult, [](const alg::MultEntry& e) {
    return "[" + std::to_string(e.i) + ", " + std::to_string(e.j) + ", " + std::to_string(e.k) + ", " +
           quote(e.coef.to_string()) + "]";
  });
  if (s.idempotents) os << ",\n  \"idempotents\": " << block(*s.idempotents, scalar_array);
  if (s.radical_basis) os << ",\n  \"radical_basis\": " << block(*s.radical_basis, scalar_array);
  if (poset) os << ",\n  \"poset\": " << poset_json(*poset);
  os << "\n}\n";
  return os.str();
}

qhk::WeightPoset parse_poset(std::string_view text) {
  const json doc = parse_json(text);
  return poset_from(Node{doc, ""}, std::nullopt);
}

fgr::IntegralOrder parse_order_spec(std::string_view text) {
  const json doc = parse_json(text);
  const Node root{doc, ""};
  if (!doc.is_object()) bad("", "expected an object");
  if (root.at("field").str() != "Z") bad("/field", "expected \"Z\" for an order");
  fgr::IntegralOrder o;
  o.name = root.has("name") ? root.at("name").str() : "order";
  const long long p = root.at("prime").integer();
  if (p < 2 || p > 65521) bad("/prime", "expected a prime below 65536");
  o.prime = static_cast<std::uint32_t>(p);
  o.dim = root.at("dim").index(static_cast<std::size_t>(-1));
  const Node labels = root.at("labels");
  if (labels.size() != o.dim) bad(labels.path, "expected " + std::to_string(o.dim) + " labels");
  for (std::size_t i = 0; i < o.dim; ++i) o.labels.push_back(labels.at(i).str());
  const Node mult = root.at("mult");
  for (std::size_t m = 0; m < mult.size(); ++m) {
    const Node e = mult.at(m);
    if (e.size() != 4) bad(e.path, "expected [i, j, k, coefficient]");
    o.mult.push_back({e.at(std::size_t{0}).index(o.dim), e.at(1).index(o.dim), e.at(2).index(o.dim), e.at(3).big_integer()});
  }
  auto int_vector = [&](const Node& n) {
    if (n.size() != o.dim) bad(n.path, "expected " + std::to_string(o.dim) + " entries");
    la::IntVector v;
    for (std::size_t i = 0; i < o.dim; ++i) v.push_back(n.at(i).big_integer());
    return v;
  };
  o.unit = int_vector(root.at("unit"));
  if (root.has("idempotents")) {
    const Node idem = root.at("idempotents");
    std::vector<la::IntVector> es;
    for (std::size_t i = 0; i < idem.size(); ++i) es.push_back(int_vector(idem.at(i)));
    o.idempotents = es;
  }
  return o;
}

std::string emit_order_spec(const fgr::IntegralOrder& o) {
  auto ints = [](const la::IntVector& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + quote(v[i].get_str());
    return out + "]";
  };
  auto mult = o.mult;
  std::sort(mult.begin(), mult.end(), [](const auto& x, const auto& y) {
    return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
  });
  std::ostringstream os;
  os << "{\n  \"name\": " << quote(o.name) << ",\n  \"field\": \"Z\",\n  \"prime\": " << o.prime
     << ",\n  \"dim\": " << o.dim << ",\n  \"labels\": [";
  for (std::size_t i = 0; i < o.dim; ++i) os << (i ? ", " : "") << quote(o.labels[i]);
  os << "],\n  \"unit\": " << ints(o.unit) << ",\n  \"mult\": " << block(mult, [](const fgr::IntMult& e) {
    return "[" + std::to_string(e.i) + ", " + std::to_string(e.j) + ", " + std::to_string(e.k) + ", " +
           quote(e.coef.get_str()) + "]";
  });
  if (o.idempotents) os << ",\n  \"idempotents\": " << block(*o.idempotents, ints);
  os << "\n}\n";
  return os.str();
}

std::string report_to_json(const qhk::CertReport& r) {
  using ojson = nlohmann::ordered_json;
  ojson j;
  j["property"] = r.property;
  j["verdict"] = qhk::to_string(r.verdict);
  if (r.witness) {
    ojson w = ojson::object();
    if (r.witness->lambda) w["lambda"] = *r.witness->lambda;
    if (r.witness->mu) w["mu"] = *r.witness->mu;
    if (r.witness->degree) w["degree"] = *r.witness->degree;
    if (r.witness->shift) w["shift"] = *r.witness->shift;
    w["detail"] = r.witness->detail;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  ojson ev = ojson::array();
  for (const auto& e : r.evidence) {
    ojson entries = ojson::array();
    for (const auto& [key, dim] : e.entries) entries.push_back(ojson::array({key.first, key.second, dim}));
    ojson item;
    item["family"] = e.family;
    item["source"] = e.source;
    item["target"] = e.target;
    item["entries"] = entries;
    ev.push_back(item);
  }
  j["evidence"] = ev;
  j["notes"] = r.notes;
  return j.dump();
}

}  // namespace gradecert::shell
