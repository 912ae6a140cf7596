#include "paracontact/manifest.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "paracontact/metric.hpp"

namespace paracontact {

namespace {

using json = nlohmann::ordered_json;

std::string point_text(std::span<const double> p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + format_number(p[i]);
  return s + ")";
}

void fail(const std::string& field, const std::string& what) {
  throw ValidationError("field '" + field + "': " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + key, "missing");
  return *it;
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

int get_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<int>();
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::vector<std::string> get_names(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_string(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<ScalarExpr> get_exprs(const json& v, const std::string& field,
                                  const std::vector<std::string>& coords) {
  if (!v.is_array()) fail(field, "expected an array of expression strings");
  std::vector<ScalarExpr> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const std::string src = get_string(v[i], f);
    try {
      out.push_back(parse_expr(src, coords));
    } catch (const UnknownIdentifierError& e) {
      fail(f, "undeclared coordinate '" + e.token() + "' in \"" + src + "\"");
    } catch (const ParseError& e) {
      fail(f, "expression error at offset " + std::to_string(e.position()) + " in \"" + src +
                  "\": " + e.detail());
    }
  }
  return out;
}

std::vector<Interval> get_domain(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of [lo, hi] pairs");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != 2) fail(f, "expected [lo, hi]");
    out.push_back({get_number(v[i][0], f), get_number(v[i][1], f)});
  }
  return out;
}

std::optional<int> get_optional_int(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return get_int(*it, key);
}

ManifoldModel model_from_json(const json& doc) {
  ManifoldModel m;
  m.name = get_string(member(doc, "name", ""), "name");
  if (doc.contains("description")) m.description = get_string(doc["description"], "description");
  m.dim = get_int(member(doc, "dim", ""), "dim");
  m.coords = get_names(member(doc, "coords", ""), "coords");
  m.epsilon = get_int(member(doc, "epsilon", ""), "epsilon");
  m.index = get_optional_int(doc, "index");
  m.metric = get_exprs(member(doc, "metric", ""), "metric", m.coords);
  for (const char* key : {"phi", "xi", "eta"}) {
    if (!doc.contains(key)) continue;
    auto& dst = key[0] == 'p' ? m.phi : key[0] == 'x' ? m.xi : m.eta;
    dst = get_exprs(doc[key], key, m.coords);
  }
  m.domain = get_domain(member(doc, "domain", ""), "domain");
  return m;
}

HypersurfaceBundle bundle_from_json(const json& doc) {
  HypersurfaceBundle b;
  b.name = get_string(member(doc, "name", ""), "name");
  if (doc.contains("description")) b.description = get_string(doc["description"], "description");
  b.index = get_optional_int(doc, "index");
  b.epsilon = get_optional_int(doc, "epsilon");
  const json& amb = member(doc, "ambient", "");
  if (!amb.is_object()) fail("ambient", "expected an object");
  b.ambient.name = b.name + " ambient";
  b.ambient.coords = get_names(member(amb, "coords", "ambient."), "ambient.coords");
  b.ambient.dim = static_cast<int>(b.ambient.coords.size());
  b.ambient.metric = get_exprs(member(amb, "metric", "ambient."), "ambient.metric",
                               b.ambient.coords);
  b.ambient.J = get_exprs(member(amb, "J", "ambient."), "ambient.J", b.ambient.coords);
  if (amb.contains("k") && !amb["k"].is_null()) b.ambient.k = get_number(amb["k"], "ambient.k");
  const json& emb = member(doc, "embedding", "");
  if (!emb.is_object()) fail("embedding", "expected an object");
  b.embedding.coords = get_names(member(emb, "coords", "embedding."), "embedding.coords");
  b.embedding.map = get_exprs(member(emb, "map", "embedding."), "embedding.map",
                              b.embedding.coords);
  if (emb.contains("orientation")) {
    b.embedding.orientation = get_int(emb["orientation"], "embedding.orientation");
  }
  b.embedding.domain = get_domain(member(emb, "domain", "embedding."), "embedding.domain");
  if (doc.contains("dim") &&
      get_int(doc["dim"], "dim") != static_cast<int>(b.embedding.coords.size())) {
    fail("dim", "does not match the number of embedding coordinates");
  }
  return b;
}

json exprs_to_json(const std::vector<ScalarExpr>& v, const std::vector<std::string>& coords) {
  json out = json::array();
  for (const auto& e : v) out.push_back(e.to_string(coords));
  return out;
}

json domain_to_json(const std::vector<Interval>& d) {
  json out = json::array();
  for (const auto& iv : d) out.push_back(json::array({iv.lo, iv.hi}));
  return out;
}

void check_metric(const TensorValue& g, std::optional<int> index, std::span<const double> p) {
  try {
    MetricAtPoint::from(g, index);
  } catch (const SignatureError& e) {
    throw IndexMismatchError("declared index " + std::to_string(*index) +
                             " does not match the metric at " + point_text(p) + ": " + e.what());
  } catch (const DegenerateMetricError& e) {
    throw ValidationError("metric is degenerate at " + point_text(p) + ": " + e.what());
  }
}

bool same_exprs(const std::vector<ScalarExpr>& a, const std::vector<ScalarExpr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

bool same_domain(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].lo != b[i].lo || a[i].hi != b[i].hi) return false;
  }
  return true;
}

}  // namespace

ManifestParseError::ManifestParseError(std::string source, std::size_t line, std::size_t column,
                                       const std::string& detail)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": parse error: " + detail),
      line_(line),
      column_(column) {}

void validate_model(const ModelSource& model) {
  if (const auto* m = std::get_if<ManifoldModel>(&model)) {
    const ExpressionStructure s(*m);
    for (const auto& p : sample_points(s, kManifestValidationPoints, 42)) {
      StructureJets j;
      try {
        j = s.evaluate(p, 0);
      } catch (const DomainError& e) {
        throw ValidationError("expressions are singular at " + point_text(p) + ": " + e.what());
      }
      check_metric(values(j.g), m->index, p);
    }
    return;
  }
  const auto& b = std::get<HypersurfaceBundle>(model);
  b.validate_shape();
  const InducedStructure s(b);
  const int n = s.dim();
  for (const auto& p : sample_points(s, kManifestValidationPoints, 42)) {
    const InducedFrame fr = s.frame(p, 0);
    TensorValue g(n, {0, 2}, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int a = 0; a <= n; ++a) {
          for (int c = 0; c <= n; ++c) {
            v += fr.ambient_g(a, c).value() * fr.tangent[i][a].value() * fr.tangent[j][c].value();
          }
        }
        g(i, j) = v;
      }
    }
    check_metric(g, b.index, p);
  }
}

ModelSource parse_manifest(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Locate the byte offset the parser stopped at.
    const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string detail = e.what();
    if (const auto pos = detail.find("syntax error"); pos != std::string::npos) {
      detail = detail.substr(pos);
    }
    throw ManifestParseError(source, line, column, detail);
  }
  if (!doc.is_object()) throw ManifestParseError(source, 1, 1, "top level must be an object");
  ModelSource model = doc.contains("ambient") || doc.contains("embedding")
                          ? ModelSource(bundle_from_json(doc))
                          : ModelSource(model_from_json(doc));
  if (const auto* m = std::get_if<ManifoldModel>(&model)) m->validate_shape();
  validate_model(model);
  return model;
}

ModelSource load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.string());
}

std::string save_manifest(const ModelSource& model) {
  json doc;
  if (const auto* m = std::get_if<ManifoldModel>(&model)) {
    doc["name"] = m->name;
    if (!m->description.empty()) doc["description"] = m->description;
    doc["dim"] = m->dim;
    doc["coords"] = m->coords;
    doc["epsilon"] = m->epsilon;
    if (m->index) doc["index"] = *m->index;
    doc["metric"] = exprs_to_json(m->metric, m->coords);
    if (m->has_structure()) {
      doc["phi"] = exprs_to_json(m->phi, m->coords);
      doc["xi"] = exprs_to_json(m->xi, m->coords);
      doc["eta"] = exprs_to_json(m->eta, m->coords);
    }
    doc["domain"] = domain_to_json(m->domain);
  } else {
    const auto& b = std::get<HypersurfaceBundle>(model);
    doc["name"] = b.name;
    if (!b.description.empty()) doc["description"] = b.description;
    doc["dim"] = b.embedding.coords.size();
    if (b.epsilon) doc["epsilon"] = *b.epsilon;
    if (b.index) doc["index"] = *b.index;
    json amb;
    amb["coords"] = b.ambient.coords;
    amb["metric"] = exprs_to_json(b.ambient.metric, b.ambient.coords);
    amb["J"] = exprs_to_json(b.ambient.J, b.ambient.coords);
    if (b.ambient.k) amb["k"] = *b.ambient.k;
    doc["ambient"] = amb;
    json emb;
    emb["coords"] = b.embedding.coords;
    emb["map"] = exprs_to_json(b.embedding.map, b.embedding.coords);
    emb["orientation"] = b.embedding.orientation;
    emb["domain"] = domain_to_json(b.embedding.domain);
    doc["embedding"] = emb;
  }
  return doc.dump(2) + "\n";
}

bool same_model(const ModelSource& a, const ModelSource& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<ManifoldModel>(&a)) {
    const auto& y = std::get<ManifoldModel>(b);
    return x->name == y.name && x->dim == y.dim && x->coords == y.coords &&
           x->epsilon == y.epsilon && x->index == y.index && same_exprs(x->metric, y.metric) &&
           same_exprs(x->phi, y.phi) && same_exprs(x->xi, y.xi) && same_exprs(x->eta, y.eta) &&
           same_domain(x->domain, y.domain);
  }
  const auto& x = std::get<HypersurfaceBundle>(a);
  const auto& y = std::get<HypersurfaceBundle>(b);
  return x.name == y.name && x.index == y.index && x.epsilon == y.epsilon &&
         x.ambient.coords == y.ambient.coords && same_exprs(x.ambient.metric, y.ambient.metric) &&
         same_exprs(x.ambient.J, y.ambient.J) && x.ambient.k == y.ambient.k &&
         x.embedding.coords == y.embedding.coords &&
         same_exprs(x.embedding.map, y.embedding.map) &&
         x.embedding.orientation == y.embedding.orientation &&
         same_domain(x.embedding.domain, y.embedding.domain);
}

}  // namespace paracontact
