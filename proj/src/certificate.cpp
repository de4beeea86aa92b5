#include "hjm/certificate.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hjm {

using json = nlohmann::ordered_json;

namespace {

const std::pair<CertKind, const char*> kKinds[] = {
    {CertKind::kLineFree, "line-free"}, {CertKind::kMoser, "moser"},
    {CertKind::kCapSet, "cap-set"},     {CertKind::kFujimura, "fujimura"},
    {CertKind::kMoserB, "moser-b"},
};

std::string join(const std::vector<std::string>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s + "}";
}

std::string join_stats(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string simplex_str(const SimplexSet& b) {
  std::vector<std::string> v;
  for (const auto& p : b) v.push_back(p.str());
  return join(v);
}

}  // namespace

std::string cert_kind_name(CertKind k) {
  for (const auto& [kind, name] : kKinds)
    if (kind == k) return name;
  return "?";
}

CertKind parse_cert_kind(const std::string& name) {
  for (const auto& [kind, n] : kKinds)
    if (name == n) return kind;
  throw Error(ErrorCode::kMalformedInput, "unknown certificate kind '" + name + "'");
}

PointSet Certificate::set() const {
  if (is_simplex()) return gamma_union(simplex_points, n, k);
  return PointSet::from_strings(Shape(n, k), points);
}

Certificate make_certificate(const PointSet& a, CertKind kind, Provenance prov) {
  Certificate c;
  c.n = a.n();
  c.k = a.k();
  c.kind = kind;
  require(!c.is_simplex(), ErrorCode::kInvalidArgument,
          "use make_simplex_certificate for simplex kinds");
  c.points = a.strings();
  c.size = static_cast<std::int64_t>(a.size());
  if (a.k() == 3) c.statistics = statistics(a).a;
  c.provenance = std::move(prov);
  return c;
}

Certificate make_simplex_certificate(const SimplexSet& b, int n, CertKind kind,
                                     Provenance prov) {
  Certificate c;
  c.n = n;
  c.k = 3;
  c.kind = kind;
  require(c.is_simplex(), ErrorCode::kInvalidArgument, "not a simplex kind");
  c.simplex_points = b;
  std::sort(c.simplex_points.begin(), c.simplex_points.end());
  c.weight = simplex_weight(b);
  c.provenance = std::move(prov);
  return c;
}

std::string to_json(const Certificate& c) {
  json j;
  j["version"] = 1;
  j["n"] = c.n;
  j["k"] = c.k;
  j["kind"] = cert_kind_name(c.kind);
  if (c.is_simplex()) {
    json pts = json::array();
    for (const auto& p : c.simplex_points) pts.push_back(p.coords());
    j["simplex_points"] = pts;
  } else {
    j["points"] = c.points;
  }
  json claim = json::object();
  if (c.size) claim["size"] = *c.size;
  if (c.statistics) claim["statistics"] = *c.statistics;
  if (c.weight) claim["weight"] = c.weight->get_str();
  j["claim"] = claim;
  json prov = json::object();
  prov["generator"] = c.provenance.generator;
  if (c.provenance.seed) prov["seed"] = *c.provenance.seed;
  prov["version"] = c.provenance.version;
  j["provenance"] = prov;
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  Certificate c;
  try {
    json j = json::parse(text);
    require(j.value("version", 0) == 1, ErrorCode::kMalformedInput,
            "unsupported certificate version");
    c.n = j.at("n").get<int>();
    c.k = j.at("k").get<int>();
    c.kind = parse_cert_kind(j.at("kind").get<std::string>());
    if (c.is_simplex()) {
      for (const auto& p : j.at("simplex_points"))
        c.simplex_points.emplace_back(p.get<std::vector<int>>());
    } else {
      c.points = j.at("points").get<std::vector<std::string>>();
    }
    const json& claim = j.at("claim");
    if (claim.contains("size")) c.size = claim["size"].get<std::int64_t>();
    if (claim.contains("statistics"))
      c.statistics = claim["statistics"].get<std::vector<std::int64_t>>();
    if (claim.contains("weight")) c.weight = mpz_class(claim["weight"].get<std::string>());
    if (j.contains("provenance")) {
      const json& p = j["provenance"];
      c.provenance.generator = p.value("generator", "");
      if (p.contains("seed")) c.provenance.seed = p["seed"].get<std::uint64_t>();
      c.provenance.version = p.value("version", "");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("certificate: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::kMalformedInput, "certificate: bad weight");
  }
  require(c.n >= 0 && c.k >= 1 && c.k <= 9, ErrorCode::kMalformedInput,
          "certificate: bad n or k");
  return c;
}

Certificate read_certificate(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kMalformedInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return certificate_from_json(ss.str());
}

void write_certificate(const std::string& path, const Certificate& c) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::kInvalidArgument, "cannot write " + path);
  out << to_json(c);
}

std::string CertReport::str() const {
  std::ostringstream os;
  os << (pass ? "PASS" : "FAIL") << '\n';
  for (const auto& f : fields) {
    os << "  " << f.field << ": " << (f.ok ? "ok" : "MISMATCH");
    if (!f.ok) os << " (claimed " << f.claimed << ", actual " << f.actual << ")";
    os << '\n';
  }
  if (!violation.empty()) os << "  violation: " << violation << '\n';
  return os.str();
}

CertReport verify_certificate(const Certificate& c) {
  CertReport r;
  auto field = [&](std::string name, bool ok, std::string claimed, std::string actual) {
    r.fields.push_back({std::move(name), ok, std::move(claimed), std::move(actual)});
    r.pass = r.pass && ok;
  };

  if (c.is_simplex()) {
    require(c.k == 3, ErrorCode::kMalformedInput, "simplex certificates need k = 3");
    std::set<SimplexPoint> seen;
    for (const auto& p : c.simplex_points) {
      require(p.k() == 3 && p.n() == c.n, ErrorCode::kMalformedInput,
              "simplex point " + p.str() + " not in the simplex");
      require(seen.insert(p).second, ErrorCode::kMalformedInput,
              "duplicate simplex point " + p.str());
    }
    std::optional<SimplexSet> bad = c.kind == CertKind::kFujimura
                                        ? find_simplex(c.simplex_points)
                                        : find_isosceles(c.simplex_points);
    const char* pname = c.kind == CertKind::kFujimura ? "triangle-free" : "isosceles-free";
    field(pname, !bad, "true", bad ? "false" : "true");
    if (bad) r.violation = (c.kind == CertKind::kFujimura ? "triangle " : "isosceles ") +
                           simplex_str(*bad);
    mpz_class w = simplex_weight(c.simplex_points);
    if (c.weight) field("weight", *c.weight == w, c.weight->get_str(), w.get_str());
    return r;
  }

  Shape sh(c.n, c.k);
  std::set<std::string> seen;
  for (const auto& p : c.points) {
    parse_word_index(sh, p);
    require(seen.insert(p).second, ErrorCode::kMalformedInput, "duplicate point " + p);
  }
  PointSet a = c.set();
  std::string bad;
  switch (c.kind) {
    case CertKind::kLineFree:
      if (auto l = find_line(a, LineKind::kCombinatorial)) {
        std::vector<std::string> w;
        for (Index i : *l) w.push_back(word_string(sh, i));
        bad = "combinatorial line " + join(w);
      }
      break;
    case CertKind::kMoser:
      if (auto l = find_line(a, LineKind::kGeometric)) {
        std::vector<std::string> w;
        for (Index i : *l) w.push_back(word_string(sh, i));
        bad = "geometric line " + join(w);
      }
      break;
    case CertKind::kCapSet:
      require(c.k == 3, ErrorCode::kMalformedInput, "cap sets need k = 3");
      if (auto l = find_cap_line(a)) {
        std::vector<std::string> w;
        for (Index i : *l) w.push_back(word_string(sh, i));
        bad = "affine line " + join(w);
      }
      break;
    default:
      break;
  }
  field(cert_kind_name(c.kind), bad.empty(), "true", bad.empty() ? "true" : "false");
  r.violation = bad;
  if (c.size)
    field("size", *c.size == static_cast<std::int64_t>(a.size()), std::to_string(*c.size),
          std::to_string(a.size()));
  if (c.statistics) {
    require(c.k == 3, ErrorCode::kMalformedInput, "statistics need k = 3");
    auto st = statistics(a).a;
    field("statistics", *c.statistics == st, join_stats(*c.statistics), join_stats(st));
  }
  return r;
}

}  // namespace hjm
