#include "radial/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "radial/errors.hpp"

namespace radial::report {

using nlohmann::json;

void Table::add(std::vector<json> row) {
  if (row.size() != columns.size()) {
    throw ParameterError("table row has " + std::to_string(row.size()) + " cells, expected " +
                         std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

Format parseFormat(std::string_view s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ParameterError("unknown format '" + std::string(s) + "'");
}

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csvCell(const json& c) {
  if (c.is_null()) return "";
  if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
  if (c.is_number_integer()) return std::to_string(c.get<long long>());
  if (c.is_number()) return number(c.get<double>());
  std::string s = c.is_string() ? c.get<std::string>() : c.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

// JSON has no inf/nan; those become strings.
json jsonCell(const json& c) {
  if (c.is_number_float() && !std::isfinite(c.get<double>())) return number(c.get<double>());
  return c;
}

json verdictCell(std::optional<Verdict> v) {
  return v ? json(std::string(verdictName(*v))) : json("");
}

json passCell(Verdict got, std::optional<Verdict> expected) {
  return expected ? json(got == *expected) : json(nullptr);
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b)); }

std::optional<Verdict> lookup(const std::vector<double>& bounded,
                              const std::vector<double>& divergent, double p) {
  for (double q : bounded) {
    if (near(p, q)) return Verdict::Bounded;
  }
  for (double q : divergent) {
    if (near(p, q)) return Verdict::Divergent;
  }
  return std::nullopt;
}

}  // namespace

void writeCsv(std::ostream& os, const Table& t) {
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    os << (j ? "," : "") << t.columns[j];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csvCell(row[j]);
    os << '\n';
  }
}

void writeJson(std::ostream& os, const Table& t, const json& extra) {
  json out = extra.is_object() ? extra : json::object();
  out["columns"] = t.columns;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t j = 0; j < row.size(); ++j) r[t.columns[j]] = jsonCell(row[j]);
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  os << out.dump(2) << '\n';
}

void write(std::ostream& os, Format f, const Table& t, const json& extra) {
  if (f == Format::Csv) {
    writeCsv(os, t);
  } else {
    writeJson(os, t, extra);
  }
}

std::vector<double> ScanExpectation::pList() const {
  std::vector<double> p = bounded;
  p.insert(p.end(), divergent.begin(), divergent.end());
  std::sort(p.begin(), p.end());
  return p;
}

std::optional<Verdict> ScanExpectation::expected(double p) const {
  return lookup(bounded, divergent, p);
}

std::optional<Verdict> HodgeExpectation::expected(double p) const {
  return lookup(bounded, divergent, p);
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open manifest " + path);
  try {
    return parse(json::parse(in));
  } catch (const json::exception& e) {
    throw ParameterError("malformed manifest " + path + ": " + e.what());
  }
}

Manifest Manifest::parse(const json& j) {
  Manifest m;
  try {
    for (const auto& s : j.value("scans", json::array())) {
      ScanExpectation e;
      e.family = s.at("family").get<std::string>();
      parseFamily(e.family);
      e.d = s.at("d").get<double>();
      e.param = s.value("param", 0.0);
      e.projected = s.value("projected", false);
      e.bounded = s.value("bounded", std::vector<double>{});
      e.divergent = s.value("divergent", std::vector<double>{});
      e.condition = s.value("condition", std::string{});
      m.scans_.push_back(std::move(e));
    }
    for (const auto& h : j.value("hodge", json::array())) {
      HodgeExpectation e;
      e.delta = h.at("delta").get<double>();
      e.bounded = h.value("bounded", std::vector<double>{});
      e.divergent = h.value("divergent", std::vector<double>{});
      e.condition = h.value("condition", std::string{});
      m.hodge_.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

const ScanExpectation* Manifest::findScan(const OperatorSpec& op) const {
  const std::string name(familyName(op.family()));
  const bool usesParam = op.hasPotential() || op.family() == Family::BrokenLineDelta;
  const double param = op.family() == Family::BrokenLineDelta ? op.a() : op.c();
  for (const auto& e : scans_) {
    if (e.family == name && near(op.d(), e.d) && (!usesParam || near(param, e.param))) return &e;
  }
  return nullptr;
}

const HodgeExpectation* Manifest::findHodge(double delta) const {
  for (const auto& e : hodge_) {
    if (std::abs(e.delta - delta) < 1e-6) return &e;
  }
  return nullptr;
}

Table scanTable(const std::vector<ScanReport>& reports, const ScanExpectation* expectation) {
  Table t{{"family", "d", "param", "p", "R", "estimate", "method", "slope", "elasticity",
           "verdict", "expected", "pass"},
          {}};
  for (const auto& r : reports) {
    const auto exp = expectation ? expectation->expected(r.p) : std::nullopt;
    for (const auto& pt : r.points) {
      t.add({r.family, r.d, r.param, r.p, pt.R, pt.estimate, pt.method, r.slope, r.elasticity,
             std::string(verdictName(r.verdict)), verdictCell(exp), passCell(r.verdict, exp)});
    }
  }
  return t;
}

Table specfunTable(Dimension d, const std::vector<double>& radii) {
  Table t{{"d", "r", "k", "l", "k'", "l'", "A", "B", "C", "D"}, {}};
  for (double r : radii) {
    const auto v = specfun::littleKL(d, r);
    const auto q = specfun::ratios(d, r);
    t.add({d.value(), r, v.k.value(), v.l.value(), v.kprime.value(), v.lprime.value(),
           q.A.value(), q.B.value(), q.C.value(), q.D.value()});
  }
  return t;
}

Table envelopeTable(const std::string& source, const std::vector<specfun::EnvelopeFit>& fits) {
  Table t{{"source", "quantity", "regime", "predicted", "fitted", "tolerance", "pass"}, {}};
  for (const auto& f : fits) {
    t.add({source, f.quantity, f.regime, f.predicted, f.fitted, f.tolerance, f.pass()});
  }
  return t;
}

Table kernelTable(const std::vector<KernelSample>& samples) {
  Table t{{"x", "y", "kernel", "error", "refinement_delta", "branch"}, {}};
  for (const auto& s : samples) {
    t.add({s.x, s.y, s.eval.value, s.eval.error, s.refinementDelta,
           std::string(branchName(s.eval.branch))});
  }
  return t;
}

Table hodgeTable(const std::vector<HodgeRow>& rows) {
  Table t{{"a", "delta", "p", "A", "verdict", "expected", "pass", "idempotence", "oracle_diff"},
          {}};
  for (const auto& r : rows) {
    t.add({r.name, r.delta, r.p, r.mass.A, std::string(verdictName(r.verdict)),
           verdictCell(r.expected), passCell(r.verdict, r.expected), r.idempotence,
           r.oracleDiff});
  }
  return t;
}

}  // namespace radial::report
