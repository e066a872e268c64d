// radial-cli: special-function tables, Riesz kernel samples, threshold scans
// and Hodge projector checks.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "radial/errors.hpp"
#include "radial/hodge.hpp"
#include "radial/operators.hpp"
#include "radial/report.hpp"
#include "radial/riesz.hpp"
#include "radial/scan.hpp"
#include "radial/specfun.hpp"

namespace {

using namespace radial;
using nlohmann::json;

constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kInvalid = 2;

struct Config {
  std::string family;
  double d = 3.0;
  std::optional<double> c;
  std::optional<double> a;
  std::vector<double> p;
  std::vector<double> R;
  int perDecade = 256;
  std::string out = "-";
  std::string format = "csv";
  unsigned seed = 1;
  double cnorm = 2.0;
  std::string manifest = RADIAL_DEFAULT_MANIFEST;
  std::vector<double> delta;
  double hodgeR = 1e3;
  int samples = 24;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw ParameterError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Status lines go to stderr when the table itself goes to stdout.
std::ostream& status(const Config& cfg) { return cfg.out == "-" ? std::cerr : std::cout; }

OperatorSpec makeSpec(const Config& cfg, const std::string& family) {
  const Family f = parseFamily(family);
  double param = 0.0;
  if (f == Family::HalfLineNeumannISQ || f == Family::BrokenLineISQ) {
    if (cfg.a) throw ParameterError("--a-strength applies to BrokenLineDelta only");
    if (!cfg.c) throw ParameterError(family + " needs --c");
    param = *cfg.c;
  } else if (f == Family::BrokenLineDelta) {
    if (cfg.c) throw ParameterError("--c applies to the inverse-square families only");
    if (!cfg.a) throw ParameterError(family + " needs --a-strength");
    param = *cfg.a;
  } else if (cfg.c || cfg.a) {
    throw ParameterError(family + " takes neither --c nor --a-strength");
  }
  return OperatorSpec(f, Dimension(cfg.d), param);
}

std::vector<double> logSpaced(double lo, double hi, int n) {
  std::vector<double> r(n);
  for (int j = 0; j < n; ++j) r[j] = lo * std::pow(hi / lo, static_cast<double>(j) / (n - 1));
  return r;
}

void emit(const Config& cfg, const report::Table& t, const json& extra = json::object()) {
  Output out(cfg.out);
  report::write(out.stream(), report::parseFormat(cfg.format), t, extra);
}

// Envelope fits go next to the main table for CSV, inline for JSON.
void emitWithEnvelopes(const Config& cfg, const report::Table& main, const report::Table& env) {
  if (report::parseFormat(cfg.format) == report::Format::Json) {
    std::ostringstream envJson;
    report::writeJson(envJson, env);
    emit(cfg, main, json{{"envelopes", json::parse(envJson.str())}});
    return;
  }
  emit(cfg, main);
  if (cfg.out == "-") {
    std::cout << '\n';
    report::writeCsv(std::cout, env);
  } else {
    const auto dot = cfg.out.rfind('.');
    const std::string stem = dot == std::string::npos ? cfg.out : cfg.out.substr(0, dot);
    Output side(stem + "_envelopes.csv");
    report::writeCsv(side.stream(), env);
  }
}

int countFailures(const std::vector<specfun::EnvelopeFit>& fits, std::ostream& log) {
  int bad = 0;
  for (const auto& f : fits) {
    if (!f.pass()) {
      ++bad;
      log << "envelope mismatch: " << f.quantity << " (" << f.regime << ") fitted " << f.fitted
          << ", predicted " << f.predicted << '\n';
    }
  }
  return bad;
}

int cmdSpecfunTable(const Config& cfg) {
  const Dimension d(cfg.d);
  auto radii = logSpaced(1e-3, 50.0, 41);
  radii.push_back(1.0);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  const auto fits = specfun::envelopeTable(d);
  emitWithEnvelopes(cfg, report::specfunTable(d, radii), report::envelopeTable("specfun", fits));
  const int bad = countFailures(fits, status(cfg));
  status(cfg) << "specfun d=" << cfg.d << ": " << fits.size() - bad << "/" << fits.size()
              << " envelope exponents within tolerance\n";
  return bad == 0 ? kPass : kMismatch;
}

int cmdRieszKernel(const Config& cfg) {
  if (cfg.family.empty()) throw ParameterError("riesz-kernel needs --family");
  const auto op = makeSpec(cfg, cfg.family);
  QuadratureScheme scheme;
  scheme.cNorm = cfg.cnorm;
  const auto refined = scheme.refined();

  std::mt19937_64 rng(cfg.seed);
  const double r0 = op.innerRadius();
  std::uniform_real_distribution<double> logU(std::log(r0 + 0.5), std::log(1e4));
  std::bernoulli_distribution flip(0.5);
  std::vector<report::KernelSample> samples;
  while (static_cast<int>(samples.size()) < cfg.samples) {
    const double x = std::exp(logU(rng));
    double y = std::exp(logU(rng));
    if (op.twoSided() && flip(rng)) y = -y;
    if (std::abs(x - y) < 1e-3 * (x + std::abs(y))) continue;
    report::KernelSample s{x, y, riesz::decisiveKernel(op, x, y, scheme), 0.0};
    const double v = riesz::decisiveKernel(op, x, y, refined).value;
    s.refinementDelta = std::abs(v - s.eval.value) / std::max(std::abs(v), 1e-300);
    samples.push_back(s);
  }
  const auto fits = riesz::kernelEnvelopeFits(op, scheme);
  emitWithEnvelopes(cfg, report::kernelTable(samples), report::envelopeTable(op.name(), fits));
  const int bad = countFailures(fits, status(cfg));
  status(cfg) << op.name() << ": " << fits.size() - bad << "/" << fits.size()
              << " envelope exponents within tolerance\n";
  return bad == 0 ? kPass : kMismatch;
}

struct ScanJob {
  OperatorSpec op;
  std::vector<double> p;
  const report::ScanExpectation* expectation;
};

int cmdThresholdScan(const Config& cfg) {
  const auto manifest = report::Manifest::load(cfg.manifest);
  std::vector<ScanJob> jobs;
  if (cfg.family.empty()) {
    if (!cfg.p.empty()) throw ParameterError("--p needs --family");
    for (const auto& e : manifest.scans()) {
      const Family f = parseFamily(e.family);
      const OperatorSpec op(f, Dimension(e.d), e.param);
      jobs.push_back({op, e.pList(), &e});
    }
  } else {
    const auto op = makeSpec(cfg, cfg.family);
    const auto* e = manifest.findScan(op);
    std::vector<double> p = cfg.p;
    if (p.empty()) {
      if (!e) throw ParameterError("no manifest entry for " + op.name() + "; pass --p");
      p = e->pList();
    }
    jobs.push_back({op, p, e});
  }

  int mismatches = 0;
  report::Table table;
  for (const auto& job : jobs) {
    ScanSettings s;
    s.perDecade = cfg.perDecade;
    s.cNorm = cfg.cnorm;
    s.projected = job.op.family() == Family::BrokenLineDelta &&
                  ops::deltaZeroMode(job.op.dimension(), job.op.a());
    const auto R = cfg.R.empty() ? defaultRadii(job.op) : cfg.R;
    const auto reports = thresholdScan(job.op, job.p, R, s);
    const auto t = report::scanTable(reports, job.expectation);
    if (table.columns.empty()) table.columns = t.columns;
    for (const auto& row : t.rows) table.rows.push_back(row);
    for (const auto& r : reports) {
      const auto exp = job.expectation ? job.expectation->expected(r.p) : std::nullopt;
      const bool ok = r.verdict != Verdict::Inconclusive && (!exp || *exp == r.verdict);
      if (!ok) ++mismatches;
      status(cfg) << job.op.name() << " p=" << r.p << ": " << verdictName(r.verdict);
      if (exp) status(cfg) << " (expected " << verdictName(*exp) << ")";
      status(cfg) << (ok ? "" : "  MISMATCH") << '\n';
    }
  }
  emit(cfg, table);
  return mismatches == 0 ? kPass : kMismatch;
}

int cmdHodgeCheck(const Config& cfg) {
  const auto manifest = report::Manifest::load(cfg.manifest);
  std::vector<double> deltas = cfg.delta;
  if (deltas.empty()) {
    for (const auto& e : manifest.hodge()) deltas.push_back(e.delta);
  }
  const auto grid = hodge::LineGrid::symmetric(cfg.hodgeR);
  int failures = 0;
  std::vector<report::HodgeRow> rows;
  for (double delta : deltas) {
    const auto a = hodge::CoefficientFunction::powerWeight(delta);
    const auto* e = manifest.findHodge(delta);
    std::vector<double> ps = cfg.p;
    if (ps.empty() && e) {
      ps = e->bounded;
      ps.insert(ps.end(), e->divergent.begin(), e->divergent.end());
      std::sort(ps.begin(), ps.end());
    }
    if (ps.empty()) ps = {2.0};
    const auto mass = hodge::massA(a);
    const auto check = hodge::verifyProjector(a, grid, cfg.seed);
    const bool checksOk = check.idempotence <= 1e-8 && check.oracleDiff <= 1e-3;
    if (!checksOk) {
      ++failures;
      status(cfg) << a.name() << ": idempotence " << check.idempotence << ", oracle "
                  << check.oracleDiff << "  FAIL\n";
    }
    for (double p : ps) {
      if (!(p > 1.0)) throw ParameterError("Hodge exponents must exceed 1");
      report::HodgeRow r{a.name(), delta, p, mass, hodge::hodgeLpBounded(a, p),
                         e ? e->expected(p) : std::nullopt, check.idempotence, check.oracleDiff};
      if (r.expected && *r.expected != r.verdict) {
        ++failures;
        status(cfg) << a.name() << " p=" << p << ": " << verdictName(r.verdict) << " (expected "
                    << verdictName(*r.expected) << ")  MISMATCH\n";
      }
      rows.push_back(r);
    }
  }
  emit(cfg, report::hodgeTable(rows));
  status(cfg) << "hodge: " << rows.size() << " rows, " << failures << " failures\n";
  return failures == 0 ? kPass : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riesz transforms of radial operators: tables, kernels, threshold scans"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output file ('-' for stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--d", cfg.d, "Dimension d > 1");
  };
  auto operatorFlags = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "Operator family");
    sub->add_option("--c", cfg.c, "Inverse-square coefficient");
    sub->add_option("--a-strength", cfg.a, "Junction delta strength");
    sub->add_option("--cnorm", cfg.cnorm, "Riesz prefactor normalization")
        ->check(CLI::IsMember({1.0, 2.0}));
    sub->add_option("--seed", cfg.seed, "Random seed");
  };

  auto* spec = app.add_subcommand("specfun-table", "k, l, k', l' and the ratios A-D");
  common(spec);

  auto* kern = app.add_subcommand("riesz-kernel", "Kernel samples and envelope exponents");
  common(kern);
  operatorFlags(kern);
  kern->add_option("--samples", cfg.samples, "Number of random (x, y) pairs")
      ->check(CLI::Range(1, 100000));

  auto* scan = app.add_subcommand("threshold-scan", "Norm growth in R and L^p verdicts");
  common(scan);
  operatorFlags(scan);
  scan->add_option("--p", cfg.p, "Exponents (comma separated)")->delimiter(',');
  scan->add_option("--R", cfg.R, "Truncation radii (comma separated)")->delimiter(',');
  scan->add_option("--grid-per-decade", cfg.perDecade, "Grid nodes per decade")
      ->check(CLI::Range(16, 4096));
  scan->add_option("--manifest", cfg.manifest, "Expected-verdict manifest");

  auto* hod = app.add_subcommand("hodge-check", "Hodge projectors of (1+|x|)^{2 delta}");
  common(hod);
  hod->add_option("--delta", cfg.delta, "Weight exponents (comma separated)")->delimiter(',');
  hod->add_option("--p", cfg.p, "Exponents (comma separated)")->delimiter(',');
  hod->add_option("--R", cfg.hodgeR, "Grid half-width")->check(CLI::PositiveNumber);
  hod->add_option("--seed", cfg.seed, "Random seed");
  hod->add_option("--manifest", cfg.manifest, "Expected-verdict manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kInvalid;
  }

  try {
    if (*spec) return cmdSpecfunTable(cfg);
    if (*kern) return cmdRieszKernel(cfg);
    if (*scan) return cmdThresholdScan(cfg);
    if (*hod) return cmdHodgeCheck(cfg);
  } catch (const ParameterError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalid;
  } catch (const DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalid;
  } catch (const PoleError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalid;
  } catch (const PropertyViolation& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kMismatch;
  }
  return kInvalid;
}
