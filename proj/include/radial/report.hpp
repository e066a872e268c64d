#pragma once

// Tabular output (CSV and JSON) and the expected-verdict manifest.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "radial/hodge.hpp"
#include "radial/riesz.hpp"
#include "radial/scan.hpp"
#include "radial/specfun.hpp"

namespace radial::report {

/// Header plus rows of JSON scalars (string, number, bool, null).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;

  void add(std::vector<nlohmann::json> row);
};

enum class Format { Csv, Json };
/// Throws ParameterError for anything but "csv" or "json".
Format parseFormat(std::string_view s);

/// Numbers use %.12g; strings containing commas or quotes are quoted.
void writeCsv(std::ostream& os, const Table& t);
/// {"columns": [...], "rows": [{column: value, ...}, ...]} plus `extra` keys.
void writeJson(std::ostream& os, const Table& t, const nlohmann::json& extra = nlohmann::json::object());
void write(std::ostream& os, Format f, const Table& t,
           const nlohmann::json& extra = nlohmann::json::object());

struct ScanExpectation {
  std::string family;
  double d = 0.0;
  double param = 0.0;
  bool projected = false;
  std::vector<double> bounded;
  std::vector<double> divergent;
  std::string condition;

  std::vector<double> pList() const;
  std::optional<Verdict> expected(double p) const;
};

struct HodgeExpectation {
  double delta = 0.0;
  std::vector<double> bounded;
  std::vector<double> divergent;
  std::string condition;
  std::optional<Verdict> expected(double p) const;
};

class Manifest {
 public:
  /// Throws ParameterError when the file is missing or malformed.
  static Manifest load(const std::string& path);
  static Manifest parse(const nlohmann::json& j);

  const std::vector<ScanExpectation>& scans() const noexcept { return scans_; }
  const std::vector<HodgeExpectation>& hodge() const noexcept { return hodge_; }
  const ScanExpectation* findScan(const OperatorSpec& op) const;
  const HodgeExpectation* findHodge(double delta) const;

 private:
  std::vector<ScanExpectation> scans_;
  std::vector<HodgeExpectation> hodge_;
};

/// One row per (report, R): family,d,param,p,R,estimate,method,slope,
/// elasticity,verdict,expected,pass. `expected` is empty and `pass` null
/// without a manifest entry.
Table scanTable(const std::vector<ScanReport>& reports, const ScanExpectation* expectation);

/// Rows (d, r, k, l, k', l', A, B, C, D) with unscaled values.
Table specfunTable(Dimension d, const std::vector<double>& radii);

/// source,quantity,regime,predicted,fitted,tolerance,pass
Table envelopeTable(const std::string& source, const std::vector<specfun::EnvelopeFit>& fits);

struct KernelSample {
  double x = 0.0;
  double y = 0.0;
  KernelEval eval;
  double refinementDelta = 0.0;  // |K - K_refined| / |K|
};
/// x,y,kernel,error,refinement_delta,branch
Table kernelTable(const std::vector<KernelSample>& samples);

struct HodgeRow {
  std::string name;
  double delta = 0.0;
  double p = 0.0;
  hodge::MassA mass;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Verdict> expected;
  double idempotence = 0.0;
  double oracleDiff = 0.0;
};
/// a,delta,p,A,verdict,expected,pass,idempotence,oracle_diff
Table hodgeTable(const std::vector<HodgeRow>& rows);

}  // namespace radial::report
