#pragma once

// Command implementations behind the ncwit tool: JSON input ingestion,
// deterministic JSON reports, sweep CSV, verification and threshold tables.
// Each command returns a process exit code and writes diagnostics to `err`.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncwit/errors.hpp"
#include "ncwit/geometry.hpp"
#include "ncwit/ontology.hpp"
#include "ncwit/pom.hpp"
#include "ncwit/sweeps.hpp"
#include "ncwit/witnesses.hpp"

namespace ncwit::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kFormatVersion = "1";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitDegenerate = 3,
  kExitInternal = 4,
  kExitPrecondition = 5,
  kExitVerificationFailed = 6,
};

using Json = nlohmann::ordered_json;

/// Round to 12 significant digits through the decimal representation, so the
/// value serializes identically everywhere.
inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero in output
}

inline std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", round12(v));
  return buf;
}

inline std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct InputDocument {
  std::string formatVersion = kFormatVersion;
  std::array<PrepPoint, 4> points{};
  std::optional<NoiseModel> noiseModel;

  Scenario scenario() const { return Scenario(points); }
};

inline std::optional<NoiseModel> parseNoiseModel(const std::string& name) {
  if (name == "box") return NoiseModel::Box;
  if (name == "depolarizing") return NoiseModel::Depolarizing;
  return std::nullopt;
}

namespace detail {

inline double numberAt(const Json& arr, std::size_t i, const std::string& field) {
  if (!arr[i].is_number()) throw ParseError(field + "[" + std::to_string(i) + "]: expected a number");
  return arr[i].get<double>();
}

inline PrepPoint parsePreparation(const Json& v, const std::string& field) {
  if (!v.is_object() || v.size() != 1) {
    throw ParseError(field + ": expected an object with exactly one of coords, probs, counts");
  }
  const auto& [kind, data] = *v.items().begin();
  const std::string where = field + "." + kind;
  if (kind == "coords" || kind == "probs") {
    if (!data.is_array() || data.size() != 2) throw ParseError(where + ": expected an array of 2 numbers");
    const double a = numberAt(data, 0, where), b = numberAt(data, 1, where);
    if (kind == "coords") return {a, b};
    try {
      return coordsFromProbs(a, b);
    } catch (const DomainError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (kind == "counts") {
    if (!data.is_array() || data.size() != 4) throw ParseError(where + ": expected [n0x, n1x, n0y, n1y]");
    std::array<double, 4> n{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!data[i].is_number_integer() || data[i].get<long long>() < 0) {
        throw ParseError(where + "[" + std::to_string(i) + "]: expected a nonnegative integer");
      }
      n[i] = static_cast<double>(data[i].get<long long>());
    }
    if (n[0] + n[1] == 0.0) throw ParseError(where + ": zero total count for measurement X");
    if (n[2] + n[3] == 0.0) throw ParseError(where + ": zero total count for measurement Y");
    return coordsFromProbs(n[0] / (n[0] + n[1]), n[2] / (n[2] + n[3]));
  }
  throw ParseError(field + ": unknown key '" + kind + "' (expected coords, probs or counts)");
}

}  // namespace detail

/// Parse an input document. Throws ParseError naming the offending field.
inline InputDocument parseInput(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top level: expected an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "format_version" && key != "preparations" && key != "noise_model") {
      throw ParseError("top level: unknown field '" + key + "'");
    }
  }
  InputDocument in;
  if (!doc.contains("format_version") || !doc["format_version"].is_string()) {
    throw ParseError("format_version: missing or not a string");
  }
  in.formatVersion = doc["format_version"].get<std::string>();
  if (in.formatVersion != kFormatVersion) {
    throw ParseError("format_version: unsupported version '" + in.formatVersion + "'");
  }
  if (!doc.contains("preparations") || !doc["preparations"].is_object()) {
    throw ParseError("preparations: missing or not an object");
  }
  const Json& preps = doc["preparations"];
  for (const auto& [key, _] : preps.items()) {
    if (key != "00" && key != "01" && key != "10" && key != "11") {
      throw ParseError("preparations: unknown label '" + key + "'");
    }
  }
  for (Label l : kLabels) {
    const std::string name = labelName(l);
    if (!preps.contains(name)) throw ParseError("preparations: missing label '" + name + "'");
    in.points[index(l)] = detail::parsePreparation(preps[name], "preparations." + name);
  }
  if (doc.contains("noise_model")) {
    const Json& m = doc["noise_model"];
    if (!m.is_string() || !parseNoiseModel(m.get<std::string>())) {
      throw ParseError("noise_model: expected \"box\" or \"depolarizing\"");
    }
    in.noiseModel = parseNoiseModel(m.get<std::string>());
  }
  return in;
}

namespace detail {

inline Json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

inline Json point(PrepPoint p) { return Json::array({num(p.x), num(p.y)}); }

}  // namespace detail

/// Serialize the full witness report. Fixed field order, 12 significant digits.
inline std::string witnessReport(const InputDocument& in, const std::string& inputBytes) {
  using detail::num;
  using detail::point;
  const Scenario sc = in.scenario();
  const DecompositionWeights w = decompositionWeights(sc);
  const WitnessReport rep = fullReport(sc);
  const PomOutcome pom = pomAnalysis(sc);

  Json doc;
  doc["format_version"] = kFormatVersion;
  Json prov;
  prov["tool"] = "ncwit";
  prov["tool_version"] = kToolVersion;
  prov["input_fnv1a64"] = fnv1a64(inputBytes);
  prov["geometry_tolerance"] = kGeomTol;
  prov["lp_feasibility_tolerance"] = kLpFeasTol;
  prov["verdict_tolerance"] = kVerdictTol;
  doc["provenance"] = prov;
  doc["noise_model"] = in.noiseModel ? Json(noiseModelName(*in.noiseModel)) : Json(nullptr);

  Json preps;
  for (Label l : kLabels) preps[labelName(l)] = point(sc[l]);
  doc["preparations"] = preps;

  Json dec;
  dec["c"] = point(w.c);
  dec["p"] = num(w.p);
  dec["q"] = num(w.q);
  dec["r_plus"] = num(w.rPlus);
  dec["r_minus"] = num(w.rMinus);
  dec["r"] = num(w.r);
  dec["p_plus_prime"] = point(w.pPlusPrime);
  dec["p_minus_prime"] = point(w.pMinusPrime);
  doc["decomposition"] = dec;

  Json wit;
  wit["delta"] = num(rep.delta);
  wit["pusey_s"] = num(rep.s);
  wit["pusey_s_orbit_max"] = num(rep.sOrbitMax);
  wit["beta_min"] = num(rep.betaMin);  // null when unbounded
  wit["gamma"] = num(rep.gamma);
  wit["alpha1"] = rep.alpha ? num(rep.alpha->alpha1) : Json(nullptr);
  wit["alpha2"] = rep.alpha ? num(rep.alpha->alpha2) : Json(nullptr);
  wit["alpha3"] = rep.alpha ? num(rep.alpha->alpha3) : Json(nullptr);
  wit["epsilon"] = num(rep.epsilon);
  wit["s_o"] = num(rep.sO);
  wit["min_parity_tv"] = num(rep.minParityTv);
  wit["d_min"] = num(rep.dMin);
  wit["min_pair_tv"] = num(rep.minPairTv);
  wit["pnc_feasible"] = rep.pncFeasible;
  doc["witnesses"] = wit;

  Json ver;
  ver["pusey_violated"] = rep.verdicts.puseyViolated;
  ver["marvian_witness"] = rep.verdicts.marvianWitness;
  ver["parity_preservation_violated"] = rep.verdicts.parityPreservationViolated;
  ver["gamma_exceeds_alpha_ratio"] = rep.verdicts.gammaExceedsAlphaRatio;
  ver["gap_exceeds_alpha3"] = rep.verdicts.gapExceedsAlpha3;
  doc["verdicts"] = ver;

  Json pj;
  pj["success_probability"] = num(pom.successProbability);
  pj["epsilon"] = num(pom.epsilon);
  pj["classical_bound"] = num(pom.classicalBound);
  pj["exceeds_classical"] = pom.exceedsClassical;
  pj["parity_gap"] = num(pom.parityGap);
  pj["consistent"] = pom.consistent;
  doc["pom"] = pj;

  return doc.dump(2) + "\n";
}

/// Write through a sibling temporary file and rename, so a failed run never
/// leaves a partial file. Empty path or "-" writes to `out`.
inline void writeOutput(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

inline std::string readFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot read input file '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline int cmdWitness(const std::string& inputPath, const std::string& outputPath, std::ostream& out,
                      std::ostream& err) {
  try {
    const std::string text = readFile(inputPath);
    const InputDocument in = parseInput(text);
    writeOutput(outputPath, witnessReport(in, text), out);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitParse;
  } catch (const DegenerateScenario& e) {
    err << "degenerate scenario: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

inline std::string sweepCsv(const std::vector<SweepRow>& rows, NoiseModel model) {
  const bool dep = model == NoiseModel::Depolarizing;
  std::string csv = "delta,pusey_bound,marvian_bound,alpha_ratio_bound,alpha3_bound";
  if (dep) csv += ",depolarizing_pusey_bound,depolarizing_alpha_ratio_bound";
  csv += ",pusey_violated,marvian_violated,parity_violated\n";
  auto cell = [](const std::optional<double>& v) { return v ? fmt12(*v) : std::string(); };
  for (const SweepRow& r : rows) {
    csv += fmt12(r.delta) + "," + cell(r.puseyBound) + "," + cell(r.marvianBound) + "," + cell(r.alphaRatioBound) +
           "," + cell(r.alpha3Bound);
    if (dep) csv += "," + cell(r.depolarizingPuseyBound) + "," + cell(r.depolarizingAlphaRatioBound);
    csv += std::string(",") + (r.puseyViolated ? "1" : "0") + "," + (r.marvianViolated ? "1" : "0") + "," +
           (r.parityViolated ? "1" : "0") + "\n";
  }
  return csv;
}

inline int cmdSweep(double deltaMax, int steps, NoiseModel model, const std::string& outputPath, std::ostream& out,
                    std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    rows = sweepCurves(deltaMax, steps, model);
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    writeOutput(outputPath, sweepCsv(rows, model), out);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

inline std::string verificationText(const VerificationReport& rep, bool region) {
  std::ostringstream os;
  os << (region ? "verify-region" : "verify") << " model=" << noiseModelName(rep.ensemble.model)
     << " delta=" << fmt12(rep.ensemble.delta) << " samples=" << rep.ensemble.samples << " seed=" << rep.ensemble.seed
     << " scenarios=" << rep.scenarios << "\n";
  for (const CheckTally& c : rep.checks) {
    std::string name = c.name;
    std::replace(name.begin(), name.end(), '_', ' ');
    const char* tag = c.monitorOnly ? "MONITOR" : (c.ok() ? "PASS" : "FAIL");
    os << tag << " " << name << ": " << c.passed << "/" << c.total;
    if (!region) os << " worst_margin=" << fmt12(c.worstMargin);
    os << "\n";
  }
  os << "result: " << (rep.allPassed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

inline int cmdVerify(const NoiseEnsemble& ensemble, bool region, const std::string& outputPath, std::ostream& out,
                     std::ostream& err) {
  try {
    const VerificationReport rep = region ? verifyTheoremRegions(ensemble) : verifyLemmas(ensemble);
    writeOutput(outputPath, verificationText(rep, region), out);
    return rep.allPassed() ? kExitOk : kExitVerificationFailed;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

struct ThresholdRow {
  std::string name;
  double computed = 0.0;
  double published = 0.0;
  double tolerance = 0.0;

  bool matches() const { return std::abs(computed - published) <= tolerance; }
};

/// Computed roots next to the rounded values quoted in the literature.
inline std::vector<ThresholdRow> thresholdTable() {
  return {
      {"pusey", thresholdRoot(ThresholdKind::Pusey), 0.06, 0.005},
      {"marvian", thresholdRoot(ThresholdKind::Marvian), 0.1, 0.005},
      {"combined", thresholdRoot(ThresholdKind::Combined), 0.007, 0.001},
      {"depolarizing_pusey", thresholdRoot(ThresholdKind::DepolarizingPusey), 0.07, 0.005},
      {"depolarizing_combined", thresholdRoot(ThresholdKind::DepolarizingCombined), 0.02, 0.003},
  };
}

inline int cmdThresholds(std::ostream& out) {
  out << "threshold,computed,published,tolerance,match\n";
  for (const ThresholdRow& r : thresholdTable()) {
    out << r.name << "," << fmt12(r.computed) << "," << fmt12(r.published) << "," << fmt12(r.tolerance) << ","
        << (r.matches() ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

}  // namespace ncwit::cli
