// rht -- command-line front end for the rational homotopy engine.
//
// Subcommands:
//   elliptic check <file>        positive ellipticity of a presentation or a
//                                pure-split model
//   halperin check <file>        vanishing of the negative-degree derivations
//                                of a regular quotient
//   fibration validate|pure|tncz|normalize-odd-sphere|trivialize|
//             filter-normalize <file>
//                                verdicts and normal forms for KS-extensions
//   invariants <file>            cup length, Toomer value, and the pinned
//                                invariants where a formality certificate
//                                exists
//   report <manifest>            run a fixture corpus end to end, check the
//                                declared expectations, and evaluate the
//                                fibration inequalities
//   oracle <file>                brute-force cross-checks of the engine's
//                                cohomology and quotient dimensions
//
// Exit codes: 0 = verdict positive / computation delivered; 1 = verdict
// negative (a failed validation, a violated inequality, a missed
// expectation, or an inconclusive answer under --strict); 2 = error (parse
// failure, unmet precondition, internal consistency violation, or an oracle
// mismatch, which is never a verdict).
//
// Every subcommand renders human-readable text by default; --format json
// switches stdout to a machine-readable report with the same content, and
// --json-out <path> writes that JSON alongside the text output.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rht/derivation.hpp"
#include "rht/document.hpp"
#include "rht/invariants.hpp"
#include "rht/normalization.hpp"
#include "support/oracles.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace rht;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kError = 2;

// Windows the dense oracle is willing to reduce (sum of slice dimensions).
constexpr int kOracleWindowLimit = 1024;

struct CommonOpts {
  std::string file;
  int cap = 0;
  bool capSet = false;
  std::string format = "text";
  std::string jsonOut;
  bool strict = false;
  bool oracle = false;

  bool text() const { return format == "text"; }
  std::optional<int> capOpt() const {
    return capSet ? std::optional<int>(cap) : std::nullopt;
  }
};

void attachCommon(CLI::App* cmd, CommonOpts& opts, bool fileIsManifest = false) {
  cmd->add_option("file", opts.file,
                  fileIsManifest ? "fixture-set manifest" : "model document")
      ->required();
  cmd->add_option("--cap", opts.cap, "override the verification window cap")
      ->check(CLI::PositiveNumber)
      ->each([&opts](const std::string&) { opts.capSet = true; });
  cmd->add_option("--format", opts.format, "output format (default text)")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--json-out", opts.jsonOut,
                  "also write the JSON report to this path");
}

void emit(const Json& payload, const CommonOpts& opts) {
  if (!opts.text()) std::cout << payload.dump(2) << "\n";
  if (!opts.jsonOut.empty()) {
    std::ofstream out(opts.jsonOut);
    if (!out) throw Error("cannot write JSON report to " + opts.jsonOut);
    out << payload.dump(2) << "\n";
  }
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot read file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ModelDocument loadDocument(const std::string& path) {
  return parseDocument(readFile(path));
}

int maxGeneratorDegree(const Cdga& c) {
  int top = 0;
  for (const Generator& g : c.algebra->generators()) top = std::max(top, g.degree);
  return top;
}

// Upper estimate for the top cohomological degree of a formal quotient: the
// generators themselves, and relation degrees shifted down by one summed over
// the ideal (exact for even regular quotients, an overestimate otherwise).
int formalTopHeuristic(const Cdga& formal) {
  int top = maxGeneratorDegree(formal);
  int fromRelations = 0;
  for (const Element& r : formal.relations) fromRelations += r.topDegree() - 1;
  return std::max(top, fromRelations);
}

int formalCapHeuristic(const Cdga& formal) {
  return formalTopHeuristic(formal) + 2;
}

// ---------------------------------------------------------------- JSON ----

Json termsJson(const Element& e) {
  Json out = Json::array();
  for (const DocTerm& term : docTermsFromElement(e)) {
    Json t = Json::object();
    t["coeff"] = term.coeff.str();
    Json mono = Json::object();
    for (const auto& [name, exp] : term.monomial) mono[name] = exp;
    t["monomial"] = std::move(mono);
    out.push_back(std::move(t));
  }
  return out;
}

Json invariantsJson(const InvariantReport& r) {
  Json out = Json::object();
  out["cup0"] = r.cup0;
  out["e0"] = r.e0;
  out["nil0"] = r.nil0 ? Json(*r.nil0) : Json(nullptr);
  out["cat0"] = r.cat0 ? Json(*r.cat0) : Json(nullptr);
  out["cl0Upper"] = r.cl0Upper ? Json(*r.cl0Upper) : Json(nullptr);
  Json prov = Json::array();
  for (const ProvenanceEntry& p : r.provenance) {
    Json entry = Json::object();
    entry["invariant"] = p.invariant;
    entry["value"] = p.value;
    entry["rule"] = p.rule;
    prov.push_back(std::move(entry));
  }
  out["provenance"] = std::move(prov);
  return out;
}

Json verdictJson(const InequalityVerdict& v) {
  Json out = Json::object();
  out["rule"] = v.rule;
  out["applicable"] = v.applicable;
  if (v.applicable) out["holds"] = v.holds;
  out["detail"] = v.detail;
  return out;
}

Json extensionJson(const KSExtension& ext, const std::string& name) {
  return Json::parse(serializeDocument(documentFromExtension(ext, name)));
}

Json basisChangeJson(const KSExtension& ext, const BasisChange& change) {
  Json out = Json::object();
  for (const auto& [id, eta] : change.substitutions)
    out[ext.total.algebra->gen(id).name] = termsJson(eta);
  return out;
}

// ---------------------------------------------------------------- text ----

std::string opt(const std::optional<int>& v) {
  return v ? std::to_string(*v) : "-";
}

void printInvariants(const InvariantReport& r, int cap) {
  std::cout << "invariants (window cap " << cap << ")\n";
  std::cout << "  cup0      " << r.cup0 << "\n";
  std::cout << "  e0        " << r.e0 << "\n";
  std::cout << "  nil0      " << opt(r.nil0) << "\n";
  std::cout << "  cat0      " << opt(r.cat0) << "\n";
  std::cout << "  cl0 <=    " << opt(r.cl0Upper) << "\n";
  std::cout << "provenance:\n";
  for (const ProvenanceEntry& p : r.provenance)
    std::cout << "  " << p.invariant << " = " << p.value << ": " << p.rule
              << "\n";
}

void printVerdicts(const std::vector<InequalityVerdict>& verdicts) {
  std::cout << "fibration rules:\n";
  for (const InequalityVerdict& v : verdicts) {
    const char* mark = !v.applicable ? "  n/a " : (v.holds ? "  ok  " : "  FAIL");
    std::cout << mark << "  " << v.rule << ": " << v.detail << "\n";
  }
}

// ------------------------------------------------------- shared pipeline --

// Everything the tool can establish about one extension. Fields stay unset
// when their hypotheses fail; `notes` records why.
struct FibrationAnalysis {
  ExtensionReport validity;
  bool pure = false;
  std::optional<TNCZReport> tncz;
  bool baseFormal = false;
  bool baseOddWedge = false;
  std::optional<PureModel> fiber;  // set iff positively elliptic
  std::string fiberRefusal;
  std::optional<int> certifiedCap;
  std::optional<InvariantReport> total, base, fiberReport;
  std::optional<int> coneBoundCap;
  std::vector<InequalityVerdict> inequalities;
  std::vector<std::string> notes;
};

FibrationAnalysis analyzeFibration(const KSExtension& ext,
                                   std::optional<int> cap) {
  FibrationAnalysis a;
  a.validity = validate(ext);
  if (!a.validity.ok) return a;

  a.pure = checkPure(ext);
  a.baseFormal = ext.base.differential.isZero();
  a.baseOddWedge = isOddWedgeBase(ext.base);
  try {
    a.fiber = certifyPositivelyEllipticFiber(ext);
  } catch (const PreconditionError& e) {
    a.fiberRefusal = e.what();
  }
  try {
    a.tncz = checkTNCZ(ext);
  } catch (const PreconditionError& e) {
    a.notes.push_back(std::string("TNCZ check unavailable: ") + e.what());
  }

  if (a.fiber) {
    const FormalityCertificate fc = formalityCertificateOfPure(*a.fiber);
    a.fiberReport =
        invariantReport(a.fiber->asCdga(), fc.verifiedCap, &fc);
  }
  if (a.baseFormal)
    a.base = invariantReportOfFormal(ext.base, formalCapHeuristic(ext.base));

  if (a.baseFormal && a.fiber && a.tncz && a.tncz->tncz) {
    const int capT = cap.value_or(formalTopHeuristic(ext.base) +
                                  a.fiber->formalDimension + 2);
    const NormalizedExtension fn = filteredNormalize(ext);
    const FormalityCertificate cert =
        formalityCertificateOfTotal(fn.extension, capT);
    a.certifiedCap = cert.verifiedCap;
    a.total = invariantReportOfCertified(fn.extension.total, capT, cert);
    if (a.baseOddWedge) {
      const AcyclicIdealQuotient bound =
          cl0UpperViaAcyclicQuotient(fn.extension);
      attachConeLengthBound(*a.total, bound);
      a.coneBoundCap = bound.verifiedCap;
    }
  } else if (ext.total.relations.empty()) {
    const int capT = cap.value_or(maxGeneratorDegree(ext.total) + 2);
    try {
      a.total = invariantReport(ext.total, capT);
      a.notes.push_back(
          "no formality pinning: the filtered-normal-form pipeline needs a "
          "formal base, a positively elliptic pure fiber, and TNCZ");
    } catch (const PreconditionError& e) {
      a.notes.push_back(std::string("no invariant report: ") + e.what());
    }
  } else {
    a.notes.push_back(
        "no invariant report: the total carries relations and the formality "
        "pipeline's hypotheses fail");
  }

  if (a.total && a.base && a.fiberReport) {
    const FibrationContext ctx{a.tncz && a.tncz->tncz, a.baseFormal,
                               a.baseOddWedge, a.fiber.has_value()};
    try {
      a.inequalities =
          checkFibrationInequalities(*a.total, *a.base, *a.fiberReport, ctx);
    } catch (const PreconditionError& e) {
      a.notes.push_back(std::string("rule evaluation unavailable: ") +
                        e.what());
    }
  }
  return a;
}

Json fibrationJson(const FibrationAnalysis& a) {
  Json out = Json::object();
  out["valid"] = a.validity.ok;
  if (!a.validity.ok) {
    out["failure"] = a.validity.failure;
    return out;
  }
  out["pure"] = a.pure;
  if (a.tncz) {
    Json t = Json::object();
    t["tncz"] = a.tncz->tncz;
    t["verifiedCap"] = a.tncz->verifiedCap;
    if (!a.tncz->tncz) {
      t["failingDegree"] = a.tncz->failingDegree;
      if (a.tncz->missingFiberClass)
        t["missingFiberClass"] = termsJson(*a.tncz->missingFiberClass);
    }
    out["tncz"] = std::move(t);
  }
  out["baseFormal"] = a.baseFormal;
  out["baseOddWedge"] = a.baseOddWedge;
  out["fiberPositivelyElliptic"] = a.fiber.has_value();
  if (!a.fiberRefusal.empty()) out["fiberRefusal"] = a.fiberRefusal;
  if (a.certifiedCap) out["formalityVerifiedCap"] = *a.certifiedCap;
  if (a.total) out["total"] = invariantsJson(*a.total);
  if (a.base) out["base"] = invariantsJson(*a.base);
  if (a.fiberReport) out["fiber"] = invariantsJson(*a.fiberReport);
  if (!a.inequalities.empty()) {
    Json rules = Json::array();
    for (const InequalityVerdict& v : a.inequalities)
      rules.push_back(verdictJson(v));
    out["rules"] = std::move(rules);
  }
  if (!a.notes.empty()) out["notes"] = a.notes;
  return out;
}

// ------------------------------------------------------------- oracles ----

// Coefficients of prod_j (1 - t^{|Rj|}) / prod_i (1 - t^{|xi|}) through cap,
// computed by series multiplication only -- independent of the engine's
// linear algebra.
std::vector<long long> candidateSeries(const Presentation& p, int cap) {
  std::vector<long long> coeffs(static_cast<std::size_t>(cap) + 1, 0);
  coeffs[0] = 1;
  for (const Generator& g : p.algebra()->generators())
    for (int i = g.degree; i <= cap; ++i)
      coeffs[static_cast<std::size_t>(i)] +=
          coeffs[static_cast<std::size_t>(i - g.degree)];
  for (int j = 0; j < p.relationCount(); ++j) {
    const int r = p.relationDegree(j);
    for (int i = cap; i >= r; --i)
      coeffs[static_cast<std::size_t>(i)] -=
          coeffs[static_cast<std::size_t>(i - r)];
  }
  return coeffs;
}

struct OracleOutcome {
  bool supported = false;
  bool match = false;
  int cap = 0;
  std::string note;
  std::vector<std::string> mismatches;
};

void compareVectors(OracleOutcome& o, const std::string& what,
                    const std::vector<long long>& expected,
                    const std::vector<int>& actual) {
  for (std::size_t k = 0; k < expected.size() && k < actual.size(); ++k)
    if (expected[k] != actual[k])
      o.mismatches.push_back(what + " disagree in degree " +
                             std::to_string(k) + ": " +
                             std::to_string(expected[k]) + " vs " +
                             std::to_string(actual[k]));
}

OracleOutcome denseOracle(const Cdga& model, std::optional<int> cap,
                          const std::string& label) {
  OracleOutcome o;
  o.cap = cap.value_or(maxGeneratorDegree(model) + 2);
  if (!model.relations.empty()) {
    o.note = label + " carries relations; the dense oracle is relation-free";
    return o;
  }
  const int size = testsupport::windowDimension(model, o.cap);
  if (size > kOracleWindowLimit) {
    o.note = label + " window holds " + std::to_string(size) +
             " monomials; lower --cap below the oracle limit " +
             std::to_string(kOracleWindowLimit);
    return o;
  }
  const DSquaredReport d2 = checkDSquared(model.differential, o.cap);
  if (!d2.ok) {
    o.note = label + ": d^2 != 0 on generator " +
             model.algebra->gen(d2.generator).name +
             "; cohomology is undefined";
    return o;
  }
  o.supported = true;
  const std::vector<int> dense = testsupport::denseBetti(model, o.cap);
  const Window w(model, o.cap);
  std::vector<long long> expected;
  for (int k = 0; k <= o.cap; ++k)
    expected.push_back(static_cast<long long>(dense[static_cast<std::size_t>(k)]));
  std::vector<int> actual;
  for (int k = 0; k <= o.cap; ++k) actual.push_back(w.betti(k));
  compareVectors(o, label + " betti numbers (dense vs window)", expected,
                 actual);
  o.match = o.mismatches.empty();
  return o;
}

OracleOutcome runOracle(const ModelDocument& doc, std::optional<int> cap) {
  switch (doc.kind) {
    case DocumentKind::Algebra: {
      OracleOutcome o;
      o.note = "an algebra document computes nothing to cross-check";
      return o;
    }
    case DocumentKind::Presentation: {
      const Presentation p = toPresentation(doc);
      OracleOutcome o;
      if (!p.homogeneous()) {
        o.note = "series oracle needs homogeneous relations";
        return o;
      }
      const RegularityCertificate cert = regularityCertificate(p, cap);
      if (cert.status != RegularityStatus::Regular) {
        o.note = "no oracle for non-regular presentations";
        return o;
      }
      const PureModel pm = pureModelFromPresentation(p);
      o.cap = cap.value_or(pm.formalDimension);
      const int size = testsupport::windowDimension(pm.asCdga(), o.cap);
      if (size > kOracleWindowLimit) {
        o.note = "model window holds " + std::to_string(size) +
                 " monomials; lower --cap below the oracle limit " +
                 std::to_string(kOracleWindowLimit);
        return o;
      }
      o.supported = true;
      // Two independent pairs: candidate series vs quotient slices, and
      // dense betti vs window betti of the pure model.
      const GradedBasis qb = quotientBasis(p, o.cap);
      compareVectors(o, "quotient dimensions (series vs ideal slices)",
                     candidateSeries(p, o.cap), qb.dims);
      const std::vector<int> dense = testsupport::denseBetti(pm.asCdga(), o.cap);
      const Window w(pm.asCdga(), o.cap);
      std::vector<long long> expected;
      std::vector<int> actual;
      for (int k = 0; k <= o.cap; ++k) {
        expected.push_back(
            static_cast<long long>(dense[static_cast<std::size_t>(k)]));
        actual.push_back(w.betti(k));
      }
      compareVectors(o, "model betti numbers (dense vs window)", expected,
                     actual);
      o.match = o.mismatches.empty();
      return o;
    }
    case DocumentKind::Cdga:
      return denseOracle(toCdga(doc), cap, "model");
    case DocumentKind::KSExtensionDoc: {
      const KSExtension ext = toKSExtension(doc);
      if (ext.total.relations.empty())
        return denseOracle(ext.total, cap, "total");
      return denseOracle(ext.fiberModel(), cap, "fiber model");
    }
  }
  throw Error("runOracle: unhandled kind");
}

Json oracleJson(const OracleOutcome& o) {
  Json out = Json::object();
  out["supported"] = o.supported;
  out["cap"] = o.cap;
  if (o.supported) out["match"] = o.match;
  if (!o.note.empty()) out["note"] = o.note;
  if (!o.mismatches.empty()) out["mismatches"] = o.mismatches;
  return out;
}

// --------------------------------------------------------- subcommands ----

int runEllipticCheck(const CommonOpts& opts) {
  const ModelDocument doc = loadDocument(opts.file);
  Json payload = Json::object();
  payload["op"] = "elliptic check";
  payload["input"] = opts.file;
  int code = kPass;

  if (doc.kind == DocumentKind::Presentation) {
    const Presentation p = toPresentation(doc);
    const RegularityCertificate cert = regularityCertificate(p, opts.capOpt());
    payload["route"] = "presentation";
    payload["homogeneous"] = cert.homogeneous;
    payload["cap"] = cert.cap;
    switch (cert.status) {
      case RegularityStatus::Regular: {
        payload["status"] = "regular";
        payload["formalDimension"] = cert.formalDimension;
        payload["totalDimension"] = cert.totalDimension;
        if (cert.certifiedUpToCap) payload["certifiedUpToCap"] = true;
        if (opts.text()) {
          std::cout << "positively elliptic: yes\n";
          std::cout << "  the relations form a regular sequence"
                    << (cert.certifiedUpToCap ? " (certified up to the cap)"
                                              : "")
                    << "\n";
          std::cout << "  formal dimension " << cert.formalDimension
                    << ", total quotient dimension " << cert.totalDimension
                    << "\n";
        }
        code = kPass;
        break;
      }
      case RegularityStatus::NotRegular: {
        payload["status"] = "not-regular";
        payload["witnessDegree"] = cert.witnessDegree;
        if (opts.text()) {
          std::cout << "positively elliptic: no\n";
          std::cout << "  quotient dimension deviates from the candidate "
                       "series first in degree "
                    << cert.witnessDegree << "\n";
        }
        code = kFail;
        break;
      }
      case RegularityStatus::Inconclusive: {
        payload["status"] = "inconclusive";
        if (opts.text())
          std::cout << "positively elliptic: inconclusive within cap "
                    << cert.cap << " (non-homogeneous relations)\n";
        code = opts.strict ? kFail : kPass;
        break;
      }
    }
  } else if (doc.kind == DocumentKind::Cdga &&
             doc.grading == GradingMode::PureSplit) {
    const Cdga model = toCdga(doc);
    const PureModel pm = makePureModel(model.algebra, model.differential);
    payload["route"] = "pure-model";
    try {
      const EulerReport euler =
          eulerReport(pm, opts.capOpt().value_or(std::max(pm.formalDimension, 0)));
      payload["euler"] = euler.euler;
      payload["chiPi"] = euler.chiPi;
      payload["formalDimension"] = euler.formalDimension;
      payload["positivelyElliptic"] = euler.positivelyElliptic;
      if (opts.text()) {
        std::cout << "positively elliptic: "
                  << (euler.positivelyElliptic ? "yes" : "no") << "\n";
        std::cout << "  Euler characteristic " << euler.euler
                  << ", generator balance chi_pi = " << euler.chiPi
                  << ", formal dimension " << euler.formalDimension << "\n";
        if (!euler.positivelyElliptic)
          std::cout << "  elliptic with Euler characteristic 0: odd-degree "
                       "cohomology survives\n";
      }
      code = euler.positivelyElliptic ? kPass : (opts.strict ? kFail : kPass);
      if (!euler.positivelyElliptic)
        payload["note"] = "elliptic with Euler characteristic 0";
    } catch (const PreconditionError& e) {
      payload["positivelyElliptic"] = false;
      payload["reason"] = e.what();
      if (opts.text())
        std::cout << "positively elliptic: no\n  " << e.what() << "\n";
      code = kFail;
    }
  } else {
    throw PreconditionError(
        "elliptic check: needs a presentation or a pure-split cdga document; "
        "this file is kind '" +
        kindName(doc.kind) + "'");
  }

  payload["outcome"] = code == kPass ? "pass" : "fail";
  emit(payload, opts);
  return code;
}

int runHalperinCheck(const CommonOpts& opts, std::optional<int> shift,
                     bool waiveRegularity) {
  const ModelDocument doc = loadDocument(opts.file);
  const Presentation p = toPresentation(doc);
  Json payload = Json::object();
  payload["op"] = "halperin check";
  payload["input"] = opts.file;
  int code = kPass;

  if (shift) {
    DerivationOptions options;
    options.waiveRegularity = waiveRegularity;
    const DerivationSpace space = derivationSpace(p, *shift, options);
    payload["shift"] = *shift;
    payload["dimension"] = space.dimension();
    Json basis = Json::array();
    for (const auto& derivation : space.basis) {
      Json images = Json::object();
      for (const auto& [id, image] : derivation)
        images[p.algebra()->gen(id).name] = termsJson(image);
      basis.push_back(std::move(images));
    }
    payload["basis"] = std::move(basis);
    if (opts.text()) {
      std::cout << "derivations of degree " << *shift << ": dimension "
                << space.dimension() << "\n";
      for (const auto& derivation : space.basis) {
        std::cout << "  basis derivation:";
        for (const auto& [id, image] : derivation)
          std::cout << "  " << p.algebra()->gen(id).name << " -> "
                    << image.str() << ";";
        std::cout << "\n";
      }
    }
    code = space.empty() ? kPass : kFail;
  } else {
    const HalperinVerdict verdict = meierVerdict(p);
    payload["holds"] = verdict.holds;
    payload["scannedShifts"] = verdict.scannedShifts;
    payload["oddShiftNote"] = verdict.oddShiftNote;
    Json dims = Json::object();
    for (std::size_t i = 0; i < verdict.evidence.size(); ++i)
      dims[std::to_string(verdict.scannedShifts[i])] =
          verdict.evidence[i].dimension();
    payload["dimensions"] = std::move(dims);
    if (opts.text()) {
      std::cout << "Der^{<0} of the quotient = 0: "
                << (verdict.holds ? "yes" : "no") << "\n";
      std::cout << "  scanned shifts:";
      for (const int s : verdict.scannedShifts) std::cout << " " << s;
      std::cout << "\n  " << verdict.oddShiftNote << "\n";
      if (!verdict.holds)
        for (std::size_t i = 0; i < verdict.evidence.size(); ++i)
          if (!verdict.evidence[i].empty()) {
            std::cout << "  nonzero space at shift "
                      << verdict.scannedShifts[i] << " (dimension "
                      << verdict.evidence[i].dimension() << ")";
            const auto& witness = verdict.evidence[i].basis.front();
            for (const auto& [id, image] : witness)
              std::cout << "  " << p.algebra()->gen(id).name << " -> "
                        << image.str() << ";";
            std::cout << "\n";
          }
    }
    code = verdict.holds ? kPass : kFail;
  }

  payload["outcome"] = code == kPass ? "pass" : "fail";
  emit(payload, opts);
  return code;
}

int runFibration(const std::string& op, const CommonOpts& opts) {
  const ModelDocument doc = loadDocument(opts.file);
  const KSExtension ext = toKSExtension(doc);
  Json payload = Json::object();
  payload["op"] = "fibration " + op;
  payload["input"] = opts.file;
  int code = kPass;

  if (op == "validate") {
    const ExtensionReport report = validate(ext);
    payload["valid"] = report.ok;
    if (report.ok) {
      if (opts.text()) std::cout << "extension valid: yes\n";
    } else {
      payload["generator"] = ext.total.algebra->gen(report.generator).name;
      payload["failure"] = report.failure;
      if (opts.text())
        std::cout << "extension valid: no\n  generator "
                  << ext.total.algebra->gen(report.generator).name << ": "
                  << report.failure << "\n";
      code = kFail;
    }
  } else if (op == "pure") {
    const bool pure = checkPure(ext);
    payload["pure"] = pure;
    if (opts.text())
      std::cout << "pure extension: " << (pure ? "yes" : "no") << "\n";
    code = pure ? kPass : kFail;
  } else if (op == "tncz") {
    const TNCZReport report = checkTNCZ(ext, opts.capOpt());
    payload["tncz"] = report.tncz;
    payload["verifiedCap"] = report.verifiedCap;
    if (report.tncz) {
      if (opts.text())
        std::cout << "TNCZ (fiber classes all extend): yes (through degree "
                  << report.verifiedCap << ")\n";
    } else {
      payload["failingDegree"] = report.failingDegree;
      payload["reason"] = report.reason;
      if (report.missingFiberClass)
        payload["missingFiberClass"] = termsJson(*report.missingFiberClass);
      if (opts.text()) {
        std::cout << "TNCZ (fiber classes all extend): no\n  " << report.reason
                  << "\n";
        if (report.missingFiberClass)
          std::cout << "  missing fiber class in degree "
                    << report.failingDegree << ": "
                    << report.missingFiberClass->str() << "\n";
      }
      code = kFail;
    }
  } else {
    NormalizedExtension result = [&] {
      if (op == "normalize-odd-sphere")
        return normalizeOverOddSphere(ext, opts.capOpt());
      if (op == "trivialize") return trivializeOverOddWedge(ext, opts.capOpt());
      return filteredNormalize(ext, opts.capOpt());
    }();
    payload["substitutions"] = basisChangeJson(ext, result.change);
    payload["extension"] = extensionJson(
        result.extension, doc.name.empty() ? "normalized" : doc.name);
    if (opts.text()) {
      std::cout << "normal form reached; " << result.change.substitutions.size()
                << " generator(s) substituted\n";
      for (const auto& [id, eta] : result.change.substitutions)
        std::cout << "  " << ext.total.algebra->gen(id).name << " -> "
                  << ext.total.algebra->gen(id).name << " + (" << eta.str()
                  << ")\n";
    }
    if (op == "trivialize" && opts.text())
      std::cout << "the differential is now the product differential "
                   "(base image on the base, fiber image on the fiber)\n";
    if (op == "filter-normalize") {
      const FormalityCertificate cert =
          formalityCertificateOfTotal(result.extension, opts.capOpt());
      payload["formalityVerifiedCap"] = cert.verifiedCap;
      if (opts.text())
        std::cout << "formality certificate verified through degree "
                  << cert.verifiedCap << "\n";
    }
  }

  payload["outcome"] = code == kPass ? "pass" : "fail";
  emit(payload, opts);
  return code;
}

// The invariants dispatch for one document. Returns the report plus the window
// cap it was computed on; fills `notes` with route decisions.
struct InvariantOutcome {
  InvariantReport report;
  int cap = 0;
  std::string route;
  std::vector<std::string> notes;
};

InvariantOutcome computeInvariants(const ModelDocument& doc,
                                   std::optional<int> cap) {
  InvariantOutcome out;
  switch (doc.kind) {
    case DocumentKind::Algebra:
      throw PreconditionError(
          "invariants: an algebra document carries no differential or "
          "relations; nothing to compute");
    case DocumentKind::Presentation: {
      const Presentation p = toPresentation(doc);
      const RegularityCertificate cert = regularityCertificate(p, cap);
      if (cert.status != RegularityStatus::Regular)
        throw PreconditionError(
            "invariants: the presentation is not certified regular, so it "
            "has no positively elliptic pure model");
      const PureModel pm = pureModelFromPresentation(p);
      const FormalityCertificate fc = formalityCertificateOfPure(pm, cap);
      out.report = invariantReport(pm.asCdga(), fc.verifiedCap, &fc);
      out.cap = fc.verifiedCap;
      out.route = "regular presentation -> pure model -> certified report";
      return out;
    }
    case DocumentKind::Cdga: {
      const Cdga model = toCdga(doc);
      if (doc.grading == GradingMode::PureSplit) {
        const PureModel pm = makePureModel(model.algebra, model.differential);
        bool positivelyElliptic = false;
        try {
          positivelyElliptic =
              eulerReport(pm, std::max(pm.formalDimension, 0))
                  .positivelyElliptic;
        } catch (const PreconditionError&) {
          positivelyElliptic = false;
        }
        if (positivelyElliptic) {
          const FormalityCertificate fc = formalityCertificateOfPure(pm, cap);
          out.report = invariantReport(pm.asCdga(), fc.verifiedCap, &fc);
          out.cap = fc.verifiedCap;
          out.route = "positively elliptic pure model -> certified report";
          return out;
        }
        out.notes.push_back(
            "pure model is not positively elliptic; no formality pinning");
      }
      if (model.differential.isZero()) {
        out.cap = cap.value_or(formalCapHeuristic(model));
        out.report = invariantReportOfFormal(model, out.cap);
        out.route = "formal model (zero differential)";
        return out;
      }
      if (!model.relations.empty())
        throw PreconditionError(
            "invariants: a quotient model with a nonzero differential has no "
            "direct report; load the fibration as a ks-extension document");
      const DSquaredReport d2 =
          checkDSquared(model.differential, maxGeneratorDegree(model) + 2);
      if (!d2.ok)
        throw PreconditionError(
            "invariants: d^2 != 0 on generator " +
            model.algebra->gen(d2.generator).name +
            "; cohomology is undefined");
      out.cap = cap.value_or(maxGeneratorDegree(model) + 2);
      out.report = invariantReport(model, out.cap);
      out.route = "free model (word filtration, no formality pinning)";
      return out;
    }
    case DocumentKind::KSExtensionDoc:
      throw PreconditionError(
          "invariants: extension documents go through the fibration "
          "pipeline, not the direct dispatch");
  }
  throw Error("computeInvariants: unhandled kind");
}

int runInvariants(const CommonOpts& opts) {
  const ModelDocument doc = loadDocument(opts.file);
  Json payload = Json::object();
  payload["op"] = "invariants";
  payload["input"] = opts.file;
  payload["kind"] = kindName(doc.kind);
  int code = kPass;

  InvariantOutcome outcome;
  if (doc.kind == DocumentKind::KSExtensionDoc) {
    const KSExtension ext = toKSExtension(doc);
    const FibrationAnalysis a = analyzeFibration(ext, opts.capOpt());
    if (!a.validity.ok)
      throw PreconditionError("invariants: the extension is invalid (" +
                              a.validity.failure + "); nothing to report");
    if (!a.total)
      throw PreconditionError(
          "invariants: " +
          (a.notes.empty() ? std::string("the total space has no report")
                           : a.notes.back()));
    outcome.report = *a.total;
    outcome.cap = a.certifiedCap.value_or(
        opts.capOpt().value_or(maxGeneratorDegree(ext.total) + 2));
    outcome.route = a.certifiedCap
                        ? "filtered normal form -> formality certificate"
                        : "raw free total model";
    outcome.notes = a.notes;
  } else {
    outcome = computeInvariants(doc, opts.capOpt());
  }

  payload["route"] = outcome.route;
  payload["cap"] = outcome.cap;
  payload["invariants"] = invariantsJson(outcome.report);
  if (!outcome.notes.empty()) payload["notes"] = outcome.notes;

  if (opts.text()) {
    std::cout << "route: " << outcome.route << "\n";
    printInvariants(outcome.report, outcome.cap);
    for (const std::string& note : outcome.notes)
      std::cout << "note: " << note << "\n";
  }

  if (opts.strict && !outcome.report.nil0) {
    payload["strictFailure"] = "nil0 is not pinned by a certificate";
    if (opts.text())
      std::cout << "strict: FAIL (nil0 is not pinned by a certificate)\n";
    code = kFail;
  }

  if (opts.oracle) {
    const OracleOutcome o = runOracle(doc, opts.capOpt());
    payload["oracle"] = oracleJson(o);
    if (opts.text())
      std::cout << "oracle: "
                << (o.supported ? (o.match ? "match" : "MISMATCH") : "skipped")
                << (o.note.empty() ? "" : " (" + o.note + ")") << "\n";
    if (o.supported && !o.match) {
      emit(payload, opts);
      throw TheoryViolationError(
          "oracle cross-check failed: " +
          (o.mismatches.empty() ? std::string("(no detail)")
                                : o.mismatches.front()));
    }
  }

  payload["outcome"] = code == kPass ? "pass" : "fail";
  emit(payload, opts);
  return code;
}

int runOracleCommand(const CommonOpts& opts) {
  const ModelDocument doc = loadDocument(opts.file);
  const OracleOutcome o = runOracle(doc, opts.capOpt());
  Json payload = Json::object();
  payload["op"] = "oracle";
  payload["input"] = opts.file;
  payload["oracle"] = oracleJson(o);
  if (opts.text()) {
    if (!o.supported) {
      std::cout << "oracle: unsupported — " << o.note << "\n";
    } else if (o.match) {
      std::cout << "oracle: match through cap " << o.cap << "\n";
    } else {
      std::cout << "oracle: MISMATCH\n";
      for (const std::string& m : o.mismatches) std::cout << "  " << m << "\n";
    }
  }
  emit(payload, opts);
  // A cross-check that cannot run or does not match is an error, never a
  // verdict: the engine and the oracle may not disagree silently.
  return o.supported && o.match ? kPass : kError;
}

// -------------------------------------------------------------- report ----

struct ManifestEntry {
  std::string id;
  std::string file;
  std::optional<int> cap;
  Json expect;  // object; empty = none
};

struct Manifest {
  std::string name;
  std::vector<ManifestEntry> fixtures;
  std::vector<ManifestEntry> fibrations;
};

ManifestEntry parseManifestEntry(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an entry object");
  ManifestEntry entry;
  for (const auto& [key, value] : j.items()) {
    if (key == "id") {
      entry.id = value.is_string() ? value.get<std::string>() : "";
      if (entry.id.empty()) throw ParseError(path + "/id", "expected a name");
    } else if (key == "file") {
      if (!value.is_string()) throw ParseError(path + "/file", "expected a path");
      entry.file = value.get<std::string>();
    } else if (key == "cap") {
      if (!value.is_number_integer())
        throw ParseError(path + "/cap", "expected an integer");
      entry.cap = value.get<int>();
    } else if (key == "expect") {
      if (!value.is_object())
        throw ParseError(path + "/expect", "expected an object");
      entry.expect = value;
    } else {
      throw ParseError(path + "/" + key, "unknown field");
    }
  }
  if (entry.id.empty()) throw ParseError(path, "missing field 'id'");
  if (entry.file.empty()) throw ParseError(path, "missing field 'file'");
  return entry;
}

Manifest parseManifest(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("manifest", e.what());
  }
  if (!j.is_object()) throw ParseError("manifest", "expected an object");
  Manifest m;
  for (const auto& [key, value] : j.items()) {
    if (key == "schema") {
      if (!value.is_string() || value.get<std::string>() != "rht-manifest/1")
        throw ParseError("/schema", "expected \"rht-manifest/1\"");
    } else if (key == "name") {
      m.name = value.is_string() ? value.get<std::string>() : "";
    } else if (key == "fixtures" || key == "fibrations") {
      if (!value.is_array()) throw ParseError("/" + key, "expected an array");
      auto& target = key == "fixtures" ? m.fixtures : m.fibrations;
      for (std::size_t i = 0; i < value.size(); ++i)
        target.push_back(parseManifestEntry(
            value[i], "/" + key + "/" + std::to_string(i)));
    } else {
      throw ParseError("/" + key, "unknown field");
    }
  }
  return m;
}

// Flat actual-value map compared against an entry's `expect` object.
using Actuals = std::map<std::string, Json>;

void putReport(Actuals& a, const std::string& prefix, const InvariantReport& r) {
  a[prefix + "cup0"] = r.cup0;
  a[prefix + "e0"] = r.e0;
  if (r.nil0) a[prefix + "nil0"] = *r.nil0;
  if (r.cat0) a[prefix + "cat0"] = *r.cat0;
  if (r.cl0Upper) a[prefix + "cl0Upper"] = *r.cl0Upper;
}

std::vector<std::string> checkExpectations(const Json& expect,
                                           const Actuals& actuals) {
  std::vector<std::string> mismatches;
  if (!expect.is_object()) return mismatches;
  for (const auto& [key, value] : expect.items()) {
    const auto it = actuals.find(key);
    if (it == actuals.end()) {
      mismatches.push_back(key + ": expected " + value.dump() +
                           ", but the pipeline produced no value");
    } else if (it->second != value) {
      mismatches.push_back(key + ": expected " + value.dump() + ", got " +
                           it->second.dump());
    }
  }
  return mismatches;
}

int runReport(const CommonOpts& opts) {
  const std::filesystem::path manifestPath(opts.file);
  const Manifest manifest = parseManifest(readFile(opts.file));
  const std::filesystem::path root = manifestPath.parent_path();

  Json payload = Json::object();
  payload["op"] = "report";
  payload["manifest"] = opts.file;
  if (!manifest.name.empty()) payload["name"] = manifest.name;
  Json fixtureRows = Json::array();
  Json fibrationRows = Json::array();

  bool anyFailure = false;
  bool anyError = false;

  const auto clock = [] {
    return std::chrono::steady_clock::now();
  };
  const auto ms = [](auto start, auto stop) {
    return std::chrono::duration<double, std::milli>(stop - start).count();
  };

  if (opts.text() && !manifest.name.empty())
    std::cout << "fixture set: " << manifest.name << "\n";

  for (const ManifestEntry& entry : manifest.fixtures) {
    Json row = Json::object();
    row["id"] = entry.id;
    row["file"] = entry.file;
    const auto start = clock();
    try {
      const ModelDocument doc = loadDocument((root / entry.file).string());
      Actuals actuals;
      row["kind"] = kindName(doc.kind);
      const std::optional<int> cap = entry.cap ? entry.cap : opts.capOpt();

      if (doc.kind == DocumentKind::Presentation) {
        const Presentation p = toPresentation(doc);
        const RegularityCertificate cert = regularityCertificate(p, cap);
        const bool regular = cert.status == RegularityStatus::Regular;
        actuals["regular"] = regular;
        row["regular"] = regular;
        if (regular) {
          actuals["formalDimension"] = cert.formalDimension;
          row["formalDimension"] = cert.formalDimension;
          const HalperinVerdict hv = meierVerdict(p);
          actuals["halperin"] = hv.holds;
          row["halperin"] = hv.holds;
          const InvariantOutcome inv = computeInvariants(doc, cap);
          putReport(actuals, "", inv.report);
          row["invariants"] = invariantsJson(inv.report);
        }
      } else if (doc.kind == DocumentKind::Cdga) {
        const Cdga model = toCdga(doc);
        actuals["formal"] = model.differential.isZero();
        row["formal"] = model.differential.isZero();
        const InvariantOutcome inv = computeInvariants(doc, cap);
        putReport(actuals, "", inv.report);
        row["invariants"] = invariantsJson(inv.report);
      } else {
        throw PreconditionError(
            "report: fixture entries take presentations and cdgas; list "
            "extensions under 'fibrations'");
      }

      if (opts.oracle) {
        const OracleOutcome o = runOracle(doc, cap);
        row["oracle"] = oracleJson(o);
        if (o.supported && !o.match) {
          anyError = true;
          row["error"] = "oracle mismatch";
        }
      }

      const std::vector<std::string> mismatches =
          checkExpectations(entry.expect, actuals);
      if (!mismatches.empty()) {
        row["mismatches"] = mismatches;
        anyFailure = true;
      }
      row["ms"] = ms(start, clock());
      if (opts.text()) {
        std::cout << "fixture " << entry.id << ": "
                  << (mismatches.empty() ? "ok" : "EXPECTATION MISMATCH")
                  << "\n";
        for (const std::string& m : mismatches) std::cout << "    " << m << "\n";
      }
    } catch (const Error& e) {
      row["error"] = e.what();
      row["ms"] = ms(start, clock());
      anyError = true;
      if (opts.text())
        std::cout << "fixture " << entry.id << ": ERROR — " << e.what() << "\n";
    }
    fixtureRows.push_back(std::move(row));
  }

  for (const ManifestEntry& entry : manifest.fibrations) {
    Json row = Json::object();
    row["id"] = entry.id;
    row["file"] = entry.file;
    const auto start = clock();
    try {
      const ModelDocument doc = loadDocument((root / entry.file).string());
      if (doc.kind != DocumentKind::KSExtensionDoc)
        throw PreconditionError(
            "report: fibration entries need ks-extension documents");
      const KSExtension ext = toKSExtension(doc);
      const std::optional<int> cap = entry.cap ? entry.cap : opts.capOpt();
      const FibrationAnalysis a = analyzeFibration(ext, cap);
      row["analysis"] = fibrationJson(a);

      Actuals actuals;
      actuals["valid"] = a.validity.ok;
      if (a.validity.ok) {
        actuals["pure"] = a.pure;
        if (a.tncz) actuals["tncz"] = a.tncz->tncz;
        actuals["baseFormal"] = a.baseFormal;
        actuals["baseOddWedge"] = a.baseOddWedge;
        actuals["fiberElliptic"] = a.fiber.has_value();
        if (a.total) putReport(actuals, "", *a.total);
        if (a.base) putReport(actuals, "base.", *a.base);
        if (a.fiberReport) putReport(actuals, "fiber.", *a.fiberReport);
        bool allHold = true;
        for (const InequalityVerdict& v : a.inequalities)
          if (v.applicable && !v.holds) allHold = false;
        if (!a.inequalities.empty()) actuals["inequalitiesHold"] = allHold;
        if (!allHold) anyFailure = true;
      } else {
        anyFailure = true;
      }

      const std::vector<std::string> mismatches =
          checkExpectations(entry.expect, actuals);
      if (!mismatches.empty()) {
        row["mismatches"] = mismatches;
        anyFailure = true;
      }
      row["ms"] = ms(start, clock());

      if (opts.text()) {
        std::cout << "fibration " << entry.id << ":";
        if (!a.validity.ok) {
          std::cout << " INVALID — " << a.validity.failure << "\n";
        } else {
          std::cout << (a.pure ? " pure" : " twisted")
                    << (a.tncz && a.tncz->tncz ? ", TNCZ" : "")
                    << (a.baseFormal ? ", formal base" : "")
                    << (a.baseOddWedge ? " (odd wedge)" : "")
                    << (a.fiber ? ", elliptic fiber" : "") << "\n";
          if (a.total)
            std::cout << "    total: cup0 " << a.total->cup0 << "  e0 "
                      << a.total->e0 << "  nil0 " << opt(a.total->nil0)
                      << "  cl0<= " << opt(a.total->cl0Upper) << "\n";
          if (!a.inequalities.empty()) printVerdicts(a.inequalities);
        }
        for (const std::string& m : mismatches) std::cout << "    " << m << "\n";
      }
    } catch (const Error& e) {
      row["error"] = e.what();
      row["ms"] = ms(start, clock());
      anyError = true;
      if (opts.text())
        std::cout << "fibration " << entry.id << ": ERROR — " << e.what()
                  << "\n";
    }
    fibrationRows.push_back(std::move(row));
  }

  payload["fixtures"] = std::move(fixtureRows);
  payload["fibrations"] = std::move(fibrationRows);
  const int code = anyError ? kError : (anyFailure ? kFail : kPass);
  payload["outcome"] =
      code == kPass ? "pass" : (code == kFail ? "fail" : "error");
  if (opts.text())
    std::cout << "report outcome: " << payload["outcome"].get<std::string>()
              << "\n";
  emit(payload, opts);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact rational-homotopy computations: Sullivan models, KS-extensions, "
      "and LS-category approximations"};
  app.require_subcommand(1);

  CommonOpts ellipticOpts, halperinOpts, invariantsOpts, reportOpts, oracleOpts;
  CommonOpts fibrationOpts[6];
  int exitCode = kPass;

  CLI::App* elliptic =
      app.add_subcommand("elliptic", "ellipticity of quotient presentations");
  elliptic->require_subcommand(1);
  CLI::App* ellipticCheck = elliptic->add_subcommand(
      "check", "decide positive ellipticity (regular sequence / Euler count)");
  attachCommon(ellipticCheck, ellipticOpts);
  ellipticCheck->add_flag("--strict", ellipticOpts.strict,
                          "treat an inconclusive answer as failure");
  ellipticCheck->callback(
      [&] { exitCode = runEllipticCheck(ellipticOpts); });

  CLI::App* halperin = app.add_subcommand(
      "halperin", "derivation criteria for quotient presentations");
  halperin->require_subcommand(1);
  CLI::App* halperinCheck = halperin->add_subcommand(
      "check", "vanishing of the negative-degree derivations of the quotient");
  attachCommon(halperinCheck, halperinOpts);
  int shiftValue = 0;
  bool shiftSet = false, waiveRegularity = false;
  halperinCheck
      ->add_option("--shift", shiftValue,
                   "query a single derivation degree instead of the full scan")
      ->each([&](const std::string&) { shiftSet = true; });
  halperinCheck->add_flag(
      "--waive-regularity", waiveRegularity,
      "diagnostic: solve on a non-regular quotient (single-shift mode only)");
  halperinCheck->callback([&] {
    exitCode = runHalperinCheck(
        halperinOpts, shiftSet ? std::optional<int>(shiftValue) : std::nullopt,
        waiveRegularity);
  });

  CLI::App* fibration =
      app.add_subcommand("fibration", "KS-extension verdicts and normal forms");
  fibration->require_subcommand(1);
  const char* fibOps[6] = {"validate",  "pure",
                           "tncz",      "normalize-odd-sphere",
                           "trivialize", "filter-normalize"};
  const char* fibHelp[6] = {
      "check the differential restriction, the KS condition, and d^2 = 0",
      "check that even fiber generators are closed and odd images polynomial",
      "check that every fiber class extends to the total space",
      "reduce even-generator images over a single odd sphere",
      "reach the product differential over a wedge of odd spheres",
      "make even generators closed and odd images bigraded; certify formality"};
  for (int i = 0; i < 6; ++i) {
    CLI::App* cmd = fibration->add_subcommand(fibOps[i], fibHelp[i]);
    attachCommon(cmd, fibrationOpts[i]);
    const std::string op = fibOps[i];
    cmd->callback([&exitCode, &fibrationOpts, op, i] {
      exitCode = runFibration(op, fibrationOpts[i]);
    });
  }

  CLI::App* invariants = app.add_subcommand(
      "invariants", "cup length, Toomer value, and certificate-pinned values");
  attachCommon(invariants, invariantsOpts);
  invariants->add_flag("--strict", invariantsOpts.strict,
                       "fail when nil0 is not pinned by a certificate");
  invariants->add_flag("--oracle", invariantsOpts.oracle,
                       "also run the dense cross-check (mismatch = error)");
  invariants->callback([&] { exitCode = runInvariants(invariantsOpts); });

  CLI::App* report = app.add_subcommand(
      "report", "run a fixture corpus and evaluate the fibration rules");
  attachCommon(report, reportOpts, /*fileIsManifest=*/true);
  report->add_flag("--oracle", reportOpts.oracle,
                   "dense cross-check every fixture that supports it");
  report->callback([&] { exitCode = runReport(reportOpts); });

  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force cross-check of one document (mismatch = error)");
  attachCommon(oracle, oracleOpts);
  oracle->callback([&] { exitCode = runOracleCommand(oracleOpts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  } catch (const rht::ParseError& e) {
    std::cerr << "parse error — " << e.what() << "\n";
    return kError;
  } catch (const rht::PreconditionError& e) {
    std::cerr << "precondition failed — " << e.what() << "\n";
    return kError;
  } catch (const rht::TheoryViolationError& e) {
    std::cerr << "internal consistency violation — " << e.what() << "\n";
    return kError;
  } catch (const rht::Error& e) {
    std::cerr << "error — " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error — " << e.what() << "\n";
    return kError;
  }
  return exitCode;
}
