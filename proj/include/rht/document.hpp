#pragma once

// JSON interchange documents for models. One file holds one object; the
// format is strict (unknown fields are rejected at every level) and exact
// (coefficients are canonical fraction strings, never floats), so documents
// round-trip byte-for-byte through parse/serialize.
//
// Schema ("rht-model/1"):
//   {
//     "schema": "rht-model/1",
//     "kind": "algebra" | "presentation" | "cdga" | "ks-extension",
//     "name": "...",            optional identifier
//     "description": "...",     optional free text
//     "grading": "none" | "lower" | "pure-split",
//                                optional, "algebra"/"cdga" kinds only;
//                                default "none"
//     "generators": [ { "name": "x2", "degree": 2, "parity": "even",
//                       "lower": 0 }, ... ],
//                                "lower" required iff grading == "lower"
//     "differential": { "y3": [term, ...], ... },
//                                nonzero images only; zero means omit
//     "relations": [ [term, ...], ... ],
//     "base": ["w4", ...],      ks-extension only: base generator names
//     "fiber": ["v2", ...]      ks-extension only: fiber names in KS order
//   }
// where a term is { "coeff": "<p or p/q>", "monomial": { "x2": 2, ... } }.
//
// Validation split: parseDocument enforces everything expressible at the
// document level -- schema shape, unknown fields, parity/degree agreement,
// dangling generator references, canonical coefficients (reduced, no zero
// terms, no duplicate monomials, no odd generator squared), and for
// extensions the base/fiber partition with base-closed relations and base
// differential. The converters run the engine's own constructors on top,
// which add the algebraic checks (image homogeneity, relation degree floors,
// lower-degree consistency). Neither layer decides verdict-style questions:
// d^2 = 0, the KS condition, purity, and TNCZ are judged by the dedicated
// check operations so that failing models can still be loaded and reported.
//
// Error locations: syntax errors carry "line L, column C"; semantic errors
// carry the JSON-pointer path of the offending value (e.g.
// "/generators/2/parity"). Both arrive as ParseError::where().
//
// Canonical serialized form: fields in schema order, generators in the order
// stored on the document, differential keys in generator order, monomial
// keys in generator order, two-space indentation, trailing newline.
// parse(serialize(doc)) == doc and serialize is injective on parsed
// documents, so serialize . parse is the identity on canonical text.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rht/cdga.hpp"
#include "rht/ks_extension.hpp"
#include "rht/presentation.hpp"
#include "rht/rational.hpp"

namespace rht {

enum class DocumentKind { Algebra, Presentation, Cdga, KSExtensionDoc };

std::string kindName(DocumentKind kind);

struct DocTerm {
  Rational coeff;
  std::map<std::string, int> monomial;  // generator name -> exponent >= 1
  friend bool operator==(const DocTerm& a, const DocTerm& b) = default;
};

using DocTerms = std::vector<DocTerm>;

struct DocGenerator {
  std::string name;
  int degree = 0;
  std::optional<int> lower;  // set iff the document grading is "lower"
  friend bool operator==(const DocGenerator& a, const DocGenerator& b) = default;
};

struct ModelDocument {
  DocumentKind kind = DocumentKind::Algebra;
  std::string name;         // empty = absent
  std::string description;  // empty = absent
  GradingMode grading = GradingMode::None;
  std::vector<DocGenerator> generators;
  // Keyed by generator name; only nonzero images appear.
  std::map<std::string, DocTerms> differential;
  std::vector<DocTerms> relations;
  std::vector<std::string> baseNames;   // ks-extension only
  std::vector<std::string> fiberNames;  // ks-extension only, KS order
  friend bool operator==(const ModelDocument& a, const ModelDocument& b) = default;
};

// Strict parse; throws ParseError with a byte offset (syntax) or JSON-pointer
// path (schema violations).
ModelDocument parseDocument(const std::string& text);

// Canonical text; throws Error if the document references undeclared names
// (a programmer error -- parsed documents never do).
std::string serializeDocument(const ModelDocument& doc);

// Converters onto engine objects. Each requires the matching kind
// (PreconditionError otherwise, naming both kinds) and then defers to the
// engine constructors for the algebraic validation.
AlgebraPtr toAlgebra(const ModelDocument& doc);   // kinds: algebra, cdga
Presentation toPresentation(const ModelDocument& doc);
Cdga toCdga(const ModelDocument& doc);
// Builds the base CDGA from the base sublist, then assembles the extension
// with the document's fiber order as the KS order. Deliberately does not
// check d^2 = 0 or the KS condition: validate() on the result is the verdict
// path, so defective extensions load fine and report their failure.
KSExtension toKSExtension(const ModelDocument& doc);

// Document builders for engine objects (canonical generator order; for
// extensions, base generators first and then the fiber in KS order).
ModelDocument documentFromCdga(const Cdga& c, std::string name = "",
                               std::string description = "");
ModelDocument documentFromPresentation(const Presentation& p,
                                       std::string name = "",
                                       std::string description = "");
ModelDocument documentFromExtension(const KSExtension& ext,
                                    std::string name = "",
                                    std::string description = "");

// Term-list conversion helpers (used by the CLI to render witnesses and
// basis changes). docTermsFromElement emits canonical monomial order;
// elementFromDocTerms resolves names over the given algebra and throws
// ParseError on unknown names, with `where` as the location prefix.
DocTerms docTermsFromElement(const Element& e);
Element elementFromDocTerms(const AlgebraPtr& algebra, const DocTerms& terms,
                            const std::string& where);

}  // namespace rht
