#include "rht/document.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <unordered_map>
#include <utility>

namespace rht {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchemaTag = "rht-model/1";

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ParseError(path, message);
}

// "line L, column C" for the byte offset nlohmann reports (1-based, counting
// the newline as the last column of its line).
std::string syntaxLocation(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  const std::size_t stop = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < stop; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string item(const std::string& path, const std::string& key) {
  return path + "/" + key;
}

std::string item(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

// Rejects keys outside `allowed`, naming the first offender.
void requireKeys(const Json& object, const std::string& path,
                 const std::set<std::string>& allowed) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (!allowed.count(key)) fail(item(path, key), "unknown field");
  }
}

const Json* find(const Json& object, const std::string& key) {
  auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

std::string getString(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

int getInt(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto wide = j.get<long long>();
  if (wide < -1000000 || wide > 1000000) fail(path, "integer out of range");
  return static_cast<int>(wide);
}

DocumentKind parseKind(const std::string& text, const std::string& path) {
  if (text == "algebra") return DocumentKind::Algebra;
  if (text == "presentation") return DocumentKind::Presentation;
  if (text == "cdga") return DocumentKind::Cdga;
  if (text == "ks-extension") return DocumentKind::KSExtensionDoc;
  fail(path, "unknown kind '" + text +
                 "'; expected algebra, presentation, cdga, or ks-extension");
}

GradingMode parseGrading(const std::string& text, const std::string& path) {
  if (text == "none") return GradingMode::None;
  if (text == "lower") return GradingMode::LowerGraded;
  if (text == "pure-split") return GradingMode::PureSplit;
  fail(path, "unknown grading '" + text +
                 "'; expected none, lower, or pure-split");
}

std::string gradingName(GradingMode mode) {
  switch (mode) {
    case GradingMode::None: return "none";
    case GradingMode::LowerGraded: return "lower";
    case GradingMode::PureSplit: return "pure-split";
  }
  throw Error("gradingName: unhandled mode");
}

// Declared generators, for reference checks while parsing term lists.
struct GeneratorIndex {
  std::unordered_map<std::string, std::size_t> position;
  const std::vector<DocGenerator>* gens = nullptr;

  const DocGenerator* lookup(const std::string& name) const {
    auto it = position.find(name);
    return it == position.end() ? nullptr : &(*gens)[it->second];
  }
};

DocTerm parseTerm(const Json& j, const std::string& path,
                  const GeneratorIndex& index) {
  if (!j.is_object()) fail(path, "expected a term object");
  requireKeys(j, path, {"coeff", "monomial"});
  const Json* coeff = find(j, "coeff");
  const Json* monomial = find(j, "monomial");
  if (!coeff) fail(path, "missing field 'coeff'");
  if (!monomial) fail(path, "missing field 'monomial'");

  DocTerm term;
  const std::string coeffPath = item(path, "coeff");
  const std::string text = getString(*coeff, coeffPath);
  try {
    term.coeff = Rational::fromString(text);
  } catch (const Error& e) {
    fail(coeffPath, e.what());
  }
  if (term.coeff.isZero()) fail(coeffPath, "zero coefficient; omit the term");

  if (!monomial->is_object()) fail(item(path, "monomial"), "expected an object");
  for (const auto& [name, expJson] : monomial->items()) {
    const std::string expPath = item(item(path, "monomial"), name);
    const DocGenerator* gen = index.lookup(name);
    if (!gen) fail(expPath, "reference to undeclared generator '" + name + "'");
    const int exp = getInt(expJson, expPath);
    if (exp < 1) fail(expPath, "exponent must be >= 1; omit absent factors");
    if (gen->degree % 2 != 0 && exp > 1)
      fail(expPath, "odd generator '" + name +
                        "' squared; such a term is zero and must be omitted");
    term.monomial.emplace(name, exp);
  }
  return term;
}

DocTerms parseTerms(const Json& j, const std::string& path,
                    const GeneratorIndex& index) {
  if (!j.is_array()) fail(path, "expected an array of terms");
  if (j.empty())
    fail(path, "empty term list; a zero element is expressed by omission");
  DocTerms terms;
  std::set<std::map<std::string, int>> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    DocTerm term = parseTerm(j[i], item(path, i), index);
    if (!seen.insert(term.monomial).second)
      fail(item(path, i), "duplicate monomial; term lists are canonical");
    terms.push_back(std::move(term));
  }
  return terms;
}

std::vector<std::string> parseNameList(const Json& j, const std::string& path,
                                       const GeneratorIndex& index,
                                       std::set<std::string>& claimed) {
  if (!j.is_array()) fail(path, "expected an array of generator names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string name = getString(j[i], item(path, i));
    if (!index.lookup(name))
      fail(item(path, i), "reference to undeclared generator '" + name + "'");
    if (!claimed.insert(name).second)
      fail(item(path, i), "generator '" + name + "' listed twice");
    names.push_back(name);
  }
  return names;
}

// True when every monomial in the list uses only names from `allowed`.
const std::string* firstForeignName(const DocTerms& terms,
                                    const std::set<std::string>& allowed) {
  for (const DocTerm& term : terms)
    for (const auto& [name, exp] : term.monomial) {
      (void)exp;
      if (!allowed.count(name)) return &name;
    }
  return nullptr;
}

Json termToJson(const DocTerm& term,
                const std::unordered_map<std::string, std::size_t>& order) {
  Json monomial = Json::object();
  std::vector<std::pair<std::size_t, const std::pair<const std::string, int>*>>
      sorted;
  for (const auto& entry : term.monomial) {
    auto it = order.find(entry.first);
    if (it == order.end())
      throw Error("serializeDocument: monomial references undeclared generator '" +
                  entry.first + "'");
    sorted.emplace_back(it->second, &entry);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [pos, entry] : sorted) {
    (void)pos;
    monomial[entry->first] = entry->second;
  }
  Json out = Json::object();
  out["coeff"] = term.coeff.str();
  out["monomial"] = std::move(monomial);
  return out;
}

Json termsToJson(const DocTerms& terms,
                 const std::unordered_map<std::string, std::size_t>& order) {
  Json out = Json::array();
  for (const DocTerm& term : terms) out.push_back(termToJson(term, order));
  return out;
}

void requireKind(const ModelDocument& doc, DocumentKind expected,
                 const char* op) {
  if (doc.kind != expected)
    throw PreconditionError(std::string(op) + ": document kind is '" +
                            kindName(doc.kind) + "'; expected '" +
                            kindName(expected) + "'");
}

std::vector<Element> elementsFrom(const AlgebraPtr& algebra,
                                  const std::vector<DocTerms>& lists,
                                  const std::string& where) {
  std::vector<Element> out;
  out.reserve(lists.size());
  for (std::size_t i = 0; i < lists.size(); ++i)
    out.push_back(
        elementFromDocTerms(algebra, lists[i], item(where, i)));
  return out;
}

std::vector<DocTerms> docTermLists(const std::vector<Element>& elements) {
  std::vector<DocTerms> out;
  out.reserve(elements.size());
  for (const Element& e : elements) out.push_back(docTermsFromElement(e));
  return out;
}

}  // namespace

std::string kindName(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::Algebra: return "algebra";
    case DocumentKind::Presentation: return "presentation";
    case DocumentKind::Cdga: return "cdga";
    case DocumentKind::KSExtensionDoc: return "ks-extension";
  }
  throw Error("kindName: unhandled kind");
}

ModelDocument parseDocument(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(syntaxLocation(text, e.byte), e.what());
  }
  if (!j.is_object()) fail("", "expected a top-level object");

  ModelDocument doc;

  const Json* kindField = find(j, "kind");
  if (!kindField) fail("/kind", "missing field");
  doc.kind = parseKind(getString(*kindField, "/kind"), "/kind");
  const bool isExtension = doc.kind == DocumentKind::KSExtensionDoc;

  std::set<std::string> allowed = {"schema", "kind", "name", "description",
                                   "generators"};
  if (doc.kind == DocumentKind::Algebra || doc.kind == DocumentKind::Cdga)
    allowed.insert("grading");
  if (doc.kind == DocumentKind::Cdga || isExtension)
    allowed.insert("differential");
  if (doc.kind != DocumentKind::Algebra) allowed.insert("relations");
  if (isExtension) {
    allowed.insert("base");
    allowed.insert("fiber");
  }
  requireKeys(j, "", allowed);

  const Json* schema = find(j, "schema");
  if (!schema) fail("/schema", "missing field");
  if (getString(*schema, "/schema") != kSchemaTag)
    fail("/schema", std::string("unsupported schema; expected \"") +
                        kSchemaTag + "\"");

  if (const Json* name = find(j, "name"))
    doc.name = getString(*name, "/name");
  if (const Json* description = find(j, "description"))
    doc.description = getString(*description, "/description");
  if (const Json* grading = find(j, "grading"))
    doc.grading = parseGrading(getString(*grading, "/grading"), "/grading");

  const Json* generators = find(j, "generators");
  if (!generators) fail("/generators", "missing field");
  if (!generators->is_array()) fail("/generators", "expected an array");

  GeneratorIndex index;
  index.gens = &doc.generators;
  for (std::size_t i = 0; i < generators->size(); ++i) {
    const Json& g = (*generators)[i];
    const std::string path = item("/generators", i);
    if (!g.is_object()) fail(path, "expected a generator object");
    requireKeys(g, path, {"name", "degree", "parity", "lower"});

    DocGenerator gen;
    const Json* nameField = find(g, "name");
    if (!nameField) fail(item(path, "name"), "missing field");
    gen.name = getString(*nameField, item(path, "name"));
    if (gen.name.empty()) fail(item(path, "name"), "empty generator name");

    const Json* degreeField = find(g, "degree");
    if (!degreeField) fail(item(path, "degree"), "missing field");
    gen.degree = getInt(*degreeField, item(path, "degree"));
    if (gen.degree < 1) fail(item(path, "degree"), "degree must be >= 1");

    const Json* parityField = find(g, "parity");
    if (!parityField) fail(item(path, "parity"), "missing field");
    const std::string parity = getString(*parityField, item(path, "parity"));
    if (parity != "even" && parity != "odd")
      fail(item(path, "parity"), "expected \"even\" or \"odd\"");
    const bool odd = gen.degree % 2 != 0;
    if (odd != (parity == "odd"))
      fail(item(path, "parity"),
           "generator '" + gen.name + "' has " +
               (odd ? std::string("odd") : std::string("even")) + " degree " +
               std::to_string(gen.degree) + " but is declared " + parity);

    if (const Json* lowerField = find(g, "lower")) {
      if (doc.grading != GradingMode::LowerGraded || isExtension)
        fail(item(path, "lower"),
             "lower degrees are only declared under grading \"lower\"");
      const int lower = getInt(*lowerField, item(path, "lower"));
      if (lower < 0) fail(item(path, "lower"), "lower degree must be >= 0");
      gen.lower = lower;
    } else if (doc.grading == GradingMode::LowerGraded) {
      fail(item(path, "lower"),
           "missing field; grading \"lower\" needs one per generator");
    }

    if (index.position.count(gen.name))
      fail(item(path, "name"), "duplicate generator name '" + gen.name + "'");
    index.position.emplace(gen.name, doc.generators.size());
    doc.generators.push_back(std::move(gen));
  }

  if (const Json* differential = find(j, "differential")) {
    if (!differential->is_object()) fail("/differential", "expected an object");
    for (const auto& [name, image] : differential->items()) {
      const std::string path = item("/differential", name);
      if (!index.lookup(name))
        fail(path, "image of undeclared generator '" + name + "'");
      doc.differential.emplace(name, parseTerms(image, path, index));
    }
  }

  if (const Json* relations = find(j, "relations")) {
    if (!relations->is_array()) fail("/relations", "expected an array");
    for (std::size_t i = 0; i < relations->size(); ++i)
      doc.relations.push_back(
          parseTerms((*relations)[i], item("/relations", i), index));
  }

  if (isExtension) {
    const Json* base = find(j, "base");
    const Json* fiber = find(j, "fiber");
    if (!base) fail("/base", "missing field; ks-extension needs the partition");
    if (!fiber) fail("/fiber", "missing field; ks-extension needs the partition");
    std::set<std::string> claimed;
    doc.baseNames = parseNameList(*base, "/base", index, claimed);
    doc.fiberNames = parseNameList(*fiber, "/fiber", index, claimed);
    if (claimed.size() != doc.generators.size())
      fail("/base", "base and fiber together must list every generator");
    if (doc.baseNames.empty())
      fail("/base", "empty base; a fiber alone is a cdga document");
    if (doc.fiberNames.empty())
      fail("/fiber", "empty fiber; a base alone is a cdga document");

    const std::set<std::string> baseSet(doc.baseNames.begin(),
                                        doc.baseNames.end());
    for (std::size_t i = 0; i < doc.relations.size(); ++i)
      if (const std::string* foreign =
              firstForeignName(doc.relations[i], baseSet))
        fail(item("/relations", i),
             "relation involves fiber generator '" + *foreign +
                 "'; extension relations live on the base");
    for (const auto& [name, terms] : doc.differential) {
      if (!baseSet.count(name)) continue;
      if (const std::string* foreign = firstForeignName(terms, baseSet))
        fail(item("/differential", name),
             "base image involves fiber generator '" + *foreign +
                 "'; the base differential closes on the base");
    }
  }

  return doc;
}

std::string serializeDocument(const ModelDocument& doc) {
  std::unordered_map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < doc.generators.size(); ++i)
    order.emplace(doc.generators[i].name, i);

  Json j = Json::object();
  j["schema"] = kSchemaTag;
  j["kind"] = kindName(doc.kind);
  if (!doc.name.empty()) j["name"] = doc.name;
  if (!doc.description.empty()) j["description"] = doc.description;
  if (doc.grading != GradingMode::None) j["grading"] = gradingName(doc.grading);

  Json gens = Json::array();
  for (const DocGenerator& gen : doc.generators) {
    Json g = Json::object();
    g["name"] = gen.name;
    g["degree"] = gen.degree;
    g["parity"] = gen.degree % 2 != 0 ? "odd" : "even";
    if (gen.lower) g["lower"] = *gen.lower;
    gens.push_back(std::move(g));
  }
  j["generators"] = std::move(gens);

  if (!doc.differential.empty()) {
    Json d = Json::object();
    for (const DocGenerator& gen : doc.generators) {
      auto it = doc.differential.find(gen.name);
      if (it == doc.differential.end()) continue;
      d[gen.name] = termsToJson(it->second, order);
    }
    if (d.size() != doc.differential.size())
      throw Error("serializeDocument: differential keyed by undeclared generator");
    j["differential"] = std::move(d);
  }

  if (!doc.relations.empty()) {
    Json r = Json::array();
    for (const DocTerms& relation : doc.relations)
      r.push_back(termsToJson(relation, order));
    j["relations"] = std::move(r);
  }

  if (doc.kind == DocumentKind::KSExtensionDoc) {
    j["base"] = doc.baseNames;
    j["fiber"] = doc.fiberNames;
  }

  return j.dump(2) + "\n";
}

Element elementFromDocTerms(const AlgebraPtr& algebra, const DocTerms& terms,
                            const std::string& where) {
  Element out = Element::zero(algebra);
  for (const DocTerm& term : terms) {
    Monomial::Factors factors;
    for (const auto& [name, exp] : term.monomial) {
      const std::optional<int> id = algebra->findGen(name);
      if (!id)
        throw ParseError(where,
                         "unknown generator '" + name + "' over this algebra");
      factors.emplace_back(*id, exp);
    }
    std::sort(factors.begin(), factors.end());
    out += Element::term(algebra, Monomial::fromFactors(*algebra, factors),
                         term.coeff);
  }
  return out;
}

DocTerms docTermsFromElement(const Element& e) {
  const FreeGCA& algebra = *e.algebra();
  DocTerms out;
  for (const auto& [monomial, coeff] : e.terms()) {
    DocTerm term;
    term.coeff = coeff;
    for (const auto& [id, exp] : monomial.factors())
      term.monomial.emplace(algebra.gen(id).name, exp);
    out.push_back(std::move(term));
  }
  return out;
}

AlgebraPtr toAlgebra(const ModelDocument& doc) {
  if (doc.kind != DocumentKind::Algebra && doc.kind != DocumentKind::Cdga)
    throw PreconditionError("toAlgebra: document kind is '" +
                            kindName(doc.kind) +
                            "'; expected 'algebra' or 'cdga'");
  std::vector<Generator> gens;
  gens.reserve(doc.generators.size());
  for (const DocGenerator& g : doc.generators)
    gens.push_back(Generator{g.name, g.degree, g.lower});
  return makeAlgebra(std::move(gens), doc.grading);
}

Presentation toPresentation(const ModelDocument& doc) {
  requireKind(doc, DocumentKind::Presentation, "toPresentation");
  std::vector<Generator> gens;
  gens.reserve(doc.generators.size());
  for (const DocGenerator& g : doc.generators)
    gens.push_back(Generator{g.name, g.degree});
  AlgebraPtr algebra = makeAlgebra(std::move(gens));
  return Presentation(algebra,
                      elementsFrom(algebra, doc.relations, "/relations"));
}

Cdga toCdga(const ModelDocument& doc) {
  requireKind(doc, DocumentKind::Cdga, "toCdga");
  AlgebraPtr algebra = toAlgebra(doc);
  std::map<int, Element> images;
  for (const auto& [name, terms] : doc.differential)
    images.emplace(*algebra->findGen(name),
                   elementFromDocTerms(algebra, terms,
                                       item("/differential", name)));
  const bool bigraded = doc.grading == GradingMode::PureSplit;
  Cdga c{algebra, elementsFrom(algebra, doc.relations, "/relations"),
         Differential(algebra, std::move(images), bigraded)};
  validateCdga(c);
  return c;
}

KSExtension toKSExtension(const ModelDocument& doc) {
  requireKind(doc, DocumentKind::KSExtensionDoc, "toKSExtension");
  const std::set<std::string> baseSet(doc.baseNames.begin(),
                                      doc.baseNames.end());

  std::vector<Generator> baseGens;
  std::vector<Generator> fiberGens;
  for (const DocGenerator& g : doc.generators)
    if (baseSet.count(g.name)) baseGens.push_back(Generator{g.name, g.degree});
  for (const std::string& name : doc.fiberNames)
    for (const DocGenerator& g : doc.generators)
      if (g.name == name) fiberGens.push_back(Generator{g.name, g.degree});

  AlgebraPtr baseAlgebra = makeAlgebra(std::move(baseGens));
  std::map<int, Element> baseImages;
  for (const auto& [name, terms] : doc.differential) {
    if (!baseSet.count(name)) continue;
    baseImages.emplace(*baseAlgebra->findGen(name),
                       elementFromDocTerms(baseAlgebra, terms,
                                           item("/differential", name)));
  }
  Cdga base{baseAlgebra,
            elementsFrom(baseAlgebra, doc.relations, "/relations"),
            Differential(baseAlgebra, std::move(baseImages))};

  const auto fiberImages = [&doc](const AlgebraPtr& total) {
    std::map<std::string, Element> images;
    for (const std::string& name : doc.fiberNames) {
      auto it = doc.differential.find(name);
      if (it == doc.differential.end()) continue;
      images.emplace(name, elementFromDocTerms(total, it->second,
                                               item("/differential", name)));
    }
    return images;
  };
  return makeKSExtension(base, std::move(fiberGens), fiberImages,
                         doc.fiberNames);
}

ModelDocument documentFromCdga(const Cdga& c, std::string name,
                               std::string description) {
  ModelDocument doc;
  doc.kind = DocumentKind::Cdga;
  doc.name = std::move(name);
  doc.description = std::move(description);
  doc.grading = c.algebra->gradingMode();
  for (const Generator& g : c.algebra->generators()) {
    DocGenerator gen{g.name, g.degree, std::nullopt};
    if (doc.grading == GradingMode::LowerGraded) gen.lower = g.lowerDegree;
    doc.generators.push_back(std::move(gen));
  }
  for (const auto& [id, image] : c.differential.images()) {
    if (image.isZero()) continue;
    doc.differential.emplace(c.algebra->gen(id).name,
                             docTermsFromElement(image));
  }
  doc.relations = docTermLists(c.relations);
  return doc;
}

ModelDocument documentFromPresentation(const Presentation& p, std::string name,
                                       std::string description) {
  ModelDocument doc;
  doc.kind = DocumentKind::Presentation;
  doc.name = std::move(name);
  doc.description = std::move(description);
  for (const Generator& g : p.algebra()->generators())
    doc.generators.push_back(DocGenerator{g.name, g.degree, std::nullopt});
  doc.relations = docTermLists(p.relations());
  return doc;
}

ModelDocument documentFromExtension(const KSExtension& ext, std::string name,
                                    std::string description) {
  ModelDocument doc;
  doc.kind = DocumentKind::KSExtensionDoc;
  doc.name = std::move(name);
  doc.description = std::move(description);

  const FreeGCA& total = *ext.total.algebra;
  std::vector<int> baseIds = ext.baseIds;
  std::sort(baseIds.begin(), baseIds.end());
  for (const int id : baseIds) {
    const Generator& g = total.gen(id);
    doc.generators.push_back(DocGenerator{g.name, g.degree, std::nullopt});
    doc.baseNames.push_back(g.name);
  }
  for (const int id : ext.fiberOrder) {
    const Generator& g = total.gen(id);
    doc.generators.push_back(DocGenerator{g.name, g.degree, std::nullopt});
    doc.fiberNames.push_back(g.name);
  }

  for (const auto& [id, image] : ext.total.differential.images()) {
    if (image.isZero()) continue;
    doc.differential.emplace(total.gen(id).name, docTermsFromElement(image));
  }
  doc.relations = docTermLists(ext.total.relations);
  return doc;
}

}  // namespace rht
