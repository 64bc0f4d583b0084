// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/concept.hpp"

#include <cctype>

#include "cobuild/error.hpp"

namespace cobuild {

namespace {

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

Term to_term(const DimExpr& e, const std::vector<std::string>& params) {
  switch (e.tag) {
    case DimExpr::Tag::Const: return IntConst{e.value};
    case DimExpr::Tag::Param: return Variable{param_variable(e.param, params), 0};
    case DimExpr::Tag::ParamMinus1: return Variable{param_variable(e.param, params), -1};
    case DimExpr::Tag::ParamPlus1: return Variable{param_variable(e.param, params), 1};
  }
  return IntConst{0};
}

std::string article(const std::string& word) {
  return std::string("aeiou").find(word.empty() ? 'x' : word[0]) != std::string::npos ? "an"
                                                                                       : "a";
}

}  // namespace

int DimExpr::eval(const Valuation& v) const {
  if (tag == Tag::Const) return value;
  auto it = v.find(param);
  if (it == v.end()) throw Error(Errc::UnknownKind, "no value for parameter " + param);
  switch (tag) {
    case Tag::Param: return it->second;
    case Tag::ParamMinus1: return it->second - 1;
    case Tag::ParamPlus1: return it->second + 1;
    case Tag::Const: break;
  }
  return value;
}

std::string render(const DimExpr& e) {
  switch (e.tag) {
    case DimExpr::Tag::Const: return std::to_string(e.value);
    case DimExpr::Tag::Param: return e.param;
    case DimExpr::Tag::ParamMinus1: return e.param + "−1";
    case DimExpr::Tag::ParamPlus1: return e.param + "+1";
  }
  return {};
}

Valuation ConceptDefinition::valuation(const std::vector<int>& values) const {
  if (values.size() != params.size()) {
    throw Error(Errc::IncompleteForm, "expected " + std::to_string(params.size()) +
                                          " dimensions for " + name);
  }
  Valuation v;
  for (std::size_t i = 0; i < params.size(); ++i) v[params[i]] = values[i];
  return v;
}

std::string param_variable(const std::string& param, const std::vector<std::string>& params) {
  if (param.empty()) return "P";
  for (const auto& other : params) {
    if (other != param && !other.empty() && other[0] == param[0]) return upper(param);
  }
  return upper(param.substr(0, 1));
}

HornClause make_clause(const std::string& name, const std::vector<std::string>& params,
                       const std::vector<PartSpec>& parts) {
  HornClause clause;
  clause.head.predicate = name;
  clause.head.args.push_back(Variable{"C", 0});
  for (const auto& p : params) clause.head.args.push_back(Variable{param_variable(p, params), 0});
  for (const auto& part : parts) {
    Atom atom{part.kind, {}};
    if (part.fixed_color) {
      atom.args.push_back(Constant{std::string(to_string(*part.fixed_color))});
    } else {
      atom.args.push_back(Variable{"C", 0});
    }
    for (const auto& d : part.dims) atom.args.push_back(to_term(d, params));
    for (const auto& o : part.offset) atom.args.push_back(to_term(o, params));
    clause.body.push_back(std::move(atom));
  }
  // The color and every parameter are inputs of the concept even when a
  // part does not mention them.
  clause.parameters.push_back("C");
  for (const auto& p : params) clause.parameters.push_back(param_variable(p, params));
  return clause;
}

std::string make_explanation(const std::string& name, const std::vector<std::string>& params,
                             const std::vector<PartSpec>& parts,
                             const std::vector<SlotSchema>& part_schemas) {
  std::string text = "IF ";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& part = parts[i];
    if (i) text += " and ";
    std::string noun = part.fixed_color
                           ? std::string(to_string(*part.fixed_color)) + " " + part.kind
                           : part.kind;
    text += article(noun) + " " + noun;
    const SlotSchema* schema = i < part_schemas.size() ? &part_schemas[i] : nullptr;
    for (std::size_t d = 0; d < part.dims.size(); ++d) {
      text += d == 0 ? " of " : " and ";
      if (schema && d < schema->params.size()) text += schema->params[d] + " ";
      text += render(to_term(part.dims[d], params));
    }
    text += " at (";
    for (std::size_t a = 0; a < 3; ++a) {
      if (a) text += ",";
      text += render(to_term(part.offset[a], params));
    }
    text += ")";
  }
  text += " THEN this is " + article(name) + " " + name;
  for (std::size_t i = 0; i < params.size(); ++i) {
    text += i == 0 ? ", where " : (i + 1 == params.size() ? " and " : ", ");
    text += param_variable(params[i], params) + " is its " + params[i];
  }
  return text;
}

}  // namespace cobuild
