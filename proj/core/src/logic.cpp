// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/logic.hpp"

#include <algorithm>
#include <set>

#include "cobuild/error.hpp"

namespace cobuild {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

void collect_variables(const Atom& a, std::set<std::string>& out) {
  for (const auto& t : a.args) {
    if (const auto* v = std::get_if<Variable>(&t)) out.insert(v->name);
  }
}

}  // namespace

std::string render(const Term& t) {
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.symbol; },
          [](const IntConst& i) { return std::to_string(i.value); },
          [](const Variable& v) {
            if (v.shift == 0) return v.name;
            // U+2212 MINUS SIGN for subtraction; plain '+' otherwise.
            return v.name + (v.shift < 0 ? "−" : "+") + std::to_string(std::abs(v.shift));
          },
          [](const PosConst& p) { return to_string(p.pos); },
      },
      t);
}

bool is_ground(const Term& t) { return !std::holds_alternative<Variable>(t); }

std::string render(const Atom& a) {
  std::vector<std::string> args;
  for (const auto& t : a.args) args.push_back(render(t));
  return a.predicate + "(" + join(args, ",") + ")";
}

std::string render(const HornClause& c) {
  std::vector<std::string> body;
  for (const auto& b : c.body) body.push_back(render(b));
  return render(c.head) + " ← " + join(body, " ∧ ");
}

bool well_formed(const HornClause& c) {
  std::set<std::string> head_vars, covered;
  collect_variables(c.head, head_vars);
  for (const auto& b : c.body) collect_variables(b, covered);
  covered.insert(c.parameters.begin(), c.parameters.end());
  return std::includes(covered.begin(), covered.end(), head_vars.begin(), head_vars.end());
}

const std::vector<SlotSchema>& primitive_schemas() {
  static const std::vector<SlotSchema> schemas = {
      {"block", {}, true},
      {"tower", {"height"}, true},
      {"row", {"width"}, true},
      {"column", {"length"}, true},
      {"square", {"size"}, true},
      {"rectangle", {"width", "height"}, true},
      {"cube", {"size"}, true},
      {"cuboid", {"width", "height", "length"}, true},
  };
  return schemas;
}

std::string render(const Placement& p) {
  return std::visit(
      Overloaded{
          [](const DefaultPlacement&) { return std::string("default"); },
          [](const AbsolutePlacement& a) { return "at" + to_string(a.pos); },
          [](const RelativePlacement& r) {
            return "relative(" + r.ref.kind + "#" + std::to_string(r.ref.id) + ", " +
                   r.indicator + ", " + std::string(to_string(r.direction)) + ")";
          },
      },
      p);
}

InstructionForm InstructionForm::blank(const SlotSchema& schema) {
  InstructionForm f;
  f.kind = schema.kind;
  for (const auto& p : schema.params) f.dims.push_back({p, std::nullopt});
  return f;
}

std::optional<int> InstructionForm::dim(std::string_view param) const {
  for (const auto& d : dims) {
    if (d.param == param) return d.value;
  }
  return std::nullopt;
}

bool InstructionForm::set_dim(std::string_view param, int value) {
  for (auto& d : dims) {
    if (d.param == param) {
      d.value = value;
      return true;
    }
  }
  return false;
}

std::vector<int> InstructionForm::dim_values() const {
  std::vector<int> out;
  for (const auto& d : dims) {
    if (!d.value) throw Error(Errc::IncompleteForm, "missing " + d.param);
    out.push_back(*d.value);
  }
  return out;
}

std::string render(const InstructionForm& f) {
  std::vector<std::string> fields;
  fields.push_back("color=" + (f.color ? std::string(to_string(*f.color)) : std::string("?")));
  for (const auto& d : f.dims) {
    fields.push_back(d.param + "=" + (d.value ? std::to_string(*d.value) : std::string("?")));
  }
  fields.push_back("placement=" + render(f.placement));
  return f.kind + "(" + join(fields, ", ") + ")";
}

std::vector<std::string> check_completeness(const InstructionForm& form,
                                            const SlotSchema& schema) {
  if (form.kind != schema.kind) {
    throw Error(Errc::UnknownKind, "form kind '" + form.kind + "' does not match schema '" +
                                       schema.kind + "'");
  }
  if (form.dims.size() != schema.params.size()) {
    throw Error(Errc::UnknownKind, "form slots do not match schema of '" + schema.kind + "'");
  }
  std::vector<std::string> missing;
  if (schema.color_required && !form.color) missing.push_back("color");
  for (std::size_t i = 0; i < schema.params.size(); ++i) {
    if (form.dims[i].param != schema.params[i]) {
      throw Error(Errc::UnknownKind, "form slots do not match schema of '" + schema.kind + "'");
    }
    if (!form.dims[i].value) missing.push_back(schema.params[i]);
  }
  return missing;
}

std::string render(const Task& t) {
  std::vector<std::string> args;
  for (const auto& a : t.args) args.push_back(render(a));
  return t.name + "(" + join(args, ", ") + ")";
}

Task to_htn_task(const InstructionForm& form) {
  if (!form.color) throw Error(Errc::IncompleteForm, "missing color");
  Task task{std::string(kBuildPrefix) + form.kind, {Constant{std::string(to_string(*form.color))}}};
  for (int v : form.dim_values()) task.args.push_back(IntConst{v});
  std::visit(Overloaded{
                 [&](const DefaultPlacement&) {
                   task.args.push_back(Constant{std::string(kDefaultAnchor)});
                 },
                 [&](const AbsolutePlacement& a) { task.args.push_back(PosConst{a.pos}); },
                 [&](const RelativePlacement& r) {
                   task.args.push_back(Constant{render(Placement{r})});
                 },
             },
             form.placement);
  return task;
}

Task bind_anchor(Task task, Position anchor) {
  if (task.args.empty()) throw Error(Errc::IncompleteForm, "task has no anchor argument");
  task.args.back() = PosConst{anchor};
  return task;
}

std::string task_kind(const Task& t) {
  if (t.name.rfind(kBuildPrefix, 0) != 0) return {};
  return t.name.substr(kBuildPrefix.size());
}

}  // namespace cobuild
