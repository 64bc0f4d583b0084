// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/planner.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "cobuild/error.hpp"

namespace cobuild {

namespace {

constexpr std::size_t kNodeBudget = 200000;

/// World view used during search: the real cells plus tentative placements.
class SimState {
 public:
  explicit SimState(const World& world) : world_(world) {}

  bool in_bounds(Position p) const { return world_.in_bounds(p); }
  bool occupied(Position p) const { return world_.occupied(p) || placed_.count(p); }
  bool supported(Position p) const {
    if (p.y == 0) return true;
    for (Position d : kNeighborOffsets) {
      if (occupied(p + d)) return true;
    }
    return false;
  }
  void place(Position p) { placed_.insert(p); }
  void unplace(Position p) { placed_.erase(p); }

 private:
  const World& world_;
  PositionSet placed_;
};

Task place_task(Position p, Color c) {
  return {std::string(kPlaceBlock), {PosConst{p}, Constant{std::string(to_string(c))}}};
}

class Planner {
 public:
  Planner(const World& world, const Repository& repo)
      : state_(world), repo_(repo), methods_(methods(repo)) {}

  PlanResult run(const Task& root) {
    std::vector<Task> agenda{root};
    std::vector<PlaceOp> ops;
    if (seek(agenda, ops)) return Plan{root, std::move(ops)};
    if (first_failure_) return *first_failure_;
    return PlanFailure{FailureReason::NoMethod, {}, render(root)};
  }

 private:
  void fail(FailureReason reason, Position pos, const Task& task) {
    if (!first_failure_) first_failure_ = PlanFailure{reason, pos, render(task)};
  }

  // `agenda` is processed front to back; it is restored before returning.
  bool seek(std::vector<Task>& agenda, std::vector<PlaceOp>& ops) {
    if (agenda.empty()) return true;
    if (++nodes_ > kNodeBudget) return false;

    Task task = agenda.back();  // agenda is stored reversed: back() is next
    agenda.pop_back();
    bool ok = task.name == kPlaceBlock ? apply_operator(task, agenda, ops)
                                       : decompose(task, agenda, ops);
    agenda.push_back(std::move(task));
    return ok;
  }

  bool apply_operator(const Task& task, std::vector<Task>& agenda, std::vector<PlaceOp>& ops) {
    Position p = std::get<PosConst>(task.args.at(0)).pos;
    Color c = *parse_color(std::get<Constant>(task.args.at(1)).symbol);
    if (!state_.in_bounds(p)) {
      fail(FailureReason::OutOfBounds, p, task);
      return false;
    }
    if (state_.occupied(p)) {
      fail(FailureReason::Collision, p, task);
      return false;
    }
    if (!state_.supported(p)) {
      fail(FailureReason::Unsupported, p, task);
      return false;
    }
    state_.place(p);
    ops.push_back({p, c});
    if (seek(agenda, ops)) return true;
    ops.pop_back();
    state_.unplace(p);
    return false;
  }

  bool decompose(const Task& task, std::vector<Task>& agenda, std::vector<PlaceOp>& ops) {
    std::string kind = task_kind(task);
    bool any = false;
    for (const auto& m : methods_) {
      if (m.kind != kind) continue;
      any = true;
      std::optional<std::vector<Task>> subtasks = expand(m, task);
      if (!subtasks) continue;
      std::size_t base = agenda.size();
      agenda.insert(agenda.end(), subtasks->rbegin(), subtasks->rend());
      bool ok = seek(agenda, ops);
      agenda.resize(base);
      if (ok) return true;
    }
    if (!any) fail(FailureReason::NoMethod, {}, task);
    return false;
  }

  // Checks the guard and returns the ordered subtasks, or nullopt.
  std::optional<std::vector<Task>> expand(const Method& m, const Task& task) {
    BuildArgs args;
    try {
      args = decode_build_task(task, repo_);
    } catch (const Error&) {
      fail(FailureReason::NoMethod, {}, task);
      return std::nullopt;
    }
    BlockList cells = repo_.colored_extent(args.kind, args.color, args.dims, args.anchor);
    for (const auto& b : cells) {
      if (!state_.in_bounds(b.pos)) {
        fail(FailureReason::OutOfBounds, b.pos, task);
        return std::nullopt;
      }
    }
    for (const auto& b : cells) {
      if (state_.occupied(b.pos)) {
        fail(FailureReason::Collision, b.pos, task);
        return std::nullopt;
      }
    }

    std::vector<Task> out;
    switch (m.body) {
      case MethodBody::LayeredBlocks:
        for (const auto& b : cells) out.push_back(place_task(b.pos, b.color));
        break;
      case MethodBody::SupportFirstBlocks:
        for (const auto& b : support_first(cells)) out.push_back(place_task(b.pos, b.color));
        break;
      case MethodBody::PartsInCoverOrder:
      case MethodBody::PartsLowestFirst:
        out = part_tasks(args, m.body == MethodBody::PartsLowestFirst);
        break;
    }
    return out;
  }

  BlockList support_first(BlockList cells) const {
    BlockList order;
    PositionSet done;
    auto supported = [&](Position p) {
      if (state_.supported(p)) return true;
      for (Position d : kNeighborOffsets) {
        if (done.count(p + d)) return true;
      }
      return false;
    };
    while (!cells.empty()) {
      auto it = std::find_if(cells.begin(), cells.end(),
                             [&](const Block& b) { return supported(b.pos); });
      if (it == cells.end()) it = cells.begin();
      done.insert(it->pos);
      order.push_back(*it);
      cells.erase(it);
    }
    return order;
  }

  std::vector<Task> part_tasks(const BuildArgs& args, bool lowest_first) const {
    const ConceptDefinition& def = *repo_.find(args.kind)->definition;
    Valuation v = def.valuation(args.dims);
    struct Sub {
      Task task;
      Position lowest;
    };
    std::vector<Sub> subs;
    for (const auto& part : def.parts) {
      std::vector<int> dims;
      bool empty = false;
      for (const auto& d : part.dims) {
        dims.push_back(d.eval(v));
        empty |= dims.back() < 1;
      }
      if (empty) continue;
      Position anchor = args.anchor + Position{part.offset[0].eval(v), part.offset[1].eval(v),
                                              part.offset[2].eval(v)};
      Color color = part.fixed_color.value_or(args.color);
      Task t{std::string(kBuildPrefix) + part.kind, {Constant{std::string(to_string(color))}}};
      for (int d : dims) t.args.push_back(IntConst{d});
      t.args.push_back(PosConst{anchor});
      PositionSet cells = repo_.extent(part.kind, dims, anchor);
      subs.push_back({std::move(t), cells.empty() ? anchor : *cells.begin()});
    }
    if (lowest_first) {
      std::stable_sort(subs.begin(), subs.end(), [](const Sub& a, const Sub& b) {
        return YxzLess{}(a.lowest, b.lowest);
      });
    }
    std::vector<Task> out;
    for (auto& s : subs) out.push_back(std::move(s.task));
    return out;
  }

  SimState state_;
  const Repository& repo_;
  std::vector<Method> methods_;
  std::optional<PlanFailure> first_failure_;
  std::size_t nodes_ = 0;
};

}  // namespace

std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::OutOfBounds: return "OutOfBounds";
    case FailureReason::Collision: return "Collision";
    case FailureReason::Unsupported: return "Unsupported";
    case FailureReason::NoMethod: return "NoMethod";
  }
  return "NoMethod";
}

std::vector<Method> methods(const Repository& repo) {
  std::vector<Method> out;
  for (const auto& e : repo.entries()) {
    if (e.definition) {
      out.push_back({e.schema.kind, MethodBody::PartsInCoverOrder});
      out.push_back({e.schema.kind, MethodBody::PartsLowestFirst});
    } else {
      out.push_back({e.schema.kind, MethodBody::LayeredBlocks});
      out.push_back({e.schema.kind, MethodBody::SupportFirstBlocks});
    }
  }
  return out;
}

std::string render(const Method& m, const Repository& repo) {
  const SlotSchema& schema = repo.schema(m.kind);
  std::string head = std::string(kBuildPrefix) + m.kind + "(?color";
  for (const auto& p : schema.params) head += ", ?" + p;
  head += ", ?anchor)";
  switch (m.body) {
    case MethodBody::LayeredBlocks:
      return head + " -> place-block over extent in (y,x,z) order";
    case MethodBody::SupportFirstBlocks:
      return head + " -> place-block over extent, supported cells first";
    case MethodBody::PartsInCoverOrder:
    case MethodBody::PartsLowestFirst: {
      const ConceptDefinition& def = *repo.find(m.kind)->definition;
      std::string body;
      for (const auto& part : def.parts) {
        if (!body.empty()) body += ", ";
        body += std::string(kBuildPrefix) + part.kind + "(";
        body += part.fixed_color ? std::string(to_string(*part.fixed_color)) : "?color";
        for (const auto& d : part.dims) body += ", " + render(d);
        body += ", ?anchor+(" + render(part.offset[0]) + "," + render(part.offset[1]) + "," +
                render(part.offset[2]) + "))";
      }
      return head + " -> " + body +
             (m.body == MethodBody::PartsLowestFirst ? " [lowest part first]" : "");
    }
  }
  return head;
}

BuildArgs decode_build_task(const Task& task, const Repository& repo) {
  BuildArgs args;
  args.kind = task_kind(task);
  const SlotSchema& schema = repo.schema(args.kind);
  if (task.args.size() != schema.params.size() + 2) {
    throw Error(Errc::UnknownKind, "wrong arity for " + render(task));
  }
  const auto* color = std::get_if<Constant>(&task.args.front());
  if (!color || !parse_color(color->symbol)) {
    throw Error(Errc::IncompleteForm, "task color is not ground: " + render(task));
  }
  args.color = *parse_color(color->symbol);
  for (std::size_t i = 1; i + 1 < task.args.size(); ++i) {
    const auto* v = std::get_if<IntConst>(&task.args[i]);
    if (!v) throw Error(Errc::IncompleteForm, "task dimension is not ground: " + render(task));
    args.dims.push_back(v->value);
  }
  const auto* anchor = std::get_if<PosConst>(&task.args.back());
  if (!anchor) throw Error(Errc::IncompleteForm, "task anchor is not resolved: " + render(task));
  args.anchor = anchor->pos;
  return args;
}

PlanResult plan(const Task& task, const World& world, const Repository& repo) {
  if (!repo.contains(task_kind(task))) {
    return PlanFailure{FailureReason::NoMethod, {}, render(task)};
  }
  BuildArgs args = decode_build_task(task, repo);
  for (int d : args.dims) {
    if (d < 1) throw Error(Errc::NonPositiveDimension, "dimension < 1 in " + render(task));
  }
  return Planner(world, repo).run(task);
}

const StructureInstance& execute(const Plan& plan, World& world, InstanceRegistry& registry,
                                 const Repository& repo) {
  BuildArgs args = decode_build_task(plan.task, repo);

  SimState sim(world);
  for (const auto& op : plan.ops) {
    if (!sim.in_bounds(op.pos) || sim.occupied(op.pos) || !sim.supported(op.pos)) {
      throw Error(Errc::StalePlan, "plan no longer applies at " + to_string(op.pos));
    }
    sim.place(op.pos);
  }

  GroupId group = world.open_group();
  for (const auto& op : plan.ops) world.place_block(op.pos, op.color, group);

  StructureInstance inst;
  inst.kind = args.kind;
  inst.color = args.color;
  inst.dims = args.dims;
  inst.anchor = args.anchor;
  inst.blocks = repo.extent(args.kind, args.dims, args.anchor);
  inst.group = group;
  return registry.add(std::move(inst));
}

}  // namespace cobuild
