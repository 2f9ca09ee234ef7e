"""Guarded finite-state-machine engine.

A machine is data: states (one initial, at least one final) and transitions
labelled "Trigger [Guard] / Action". Guards and actions are referenced by
id and bound to host callables through an ActionRegistry, which keeps
machine definitions serializable.

Execution semantics per step: the first transition (in declaration order)
whose trigger matches the event and whose guard holds is taken, firing
exitAction(from), the transition action and entryAction(to), in that order.
A run fires the initial state's initialActivity first and the final state's
finalActivity last. Definitions are immutable after validation; one run
owns its context exclusively, and runs of the same definition may proceed
in parallel.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable

from ..errors import GuardEvalError, LabelSyntaxError, NoTransition


class StateKind(Enum):
    INITIAL = "initial"
    INTERMEDIATE = "intermediate"
    FINAL = "final"


@dataclass(frozen=True)
class State:
    name: str
    kind: StateKind
    entry_action: str | None = None
    exit_action: str | None = None
    initial_activity: str | None = None
    final_activity: str | None = None


@dataclass(frozen=True)
class Transition:
    source: str
    target: str
    trigger: str
    guard: str | None = None
    action: str | None = None

    def label(self) -> str:
        text = self.trigger
        if self.guard is not None:
            text += f" [{self.guard}]"
        if self.action is not None:
            text += f" / {self.action}"
        return text


@dataclass(frozen=True)
class StateMachineDef:
    name: str
    states: tuple[State, ...]
    transitions: tuple[Transition, ...]

    def state(self, name: str) -> State | None:
        for state in self.states:
            if state.name == name:
                return state
        return None

    def initial_state(self) -> State:
        for state in self.states:
            if state.kind is StateKind.INITIAL:
                return state
        raise ValueError(f"machine '{self.name}' has no initial state")


@dataclass(frozen=True)
class MachineIssue:
    kind: str  # structure | actions | nondeterminism | reachability
    message: str


@dataclass
class ActionRegistry:
    """Host bindings for guard and action ids. Unbound actions fire as
    no-ops (the id is still recorded); unbound guards cannot be evaluated."""

    guards: dict[str, Callable] = field(default_factory=dict)
    actions: dict[str, Callable] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "ActionRegistry":
        return cls()


@dataclass(frozen=True)
class TraceStep:
    state: str
    event: str | None
    actions: tuple[str, ...]


@dataclass
class RunTrace:
    steps: list[TraceStep]
    status: str  # finished | stuck | error
    error: str | None = None

    def fired_actions(self) -> list[str]:
        return [a for step in self.steps for a in step.actions]


def parse_transition_label(text: str) -> tuple[str, str | None, str | None]:
    """Split a "Trigger [Guard] / Action" label; guard and action optional."""
    guard = None
    action = None
    if "[" in text or "]" in text:
        lb = text.find("[")
        rb = text.find("]")
        if lb == -1 or rb < lb:
            raise LabelSyntaxError(f"unbalanced brackets in {text!r}")
        guard_part = text[lb + 1:rb]
        tail = text[rb + 1:]
        if "[" in guard_part or "[" in tail or "]" in tail:
            raise LabelSyntaxError(f"unbalanced brackets in {text!r}")
        head = text[:lb]
        if "/" in head:
            raise LabelSyntaxError(f"action before guard in {text!r}")
        guard = guard_part.strip() or None
        tail = tail.strip()
        if tail:
            if not tail.startswith("/"):
                raise LabelSyntaxError(f"unexpected text after guard in {text!r}")
            action = tail[1:].strip() or None
    else:
        head, slash, tail = text.partition("/")
        if slash:
            action = tail.strip() or None
    trigger = (text[:text.find("[")] if guard is not None else head).strip()
    if not trigger:
        raise LabelSyntaxError(f"empty trigger in {text!r}")
    return trigger, guard, action


def validate_machine(defn: StateMachineDef) -> list[MachineIssue]:
    """Structural checks; an empty list means the machine is well-formed.

    The determinism check is conservative: two transitions sharing
    (source, trigger) are rejected when their guards are identical or both
    absent. Distinct guards are assumed disjoint; making that true is the
    author's responsibility.
    """
    issues: list[MachineIssue] = []

    def structure(msg):
        issues.append(MachineIssue("structure", msg))

    names = [s.name for s in defn.states]
    for name in sorted({n for n in names if names.count(n) > 1}):
        structure(f"duplicate state name '{name}'")

    initials = [s for s in defn.states if s.kind is StateKind.INITIAL]
    finals = [s for s in defn.states if s.kind is StateKind.FINAL]
    if len(initials) != 1:
        structure(f"expected exactly one initial state, found {len(initials)}")
    if not finals:
        structure("at least one final state is required")

    for state in defn.states:
        wrong = []
        if state.kind is StateKind.INITIAL:
            if state.entry_action or state.exit_action or state.final_activity:
                wrong = ["an initial state carries only initialActivity"]
        elif state.kind is StateKind.FINAL:
            if state.entry_action or state.exit_action or state.initial_activity:
                wrong = ["a final state carries only finalActivity"]
        else:
            if state.initial_activity or state.final_activity:
                wrong = ["an intermediate state carries only entry/exit actions"]
        for msg in wrong:
            issues.append(MachineIssue("actions", f"state '{state.name}': {msg}"))

    known = set(names)
    for t in defn.transitions:
        for endpoint in (t.source, t.target):
            if endpoint not in known:
                structure(f"transition '{t.label()}' names unknown state "
                          f"'{endpoint}'")
        state = defn.state(t.source)
        if state is not None and state.kind is StateKind.FINAL:
            structure(f"final state '{t.source}' has an outgoing transition")

    seen: dict[tuple[str, str], list[str | None]] = {}
    for t in defn.transitions:
        guards = seen.setdefault((t.source, t.trigger), [])
        if t.guard in guards:
            shown = t.guard if t.guard is not None else "<none>"
            issues.append(MachineIssue(
                "nondeterminism",
                f"two transitions from '{t.source}' on '{t.trigger}' share "
                f"guard {shown}"))
        guards.append(t.guard)

    if len(initials) == 1 and not any(i.kind == "structure" for i in issues):
        reachable = {initials[0].name}
        queue = deque(reachable)
        while queue:
            current = queue.popleft()
            for t in defn.transitions:
                if t.source == current and t.target not in reachable:
                    reachable.add(t.target)
                    queue.append(t.target)
        for name in names:
            if name not in reachable:
                issues.append(MachineIssue(
                    "reachability", f"state '{name}' is unreachable"))

    return issues


def _guard_holds(transition: Transition, context, registry: ActionRegistry) -> bool:
    if transition.guard is None:
        return True
    fn = registry.guards.get(transition.guard)
    if fn is None:
        raise GuardEvalError(f"guard '{transition.guard}' is not bound")
    try:
        return bool(fn(context))
    except Exception as exc:
        raise GuardEvalError(
            f"guard '{transition.guard}' failed: {exc}") from exc


def _fire(action_id: str | None, context, registry: ActionRegistry,
          fired: list[str]) -> None:
    if action_id is None:
        return
    fn = registry.actions.get(action_id)
    if fn is not None:
        fn(context)
    fired.append(action_id)


def step(defn: StateMachineDef, current: str, event: str, context,
         registry: ActionRegistry | None = None) -> tuple[str, list[str]]:
    """Take one transition; returns the next state and the fired action ids
    in exit / transition / entry order."""
    registry = registry or ActionRegistry.empty()
    state = defn.state(current)
    if state is None:
        raise NoTransition(current, event)
    chosen = None
    for t in defn.transitions:
        if t.source == current and t.trigger == event and _guard_holds(t, context, registry):
            chosen = t
            break
    if chosen is None:
        raise NoTransition(current, event)

    fired: list[str] = []
    _fire(state.exit_action, context, registry, fired)
    _fire(chosen.action, context, registry, fired)
    target = defn.state(chosen.target)
    _fire(target.entry_action if target else None, context, registry, fired)
    return chosen.target, fired


def run(defn: StateMachineDef, events, context,
        registry: ActionRegistry | None = None) -> RunTrace:
    """Fold `step` over `events` from the initial state.

    The trace records every state entered with the actions fired on entry.
    NoTransition/GuardEvalError become status "error" with the partial
    trace; exceptions raised by host actions propagate to the caller.
    """
    registry = registry or ActionRegistry.empty()
    start = defn.initial_state()
    steps: list[TraceStep] = []

    fired: list[str] = []
    _fire(start.initial_activity, context, registry, fired)
    steps.append(TraceStep(start.name, None, tuple(fired)))

    current = start.name
    for event in events:
        try:
            current, fired = step(defn, current, event, context, registry)
        except (NoTransition, GuardEvalError) as exc:
            return RunTrace(steps, "error", str(exc))
        steps.append(TraceStep(current, event, tuple(fired)))

    state = defn.state(current)
    if state is not None and state.kind is StateKind.FINAL:
        if state.final_activity is not None:
            fired = []
            _fire(state.final_activity, context, registry, fired)
            steps.append(TraceStep(current, None, tuple(fired)))
        return RunTrace(steps, "finished")
    return RunTrace(steps, "stuck")


# --- machine-definition files -------------------------------------------------

def machine_from_dict(doc) -> StateMachineDef:
    """Build a definition from the machine file format (see load_machine)."""
    if not isinstance(doc, dict) or doc.get("version") != 1:
        raise LabelSyntaxError("machine document must be an object with version 1")
    states = []
    for item in doc.get("states", []):
        kind = StateKind(item.get("kind", "intermediate"))
        states.append(State(
            name=item["name"],
            kind=kind,
            entry_action=item.get("entryAction"),
            exit_action=item.get("exitAction"),
            initial_activity=item.get("initialActivity"),
            final_activity=item.get("finalActivity"),
        ))
    transitions = []
    for item in doc.get("transitions", []):
        trigger, guard, action = parse_transition_label(item["label"])
        transitions.append(Transition(
            source=item["from"], target=item["to"],
            trigger=trigger, guard=guard, action=action,
        ))
    return StateMachineDef(
        name=doc.get("name", ""),
        states=tuple(states),
        transitions=tuple(transitions),
    )


def load_machine(path) -> StateMachineDef:
    """Read a machine definition: JSON with `version`, `name`, `states`
    (name/kind plus optional action fields) and `transitions` (from/to plus
    a "Trigger [Guard] / Action" label)."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return machine_from_dict(doc)
