"""State-machine agent: generic engine plus the source-discovery machine."""

from .discovery import (
    DISCOVERY_EVENTS, descriptor_from_model, discover, discovery_machine,
    discovery_registry, sources_from_catalog,
)
from .machine import (
    ActionRegistry, MachineIssue, RunTrace, State, StateKind, StateMachineDef,
    TraceStep, Transition, load_machine, machine_from_dict,
    parse_transition_label, run, step, validate_machine,
)

__all__ = [
    "ActionRegistry", "DISCOVERY_EVENTS", "MachineIssue", "RunTrace", "State",
    "StateKind", "StateMachineDef", "TraceStep", "Transition",
    "descriptor_from_model", "discover", "discovery_machine",
    "discovery_registry", "load_machine", "machine_from_dict",
    "parse_transition_label", "run", "sources_from_catalog", "step",
    "validate_machine",
]
