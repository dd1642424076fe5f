"""Event-by-event simulation of quantum circuits with deterministic learning machines."""
from .circuit import CircuitDescription, GateSpec, parse_circuit
from .machine import Event, LearningMachine, MachineConfig, Mode
from .network import Network, build_network, run

__all__ = [
    "CircuitDescription",
    "Event",
    "GateSpec",
    "LearningMachine",
    "MachineConfig",
    "Mode",
    "Network",
    "build_network",
    "parse_circuit",
    "run",
]
