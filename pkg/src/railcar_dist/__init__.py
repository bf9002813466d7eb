"""Empty railcar distribution over scheduled trains at a railway transport node."""

from .distributor import (
    Assignment,
    Carryover,
    DistributionPlan,
    DistributorConfig,
    InfeasibleInstance,
    carryover_report,
    distribute,
    workload_factor,
)
from .model import Instance, ValidationError, balance_group, validate_instance
from .network import CapacityLedger, build_network, route_table_from
from .transport_lp import TransportInstance, solve_transportation, verify_optimality

__all__ = [
    "Assignment",
    "CapacityLedger",
    "Carryover",
    "DistributionPlan",
    "DistributorConfig",
    "InfeasibleInstance",
    "Instance",
    "TransportInstance",
    "ValidationError",
    "balance_group",
    "build_network",
    "carryover_report",
    "distribute",
    "route_table_from",
    "solve_transportation",
    "validate_instance",
    "verify_optimality",
    "workload_factor",
]
