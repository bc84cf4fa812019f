from edgefog.model.connectivity import effective_connectivity, resource_network
from edgefog.model.costs import link_cost_bounds, network_cost, processing_cost
from edgefog.model.io import (
    assignment_document,
    assignment_from_document,
    emit_assignment,
    emit_instance,
    graphs_from_document,
    instance_document,
    load_instance_document,
    parse_instance,
)
from edgefog.model.normalize import normalize_instance


__all__ = [
    "assignment_document",
    "assignment_from_document",
    "effective_connectivity",
    "emit_assignment",
    "emit_instance",
    "graphs_from_document",
    "instance_document",
    "link_cost_bounds",
    "load_instance_document",
    "network_cost",
    "normalize_instance",
    "parse_instance",
    "processing_cost",
    "resource_network",
]
