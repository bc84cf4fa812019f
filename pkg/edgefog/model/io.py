"""Instance and assignment JSON documents."""

import json
from collections import defaultdict
from typing import Any, Dict, Optional, Tuple

from pydantic import ValidationError

from edgefog.exceptions import DimensionMismatchError, InstanceParseError
from edgefog.schema import (
    Assignment,
    AssignmentDocument,
    Dependency,
    Device,
    Instance,
    InstanceDocument,
    Job,
    JobGraph,
    Link,
    MappingEntry,
    ResourceGraph,
)


def _field_path(loc: Tuple[Any, ...]) -> str:
    path = ""
    for part in loc:
        path += f"[{part}]" if isinstance(part, int) else (f".{part}" if path else str(part))
    return path


def load_instance_document(text: str) -> InstanceDocument:
    """Parse an instance document, keeping its optional ``meta`` block.

    Raises:
        InstanceParseError: On malformed JSON or schema violations.
        DuplicateIdError, InvalidEdgeError: On graph invariant violations
            (raised when the graphs are built, see ``graphs_from_document``).
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError(f"Malformed JSON: {e.msg}", line=e.lineno, column=e.colno)
    try:
        return InstanceDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = _field_path(tuple(first["loc"]))
        raise InstanceParseError(f"{field}: {first['msg']}", field=field)


def graphs_from_document(doc: InstanceDocument) -> Tuple[ResourceGraph, JobGraph]:
    try:
        rg = ResourceGraph(
            devices=[Device(**d.model_dump()) for d in doc.devices],
            links=[Link(**l.model_dump()) for l in doc.links],
        )
        jg = JobGraph(
            jobs=[Job(**j.model_dump()) for j in doc.jobs],
            deps=[Dependency(**d.model_dump()) for d in doc.deps],
        )
    except ValidationError as e:
        first = e.errors()[0]
        field = _field_path(tuple(first["loc"]))
        raise InstanceParseError(f"{field}: {first['msg']}", field=field)
    return rg, jg


def parse_instance(text: str) -> Tuple[ResourceGraph, JobGraph]:
    return graphs_from_document(load_instance_document(text))


def instance_document(
    rg: ResourceGraph, jg: JobGraph, meta: Optional[Dict[str, Any]] = None
) -> InstanceDocument:
    return InstanceDocument(
        devices=[d.model_dump() for d in rg.devices],
        links=[l.model_dump() for l in rg.links],
        jobs=[j.model_dump() for j in jg.jobs],
        deps=[d.model_dump() for d in jg.deps],
        meta=meta,
    )


def emit_instance(
    rg: ResourceGraph, jg: JobGraph, meta: Optional[Dict[str, Any]] = None
) -> str:
    doc = instance_document(rg, jg, meta)
    return doc.model_dump_json(indent=2, exclude_none=True) + "\n"


def assignment_document(
    assignment: Assignment,
    instance: Instance,
    extra: Optional[Dict[str, Any]] = None,
) -> AssignmentDocument:
    mapping = [
        MappingEntry(job=instance.job_ids[i], device=instance.device_ids[k])
        for i, k in enumerate(assignment.f)
    ]
    return AssignmentDocument(
        mapping=mapping,
        processing_cost=assignment.processing_cost,
        network_cost=assignment.network_cost,
        **(extra or {}),
    )


def emit_assignment(doc: AssignmentDocument) -> str:
    return json.dumps(doc.model_dump(mode="json"), indent=2) + "\n"


def assignment_from_document(doc: AssignmentDocument, instance: Instance) -> Assignment:
    """Re-evaluate an assignment document against a normalized instance.

    A physical device hosting several jobs is resolved to its free virtual
    copies in index order; copies are interchangeable so costs are unaffected.
    """
    if len(doc.mapping) != instance.n:
        raise DimensionMismatchError(
            f"Mapping has {len(doc.mapping)} entries, instance has {instance.n} jobs"
        )
    copies = defaultdict(list)
    for k, device_id in enumerate(instance.device_ids):
        copies[device_id].append(k)
    job_index = {job_id: i for i, job_id in enumerate(instance.job_ids)}

    f = [-1] * instance.n
    for entry in doc.mapping:
        if entry.job not in job_index or not copies.get(entry.device):
            raise DimensionMismatchError(
                f"Mapping entry {entry.job} -> {entry.device} does not fit the instance"
            )
        f[job_index[entry.job]] = copies[entry.device].pop(0)
    return Assignment.evaluate(f, instance)
