import networkx as nx
import numpy as np

from edgefog.exceptions import UnreachablePairError
from edgefog.schema import ResourceGraph


def resource_network(rg: ResourceGraph) -> nx.Graph:
    """Build a networkx graph keyed by device id with ``cost`` edge weights"""
    graph = nx.Graph()
    for device in rg.devices:
        graph.add_node(device.id, layer=device.layer, power=device.power)
    for link in rg.links:
        graph.add_edge(link.a, link.b, cost=link.cost)
    return graph


def effective_connectivity(rg: ResourceGraph) -> np.ndarray:
    """All-pairs shortest-path closure of the link costs.

    Rows and columns follow the order of ``rg.devices``.

    Raises:
        UnreachablePairError: If some device pair has no connecting path.
    """
    ids = [d.id for d in rg.devices]
    if not ids:
        return np.zeros((0, 0))
    closure = np.asarray(
        nx.floyd_warshall_numpy(resource_network(rg), nodelist=ids, weight="cost"),
        dtype=float,
    )
    unreachable = np.argwhere(~np.isfinite(closure))
    if unreachable.size:
        i, j = unreachable[0]
        raise UnreachablePairError(ids[int(i)], ids[int(j)])
    # floyd_warshall_numpy may leave rounding asymmetry on float costs
    closure = np.minimum(closure, closure.T)
    np.fill_diagonal(closure, 0.0)
    return closure
