"""Edge-Fog task assignment: LPCF and network-only-cost solvers with a topology simulator."""
