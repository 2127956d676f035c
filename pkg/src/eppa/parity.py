"""Solving systems ``s(u) XOR s(v) = c`` over GF(2) by propagation."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Sequence


class ParityConflict(Exception):
    """The constraint system is inconsistent.

    ``cycle`` lists the nodes of a closed walk of constraints whose parities
    sum to 1; ``edge`` is the constraint that closed it.
    """

    def __init__(self, cycle: list, edge: tuple):
        super().__init__(f"odd constraint cycle {cycle}")
        self.cycle = cycle
        self.edge = edge


def _path_to_root(parent: dict, v) -> list:
    path = [v]
    while parent[v] is not None:
        v = parent[v]
        path.append(v)
    return path


def solve_parity(
    nodes: Sequence[Hashable],
    constraints: Iterable[tuple[Hashable, Hashable, int]],
) -> dict:
    """Return an assignment ``node -> 0/1`` satisfying every constraint.

    Components are explored in the order of ``nodes``; the first node of each
    component is assigned 0, which makes the solution canonical.
    Raises :class:`ParityConflict` on an inconsistent system.
    """
    adj: dict = {v: [] for v in nodes}
    for u, v, c in constraints:
        adj[u].append((v, c))
        adj[v].append((u, c))
    value: dict = {}
    parent: dict = {}
    for root in nodes:
        if root in value:
            continue
        value[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, c in adj[u]:
                want = value[u] ^ c
                if v not in value:
                    value[v] = want
                    parent[v] = u
                    queue.append(v)
                elif value[v] != want:
                    pu, pv = _path_to_root(parent, u), _path_to_root(parent, v)
                    common = set(pu) & set(pv)
                    pu = pu[: next(i for i, x in enumerate(pu) if x in common) + 1]
                    pv = pv[: next(i for i, x in enumerate(pv) if x in common)]
                    raise ParityConflict(pu[::-1] + pv, (u, v))
    return value
