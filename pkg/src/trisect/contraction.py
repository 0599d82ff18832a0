"""Sparse tensor-network contraction with a greedy pairwise order.

Tensors are dicts from index tuples to scalars; every wire name appears on
exactly two nodes.  The greedy order repeatedly contracts the pair of
connected nodes whose result has the smallest dense size (product of the
remaining wire dimensions), with a deterministic tie break on node names.
The cap bounds that dense size estimate, not the sparse storage actually
used.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceExceeded
from .scalars import Cyc, is_zero

ONE = Cyc.rational(1)


@dataclass
class Node:
    name: str
    wires: tuple[str, ...]
    data: dict[tuple[int, ...], object]


def _dense_size(wires, dims) -> int:
    size = 1
    for w in wires:
        size *= dims[w]
    return size


def _contract_pair(a: Node, b: Node, dims) -> Node:
    shared = [w for w in a.wires if w in b.wires]
    keep_a = [w for w in a.wires if w not in shared]
    keep_b = [w for w in b.wires if w not in shared]
    pos_sh_a = [a.wires.index(w) for w in shared]
    pos_keep_a = [a.wires.index(w) for w in keep_a]
    pos_sh_b = [b.wires.index(w) for w in shared]
    pos_keep_b = [b.wires.index(w) for w in keep_b]

    buckets: dict[tuple, list] = {}
    for key, val in b.data.items():
        sh = tuple(key[p] for p in pos_sh_b)
        buckets.setdefault(sh, []).append((tuple(key[p] for p in pos_keep_b), val))

    out: dict[tuple[int, ...], object] = {}
    for key, val in a.data.items():
        sh = tuple(key[p] for p in pos_sh_a)
        hits = buckets.get(sh)
        if not hits:
            continue
        left = tuple(key[p] for p in pos_keep_a)
        for right, bval in hits:
            k = left + right
            cur = out.get(k)
            term = val * bval
            new = term if cur is None else cur + term
            if is_zero(new, tol=0.0 if isinstance(new, Cyc) else 1e-14):
                out.pop(k, None)
            else:
                out[k] = new
    return Node(f"({a.name}*{b.name})", tuple(keep_a + keep_b), out)


def _components(nodes: list[Node]) -> list[list[Node]]:
    wire_owner: dict[str, list[int]] = {}
    for i, n in enumerate(nodes):
        for w in n.wires:
            wire_owner.setdefault(w, []).append(i)
    adj: dict[int, set[int]] = {i: set() for i in range(len(nodes))}
    for owners in wire_owner.values():
        for i in owners:
            for j in owners:
                if i != j:
                    adj[i].add(j)
    seen: set[int] = set()
    comps = []
    for i in range(len(nodes)):
        if i in seen:
            continue
        comp, frontier = [], [i]
        seen.add(i)
        while frontier:
            u = frontier.pop()
            comp.append(nodes[u])
            for v in sorted(adj[u]):
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
        comps.append(comp)
    return comps


def contract_network(nodes: list[Node], dims: dict[str, int], cap: int = 10_000_000):
    """Contract to a scalar; factorizes over connected components."""
    total = ONE
    for comp in _components(nodes):
        total = total * _contract_component(comp, dims, cap)
    return total


def _contract_component(nodes: list[Node], dims: dict[str, int], cap: int):
    nodes = sorted(nodes, key=lambda n: n.name)
    while len(nodes) > 1:
        best = None
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                if not any(w in nodes[j].wires for w in nodes[i].wires):
                    continue
                wires = [w for w in nodes[i].wires if w not in nodes[j].wires]
                wires += [w for w in nodes[j].wires if w not in nodes[i].wires]
                cost = _dense_size(wires, dims)
                key = (cost, nodes[i].name, nodes[j].name)
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            raise AssertionError("disconnected nodes inside one component")
        (cost, _, _), i, j = best
        if cost > cap:
            raise ResourceExceeded(cost, cap)
        merged = _contract_pair(nodes[i], nodes[j], dims)
        nodes = [n for k, n in enumerate(nodes) if k not in (i, j)] + [merged]
    final = nodes[0]
    if final.wires:
        raise AssertionError(f"dangling wires {final.wires}")
    return final.data.get((), ONE * 0)
