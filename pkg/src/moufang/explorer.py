"""Closure of a set of Moufang loops under the cyclic and dihedral constructions.

Nodes are isomorphism classes.  Starting from the seeds, every parameter tuple
of every class representative is applied; outputs are sorted into classes by
fingerprint and then by an explicit isomorphism test.  Applications run on a
thread pool, but results are merged one by one in parameter order, so the
graph does not depend on the number of workers.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .constructions import CyclicParams, apply, distance, find_params, params_to_text
from .errors import InvalidParams
from .isomorphism import Fingerprint, fingerprint, is_isomorphic
from .loop import LoopTable, associator_subloop, nucleus, relabel

log = logging.getLogger(__name__)


@dataclass
class Node:
    id: int
    fingerprint: Fingerprint
    table: LoopTable
    seed: bool = False


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    kind: str
    params: str


@dataclass
class ConstructionGraph:
    order: int
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    self_witnesses: int = 0
    applications: int = 0

    @property
    def seeds(self) -> list[int]:
        return [n.id for n in self.nodes if n.seed]

    def neighbours(self) -> dict[int, set]:
        adj = {n.id: set() for n in self.nodes}
        for e in self.edges:
            adj[e.src].add(e.dst)
            adj[e.dst].add(e.src)
        return adj

    def is_symmetric(self) -> bool:
        """Every edge also has a witness in the opposite direction."""
        pairs = {(e.src, e.dst) for e in self.edges}
        return all((b, a) in pairs for a, b in pairs)


@dataclass(frozen=True)
class Outcome:
    table: LoopTable
    fingerprint: Fingerprint
    kind: str
    params: str


class PreservationError(AssertionError):
    pass


def _check(L: LoopTable, out: LoopTable) -> None:
    if not np.array_equal(L.associators, out.associators):
        raise PreservationError("associators changed")
    if not np.array_equal(L.nucleus_mask, out.nucleus_mask):
        raise PreservationError("nucleus changed")
    if distance(L, out).count * 4 != L.order**2:
        raise PreservationError("distance is not n^2/4")
    if not out.is_moufang:
        raise PreservationError("output is not Moufang")


def _outcome(item) -> Outcome:
    p, out = item
    _check(p.loop, out)
    kind = "cyclic" if isinstance(p, CyclicParams) else "dihedral"
    return Outcome(out, fingerprint(out), kind, params_to_text(p))


def default_workers() -> int:
    env = os.environ.get("MOUFANG_JOBS")
    if env and env.isdigit() and int(env) > 0:
        return int(env)
    return 1


def closure(seeds, include_groups: bool = False, workers: int | None = None) -> ConstructionGraph:
    seeds = list(seeds)
    if not seeds:
        return ConstructionGraph(order=0)
    order = seeds[0].order
    if any(s.order != order for s in seeds):
        raise InvalidParams("seeds must have equal order")
    if any(not s.is_moufang for s in seeds):
        raise InvalidParams("seeds must be Moufang")
    workers = workers or default_workers()
    g = ConstructionGraph(order=order)
    buckets: dict[Fingerprint, list[int]] = {}
    by_bytes: dict[bytes, int] = {}

    def identify(table: LoopTable, fp: Fingerprint) -> tuple[int, bool]:
        key = table.table.tobytes()
        if key in by_bytes:
            return by_bytes[key], False
        for nid in buckets.get(fp, []):
            if is_isomorphic(table, g.nodes[nid].table) is not None:
                by_bytes[key] = nid
                return nid, False
        nid = len(g.nodes)
        g.nodes.append(Node(nid, fp, table))
        buckets.setdefault(fp, []).append(nid)
        by_bytes[key] = nid
        return nid, True

    for s in seeds:
        if s.is_associative and not include_groups:
            continue
        nid, _ = identify(s, fingerprint(s))
        g.nodes[nid].seed = True

    seen_edges = set()
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        frontier = 0
        while frontier < len(g.nodes):
            node = g.nodes[frontier]
            frontier += 1
            params = find_params(node.table, dedupe=False)
            # drop tuples producing identical tables before the expensive part
            uniq, seen = [], set()
            for p in params:
                out = apply(p)
                key = out.table.tobytes()
                if key not in seen:
                    seen.add(key)
                    uniq.append((p, out))
            results = pool.map(_outcome, uniq) if pool else map(_outcome, uniq)
            for res in results:
                g.applications += 1
                if res.table.is_associative and not include_groups:
                    continue
                nid, _ = identify(res.table, res.fingerprint)
                if nid == node.id:
                    g.self_witnesses += 1
                    continue
                key = (node.id, nid, res.kind)
                if key not in seen_edges:
                    seen_edges.add(key)
                    g.edges.append(Edge(node.id, nid, res.kind, res.params))
    finally:
        if pool:
            pool.shutdown()
    return g


# ---------------------------------------------------------------- reporting


@dataclass(frozen=True)
class ComponentReport:
    members: tuple
    nucleus: int
    associator_subloop: int

    @property
    def size(self) -> int:
        return len(self.members)


def components(g: ConstructionGraph) -> list[ComponentReport]:
    """Connected components, largest first; members share |N| and |A(L)|."""
    adj = g.neighbours()
    seen = set()
    out = []
    for n in g.nodes:
        if n.id in seen:
            continue
        comp, stack = [], [n.id]
        seen.add(n.id)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comp.sort()
        nuc = {len(nucleus(g.nodes[v].table)) for v in comp}
        asub = {len(associator_subloop(g.nodes[v].table)) for v in comp}
        assert len(nuc) == 1 and len(asub) == 1, "component mixes invariants"
        out.append(ComponentReport(tuple(comp), nuc.pop(), asub.pop()))
    out.sort(key=lambda c: (-c.size, c.members))
    return out


def _stable_ids(g: ConstructionGraph) -> dict[int, int]:
    order = sorted(g.nodes, key=lambda n: (n.fingerprint, n.table.table.tobytes()))
    return {n.id: k for k, n in enumerate(order)}


def export_dot(g: ConstructionGraph) -> str:
    ids = _stable_ids(g)
    lines = [f"digraph G{g.order} {{"]
    for n in sorted(g.nodes, key=lambda n: ids[n.id]):
        fp = n.fingerprint
        label = f"{g.order}:{ids[n.id]} N={fp.nucleus} A={fp.associator_subloop}"
        lines.append(f'  n{ids[n.id]} [label="{label}"];')
    edges = sorted({(ids[e.src], ids[e.dst], e.kind) for e in g.edges})
    for a, b, kind in edges:
        lines.append(f'  n{a} -> n{b} [label="{kind}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def summary(g: ConstructionGraph) -> dict:
    ids = _stable_ids(g)
    comps = components(g)
    return {
        "order": g.order,
        "classes": len(g.nodes),
        "components": [
            {
                "size": c.size,
                "nucleus": c.nucleus,
                "associator_subloop": c.associator_subloop,
                "members": sorted(ids[m] for m in c.members),
            }
            for c in comps
        ],
        "edges": len({(ids[e.src], ids[e.dst]) for e in g.edges}),
        "witnesses": len(g.edges),
        "self_witnesses": g.self_witnesses,
        "applications": g.applications,
        "seeds": sorted(ids[s] for s in g.seeds),
    }


def summary_json(g: ConstructionGraph) -> str:
    return json.dumps(summary(g), indent=2) + "\n"


def describe(g: ConstructionGraph) -> str:
    comps = components(g)
    word = "component" if len(comps) == 1 else "components"
    sizes = ", ".join(f"{c.size} (|N|={c.nucleus}, |A|={c.associator_subloop})" for c in comps)
    return f"{len(g.nodes)} classes, {len(comps)} {word}: {sizes}"


def distance_spot_check(g: ConstructionGraph, samples: int = 1000, seed: int = 0) -> dict:
    """Distances between representatives of different classes under random
    relabelings.  Evidence only: the minimum over all labelings is not searched."""
    rng = np.random.default_rng(seed)
    n = g.order
    reps = [node.table for node in g.nodes]
    if len(reps) < 2:
        return {"samples": 0, "min_distance": None, "quarter": n * n // 4}
    best = None
    for _ in range(samples):
        i, j = rng.choice(len(reps), size=2, replace=False)
        perm = np.concatenate([[0], 1 + rng.permutation(n - 1)])
        d = distance(reps[i], relabel(reps[j], perm)).count
        best = d if best is None else min(best, d)
    log.info("distance spot check: min %s over %s samples (n^2/4 = %s)", best, samples, n * n // 4)
    return {"samples": samples, "min_distance": best, "quarter": n * n // 4}
