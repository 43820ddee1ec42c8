"""Kodaira classification of reducible fibers from intersection data.

A fiber is presented as a formal nonnegative combination of
configuration curves.  Validation checks exactly what makes such a
divisor a genus-one fiber candidate built from (-2)-curves: every
component meets the whole divisor in zero, the support is connected,
and consequently the divisor has square zero.  Classification then
reads the weighted dual graph.  All multiplicity-one validated fibers
are single cycles (type I_n); the starred types are recognized by
matching the weighted graph against the affine diagram templates.

Two classical collisions are resolved by convention and annotated in
the result: a double edge on two components is reported as I2 (type
III has the same dual graph) and a triangle as I3 (type IV likewise).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .lattice import graphs_isomorphic, is_connected
from .surface import Configuration

_PLAIN_SYMBOLS = ("II", "III", "IV", "II*", "III*", "IV*")
_INDEXED_SYMBOLS = ("I", "I*")


@dataclass(frozen=True)
class KodairaType:
    """A Kodaira fiber type symbol, e.g. I8, I*0, IV*."""

    symbol: str
    index: int | None = None

    def __post_init__(self):
        if self.symbol in _PLAIN_SYMBOLS:
            if self.index is not None:
                raise ValueError(f"type {self.symbol} takes no index")
        elif self.symbol in _INDEXED_SYMBOLS:
            if not isinstance(self.index, int) or isinstance(self.index, bool):
                raise ValueError(f"type {self.symbol} needs an integer index")
            if self.symbol == "I" and self.index < 1:
                raise ValueError("type I_n needs n >= 1")
            if self.symbol == "I*" and self.index < 0:
                raise ValueError("type I*_n needs n >= 0")
        else:
            raise ValueError(f"unknown Kodaira symbol {self.symbol!r}")

    @staticmethod
    def I(n: int) -> "KodairaType":
        return KodairaType("I", n)

    @staticmethod
    def I_star(n: int) -> "KodairaType":
        return KodairaType("I*", n)

    @staticmethod
    def plain(symbol: str) -> "KodairaType":
        return KodairaType(symbol)

    def __str__(self) -> str:
        if self.index is None:
            return self.symbol
        if self.symbol == "I":
            return f"I{self.index}"
        return f"I{self.index}*"


def euler_number(kt: KodairaType) -> int:
    if kt.symbol == "I":
        return kt.index
    if kt.symbol == "I*":
        return kt.index + 6
    return {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}[kt.symbol]


def component_count(kt: KodairaType) -> int:
    if kt.symbol == "I":
        return kt.index
    if kt.symbol == "I*":
        return kt.index + 5
    return {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}[kt.symbol]


@dataclass(frozen=True)
class FiberDivisor:
    """Formal positive integer combination of configuration curves."""

    components: Mapping[str, int]

    def __post_init__(self):
        comps = dict(self.components)
        if not comps:
            raise ValueError("a fiber needs at least one component")
        for lab, mult in comps.items():
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
                raise ValueError(f"bad multiplicity {mult!r} at {lab}")
        object.__setattr__(self, "components", comps)

    @staticmethod
    def of(labels: Iterable[str]) -> "FiberDivisor":
        return FiberDivisor({lab: 1 for lab in labels})

    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(self.components))


def map_fiber(fiber: FiberDivisor, curve_map: Mapping[str, str]) -> FiberDivisor:
    """Image of a fiber under a curve relabeling."""
    return FiberDivisor(
        {curve_map[lab]: m for lab, m in fiber.components.items()}
    )


def _canonical_components(
    config: Configuration, fiber: FiberDivisor
) -> dict[str, int]:
    out: dict[str, int] = {}
    for lab, mult in fiber.components.items():
        res = config.resolve(lab)
        if res in out:
            raise ValueError(f"component {res} listed twice (via aliases)")
        out[res] = mult
    return out


def dual_graph(
    config: Configuration, fiber: FiberDivisor
) -> tuple[tuple[str, ...], tuple[tuple[str, str], ...]]:
    """Nodes and edges of the fiber's dual graph.

    Edges are sorted label pairs, repeated according to the
    intersection number of the two components.
    """
    comps = _canonical_components(config, fiber)
    nodes = tuple(sorted(comps))
    edges = []
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            edges.extend([(a, b)] * config.pairing(a, b))
    return nodes, tuple(edges)


@dataclass(frozen=True)
class FiberReport:
    passed: bool
    failures: tuple[dict, ...]


def validate_fiber(config: Configuration, fiber: FiberDivisor) -> FiberReport:
    """Check the fiber-candidate conditions, naming each violation."""
    comps = _canonical_components(config, fiber)
    failures: list[dict] = []
    for lab in comps:
        if config.self_int(lab) != -2:
            failures.append(
                {"kind": "not-a-minus-two-curve", "label": lab,
                 "self": str(config.self_int(lab))}
            )
    for lab in comps:
        against = sum(
            m * config.pairing(b, lab) for b, m in comps.items()
        )
        if against != 0:
            failures.append(
                {"kind": "component-meets-fiber", "label": lab,
                 "value": str(against)}
            )
    square = sum(
        ma * mb * config.pairing(a, b)
        for a, ma in comps.items()
        for b, mb in comps.items()
    )
    if square != 0:
        failures.append({"kind": "fiber-square-nonzero", "value": str(square)})
    adj = {
        a: {b for b in comps if b != a and config.pairing(a, b)} for a in comps
    }
    if not is_connected(adj):
        failures.append({"kind": "support-disconnected"})
    return FiberReport(not failures, tuple(failures))


@dataclass(frozen=True)
class FiberClass:
    fiber_type: KodairaType | None
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    multiplicities: Mapping[str, int]
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", dict(self.multiplicities))

    @property
    def recognized(self) -> bool:
        return self.fiber_type is not None


def _star_templates(count: int):
    """Affine diagram templates with the given component count."""
    templates = []
    n = count - 5
    if n >= 0:
        chain = [f"c{k}" for k in range(n + 1)]
        adj = {c: set() for c in chain}
        for a, b in zip(chain, chain[1:]):
            adj[a].add(b)
            adj[b].add(a)
        for leaf, anchor in (("l1", chain[0]), ("l2", chain[0]),
                             ("l3", chain[-1]), ("l4", chain[-1])):
            adj[leaf] = {anchor}
            adj[anchor].add(leaf)
        mults = {c: 2 for c in chain} | {f"l{k}": 1 for k in range(1, 5)}
        templates.append((KodairaType.I_star(n), adj, mults))
    if count == 7:
        adj = {"z": {"a1", "a2", "a3"}}
        mults = {"z": 3}
        for k in range(1, 4):
            adj[f"a{k}"] = {"z", f"b{k}"}
            adj[f"b{k}"] = {f"a{k}"}
            mults[f"a{k}"] = 2
            mults[f"b{k}"] = 1
        templates.append((KodairaType.plain("IV*"), adj, mults))
    if count == 8:
        chain = [f"p{k}" for k in range(1, 8)]
        marks = [1, 2, 3, 4, 3, 2, 1]
        adj = {c: set() for c in chain}
        for a, b in zip(chain, chain[1:]):
            adj[a].add(b)
            adj[b].add(a)
        adj["q"] = {"p4"}
        adj["p4"].add("q")
        mults = dict(zip(chain, marks)) | {"q": 2}
        templates.append((KodairaType.plain("III*"), adj, mults))
    if count == 9:
        chain = [f"p{k}" for k in range(1, 9)]
        marks = [1, 2, 3, 4, 5, 6, 4, 2]
        adj = {c: set() for c in chain}
        for a, b in zip(chain, chain[1:]):
            adj[a].add(b)
            adj[b].add(a)
        adj["q"] = {"p6"}
        adj["p6"].add("q")
        mults = dict(zip(chain, marks)) | {"q": 3}
        templates.append((KodairaType.plain("II*"), adj, mults))
    return templates


def classify_kodaira(config: Configuration, fiber: FiberDivisor) -> FiberClass:
    """Read the Kodaira type off the weighted dual graph.

    Raises if validation fails.  Returns fiber_type None, with the
    computed graph attached, when the weighted graph matches no type.
    """
    report = validate_fiber(config, fiber)
    if not report.passed:
        raise ValueError(f"not a fiber candidate: {list(report.failures)}")
    comps = _canonical_components(config, fiber)
    nodes, edges = dual_graph(config, fiber)
    notes: list[str] = []

    if all(m == 1 for m in comps.values()):
        # component-meets-fiber zero forces weighted degree 2 at every
        # node here, so the connected support is a single cycle
        n = len(comps)
        if n == 2:
            notes.append("double edge read as a 2-cycle; type III has the same dual graph")
        if n == 3 and len(edges) == 3:
            notes.append("triangle read as a 3-cycle; type IV has the same dual graph")
        return FiberClass(KodairaType.I(n), nodes, edges, comps, tuple(notes))

    simple = all(config.pairing(a, b) <= 1 for i, a in enumerate(nodes) for b in nodes[i + 1 :])
    if simple:
        adj = {
            a: {b for b in nodes if b != a and config.pairing(a, b)}
            for a in nodes
        }
        target_multiset = sorted(comps.values())
        for kt, template_adj, template_mults in _star_templates(len(nodes)):
            if sorted(template_mults.values()) != target_multiset:
                continue
            if graphs_isomorphic(adj, template_adj, comps, template_mults):
                return FiberClass(kt, nodes, edges, comps, tuple(notes))
    return FiberClass(None, nodes, edges, comps, ("no matching fiber type",))


def component_cycle(config: Configuration, fiber: FiberDivisor) -> tuple[str, ...]:
    """Components of an I_n fiber in cyclic order.

    Orientation is canonical: start at the lexicographically smallest
    label and step first to its smaller neighbor.
    """
    fc = classify_kodaira(config, fiber)
    if fc.fiber_type is None or fc.fiber_type.symbol != "I":
        raise ValueError(f"component cycles exist for I_n fibers only, got {fc.fiber_type}")
    nodes = fc.nodes
    if len(nodes) == 2:
        return nodes
    neighbors = {
        a: sorted(b for b in nodes if b != a and config.pairing(a, b))
        for a in nodes
    }
    start = nodes[0]
    walk = [start, neighbors[start][0]]
    while len(walk) < len(nodes):
        prev, here = walk[-2], walk[-1]
        nxt = [b for b in neighbors[here] if b != prev]
        walk.append(nxt[0])
    return tuple(walk)


def shioda_tate_rank(rho: int, fiber_types: Sequence[KodairaType]) -> int:
    """Mordell-Weil rank from the Picard number and the reducible fibers.

    rho = 2 + sum over fibers of (component count - 1) + MW rank; the
    inputs must leave a nonnegative rank.
    """
    used = 2 + sum(component_count(kt) - 1 for kt in fiber_types)
    rank = rho - used
    if rank < 0:
        raise ValueError(
            f"fiber components use rank {used}, exceeding the Picard number {rho}"
        )
    return rank
