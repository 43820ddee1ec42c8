"""Mordell-Weil heights from combinatorial section data.

The height pairing on the group of sections of a genus-one fibration
is computed from exact integer inputs: the Euler characteristic chi,
the intersection of each section with the zero section, and the fiber
component each section meets, encoded per fiber.  Local correction
terms are looked up in the classical contribution tables; only the
fiber types that actually occur here (I_n and IV*) carry a table, and
anything else raises UnsupportedFiberType rather than guessing.

Also here: arithmetic on the cyclic component groups of I_n fibers,
extraction of section data from a curve configuration, and a tiny
calculus of automorphisms of the smooth locus of a fiber, recorded as
(scale on the base coordinate, shift in the component group).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .fibration import FiberDivisor, KodairaType, classify_kodaira, component_cycle
from .scalars import RatFunc
from .surface import Configuration

IDENTITY_COMPONENT = "identity"


class UnsupportedFiberType(Exception):
    """Raised when a contribution table for the fiber type is not implemented."""


@dataclass(frozen=True)
class ModInt:
    """An element of Z/n, used for I_n component groups."""

    value: int
    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 1:
            raise ValueError(f"bad modulus {self.modulus!r}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: "ModInt"):
        if self.modulus != other.modulus:
            raise ValueError(
                f"mixed moduli {self.modulus} and {other.modulus}"
            )

    def __add__(self, other: "ModInt") -> "ModInt":
        self._check(other)
        return ModInt(self.value + other.value, self.modulus)

    def __neg__(self) -> "ModInt":
        return ModInt(-self.value, self.modulus)

    def __sub__(self, other: "ModInt") -> "ModInt":
        return self + (-other)

    def __mul__(self, k: int) -> "ModInt":
        if not isinstance(k, int):
            return NotImplemented
        return ModInt(self.value * k, self.modulus)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True)
class StarBranch:
    """A non-identity simple component of a starred fiber.

    For IV* the three multiplicity-one components other than the
    identity component sit at the ends of the three arms; branch picks
    the arm.  depth is reserved for longer-armed types and must be 1.
    """

    branch: int
    depth: int = 1

    def __post_init__(self):
        if self.branch not in (1, 2, 3):
            raise ValueError(f"branch must be 1..3, got {self.branch!r}")
        if self.depth != 1:
            raise ValueError("only depth 1 components are supported")


Component = Union[ModInt, StarBranch, str]


def _check_component(kt: KodairaType, comp: Component) -> Component:
    if kt.symbol == "I":
        if not isinstance(comp, ModInt):
            raise ValueError(f"I_n components are ModInt, got {comp!r}")
        if comp.modulus != kt.index:
            raise ValueError(
                f"component group of {kt} is Z/{kt.index}, got modulus {comp.modulus}"
            )
        return comp
    if kt.symbol == "IV*":
        if comp == IDENTITY_COMPONENT or isinstance(comp, StarBranch):
            return comp
        raise ValueError(f"IV* components are 'identity' or StarBranch, got {comp!r}")
    raise UnsupportedFiberType(f"no contribution table for fiber type {kt}")


def contribution(kt: KodairaType, comp: Component) -> Fraction:
    """Local height correction of one section at one fiber."""
    comp = _check_component(kt, comp)
    if kt.symbol == "I":
        i, n = comp.value, kt.index
        return Fraction(i * (n - i), n)
    if comp == IDENTITY_COMPONENT:
        return Fraction(0)
    return Fraction(4, 3)


def contribution_pair(kt: KodairaType, a: Component, b: Component) -> Fraction:
    """Local correction of a pair of sections at one fiber."""
    a = _check_component(kt, a)
    b = _check_component(kt, b)
    if kt.symbol == "I":
        i, j = sorted((a.value, b.value))
        return Fraction(i * (kt.index - j), kt.index)
    if a == IDENTITY_COMPONENT or b == IDENTITY_COMPONENT:
        return Fraction(0)
    return Fraction(4, 3) if a == b else Fraction(2, 3)


@dataclass(frozen=True)
class HeightContext:
    """Fibration-level data entering every height computation."""

    chi: int
    fibers: tuple[tuple[str, KodairaType], ...]
    zero_name: str = "O"

    def __post_init__(self):
        if not isinstance(self.chi, int) or self.chi < 1:
            raise ValueError(f"bad Euler characteristic {self.chi!r}")
        fibers = tuple((fid, kt) for fid, kt in self.fibers)
        ids = [fid for fid, _ in fibers]
        if len(set(ids)) != len(ids):
            raise ValueError("fiber ids must be distinct")
        object.__setattr__(self, "fibers", fibers)


@dataclass(frozen=True)
class SectionData:
    """One section: its name, (P.O), and met component per fiber."""

    name: str
    dot_zero: int
    components: Mapping[str, Component] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.dot_zero, int) or self.dot_zero < 0:
            raise ValueError(f"bad intersection number {self.dot_zero!r}")
        object.__setattr__(self, "components", dict(self.components))


def _aligned_components(ctx: HeightContext, P: SectionData):
    have = set(P.components)
    want = {fid for fid, _ in ctx.fibers}
    if have != want:
        raise ValueError(
            f"section {P.name} lists components for {sorted(have)}, "
            f"context has {sorted(want)}"
        )
    return [(kt, P.components[fid]) for fid, kt in ctx.fibers]


def height(ctx: HeightContext, P: SectionData) -> Fraction:
    """Canonical height of a section; the zero section gets 0 by definition."""
    if P.name == ctx.zero_name:
        return Fraction(0)
    total = Fraction(2 * ctx.chi + 2 * P.dot_zero)
    for kt, comp in _aligned_components(ctx, P):
        total -= contribution(kt, comp)
    return total


def height_pair(
    ctx: HeightContext, P: SectionData, Q: SectionData, dot_pq: int
) -> Fraction:
    """Height pairing of two sections, given their intersection number."""
    if P.name == ctx.zero_name or Q.name == ctx.zero_name:
        return Fraction(0)
    total = Fraction(ctx.chi + P.dot_zero + Q.dot_zero - dot_pq)
    pc = _aligned_components(ctx, P)
    qc = _aligned_components(ctx, Q)
    for (kt, a), (_, b) in zip(pc, qc):
        total -= contribution_pair(kt, a, b)
    return total


def is_torsion(ctx: HeightContext, P: SectionData) -> bool:
    return height(ctx, P) == 0


def component_index_sum(indices: Iterable[ModInt]) -> ModInt:
    """Sum in the common component group Z/n; moduli must agree."""
    items = list(indices)
    if not items:
        raise ValueError("empty index sum has no modulus")
    total = items[0]
    for x in items[1:]:
        total = total + x
    return total


# -- section data from a configuration ----------------------------------------------


def section_from_config(
    config: Configuration,
    fibers: Sequence[tuple[str, FiberDivisor]],
    section: str,
    zero: str,
) -> SectionData:
    """Read (P.O) and the per-fiber component indices off the Gram table.

    Only I_n fibers are supported: each fiber is classified, its
    component cycle oriented canonically, and the index is the cyclic
    distance from the zero section's component to the section's.  The
    section must meet exactly one component, once, and must not itself
    be a fiber component.
    """
    components: dict[str, Component] = {}
    for fid, fiber in fibers:
        fc = classify_kodaira(config, fiber)
        if fc.fiber_type is None or fc.fiber_type.symbol != "I":
            raise ValueError(f"fiber {fid} is {fc.fiber_type}, need I_n")
        cycle = component_cycle(config, fiber)
        positions = {}
        for who in (section, zero):
            if config.resolve(who) in fc.nodes:
                raise ValueError(f"{who} is a component of fiber {fid}")
            met = [
                (k, config.pairing(who, lab))
                for k, lab in enumerate(cycle)
                if config.pairing(who, lab) != 0
            ]
            if len(met) != 1 or met[0][1] != 1:
                raise ValueError(
                    f"{who} meets fiber {fid} in {met}, expected one simple point"
                )
            positions[who] = met[0][0]
        n = len(cycle)
        components[fid] = ModInt(positions[section] - positions[zero], n)
    return SectionData(
        section, config.pairing(section, zero), components
    )


# -- automorphisms of the smooth locus ------------------------------------------------


@dataclass(frozen=True)
class SmoothLocusAut:
    """Action on a fiber's smooth locus: base-coordinate scale and component shift."""

    scale: RatFunc
    shift: ModInt

    def __post_init__(self):
        if not isinstance(self.scale, RatFunc):
            raise TypeError("scale must be a rational function")
        if self.scale == RatFunc(0):
            raise ValueError("scale must be invertible")


def compose_smooth_locus(f: SmoothLocusAut, g: SmoothLocusAut) -> SmoothLocusAut:
    """Composite action: scales multiply, shifts add."""
    return SmoothLocusAut(f.scale * g.scale, f.shift + g.shift)


def power(f: SmoothLocusAut, k: int) -> SmoothLocusAut:
    """k-th composition power, any integer k."""
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError("exponent must be an integer")
    return SmoothLocusAut(f.scale ** k, f.shift * k)
