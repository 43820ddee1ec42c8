"""Curve configurations with exact intersection pairings.

The objects here are finite labeled sets of rational curves on a
surface together with their integer intersection table and a few named
points.  Three constructions are provided: the 24-curve double Kummer
pencil configuration on a K3 surface (two quadruples of sections and
the sixteen exceptional curves), its extension by four more rational
curves meeting the diagonal part of the grid, and the quotient
configuration on the Enriques surface obtained from the free
involution that swaps the two pencils.  A blow-up ledger tracks
exceptional classes and canonical-class multiples through one or two
further blow-ups of the quotient.

Everything is exact and everything is checkable: intersection numbers
are integers, coordinates of marked points are elements of Q(t, s) or
the point at infinity, and the quotient intersection rule is the
double-cover pushforward (A.B) = (pull A . pull B)/2, whose required
parity is verified rather than assumed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .lattice import GramLattice, Mat, _check_gram
from .scalars import INFINITY, ProjValue, RatFunc

SURFACE_CHI = {"X_K3": 2, "Z_Enriques": 1}

# affine parameter values of the four special members of each pencil
PENCIL_X = (
    ProjValue.finite(RatFunc(1)),
    ProjValue.finite(RatFunc.var("t")),
    INFINITY,
    ProjValue.finite(RatFunc(0)),
)
PENCIL_U = (
    ProjValue.finite(RatFunc(1)),
    ProjValue.finite(RatFunc.var("s")),
    INFINITY,
    ProjValue.finite(RatFunc(0)),
)

_E_RE = re.compile(r"^E([1-4])$")
_F_RE = re.compile(r"^F([1-4])$")
_C2_RE = re.compile(r"^C([1-4])([1-4])$")
_C1_RE = re.compile(r"^C([1-4])$")


@dataclass(frozen=True)
class Marking:
    """A named point on one or more configuration curves.

    ``on`` maps each incident curve label to the point's affine
    coordinate along that curve (an exact element of Q(t, s), or the
    point at infinity), or to None when the construction does not pin
    the coordinate down.
    """

    label: str
    on: Mapping[str, ProjValue | None]

    def __post_init__(self):
        if not self.label:
            raise ValueError("marking needs a label")
        on = dict(self.on)
        if not on:
            raise ValueError(f"marking {self.label} lies on no curve")
        for curve, coord in on.items():
            if coord is not None and not isinstance(coord, ProjValue):
                raise TypeError(f"coordinate of {self.label} on {curve} not projective")
        object.__setattr__(self, "on", on)

    def curves(self) -> tuple[str, ...]:
        return tuple(sorted(self.on))


@dataclass(frozen=True)
class Configuration:
    """Labeled curves with an exact symmetric intersection table."""

    tag: str
    chi: int
    labels: tuple[str, ...]
    gram: Mat
    markings: Mapping[str, Marking] = field(default_factory=dict)
    aliases: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.tag not in SURFACE_CHI:
            raise ValueError(f"unknown surface tag {self.tag!r}")
        if self.chi != SURFACE_CHI[self.tag]:
            raise ValueError(f"chi {self.chi} wrong for {self.tag}")
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels) or not labels:
            raise ValueError("curve labels must be nonempty and distinct")
        gram = _check_gram(self.gram)
        if len(gram) != len(labels):
            raise ValueError("Gram size does not match label count")
        for i in range(len(labels)):
            for j in range(len(labels)):
                if i != j and gram[i][j] < 0:
                    raise ValueError(
                        f"distinct curves {labels[i]}, {labels[j]} meet negatively"
                    )
        if self.tag == "X_K3":
            for i, lab in enumerate(labels):
                if gram[i][i] != -2:
                    raise ValueError(f"curve {lab} on a K3 configuration must be a (-2)-curve")
        aliases = dict(self.aliases)
        for alias, target in aliases.items():
            if alias in labels:
                raise ValueError(f"alias {alias} shadows a curve label")
            if target not in labels:
                raise ValueError(f"alias {alias} points at unknown curve {target}")
        markings = dict(self.markings)
        for key, m in markings.items():
            if key != m.label:
                raise ValueError(f"marking key {key} does not match label {m.label}")
            for curve in m.on:
                if curve not in labels and curve not in aliases:
                    raise ValueError(f"marking {key} lies on unknown curve {curve}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "markings", markings)
        object.__setattr__(self, "aliases", aliases)

    # -- lookups -------------------------------------------------------

    def resolve(self, label: str) -> str:
        if label in self.aliases:
            return self.aliases[label]
        if label not in self.labels:
            raise KeyError(f"no curve labeled {label}")
        return label

    def index(self, label: str) -> int:
        return self.labels.index(self.resolve(label))

    def pairing(self, a: str, b: str) -> int:
        return self.gram[self.index(a)][self.index(b)]

    def self_int(self, a: str) -> int:
        i = self.index(a)
        return self.gram[i][i]

    def marking_coord(self, point: str, curve: str) -> ProjValue | None:
        m = self.markings[point]
        curve = self.resolve(curve)
        for c, coord in m.on.items():
            if self.resolve(c) == curve:
                return coord
        raise KeyError(f"marking {point} does not lie on {curve}")

    def gram_lattice(self) -> GramLattice:
        return GramLattice(self.gram)

    def to_json_dict(self) -> dict:
        pairs = []
        for i, a in enumerate(self.labels):
            for j in range(i + 1, len(self.labels)):
                if self.gram[i][j]:
                    pairs.append([a, self.labels[j], str(self.gram[i][j])])
        return {
            "surface": self.tag,
            "chi": str(self.chi),
            "curves": [
                {"label": lab, "self": str(self.gram[i][i])}
                for i, lab in enumerate(self.labels)
            ],
            "pairing": pairs,
            "markings": [
                {
                    "label": m.label,
                    "on": {c: (None if v is None else str(v)) for c, v in sorted(m.on.items())},
                }
                for _, m in sorted(self.markings.items())
            ],
            "aliases": dict(sorted(self.aliases.items())),
        }


def with_intersection(config: Configuration, a: str, b: str, value: int) -> Configuration:
    """Copy of the configuration with one intersection number replaced.

    Exists to exercise failure paths: downstream verifications must
    notice and name the altered pair.
    """
    i, j = config.index(a), config.index(b)
    rows = [list(r) for r in config.gram]
    rows[i][j] = rows[j][i] = value
    return Configuration(
        config.tag,
        config.chi,
        config.labels,
        tuple(tuple(r) for r in rows),
        config.markings,
        config.aliases,
    )


# -- the K3 configurations -----------------------------------------------------


def build_double_kummer() -> Configuration:
    """The 24-curve double Kummer pencil configuration.

    Curves: sections E1..E4 and F1..F4 of the two genus-one pencils
    and the sixteen exceptional curves C11..C44; all of self-intersection
    -2.  Cij meets exactly Ej and Fi, once each; no other distinct pair
    meets.  Marked points: Pij = Ej . Cij with affine coordinate
    x = 1, t, infinity, 0 as i = 1..4, and P'ij = Fi . Cij with
    u = 1, s, infinity, 0 as j = 1..4.
    """
    labels = (
        [f"E{j}" for j in range(1, 5)]
        + [f"F{i}" for i in range(1, 5)]
        + [f"C{i}{j}" for i in range(1, 5) for j in range(1, 5)]
    )
    pos = {lab: k for k, lab in enumerate(labels)}
    n = len(labels)
    gram = [[0] * n for _ in range(n)]
    for lab in labels:
        gram[pos[lab]][pos[lab]] = -2

    def set_pair(a, b, v):
        gram[pos[a]][pos[b]] = gram[pos[b]][pos[a]] = v

    for i in range(1, 5):
        for j in range(1, 5):
            set_pair(f"E{j}", f"C{i}{j}", 1)
            set_pair(f"F{i}", f"C{i}{j}", 1)

    markings = {}
    for i in range(1, 5):
        for j in range(1, 5):
            p = f"P{i}{j}"
            markings[p] = Marking(p, {f"E{j}": PENCIL_X[i - 1], f"C{i}{j}": None})
            q = f"P'{i}{j}"
            markings[q] = Marking(q, {f"F{i}": PENCIL_U[j - 1], f"C{i}{j}": None})

    return Configuration(
        "X_K3", 2, tuple(labels), tuple(tuple(r) for r in gram), markings
    )


def extend_with_conics(config: Configuration) -> Configuration:
    """Adjoin the four extra rational curves C1..C4 to the grid.

    Ci meets Ei and Fi once, is disjoint from the other sections and
    from every off-diagonal Ckj, misses its own Cii, and meets each
    other diagonal curve Cjj twice.  The pairings against the diagonal
    are forced by constancy of the pencil fiber classes
    2Fk + sum_j Ckj: pairing any curve with a fiber class is
    independent of the chosen fiber.  One marked point per curve:
    Pi = Ci . Fi, with the coordinate u = t recorded for i = 2 only.
    """
    if config != build_double_kummer():
        raise ValueError("expected the 24-curve double Kummer configuration")
    labels = list(config.labels) + [f"C{i}" for i in range(1, 5)]
    pos = {lab: k for k, lab in enumerate(labels)}
    n = len(labels)
    gram = [[0] * n for _ in range(n)]
    for i, row in enumerate(config.gram):
        for j, v in enumerate(row):
            gram[i][j] = v

    def set_pair(a, b, v):
        gram[pos[a]][pos[b]] = gram[pos[b]][pos[a]] = v

    for i in range(1, 5):
        ci = f"C{i}"
        gram[pos[ci]][pos[ci]] = -2
        set_pair(ci, f"E{i}", 1)
        set_pair(ci, f"F{i}", 1)
        for j in range(1, 5):
            if j != i:
                set_pair(ci, f"C{j}{j}", 2)

    markings = dict(config.markings)
    for i in range(1, 5):
        p = f"P{i}"
        coord = ProjValue.finite(RatFunc.var("t")) if i == 2 else None
        markings[p] = Marking(p, {f"F{i}": coord, f"C{i}": None})

    return Configuration(
        "X_K3", 2, tuple(labels), tuple(tuple(r) for r in gram), markings
    )


# -- isometries -----------------------------------------------------------------


@dataclass(frozen=True)
class IsometryPerm:
    """A permutation of curve labels, optionally acting on markings."""

    curve_map: Mapping[str, str]
    point_map: Mapping[str, str] | None = None
    involution: bool = False

    def __post_init__(self):
        object.__setattr__(self, "curve_map", dict(self.curve_map))
        if self.point_map is not None:
            object.__setattr__(self, "point_map", dict(self.point_map))

    def apply(self, label: str) -> str:
        return self.curve_map[label]

    def fixed_labels(self) -> tuple[str, ...]:
        return tuple(sorted(a for a, b in self.curve_map.items() if a == b))


@dataclass(frozen=True)
class IsometryReport:
    passed: bool
    failures: tuple[dict, ...]
    fixed_labels: tuple[str, ...]


def theta_identity(config: Configuration) -> IsometryPerm:
    """The identity isometry; every configuration curve is fixed."""
    return IsometryPerm(
        {lab: lab for lab in config.labels},
        {p: p for p in config.markings},
        involution=True,
    )


def epsilon_involution(config: Configuration) -> IsometryPerm:
    """The pencil-swapping involution on the extended configuration.

    Ei <-> Fi, Cij <-> Cji for i != j, and Cii <-> Ci.  On markings:
    Pij -> P'ji and P'ij -> Pji for i != j, Pii -> Pi and Pi -> Pii.
    The image of P'ii carries no marking label, so the point map is
    partial there.
    """
    needed = {f"C{i}" for i in range(1, 5)}
    if not needed <= set(config.labels):
        raise ValueError("the involution needs the extended configuration with C1..C4")
    curve_map: dict[str, str] = {}
    for lab in config.labels:
        if m := _E_RE.match(lab):
            curve_map[lab] = f"F{m.group(1)}"
        elif m := _F_RE.match(lab):
            curve_map[lab] = f"E{m.group(1)}"
        elif m := _C2_RE.match(lab):
            i, j = m.groups()
            curve_map[lab] = f"C{i}" if i == j else f"C{j}{i}"
        elif m := _C1_RE.match(lab):
            i = m.group(1)
            curve_map[lab] = f"C{i}{i}"
        else:
            raise ValueError(f"unexpected curve label {lab}")
    point_map: dict[str, str] = {}
    for p in config.markings:
        if m := re.match(r"^P([1-4])([1-4])$", p):
            i, j = m.groups()
            point_map[p] = f"P{i}" if i == j else f"P'{j}{i}"
        elif m := re.match(r"^P'([1-4])([1-4])$", p):
            i, j = m.groups()
            if i != j:
                point_map[p] = f"P{j}{i}"
        elif m := re.match(r"^P([1-4])$", p):
            i = m.group(1)
            point_map[p] = f"P{i}{i}"
    return IsometryPerm(curve_map, point_map, involution=True)


def verify_isometry(config: Configuration, perm: IsometryPerm) -> IsometryReport:
    """Check that a label permutation preserves the intersection table.

    Also checks bijectivity, the declared involution property, and,
    when a point map is given, that each mapped marking lands on a
    marking lying on exactly the image curves.  Failures name the
    offending pair or label.
    """
    failures: list[dict] = []
    labels = set(config.labels)
    cm = perm.curve_map
    if set(cm) != labels or set(cm.values()) != labels:
        failures.append(
            {
                "kind": "not-a-permutation",
                "missing": sorted(labels - set(cm)),
                "extra": sorted(set(cm) - labels),
            }
        )
        return IsometryReport(False, tuple(failures), perm.fixed_labels())
    for i, a in enumerate(config.labels):
        for b in config.labels[i:]:
            before = config.pairing(a, b)
            after = config.pairing(cm[a], cm[b])
            if before != after:
                failures.append(
                    {
                        "kind": "pairing-not-preserved",
                        "pair": [a, b],
                        "image": [cm[a], cm[b]],
                        "before": str(before),
                        "after": str(after),
                    }
                )
    if perm.involution:
        for a in config.labels:
            if cm[cm[a]] != a:
                failures.append({"kind": "not-an-involution", "label": a})
    if perm.point_map is not None:
        for p, q in perm.point_map.items():
            if p not in config.markings or q not in config.markings:
                failures.append({"kind": "unknown-marking", "pair": [p, q]})
                continue
            src = {config.resolve(c) for c in config.markings[p].on}
            dst = {config.resolve(c) for c in config.markings[q].on}
            if {cm[c] for c in src} != dst:
                failures.append(
                    {"kind": "marking-incidence-not-preserved", "pair": [p, q]}
                )
    return IsometryReport(not failures, tuple(failures), perm.fixed_labels())


# -- quotient --------------------------------------------------------------------


def quotient_pushforward(config: Configuration, eps: IsometryPerm) -> Configuration:
    """Configuration of orbit curves on the free quotient.

    Orbits: Hj = {Ej, Fj}, the off-diagonal D-curves {Cij, Cji}
    (canonical label D<max><min>, with the reversed spelling accepted
    as an alias), and Dii = {Cii, Ci}.  Intersections follow the
    double-cover rule (A.B) = (pull A . pull B)/2; the division must
    be exact, and a parity failure raises.  Markings Qij are pushed
    down from Pij with their coordinates along the section curves.
    """
    report = verify_isometry(config, eps)
    if not report.passed:
        raise ValueError("the involution fails the isometry check")
    if report.fixed_labels:
        raise ValueError(f"not free on curves: fixes {report.fixed_labels}")

    orbits: dict[str, tuple[str, ...]] = {}
    aliases: dict[str, str] = {}
    seen: set[str] = set()
    for lab in config.labels:
        if lab in seen:
            continue
        other = eps.apply(lab)
        seen.update({lab, other})
        pair = {lab, other}
        es = [m.group(1) for x in pair if (m := _E_RE.match(x))]
        cs2 = [m.groups() for x in pair if (m := _C2_RE.match(x))]
        if es:
            name = f"H{es[0]}"
        elif len(cs2) == 2:
            i, j = cs2[0]
            name = f"D{max(i, j)}{min(i, j)}"
            aliases[f"D{min(i, j)}{max(i, j)}"] = name
        elif len(cs2) == 1:
            i, j = cs2[0]
            if i != j:
                raise ValueError(f"unexpected orbit {sorted(pair)}")
            name = f"D{i}{i}"
        else:
            raise ValueError(f"unexpected orbit {sorted(pair)}")
        orbits[name] = tuple(sorted(pair))

    z_labels = tuple(sorted(n for n in orbits if n.startswith("H"))) + tuple(
        sorted(n for n in orbits if n.startswith("D"))
    )

    def push_pair(na: str, nb: str) -> int:
        total = 0
        for a in orbits[na]:
            for b in orbits[nb]:
                total += config.pairing(a, b)
        if total % 2:
            raise ValueError(f"pushforward parity violated at ({na}, {nb})")
        return total // 2

    gram = tuple(
        tuple(push_pair(na, nb) for nb in z_labels) for na in z_labels
    )

    orbit_of = {lab: name for name, pair in orbits.items() for lab in pair}
    markings: dict[str, Marking] = {}
    for p, m in config.markings.items():
        pm = re.match(r"^P([1-4])([1-4])$", p)
        if not pm:
            continue
        i, j = pm.groups()
        q = f"Q{i}{j}"
        on: dict[str, ProjValue | None] = {}
        for curve, coord in m.on.items():
            on[orbit_of[curve]] = coord
        markings[q] = Marking(q, on)

    return Configuration("Z_Enriques", 1, z_labels, gram, markings, aliases)


def unique_fixed_component(
    config: Configuration, point: str, fixed_curves: Iterable[str]
) -> str:
    """The single curve from a given fixed locus through a marked point.

    Raises when the point lies on zero or on two or more of the listed
    curves; the caller supplies the fixed locus (for the 24-curve K3
    configuration that is all of E1..E4, F1..F4).
    """
    if point not in config.markings:
        raise KeyError(f"no marking {point}")
    fixed = {config.resolve(c) for c in fixed_curves}
    through = sorted(
        {config.resolve(c) for c in config.markings[point].on} & fixed
    )
    if len(through) != 1:
        raise ValueError(
            f"point {point} lies on {len(through)} fixed curves {through}, expected 1"
        )
    return through[0]


# -- blow-up ledger ----------------------------------------------------------------


@dataclass(frozen=True)
class BlowupLedger:
    """Exceptional-class bookkeeping for one or two blow-ups of Z.

    Stage one blows up the marked point named by ``first_center``;
    stage two additionally blows up three distinct points on the first
    exceptional curve.  Those three points are abstract labels: only
    their distinctness and position are used, so no coordinates are
    stored.  Classes live in the orthogonal exceptional basis with
    self-intersection -1 each; proper transforms are differences.
    """

    base: Configuration
    first_center: str
    second_centers: tuple[str, ...] = ()

    def __post_init__(self):
        if self.base.tag != "Z_Enriques":
            raise ValueError("ledger base must be the quotient configuration")
        if self.first_center not in self.base.markings:
            raise ValueError(f"first center {self.first_center} is not a marking")
        centers = tuple(self.second_centers)
        if centers and (len(centers) != 3 or len(set(centers)) != 3):
            raise ValueError("stage two takes exactly three distinct centers")
        object.__setattr__(self, "second_centers", centers)

    @property
    def stage(self) -> int:
        return 2 if self.second_centers else 1

    @staticmethod
    def _exc_name(center: str) -> str:
        return "E" + center[1:] if center.startswith("Q") else f"E_{center}"

    def exceptional_labels(self) -> tuple[str, ...]:
        if self.stage == 1:
            return ("E_inf",)
        return ("E_inf'",) + tuple(self._exc_name(c) for c in self.second_centers)

    def class_vector(self, label: str) -> tuple[int, ...]:
        """Coordinates in the orthogonal total-transform basis."""
        if self.stage == 1:
            if label == "E_inf":
                return (1,)
        else:
            names = self.exceptional_labels()
            if label == "E_inf'":
                return (1, -1, -1, -1)
            if label in names[1:]:
                k = names[1:].index(label)
                return tuple(int(m == k + 1) for m in range(4))
        raise KeyError(f"no exceptional class {label}")

    def self_intersection(self, label: str) -> int:
        v = self.class_vector(label)
        return -sum(x * x for x in v)


def canonical_multiple(ledger: BlowupLedger, m: int) -> dict[str, int]:
    """m-th canonical multiple of the blown-up surface, in exceptional classes.

    The canonical class of the base is 2-torsion, so even multiples of
    it vanish and mK of the blow-up is supported on the exceptional
    curves: each blow-up adds its exceptional curve to K, and pulling
    the first exceptional curve through the second stage turns it into
    the proper transform plus the three new curves, giving coefficient
    pattern (m; 2m, 2m, 2m) at stage two and (m) at stage one.
    """
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError("multiple must be an integer")
    if m % 2:
        raise ValueError(
            "odd multiples are not divisor classes here: the base canonical "
            "class is nonzero 2-torsion, so only even multiples of it vanish"
        )
    if m == 0:
        return {}
    names = ledger.exceptional_labels()
    if ledger.stage == 1:
        return {names[0]: m}
    out = {names[0]: m}
    for name in names[1:]:
        out[name] = 2 * m
    return out


def standard_blowup_ledger(z_config: Configuration) -> BlowupLedger:
    """Two-stage ledger over the marked point Q32 with abstract second centers."""
    return BlowupLedger(z_config, "Q32", ("Q321", "Q322", "Q323"))
