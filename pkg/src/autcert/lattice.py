"""Integer lattices: Hermite form, kernels, signatures, and root types.

A lattice is presented by an integer Gram matrix on an explicit basis.
Membership, kernels, and orthogonal complements are computed by
unimodular row reduction over the integers, so every positive answer
comes with an integer witness the caller can recheck by hand; the
negative answers follow from divisibility obstructions in the Hermite
form.  Signatures are computed by symmetric congruence over exact
rationals, and small root lattices are recognized by their Dynkin
diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import matrix_rank_det

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"integer entry expected, got {x!r}")
    return x


def _int_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    out = [[_as_int(x) for x in row] for row in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def _check_gram(gram: Sequence[Sequence[int]]) -> Mat:
    G = _int_rows(gram)
    n = len(G)
    if any(len(row) != n for row in G):
        raise ValueError("Gram matrix must be square")
    for i in range(n):
        for j in range(i):
            if G[i][j] != G[j][i]:
                raise ValueError(f"Gram matrix not symmetric at ({i},{j})")
    return tuple(tuple(row) for row in G)


def dot(v: Sequence[int], w: Sequence[int]) -> int:
    if len(v) != len(w):
        raise ValueError("length mismatch")
    return sum(a * b for a, b in zip(v, w))


def pairing(gram: Sequence[Sequence[int]], v: Sequence[int], w: Sequence[int]) -> int:
    return dot(v, [dot(row, w) for row in gram])


def negated(gram: Sequence[Sequence[int]]) -> Mat:
    return tuple(tuple(-x for x in row) for row in gram)


# -- Hermite normal form -----------------------------------------------------


def _row_sub(M: list[list[int]], i: int, r: int, q: int) -> None:
    M[i] = [a - q * b for a, b in zip(M[i], M[r])]


def hnf(rows: Sequence[Sequence[int]]) -> tuple[Mat, Mat]:
    """Row Hermite normal form with transformation record.

    Returns (H, U) with H = U * rows, U unimodular.  Pivots are
    positive and strictly to the right of the pivots above them,
    entries above a pivot are reduced into [0, pivot), and zero rows
    sit at the bottom.  H depends only on the row span, so it serves
    as a canonical presentation of the lattice the rows generate.
    """
    A = _int_rows(rows)
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][c]))
            if i0 != r:
                A[r], A[i0] = A[i0], A[r]
                U[r], U[i0] = U[i0], U[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    _row_sub(A, i, r, q)
                    _row_sub(U, i, r, q)
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < m and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-v for v in A[r]]
                U[r] = [-v for v in U[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    _row_sub(A, i, r, q)
                    _row_sub(U, i, r, q)
            r += 1
    return tuple(tuple(row) for row in A), tuple(tuple(row) for row in U)


def z_span_membership(
    gens: Sequence[Sequence[int]], target: Sequence[int]
) -> Vec | None:
    """Integer coefficients writing target in the span of gens, or None.

    A returned witness c satisfies sum(c[i] * gens[i]) == target exactly;
    None means the Hermite form of the generators obstructs the solve
    (a divisibility failure or an unreachable coordinate).
    """
    t = [_as_int(x) for x in target]
    G = _int_rows(gens)
    if not G:
        return () if not any(t) else None
    if len(G[0]) != len(t):
        raise ValueError("target length does not match generators")
    H, U = hnf(G)
    res = list(t)
    ys: list[int] = []
    for row in H:
        p = next((j for j, v in enumerate(row) if v), None)
        if p is None:
            break
        q, rem = divmod(res[p], row[p])
        if rem:
            return None
        ys.append(q)
        res = [a - q * b for a, b in zip(res, row)]
    if any(res):
        return None
    witness = [0] * len(G)
    for y, urow in zip(ys, U):
        witness = [w + y * u for w, u in zip(witness, urow)]
    combo = [0] * len(t)
    for c, g in zip(witness, G):
        combo = [a + c * b for a, b in zip(combo, g)]
    if combo != t:
        raise ArithmeticError("membership witness failed re-verification")
    return tuple(witness)


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[Vec]:
    """Basis of the full integer kernel {x : rows @ x = 0}.

    The basis rows come from the unimodular transform of the Hermite
    form of the transpose, so they generate the kernel saturated in
    the ambient lattice, not merely a finite-index subgroup.
    """
    A = _int_rows(rows)
    if not A:
        raise ValueError("kernel of an empty matrix is ambient; pass rows")
    n = len(A[0])
    T = [[A[i][j] for i in range(len(A))] for j in range(n)]
    H, U = hnf(T)
    return [tuple(u) for h, u in zip(H, U) if not any(h)]


def orth_complement(
    gram: Sequence[Sequence[int]], indices: Sequence[int]
) -> tuple[list[Vec], Mat]:
    """Saturated orthogonal complement of chosen basis vectors.

    Returns (basis, induced) where basis spans {x : <e_i, x> = 0 for
    the chosen i} and induced is the Gram matrix of the pairing
    restricted to that basis.
    """
    G = _check_gram(gram)
    idx = sorted(set(indices))
    if any(i < 0 or i >= len(G) for i in idx):
        raise ValueError("index out of range")
    if not idx:
        basis = [tuple(int(i == j) for j in range(len(G))) for i in range(len(G))]
    else:
        basis = integer_kernel([G[i] for i in idx])
    induced = tuple(tuple(pairing(G, v, w) for w in basis) for v in basis)
    return basis, induced


# -- signatures ---------------------------------------------------------------


def signature(gram: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia by symmetric congruence.

    Diagonalizes over the rationals with paired row and column
    operations; an all-zero diagonal block with a surviving
    off-diagonal entry is broken by adding one basis vector to
    another, which works in characteristic zero.
    """
    G = _check_gram(gram)
    n = len(G)
    M = [[Fraction(v) for v in row] for row in G]
    pos = neg = zero = 0
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][i]), None)
        if p is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if M[i][j]),
                None,
            )
            if pair is None:
                zero += n - k
                break
            i, j = pair
            for t in range(n):
                M[i][t] += M[j][t]
            for t in range(n):
                M[t][i] += M[t][j]
            p = i
        if p != k:
            M[k], M[p] = M[p], M[k]
            for row in M:
                row[k], row[p] = row[p], row[k]
        d = M[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if M[i][k]:
                f = M[i][k] / d
                for t in range(n):
                    M[i][t] -= f * M[k][t]
                for t in range(n):
                    M[t][i] -= f * M[t][k]
    return pos, neg, zero


def gram_rank(gram: Sequence[Sequence[int]]) -> int:
    rank, _ = matrix_rank_det(_check_gram(gram))
    return rank


# -- binary form reduction ----------------------------------------------------


def gauss_reduce_rank2(gram: Sequence[Sequence[int]]) -> Mat:
    """Canonical reduced form of a positive definite binary Gram matrix.

    Gauss reduction: returns [[a, b], [b, c]] with 2*|b| <= a <= c and
    b <= 0, a complete invariant of the lattice up to isometry.
    """
    G = _check_gram(gram)
    if len(G) != 2:
        raise ValueError("rank-2 reduction takes a 2x2 Gram matrix")
    a, b, c = G[0][0], G[0][1], G[1][1]
    if a <= 0 or a * c - b * b <= 0:
        raise ValueError("form is not positive definite")
    while True:
        if a > c:
            a, c = c, a
        # e2 -> e2 + k*e1 with k the nearest integer to -b/a
        k = (2 * (-b) + a) // (2 * a) if b <= 0 else -((2 * b + a) // (2 * a))
        if k:
            c = c + 2 * k * b + k * k * a
            b = b + k * a
        if 2 * abs(b) <= a <= c:
            break
    b = -abs(b)
    return ((a, b), (b, c))


# -- Dynkin diagrams ----------------------------------------------------------


@dataclass(frozen=True)
class RootType:
    """An irreducible simply laced root lattice type, e.g. RootType("E", 6)."""

    family: str
    rank: int

    def __post_init__(self):
        ok = (
            (self.family == "A" and self.rank >= 1)
            or (self.family == "D" and self.rank >= 4)
            or (self.family == "E" and self.rank in (6, 7, 8))
        )
        if not ok:
            raise ValueError(f"no root lattice {self.family}{self.rank}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def cartan_A(n: int) -> Mat:
    return _chain_cartan(n, extra=None)


def cartan_D(n: int) -> Mat:
    if n < 4:
        raise ValueError("D requires rank >= 4")
    return _chain_cartan(n, extra=(n - 3, n - 1))


def cartan_E(n: int) -> Mat:
    if n not in (6, 7, 8):
        raise ValueError("E requires rank 6, 7, or 8")
    return _chain_cartan(n, extra=(2, n - 1))


def _chain_cartan(n: int, extra: tuple[int, int] | None) -> Mat:
    if n < 1:
        raise ValueError("rank must be positive")
    G = [[2 * int(i == j) for j in range(n)] for i in range(n)]
    chain = n - 1 if extra is None else n - 2
    for i in range(chain):
        G[i][i + 1] = G[i + 1][i] = -1
    if extra is not None:
        i, j = extra
        G[i][j] = G[j][i] = -1
    return tuple(tuple(row) for row in G)


def cartan_matrix(root_type: RootType) -> Mat:
    builder = {"A": cartan_A, "D": cartan_D, "E": cartan_E}[root_type.family]
    return builder(root_type.rank)


E6_IN_E8_NODES = (0, 1, 2, 3, 4, 7)  # sub-diagram of cartan_E(8) of type E6


def adjacency_from_gram(gram: Sequence[Sequence[int]]) -> dict[int, set[int]]:
    G = _check_gram(gram)
    n = len(G)
    return {
        i: {j for j in range(n) if j != i and G[i][j]} for i in range(n)
    }


def is_connected(adj: Mapping[object, Iterable[object]]) -> bool:
    nodes = list(adj)
    if not nodes:
        return True
    seen = {nodes[0]}
    frontier = [nodes[0]]
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == len(nodes)


def graphs_isomorphic(
    adj_a: Mapping[object, Iterable[object]],
    adj_b: Mapping[object, Iterable[object]],
    labels_a: Mapping[object, object] | None = None,
    labels_b: Mapping[object, object] | None = None,
) -> bool:
    """Backtracking isomorphism test for small simple graphs.

    Optional node labels must match under the mapping.  Intended for
    diagrams of at most a dozen nodes; the degree and label prescreen
    keeps the search shallow there.
    """
    A = {v: set(ws) for v, ws in adj_a.items()}
    B = {v: set(ws) for v, ws in adj_b.items()}
    la = labels_a or {}
    lb = labels_b or {}
    if len(A) != len(B):
        return False

    def key(adj, labels, v):
        return (len(adj[v]), labels.get(v))

    def sortable(k):
        return (k[0], repr(k[1]))

    if sorted((sortable(key(A, la, v)) for v in A)) != sorted(
        sortable(key(B, lb, v)) for v in B
    ):
        return False
    order = sorted(A, key=lambda v: -len(A[v]))
    bs = list(B)

    def extend(i: int, assign: dict) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in bs:
            if w in assign.values():
                continue
            if key(A, la, v) != key(B, lb, w):
                continue
            ok = True
            for u in order[:i]:
                if (u in A[v]) != (assign[u] in B[w]):
                    ok = False
                    break
            if ok:
                assign[v] = w
                if extend(i + 1, assign):
                    return True
                del assign[v]
        return False

    return extend(0, {})


def dynkin_classify(gram: Sequence[Sequence[int]]) -> RootType | None:
    """Recognize a connected simply laced Cartan matrix, or return None.

    Expects the positive definite sign convention: 2 on the diagonal,
    0 or -1 off it.  Candidates of the matching rank are compared by
    diagram isomorphism, so the answer does not depend on the order in
    which the basis vectors were listed.
    """
    G = _check_gram(gram)
    n = len(G)
    if n == 0:
        return None
    for i in range(n):
        if G[i][i] != 2:
            return None
        for j in range(n):
            if i != j and G[i][j] not in (0, -1):
                return None
    adj = adjacency_from_gram(G)
    if not is_connected(adj):
        return None
    candidates = [RootType("A", n)]
    if n >= 4:
        candidates.append(RootType("D", n))
    if n in (6, 7, 8):
        candidates.append(RootType("E", n))
    for t in candidates:
        if graphs_isomorphic(adjacency_from_gram(cartan_matrix(t)), adj):
            return t
    return None


# -- lattice wrapper ----------------------------------------------------------


@dataclass(frozen=True)
class GramLattice:
    """A free abelian group with a fixed integer pairing on its basis."""

    gram: Mat

    def __post_init__(self):
        object.__setattr__(self, "gram", _check_gram(self.gram))

    @property
    def n(self) -> int:
        return len(self.gram)

    def pairing(self, v: Sequence[int], w: Sequence[int]) -> int:
        return pairing(self.gram, v, w)

    def rank(self) -> int:
        return gram_rank(self.gram)

    def signature(self) -> tuple[int, int, int]:
        return signature(self.gram)

    def orth_complement(self, indices: Sequence[int]) -> tuple[list[Vec], "GramLattice"]:
        basis, induced = orth_complement(self.gram, indices)
        return basis, GramLattice(induced)

    def sublattice(self, indices: Sequence[int]) -> "GramLattice":
        idx = list(indices)
        if any(i < 0 or i >= self.n for i in idx):
            raise ValueError("index out of range")
        return GramLattice(
            tuple(tuple(self.gram[i][j] for j in idx) for i in idx)
        )
