"""Deleted permutation modules over prime fields.

Vectors are rows and matrices act on the right, matching the permutation
convention: ``perm_matrix(a * b) == perm_matrix(a) @ perm_matrix(b)``.  A
bilinear form with Gram matrix ``F`` is invariant under ``A`` when
``A @ F @ A.T == F``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .numtheory import is_prime
from .permgroup import Permutation

#: Largest number of projective points checked by :func:`is_irreducible`.
LINE_BOUND = 10**5


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def perm_matrix(g: Permutation, p: int) -> np.ndarray:
    _check_prime(p)
    d = g.degree
    m = np.zeros((d, d), dtype=np.int64)
    m[np.arange(d), list(g.images)] = 1
    return m


def det_mod(m: np.ndarray, p: int) -> int:
    a = [[int(x) % p for x in row] for row in m]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p


@dataclass
class FpModule:
    p: int
    dim: int
    action: list[np.ndarray]
    gram: np.ndarray | None = None

    def __post_init__(self):
        for a in self.action:
            if a.shape != (self.dim, self.dim):
                raise ValueError(f"action matrix of shape {a.shape}, expected dim {self.dim}")
            if det_mod(a, self.p) == 0:
                raise ValueError("action matrix is singular")

    def form_is_invariant(self, gram: np.ndarray | None = None) -> bool:
        gram = self.gram if gram is None else gram
        return gram is not None and all(
            np.array_equal(a @ gram @ a.T % self.p, gram % self.p) for a in self.action)


def _prefix_coords(v: Sequence[int], p: int) -> list[int]:
    # coordinates of a sum-zero vector in the basis e_i - e_{i+1}
    out, acc = [], 0
    for x in v[:-1]:
        acc += x
        out.append(acc % p)
    return out


def deleted_module(gens: Sequence[Permutation], p: int,
                   quotient: bool | None = None) -> FpModule:
    """The sum-zero submodule of the permutation module over GF(p).

    When p divides the degree, the all-ones vector lies in the sum-zero
    subspace; by default it is then factored out as well, giving the
    doubly-deleted module of dimension d - 2.  Basis: ``e_i - e_{i+1}``;
    the quotient drops the last basis vector, which is the pivot of the
    all-ones vector.  The Gram matrix of the dot product is attached when it
    is nondegenerate.
    """
    _check_prime(p)
    if not gens:
        raise ValueError("empty generator list")
    d = gens[0].degree
    if quotient is None:
        quotient = d % p == 0
    elif quotient and d % p:
        raise ValueError(f"all-ones vector is not sum-zero mod {p} for degree {d}")

    def image_coords(i: int, g: Permutation) -> list[int]:
        v = [0] * d
        v[g.images[i]] += 1
        v[g.images[i + 1]] -= 1
        return _prefix_coords(v, p)

    n = d - 1
    cartan = (2 * np.eye(n, dtype=np.int64) - np.eye(n, k=1, dtype=np.int64)
              - np.eye(n, k=-1, dtype=np.int64)) % p
    mats = [np.array([image_coords(i, g) for i in range(n)], dtype=np.int64) for g in gens]
    if quotient:
        ones = np.array(_prefix_coords([1] * d, p), dtype=np.int64)
        k = n - 1
        inv = pow(int(ones[k]), -1, p)

        def reduce(v: np.ndarray) -> np.ndarray:
            return np.delete((v - (v[k] * inv % p) * ones) % p, k)

        mats = [np.array([reduce(m[i]) for i in range(n) if i != k]) for m in mats]
        cartan = np.delete(np.delete(cartan, k, 0), k, 1)
        n -= 1
    gram = cartan if det_mod(cartan, p) else None
    return FpModule(p, n, mats, gram)


def full_module(gens: Sequence[Permutation], p: int) -> FpModule:
    d = gens[0].degree
    return FpModule(p, d, [perm_matrix(g, p) for g in gens], np.eye(d, dtype=np.int64))


def invariant_gram(module: FpModule) -> np.ndarray | None:
    """The module's symmetric form if it is nondegenerate and invariant."""
    g = module.gram
    if g is None or not np.array_equal(g, g.T) or det_mod(g, module.p) == 0:
        return None
    return g if module.form_is_invariant(g) else None


# ---------------------------------------------------------------------------
# spinning


class _Echelon:
    """Row-reduced basis over GF(p), kept with a pivot per row."""

    def __init__(self, p: int):
        self.p = p
        self.rows: dict[int, list[int]] = {}

    def reduce(self, v: list[int]) -> list[int]:
        p = self.p
        v = [x % p for x in v]
        for piv, row in self.rows.items():
            c = v[piv]
            if c:
                v = [(x - c * y) % p for x, y in zip(v, row)]
        return v

    def add(self, v: list[int]) -> list[int] | None:
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return None
        inv = pow(v[piv], -1, self.p)
        v = [x * inv % self.p for x in v]
        for q, row in self.rows.items():
            c = row[piv]
            if c:
                self.rows[q] = [(x - c * y) % self.p for x, y in zip(row, v)]
        self.rows[piv] = v
        return v

    def basis(self) -> list[list[int]]:
        return [self.rows[k] for k in sorted(self.rows)]


def spin(seed: Sequence[int], action: Sequence[np.ndarray], p: int) -> list[list[int]]:
    """Basis (reduced echelon form) of the smallest invariant subspace containing seed."""
    mats = [[[int(x) for x in row] for row in a] for a in action]
    dim = len(seed)
    ech = _Echelon(p)
    first = ech.add(list(seed))
    if first is None:
        raise ValueError("zero seed")
    queue = [first]
    while queue and len(ech.rows) < dim:
        v = queue.pop()
        for m in mats:
            w = [sum(v[i] * m[i][j] for i in range(dim) if v[i]) for j in range(dim)]
            new = ech.add(w)
            if new is not None:
                queue.append(new)
    return ech.basis()


def projective_points(dim: int, p: int):
    """One vector per line of GF(p)^dim: first nonzero coordinate equal to 1."""
    for lead in range(dim):
        for tail in itertools.product(range(p), repeat=dim - lead - 1):
            yield [0] * lead + [1] + list(tail)


def line_count(dim: int, p: int) -> int:
    return (p**dim - 1) // (p - 1)


def is_irreducible(module: FpModule, bound: int = LINE_BOUND) -> bool:
    """Spin every line; irreducible iff each one generates the whole space."""
    lines = line_count(module.dim, module.p)
    if lines > bound:
        raise ValueError(f"{lines} lines exceed the bound {bound}")
    return all(len(spin(v, module.action, module.p)) == module.dim
               for v in projective_points(module.dim, module.p))


def random_invariant_subspace(module: FpModule, seeds: int = 50,
                              rng: random.Random | None = None) -> list[list[int]] | None:
    """Spin random seeds; return a proper invariant subspace if one turns up.

    A returned subspace proves reducibility.  ``None`` proves nothing.
    """
    rng = rng or random.Random(0)
    for _ in range(seeds):
        v = [rng.randrange(module.p) for _ in range(module.dim)]
        if not any(v):
            continue
        basis = spin(v, module.action, module.p)
        if len(basis) < module.dim:
            return basis
    return None


# ---------------------------------------------------------------------------
# the Fano plane


def _gf2_vectors() -> list[tuple[int, int, int]]:
    return [tuple((x >> k) & 1 for k in (2, 1, 0)) for x in range(1, 8)]


def fano_plane() -> tuple[list[tuple[int, int, int]], list[frozenset[int]]]:
    """Points (nonzero vectors of GF(2)^3) and lines (as sets of point indices)."""
    points = _gf2_vectors()
    index = {v: i for i, v in enumerate(points)}
    lines = set()
    for a, b in itertools.combinations(points, 2):
        c = tuple(x ^ y for x, y in zip(a, b))
        lines.add(frozenset((index[a], index[b], index[c])))
    lines = sorted(lines, key=sorted)
    assert len(lines) == 7 and all(len(l) == 3 for l in lines)
    assert all(sum(i in l for l in lines) == 3 for i in range(7))
    return points, lines


# generators of GL(3, 2): a transvection and the coordinate 3-cycle
_GL32_GENERATORS = (
    ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
    ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
)


def _matrix_actions(mats) -> tuple[list[Permutation], list[Permutation]]:
    points, lines = fano_plane()
    index = {v: i for i, v in enumerate(points)}
    line_index = {l: i for i, l in enumerate(lines)}

    def act(v, m):
        return tuple(sum(v[i] * m[i][j] for i in range(3)) % 2 for j in range(3))

    on_points, on_lines = [], []
    for m in mats:
        img = [index[act(v, m)] for v in points]
        on_points.append(Permutation(img))
        on_lines.append(Permutation(line_index[frozenset(img[i] for i in l)] for l in lines))
    return on_points, on_lines


def fano_actions() -> tuple[list[Permutation], list[Permutation]]:
    """L3(2) acting on the 7 points and on the 7 lines of the Fano plane.

    The i-th generator of each list is the image of the same matrix, so the
    lists define an explicit isomorphism between the two groups.
    """
    return _matrix_actions(_GL32_GENERATORS)


def fano_diagonal_action() -> list[Permutation]:
    """L3(2) on points 0..6 and lines 7..13 at once (degree 14)."""
    pts, lns = fano_actions()
    return [Permutation(list(a.images) + [7 + x for x in b.images]) for a, b in zip(pts, lns)]
