"""Recognition of finite Moebius groups as cyclic or dihedral."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from . import sphere
from .errors import NotAGroup, UnrecognizedGroup
from .sphere import DEFAULT_TOL, IDENTITY, MoebiusMap, Tolerance

CYCLIC = "cyclic"
DIHEDRAL = "dihedral"


@dataclass(frozen=True)
class GroupType:
    """Isomorphism type ``Z_n`` or ``D_n`` (``n`` is the group order).

    Dihedral labels start at order 4, and the Klein four-group is ``D_4``;
    the group of order two is always reported as ``Z_2``.
    """

    tag: str
    order: int

    def __post_init__(self):
        if self.tag not in (CYCLIC, DIHEDRAL):
            raise ValueError(f"unknown group tag {self.tag!r}")
        if self.order < 1:
            raise ValueError(f"group order must be positive, got {self.order}")
        if self.tag == DIHEDRAL and (self.order < 4 or self.order % 2):
            raise ValueError(f"dihedral order must be even and >= 4, got {self.order}")

    @classmethod
    def cyclic(cls, n: int) -> "GroupType":
        return cls(CYCLIC, n)

    @classmethod
    def dihedral(cls, n: int) -> "GroupType":
        return cls(DIHEDRAL, n)

    @classmethod
    def parse(cls, text: str) -> "GroupType":
        m = re.fullmatch(r"\s*([ZD])_?(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse group type {text!r}")
        return cls(CYCLIC if m.group(1) == "Z" else DIHEDRAL, int(m.group(2)))

    @property
    def is_cyclic(self) -> bool:
        return self.tag == CYCLIC

    @property
    def is_dihedral(self) -> bool:
        return self.tag == DIHEDRAL

    def __str__(self) -> str:
        return f"{'Z' if self.is_cyclic else 'D'}_{self.order}"


class MatrixIndex:
    """Tolerance-aware membership lookup for a set of canonical matrices.

    Each map is indexed under both signs of its matrix, so lookups agree with
    :func:`sphere.maps_equal`.
    """

    def __init__(self, maps: Sequence[MoebiusMap], eps: float = sphere.EPS):
        self.maps = list(maps)
        mats = sphere.as_matrix_array(self.maps).reshape(-1, 4)
        both = np.concatenate([mats, -mats])
        self._tree = cKDTree(np.concatenate([both.real, both.imag], axis=1))
        scale = max(1.0, float(np.abs(mats).max())) if len(self.maps) else 1.0
        self._radius = eps * scale

    def __len__(self) -> int:
        return len(self.maps)

    def find(self, mats: np.ndarray) -> np.ndarray:
        """Index of the matching map for each ``(2, 2)`` matrix, -1 if none."""
        flat = np.asarray(mats, dtype=complex).reshape(-1, 4)
        if not len(self.maps):
            return np.full(len(flat), -1)
        dist, idx = self._tree.query(np.concatenate([flat.real, flat.imag], axis=1), p=np.inf)
        idx = np.where(dist <= self._radius, idx % len(self.maps), -1)
        return idx

    def contains(self, t: MoebiusMap) -> bool:
        return bool(self.find(t.matrix)[0] >= 0)


def dedupe(maps: Sequence[MoebiusMap], eps: float = sphere.EPS) -> list[MoebiusMap]:
    """Drop projective duplicates, keeping first occurrences in order."""
    out: list[MoebiusMap] = []
    for m in maps:
        if not any(sphere.maps_equal(m, k, eps) for k in out):
            out.append(m)
    return out


def is_subset(small: Sequence[MoebiusMap], big: Sequence[MoebiusMap], eps: float = sphere.EPS) -> bool:
    if not small:
        return True
    return bool(np.all(MatrixIndex(big, eps).find(sphere.as_matrix_array(small)) >= 0))


def same_set(g1: Sequence[MoebiusMap], g2: Sequence[MoebiusMap], eps: float = sphere.EPS) -> bool:
    return len(g1) == len(g2) and is_subset(g1, g2, eps) and is_subset(g2, g1, eps)


def check_group(elements: Sequence[MoebiusMap], eps: float = sphere.EPS) -> None:
    """Raise :class:`NotAGroup` unless ``elements`` contains the identity and is
    closed under composition and inversion."""
    if not elements:
        raise NotAGroup("empty set")
    index = MatrixIndex(elements, eps)
    if not index.contains(IDENTITY):
        raise NotAGroup("identity missing")
    mats = sphere.as_matrix_array(elements)
    inv = np.stack([mats[:, 1, 1], -mats[:, 0, 1], -mats[:, 1, 0], mats[:, 0, 0]], axis=1)
    if np.any(index.find(inv) < 0):
        raise NotAGroup("not closed under inversion")
    chunk = max(1, 200_000 // len(elements))
    for start in range(0, len(elements), chunk):
        prods = np.einsum("ikl,jlm->ijkm", mats[start:start + chunk], mats)
        if np.any(index.find(prods) < 0):
            raise NotAGroup("not closed under composition")


def element_orders(elements: Sequence[MoebiusMap], tol: Tolerance = DEFAULT_TOL) -> list[int | None]:
    return [sphere.order_of(g, tol) for g in elements]


def certify(elements: Sequence[MoebiusMap], tol: Tolerance = DEFAULT_TOL,
            check: bool = True) -> tuple[GroupType, list[MoebiusMap]]:
    """Isomorphism type of a finite Moebius group plus generators witnessing it.

    A cyclic group is certified by an element of full order. A dihedral group
    of order ``2m`` is certified by a rotation ``R`` of order ``m`` and an
    involution ``F`` outside ``<R>`` with ``F^2 = (RF)^2 = id``.
    """
    eps = tol.eps
    if check:
        check_group(elements, eps)
    n = len(elements)
    orders = []
    for g in elements:
        o = sphere.order_of(g, tol)
        if o is None:
            raise NotAGroup("contains an element of infinite order")
        if o == n:
            return GroupType.cyclic(n), [g]
        orders.append(o)
    if n % 2 == 0 and n >= 4:
        m = n // 2
        involutions = [g for g, o in zip(elements, orders) if o == 2]
        rotations = [g for g, o in zip(elements, orders) if o == m]
        for r in rotations:
            rpowers = [sphere.power(r, j) for j in range(m)]
            for f in involutions:
                if any(sphere.maps_equal(f, x, eps) for x in rpowers):
                    continue
                rf = sphere.compose(r, f)
                if (sphere.power(r, m).is_identity(eps)
                        and sphere.compose(f, f).is_identity(eps)
                        and sphere.compose(rf, rf).is_identity(eps)):
                    return GroupType.dihedral(n), [r, f]
    raise UnrecognizedGroup(f"group of order {n} with element orders {sorted(orders)}")


def identify_group(elements: Sequence[MoebiusMap], tol: Tolerance = DEFAULT_TOL) -> GroupType:
    return certify(elements, tol)[0]


def generate(generators: Sequence[MoebiusMap], eps: float = sphere.EPS,
             limit: int = 100_000) -> list[MoebiusMap]:
    """Close a set of finite-order generators under composition."""
    elements = [IDENTITY]
    frontier = [IDENTITY]
    while frontier:
        new = []
        for x in frontier:
            for g in generators:
                y = sphere.compose(g, x)
                if not any(sphere.maps_equal(y, e, eps) for e in elements):
                    elements.append(y)
                    new.append(y)
                    if len(elements) > limit:
                        raise NotAGroup(f"generated more than {limit} elements")
        frontier = new
    return elements
