"""Immutable attributed graphs: user vertices plus attribute vertices.

A graph has n user vertices labelled 1..n and m attribute vertices labelled
n+1..n+m.  Edges exist between users (symmetric, no self-loops) and between a
user and an attribute.  Attribute-attribute edges are not representable.

Graphs are immutable after construction; every query is read-only, so a graph
can be shared freely between threads or worker processes.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp


class GraphLabelError(ValueError):
    """A vertex label outside the valid user/attribute range."""


class EdgeFormatError(ValueError):
    """A line of the debug edge-list format that cannot be an edge."""


def _as_edge_array(edges) -> np.ndarray:
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be pairs of vertex labels")
    return arr


class AttributedGraph:
    """n users (1..n), m attributes (n+1..n+m), user-user and user-attribute edges."""

    def __init__(self, n: int, m: int, user_edges=(), attr_edges=()):
        if n < 0 or m < 0:
            raise ValueError(f"vertex counts must be nonnegative, got n={n}, m={m}")
        self.n = int(n)
        self.m = int(m)

        uu = _as_edge_array(user_edges)
        if uu.size:
            if ((uu < 1) | (uu > n)).any():
                raise GraphLabelError("user-user edge endpoint outside 1..n")
            if (uu[:, 0] == uu[:, 1]).any():
                raise ValueError("self-loops are not allowed")
            uu = np.sort(uu, axis=1)
            uu = np.unique(uu, axis=0)

        ua = _as_edge_array(attr_edges)
        if ua.size:
            if ((ua[:, 0] < 1) | (ua[:, 0] > n)).any():
                raise GraphLabelError("user-attribute edge: first endpoint outside 1..n")
            if ((ua[:, 1] <= n) | (ua[:, 1] > n + m)).any():
                raise GraphLabelError("user-attribute edge: second endpoint outside n+1..n+m")
            ua = ua[np.lexsort((ua[:, 1], ua[:, 0]))]
            ua = np.unique(ua, axis=0)

        uu.setflags(write=False)
        ua.setflags(write=False)
        self._uu = uu
        self._ua = ua

    # -- raw edge access (canonical order: lexicographic, u < v for user edges)

    def user_edges(self) -> np.ndarray:
        """(E, 2) array of user-user edges, each row (u, v) with u < v."""
        return self._uu

    def attr_edges(self) -> np.ndarray:
        """(F, 2) array of user-attribute edges, each row (u, a)."""
        return self._ua

    def __eq__(self, other):
        if not isinstance(other, AttributedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self._uu, other._uu)
            and np.array_equal(self._ua, other._ua)
        )

    def __hash__(self):
        return hash((self.n, self.m, self._uu.tobytes(), self._ua.tobytes()))

    def __repr__(self):
        return (
            f"AttributedGraph(n={self.n}, m={self.m}, "
            f"user_edges={len(self._uu)}, attr_edges={len(self._ua)})"
        )

    # -- derived adjacency (cached; graphs are immutable)

    @cached_property
    def _user_nbrs(self) -> list[np.ndarray]:
        """Sorted user-neighbor array per user, index 0 unused."""
        nbrs: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self._uu:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return [np.array(sorted(x), dtype=np.int64) for x in nbrs]

    @cached_property
    def _attr_nbrs(self) -> list[np.ndarray]:
        """Sorted attribute-neighbor array per user, index 0 unused."""
        nbrs: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, a in self._ua:
            nbrs[u].append(a)
        return [np.array(sorted(x), dtype=np.int64) for x in nbrs]

    @cached_property
    def user_adjacency(self) -> np.ndarray:
        """Dense boolean user-user adjacency, 0-based, no self entries."""
        adj = np.zeros((self.n, self.n), dtype=bool)
        if len(self._uu):
            r = self._uu[:, 0] - 1
            c = self._uu[:, 1] - 1
            adj[r, c] = True
            adj[c, r] = True
        return adj

    @cached_property
    def attr_incidence(self) -> sp.csr_matrix:
        """Sparse n x m user-attribute incidence, 0-based."""
        if len(self._ua):
            rows = self._ua[:, 0] - 1
            cols = self._ua[:, 1] - self.n - 1
            data = np.ones(len(self._ua), dtype=np.int32)
        else:
            rows = cols = data = []
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.m), dtype=np.int32)

    # -- queries

    def _check_user(self, i: int):
        if not (1 <= i <= self.n):
            raise GraphLabelError(f"user label {i} outside 1..{self.n}")

    def attribute_neighbors(self, i: int) -> set[int]:
        """Attributes adjacent to user i, as a fresh set."""
        self._check_user(i)
        return set(self._attr_nbrs[i].tolist())

    def attribute_neighbor_array(self, i: int) -> np.ndarray:
        self._check_user(i)
        return self._attr_nbrs[i]

    def user_degree(self, i: int) -> int:
        self._check_user(i)
        return len(self._user_nbrs[i])

    def user_neighbor_array(self, i: int) -> np.ndarray:
        """Sorted array of users adjacent to i (excludes i itself)."""
        self._check_user(i)
        return self._user_nbrs[i]

    def user_neighbors_within(self, i: int, l: int, removed: Iterable[int] = ()) -> set[int]:
        """Users within hop distance l of i over user-user edges, skipping `removed`.

        Includes i itself (distance zero).  Raises if i is in `removed`.
        """
        self._check_user(i)
        if l < 0:
            raise ValueError(f"hop count must be nonnegative, got {l}")
        removed = set(removed)
        if i in removed:
            raise ValueError(f"center vertex {i} cannot be in the removed set")
        seen = {i}
        frontier = [i]
        for _ in range(l):
            if not frontier:
                break
            nxt = []
            for u in frontier:
                for v in self._user_nbrs[u].tolist():
                    if v not in seen and v not in removed:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return seen

    def reach_within(self, depth: int) -> np.ndarray:
        """Dense boolean matrix R with R[u-1, v-1] iff d(u, v) <= depth."""
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        step = self.user_adjacency | np.eye(self.n, dtype=bool)
        reach = np.eye(self.n, dtype=bool)
        for _ in range(depth):
            new = (reach.astype(np.uint8) @ step.astype(np.uint8)) > 0
            if np.array_equal(new, reach):
                break
            reach = new
        return reach

    # -- transforms

    def apply_permutation(self, pi: "Permutation") -> "AttributedGraph":
        """Relabel user vertices: edge (u, v) becomes (pi(u), pi(v)); attributes fixed."""
        if pi.n != self.n:
            raise ValueError(f"permutation on 1..{pi.n} does not match n={self.n}")
        uu = self._uu.copy()
        ua = self._ua.copy()
        if len(uu):
            uu = pi.table[uu]
        if len(ua):
            ua[:, 0] = pi.table[ua[:, 0]]
        return AttributedGraph(self.n, self.m, uu, ua)

    def user_only(self) -> "AttributedGraph":
        """Induced subgraph on the user vertices (drops all attributes)."""
        return AttributedGraph(self.n, 0, self._uu, ())

    # -- debug edge-list text format

    def to_text(self) -> str:
        """Header line "n m", then one "u v" line per edge."""
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self._uu.tolist())
        lines.extend(f"{u} {a}" for u, a in self._ua.tolist())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "AttributedGraph":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise EdgeFormatError("empty edge-list text")
        try:
            n, m = (int(tok) for tok in lines[0].split())
        except Exception as exc:
            raise EdgeFormatError(f"bad header line {lines[0]!r}") from exc
        uu, ua = [], []
        for ln in lines[1:]:
            try:
                a, b = (int(tok) for tok in ln.split())
            except Exception as exc:
                raise EdgeFormatError(f"bad edge line {ln!r}") from exc
            a_is_user = 1 <= a <= n
            b_is_user = 1 <= b <= n
            if a_is_user and b_is_user:
                uu.append((a, b))
            elif a_is_user and n < b <= n + m:
                ua.append((a, b))
            elif b_is_user and n < a <= n + m:
                ua.append((b, a))
            elif not a_is_user and not b_is_user:
                raise EdgeFormatError(f"attribute-attribute edge {ln!r} is not allowed")
            else:
                raise EdgeFormatError(f"edge line {ln!r} has an out-of-range label")
        return cls(n, m, uu, ua)


class Permutation:
    """A bijection on user labels 1..n."""

    __slots__ = ("n", "table")

    def __init__(self, table: Sequence[int] | np.ndarray):
        """table[i] = image of i for i in 1..n; index 0 is ignored."""
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("permutation table must be a 1-d sequence")
        n = arr.size - 1
        image = np.sort(arr[1:])
        if n > 0 and not np.array_equal(image, np.arange(1, n + 1)):
            raise ValueError("not a bijection on 1..n")
        arr = arr.copy()
        arr[0] = 0
        arr.setflags(write=False)
        self.n = n
        self.table = arr

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n + 1))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Permutation":
        """Uniformly random permutation (Fisher-Yates shuffle)."""
        table = np.concatenate([[0], rng.permutation(n) + 1])
        return cls(table)

    @classmethod
    def from_mapping(cls, mapping: dict[int, int]) -> "Permutation":
        n = len(mapping)
        table = np.zeros(n + 1, dtype=np.int64)
        for i, j in mapping.items():
            if not (1 <= i <= n):
                raise ValueError(f"domain label {i} outside 1..{n}")
            table[i] = j
        return cls(table)

    def __call__(self, i: int) -> int:
        if not (1 <= i <= self.n):
            raise ValueError(f"label {i} outside 1..{self.n}")
        return int(self.table[i])

    def inverse(self) -> "Permutation":
        inv = np.zeros(self.n + 1, dtype=np.int64)
        inv[self.table[1:]] = np.arange(1, self.n + 1)
        return Permutation(inv)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        if self.n <= 8:
            return f"Permutation({dict(self.items())})"
        return f"Permutation(n={self.n})"

    def items(self):
        for i in range(1, self.n + 1):
            yield i, int(self.table[i])

    def to_lines(self) -> str:
        """One "i pi(i)" line per user."""
        return "\n".join(f"{i} {j}" for i, j in self.items()) + ("\n" if self.n else "")

    @classmethod
    def from_lines(cls, text: str) -> "Permutation":
        mapping = {}
        for ln in text.splitlines():
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            i, j = (int(tok) for tok in ln.split())
            if i in mapping:
                raise ValueError(f"duplicate domain label {i}")
            mapping[i] = j
        return cls.from_mapping(mapping)
