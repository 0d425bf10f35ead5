"""Exact arithmetic in small real reflection groups.

Elements are stored as permutations of a fixed root list.  Coordinates are
integers (E8 is scaled by two so the half-integer roots stay integral), and
reflection length is the rank of ``w - 1`` computed by modular elimination.
The modulus is large enough that modular rank equals rational rank for every
matrix we build; :func:`_check_hadamard` asserts this on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

PRIME = 2**31 - 1

E8_DEGREES = (2, 8, 12, 14, 18, 20, 24, 30)


class ConfigurationError(ValueError):
    """Unsupported or inconsistent construction parameters."""


class GroupElement:
    """A group element as a permutation of root indices.

    ``perm[i] = j`` means the element sends root ``i`` to root ``j``.
    Composition follows functions: ``(x * y)`` applies ``y`` first.
    """

    __slots__ = ("perm", "_key", "cached_length")

    def __init__(self, perm: np.ndarray, cached_length: int | None = None):
        perm = np.asarray(perm, dtype=np.int16)
        perm.setflags(write=False)
        self.perm = perm
        self._key = perm.tobytes()
        self.cached_length = cached_length

    @property
    def key(self) -> bytes:
        return self._key

    def __mul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.perm[other.perm])

    def inverse(self) -> GroupElement:
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm), dtype=np.int16)
        return GroupElement(inv, self.cached_length)

    def conj(self, y: GroupElement) -> GroupElement:
        """Right conjugation ``y^-1 self y``."""
        return GroupElement(y.inverse().perm[self.perm[y.perm]], self.cached_length)

    def __pow__(self, k: int) -> GroupElement:
        base = self if k >= 0 else self.inverse()
        out = GroupElement(np.arange(len(self.perm), dtype=np.int16))
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return bool(np.all(self.perm == np.arange(len(self.perm))))

    def order(self) -> int:
        x, k = self, 1
        while not x.is_identity():
            x, k = x * self, k + 1
        return k

    def image(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.perm)

    def sort_key(self) -> bytes:
        # big-endian bytes compare like the integer image tuple
        return self.perm.astype(">u2").tobytes()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupElement) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"GroupElement(len={self.cached_length})"


# ----------------------------------------------------------------- linear algebra mod p


def _rref_mod(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over GF(PRIME); returns (rows, pivot columns)."""
    m = [[v % PRIME for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], PRIME - 2, PRIME)
        m[r] = [v * inv % PRIME for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % PRIME for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_mod(rows: list[list[int]], ncols: int) -> int:
    return len(_rref_mod(rows, ncols)[1])


def nullspace_mod(rows: list[list[int]], ncols: int) -> np.ndarray:
    """Basis (as columns) of the right kernel of ``rows`` over GF(PRIME)."""
    red, pivots = _rref_mod(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((ncols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for row, pc in zip(red, pivots):
            basis[pc, j] = (-row[fc]) % PRIME
    return basis


# ----------------------------------------------------------------- root systems


def _simple_roots(label: str) -> tuple[list[tuple[int, ...]], int]:
    """Simple roots (integer coordinates) and Coxeter number."""
    kind, n = label[0], int(label[1:])
    if kind == "A" and 1 <= n <= 4:
        dim = n + 1
        simple = []
        for i in range(n):
            v = [0] * dim
            v[i], v[i + 1] = 1, -1
            simple.append(tuple(v))
        return simple, n + 1
    if label == "B2":
        return [(1, -1), (0, 1)], 4
    if label == "E8":
        a1 = (1, -1, -1, -1, -1, -1, -1, 1)
        simple = [a1, (2, 2, 0, 0, 0, 0, 0, 0)]
        for i in range(6):
            v = [0] * 8
            v[i], v[i + 1] = -2, 2
            simple.append(tuple(v))
        return simple, 30
    raise ConfigurationError(f"unsupported root system type {label!r}")


def _reflect(v: tuple[int, ...], a: tuple[int, ...]) -> tuple[int, ...]:
    num = 2 * sum(x * y for x, y in zip(v, a))
    den = sum(x * x for x in a)
    if num % den:
        raise ConfigurationError("non-crystallographic reflection")
    k = num // den
    return tuple(x - k * y for x, y in zip(v, a))


def _degrees(label: str) -> tuple[int, ...]:
    if label[0] == "A":
        return tuple(range(2, int(label[1:]) + 2))
    if label == "B2":
        return (2, 4)
    return E8_DEGREES


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Roots, reflections and simple data for one supported Cartan type."""

    type_label: str
    roots: np.ndarray  # (N, dim) int64
    simple_indices: tuple[int, ...]
    coxeter_number: int
    degrees: tuple[int, ...]
    reflections: list[GroupElement] = field(repr=False)
    reflection_roots: tuple[int, ...]  # positive root index per reflection
    root_index: dict[tuple[int, ...], int] = field(repr=False)
    negation: np.ndarray = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.simple_indices)

    @property
    def dim(self) -> int:
        return self.roots.shape[1]

    @cached_property
    def identity(self) -> GroupElement:
        return GroupElement(np.arange(len(self.roots)), 0)

    @cached_property
    def simple_reflections(self) -> list[GroupElement]:
        pos = {r: i for i, r in enumerate(self.reflection_roots)}
        return [self.reflections[pos[self._positive(s)]] for s in self.simple_indices]

    @cached_property
    def coxeter_element(self) -> GroupElement:
        c = self.identity
        for s in self.simple_reflections:
            c = c * s
        return GroupElement(c.perm, self.rank)

    @cached_property
    def _positive_roots(self) -> np.ndarray:
        return self.roots[list(self.reflection_roots)]

    def _positive(self, i: int) -> int:
        j = int(self.negation[i])
        return i if tuple(self.roots[i]) > tuple(self.roots[j]) else j

    def matrix_rows(self, w: GroupElement) -> list[list[int]]:
        """Rows ``w(alpha_j) - alpha_j`` spanning the moved space of ``w``."""
        s = list(self.simple_indices)
        return (self.roots[w.perm[s]] - self.roots[s]).tolist()

    def length(self, w: GroupElement) -> int:
        if w.cached_length is None:
            w.cached_length = rank_mod(self.matrix_rows(w), self.dim)
        return w.cached_length

    def reflections_below(self, w: GroupElement) -> list[int]:
        """Indices of reflections ``r`` with ``r`` dividing ``w``.

        ``r_alpha`` divides ``w`` exactly when ``alpha`` lies in the moved
        space of ``w``, i.e. is orthogonal to its fixed space.
        """
        kernel = nullspace_mod(self.matrix_rows(w), self.dim)
        if kernel.shape[1] == 0:
            return list(range(len(self.reflections)))
        prod = (self._positive_roots @ kernel) % PRIME
        return np.flatnonzero(~prod.any(axis=1)).tolist()


def _check_hadamard(roots: np.ndarray, rank: int) -> None:
    # rows of w - 1 are differences of two roots; bound every rank x rank minor
    row_norm = 2 * math.sqrt(max(int((r * r).sum()) for r in roots))
    if row_norm ** (rank + 1) >= PRIME:
        raise ConfigurationError("modulus too small for exact rank")


def build_root_system(type_label: str) -> RootSystem:
    simple, h = _simple_roots(type_label)
    roots = set(simple) | {tuple(-x for x in r) for r in simple}
    frontier = list(roots)
    while frontier:
        nxt = []
        for v in frontier:
            for a in simple:
                w = _reflect(v, a)
                if w not in roots:
                    roots.add(w)
                    nxt.append(w)
        frontier = nxt
    ordered = sorted(roots)
    root_index = {r: i for i, r in enumerate(ordered)}
    arr = np.array(ordered, dtype=np.int64)
    _check_hadamard(arr, len(simple))
    negation = np.array([root_index[tuple(-x for x in r)] for r in ordered], dtype=np.int16)
    positive = [i for i, r in enumerate(ordered) if r > tuple(-x for x in r)]
    reflections = []
    for i in positive:
        a = ordered[i]
        perm = np.array([root_index[_reflect(v, a)] for v in ordered], dtype=np.int16)
        reflections.append(GroupElement(perm, 1))
    return RootSystem(
        type_label=type_label,
        roots=arr,
        simple_indices=tuple(root_index[s] for s in simple),
        coxeter_number=h,
        degrees=_degrees(type_label),
        reflections=reflections,
        reflection_roots=tuple(positive),
        root_index=root_index,
        negation=negation,
    )


def reflection_length(system: RootSystem, w: GroupElement) -> int:
    return system.length(w)


def divides(system: RootSystem, a: GroupElement, b: GroupElement) -> bool:
    return system.length(a) + system.length(a.inverse() * b) == system.length(b)


def catalan_number(system: RootSystem) -> int:
    """Product formula for the size of the noncrossing interval."""
    h = system.coxeter_number
    num = math.prod(d + h for d in system.degrees)
    den = math.prod(system.degrees)
    return num // den


# ----------------------------------------------------------------- intervals


@dataclass(eq=False)
class IntervalLattice:
    """The interval ``[1, top]`` for the absolute order."""

    system: RootSystem
    coxeter: GroupElement
    elements: list[GroupElement]
    length_of: list[int]

    def __post_init__(self) -> None:
        self.index_of: dict[bytes, int] = {e.key: i for i, e in enumerate(self.elements)}
        self._divisors: dict[int, frozenset[int]] = {}

    @property
    def rank(self) -> int:
        return self.length_of[-1]

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, x: GroupElement) -> int | None:
        return self.index_of.get(x.key)

    def divisors(self, i: int) -> frozenset[int]:
        if i not in self._divisors:
            sub = _bfs_interval(self.system, self.elements[i])
            self._divisors[i] = frozenset(self.index_of[e.key] for e in sub)
        return self._divisors[i]

    def leq(self, i: int, j: int) -> bool:
        x, y = self.elements[i], self.elements[j]
        return self.length_of[i] + self.system.length(x.inverse() * y) == self.length_of[j]

    def meet(self, i: int, j: int) -> int:
        common = self.divisors(i) & self.divisors(j)
        return max(common, key=lambda k: (self.length_of[k], -k))

    def kreweras(self, i: int) -> int:
        return self.index_of[(self.elements[i].inverse() * self.coxeter).key]

    def join(self, i: int, j: int) -> int:
        m = self.meet(self.kreweras(i), self.kreweras(j))
        return self.index_of[(self.coxeter * self.elements[m].inverse()).key]


def _bfs_interval(system: RootSystem, top: GroupElement) -> list[GroupElement]:
    """All ``x`` with ``x`` dividing ``top``, level by level."""
    level = [system.identity]
    out = list(level)
    while level:
        nxt: dict[bytes, GroupElement] = {}
        for x in level:
            rest = x.inverse() * top
            k = x.cached_length + 1
            for r in system.reflections_below(rest):
                y = x * system.reflections[r]
                if y.key not in nxt:
                    y.cached_length = k
                    nxt[y.key] = y
        level = sorted(nxt.values(), key=GroupElement.sort_key)
        out.extend(level)
    return out


def build_interval(system: RootSystem, c: GroupElement | None = None) -> IntervalLattice:
    c = system.coxeter_element if c is None else c
    if system.length(c) != system.rank:
        raise ConfigurationError("top element is not a Coxeter element")
    elems = _bfs_interval(system, c)
    return IntervalLattice(system, c, elems, [e.cached_length for e in elems])


def interval_meet(lattice: IntervalLattice, a: GroupElement, b: GroupElement) -> GroupElement:
    return lattice.elements[lattice.meet(lattice.index(a), lattice.index(b))]


def interval_join(lattice: IntervalLattice, a: GroupElement, b: GroupElement) -> GroupElement:
    return lattice.elements[lattice.join(lattice.index(a), lattice.index(b))]


# ----------------------------------------------------------------- factorizations


@dataclass(frozen=True)
class Factorization:
    parts: tuple[GroupElement, ...]

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def product(self) -> GroupElement:
        out = self.parts[0]
        for p in self.parts[1:]:
            out = out * p
        return out


def factorizations(system: RootSystem, w: GroupElement, m: int) -> list[Factorization]:
    """All length-additive factorizations of ``w`` into ``m`` parts."""
    if m < 1:
        raise ValueError("arity must be positive")
    if m == 1:
        return [Factorization((w,))]
    out = []
    for x in _bfs_interval(system, w):
        rest = x.inverse() * w
        system.length(rest)
        for f in factorizations(system, rest, m - 1):
            out.append(Factorization((x,) + f.parts))
    return out


def tau(f: Factorization, c: GroupElement) -> Factorization:
    return Factorization(f.parts[1:] + (f.parts[0].conj(c),))


def tau_power(f: Factorization, c: GroupElement, n: int) -> Factorization:
    for _ in range(n):
        f = tau(f, c)
    return f


def tau_fixed(facts: list[Factorization], c: GroupElement, n: int) -> list[Factorization]:
    return [f for f in facts if tau_power(f, c, n) == f]


def fixed_factorizations(lattice: IntervalLattice, m: int, n: int) -> list[Factorization]:
    """``tau^n``-fixed members of ``D_m(c)`` without enumerating all of ``D_m(c)``.

    With ``g = gcd(m, n)`` a fixed tuple splits into ``m/g`` blocks of ``g``
    entries; each block is a conjugate of the first, so the block product ``y``
    is a fixed point for ``(m/g, n/g)`` and determines everything up to a
    factorization of ``y`` into ``g`` parts.
    """
    system, c = lattice.system, lattice.coxeter
    g = math.gcd(m, n)
    mb, nb = m // g, n // g
    if lattice.rank % mb:
        return []
    target_len = lattice.rank // mb
    out = []
    for i, y in enumerate(lattice.elements):
        if lattice.length_of[i] != target_len:
            continue
        blocks = _propagate(y, c, mb, nb)
        if blocks is None:
            continue
        for head in factorizations(system, y, g):
            parts: list[GroupElement] = []
            for b in blocks:
                # block b equals y conjugated by some power of c; conjugate the split alike
                parts.extend(p.conj(b[1]) for p in head.parts)
            f = Factorization(tuple(parts))
            if tau_power(f, c, n) == f:
                out.append(f)
    return out


def _propagate(y: GroupElement, c: GroupElement, m: int, n: int):
    """Entries of the unique candidate tuple in ``D_m^n(c)`` starting with ``y``.

    Returns a list of (entry, conjugator) pairs or ``None`` if the candidate
    fails to multiply to ``c``.
    """
    cinv = c.inverse()
    one = _ident(y)
    vals = {0: (y, one)}
    i = 0
    for _ in range(m - 1):
        j = (i + n) % m
        wraps = (i + n) // m
        x, conj = vals[i]
        step = cinv**wraps
        vals[j] = (x.conj(step), conj * step)
        i = j
    prod = vals[0][0]
    for k in range(1, m):
        prod = prod * vals[k][0]
    if prod != c:
        return None
    return [vals[k] for k in range(m)]


def _ident(x: GroupElement) -> GroupElement:
    return GroupElement(np.arange(len(x.perm)))


def hurwitz_move(f: Factorization, i: int, direction: int) -> Factorization:
    """Braid-group action on a factorization; ``i`` is zero based."""
    if not 0 <= i < f.m - 1:
        raise ValueError("position out of range")
    a, b = f.parts[i], f.parts[i + 1]
    if direction > 0:
        new = (b, a.conj(b))
    else:
        new = (b.conj(a.inverse()), a)
    out = Factorization(f.parts[:i] + new + f.parts[i + 2 :])
    assert out.product == f.product
    return out


def enumerate_group(system: RootSystem) -> list[GroupElement]:
    """Whole group by closure under simple reflections (small types only)."""
    seen = {system.identity.key: system.identity}
    frontier = [system.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in system.simple_reflections:
                y = x * s
                if y.key not in seen:
                    seen[y.key] = y
                    nxt.append(y)
        frontier = nxt
    return sorted(seen.values(), key=GroupElement.sort_key)


def word_lengths(system: RootSystem) -> dict[bytes, int]:
    """Reflection word length by BFS over the Cayley graph on all reflections."""
    dist = {system.identity.key: 0}
    frontier = [system.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for r in system.reflections:
                y = x * r
                if y.key not in dist:
                    dist[y.key] = dist[x.key] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


__all__ = [
    "ConfigurationError",
    "Factorization",
    "GroupElement",
    "IntervalLattice",
    "RootSystem",
    "build_interval",
    "build_root_system",
    "catalan_number",
    "divides",
    "enumerate_group",
    "factorizations",
    "fixed_factorizations",
    "hurwitz_move",
    "interval_join",
    "interval_meet",
    "reflection_length",
    "tau",
    "tau_fixed",
    "word_lengths",
]
