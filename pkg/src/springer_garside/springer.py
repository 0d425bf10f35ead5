"""Combinatorial Springer groupoid built on a noncrossing interval.

Objects are the elements ``u`` of ``[1,c]`` with ``p l(u) = n`` that satisfy
``u u^{c^eta} ... u^{c^{(p-1)eta}} = c``.  Simples out of ``u`` are the pairs
``(a, b)`` with ``ab = u``; every per-object computation happens in the local
lattice ``[1,u]`` which has a few dozen elements at most, so the Garside
tables below are plain integer arrays keyed by simple index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .reflection import ConfigurationError, GroupElement, IntervalLattice


@dataclass(frozen=True)
class RegularParams:
    d: int
    h: int
    p: int
    q: int
    eta: int

    @classmethod
    def from_degree(cls, h: int, d: int, eta: int | None = None) -> RegularParams:
        g = math.gcd(d, h)
        p, q = d // g, h // g
        if eta is None:
            # smallest positive eta with p * eta = 1 mod q (eta = 1 when q = 1)
            eta = 1 if q == 1 else pow(p, -1, q)
        return cls(d, h, p, q, eta)


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(eq=False)
class LocalLattice:
    """The lattice ``[1,u]`` with elements listed in global interval order."""

    elems: list[int]
    down: list[int]  # bitmask of local divisors
    up: list[int]  # bitmask of local multiples
    quot: dict[tuple[int, int], int]  # (i, j) with i <= j  ->  interval index of x_i^-1 x_j

    def __post_init__(self) -> None:
        self.pos = {e: i for i, e in enumerate(self.elems)}

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def meet(self, i: int, j: int) -> int:
        # elements are sorted by length, so the top common divisor is the highest bit
        return (self.down[i] & self.down[j]).bit_length() - 1

    def join(self, i: int, j: int) -> int:
        return _lowest(self.up[i] & self.up[j])


def build_local_lattice(lattice: IntervalLattice, u: int, keep=None) -> LocalLattice:
    elems = sorted(lattice.divisors(u))
    if keep is not None:
        elems = [e for e in elems if keep(e)]
    k = len(elems)
    down = [1 << i for i in range(k)]
    up = [1 << i for i in range(k)]
    quot: dict[tuple[int, int], int] = {}
    inv = [lattice.elements[e].inverse() for e in elems]
    for i in range(k):
        quot[(i, i)] = 0
        li = lattice.length_of[elems[i]]
        for j in range(i + 1, k):
            lj = lattice.length_of[elems[j]]
            if lj <= li:
                continue
            z = lattice.index(inv[i] * lattice.elements[elems[j]])
            if z is not None and lattice.length_of[z] == lj - li:
                quot[(i, j)] = z
                down[j] |= 1 << i
                up[i] |= 1 << j
    return LocalLattice(elems, down, up, quot)


@dataclass(eq=False)
class GroupoidData:
    """Objects, simples and Garside tables of a Springer groupoid."""

    lattice: IntervalLattice
    params: RegularParams
    objects: list[int]
    locals_: list[LocalLattice] = field(repr=False)

    def __post_init__(self) -> None:
        L = self.lattice
        self.obj_pos = {u: k for k, u in enumerate(self.objects)}
        self.base: list[int] = []
        a, b, src, loc = [], [], [], []
        for k, loc_lat in enumerate(self.locals_):
            self.base.append(len(a))
            top = len(loc_lat.elems) - 1
            for i, e in enumerate(loc_lat.elems):
                a.append(e)
                b.append(loc_lat.quot[(i, top)])
                src.append(k)
                loc.append(i)
        self.a, self.b, self.src, self.loc = a, b, src, loc
        self.length = [L.length_of[x] for x in a]
        self.delta_of = [self.base[k] + len(ll.elems) - 1 for k, ll in enumerate(self.locals_)]
        self.ident_of = list(self.base)
        self.by_b = {(src[s], b[s]): s for s in range(len(a))}

        ceta = L.coxeter ** self.params.eta
        self._ceta = ceta
        needed = sorted(set(a) | set(b))
        self.conj_eta = {x: L.index(L.elements[x].conj(ceta)) for x in needed}
        if any(v is None for v in self.conj_eta.values()):
            raise ConfigurationError("interval is not stable under c^eta")
        self.phi_obj = [self.obj_pos[self.conj_eta[u]] for u in self.objects]
        self.phi = [self.simple_at(self.phi_obj[src[s]], self.conj_eta[a[s]]) for s in range(len(a))]
        self.phi_inv = [0] * len(a)
        for s, t in enumerate(self.phi):
            self.phi_inv[t] = s
        self.tgt = []
        for s in range(len(a)):
            t = L.index(L.elements[b[s]] * L.elements[self.conj_eta[a[s]]])
            self.tgt.append(self.obj_pos[t])
        self.atoms_of = [
            [s for s in range(self.base[k], self.delta_of[k] + 1) if self.length[s] == 1]
            for k in range(len(self.objects))
        ]
        self._comp: dict[tuple[int, int], int] | None = None

    # ------------------------------------------------------------ lookups

    @property
    def n_simples(self) -> int:
        return len(self.a)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    def simple_at(self, obj: int, a_index: int) -> int | None:
        """Simple with source ``obj`` (object position) and first component ``a_index``."""
        i = self.locals_[obj].pos.get(a_index)
        return None if i is None else self.base[obj] + i

    def is_identity(self, s: int) -> bool:
        return self.length[s] == 0

    def is_delta(self, s: int) -> bool:
        return self.delta_of[self.src[s]] == s

    def relations(self) -> list[tuple[int, int, int]]:
        """All (x, y, z) with xyz an object, lengths adding up."""
        out = []
        for k, ll in enumerate(self.locals_):
            top = len(ll.elems) - 1
            for (i, j), y in sorted(ll.quot.items()):
                out.append((ll.elems[i], y, ll.quot[(j, top)]))
        return out

    def n_relations(self) -> int:
        return sum(len(ll.quot) for ll in self.locals_)

    # ------------------------------------------------------------ simple lattice

    def divides(self, s: int, t: int) -> bool:
        if self.src[s] != self.src[t]:
            raise ValueError("simples have different sources")
        return self.locals_[self.src[s]].leq(self.loc[s], self.loc[t])

    def meet(self, s: int, t: int) -> int:
        k = self.src[s]
        if k != self.src[t]:
            raise ValueError("simples have different sources")
        return self.base[k] + self.locals_[k].meet(self.loc[s], self.loc[t])

    def join(self, s: int, t: int) -> int:
        k = self.src[s]
        if k != self.src[t]:
            raise ValueError("simples have different sources")
        return self.base[k] + self.locals_[k].join(self.loc[s], self.loc[t])

    def rquot(self, s: int, t: int) -> int:
        """``s^-1 t`` for ``s`` a prefix of ``t``."""
        k = self.src[s]
        x = self.locals_[k].quot[(self.loc[s], self.loc[t])]
        return self.base[self.tgt[s]] + self.locals_[self.tgt[s]].pos[x]

    def bar(self, s: int) -> int:
        """Right complement of ``s`` in ``Delta(source)``."""
        return self.rquot(s, self.delta_of[self.src[s]])

    def left_bar(self, s: int) -> int:
        """The simple ``r`` with ``r s = Delta``."""
        return self.bar(self.phi_inv[s])

    def complement(self, s: int, t: int) -> int:
        """``s \\ t``: the simple with ``s (s\\t) = s v t``."""
        return self.rquot(s, self.join(s, t))

    def compose(self, s: int, t: int) -> int | None:
        """``st`` when it is simple, else ``None``."""
        if self.tgt[s] != self.src[t]:
            raise ValueError("simples are not composable")
        if self._comp is None:
            comp = {}
            for k, ll in enumerate(self.locals_):
                for i, j in ll.quot:
                    s1, s2 = self.base[k] + i, self.base[k] + j
                    comp[(s1, self.rquot(s1, s2))] = s2
            self._comp = comp
        return self._comp.get((s, t))

    # suffix versions
    def left_divides(self, t: int, s: int) -> bool:
        """``t`` is a suffix of ``s``."""
        if self.tgt[s] != self.tgt[t]:
            raise ValueError("simples have different targets")
        return self.divides(self.left_bar(s), self.left_bar(t))

    def left_meet(self, s: int, t: int) -> int:
        return self.bar(self.join(self.left_bar(s), self.left_bar(t)))

    def left_join(self, s: int, t: int) -> int:
        return self.bar(self.meet(self.left_bar(s), self.left_bar(t)))

    def left_quot(self, s: int, t: int) -> int:
        """``s t^-1`` for ``t`` a suffix of ``s``."""
        # s = r t and lbar(s) r = lbar(t), hence r = lbar(s) \ lbar(t)
        return self.rquot(self.left_bar(s), self.left_bar(t))

    # ------------------------------------------------------------ group-level checks

    def element(self, x: int) -> GroupElement:
        return self.lattice.elements[x]


def find_objects(lattice: IntervalLattice, params: RegularParams) -> list[int]:
    n = lattice.rank
    if n % params.p:
        return []
    c = lattice.coxeter
    cq = c**params.q
    ceta = c**params.eta
    want = n // params.p
    out = []
    for i, x in enumerate(lattice.elements):
        if lattice.length_of[i] != want or x.conj(cq) != x:
            continue
        prod, y = x, x
        for _ in range(params.p - 1):
            y = y.conj(ceta)
            prod = prod * y
        if prod == c:
            out.append(i)
    return out


def build_springer_data(lattice: IntervalLattice, params: RegularParams) -> GroupoidData:
    objects = find_objects(lattice, params)
    if not objects:
        raise ConfigurationError(f"no objects for d={params.d}, eta={params.eta}")
    cq = lattice.coxeter**params.q

    def fixed(e: int) -> bool:
        x = lattice.elements[e]
        return x.conj(cq) == x

    locs = [build_local_lattice(lattice, u, fixed) for u in objects]
    return GroupoidData(lattice, params, objects, locs)


def simple_divides(data: GroupoidData, s: int, t: int) -> bool:
    return data.divides(s, t)


def simple_meet(data: GroupoidData, s: int, t: int) -> int:
    return data.meet(s, t)


def simple_join(data: GroupoidData, s: int, t: int) -> int:
    return data.join(s, t)


def compose_simples(data: GroupoidData, s: int, t: int) -> int | None:
    return data.compose(s, t)
