"""Standard parabolic subgroupoids, ribbons, closures and z-elements.

A standard parabolic is indexed by an interval element ``beta`` that occurs as
the second component of some simple.  Its objects are the ``u`` with
``beta <= u``, its simples the ``(a, b)`` with ``beta <= b``, and its Garside
map sends ``u = alpha beta`` to the simple ``(alpha, beta)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .garside import ContractError, Garside, Morphism
from .springer import GroupoidData


@dataclass(frozen=True)
class StandardParabolic:
    beta: int
    objects: tuple[int, ...]
    simples: frozenset[int]
    delta_table: dict[int, int] = field(compare=False, hash=False)
    phi_beta: dict[int, int] = field(compare=False, hash=False)


@dataclass(frozen=True)
class ZElement:
    morphism: Morphism
    exponent: int


@dataclass(frozen=True)
class ParabolicHandle:
    """``G_beta(base, base)`` pulled back along ``conjugator`` (reference -> base)."""

    beta: int
    base: int
    conjugator: Morphism


@dataclass
class SundialLadder:
    levels: list[frozenset[int]]
    success: bool
    outside: frozenset[int]


@dataclass
class Ribbon:
    beta: int
    s: int
    beta_image: int
    object_map: dict[int, int]
    simple_map: dict[int, int]


class Parabolics:
    """Parabolic machinery on top of a :class:`Garside` engine."""

    def __init__(self, garside: Garside):
        self.g = garside
        self.d: GroupoidData = garside.data
        self._std: dict[int, StandardParabolic] = {}
        self._z: dict[tuple[int, int, str], ZElement] = {}

    # ---------------------------------------------------------------- interval helpers

    @property
    def lattice(self):
        return self.d.lattice

    def ileq(self, x: int, y: int) -> bool:
        """``x <= y`` in the interval (y any element)."""
        return x in self.lattice.divisors(y)

    def imeet(self, x: int, y: int) -> int:
        return self.lattice.meet(x, y)

    def ijoin(self, x: int, y: int) -> int:
        return self.lattice.join(x, y)

    def iprod(self, *xs) -> int | None:
        L = self.lattice
        out = L.elements[xs[0]] if isinstance(xs[0], int) else xs[0]
        for x in xs[1:]:
            out = out * (L.elements[x] if isinstance(x, int) else x)
        return L.index(out)

    @cached_property
    def admissible(self) -> list[int]:
        return sorted(set(self.d.b))

    # ---------------------------------------------------------------- standard parabolics

    def divides_object(self, beta: int, k: int) -> bool:
        return beta in self.d.locals_[k].pos

    def objects_of(self, beta: int) -> list[int]:
        return [k for k in range(self.d.n_objects) if self.divides_object(beta, k)]

    def delta_beta(self, beta: int, k: int) -> int | None:
        return self.d.by_b.get((k, beta))

    def in_s_beta(self, beta: int, s: int) -> bool:
        loc = self.d.locals_[self.d.src[s]]
        i = loc.pos.get(beta)
        return i is not None and loc.leq(i, loc.pos[self.d.b[s]])

    def build_standard_parabolic(self, beta: int) -> StandardParabolic:
        if beta in self._std:
            return self._std[beta]
        objs = self.objects_of(beta)
        if not objs or beta not in set(self.d.b):
            raise ContractError(f"beta={beta} is not admissible")
        d, g = self.d, self.g
        simples = frozenset(s for k in objs for s in range(d.base[k], d.delta_of[k] + 1) if self.in_s_beta(beta, s))
        delta = {k: self.delta_beta(beta, k) for k in objs}
        phi = {}
        for s in simples:
            t = g.product(g.inv(g.simple(delta[d.src[s]])), g.simple(s), g.simple(delta[d.tgt[s]]))
            phi[s] = self.as_simple(t)
        sp = StandardParabolic(beta, tuple(objs), simples, delta, phi)
        self._std[beta] = sp
        return sp

    def as_simple(self, f: Morphism) -> int:
        d = self.d
        if f.k == 0 and len(f.factors) == 1:
            return f.factors[0]
        if f.k == 0 and not f.factors:
            return d.ident_of[f.source]
        if f.k == 1 and not f.factors:
            return d.delta_of[f.source]
        raise ContractError("morphism is not simple")

    def is_connected(self, beta: int) -> bool:
        sp = self.build_standard_parabolic(beta)
        seen = {sp.objects[0]}
        queue = deque(seen)
        adj: dict[int, set[int]] = {}
        for s in sp.simples:
            adj.setdefault(self.d.src[s], set()).add(self.d.tgt[s])
            adj.setdefault(self.d.tgt[s], set()).add(self.d.src[s])
        while queue:
            k = queue.popleft()
            for v in adj.get(k, ()):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen == set(sp.objects)

    # ---------------------------------------------------------------- membership and closure

    def contains(self, beta: int, f: Morphism) -> bool:
        g = self.g
        if f.k < 0:
            fr = g.fraction(f)
            return self.contains(beta, fr.den) and self.contains(beta, fr.num)
        if not self.divides_object(beta, f.source):
            return False
        if f.k > 0 and beta != 0:
            return False
        return all(self.in_s_beta(beta, s) for s in f.factors)

    def scpc(self, f: Morphism) -> int:
        """Interval element of the smallest standard parabolic containing ``f``."""
        g, d = self.g, self.d
        if f.k < 0:
            fr = g.fraction(f)
            return self.imeet(self.scpc(fr.den), self.scpc(fr.num))
        if f.k > 0:
            return 0
        beta = d.objects[f.source]
        for s in f.factors:
            beta = self.imeet(beta, d.b[s])
        return beta

    def intersect_standard(self, b1: int, b2: int) -> int | None:
        """``b1 v b2`` when the two object sets meet, else ``None``."""
        if not any(self.divides_object(b1, k) and self.divides_object(b2, k) for k in range(self.d.n_objects)):
            return None
        return self.ijoin(b1, b2)

    # ---------------------------------------------------------------- ribbons

    def ribbon_image(self, beta: int, s: int) -> int:
        """``s^-1 beta s^{c^eta}``."""
        L = self.lattice
        se = L.elements[s].conj(self.d._ceta)
        out = L.index(L.elements[s].inverse() * L.elements[beta] * se)
        if out is None:
            raise AssertionError("ribbon image left the interval")
        return out

    def ribbon(self, beta: int, s: int) -> Ribbon:
        if s not in self.lattice.divisors(beta):
            raise ContractError("s does not divide beta")
        d, L = self.d, self.lattice
        beta2 = self.ribbon_image(beta, s)
        sinv = L.elements[s].inverse()
        se = L.elements[s].conj(d._ceta)
        omap, smap = {}, {}
        sp = self.build_standard_parabolic(beta)
        for k in sp.objects:
            u = d.objects[k]
            rest = L.index(sinv * L.elements[u])
            sig = d.simple_at(k, s)
            assert d.b[sig] == rest
            omap[k] = d.tgt[sig]
        for t in sp.simples:
            a2 = L.index(L.elements[d.a[t]].conj(L.elements[s]))
            b2 = L.index(sinv * L.elements[d.b[t]] * se)
            img = d.simple_at(omap[d.src[t]], a2)
            if img is None or d.b[img] != b2:
                raise AssertionError("ribbon image is not a simple")
            smap[t] = img
        return Ribbon(beta, s, beta2, omap, smap)

    def ribbon_closure(self, start: list[int]) -> set[int]:
        seen = set(start)
        queue = deque(start)
        while queue:
            beta = queue.popleft()
            for s in sorted(self.lattice.divisors(beta)):
                nb = self.ribbon_image(beta, s)
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        return seen

    def ribbon_path_to(self, beta: int, k0: int) -> list[tuple[int, int]]:
        """Ribbon moves ``(beta_i, s_i)`` ending at some divisor of object ``k0``."""
        prev: dict[int, tuple[int, int] | None] = {beta: None}
        queue = deque([beta])
        while queue:
            b = queue.popleft()
            if self.divides_object(b, k0):
                path = []
                while prev[b] is not None:
                    pb, s = prev[b]
                    path.append((pb, s))
                    b = pb
                return path[::-1]
            for s in sorted(self.lattice.divisors(b)):
                nb = self.ribbon_image(b, s)
                if nb not in prev:
                    prev[nb] = (b, s)
                    queue.append(nb)
        raise AssertionError(f"no ribbon path from beta={beta}")

    def ribbon_classes(self) -> list[list[int]]:
        """Connected components of admissible betas under ribbon moves."""
        adm = self.admissible
        parent = {b: b for b in adm}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b in adm:
            for s in self.lattice.divisors(b):
                nb = self.ribbon_image(b, s)
                ra, rb = find(b), find(nb)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for b in adm:
            groups.setdefault(find(b), []).append(b)
        return sorted(groups.values())

    # ---------------------------------------------------------------- sundial

    def sundial(self, beta: int) -> SundialLadder:
        d = self.d
        sp = self.build_standard_parabolic(beta)
        objs = set(sp.objects)
        inner = [s for s in sp.simples if d.length[s] == 1]
        outer = frozenset(
            s for k in objs for s in d.atoms_of[k] if s not in sp.simples
        )
        inner_at: dict[int, list[int]] = {}
        for s in inner:
            inner_at.setdefault(d.src[s], []).append(s)
        below = self.lattice.divisors(beta)
        A = {s for s in outer if d.a[s] in below}
        levels = [frozenset(A)]
        while True:
            new = set()
            for s in outer - A:
                ok = True
                for sig in inner_at.get(d.src[s], ()):
                    q = d.complement(sig, s)
                    if d.a[q] == d.a[s]:
                        continue
                    if not any(d.src[t] == d.src[q] and d.divides(t, q) for t in A):
                        ok = False
                        break
                if ok:
                    new.add(s)
            by_a: dict[int, set[int]] = {}
            for s in outer:
                by_a.setdefault(d.a[s], set()).add(s)
            new = {s for s in new if by_a[d.a[s]] <= new | A}
            if not new:
                break
            A |= new
            levels.append(frozenset(A))
        return SundialLadder(levels, A == outer, outer)

    # ---------------------------------------------------------------- atomic loops

    def atomic_loops(self, k: int) -> list[Morphism]:
        d, g = self.d, self.g
        out = set()
        for a in d.atoms_of[k]:
            for b in d.atoms_of[d.tgt[a]]:
                if d.tgt[b] == k:
                    out.add(g.from_simples(k, [a, b]))
        return sorted(out)

    # ---------------------------------------------------------------- z-elements

    def delta_power(self, beta: int, k: int, e: int) -> Morphism:
        g, d = self.g, self.d
        out = g.identity(k)
        cur = k
        for _ in range(e):
            s = self.delta_beta(beta, cur)
            out = g.mul(out, g.simple(s))
            cur = d.tgt[s]
        return out

    def phi_beta_order(self, beta: int) -> int:
        sp = self.build_standard_parabolic(beta)
        e = 1
        cur = dict(sp.phi_beta)
        while any(cur[s] != s for s in cur):
            cur = {s: sp.phi_beta[t] for s, t in cur.items()}
            e += 1
        return e

    def z_element(self, beta: int, k: int, method: str = "loops", cap: int = 200) -> ZElement:
        key = (beta, k, method)
        if key in self._z:
            return self._z[key]
        g = self.g
        sp = self.build_standard_parabolic(beta)
        if k not in sp.objects:
            raise ContractError("object not in the parabolic")
        if method == "automorphism":
            e = self.phi_beta_order(beta)
        else:
            loops = [x for x in self.atomic_loops(k) if self.contains(beta, x)]
            e = None
            z = g.identity(k)
            cur = k
            for n in range(1, cap + 1):
                s = self.delta_beta(beta, cur)
                z = g.mul(z, g.simple(s))
                cur = self.d.tgt[s]
                if cur == k and all(g.mul(z, x) == g.mul(x, z) for x in loops):
                    e = n
                    break
            if e is None:
                raise RuntimeError("no central power of the parabolic Garside element")
            if e % self.phi_beta_order(beta):
                raise AssertionError(f"phi_beta^{e} is not trivial for beta={beta}")
        z = ZElement(self.delta_power(beta, k, e), e)
        self._z[key] = z
        return z

    def z_commutes_with_simples(self, beta: int, method: str = "loops") -> bool:
        sp = self.build_standard_parabolic(beta)
        g, d = self.g, self.d
        zs = {k: self.z_element(beta, k, method).morphism for k in sp.objects}
        return all(g.mul(zs[d.src[s]], g.simple(s)) == g.mul(g.simple(s), zs[d.tgt[s]]) for s in sp.simples)

    # ---------------------------------------------------------------- closures and handles

    def spc_recurrent(self, x: Morphism) -> int:
        if not self.g.is_recurrent(x):
            raise ContractError("element is not recurrent")
        return self.scpc(x)

    def pc(self, x: Morphism) -> ParabolicHandle:
        orb = self.g.recurrent_orbit(x)
        y = orb.recurrent
        return ParabolicHandle(self.scpc(y), y.source, orb.conjugator)

    def z_of_handle(self, h: ParabolicHandle, method: str = "loops") -> Morphism:
        g = self.g
        z = self.z_element(h.beta, h.base, method).morphism
        return g.product(h.conjugator, z, g.inv(h.conjugator))

    def is_standard(self, h: ParabolicHandle, method: str = "loops") -> bool:
        return self.z_of_handle(h, method).k >= 0

    def rank(self, x: Morphism) -> int:
        h = self.pc(x)
        return self.d.length[self.delta_beta(h.beta, h.base)]

    def adjacent(self, h1: ParabolicHandle, h2: ParabolicHandle, method: str = "loops") -> bool:
        z1, z2 = self.z_of_handle(h1, method), self.z_of_handle(h2, method)
        if z1.source != z2.source:
            raise ContractError("handles live at different reference objects")
        g = self.g
        return z1 != z2 and g.mul(z1, z2) == g.mul(z2, z1)

    def handle_equal(self, h1: ParabolicHandle, h2: ParabolicHandle, method: str = "loops") -> bool:
        return self.z_of_handle(h1, method) == self.z_of_handle(h2, method)

    def conjugate_handle(self, h: ParabolicHandle, f: Morphism) -> ParabolicHandle:
        """The handle of ``B^f`` where ``B`` is represented by ``h``."""
        return ParabolicHandle(h.beta, h.base, self.g.mul(self.g.inv(f), h.conjugator))

    def standard_handle(self, beta: int, k: int) -> ParabolicHandle:
        return ParabolicHandle(beta, k, self.g.identity(k))

    def intersect_same_conjugator(self, h1: ParabolicHandle, h2: ParabolicHandle) -> ParabolicHandle | None:
        """Intersection when both handles share base and conjugator.

        Intersecting two arbitrary handles is not implemented: only existence
        is known, with no effective procedure.
        """
        if h1.base != h2.base or h1.conjugator != h2.conjugator:
            raise NotImplementedError("general intersection of parabolic handles")
        beta = self.intersect_standard(h1.beta, h2.beta)
        return None if beta is None else ParabolicHandle(beta, h1.base, h1.conjugator)
