"""Property suites for swap, recurrence, transport, positive conjugators and closures.

Each property is evaluated on a list of endomorphisms and returns the number of
instances checked together with the failures found.  Samples come either from
exhaustive enumeration (small groupoids) or from a seeded random generator.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .garside import Garside, Morphism
from .parabolic import Parabolics


@dataclass
class PropertyOutcome:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.checked > 0


# ---------------------------------------------------------------------------- sampling


def positive_path(g: Garside, start: int, goal: int) -> list[int]:
    """Shortest atom path ``start -> goal``."""
    d = g.data
    prev = {start: None}
    queue = deque([start])
    while queue and goal not in prev:
        k = queue.popleft()
        for a in d.atoms_of[k]:
            if d.tgt[a] not in prev:
                prev[d.tgt[a]] = a
                queue.append(d.tgt[a])
    path, k = [], goal
    while prev[k] is not None:
        path.append(prev[k])
        k = d.src[prev[k]]
    return path[::-1]


def random_positive_loop(g: Garside, u: int, n: int, rng: random.Random) -> Morphism:
    d = g.data
    word, k = [], u
    for _ in range(n):
        s = rng.randrange(d.base[k], d.delta_of[k] + 1)
        word.append(s)
        k = d.tgt[s]
    word += positive_path(g, k, u)
    return g.from_simples(u, word)


def random_endomorphism(g: Garside, rng: random.Random, max_sup: int) -> Morphism:
    """Positive, negative, mixed or conjugated-positive endomorphism with sup <= max_sup."""
    d = g.data
    while True:
        u = rng.randrange(d.n_objects)
        kind = rng.randrange(4)
        x = random_positive_loop(g, u, rng.randint(1, 3), rng)
        if kind == 1:
            x = g.inv(x)
        elif kind == 2:
            x = g.mul(x, g.inv(random_positive_loop(g, u, rng.randint(1, 3), rng)))
        elif kind == 3:
            y = random_positive_loop(g, u, rng.randint(0, 2), rng)
            s = rng.randrange(d.base[u], d.delta_of[u] + 1)
            x = g.conj(y, g.inv(g.simple(s))) if d.tgt[s] == u else g.conj(y, g.simple(s))
            if not g.is_endo(x):
                continue
        if x.sup <= max_sup and not g.is_identity(x):
            return x


def sample_endomorphisms(g: Garside, n: int, seed: int, max_sup: int = 6) -> list[Morphism]:
    rng = random.Random(seed)
    return [random_endomorphism(g, rng, max_sup) for _ in range(n)]


def all_endomorphisms(g: Garside, max_sup: int, min_inf: int) -> list[Morphism]:
    """Every endomorphism with ``min_inf <= inf`` and ``sup <= max_sup``."""
    d = g.data
    out = []
    for u in range(d.n_objects):
        for k in range(min_inf, max_sup + 1):
            start = g.phi_o(u, k)
            # left-weighted chains of proper simples from ``start``
            stack = [(start, ())]
            while stack:
                obj, factors = stack.pop()
                if obj == u:
                    out.append(Morphism(u, k, factors))
                if k + len(factors) >= max_sup:
                    continue
                for s in range(d.base[obj], d.delta_of[obj] + 1):
                    if d.is_identity(s) or d.is_delta(s):
                        continue
                    if factors and not d.is_identity(d.meet(s, d.bar(factors[-1]))):
                        continue
                    stack.append((d.tgt[s], factors + (s,)))
    return sorted(set(out))


# ---------------------------------------------------------------------------- helpers


def is_negative(g: Garside, x: Morphism) -> bool:
    return g.inv(x).k >= 0


def positive_conjugate(g: Garside, x: Morphism) -> Morphism | None:
    y = g.recurrent_orbit(x).recurrent
    return y if y.k >= 0 else None


def _simples_at(g: Garside, k: int) -> range:
    d = g.data
    return range(d.base[k], d.delta_of[k] + 1)


def _same_parabolic(P: Parabolics, b1: int, k1: int, conj: Morphism, b2: int, k2: int) -> bool:
    """``G_b1(k1,k1)^conj == G_b2(k2,k2)`` compared through z-elements."""
    g = P.g
    z1 = P.z_element(b1, k1).morphism
    z2 = P.z_element(b2, k2).morphism
    return g.conj(z1, conj) == z2


# ---------------------------------------------------------------------------- properties


def prop_swap_fixes_signed(g: Garside, x: Morphism, out: PropertyOutcome) -> None:
    if x.k >= 0 or is_negative(g, x):
        out.checked += 1
        if g.swap(x) != x:
            out.failures.append(f"sw moves {x}")


def prop_recurrent_is_positive_conjugates(g: Garside, x: Morphism, out: PropertyOutcome, limit: int) -> None:
    """Recurrent conjugates of a positively-conjugable x are exactly its positive conjugates.

    The recurrent set is connected under simple conjugation, so it suffices
    that no simple conjugate of a positive conjugate is recurrent without being
    positive.  The search visits at most ``limit`` positive conjugates.
    """
    y = positive_conjugate(g, x)
    if y is None:
        return
    seen = {y}
    queue = deque([y])
    visited = 0
    while queue and visited < limit:
        v = queue.popleft()
        visited += 1
        out.checked += 1
        for s in _simples_at(g, v.source):
            w = g.conj(v, g.simple(s))
            if w.k >= 0:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
            elif g.is_recurrent(w):
                out.failures.append(f"{w} recurrent but not positive")
                return


def prop_transport(g: Garside, x: Morphism, out: PropertyOutcome) -> None:
    for s in _simples_at(g, x.source):
        z = g.conj(x, g.simple(s))
        if not g.is_endo(z):
            continue
        out.checked += 1
        try:
            a1 = g.transport(x, g.simple(s), z)
        except AssertionError as exc:
            out.failures.append(f"transport of {x} along {s}: {exc}")
            return
        if g.conj(g.swap(x), a1) != g.swap(z):
            out.failures.append(f"sw(y)^a1 != sw(z) for {x}, {s}")
            return


def _recurrent_moves(g: Garside, y: Morphism) -> list[int]:
    return [s for s in _simples_at(g, y.source) if g.is_recurrent(g.conj(y, g.simple(s)))]


def prop_convexity(g: Garside, x: Morphism, out: PropertyOutcome) -> None:
    d = g.data
    y = g.recurrent_orbit(x).recurrent
    moves = _recurrent_moves(g, y)
    for i, a in enumerate(moves):
        for b in moves[i + 1 :]:
            out.checked += 1
            m = d.meet(a, b)
            if not g.is_recurrent(g.conj(y, g.simple(m))):
                out.failures.append(f"{y}^({a} meet {b}) not recurrent")
                return


def prop_spc_preserved(P: Parabolics, x: Morphism, out: PropertyOutcome) -> None:
    """SPC(y)^a = SPC(y^a) for recurrent y and simple a with y^a recurrent."""
    g = P.g
    y = g.recurrent_orbit(x).recurrent
    moves = g.minimal_positive_conjugators(y) if y.k >= 0 else _recurrent_moves(g, y)
    b1 = P.scpc(y)
    for s in moves:
        z = g.conj(y, g.simple(s))
        out.checked += 1
        if not _same_parabolic(P, b1, y.source, g.simple(s), P.scpc(z), z.source):
            out.failures.append(f"SPC not carried by {s} from {y}")
            return


def prop_min_conjugators_located(P: Parabolics, x: Morphism, out: PropertyOutcome) -> None:
    """A minimal positive conjugator of a positive x is an A0-atom of scpc(x) or lies in it."""
    g, d = P.g, P.d
    if x.k < 0:
        return
    beta = P.scpc(x)
    below = P.lattice.divisors(beta)
    for r in g.minimal_positive_conjugators(x):
        out.checked += 1
        inside = P.in_s_beta(beta, r)
        a0 = d.length[r] == 1 and not inside and d.a[r] in below
        if not (inside or a0):
            out.failures.append(f"conjugator {r} of {x} outside scpc and not an A0 atom")
            return


def prop_pc_powers(P: Parabolics, x: Morphism, out: PropertyOutcome) -> None:
    g = P.g
    z = P.z_of_handle(P.pc(x))
    for m in (-3, -2, -1, 1, 2, 3):
        out.checked += 1
        if P.z_of_handle(P.pc(g.power(x, m))) != z:
            out.failures.append(f"PC(x^{m}) != PC(x) for {x}")
            return


PROPERTY_NAMES = (
    "swap_fixes_signed",
    "recurrent_equals_positive_conjugates",
    "transport_identity",
    "convexity",
    "spc_preserved",
    "min_conjugators_located",
    "pc_powers",
)


def run_properties(
    P: Parabolics,
    xs: Iterable[Morphism],
    graph_limit: int = 20,
    progress: Callable[[int], None] | None = None,
) -> dict[str, PropertyOutcome]:
    g = P.g
    outs = {n: PropertyOutcome(n) for n in PROPERTY_NAMES}
    for i, x in enumerate(xs):
        prop_swap_fixes_signed(g, x, outs["swap_fixes_signed"])
        prop_recurrent_is_positive_conjugates(g, x, outs["recurrent_equals_positive_conjugates"], graph_limit)
        prop_transport(g, x, outs["transport_identity"])
        prop_convexity(g, x, outs["convexity"])
        prop_spc_preserved(P, x, outs["spc_preserved"])
        prop_min_conjugators_located(P, x, outs["min_conjugators_located"])
        prop_pc_powers(P, x, outs["pc_powers"])
        if progress is not None:
            progress(i)
    return outs


def property_checks(inst, cfg) -> "VerifyReport":
    """Seeded property suite on an instance, as a verification report."""
    import time

    from .verify import CheckResult, VerifyReport

    t0 = time.perf_counter()
    xs = sample_endomorphisms(inst.garside, cfg.samples, cfg.seed, cfg.max_sup)
    outs = run_properties(inst.parabolics, xs)
    elapsed = time.perf_counter() - t0
    report = VerifyReport()
    for n, o in outs.items():
        obs = f"{o.checked} instances, {len(o.failures)} failures" + (f": {o.failures[0]}" if o.failures else "")
        report.add(CheckResult(f"09_{n}", "zero failures", obs, o.passed, elapsed / len(outs)))
    return report
