"""Permutation groups via a deterministic Schreier–Sims stabilizer chain.

Permutations are tuples of images: ``p[i]`` is where point i goes, and
``compose(p, q)`` applies p first, then q.  The chain construction takes an
optional ``base_prefix`` so pointwise stabilizers of chosen points fall out
of the chain directly (used for one- and two-point stabilizers).  Everything
is deterministic: no randomized sifting, fixed iteration orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Optional, Sequence

Perm = tuple[int, ...]

ENUMERATION_LIMIT = 1_000_000
CLOSURE_LIMIT = 10_000


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(q[x] for x in p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conjugate(p: Perm, by: Perm) -> Perm:
    """by^-1 · p · by (apply inverse(by), then p, then by)."""
    return compose(compose(inverse(by), p), by)


def perm_cycles(p: Perm) -> list[tuple[int, ...]]:
    """Cycles of length >= 2, each starting at its least point, sorted."""
    seen = [False] * len(p)
    cycles = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        cycles.append(tuple(cyc))
    return cycles


def perm_order(p: Perm) -> int:
    order = 1
    for cyc in perm_cycles(p):
        order = lcm(order, len(cyc))
    return order


def fixed_points(p: Perm) -> tuple[int, ...]:
    return tuple(i for i, x in enumerate(p) if x == i)


def is_involution(p: Perm) -> bool:
    return perm_order(p) == 2


def act_on_sorted_tuple(p: Perm, t: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(p[i] for i in t))


def validate_perm(p: Sequence[int], degree: Optional[int] = None) -> Perm:
    t = tuple(p)
    n = len(t)
    if degree is not None and n != degree:
        raise ValueError(f"permutation degree {n} != expected {degree}")
    if sorted(t) != list(range(n)):
        raise ValueError("not a permutation: images are not 0..n-1 exactly once")
    return t


def mulclose(gens: Iterable[Perm], limit: int = CLOSURE_LIMIT) -> set[Perm]:
    """Brute-force closure of a generating set; the small-group oracle."""
    gens = [tuple(g) for g in gens]
    if not gens:
        raise ValueError("mulclose needs at least one permutation")
    n = len(gens[0])
    elems = {identity_perm(n)}
    frontier = list(elems)
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                x = compose(h, g)
                if x not in elems:
                    elems.add(x)
                    new.append(x)
                    if len(elems) > limit:
                        raise ValueError(f"closure exceeded {limit} elements")
        frontier = new
    return elems


class PermGroup:
    """⟨generators⟩ with a stabilizer chain relative to an optional base prefix."""

    def __init__(self, generators: Iterable[Sequence[int]], degree: Optional[int] = None,
                 base_prefix: Sequence[int] = ()):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a trivial group")
            degree = len(gens[0])
        self.degree = degree
        ident = identity_perm(degree)
        self._identity = ident
        cleaned = sorted({validate_perm(g, degree) for g in gens} - {ident})
        self.generators: tuple[Perm, ...] = tuple(cleaned)
        self._base: list[int] = []
        self._gens_at: list[list[Perm]] = []
        self._transversal: list[dict[int, Perm]] = []
        for b in base_prefix:
            if not 0 <= b < degree:
                raise ValueError(f"base point {b} out of range")
            if b in self._base:
                raise ValueError("base prefix repeats a point")
            self._base.append(b)
            self._gens_at.append([])
            self._transversal.append({b: ident})
        for g in self.generators:
            self._add(g)
        self._order: Optional[int] = None

    # -- chain construction -------------------------------------------------

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self._base)):
            t = g[self._base[i]]
            u = self._transversal[i].get(t)
            if u is None:
                return g, i
            g = compose(g, inverse(u))
        return g, len(self._base)

    def _extend_base(self, moved: int) -> None:
        self._base.append(moved)
        self._gens_at.append([])
        self._transversal.append({moved: self._identity})

    def _add(self, g: Perm) -> None:
        h, i = self._sift(g)
        if h == self._identity:
            return
        if i == len(self._base):
            self._extend_base(min(x for x in range(self.degree) if h[x] != x))
        for j in range(i + 1):
            self._gens_at[j].append(h)
        self._close()

    def _orbit_pass(self, i: int) -> None:
        """Rebuild the basic orbit and transversal at level i (BFS, fixed order)."""
        gens = self._gens_at[i]
        b = self._base[i]
        trans = {b: self._identity}
        queue = [b]
        while queue:
            nxt = []
            for pt in queue:
                u = trans[pt]
                for s in gens:
                    x = s[pt]
                    if x not in trans:
                        trans[x] = compose(u, s)
                        nxt.append(x)
            queue = nxt
        self._transversal[i] = trans

    def _close(self) -> None:
        """Sims's closure: verify the Schreier condition from the deepest level up."""
        self._order = None
        i = len(self._base) - 1
        while i >= 0:
            self._orbit_pass(i)
            trans = self._transversal[i]
            added_at = None
            for t in list(trans):
                u_t = trans[t]
                for s in self._gens_at[i]:
                    x = s[t]
                    g = compose(compose(u_t, s), inverse(trans[x]))
                    if g == self._identity:
                        continue
                    h, j = self._sift(g, i + 1)
                    if h == self._identity:
                        continue
                    if j == len(self._base):
                        self._extend_base(min(y for y in range(self.degree) if h[y] != y))
                    for l in range(i + 1, j + 1):
                        self._gens_at[l].append(h)
                    added_at = j
                    break
                if added_at is not None:
                    break
            if added_at is not None:
                i = added_at
            else:
                i -= 1

    # -- queries --------------------------------------------------------------

    def order(self) -> int:
        if self._order is None:
            n = 1
            for trans in self._transversal:
                n *= len(trans)
            self._order = n
        return self._order

    def __contains__(self, p) -> bool:
        g = validate_perm(p, self.degree)
        h, _ = self._sift(g)
        return h == self._identity

    def elements(self, limit: int = ENUMERATION_LIMIT) -> list[Perm]:
        """All elements, by transversal products.  Guarded by ``limit``."""
        if self.order() > limit:
            raise ValueError(f"group order {self.order()} exceeds enumeration limit {limit}")
        elems = [self._identity]
        for i in range(len(self._base) - 1, -1, -1):
            reps = [self._transversal[i][t] for t in sorted(self._transversal[i])]
            elems = [compose(h, u) for u in reps for h in elems]
        return elems

    def orbit(self, x: int) -> frozenset[int]:
        if not 0 <= x < self.degree:
            raise ValueError(f"point {x} out of range")
        seen = {x}
        queue = [x]
        while queue:
            nxt = []
            for pt in queue:
                for g in self.generators:
                    y = g[pt]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            queue = nxt
        return frozenset(seen)

    def orbits(self, domain: Optional[Iterable[int]] = None) -> list[frozenset[int]]:
        pts = sorted(domain) if domain is not None else range(self.degree)
        seen: set[int] = set()
        out = []
        for x in pts:
            if x not in seen:
                orb = self.orbit(x)
                seen |= orb
                out.append(orb)
        return out

    def level_group(self, k: int) -> "PermGroup":
        """Pointwise stabilizer of the first k base points.

        If the chain ran out of levels before k, the stabilizer is trivial.
        """
        gens = self._gens_at[k] if k < len(self._gens_at) else []
        return PermGroup(gens, degree=self.degree)

    def with_base(self, base_prefix: Sequence[int]) -> "PermGroup":
        return PermGroup(self.generators, degree=self.degree, base_prefix=base_prefix)


def group_generate(gens: Iterable[Sequence[int]], degree: Optional[int] = None) -> PermGroup:
    return PermGroup(gens, degree=degree)


def orbit_of(G: PermGroup, x: int) -> frozenset[int]:
    return G.orbit(x)


def _check_invariant(G: PermGroup, X: frozenset[int]) -> None:
    for g in G.generators:
        if {g[x] for x in X} != X:
            raise ValueError("the point set is not invariant under the group")


def is_transitive(G: PermGroup, X: Iterable[int]) -> bool:
    Xs = frozenset(X)
    if not Xs:
        raise ValueError("empty point set")
    _check_invariant(G, Xs)
    if len(Xs) == 1:
        return True
    return G.orbit(min(Xs)) >= Xs


def is_two_transitive(G: PermGroup, X: Iterable[int]) -> bool:
    Xs = frozenset(X)
    if len(Xs) < 2:
        raise ValueError("two-transitivity needs at least two points")
    _check_invariant(G, Xs)
    if not is_transitive(G, Xs):
        return False
    x0 = min(Xs)
    stab = G.with_base((x0,)).level_group(1)
    rest = Xs - {x0}
    return stab.orbit(min(rest)) >= rest


def setwise_block_stabilizer(G: PermGroup, block: Iterable[int]) -> PermGroup:
    """Subgroup fixing a block setwise, by filtering the element list.

    Only implemented for groups small enough to enumerate.
    """
    blk = frozenset(block)
    members = [g for g in G.elements() if {g[x] for x in blk} == blk]
    return PermGroup(members, degree=G.degree)


def two_point_stabilizer(G: PermGroup, x: int, y: int) -> PermGroup:
    if x == y:
        raise ValueError("two distinct points are required")
    return G.with_base((x, y)).level_group(2)


def two_point_stabilizer_orbits(G: PermGroup, x: int, y: int) -> list[int]:
    """Sorted orbit-length multiset of the two-point stabilizer on the domain."""
    stab = two_point_stabilizer(G, x, y)
    return sorted(len(o) for o in stab.orbits())


def orbits_on_tuples(G: PermGroup, items: Iterable[Sequence[int]]) -> list[list[tuple[int, ...]]]:
    """Orbits of G acting on sorted tuples (e.g. blocks).  Deterministic order."""
    pool = {tuple(t) for t in items}
    out = []
    seen: set[tuple[int, ...]] = set()
    for t in sorted(pool):
        if t in seen:
            continue
        orb = {t}
        queue = [t]
        while queue:
            cur = queue.pop()
            for g in G.generators:
                img = act_on_sorted_tuple(g, cur)
                if img not in orb:
                    orb.add(img)
                    queue.append(img)
        seen |= orb
        out.append(sorted(orb))
    return out


# -- structure checks ----------------------------------------------------------


@dataclass(frozen=True)
class GleasonReport:
    """Transitivity from local certificates: for each x in X an element of
    prime order p whose only fixed point inside X is x.  If all certificates
    verify, the group they generate is transitive on X."""

    ok: bool
    transitive: bool
    certificate_failures: tuple
    uncovered: tuple

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "transitive": self.transitive,
            "certificate_failures": [list(map(str, f)) for f in self.certificate_failures],
            "uncovered": list(self.uncovered),
        }


def gleason_check(certificates: Iterable[tuple[int, Sequence[int]]], X: Iterable[int],
                  p: int) -> GleasonReport:
    Xs = frozenset(X)
    if not Xs:
        raise ValueError("empty point set")
    certs = [(x, tuple(g)) for x, g in certificates]
    failures = []
    covered = set()
    perms = []
    for x, g in certs:
        if x not in Xs:
            failures.append((x, "certificate point outside X"))
            continue
        if perm_order(g) != p:
            failures.append((x, f"element order {perm_order(g)} != {p}"))
            continue
        fix_in_x = set(fixed_points(g)) & Xs
        if fix_in_x != {x}:
            failures.append((x, f"fixed points in X are {sorted(fix_in_x)}, expected [{x}]"))
            continue
        covered.add(x)
        perms.append(g)
    uncovered = tuple(sorted(Xs - covered))
    transitive = False
    if not failures and not uncovered:
        G = PermGroup(perms)
        try:
            transitive = is_transitive(G, Xs)
        except ValueError:
            transitive = False
    return GleasonReport(
        ok=not failures and not uncovered and transitive,
        transitive=transitive,
        certificate_failures=tuple(failures),
        uncovered=uncovered,
    )


@dataclass(frozen=True)
class DihedralReport:
    """Outcome of the generalized-dihedral decomposition G = ⟨τ⟩M."""

    ok: bool
    reason: Optional[str]
    m_order: Optional[int]
    m_abelian: Optional[bool]
    m_regular: Optional[bool]
    tau_conjugation_semiregular: Optional[bool]
    equivalences_agree: Optional[bool]
    coset_is_conjugacy_class: Optional[bool]
    coset_all_involutions: Optional[bool]
    tau_inverts_m: Optional[bool]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "reason": self.reason,
            "m_order": self.m_order,
            "m_abelian": self.m_abelian,
            "m_regular": self.m_regular,
            "tau_conjugation_semiregular": self.tau_conjugation_semiregular,
            "equivalences_agree": self.equivalences_agree,
            "coset_is_conjugacy_class": self.coset_is_conjugacy_class,
            "coset_all_involutions": self.coset_all_involutions,
            "tau_inverts_m": self.tau_inverts_m,
        }


def generalized_dihedral_check(G: PermGroup, tau: Sequence[int]) -> DihedralReport:
    """Decompose G as ⟨τ⟩M with M the products of two involutions.

    Checks that M is an odd-order subgroup of index 2 inverted by τ, that the
    coset τM is exactly the conjugacy class of τ under M and consists of
    involutions, and evaluates three conditions whose equivalence is expected
    in that situation: M abelian, M regular on the domain, and conjugation by
    τ fixing no nontrivial element of M.
    """
    t = validate_perm(tau, G.degree)
    ident = identity_perm(G.degree)
    if t == ident or compose(t, t) != ident:
        raise ValueError("tau must be an involution")
    if t not in G:
        raise ValueError("tau does not belong to the group")
    elems = G.elements()
    involutions = [g for g in elems if g != ident and compose(g, g) == ident]
    if not involutions:
        return DihedralReport(False, "group has no involutions", None, None, None,
                              None, None, None, None, None)
    M = {compose(a, b) for a in involutions for b in involutions}
    closed = all(compose(a, b) in M for a in M for b in M)
    if not closed:
        return DihedralReport(False, "products of involutions do not form a subgroup",
                              None, None, None, None, None, None, None, None)
    m_order = len(M)
    if m_order % 2 == 0:
        return DihedralReport(False, f"subgroup of involution products has even order {m_order}",
                              m_order, None, None, None, None, None, None, None)
    if len(elems) != 2 * m_order:
        return DihedralReport(
            False,
            f"subgroup of involution products has index {len(elems) / m_order:g}, expected 2",
            m_order, None, None, None, None, None, None, None)

    tau_inverts = all(compose(compose(t, m), t) == inverse(m) for m in M)
    coset = {compose(t, m) for m in M}
    conj_class = {compose(compose(inverse(m), t), m) for m in M}
    coset_is_class = coset == conj_class
    coset_all_inv = all(compose(g, g) == ident and g != ident for g in coset)

    m_abelian = all(compose(a, b) == compose(b, a) for a in M for b in M)
    orbit0 = {m[0] for m in M}
    m_regular = len(orbit0) == G.degree and m_order == G.degree
    tau_semiregular = all(compose(compose(t, m), t) != m for m in M if m != ident)
    agree = m_abelian == m_regular == tau_semiregular

    return DihedralReport(
        ok=tau_inverts and coset_is_class and coset_all_inv,
        reason=None,
        m_order=m_order,
        m_abelian=m_abelian,
        m_regular=m_regular,
        tau_conjugation_semiregular=tau_semiregular,
        equivalences_agree=agree,
        coset_is_conjugacy_class=coset_is_class,
        coset_all_involutions=coset_all_inv,
        tau_inverts_m=tau_inverts,
    )


@dataclass(frozen=True)
class UniqueInvolutionReport:
    ok: bool
    count: int
    involution: Optional[Perm]
    inverts_other: Optional[bool]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "count": self.count,
            "involution": list(self.involution) if self.involution else None,
            "inverts_other": self.inverts_other,
        }


def unique_involution_check(Q: PermGroup, N: Optional[PermGroup] = None) -> UniqueInvolutionReport:
    """Does Q contain exactly one involution, and does it invert N elementwise?"""
    ident = identity_perm(Q.degree)
    invs = [g for g in Q.elements() if g != ident and compose(g, g) == ident]
    count = len(invs)
    if count != 1:
        return UniqueInvolutionReport(False, count, None, None)
    t = invs[0]
    inverts = None
    if N is not None:
        if N.degree != Q.degree:
            raise ValueError("groups act on different domains")
        inverts = all(compose(compose(t, n), t) == inverse(n) for n in N.elements())
    return UniqueInvolutionReport(inverts is not False, count, t, inverts)
