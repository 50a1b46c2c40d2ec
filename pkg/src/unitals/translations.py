"""Translations of a unital and everything derived from them.

A translation with center c is an automorphism fixing c and fixing every
block through c setwise.  ``translations_at`` enumerates the full group for
one center by exhaustive backtracking; ``build_atlas`` runs it for every
center and organizes the results: the center sets of each translation order,
the points with only the trivial translation, the minimal primes of the
orders present, and the groups generated by all translations of a given
order.

Search layout per center.  Every non-center point must stay inside its own
pencil block (the block joining it to the center), so its candidate images
start as that block minus the center.  Once two points of any block have
images, the whole block's image is forced (the block joining the two image
points) and its remaining points are constrained to it; two blocks meet in
at most one point, so these forced constraints almost always collapse the
search after two well-chosen assignments.  A non-center point is never
offered itself as an image: a translation with an extra fixed point is the
identity, so the nontrivial translations are exactly the fixed-point-free
completions (the rule can be disabled for soundness checks, and every found
permutation is re-verified against the raw definition either way).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .incidence import Unital
from .permgroup import (
    Perm,
    PermGroup,
    identity_perm,
    perm_order,
    fixed_points,
)

__all__ = [
    "is_translation",
    "translations_at",
    "build_atlas",
    "TranslationAtlas",
    "TransitivityReport",
    "CongruenceReport",
    "translation_transitivity_check",
    "orbit_congruence_check",
    "smallest_prime_factor",
]


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def is_translation(U: Unital, perm, c: int) -> bool:
    """Raw definition: automorphism fixing c and each block through c setwise."""
    pi = tuple(perm)
    if len(pi) != U.v or sorted(pi) != list(range(U.v)):
        raise ValueError("not a permutation of the point set")
    if pi[c] != c:
        return False
    blocks = set(U.blocks)
    for blk in U.blocks:
        if tuple(sorted(pi[x] for x in blk)) not in blocks:
            return False
    pencil_ids = U.pencil(c)
    for bid in pencil_ids:
        blk = U.blocks[bid]
        if frozenset(pi[x] for x in blk) != frozenset(blk):
            return False
    return True


def _search_translations(v: int, blocks, block_sets, point_blocks, pair_block,
                         c: int, allow_fixed: bool) -> list[Perm]:
    """All translation candidates at center c (identity excluded unless
    ``allow_fixed``); results still need the raw re-verification."""
    nblocks = len(blocks)
    pencil = point_blocks[c]
    pencil_of = [-1] * v
    for bid in pencil:
        for x in blocks[bid]:
            if x != c:
                pencil_of[x] = bid
    pencil_set = frozenset(pencil)

    img = [-1] * v
    pre = [-1] * v
    img[c] = c
    pre[c] = c
    bimg = [-1] * nblocks
    bcnt = [0] * nblocks
    brep = [0] * nblocks
    used_images = [False] * nblocks
    for bid in pencil:
        bimg[bid] = bid
        bcnt[bid] = 1
        brep[bid] = c
        used_images[bid] = True

    sig_cache: dict[int, frozenset] = {}

    def pencil_sig(bid: int) -> frozenset:
        s = sig_cache.get(bid)
        if s is None:
            s = frozenset(pencil_of[x] for x in blocks[bid])
            sig_cache[bid] = s
        return s

    trail: list[tuple[int, int, int]] = []
    results: list[Perm] = []

    def assign_and_propagate(u0: int, w0: int) -> bool:
        stack = [(u0, w0)]
        scans: list[int] = []
        while stack or scans:
            if stack:
                u, w = stack.pop()
                if img[u] != -1:
                    if img[u] != w:
                        return False
                    continue
                if pre[w] != -1:
                    return False
                img[u] = w
                pre[w] = u
                trail.append((0, u, w))
                for bid in point_blocks[u]:
                    e = bimg[bid]
                    if e != -1:
                        if w not in block_sets[e]:
                            return False
                        bcnt[bid] += 1
                        trail.append((1, bid, 0))
                        continue
                    if bcnt[bid] == 0:
                        bcnt[bid] = 1
                        brep[bid] = u
                        trail.append((2, bid, 0))
                        continue
                    # second assigned point: the block's image is forced
                    a = img[brep[bid]]
                    e2 = pair_block[a * v + w]
                    if e2 < 0 or e2 in pencil_set or used_images[e2]:
                        return False
                    if pencil_sig(bid) != pencil_sig(e2):
                        return False
                    bimg[bid] = e2
                    used_images[e2] = True
                    bcnt[bid] += 1
                    trail.append((3, bid, e2))
                    scans.append(bid)
            else:
                bid = scans.pop()
                e = bimg[bid]
                epts = blocks[e]
                for u in blocks[bid]:
                    if img[u] != -1:
                        continue
                    pu = pencil_of[u]
                    cand = -1
                    multiple = False
                    for w in epts:
                        if pre[w] != -1 or pencil_of[w] != pu:
                            continue
                        if w == u and not allow_fixed:
                            continue
                        if cand == -1:
                            cand = w
                        else:
                            multiple = True
                            break
                    if cand == -1:
                        return False
                    if not multiple:
                        stack.append((u, cand))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            kind, a, b = trail.pop()
            if kind == 0:
                img[a] = -1
                pre[b] = -1
            elif kind == 1:
                bcnt[a] -= 1
            elif kind == 2:
                bcnt[a] = 0
            else:
                bimg[a] = -1
                bcnt[a] -= 1
                used_images[b] = False

    def free_candidates(u: int) -> list[int]:
        """Intersection of the images allowed by every determined block at u."""
        pu = pencil_of[u]
        base: Optional[set[int]] = None
        for bid in point_blocks[u]:
            e = bimg[bid]
            if e == -1:
                continue
            s = {
                w
                for w in blocks[e]
                if pre[w] == -1 and pencil_of[w] == pu and (allow_fixed or w != u)
            }
            base = s if base is None else base & s
            if len(base) <= 1:
                break
        assert base is not None  # the pencil block of u is always determined
        return sorted(base)

    def choose(depth: int):
        if depth == 0:
            u = 0 if c != 0 else 1
            return u, free_candidates(u)
        if depth == 1:
            first = next(x for x in range(v) if img[x] != -1 and x != c)
            b0 = pencil_of[first]
            u = next(x for x in range(v) if img[x] == -1 and pencil_of[x] != b0)
            return u, free_candidates(u)
        best = None
        best_key = None
        for u in range(v):
            if img[u] != -1:
                continue
            cs = free_candidates(u)
            half = sum(1 for bid in point_blocks[u] if bimg[bid] == -1 and bcnt[bid] > 0)
            key = (len(cs), -half, u)
            if best_key is None or key < best_key:
                best, best_key = (u, cs), key
                if not cs:
                    break
        return best

    def search(depth: int) -> None:
        nxt = choose(depth)
        if nxt is None:
            results.append(tuple(img))
            return
        u, cands = nxt
        for w in cands:
            mark = len(trail)
            if assign_and_propagate(u, w):
                search(depth + 1)
            undo(mark)

    if v > 1:
        search(0)
    return results


def translations_at(U: Unital, c: int, allow_fixed: bool = False) -> list[Perm]:
    """The group of all translations with center c, identity included.

    Exhaustive search; every returned permutation is re-verified against the
    raw definition.  ``allow_fixed`` disables the extra-fixed-point pruning
    rule (slower; used to cross-check that the rule loses nothing).
    """
    if not 0 <= c < U.v:
        raise ValueError(f"center {c} out of range")
    found = _search_translations(
        U.v, U.blocks, U.block_sets, U.point_blocks, U._pair_block, c, allow_fixed
    )
    ident = identity_perm(U.v)
    group = {ident}
    group.update(found)
    for p in sorted(group):
        if not is_translation(U, p, c):
            raise RuntimeError(
                f"search produced a non-translation at center {c}; this is a bug"
            )
    return sorted(group)


@dataclass(frozen=True)
class TranslationAtlas:
    """Complete per-center translation data for one unital."""

    unital: Unital
    nontrivial: tuple[tuple[Perm, ...], ...]  # per center, identity omitted

    @cached_property
    def centers_by_order(self) -> dict[int, frozenset[int]]:
        """Order n ↦ the set of centers admitting an order-n translation."""
        acc: dict[int, set[int]] = {}
        for c, perms in enumerate(self.nontrivial):
            for p in perms:
                acc.setdefault(perm_order(p), set()).add(c)
        return {n: frozenset(s) for n, s in sorted(acc.items())}

    @cached_property
    def trivial_centers(self) -> frozenset[int]:
        return frozenset(c for c, perms in enumerate(self.nontrivial) if not perms)

    @cached_property
    def least_primes(self) -> frozenset[int]:
        return frozenset(smallest_prime_factor(n) for n in self.centers_by_order)

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(sorted(self.centers_by_order))

    def translations_of_order(self, n: int) -> list[tuple[int, Perm]]:
        """(center, permutation) pairs for all order-n translations."""
        out = []
        for c, perms in enumerate(self.nontrivial):
            for p in perms:
                if perm_order(p) == n:
                    out.append((c, p))
        return out

    def group_for(self, n: int) -> PermGroup:
        """T[n]: the group generated by all order-n translations."""
        gens = [p for _, p in self.translations_of_order(n)]
        if not gens:
            return PermGroup([], degree=self.unital.v)
        return PermGroup(gens, degree=self.unital.v)

    def group_order(self, c: int) -> int:
        return len(self.nontrivial[c]) + 1


_WORK: dict = {}


def _atlas_init(v, blocks, block_sets, point_blocks, pair_block, allow_fixed):
    _WORK["args"] = (v, blocks, block_sets, point_blocks, pair_block)
    _WORK["allow_fixed"] = allow_fixed


def _atlas_job(c: int):
    v, blocks, block_sets, point_blocks, pair_block = _WORK["args"]
    return c, _search_translations(
        v, blocks, block_sets, point_blocks, pair_block, c, _WORK["allow_fixed"]
    )


def build_atlas(U: Unital, threads: int = 1) -> TranslationAtlas:
    """Run the translation search at every center.

    Centers are independent; with ``threads`` > 1 they are distributed over a
    worker pool.  Results are assembled in center order, so the atlas does
    not depend on the worker count.
    """
    ident = identity_perm(U.v)
    per_center: list[tuple[Perm, ...]] = [()] * U.v
    if threads <= 1:
        for c in range(U.v):
            raw = translations_at(U, c)
            per_center[c] = tuple(p for p in raw if p != ident)
    else:
        args = (U.v, U.blocks, U.block_sets, U.point_blocks, U._pair_block, False)
        with ProcessPoolExecutor(max_workers=threads, initializer=_atlas_init,
                                 initargs=args) as pool:
            for c, found in pool.map(_atlas_job, range(U.v), chunksize=16):
                perms = sorted(set(found) - {ident})
                for p in perms:
                    if not is_translation(U, p, c):
                        raise RuntimeError(
                            f"search produced a non-translation at center {c}; this is a bug"
                        )
                per_center[c] = tuple(perms)
    return TranslationAtlas(unital=U, nontrivial=tuple(per_center))


# -- lemma-level checks ---------------------------------------------------------


@dataclass(frozen=True)
class TransitivityReport:
    """Three facts about p-translations: the group they generate is
    transitive on its center set; for each block meeting the center set
    twice, the translations centered on that block act transitively on the
    block's centers; center sets collapse to their minimal prime."""

    p: int
    center_set_size: int
    group_transitive_on_centers: bool
    blocks_checked: int
    block_transitivity_ok: bool
    block_failures: tuple
    divisor_collapse_ok: bool
    divisor_failures: tuple

    @property
    def ok(self) -> bool:
        return (
            self.group_transitive_on_centers
            and self.block_transitivity_ok
            and self.divisor_collapse_ok
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "center_set_size": self.center_set_size,
            "group_transitive_on_centers": self.group_transitive_on_centers,
            "blocks_checked": self.blocks_checked,
            "block_transitivity_ok": self.block_transitivity_ok,
            "block_failures": [list(f) for f in self.block_failures],
            "divisor_collapse_ok": self.divisor_collapse_ok,
            "divisor_failures": [list(map(str, f)) for f in self.divisor_failures],
            "ok": self.ok,
        }


def translation_transitivity_check(atlas: TranslationAtlas, p: int) -> TransitivityReport:
    U = atlas.unital
    omega_p = atlas.centers_by_order.get(p, frozenset())
    if not omega_p:
        raise ValueError(f"no translations of order {p}")

    group = atlas.group_for(p)
    transitive = group.orbit(min(omega_p)) >= omega_p

    block_failures = []
    checked = 0
    by_center = {c: [q for q in perms if perm_order(q) == p]
                 for c, perms in enumerate(atlas.nontrivial)}
    for bid, blk in enumerate(U.blocks):
        inside = sorted(set(blk) & omega_p)
        if len(inside) < 2:
            continue
        checked += 1
        gens = [q for c in inside for q in by_center[c]]
        orbit = {inside[0]}
        queue = [inside[0]]
        while queue:
            x = queue.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        if not orbit >= set(inside):
            block_failures.append((bid, tuple(inside)))

    divisor_failures = []
    for n, centers in atlas.centers_by_order.items():
        for k in range(2, n + 1):
            if n % k == 0:
                other = atlas.centers_by_order.get(k, frozenset())
                if other != centers:
                    divisor_failures.append((n, k, "center sets differ"))

    return TransitivityReport(
        p=p,
        center_set_size=len(omega_p),
        group_transitive_on_centers=transitive,
        blocks_checked=checked,
        block_transitivity_ok=not block_failures,
        block_failures=tuple(block_failures),
        divisor_collapse_ok=not divisor_failures,
        divisor_failures=tuple(divisor_failures),
    )


@dataclass(frozen=True)
class CongruenceReport:
    """Cycle-structure and counting congruences for order-n translations."""

    n: int
    center_set_size: int
    size_congruent_one: bool
    translations_checked: int
    cycle_structure_ok: bool
    failures: tuple

    @property
    def ok(self) -> bool:
        return self.size_congruent_one and self.cycle_structure_ok

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "center_set_size": self.center_set_size,
            "size_congruent_one": self.size_congruent_one,
            "translations_checked": self.translations_checked,
            "cycle_structure_ok": self.cycle_structure_ok,
            "failures": [list(map(str, f)) for f in self.failures],
            "ok": self.ok,
        }


def orbit_congruence_check(atlas: TranslationAtlas, n: int) -> CongruenceReport:
    """Every order-n translation must move points in cycles of length
    exactly n, each cycle lying entirely inside or outside the center set,
    and the center set size must be ≡ 1 (mod n)."""
    omega_n = atlas.centers_by_order.get(n, frozenset())
    if not omega_n:
        raise ValueError(f"no translations of order {n}")
    failures = []
    checked = 0
    from .permgroup import perm_cycles

    for c, sigma in atlas.translations_of_order(n):
        checked += 1
        if set(fixed_points(sigma)) != {c}:
            failures.append((c, "fixed points", fixed_points(sigma)))
            continue
        for cyc in perm_cycles(sigma):
            if len(cyc) != n:
                failures.append((c, "cycle length", cyc))
                break
            inside = sum(1 for x in cyc if x in omega_n)
            if inside not in (0, len(cyc)):
                failures.append((c, "cycle straddles the center set", cyc))
                break
    return CongruenceReport(
        n=n,
        center_set_size=len(omega_n),
        size_congruent_one=len(omega_n) % n == 1,
        translations_checked=checked,
        cycle_structure_ok=not failures,
        failures=tuple(failures),
    )
