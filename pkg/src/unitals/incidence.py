"""Block designs on indexed point sets: validation, restriction, searches.

The central objects are :class:`Incidence` (points 0..v-1 plus a canonical
sorted tuple of blocks) and :class:`Unital`, an incidence structure carrying
a declared order q.  Design axioms are *not* enforced by constructors — that
is :func:`validate_unital`'s job, so broken inputs can be loaded and reported.

Also here: the plain-text unital file format.  Line one is
``unital v=<points> k=<blocksize>``; every following non-comment line is one
block as space-separated ascending point indices; ``#`` starts a comment.
Canonical form lists blocks in lexicographic order, which the constructors
produce and the writer emits.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

__all__ = [
    "Incidence",
    "Unital",
    "ValidationReport",
    "Restriction",
    "FisherReport",
    "OnanResult",
    "validate_unital",
    "restrict_to",
    "ideal_embedding_check",
    "fisher_check",
    "onan_search",
    "isomorphism_search",
    "read_unital",
    "write_unital",
    "parse_unital",
    "format_unital",
]


class Incidence:
    """Points 0..v-1 and a canonical block list.

    Structural invariants (enforced here): every block is a strictly
    ascending tuple of in-range point indices, blocks are pairwise distinct,
    and the block list is sorted lexicographically.
    """

    def __init__(self, v: int, blocks: Iterable[Sequence[int]]):
        if v < 0:
            raise ValueError("point count must be nonnegative")
        canon = []
        for blk in blocks:
            t = tuple(blk)
            if any(not isinstance(x, int) for x in t):
                raise ValueError("block entries must be integers")
            if any(x < 0 or x >= v for x in t):
                raise ValueError(f"block {t} has out-of-range entries for v={v}")
            if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
                t = tuple(sorted(t))
            if len(set(t)) != len(t):
                raise ValueError(f"block {t} repeats a point")
            canon.append(t)
        canon.sort()
        for i in range(len(canon) - 1):
            if canon[i] == canon[i + 1]:
                raise ValueError(f"duplicate block {canon[i]}")
        self.v = v
        self.blocks: tuple[tuple[int, ...], ...] = tuple(canon)

    @cached_property
    def block_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(b) for b in self.blocks)

    @cached_property
    def point_blocks(self) -> tuple[tuple[int, ...], ...]:
        """For each point, the ascending ids of blocks containing it."""
        acc: list[list[int]] = [[] for _ in range(self.v)]
        for bid, blk in enumerate(self.blocks):
            for x in blk:
                acc[x].append(bid)
        return tuple(tuple(a) for a in acc)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Incidence)
            and self.v == other.v
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return hash((self.v, self.blocks))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(v={self.v}, blocks={len(self.blocks)})"


class Unital(Incidence):
    """An incidence structure with a declared unital order q.

    Whether it actually is a 2-(q^3+1, q+1, 1) design is checked by
    :func:`validate_unital`.  ``point_labels`` may carry provenance (for
    instance homogeneous coordinates) and is ignored by equality.
    """

    def __init__(self, v: int, blocks: Iterable[Sequence[int]], q: int,
                 point_labels: Optional[tuple] = None):
        super().__init__(v, blocks)
        if q < 2:
            raise ValueError("unital order must be at least 2")
        self.q = q
        self.point_labels = point_labels

    @cached_property
    def _pair_block(self) -> list[int]:
        """Flat v*v table: id of the unique block through a pair, -1 if none,
        -2 if the pair is covered more than once (invalid designs)."""
        v = self.v
        tbl = [-1] * (v * v)
        for bid, blk in enumerate(self.blocks):
            n = len(blk)
            for i in range(n):
                xi = blk[i] * v
                for j in range(i + 1, n):
                    y = blk[j]
                    a = xi + y
                    tbl[a] = bid if tbl[a] == -1 else -2
                    b = y * v + blk[i]
                    tbl[b] = bid if tbl[b] == -1 else -2
        return tbl

    def block_through(self, x: int, y: int) -> int:
        """Id of the unique block joining two distinct points."""
        if x == y:
            raise ValueError("a pair of distinct points is required")
        bid = self._pair_block[x * self.v + y]
        if bid == -1:
            raise ValueError(f"no block joins {x} and {y}")
        if bid == -2:
            raise ValueError(f"more than one block joins {x} and {y}")
        return bid

    def pencil(self, c: int) -> tuple[int, ...]:
        """Ids of all blocks through c."""
        if not 0 <= c < self.v:
            raise ValueError(f"point {c} out of range")
        return self.point_blocks[c]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Unital)
            and self.q == other.q
            and Incidence.__eq__(self, other)
        )

    def __hash__(self) -> int:
        return hash((self.v, self.blocks, self.q))


# -- design validation ------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    q: int
    v: int
    block_count: int
    checks: dict
    violations: dict

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "q": self.q,
            "v": self.v,
            "block_count": self.block_count,
            "checks": dict(sorted(self.checks.items())),
            "violations": dict(sorted(self.violations.items())),
        }


def validate_unital(I: Incidence, q: int) -> ValidationReport:
    """Check the 2-(q^3+1, q+1, 1) axioms, reporting one witness per failure."""
    checks: dict[str, bool] = {}
    violations: dict[str, str] = {}
    v = I.v

    expected_v = q**3 + 1
    checks["point_count"] = v == expected_v
    if not checks["point_count"]:
        violations["point_count"] = f"v={v}, expected {expected_v}"

    k = q + 1
    bad = next((b for b in I.blocks if len(b) != k), None)
    checks["block_size"] = bad is None
    if bad is not None:
        violations["block_size"] = f"block {bad} has size {len(bad)}, expected {k}"

    # every unordered pair of points on exactly one block
    cover = bytearray(v * v)
    double: Optional[tuple[int, int]] = None
    for blk in I.blocks:
        n = len(blk)
        for i in range(n):
            base = blk[i] * v
            for j in range(i + 1, n):
                a = base + blk[j]
                if cover[a]:
                    double = double or (blk[i], blk[j])
                cover[a] = 1
    missing: Optional[tuple[int, int]] = None
    for x in range(v):
        base = x * v
        for y in range(x + 1, v):
            if not cover[base + y]:
                missing = (x, y)
                break
        if missing:
            break
    checks["pair_coverage"] = double is None and missing is None
    if double is not None:
        violations["pair_coverage"] = f"pair {double} lies on more than one block"
    elif missing is not None:
        violations["pair_coverage"] = f"pair {missing} lies on no block"

    r = q * q
    degs = [0] * v
    for blk in I.blocks:
        for x in blk:
            degs[x] += 1
    badp = next((x for x in range(v) if degs[x] != r), None)
    checks["point_degree"] = badp is None
    if badp is not None:
        violations["point_degree"] = f"point {badp} lies on {degs[badp]} blocks, expected {r}"

    return ValidationReport(
        valid=all(checks.values()),
        q=q,
        v=v,
        block_count=len(I.blocks),
        checks=checks,
        violations=violations,
    )


# -- restriction and embedding ------------------------------------------------


@dataclass(frozen=True)
class Restriction:
    """An incidence structure induced on a point subset.

    ``points[i]`` is the ambient id of restricted point i; ``block_ids[j]``
    is the ambient id of the block whose trace became restricted block j.
    """

    incidence: Incidence
    points: tuple[int, ...]
    block_ids: tuple[int, ...]
    is_linear_space: bool


def restrict_to(I: Incidence, subset: Iterable[int]) -> Restriction:
    """Induce on ``subset``: blocks are traces meeting it in >= 2 points."""
    pts = tuple(sorted(set(subset)))
    if any(x < 0 or x >= I.v for x in pts):
        raise ValueError("subset contains out-of-range points")
    reindex = {x: i for i, x in enumerate(pts)}
    sub = frozenset(pts)
    traces = []
    for bid, blk in enumerate(I.blocks):
        tr = tuple(reindex[x] for x in blk if x in sub)
        if len(tr) >= 2:
            traces.append((tr, bid))
    traces.sort()
    blocks = [t for t, _ in traces]
    block_ids = tuple(bid for _, bid in traces)
    inc = Incidence(len(pts), blocks)
    # linear space: every pair of restricted points on exactly one trace
    n = len(pts)
    cover = bytearray(n * n)
    ok = True
    for blk in inc.blocks:
        m = len(blk)
        for i in range(m):
            base = blk[i] * n
            for j in range(i + 1, m):
                a = base + blk[j]
                if cover[a]:
                    ok = False
                cover[a] = 1
    if ok:
        for x in range(n):
            base = x * n
            for y in range(x + 1, n):
                if not cover[base + y]:
                    ok = False
                    break
            if not ok:
                break
    return Restriction(incidence=inc, points=pts, block_ids=block_ids, is_linear_space=ok)


def ideal_embedding_check(U: Incidence, subset: Iterable[int]):
    """Is every ambient block through a subset point a block of the restriction?

    Returns ``(True, None)`` or ``(False, (point, block_id))`` where the
    witness block meets the subset in fewer than 2 points.
    """
    sub = frozenset(subset)
    sets = U.block_sets
    for x in sorted(sub):
        for bid in U.point_blocks[x]:
            if len(sets[bid] & sub) < 2:
                return False, (x, bid)
    return True, None


# -- Fisher's inequality ------------------------------------------------------


@dataclass(frozen=True)
class FisherReport:
    v: int
    k: int
    line_count: int
    r: int
    fisher_holds: bool
    projective_plane_flag: bool

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "k": self.k,
            "line_count": self.line_count,
            "r": self.r,
            "fisher_holds": self.fisher_holds,
            "projective_plane_flag": self.projective_plane_flag,
        }


def fisher_check(I: Incidence) -> FisherReport:
    """Per-point line count r = (v-1)/(k-1) and the bound r >= k.

    Callers must feed a linear space with constant line size k > 2 and more
    than one line; degenerate input raises ValueError.
    """
    if not I.blocks:
        raise ValueError("no lines")
    sizes = {len(b) for b in I.blocks}
    if len(sizes) != 1:
        raise ValueError(f"non-constant line size: {sorted(sizes)}")
    k = sizes.pop()
    if k <= 2:
        raise ValueError("line size must exceed 2")
    if len(I.blocks) < 2:
        raise ValueError("more than one line is required")
    if (I.v - 1) % (k - 1) != 0:
        raise ValueError("not a linear space: (v-1)/(k-1) is not an integer")
    r = (I.v - 1) // (k - 1)
    return FisherReport(
        v=I.v,
        k=k,
        line_count=len(I.blocks),
        r=r,
        fisher_holds=r >= k,
        projective_plane_flag=r == k,
    )


# -- O'Nan configurations -----------------------------------------------------


@dataclass(frozen=True)
class OnanResult:
    status: str  # "witness" | "none" | "budget-exhausted"
    blocks: Optional[tuple[int, int, int, int]]
    points: Optional[tuple[int, ...]]
    nodes: int

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "blocks": list(self.blocks) if self.blocks else None,
            "points": list(self.points) if self.points else None,
            "nodes": self.nodes,
        }


def onan_search(I: Incidence, budget: int = 0) -> OnanResult:
    """Look for four blocks pairwise meeting in six distinct points.

    Equivalent to the usual four-line/six-point configuration: each of the
    six points then lies on exactly two of the four blocks and each block
    carries exactly three of the six points.  Requires that distinct blocks
    share at most one point (true in any linear space).  The search is
    lexicographic over ascending block quadruples, so the first witness is
    canonical; ``budget`` caps the number of explored candidate extensions
    (0 means exhaustive).
    """
    sets = I.block_sets
    nblocks = len(I.blocks)
    pb = I.point_blocks
    nodes = 0

    def neighbors(b: int) -> list[int]:
        out = set()
        for x in I.blocks[b]:
            out.update(pb[x])
        out.discard(b)
        return sorted(out)

    def meet_pt(a: int, b: int) -> int:
        common = sets[a] & sets[b]
        if len(common) != 1:
            raise ValueError(f"blocks {a} and {b} share {len(common)} points")
        return next(iter(common))

    nb_cache: dict[int, list[int]] = {}

    def nb(b: int) -> list[int]:
        if b not in nb_cache:
            nb_cache[b] = neighbors(b)
        return nb_cache[b]

    for b1 in range(nblocks):
        n1 = nb(b1)
        for b2 in n1:
            if b2 <= b1:
                continue
            nodes += 1
            if budget and nodes > budget:
                return OnanResult("budget-exhausted", None, None, nodes)
            p12 = meet_pt(b1, b2)
            n2 = set(n1) & set(nb(b2))
            for b3 in sorted(n2):
                if b3 <= b2:
                    continue
                nodes += 1
                if budget and nodes > budget:
                    return OnanResult("budget-exhausted", None, None, nodes)
                p13 = meet_pt(b1, b3)
                p23 = meet_pt(b2, b3)
                if p13 == p12 or p23 == p12 or p13 == p23:
                    continue
                seen3 = {p12, p13, p23}
                for b4 in sorted(n2 & set(nb(b3))):
                    if b4 <= b3:
                        continue
                    nodes += 1
                    if budget and nodes > budget:
                        return OnanResult("budget-exhausted", None, None, nodes)
                    p14 = meet_pt(b1, b4)
                    p24 = meet_pt(b2, b4)
                    p34 = meet_pt(b3, b4)
                    pts = {p14, p24, p34}
                    if len(pts) == 3 and not (pts & seen3):
                        six = tuple(sorted(seen3 | pts))
                        return OnanResult("witness", (b1, b2, b3, b4), six, nodes)
    return OnanResult("none", None, None, nodes)


# -- isomorphism --------------------------------------------------------------


def _block_signatures(I: Incidence) -> list[tuple]:
    """Per block: (size, sorted (intersection size, count) pairs vs all others)."""
    sets = I.block_sets
    sigs = []
    for i, s in enumerate(sets):
        counts: dict[int, int] = {}
        for j, t in enumerate(sets):
            if i == j:
                continue
            m = len(s & t)
            counts[m] = counts.get(m, 0) + 1
        sigs.append((len(s), tuple(sorted(counts.items()))))
    return sigs


def _point_fingerprints(I: Incidence, sig_ids: dict, sigs: list[tuple]) -> list[tuple]:
    fps = []
    for x in range(I.v):
        fp = tuple(sorted(sig_ids[sigs[b]] for b in I.point_blocks[x]))
        fps.append(fp)
    return fps


def isomorphism_search(A: Incidence, B: Incidence):
    """Point bijection carrying the blocks of A exactly onto the blocks of B.

    Returns the image list (position i holds the B-point assigned to
    A-point i) or None.  The backtracking is exhaustive, so None is a proof
    of non-isomorphism at this scale.  Pruning: block-intersection
    signatures, point fingerprints, and forced block images (once two
    points of an A-block are mapped and the images lie on a single common
    B-block, every remaining point of that A-block must land on it).
    """
    if A.v != B.v or len(A.blocks) != len(B.blocks):
        return None
    if sorted(map(len, A.blocks)) != sorted(map(len, B.blocks)):
        return None

    sigs_a = _block_signatures(A)
    sigs_b = _block_signatures(B)
    sig_ids: dict[tuple, int] = {}
    for s in sigs_a + sigs_b:
        sig_ids.setdefault(s, len(sig_ids))
    if sorted(sig_ids[s] for s in sigs_a) != sorted(sig_ids[s] for s in sigs_b):
        return None
    fp_a = _point_fingerprints(A, sig_ids, sigs_a)
    fp_b = _point_fingerprints(B, sig_ids, sigs_b)
    if sorted(fp_a) != sorted(fp_b):
        return None

    v = A.v
    b_sets = B.block_sets
    b_by_pair: dict[tuple[int, int], list[int]] = {}
    for bid, blk in enumerate(B.blocks):
        n = len(blk)
        for i in range(n):
            for j in range(i + 1, n):
                b_by_pair.setdefault((blk[i], blk[j]), []).append(bid)

    fp_groups: dict[tuple, list[int]] = {}
    for y in range(v):
        fp_groups.setdefault(fp_b[y], []).append(y)

    img = [-1] * v
    used = [False] * v
    ablocks = A.blocks
    apb = A.point_blocks
    # image id per A block, -1 unknown
    blk_img = [-1] * len(ablocks)
    blk_cnt = [0] * len(ablocks)
    blk_rep = [0] * len(ablocks)

    def forced_pair_block(y1: int, y2: int):
        key = (y1, y2) if y1 < y2 else (y2, y1)
        cands = b_by_pair.get(key, ())
        return cands

    def candidates(u: int) -> list[int]:
        base = None
        for ab in apb[u]:
            e = blk_img[ab]
            if e == -1:
                continue
            s = {w for w in b_sets[e] if not used[w] and fp_b[w] == fp_a[u]}
            base = s if base is None else base & s
            if base is not None and len(base) <= 1:
                break
        if base is None:
            base = {w for w in fp_groups.get(fp_a[u], ()) if not used[w]}
        return sorted(base)

    trail: list[tuple] = []

    def assign(u: int, w: int) -> bool:
        img[u] = w
        used[w] = True
        trail.append(("pt", u, w))
        queue = [(u, w)]
        while queue:
            uu, ww = queue.pop()
            for ab in apb[uu]:
                if blk_img[ab] != -1:
                    if img[uu] not in b_sets[blk_img[ab]]:
                        return False
                    blk_cnt[ab] += 1
                    trail.append(("cnt", ab, None))
                    continue
                if blk_cnt[ab] == 0:
                    blk_cnt[ab] = 1
                    blk_rep[ab] = uu
                    trail.append(("cnt0", ab, None))
                    continue
                other = blk_rep[ab]
                cands = [e for e in forced_pair_block(img[other], img[uu])
                         if len(b_sets[e]) == len(ablocks[ab])]
                if len(cands) != 1:
                    if not cands:
                        return False
                    # ambiguous image (non-linear-space); defer to leaf check
                    blk_cnt[ab] += 1
                    trail.append(("cnt", ab, None))
                    continue
                e = cands[0]
                blk_img[ab] = e
                blk_cnt[ab] += 1
                trail.append(("img", ab, None))
                # force single-candidate points of this block
                for x in ablocks[ab]:
                    if img[x] != -1:
                        if img[x] not in b_sets[e]:
                            return False
                        continue
                    cs = candidates(x)
                    if not cs:
                        return False
                    if len(cs) == 1:
                        img[x] = cs[0]
                        used[cs[0]] = True
                        trail.append(("pt", x, cs[0]))
                        queue.append((x, cs[0]))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            kind, a, b = trail.pop()
            if kind == "pt":
                img[a] = -1
                used[b] = False
            elif kind == "img":
                blk_img[a] = -1
                blk_cnt[a] -= 1
            elif kind == "cnt":
                blk_cnt[a] -= 1
            else:  # cnt0
                blk_cnt[a] = 0

    bset_all = set(B.blocks)

    def verify() -> bool:
        images = set()
        for blk in ablocks:
            t = tuple(sorted(img[x] for x in blk))
            if t not in bset_all or t in images:
                return False
            images.add(t)
        return True

    def next_point():
        best = None
        best_key = None
        for u in range(v):
            if img[u] != -1:
                continue
            half = sum(1 for ab in apb[u] if blk_img[ab] == -1 and blk_cnt[ab] > 0)
            cs = candidates(u)
            key = (len(cs), -half, u)
            if best_key is None or key < best_key:
                best, best_key = (u, cs), key
                if len(cs) == 0:
                    break
        return best

    def search() -> bool:
        nxt = next_point()
        if nxt is None:
            return verify()
        u, cs = nxt
        for w in cs:
            mark = len(trail)
            if assign(u, w) and search():
                return True
            undo(mark)
        return False

    if search():
        return tuple(img)
    return None


# -- text format ---------------------------------------------------------------


def format_unital(U: Unital) -> str:
    sizes = {len(b) for b in U.blocks}
    if len(sizes) != 1:
        raise ValueError("cannot serialize: blocks have mixed sizes")
    k = sizes.pop()
    out = io.StringIO()
    out.write(f"unital v={U.v} k={k}\n")
    for blk in U.blocks:
        out.write(" ".join(map(str, blk)))
        out.write("\n")
    return out.getvalue()


def parse_unital(text: str, source: str = "<string>") -> Unital:
    v = k = None
    blocks: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if v is None:
            parts = line.split()
            if (
                len(parts) != 3
                or parts[0] != "unital"
                or not parts[1].startswith("v=")
                or not parts[2].startswith("k=")
            ):
                raise ValueError(
                    f"{source}:{lineno}: expected header 'unital v=<int> k=<int>', got {line!r}"
                )
            try:
                v = int(parts[1][2:])
                k = int(parts[2][2:])
            except ValueError:
                raise ValueError(f"{source}:{lineno}: malformed header numbers") from None
            if v < 1 or k < 3:
                raise ValueError(f"{source}:{lineno}: header v={v} k={k} out of range")
            continue
        try:
            pts = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise ValueError(f"{source}:{lineno}: non-integer block entry") from None
        if len(pts) != k:
            raise ValueError(f"{source}:{lineno}: block has {len(pts)} points, expected k={k}")
        if any(pts[i] >= pts[i + 1] for i in range(len(pts) - 1)):
            raise ValueError(f"{source}:{lineno}: block entries must be strictly ascending")
        if any(x < 0 or x >= v for x in pts):
            raise ValueError(f"{source}:{lineno}: point index out of range 0..{v - 1}")
        if pts in seen:
            raise ValueError(
                f"{source}:{lineno}: duplicate block (first seen on line {seen[pts]})"
            )
        seen[pts] = lineno
        blocks.append(pts)
    if v is None or k is None:
        raise ValueError(f"{source}: missing 'unital v=... k=...' header")
    return Unital(v, blocks, q=k - 1)


def read_unital(path) -> Unital:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_unital(fh.read(), source=str(path))


def write_unital(U: Unital, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_unital(U))
