"""Irreducible root systems, convex orders, Hasse diagrams and exponent tables.

Simple roots follow the standard textbook numbering (Humphreys-style), with
coordinates always taken over the simple basis.  Roots are interned: each
system assigns dense integer ids ``0..nu-1`` to the positive roots (sorted by
height, then lexicographically) and ``nu..2*nu-1`` to their negatives.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

RANK_CAP = 8

# Classical positive-root counts, used as a build-time sanity check.
_POSITIVE_COUNTS = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "E": lambda l: {6: 36, 7: 63, 8: 120}[l],
    "F": lambda l: 24,
    "G": lambda l: 6,
}

_VALID_RANKS = {
    "A": range(1, RANK_CAP + 1),
    "B": range(2, RANK_CAP + 1),
    "C": range(2, RANK_CAP + 1),
    "D": range(4, RANK_CAP + 1),
    "E": (6, 7, 8),
    "F": (4,),
    "G": (2,),
}


class RootSystemError(ValueError):
    pass


def _dynkin_data(letter: str, rank: int) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix c[i][j] = <alpha_i, alpha_j^vee> and symmetrizers d.

    d[i] = (alpha_i, alpha_i)/2 with short roots normalized to d = 1.
    """
    l = rank
    c = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def join(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if letter == "A":
        for i in range(l - 1):
            join(i, i + 1)
        d = [1] * l
    elif letter == "B":
        for i in range(l - 2):
            join(i, i + 1)
        join(l - 2, l - 1, -2, -1)  # alpha_l is the short end
        d = [2] * (l - 1) + [1]
    elif letter == "C":
        for i in range(l - 2):
            join(i, i + 1)
        join(l - 2, l - 1, -1, -2)  # alpha_l is the long end
        d = [1] * (l - 1) + [2]
    elif letter == "D":
        for i in range(l - 3):
            join(i, i + 1)
        join(l - 3, l - 2)
        join(l - 3, l - 1)
        d = [1] * l
    elif letter == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: l - 1]
        for a, b in zip(chain, chain[1:]):
            join(a, b)
        join(1, 3)  # branch node
        d = [1] * l
    elif letter == "F":
        join(0, 1)
        join(1, 2, -2, -1)
        join(2, 3)
        d = [2, 2, 1, 1]
    elif letter == "G":
        join(0, 1, -1, -3)
        d = [1, 3]
    else:  # pragma: no cover - guarded by build_root_system
        raise RootSystemError(f"unknown type {letter}")
    return c, d


@dataclass(frozen=True)
class Root:
    """A root as an integer coordinate vector over the simple roots."""

    coords: tuple[int, ...]
    height: int
    length_class: str  # "short" or "long"

    def __post_init__(self):
        pos = all(x >= 0 for x in self.coords)
        neg = all(x <= 0 for x in self.coords)
        if not (pos or neg) or self.height != sum(self.coords) or self.height == 0:
            raise RootSystemError(f"invalid root coordinates {self.coords}")

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def name(self) -> str:
        """Short human/golden-file name, e.g. ``a1+2a2`` or ``-a1``."""
        parts = []
        for i, m in enumerate(self.coords):
            if m == 0:
                continue
            mag = abs(m)
            s = f"a{i + 1}" if mag == 1 else f"{mag}a{i + 1}"
            parts.append(("-" if m < 0 else "") + s if m < 0 else s)
        joined = "+".join(p.lstrip("-") for p in parts)
        return ("-" + joined) if self.height < 0 else joined


class RootSystem:
    """Root system of a fixed irreducible type with interned root ids."""

    def __init__(self, letter: str, rank: int):
        letter = letter.upper()
        if letter not in _VALID_RANKS or rank not in _VALID_RANKS[letter]:
            raise RootSystemError(f"invalid type/rank pair ({letter}, {rank})")
        self.letter = letter
        self.rank = rank
        self.cartan, self.d = _dynkin_data(letter, rank)
        # Symmetric inner-product matrix (alpha_i, alpha_j) = d_j * c_ij.
        self._gram = [
            [self.d[j] * self.cartan[i][j] for j in range(rank)] for i in range(rank)
        ]
        self._build_positive_roots()

    # -- construction ---------------------------------------------------

    def _build_positive_roots(self):
        l = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
        found = set(simple)
        by_height = {1: list(simple)}
        h = 1
        while by_height.get(h):
            nxt = []
            for beta in by_height[h]:
                for i in range(l):
                    if beta == simple[i]:
                        continue
                    down = 0
                    cur = tuple(b - s for b, s in zip(beta, simple[i]))
                    while cur in found:
                        down += 1
                        cur = tuple(b - s for b, s in zip(cur, simple[i]))
                    up = down - self.pairing(beta, i)
                    if up >= 1:
                        new = tuple(b + s for b, s in zip(beta, simple[i]))
                        if new not in found:
                            found.add(new)
                            nxt.append(new)
            h += 1
            if nxt:
                by_height[h] = nxt

        coords_sorted = sorted(found, key=lambda v: (sum(v), v))
        expected = _POSITIVE_COUNTS[self.letter](self.rank)
        if len(coords_sorted) != expected:
            raise RootSystemError(
                f"{self.letter}{self.rank}: generated {len(coords_sorted)} positive "
                f"roots, expected {expected}"
            )
        norms = {self.inner(v, v) for v in coords_sorted}
        short_norm = min(norms) if len(norms) > 1 else None
        self.positive_roots = [
            Root(v, sum(v), "short" if self.inner(v, v) == short_norm else "long")
            for v in coords_sorted
        ]
        self.nu = len(self.positive_roots)
        self._id_of = {r.coords: i for i, r in enumerate(self.positive_roots)}

    # -- basic queries ---------------------------------------------------

    def pairing(self, coords, i: int) -> int:
        """<beta, alpha_i^vee> for beta given by coordinates."""
        return sum(m * self.cartan[j][i] for j, m in enumerate(coords))

    def inner(self, a, b) -> int:
        g = self._gram
        return sum(a[i] * b[j] * g[i][j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def pair_coroot(self, a, b) -> int:
        """<a, b^vee> = 2(a,b)/(b,b) for b a root."""
        num = 2 * self.inner(a, b)
        den = self.inner(b, b)
        if num % den:
            raise RootSystemError(f"{a} does not pair integrally with {b}")
        return num // den

    def is_root(self, coords) -> bool:
        pos = tuple(abs(x) for x in coords) if all(x <= 0 for x in coords) else tuple(coords)
        return pos in self._id_of

    def root_id(self, coords) -> int:
        if all(x <= 0 for x in coords) and any(coords):
            neg = tuple(-x for x in coords)
            if neg in self._id_of:
                return self._id_of[neg] + self.nu
            raise RootSystemError(f"{coords} is not a root")
        if tuple(coords) in self._id_of:
            return self._id_of[tuple(coords)]
        raise RootSystemError(f"{coords} is not a root")

    def coords(self, rid: int) -> tuple[int, ...]:
        if rid < self.nu:
            return self.positive_roots[rid].coords
        return tuple(-x for x in self.positive_roots[rid - self.nu].coords)

    def root(self, rid: int) -> Root:
        if rid < self.nu:
            return self.positive_roots[rid]
        p = self.positive_roots[rid - self.nu]
        return Root(tuple(-x for x in p.coords), -p.height, p.length_class)

    def negate(self, rid: int) -> int:
        return rid + self.nu if rid < self.nu else rid - self.nu

    def simple_ids(self) -> list[int]:
        return [self.root_id(tuple(1 if j == i else 0 for j in range(self.rank)))
                for i in range(self.rank)]

    @cached_property
    def all_ids(self) -> list[int]:
        return list(range(2 * self.nu))

    @property
    def type_name(self) -> str:
        return f"{self.letter}{self.rank}"

    def __repr__(self):
        return f"RootSystem({self.type_name}, nu={self.nu})"


def build_root_system(letter: str, rank: int) -> RootSystem:
    """Construct the irreducible root system of the given type and rank."""
    return RootSystem(letter, rank)


# ---------------------------------------------------------------------------
# Convex orders from reduced words of the longest Weyl group element
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexOrder:
    """Total order beta_1, ..., beta_nu on the positive roots.

    ``word`` is the reduced expression (0-based simple indices) and
    ``ordered_ids``/``position`` give the order and its inverse.
    """

    word: tuple[int, ...]
    ordered_ids: tuple[int, ...]
    position: tuple[int, ...]  # position[root_id] = k (0-based)

    def __len__(self):
        return len(self.ordered_ids)


def _reflect(rs: RootSystem, v: tuple[int, ...], i: int) -> tuple[int, ...]:
    k = rs.pairing(v, i)
    return tuple(x - k * (1 if j == i else 0) for j, x in enumerate(v))


def _default_word(rs: RootSystem) -> list[int]:
    if rs.letter == "G":
        # Pinned so the order matches the standard relabeling used by the
        # verification tables (w0 = s2 s1 s2 s1 s2 s1).
        return [1, 0, 1, 0, 1, 0]
    # Greedy sorting walk to the longest element: repeatedly append the
    # smallest simple reflection that still lengthens the word.
    l = rs.rank
    images = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    word = []
    for _ in range(rs.nu):
        for i in range(l):
            if sum(images[i]) > 0:
                word.append(i)
                wi = images[i]
                images = [
                    tuple(x - rs.cartan[j][i] * y for x, y in zip(images[j], wi))
                    for j in range(l)
                ]
                break
        else:
            raise RootSystemError("longest-element walk terminated early")
    return word


def convex_order(rs: RootSystem, word=None) -> ConvexOrder:
    """Convex order on the positive roots from a reduced word for w0.

    If ``word`` is omitted a deterministic default is used.  A supplied word
    must be a reduced expression of the longest element (length nu producing
    pairwise distinct positive roots); anything else is rejected.
    """
    word = list(word) if word is not None else _default_word(rs)
    if len(word) != rs.nu or any(not 0 <= i < rs.rank for i in word):
        raise RootSystemError(
            f"word of length {len(word)} is not a reduced expression of w0 "
            f"(need length {rs.nu})"
        )
    l = rs.rank
    images = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    betas = []
    for k, ik in enumerate(word):
        beta = images[ik]
        if sum(beta) < 0:
            raise RootSystemError(f"word is not reduced (letter {k + 1})")
        betas.append(beta)
        wi = images[ik]
        images = [
            tuple(x - rs.cartan[j][ik] * y for x, y in zip(images[j], wi))
            for j in range(l)
        ]
    ids = [rs.root_id(b) for b in betas]
    if len(set(ids)) != rs.nu:
        raise RootSystemError("word is not reduced (repeated roots)")
    position = [0] * rs.nu
    for k, rid in enumerate(ids):
        position[rid] = k
    order = ConvexOrder(tuple(word), tuple(ids), tuple(position))
    _check_convexity(rs, order)
    return order


def _check_convexity(rs: RootSystem, order: ConvexOrder):
    ids = order.ordered_ids
    for j in range(rs.nu):
        cj = rs.coords(ids[j])
        for k in range(j + 1, rs.nu):
            s = tuple(x + y for x, y in zip(cj, rs.coords(ids[k])))
            if rs.is_root(s):
                t = order.position[rs.root_id(s)]
                if not j < t < k:
                    raise RootSystemError(
                        f"order is not convex at positions ({j}, {k})"
                    )


# ---------------------------------------------------------------------------
# Hasse diagram of the positive roots and its length subdiagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HasseData:
    """Hasse diagram data: edges (a, i, a + alpha_i) and length components."""

    edges: tuple[tuple[int, int, int], ...]
    long_components: tuple[frozenset[int], ...]
    short_diagram: frozenset[int]
    c0: frozenset[int]
    theta_roots: tuple[int, ...]  # minimal vertices of the non-c0 long components


def hasse_and_components(rs: RootSystem) -> HasseData:
    """Build the diagram and split the long subdiagram into components.

    ``c0`` is the unique long component containing the long simple roots.
    For simply-laced types every root counts as long, the diagram has a
    single component and there are no theta roots.
    """
    edges = []
    for a_id, a in enumerate(rs.positive_roots):
        for i in range(rs.rank):
            up = tuple(x + (1 if j == i else 0) for j, x in enumerate(a.coords))
            if rs.is_root(up):
                edges.append((a_id, i, rs.root_id(up)))
    long_ids = {i for i, r in enumerate(rs.positive_roots) if r.length_class == "long"}
    short_ids = frozenset(i for i in range(rs.nu) if i not in long_ids)

    adj = {v: set() for v in long_ids}
    for a, _, b in edges:
        if a in long_ids and b in long_ids:
            adj[a].add(b)
            adj[b].add(a)
    components = []
    seen = set()
    for v in sorted(long_ids):
        if v in seen:
            continue
        comp, stack = set(), [v]
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(adj[u] - comp)
        seen |= comp
        components.append(frozenset(comp))

    long_simples = [rid for rid in rs.simple_ids() if rid in long_ids]
    holding = {c for c in components if any(s in c for s in long_simples)}
    if len(holding) != 1:
        raise RootSystemError("long simple roots do not sit in a single component")
    c0 = next(iter(holding))

    thetas = []
    for comp in components:
        if comp is c0:
            continue
        preds = {b for a, _, b in edges if a in comp and b in comp}
        minimal = sorted(comp - preds)
        if len(minimal) != 1:
            raise RootSystemError(
                f"long component {sorted(comp)} has {len(minimal)} minimal vertices"
            )
        thetas.append(minimal[0])
    thetas.sort(key=lambda rid: (rs.positive_roots[rid].height, rs.coords(rid)))

    if short_ids:
        _require_connected(rs, short_ids, edges)
        if not any(rid in short_ids for rid in rs.simple_ids()):
            raise RootSystemError("short subdiagram misses all short simple roots")

    components.sort(key=lambda c: (c is not c0, sorted(c)))
    return HasseData(
        edges=tuple(sorted(edges)),
        long_components=tuple(components),
        short_diagram=short_ids,
        c0=c0,
        theta_roots=tuple(thetas),
    )


def _require_connected(rs: RootSystem, vertices: frozenset[int], edges):
    adj = {v: set() for v in vertices}
    for a, _, b in edges:
        if a in vertices and b in vertices:
            adj[a].add(b)
            adj[b].add(a)
    start = next(iter(vertices))
    seen, stack = set(), [start]
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        stack.extend(adj[u] - seen)
    if seen != vertices:
        raise RootSystemError("short subdiagram is not connected")


# ---------------------------------------------------------------------------
# Exponent tables: per-root bounds a_alpha and the extra-generator set Theta
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExponentTable:
    """Per-root exponents a_alpha in {r-1, r} plus the Theta root set."""

    p: int
    r: int
    case: str  # one of "a".."f"
    a_map: dict[int, int]  # positive root id -> exponent
    theta: tuple[int, ...]  # positive root ids

    def bound(self, rid: int) -> int:
        """Largest allowed divided-power index for the root: p^a - 1."""
        return self.p ** self.a_map[rid] - 1

    def span_dimension(self) -> int:
        d = 1
        for a in self.a_map.values():
            d *= self.p ** a
        return d


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def exponent_table(rs: RootSystem, p: int, r: int) -> ExponentTable:
    """Exponent bounds and Theta for the generated subalgebra at level r.

    Case selection depends only on (type, p); exactly one of the six cases
    applies.  Marked roots get a = r - 1, everything else a = r.
    """
    if not _is_prime(p):
        raise RootSystemError(f"p = {p} is not prime")
    if r < 1:
        raise RootSystemError(f"level r = {r} must be >= 1")
    l = rs.rank
    letter = rs.letter

    def rid(coords):
        return rs.root_id(tuple(coords))

    marked: list[int] = []
    theta: list[int] = []
    if letter in "ADE" or (letter in "BCF" and p >= 3) or (letter == "G" and p >= 5):
        case = "a"
    elif letter == "B":  # p == 2
        case = "b"
        for i in range(1, l + 1):
            for j in range(i + 1, l + 1):
                coords = [0] * l
                for k in range(i, j):
                    coords[k - 1] = 1
                for k in range(j, l + 1):
                    coords[k - 1] = 2
                marked.append(rid(coords))
        theta = [rid([0] * (l - 2) + [1, 2])]
    elif letter == "C":  # p == 2
        case = "c"
        for i in range(1, l):
            coords = [0] * l
            for k in range(i, l):
                coords[k - 1] = 2
            coords[l - 1] = 1
            marked.append(rid(coords))
        theta = list(marked)
    elif letter == "F":  # p == 2
        case = "d"
        marked = [rid(c) for c in (
            (0, 1, 2, 0), (1, 1, 2, 0), (1, 2, 2, 0),
            (0, 1, 2, 2), (1, 1, 2, 2), (1, 2, 2, 2),
            (1, 2, 4, 2), (1, 3, 4, 2), (2, 3, 4, 2),
        )]
        theta = [rid((0, 1, 2, 0)), rid((0, 1, 2, 2))]
    elif p == 2:  # G2
        case = "e"
        marked = [rid(c) for c in ((2, 1), (3, 1), (3, 2))]
        theta = [rid((2, 1))]
    else:  # G2, p == 3
        case = "f"
        marked = [rid(c) for c in ((3, 1), (3, 2))]
        theta = [rid((3, 1))]

    marked_set = set(marked)
    a_map = {i: (r - 1 if i in marked_set else r) for i in range(rs.nu)}
    return ExponentTable(p=p, r=r, case=case, a_map=a_map, theta=tuple(sorted(theta)))


# ---------------------------------------------------------------------------
# Root strings
# ---------------------------------------------------------------------------


def root_string(rs: RootSystem, alpha, beta) -> tuple[int, int]:
    """(p, q) with beta - p*alpha, ..., beta + q*alpha the alpha-string.

    ``alpha`` must be a root and distinct from +-beta.  When beta is itself a
    root the string is unbroken and p - q = <beta, alpha^vee> is asserted.
    """
    a = rs.coords(alpha) if isinstance(alpha, int) else tuple(alpha)
    b = rs.coords(beta) if isinstance(beta, int) else tuple(beta)
    if not rs.is_root(a):
        raise RootSystemError(f"{a} is not a root")
    if a == b or a == tuple(-x for x in b):
        raise RootSystemError("string through a proportional root is undefined")

    def count(direction):
        n = 0
        cur = tuple(x + direction * y for x, y in zip(b, a))
        while rs.is_root(cur) and any(cur):
            n += 1
            cur = tuple(x + direction * y for x, y in zip(cur, a))
        return n

    p, q = count(-1), count(+1)
    if rs.is_root(b):
        if p - q != rs.pair_coroot(b, a):
            raise RootSystemError("root string violates p - q pairing rule")
    return p, q


# ---------------------------------------------------------------------------
# Golden-file serialization
# ---------------------------------------------------------------------------


def dump_json(rs: RootSystem, order: ConvexOrder | None = None,
              hasse: HasseData | None = None) -> str:
    """Stable JSON document for golden-file comparisons."""
    order = order or convex_order(rs)
    hasse = hasse or hasse_and_components(rs)
    doc = {
        "type": rs.letter,
        "rank": rs.rank,
        "simple_roots": [list(rs.coords(i)) for i in rs.simple_ids()],
        "positive_roots": [list(r.coords) for r in rs.positive_roots],
        "convex_order": list(order.ordered_ids),
        "hasse_edges": [list(e) for e in hasse.edges],
        "long_components": [sorted(c) for c in hasse.long_components],
        "theta": [rs.positive_roots[t].name() for t in hasse.theta_roots],
    }
    return json.dumps(doc, indent=1, sort_keys=False)
