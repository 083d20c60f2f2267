"""Finite groups as explicit multiplication tables.

Everything downstream (structured endomorphisms, pair graphs, holomorph
searches) works with element *indices* into a validated Cayley table, with
the identity pinned at index 0.  This module provides the table type, a
small catalog of named groups, homomorphism and automorphism enumeration by
generator-image backtracking, direct powers T^n, prime-order subgroup
choices, and the structural queries (center, normal subgroups, solvability)
that the verification suites lean on.

Tables are kept both as nested tuples (hashable, cheap scalar access) and
as a read-only int64 numpy array for vectorised validation and
homomorphism checking.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "GroupValidationError",
    "BudgetError",
    "FiniteGroup",
    "compose_perm",
    "invert_perm",
    "load_group",
    "catalog_names",
    "enumerate_homomorphisms",
    "find_isomorphism",
    "is_fixed_point_free",
    "has_fpf_automorphism",
    "power_group",
    "power_identity",
    "power_mul",
    "power_inv",
    "power_apply_perm",
    "power_order",
    "power_index",
    "power_coords",
    "power_elements",
    "PrimeSubgroupChoice",
    "choose_prime_subgroups",
    "subgroup_closure",
    "normal_subgroups",
    "is_simple",
    "commutator_closure",
    "quotient_group",
    "is_solvable",
]

# How hard the table validator tries: a full associativity scan up to this
# order, a fixed-seed sample of triples beyond it.
FULL_SCAN_MAX_ORDER = 60
SAMPLED_TRIPLES = 100_000


class GroupValidationError(ValueError):
    """A multiplication table failed one of the group axioms."""


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured work budget."""


def compose_perm(a, b):
    """Composite of permutation tuples, applying ``b`` first, then ``a``."""
    return tuple(a[x] for x in b)


def invert_perm(a):
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


# ── The table type ──────────────────────────────────────────────────────


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Elements are the integers ``0 .. order-1`` with 0 the identity.  The
    instance is immutable in practice: all caches are derived data and all
    public operations are pure.
    """

    def __init__(self, mul, name="?", validate=True):
        self.mul = tuple(tuple(int(v) for v in row) for row in mul)
        self.order = len(self.mul)
        self.name = name
        for x, row in enumerate(self.mul):
            if len(row) != self.order:
                raise GroupValidationError(
                    f"table is not square: row {x} has {len(row)} entries, "
                    f"expected {self.order}"
                )
        arr = np.array(self.mul, dtype=np.int64) if self.order else np.zeros((0, 0), dtype=np.int64)
        arr.setflags(write=False)
        self.np_mul = arr
        if validate:
            self._validate()
        self.inv = tuple(int(np.argwhere(arr[x] == 0)[0, 0]) for x in range(self.order))
        self._orders = None
        self._center = None
        self._auts = None
        self._aut_index = None
        self._inner_ids = None
        self._conj_aut_id = None
        self._gen_cache = {}
        self._level_cache = {}
        self._normals = None

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    # -- validation ------------------------------------------------------

    def _validate(self):
        m = self.order
        arr = self.np_mul
        if m == 0:
            raise GroupValidationError("empty multiplication table")
        if arr.shape != (m, m):
            raise GroupValidationError(
                f"table is not square: {len(self.mul)} rows but row lengths vary"
            )
        if (arr < 0).any() or (arr >= m).any():
            x, y = map(int, np.argwhere((arr < 0) | (arr >= m))[0])
            raise GroupValidationError(
                f"closure violated: mul[{x}][{y}] = {self.mul[x][y]} is outside 0..{m - 1}"
            )
        # Identity must be index 0, acting trivially on both sides.
        rng = np.arange(m)
        if (arr[0] != rng).any():
            y = int(np.argwhere(arr[0] != rng)[0, 0])
            raise GroupValidationError(
                f"identity violated: mul[0][{y}] = {self.mul[0][y]}, expected {y}"
            )
        if (arr[:, 0] != rng).any():
            x = int(np.argwhere(arr[:, 0] != rng)[0, 0])
            raise GroupValidationError(
                f"identity violated: mul[{x}][0] = {self.mul[x][0]}, expected {x}"
            )
        self._check_associativity(arr, m)
        # Every element needs a two-sided inverse.
        for x in range(m):
            ys = np.argwhere(arr[x] == 0)
            if ys.size == 0 or self.mul[int(ys[0, 0])][x] != 0:
                raise GroupValidationError(
                    f"inverses violated: element {x} has no two-sided inverse"
                )

    def _check_associativity(self, arr, m):
        if m <= FULL_SCAN_MAX_ORDER:
            left = arr[arr]          # left[a,b,c] = (ab)c
            right = arr[:, arr]      # right[a,b,c] = a(bc)
            bad = np.argwhere(left != right)
            if bad.size:
                a, b, c = map(int, bad[0])
                raise GroupValidationError(
                    f"associativity violated at ({a}, {b}, {c}): "
                    f"(ab)c = {int(left[a, b, c])} but a(bc) = {int(right[a, b, c])}"
                )
            return
        rng = np.random.default_rng(0)
        t = rng.integers(0, m, size=(SAMPLED_TRIPLES, 3))
        a, b, c = t[:, 0], t[:, 1], t[:, 2]
        left = arr[arr[a, b], c]
        right = arr[a, arr[b, c]]
        bad = np.argwhere(left != right)
        if bad.size:
            i = int(bad[0, 0])
            raise GroupValidationError(
                f"associativity violated at ({int(a[i])}, {int(b[i])}, {int(c[i])}): "
                f"(ab)c = {int(left[i])} but a(bc) = {int(right[i])}"
            )

    # -- basic element arithmetic -----------------------------------------

    def conjugate(self, g, x):
        """g·x·g⁻¹."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def element_order(self, x):
        return self.element_orders()[x]

    def element_orders(self):
        if self._orders is None:
            orders = [1] * self.order
            for x in range(1, self.order):
                y, k = x, 1
                while y != 0:
                    y = self.mul[y][x]
                    k += 1
                orders[x] = k
            self._orders = tuple(orders)
        return self._orders

    def is_abelian(self):
        return bool((self.np_mul == self.np_mul.T).all())

    # -- generation ---------------------------------------------------------

    def generating_sequence(self, strategy="greedy"):
        """A small generating sequence of element indices.

        ``greedy`` repeatedly appends the lowest-index element outside the
        subgroup generated so far.  ``short`` first tries single elements,
        then pairs, and only then falls back to greedy; it tends to give the
        smallest search trees for backtracking.
        """
        if strategy in self._gen_cache:
            return self._gen_cache[strategy]
        if self.order == 1:
            gens = ()
        elif strategy == "greedy":
            gens, have = [], {0}
            while len(have) < self.order:
                g = min(x for x in range(self.order) if x not in have)
                gens.append(g)
                have = set(subgroup_closure(self, have | {g}))
            gens = tuple(gens)
        elif strategy == "short":
            gens = None
            for x in range(1, self.order):
                if len(subgroup_closure(self, [x])) == self.order:
                    gens = (x,)
                    break
            if gens is None:
                for x, y in itertools.combinations(range(1, self.order), 2):
                    if len(subgroup_closure(self, [x, y])) == self.order:
                        gens = (x, y)
                        break
            if gens is None:
                gens = self.generating_sequence("greedy")
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        self._gen_cache[strategy] = gens
        return gens

    def _word_levels(self, gens):
        """Closure bookkeeping for generator-image backtracking.

        For each prefix ``gens[:k+1]`` this precomputes the elements of the
        generated subgroup, the extension steps (new, parent, gen) with
        new = parent·gen, and the subgroup's internal product table, so a
        candidate image assignment can be extended and checked without
        re-deriving words.
        """
        if gens in self._level_cache:
            return self._level_cache[gens]
        levels = []
        elems = [0]
        known = {0}
        for k in range(len(gens)):
            steps = []
            if gens[k] not in known:
                known.add(gens[k])
                elems.append(gens[k])
            i = 0
            while i < len(elems):
                x = elems[i]
                for g in gens[: k + 1]:
                    y = self.mul[x][g]
                    if y not in known:
                        known.add(y)
                        elems.append(y)
                        steps.append((y, x, g))
                i += 1
            earr = np.array(elems, dtype=np.int64)
            sub = self.np_mul[np.ix_(earr, earr)]
            levels.append((list(elems), tuple(steps), earr, sub))
        self._level_cache[gens] = levels
        return levels

    # -- automorphisms -------------------------------------------------------

    def automorphisms(self):
        """All automorphisms, as image tuples sorted lexicographically.

        The position in this list is the automorphism id used everywhere
        else (file formats, wreath coordinates, holomorph elements); the
        identity automorphism always lands at id 0.
        """
        if self._auts is None:
            found = sorted(enumerate_homomorphisms(self, self, bijective=True))
            self._auts = tuple(found)
            self._aut_index = {a: i for i, a in enumerate(found)}
        return self._auts

    def aut_index(self, images):
        self.automorphisms()
        try:
            return self._aut_index[tuple(images)]
        except KeyError:
            raise ValueError("images tuple is not an automorphism of this group") from None

    def conjugation_images(self, g):
        mul, inv = self.mul, self.inv
        gi = inv[g]
        return tuple(mul[mul[g][x]][gi] for x in range(self.order))

    def conjugation_aut_id(self, g):
        if self._conj_aut_id is None:
            self._conj_aut_id = tuple(
                self.aut_index(self.conjugation_images(x)) for x in range(self.order)
            )
        return self._conj_aut_id[g]

    def inner_automorphism_ids(self):
        """Sorted, deduplicated list of aut ids realized by conjugation."""
        if self._inner_ids is None:
            self._inner_ids = tuple(
                sorted({self.conjugation_aut_id(g) for g in range(self.order)})
            )
        return self._inner_ids

    def center(self):
        if self._center is None:
            arr = self.np_mul
            self._center = tuple(int(z) for z in np.argwhere((arr == arr.T).all(axis=1))[:, 0])
        return self._center

    # -- structure ----------------------------------------------------------

    def normal_subgroup_list(self):
        if self._normals is None:
            self._normals = normal_subgroups(self)
        return self._normals


# ── Catalog and file loading ───────────────────────────────────────────


def _table_from_perms(perms, name):
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[compose_perm(a, b)] for b in perms] for a in perms]
    return FiniteGroup(mul, name=name)


def _cyclic(k):
    return FiniteGroup([[(i + j) % k for j in range(k)] for i in range(k)], name=f"c{k}")


def _symmetric(k):
    return _table_from_perms(itertools.permutations(range(k)), f"s{k}")


def _alternating(k):
    evens = []
    for p in itertools.permutations(range(k)):
        inversions = sum(1 for i in range(k) for j in range(i + 1, k) if p[i] > p[j])
        if inversions % 2 == 0:
            evens.append(p)
    return _table_from_perms(evens, f"a{k}")


def _dihedral(k):
    """Symmetries of the regular k-gon as vertex permutations, order 2k."""
    perms = set()
    for s in range(k):
        perms.add(tuple((i + s) % k for i in range(k)))
        perms.add(tuple((s - i) % k for i in range(k)))
    return _table_from_perms(perms, f"d{k}")


def _quaternion8():
    # Elements in the order +1, -1, +i, -i, +j, -j, +k, -k; index 2u+s for
    # unit u in (1,i,j,k) and sign bit s.
    unit = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }
    mul = [[0] * 8 for _ in range(8)]
    for u1, s1 in itertools.product(range(4), range(2)):
        for u2, s2 in itertools.product(range(4), range(2)):
            s3, u3 = unit[(u1, u2)]
            mul[2 * u1 + s1][2 * u2 + s2] = 2 * u3 + ((s1 + s2 + s3) % 2)
    return FiniteGroup(mul, name="q8")


_BUILDERS = {f"c{k}": (lambda k=k: _cyclic(k)) for k in range(2, 13)}
_BUILDERS.update(
    s3=lambda: _symmetric(3),
    s4=lambda: _symmetric(4),
    s5=lambda: _symmetric(5),
    d4=lambda: _dihedral(4),
    d5=lambda: _dihedral(5),
    q8=_quaternion8,
    a4=lambda: _alternating(4),
    a5=lambda: _alternating(5),
)

_CATALOG_CACHE: dict[str, FiniteGroup] = {}


def catalog_names():
    return sorted(_BUILDERS)


def load_group(source):
    """Load a group by catalog name or from a Cayley-table file.

    File format: line 1 is the order m; each of the next m lines holds m
    space-separated 0-based element indices (row x is mul[x][0..m-1]).
    Index 0 must be the identity.  The table is validated axiom by axiom
    and the first violation is named in the error.
    """
    key = str(source)
    if key in _BUILDERS:
        if key not in _CATALOG_CACHE:
            _CATALOG_CACHE[key] = _BUILDERS[key]()
        return _CATALOG_CACHE[key]
    path = Path(key)
    if not path.is_file():
        raise GroupValidationError(
            f"unknown group source {key!r}: not a catalog name "
            f"({', '.join(catalog_names())}) and not a file"
        )
    return _parse_cayley_file(path)


def _parse_cayley_file(path):
    lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
    if not lines:
        raise GroupValidationError(f"{path}: empty file")
    try:
        m = int(lines[0].split()[0])
    except ValueError:
        raise GroupValidationError(f"{path}: line 1 must be the group order") from None
    if m <= 0:
        raise GroupValidationError(f"{path}: order must be positive, got {m}")
    if len(lines) != m + 1:
        raise GroupValidationError(f"{path}: expected {m} table rows, found {len(lines) - 1}")
    rows = []
    for x, ln in enumerate(lines[1:]):
        parts = ln.split()
        if len(parts) != m:
            raise GroupValidationError(
                f"{path}: row {x} has {len(parts)} entries, expected {m}"
            )
        try:
            rows.append([int(v) for v in parts])
        except ValueError:
            raise GroupValidationError(f"{path}: row {x} contains a non-integer") from None
    return FiniteGroup(rows, name=path.stem)


# ── Homomorphism search ─────────────────────────────────────────────────


def enumerate_homomorphisms(src, dst, bijective=False, gens_strategy="greedy"):
    """Yield all homomorphisms src → dst as full image tuples.

    Backtracks over images of a generating sequence of ``src``; a partial
    assignment is extended to the generated subgroup and checked as a
    homomorphism on that whole subgroup before descending.  With
    ``bijective=True`` only isomorphisms onto dst come out (orders must
    already match).
    """
    if bijective and src.order != dst.order:
        return
    if src.order == 1:
        yield (0,)
        return
    gens = src.generating_sequence(gens_strategy)
    levels = src._word_levels(gens)
    src_orders = src.element_orders()
    dst_orders = dst.element_orders()
    candidates = []
    for g in gens:
        o = src_orders[g]
        if bijective:
            cand = [y for y in range(dst.order) if dst_orders[y] == o]
        else:
            cand = [y for y in range(dst.order) if o % dst_orders[y] == 0]
        candidates.append(cand)
    dmul = dst.np_mul
    img = [-1] * src.order
    img[0] = 0

    def extend(k):
        elems, steps, earr, sub = levels[k]
        for y in candidates[k]:
            img[gens[k]] = y
            ok = True
            for new, parent, g in steps:
                img[new] = dst.mul[img[parent]][img[g]]
            imgs = np.fromiter((img[e] for e in elems), dtype=np.int64, count=len(elems))
            if bijective and np.unique(imgs).size != imgs.size:
                ok = False
            if ok:
                full = np.zeros(src.order, dtype=np.int64)
                full[earr] = imgs
                ok = bool((full[sub] == dmul[imgs[:, None], imgs[None, :]]).all())
            if ok:
                if k + 1 == len(gens):
                    yield tuple(img)
                else:
                    yield from extend(k + 1)
            for new, _, _ in steps:
                img[new] = -1
            img[gens[k]] = -1

    yield from extend(0)


def find_isomorphism(src, dst):
    """An isomorphism src → dst as an image tuple, or None."""
    if src.order != dst.order:
        return None
    if sorted(src.element_orders()) != sorted(dst.element_orders()):
        return None
    return next(enumerate_homomorphisms(src, dst, bijective=True, gens_strategy="short"), None)


# ── Fixed-point-freeness of automorphisms ───────────────────────────────


def is_fixed_point_free(images):
    """True iff the map fixes index 0 and nothing else."""
    return images[0] == 0 and all(images[x] != x for x in range(1, len(images)))


def has_fpf_automorphism(G):
    return any(is_fixed_point_free(a) for a in G.automorphisms())


# ── Direct powers T^n ───────────────────────────────────────────────────
#
# A power element is a plain tuple of n T-indices.  power_group builds the
# same group as an honest FiniteGroup whose element k encodes the tuple in
# row-major order, so tuple arithmetic and table arithmetic interconvert
# through power_index / power_coords.


def power_identity(n):
    return (0,) * n

def power_mul(T, a, b):
    return tuple(T.mul[x][y] for x, y in zip(a, b))

def power_inv(T, a):
    return tuple(T.inv[x] for x in a)

def power_order(T, a):
    return math.lcm(*(T.element_order(x) for x in a)) if a else 1

def power_apply_perm(images, a):
    """Apply one T-automorphism (images table) to every coordinate."""
    return tuple(images[x] for x in a)

def power_index(T, coords):
    k = 0
    for c in coords:
        k = k * T.order + c
    return k

def power_coords(T, n, k):
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = k % T.order
        k //= T.order
    return tuple(out)

def power_elements(T, n):
    return itertools.product(range(T.order), repeat=n)


_POWER_CACHE: dict[tuple[int, int], FiniteGroup] = {}


def power_group(T, n):
    """The direct power T^n as a FiniteGroup (T itself when n = 1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return T
    key = (id(T), n)
    if key in _POWER_CACHE:
        return _POWER_CACHE[key]
    order = T.order ** n
    coords = np.array(list(power_elements(T, n)), dtype=np.int64)
    prods = T.np_mul[coords[:, None, :], coords[None, :, :]]
    weights = np.array([T.order ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    mul = prods @ weights
    G = FiniteGroup(mul.tolist(), name=f"{T.name}^{n}")
    _POWER_CACHE[key] = G
    return G


# ── Prime-order subgroup choices ────────────────────────────────────────


@dataclass(frozen=True)
class PrimeSubgroupChoice:
    """One order-p subgroup per coordinate of T^n, each generated by the
    same chosen order-p element of T; together they span an elementary
    abelian p-group of rank n inside the power."""

    p: int
    n: int
    generators: tuple  # length n, T-element indices, each of order p

    def member_tuples(self, T):
        """All p^n elements of the spanned subgroup, as coordinate tuples."""
        axes = []
        for g in self.generators:
            powers = [0]
            y = g
            while y != 0:
                powers.append(y)
                y = T.mul[y][g]
            axes.append(powers)
        return [tuple(c) for c in itertools.product(*axes)]


def choose_prime_subgroups(T, n, p, variant=0):
    """Pick the variant-th lowest-index order-p element of T, reused in
    every coordinate.  variant=0 is the deterministic default; passing 1
    exercises independence from the choice when a second element exists."""
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise ValueError(f"p = {p} is not prime")
    if T.order % p != 0:
        raise ValueError(f"p = {p} does not divide |{T.name}| = {T.order}")
    elems = [x for x in range(T.order) if T.element_order(x) == p]
    if variant >= len(elems):
        raise ValueError(f"only {len(elems)} elements of order {p}, variant {variant} unavailable")
    g = elems[variant]
    return PrimeSubgroupChoice(p=p, n=n, generators=(g,) * n)


# ── Subgroup structure ──────────────────────────────────────────────────


def subgroup_closure(G, seed):
    """Sorted tuple of the subgroup generated by ``seed`` (indices)."""
    have = {0}
    work = [x for x in set(seed) if x not in have]
    have.update(work)
    while work:
        x = work.pop()
        for y in list(have):
            for z in (G.mul[x][y], G.mul[y][x]):
                if z not in have:
                    have.add(z)
                    work.append(z)
    return tuple(sorted(have))


def _normal_closure(G, seed):
    conjs = {G.conjugate(g, x) for x in seed for g in range(G.order)}
    return subgroup_closure(G, conjs)


def normal_subgroups(G):
    """All normal subgroups, as sorted element tuples.

    Every normal subgroup is the join of the normal closures of its own
    elements, so the lattice generated by single-element closures under
    join is the complete answer.
    """
    found = {(0,)}
    work = []
    for x in range(1, G.order):
        nc = _normal_closure(G, [x])
        if nc not in found:
            found.add(nc)
            work.append(nc)
    while work:
        a = work.pop()
        for b in list(found):
            j = subgroup_closure(G, set(a) | set(b))
            if j not in found:
                found.add(j)
                work.append(j)
    return sorted(found, key=lambda s: (len(s), s))


def is_simple(G):
    return G.order > 1 and len(normal_subgroups(G)) == 2


def commutator_closure(G, subset):
    """The subgroup generated by commutators of elements of ``subset``."""
    comms = set()
    for a in subset:
        for b in subset:
            comms.add(G.mul[G.mul[a][b]][G.inv[G.mul[b][a]]])
    return subgroup_closure(G, comms)


def quotient_group(G, normal_elements):
    """Quotient by a normal subgroup; returns (Q, projection table).

    Cosets are sorted by their least member, so the coset of the identity
    is index 0 as required.
    """
    nset = frozenset(normal_elements)
    seen = {}
    cosets = []
    for x in range(G.order):
        if x in seen:
            continue
        coset = frozenset(G.mul[x][h] for h in nset)
        for y in coset:
            seen[y] = None
        cosets.append(coset)
    cosets.sort(key=min)
    cid = {}
    for i, c in enumerate(cosets):
        for y in c:
            cid[y] = i
    reps = [min(c) for c in cosets]
    mul = [[cid[G.mul[a][b]] for b in reps] for a in reps]
    Q = FiniteGroup(mul, name=f"{G.name}/N{len(nset)}")
    proj = tuple(cid[x] for x in range(G.order))
    return Q, proj


def is_solvable(G):
    current = tuple(range(G.order))
    while len(current) > 1:
        nxt = commutator_closure(G, current)
        if nxt == current:
            return False
        current = nxt
    return True
