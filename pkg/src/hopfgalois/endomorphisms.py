"""The structured endomorphism monoid of a direct power G = T^n.

A structured endomorphism is described by a source-coordinate table
``theta`` (length n, entries in 0..n, where entry 0 collapses the output
coordinate to the identity) together with one automorphism of T per
non-collapsed coordinate.  Output coordinate i is phi_i applied to input
coordinate theta(i).  These maps form a monoid under composition whose
invertible elements are exactly the theta-permutations; both sets are
enumerated here in a fixed, reproducible order, and pairs of them are what
the pair-graph and fixed-point-freeness machinery consumes.

Coordinates in ``theta`` are 1-based so that 0 can mean "collapsed",
matching the pair file format; tuple positions are 0-based as usual.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .groups import BudgetError, FiniteGroup, invert_perm

__all__ = [
    "StructuredEndo",
    "identity_endo",
    "trivial_endo",
    "compose",
    "invert_aut0",
    "is_automorphism",
    "count_end0",
    "count_aut0",
    "enumerate_end0",
    "enumerate_aut0",
    "all_coords",
    "image_coords_table",
    "parse_pair_file",
    "format_pair_file",
    "PairFileError",
]

DEFAULT_ENDO_BUDGET = 10**6


class PairFileError(ValueError):
    """A pair file failed to parse or validate."""


@dataclass(frozen=True)
class StructuredEndo:
    """One endomorphism of T^n in source-table form.

    ``theta[i]`` is the 1-based input coordinate feeding output coordinate
    i+1, or 0 if that output coordinate is constantly the identity.
    ``phis[i]`` is a T-automorphism id, present exactly when theta[i] != 0.
    """

    group: FiniteGroup
    n: int
    theta: tuple
    phis: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(self.theta) != self.n or len(self.phis) != self.n:
            raise ValueError("theta and phis must both have length n")
        nauts = len(self.group.automorphisms())
        for i, (t, p) in enumerate(zip(self.theta, self.phis)):
            if not 0 <= t <= self.n:
                raise ValueError(f"theta[{i}] = {t} is outside 0..{self.n}")
            if t == 0:
                if p is not None:
                    raise ValueError(f"phis[{i}] must be None when theta[{i}] = 0")
            elif not (isinstance(p, int) and 0 <= p < nauts):
                raise ValueError(f"phis[{i}] = {p!r} is not an automorphism id")

    def apply(self, x):
        """Image of the coordinate tuple ``x``."""
        auts = self.group.automorphisms()
        return tuple(
            0 if t == 0 else auts[p][x[t - 1]]
            for t, p in zip(self.theta, self.phis)
        )

    def __str__(self):
        bits = ",".join(
            f"{t}:{'-' if p is None else p}" for t, p in zip(self.theta, self.phis)
        )
        return f"<endo {self.group.name}^{self.n} {bits}>"


def identity_endo(T, n):
    return StructuredEndo(T, n, tuple(range(1, n + 1)), (0,) * n)


def trivial_endo(T, n):
    return StructuredEndo(T, n, (0,) * n, (None,) * n)


def is_automorphism(e):
    """True iff theta avoids 0 and permutes the coordinates."""
    return 0 not in e.theta and len(set(e.theta)) == e.n


def compose(e1, e2):
    """The endomorphism applying e2 first, then e1."""
    if e1.group is not e2.group or e1.n != e2.n:
        raise ValueError("endomorphisms live over different powers")
    T, n = e1.group, e1.n
    auts = T.automorphisms()
    theta, phis = [], []
    for i in range(n):
        t1 = e1.theta[i]
        if t1 == 0:
            theta.append(0)
            phis.append(None)
            continue
        t2 = e2.theta[t1 - 1]
        if t2 == 0:
            theta.append(0)
            phis.append(None)
            continue
        theta.append(t2)
        composed = tuple(auts[e1.phis[i]][v] for v in auts[e2.phis[t1 - 1]])
        phis.append(T.aut_index(composed))
    return StructuredEndo(T, n, tuple(theta), tuple(phis))


def invert_aut0(e):
    """Inverse of an invertible structured endomorphism."""
    if not is_automorphism(e):
        raise ValueError("endomorphism is not invertible")
    T, n = e.group, e.n
    auts = T.automorphisms()
    theta = [0] * n
    phis = [None] * n
    for j in range(n):
        src = e.theta[j] - 1
        theta[src] = j + 1
        phis[src] = T.aut_index(invert_perm(auts[e.phis[j]]))
    return StructuredEndo(T, n, tuple(theta), tuple(phis))


def count_end0(T, n):
    return (1 + n * len(T.automorphisms())) ** n


def count_aut0(T, n):
    return len(T.automorphisms()) ** n * math.factorial(n)


def _phi_products(T, theta):
    nauts = len(T.automorphisms())
    slots = [range(nauts) if t != 0 else (None,) for t in theta]
    for combo in itertools.product(*slots):
        yield combo


def enumerate_end0(T, n, budget=DEFAULT_ENDO_BUDGET):
    """Stream all structured endomorphisms of T^n.

    Order: theta lexicographic, then phi ids lexicographic coordinate by
    coordinate.  Raises BudgetError up front when the count (1+n|Aut T|)^n
    exceeds the budget, so callers can switch to formula-only paths.
    """
    total = count_end0(T, n)
    if total > budget:
        raise BudgetError(
            f"End0({T.name}^{n}) has {total} elements, over the budget of {budget}"
        )
    for theta in itertools.product(range(n + 1), repeat=n):
        for phis in _phi_products(T, theta):
            yield StructuredEndo(T, n, theta, phis)


def enumerate_aut0(T, n, budget=DEFAULT_ENDO_BUDGET):
    """Stream the invertible structured endomorphisms (theta permutations)."""
    total = count_aut0(T, n)
    if total > budget:
        raise BudgetError(
            f"Aut0({T.name}^{n}) has {total} elements, over the budget of {budget}"
        )
    for theta in itertools.permutations(range(1, n + 1)):
        for phis in _phi_products(T, theta):
            yield StructuredEndo(T, n, theta, phis)


# ── Vectorised application over all of T^n ──────────────────────────────

_COORDS_CACHE: dict[tuple[int, int], np.ndarray] = {}


def all_coords(T, n):
    """(|T|^n, n) array of every coordinate tuple, in power-index order."""
    key = (id(T), n)
    if key not in _COORDS_CACHE:
        arr = np.array(
            list(itertools.product(range(T.order), repeat=n)), dtype=np.int64
        )
        arr.setflags(write=False)
        _COORDS_CACHE[key] = arr
    return _COORDS_CACHE[key]


def image_coords_table(e, coords=None):
    """Images of every element of T^n under ``e``, as an (N, n) array.

    Row k is e(x) where x is the k-th coordinate tuple; used by the
    brute-force fixed-point scans and pair censuses.
    """
    T, n = e.group, e.n
    if coords is None:
        coords = all_coords(T, n)
    auts_arr = np.array(T.automorphisms(), dtype=np.int64)
    out = np.zeros_like(coords)
    for i, (t, p) in enumerate(zip(e.theta, e.phis)):
        if t != 0:
            out[:, i] = auts_arr[p][coords[:, t - 1]]
    return out


# ── Pair files ─────────────────────────────────────────────────────
#
# Text format consumed by the CLI:
#
#     n=<k>
#     theta_f=<k comma-separated ints in 0..k>
#     phi_f=<k comma-separated entries: automorphism id, or "-" where theta is 0>
#     theta_g=...
#     phi_g=...


def _parse_int_list(value, what, n):
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != n:
        raise PairFileError(f"{what} must have {n} entries, found {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise PairFileError(f"{what} contains a non-integer entry") from None


def _parse_phi_list(value, what, theta, n):
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != n:
        raise PairFileError(f"{what} must have {n} entries, found {len(parts)}")
    out = []
    for i, p in enumerate(parts):
        if p == "-":
            if theta[i] != 0:
                raise PairFileError(
                    f'{what}[{i}] is "-" but the matching theta entry is {theta[i]}, not 0'
                )
            out.append(None)
        else:
            if theta[i] == 0:
                raise PairFileError(
                    f'{what}[{i}] must be "-" because the matching theta entry is 0'
                )
            try:
                out.append(int(p))
            except ValueError:
                raise PairFileError(f"{what}[{i}] is neither an id nor \"-\"") from None
    return out


def parse_pair_file(text, T):
    """Parse pair-file text into two StructuredEndos over T."""
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise PairFileError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    for key in ("n", "theta_f", "phi_f", "theta_g", "phi_g"):
        if key not in fields:
            raise PairFileError(f"missing field {key}")
    try:
        n = int(fields["n"])
    except ValueError:
        raise PairFileError("n must be an integer") from None
    if n < 1:
        raise PairFileError("n must be at least 1")
    endos = []
    for tag in ("f", "g"):
        theta = _parse_int_list(fields[f"theta_{tag}"], f"theta_{tag}", n)
        phis = _parse_phi_list(fields[f"phi_{tag}"], f"phi_{tag}", theta, n)
        try:
            endos.append(StructuredEndo(T, n, tuple(theta), tuple(phis)))
        except ValueError as exc:
            raise PairFileError(f"invalid endomorphism {tag}: {exc}") from None
    return endos[0], endos[1]


def format_pair_file(f, g):
    def fmt(vals):
        return ",".join("-" if v is None else str(v) for v in vals)

    return "\n".join(
        [
            f"n={f.n}",
            f"theta_f={fmt(f.theta)}",
            f"phi_f={fmt(f.phis)}",
            f"theta_g={fmt(g.theta)}",
            f"phi_g={fmt(g.phis)}",
        ]
    )
