"""Green's relations, their starred variants, divisibility, Archimedean tests."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Mask,
    OrderedSemigroup,
    _aS,
    _aSa,
    _memo,
    _monoid_extension,
    _power_masks,
    _powers,
    _Sa,
    _SaS,
    downset,
    full_mask,
    members,
    subset_product,
)
from .ideals import _principal_vector

GREEN_KINDS = ("L", "R", "J", "H")
STAR_KINDS = ("L*", "R*", "J*", "H*")

#: Archimedean flavor -> the product set whose downward closure must
#: swallow a power of every element: b^m in (Sa], (aS], (aSa], (SaS]
ARCHIMEDEAN_FLAVORS = ("two-sided", "l", "r", "t")


class NotPiRegularError(ValueError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no regular power; starred relations undefined")


@dataclass(frozen=True)
class EquivalenceRelation:
    which: str
    rows: tuple[Mask, ...]  # rows[i] = mask of j related to i

    def related(self, i: int, j: int) -> bool:
        return self.rows[i] >> j & 1 == 1

    def classes(self) -> list[list[int]]:
        """Equivalence classes, ordered by least member."""
        seen: Mask = 0
        out = []
        for i in range(len(self.rows)):
            if seen >> i & 1:
                continue
            out.append(members(self.rows[i]))
            seen |= self.rows[i]
        return out

    def is_universal(self) -> bool:
        full = full_mask(len(self.rows))
        return all(r == full for r in self.rows)


def _rows_from_keys(keys: list) -> tuple[Mask, ...]:
    by_key: dict = {}
    for i, k in enumerate(keys):
        by_key[k] = by_key.get(k, 0) | (1 << i)
    return tuple(by_key[k] for k in keys)


def green(S: OrderedSemigroup, which: str) -> EquivalenceRelation:
    """a ~ b iff the corresponding principal ideals agree; H = L and R."""

    def compute():
        if which == "H":
            lrows = green(S, "L").rows
            rrows = green(S, "R").rows
            rows = tuple(lr & rr for lr, rr in zip(lrows, rrows))
        else:
            kind = {"L": "left", "R": "right", "J": "two-sided"}[which]
            rows = _rows_from_keys(list(_principal_vector(S, kind)))
        return EquivalenceRelation(which, rows)

    if which not in GREEN_KINDS:
        raise ValueError(f"unknown Green relation {which!r}")
    return _memo(S, "green:" + which, compute)


def _star_reps(S: OrderedSemigroup) -> tuple[int, ...]:
    """For each a, the value of its first regular power a^m.

    Raises NotPiRegularError when some element has no regular power.
    """

    def compute():
        from .regularity import regular_elements

        reg = regular_elements(S)
        reps = []
        for a, powers in enumerate(_powers(S)):
            for p in powers:
                if reg >> p & 1:
                    reps.append(p)
                    break
            else:
                raise NotPiRegularError(a)
        return tuple(reps)

    return _memo(S, "star_reps", compute)


def green_star(S: OrderedSemigroup, which: str) -> EquivalenceRelation:
    """Starred relation: compare the first regular powers of the elements.

    Only defined on pi-regular structures.
    """

    def compute():
        if which == "H*":
            lrows = green_star(S, "L*").rows
            rrows = green_star(S, "R*").rows
            rows = tuple(lr & rr for lr, rr in zip(lrows, rrows))
        else:
            reps = _star_reps(S)
            base = green(S, which[0])
            rows = _rows_from_keys([base.rows[reps[a]] for a in range(S.n)])
        return EquivalenceRelation(which, rows)

    if which not in STAR_KINDS:
        raise ValueError(f"unknown starred relation {which!r}")
    return _memo(S, "green_star:" + which, compute)


def _divisor_rows(S: OrderedSemigroup) -> tuple[Mask, ...]:
    """rows[a] = mask of b with a | b, decided inside the monoid extension."""

    def compute():
        ext = _monoid_extension(S).structure
        full_ext = full_mask(ext.n)
        rows = []
        for a in range(S.n):
            xay = subset_product(ext, subset_product(ext, full_ext, 1 << a), full_ext)
            rows.append(downset(ext, xay) & full_mask(S.n))
        return tuple(rows)

    return _memo(S, "divisor_rows", compute)


def divides(S: OrderedSemigroup, a: int, b: int) -> bool:
    """a | b: b <= x*a*y for some x, y in S with identity adjoined."""
    return _divisor_rows(S)[a] >> b & 1 == 1


def _archimedean_targets(S: OrderedSemigroup, flavor: str) -> tuple[Mask, ...]:
    if flavor == "two-sided":
        vec = _SaS(S)
    elif flavor == "l":
        vec = _Sa(S)
    elif flavor == "r":
        vec = _aS(S)
    elif flavor == "t":
        vec = _aSa(S)
    else:
        raise ValueError(f"unknown Archimedean flavor {flavor!r}")
    return _memo(S, "arch_targets:" + flavor, lambda: tuple(downset(S, m) for m in vec))


def is_archimedean(S: OrderedSemigroup, flavor: str) -> bool:
    """Every pair (a, b) has some m with b^m in the flavor's closed set.

    two-sided: (SaS], l: (Sa], r: (aS], t: (aSa].  The exponent search
    over m in 1..n is exhaustive because the distinct powers of b all
    occur in that range.
    """

    def compute():
        targets = _archimedean_targets(S, flavor)
        pows = _power_masks(S)
        return all(pows[b] & targets[a] for a in range(S.n) for b in range(S.n))

    return _memo(S, "archimedean:" + flavor, compute)
