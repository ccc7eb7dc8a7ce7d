"""Finite set systems as bitmask families, with exact VC statistics.

A family lives over a ground set of indexed points (0..n-1) and stores
each member set as an integer bitmask.  Growth statistics (vcdim, the
trace-count function pi) run on the selected kernel backend; a separate
tree-search oracle recomputes vcdim from the definition for use as an
independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence, Union

from . import _kernels
from .errors import DimensionMismatchError, InvalidInputError, ResourceLimitError

#: Marker for the dimension of the empty family.  Using -inf (rather
#: than None) keeps ordering facts like vcdim <= ldim literally true on
#: every input.
NEG_INF = float("-inf")

#: Soft resource limits; constructors raise ResourceLimitError beyond
#: these unless explicitly overridden.
MAX_POINTS = 20
MAX_SETS = 4096

#: Hard cap imposed by the compiled kernels (uint64 masks).
_HARD_MAX_POINTS = 64


@dataclass(frozen=True)
class GroundSet:
    """Indexed sample points 0..size-1 with display labels."""

    size: int
    labels: tuple = ()

    def __post_init__(self):
        if self.size < 0:
            raise InvalidInputError("ground set size must be >= 0")
        if self.labels and len(self.labels) != self.size:
            raise InvalidInputError("label count differs from ground set size")
        if self.labels and len(set(self.labels)) != self.size:
            raise InvalidInputError("display labels must be distinct")

    @staticmethod
    def of_size(size: int) -> "GroundSet":
        return GroundSet(size)

    def label(self, i: int) -> str:
        if self.labels:
            return self.labels[i]
        return str(i)

    def all_labels(self) -> list:
        return [self.label(i) for i in range(self.size)]


SubsetLike = Union[int, Iterable[int]]


def as_mask(subset: SubsetLike, size: int) -> int:
    """Normalize an index iterable or raw bitmask to a width-checked mask."""
    if isinstance(subset, int):
        mask = subset
    else:
        mask = 0
        for i in subset:
            if not 0 <= i < size:
                raise DimensionMismatchError(f"point index {i} outside ground set of size {size}")
            mask |= 1 << i
    if mask < 0 or mask >> size:
        raise DimensionMismatchError(f"mask {bin(mask)} wider than ground set of size {size}")
    return mask


def mask_to_indices(mask: int) -> list:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class SetFamily:
    """Distinct subsets of a ground set, each optionally carrying a witness.

    Witnesses are opaque to this module (zero-set families store the
    coefficient vector that realized each trace).  Order of members is
    preserved: merge operations keep the witness of the first contributor.
    """

    ground: GroundSet
    masks: tuple
    witnesses: tuple = ()

    def __post_init__(self):
        if self.witnesses and len(self.witnesses) != len(self.masks):
            raise InvalidInputError("witness count differs from set count")
        seen = set()
        for m in self.masks:
            if not isinstance(m, int) or m < 0 or m >> self.ground.size:
                raise DimensionMismatchError(
                    f"mask {m!r} does not fit ground set of size {self.ground.size}"
                )
            if m in seen:
                raise InvalidInputError(f"duplicate member set {bin(m)}")
            seen.add(m)

    @staticmethod
    def create(
        ground: GroundSet,
        masks: Sequence[int],
        witnesses: Sequence = (),
        *,
        enforce_limits: bool = True,
    ) -> "SetFamily":
        if ground.size > _HARD_MAX_POINTS:
            raise ResourceLimitError(
                f"ground set of {ground.size} points exceeds the hard cap {_HARD_MAX_POINTS}"
            )
        if enforce_limits and ground.size > MAX_POINTS:
            raise ResourceLimitError(
                f"ground set of {ground.size} points exceeds the soft limit {MAX_POINTS}"
            )
        if enforce_limits and len(masks) > MAX_SETS:
            raise ResourceLimitError(
                f"family of {len(masks)} sets exceeds the soft limit {MAX_SETS}"
            )
        return SetFamily(ground, tuple(masks), tuple(witnesses))

    @staticmethod
    def from_index_sets(
        ground: GroundSet,
        sets: Sequence[Iterable[int]],
        witnesses: Sequence = (),
        **kwargs,
    ) -> "SetFamily":
        masks = [as_mask(tuple(s), ground.size) for s in sets]
        return SetFamily.create(ground, masks, witnesses, **kwargs)

    def __len__(self) -> int:
        return len(self.masks)

    def members(self) -> list:
        return [frozenset(mask_to_indices(m)) for m in self.masks]

    def witness_for(self, index: int):
        return self.witnesses[index] if self.witnesses else None


def restrict(fam: SetFamily, subset: SubsetLike) -> SetFamily:
    """Trace family on the selected points, re-indexed to 0..k-1.

    Members that collapse to the same trace are merged; the surviving
    trace keeps the witness of its first contributor in input order.
    """
    mask = as_mask(subset, fam.ground.size)
    selected = mask_to_indices(mask)
    # Labels follow the surviving points so restrictions stay traceable
    # back to the original sample.
    new_ground = GroundSet(len(selected), tuple(fam.ground.label(i) for i in selected))
    position = {p: j for j, p in enumerate(selected)}
    seen = {}
    new_masks = []
    new_witnesses = []
    for idx, m in enumerate(fam.masks):
        compressed = 0
        remaining = m & mask
        for p in mask_to_indices(remaining):
            compressed |= 1 << position[p]
        if compressed in seen:
            continue
        seen[compressed] = idx
        new_masks.append(compressed)
        if fam.witnesses:
            new_witnesses.append(fam.witnesses[idx])
    return SetFamily(new_ground, tuple(new_masks), tuple(new_witnesses))


def shatters(fam: SetFamily, subset: SubsetLike) -> bool:
    """True iff every subset of `subset` occurs as a trace."""
    mask = as_mask(subset, fam.ground.size)
    k = bin(mask).count("1")
    return _kernels.count_restrictions(fam.masks, mask) == 1 << k


def vcdim(fam: SetFamily):
    """VC dimension: size of the largest shattered subset.

    Returns NEG_INF for the empty family (no subset, not even the empty
    one, is shattered), 0 or more otherwise.
    """
    if not fam.masks:
        return NEG_INF
    return _kernels.vcdim(fam.masks, fam.ground.size)


def pi(fam: SetFamily, n: int) -> int:
    """Trace-count growth function: max distinct traces on n points."""
    if not 0 <= n <= fam.ground.size:
        raise DimensionMismatchError(
            f"pi argument {n} outside 0..{fam.ground.size} (ground set size)"
        )
    if not fam.masks:
        return 0
    return _kernels.pi(fam.masks, fam.ground.size, n)


def vcdim_via_trees(fam: SetFamily):
    """vcdim recomputed by exhaustive search over level-balanced trees.

    A depth-d candidate assigns one point per level (repeats allowed, as
    in the definition); it is fully well-labeled iff every one of the
    2^d membership patterns over those points is realized by some member
    set.  Independent of the kernel backend; exponential, so only for
    small inputs.
    """
    if not fam.masks:
        return NEG_INF
    n = fam.ground.size
    best = 0
    d = 1
    while d <= n:
        found = False
        for points in product(range(n), repeat=d):
            bits = [1 << p for p in points]
            if all(
                any(
                    all(bool(m & bits[i]) == bool(pattern & (1 << i)) for i in range(d))
                    for m in fam.masks
                )
                for pattern in range(1 << d)
            ):
                found = True
                break
        if not found:
            break
        best = d
        d += 1
    return best


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def family_to_json(fam: SetFamily) -> dict:
    """Lossless JSON form: ground labels plus sorted index lists."""
    return {
        "ground": fam.ground.all_labels(),
        "sets": [sorted(mask_to_indices(m)) for m in fam.masks],
    }


def family_from_json(data: dict, *, enforce_limits: bool = True) -> SetFamily:
    if not isinstance(data, dict) or "ground" not in data or "sets" not in data:
        raise InvalidInputError("family JSON needs 'ground' and 'sets'")
    labels = data["ground"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise InvalidInputError("'ground' must be a list of label strings")
    ground = GroundSet(len(labels), tuple(labels))
    sets = data["sets"]
    if not isinstance(sets, list):
        raise InvalidInputError("'sets' must be a list of index lists")
    return SetFamily.from_index_sets(ground, sets, enforce_limits=enforce_limits)
