"""Zero sets of linear combinations, and the families they trace.

An instance is a map from a domain X into F^d given coordinatewise by d
functions; every nonzero coefficient vector a determines the zero set
{x : a . image(x) == 0}.  On a finite sample these zero sets trace a
finite set system, enumerated here exactly by two independent routes: a
projective brute force over small prime fields, and a span-closure
(flat lattice) walk that works over any field.  Each emitted trace
carries the coefficient vector that realized it, and every witness
re-verifies by exact dot products.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice, product
from typing import Callable, Iterator, Optional, Sequence

from .errors import InvalidInputError, ResourceLimitError, StreamExhaustedError
from .exactalg import (
    Field,
    PrimeField,
    Vector,
    dot,
    in_span,
    nullspace_basis,
    projective_normalize,
)
from .setsystem import GroundSet, SetFamily

#: Default number of stream points a scan may consume.
DEFAULT_BUDGET = 10_000

#: Brute-force enumeration requires p**d at most this.
BRUTEFORCE_SPACE_LIMIT = 2_000_000

#: Flat-lattice enumeration aborts beyond this many closure classes.
MAX_FLATS = 20_000

#: Safety cap on the rational witness search (mathematically it always
#: terminates long before this).
_RATIONAL_SEARCH_CAP = 200_000


@dataclass(frozen=True)
class Instance:
    """A coordinatized map X -> F^d with a restartable point stream.

    evaluate turns a point descriptor into its image Vector of width d;
    stream() yields descriptors in a fixed documented order, so every
    scan in the package is deterministic.  cover_subspaces optionally
    records a known finite cover of the image by proper subspaces (as
    spanning sets); profile_points optionally names the canonical sample
    used for shatter-function tables.
    """

    name: str
    field: Field
    d: int
    evaluate: Callable
    stream: Callable[[], Iterator]
    cover_subspaces: Optional[tuple] = None
    profile_points: Optional[Callable[[int], list]] = None
    spec: Optional[dict] = None  # JSON-able recipe for rebuild (bundles)

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInputError("instance needs d >= 1")

    def image(self, point) -> Vector:
        v = self.evaluate(point)
        if not isinstance(v, Vector) or v.field != self.field or len(v) != self.d:
            raise InvalidInputError(
                f"evaluator returned a bad image for {point!r}: {v!r}"
            )
        return v


def _point_label(point) -> str:
    if isinstance(point, tuple):
        return "(" + ",".join(str(c) for c in point) + ")"
    return str(point)


@dataclass(frozen=True)
class Sample:
    """Finite list of distinct domain points with cached images."""

    instance: Instance
    points: tuple
    images: tuple

    @staticmethod
    def take(instance: Instance, points: Sequence) -> "Sample":
        points = tuple(points)
        if len(set(points)) != len(points):
            raise InvalidInputError("sample points must be distinct")
        images = tuple(instance.image(p) for p in points)
        return Sample(instance, points, images)

    @staticmethod
    def prefix(instance: Instance, k: int) -> "Sample":
        """First k distinct stream points."""
        out = []
        seen = set()
        for p in instance.stream():
            if p in seen:
                continue
            seen.add(p)
            out.append(p)
            if len(out) == k:
                break
        if len(out) < k:
            raise StreamExhaustedError(
                f"stream of {instance.name} ended after {len(out)} points, needed {k}"
            )
        return Sample.take(instance, out)

    def __len__(self) -> int:
        return len(self.points)

    def ground_set(self) -> GroundSet:
        labels = []
        used = set()
        for i, p in enumerate(self.points):
            lab = _point_label(p)
            if lab in used:  # defensive: descriptors stringify identically
                lab = f"{lab}#{i}"
            used.add(lab)
            labels.append(lab)
        return GroundSet(len(self.points), tuple(labels))


@dataclass(frozen=True)
class ZeroSet:
    """One trace: membership mask over the sample plus its witness."""

    mask: int
    witness: Vector


@dataclass(frozen=True)
class ZeroSetFamily:
    """All distinct traces on a sample, sorted by mask for determinism."""

    sample: Sample
    sets: tuple
    method: str

    def masks(self) -> tuple:
        return tuple(z.mask for z in self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def to_set_family(self, *, enforce_limits: bool = True) -> SetFamily:
        return SetFamily.create(
            self.sample.ground_set(),
            [z.mask for z in self.sets],
            [z.witness for z in self.sets],
            enforce_limits=enforce_limits,
        )


def zero_set(sample: Sample, a: Vector) -> ZeroSet:
    """The trace of coefficient vector a on the sample.

    a must be nonzero of width d over the instance field; the stored
    witness is the projective normalization of a.
    """
    inst = sample.instance
    if a.field != inst.field or len(a) != inst.d:
        raise InvalidInputError("coefficient vector has wrong field or width")
    if a.is_zero():
        raise InvalidInputError("coefficient vector must be nonzero")
    zero = inst.field.zero
    mask = 0
    for i, v in enumerate(sample.images):
        if dot(a, v) == zero:
            mask |= 1 << i
    return ZeroSet(mask, projective_normalize(a))


@dataclass(frozen=True)
class IndependenceVerdict:
    """Outcome of the budgeted independence scan.

    kind "independent": witness_points hold d stream points with
    linearly independent images.  kind "dependent": witness_coeffs is a
    nonzero vector annihilating every streamed image (a proof when the
    stream was exhausted, budget-bounded evidence otherwise).
    "inconclusive" is a defensive arm for misbehaving evaluators.
    """

    kind: str
    witness_points: Optional[tuple]
    witness_coeffs: Optional[Vector]
    scanned: int
    rank: int
    stream_exhausted: bool


def linearly_independent(
    instance: Instance, *, budget: int = DEFAULT_BUDGET
) -> IndependenceVerdict:
    """Scan the stream for d points with linearly independent images.

    Success returns those points.  If the scan ends with image rank
    r < d, the nullspace of the accumulated span gives a candidate
    annihilator, which is re-verified against every streamed image
    before the dependent verdict is issued.
    """
    inst = instance
    if budget < inst.d:
        raise InvalidInputError(f"budget {budget} cannot reach d={inst.d} points")
    basis: list = []
    basis_points: list = []
    streamed: list = []
    exhausted = True
    stream = inst.stream()
    for point in islice(stream, budget):
        v = inst.image(point)
        streamed.append(v)
        if not in_span(v, basis):
            basis.append(v)
            basis_points.append(point)
            if len(basis) == inst.d:
                return IndependenceVerdict(
                    kind="independent",
                    witness_points=tuple(basis_points),
                    witness_coeffs=None,
                    scanned=len(streamed),
                    rank=inst.d,
                    stream_exhausted=False,
                )
    else:
        exhausted = next(stream, None) is None  # islice stopped: budget or end?
    if len(streamed) < inst.d:
        raise StreamExhaustedError(
            f"stream of {inst.name} yielded {len(streamed)} points, fewer than d={inst.d}"
        )
    kernel = nullspace_basis(inst.field, inst.d, basis)
    witness = projective_normalize(kernel[0])
    zero = inst.field.zero
    if all(dot(witness, v) == zero for v in streamed):
        kind = "dependent"
    else:
        kind = "inconclusive"
    return IndependenceVerdict(
        kind=kind,
        witness_points=None,
        witness_coeffs=witness,
        scanned=len(streamed),
        rank=len(basis),
        stream_exhausted=exhausted,
    )


# ---------------------------------------------------------------------------
# Exact trace enumeration: two independent routes
# ---------------------------------------------------------------------------


def _projective_representatives(field: PrimeField, d: int) -> Iterator[Vector]:
    """All lines of F_p^d, one representative each: first nonzero entry 1."""
    p = field.p
    for lead in range(d):
        head = [field.zero] * lead + [field.one]
        for tail in product(range(p), repeat=d - lead - 1):
            yield Vector(field, tuple(head + [field.element(t) for t in tail]))


def enumerate_family_bruteforce(sample: Sample) -> ZeroSetFamily:
    """Trace family via exhaustive projective enumeration (prime fields).

    Iterates every line of coefficient space, so the sample's field must
    be F_p with p**d below BRUTEFORCE_SPACE_LIMIT.  First witness found
    per trace is kept (projective order is fixed, so output is stable).
    """
    field = sample.instance.field
    if not isinstance(field, PrimeField):
        raise InvalidInputError("brute-force enumeration needs a prime field")
    if field.p ** sample.instance.d > BRUTEFORCE_SPACE_LIMIT:
        raise ResourceLimitError(
            f"p^d = {field.p ** sample.instance.d} exceeds {BRUTEFORCE_SPACE_LIMIT}"
        )
    found: dict = {}
    for a in _projective_representatives(field, sample.instance.d):
        z = zero_set(sample, a)
        if z.mask not in found:
            found[z.mask] = z
    sets = tuple(found[m] for m in sorted(found))
    return ZeroSetFamily(sample, sets, "projective_bruteforce")


def _closure(images: Sequence[Vector], basis: list) -> int:
    """Mask of sample points whose images lie in span(basis)."""
    mask = 0
    for i, v in enumerate(images):
        if in_span(v, basis):
            mask |= 1 << i
    return mask


def _search_witness_in_kernel(
    field: Field, kernel: Sequence[Vector], off_images: Sequence[Vector]
) -> Optional[Vector]:
    """A vector in span(kernel) with nonzero dot against every off_image.

    Over a prime field the span is searched exhaustively (projectively);
    absence of a witness means the candidate trace is not realizable.
    Over the rationals a witness always exists (a vector space over an
    infinite field is not a finite union of proper subspaces), found by
    walking integer coefficient tuples outward by max-norm.
    """
    zero = field.zero
    r = len(kernel)

    def combine(coeffs) -> Vector:
        acc = kernel[0].scale(coeffs[0])
        for c, b in zip(coeffs[1:], kernel[1:]):
            acc = acc + b.scale(c)
        return acc

    if isinstance(field, PrimeField):
        for lead in range(r):
            head = [0] * lead + [1]
            for tail in product(range(field.p), repeat=r - lead - 1):
                a = combine([field.element(c) for c in head + list(tail)])
                if all(dot(a, v) != zero for v in off_images):
                    return a
        return None
    tried = 0
    radius = 1
    while tried < _RATIONAL_SEARCH_CAP:
        for coeffs in product(range(-radius, radius + 1), repeat=r):
            if max(abs(c) for c in coeffs) != radius:
                continue
            tried += 1
            a = combine([field.from_int(c) for c in coeffs])
            if a.is_zero():
                continue
            if all(dot(a, v) != zero for v in off_images):
                return a
        radius += 1
    raise ResourceLimitError("rational witness search exceeded its safety cap")


def enumerate_family_flats(sample: Sample, *, max_flats: int = MAX_FLATS) -> ZeroSetFamily:
    """Trace family via the span-closure lattice (any field).

    Candidate traces are closures T(W) = {x : image(x) in W} for W
    ranging over spans of image subsets with rank < d; the walk adds one
    generator at a time, which reaches every closure.  Each candidate is
    kept only if some coefficient vector orthogonal to W avoids all
    images outside T(W); over a finite field that search can fail, and
    the candidate is then correctly dropped.
    """
    inst = sample.instance
    field = inst.field
    images = sample.images
    start_mask = _closure(images, [])
    seen = {start_mask: []}
    queue = [(start_mask, [])]
    while queue:
        mask, basis = queue.pop()
        if len(seen) > max_flats:
            raise ResourceLimitError(f"flat lattice exceeded {max_flats} closures")
        for i, v in enumerate(images):
            if mask & (1 << i):
                continue
            new_basis = basis + [v]
            if len(new_basis) == inst.d:
                continue  # spans the whole space; its flat is {0}
            new_mask = _closure(images, new_basis)
            if new_mask not in seen:
                seen[new_mask] = new_basis
                queue.append((new_mask, new_basis))
    found: dict = {}
    for mask in sorted(seen):
        basis = seen[mask]
        kernel = nullspace_basis(field, inst.d, basis)
        off_images = [v for i, v in enumerate(images) if not mask & (1 << i)]
        witness = _search_witness_in_kernel(field, kernel, off_images)
        if witness is not None:
            found[mask] = ZeroSet(mask, projective_normalize(witness))
    sets = tuple(found[m] for m in sorted(found))
    return ZeroSetFamily(sample, sets, "flat_lattice")


# ---------------------------------------------------------------------------
# Image collapse onto finitely many lines
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinePartitionReport:
    """Blocks induced by a line cover of the image, plus the trace check.

    block_masks[i] collects sample points whose nonzero image spans
    lines[i]; zero_block_mask collects points with zero image.  Every
    trace must be the zero block united with some of the blocks, so the
    family has at most 2**k members.
    """

    lines: tuple
    block_masks: tuple
    zero_block_mask: int
    family: ZeroSetFamily
    bound: int
    decompositions: tuple  # per trace, sorted tuple of block indices


def density_zero_partition(sample: Sample, lines: Sequence[Vector]) -> LinePartitionReport:
    inst = sample.instance
    field = inst.field
    normalized = []
    for line in lines:
        if line.field != field or len(line) != inst.d:
            raise InvalidInputError("line direction has wrong field or width")
        if line.is_zero():
            raise InvalidInputError("line direction must be nonzero")
        canon = projective_normalize(line)
        if canon not in normalized:
            normalized.append(canon)
    k = len(normalized)
    block_masks = [0] * k
    zero_block = 0
    for i, v in enumerate(sample.images):
        if v.is_zero():
            zero_block |= 1 << i
            continue
        for j, direction in enumerate(normalized):
            if in_span(v, [direction]):
                block_masks[j] |= 1 << i
                break
        else:
            raise InvalidInputError(
                f"image of point {sample.points[i]!r} lies outside the given lines"
            )
    family = enumerate_family_flats(sample)
    bound = 1 << k
    if len(family) > bound:
        raise AssertionError(
            f"line collapse bound violated: {len(family)} traces > 2^{k}"
        )
    decompositions = []
    for z in family.sets:
        if z.mask & zero_block != zero_block:
            raise AssertionError("a trace misses part of the zero-image block")
        cover = []
        rest = z.mask & ~zero_block
        for j in range(k):
            piece = rest & block_masks[j]
            if piece == block_masks[j] and piece:
                cover.append(j)
            elif piece:
                raise AssertionError(f"trace {bin(z.mask)} splits block {j}")
        decompositions.append(tuple(cover))
    return LinePartitionReport(
        lines=tuple(normalized),
        block_masks=tuple(block_masks),
        zero_block_mask=zero_block,
        family=family,
        bound=bound,
        decompositions=tuple(decompositions),
    )


# ---------------------------------------------------------------------------
# Witness bundles: export, reload, re-verify
# ---------------------------------------------------------------------------


def point_to_json(point):
    """Integer and integer-tuple point descriptors only; they cover all
    built-in streams, and nothing else can be re-evaluated after a round
    trip."""
    if isinstance(point, bool):
        raise InvalidInputError("boolean is not a point descriptor")
    if isinstance(point, int):
        return point
    if isinstance(point, tuple) and all(
        isinstance(c, int) and not isinstance(c, bool) for c in point
    ):
        return list(point)
    raise InvalidInputError(f"point {point!r} is not JSON-portable")


def point_from_json(data):
    if isinstance(data, list):
        return tuple(data)
    return data


def family_bundle(zfam: ZeroSetFamily) -> dict:
    """A self-contained transcript: instance recipe, points, witnesses.

    Every membership bit is re-derivable from the bundle alone, which
    verify_bundle does.
    """
    from .exactalg import scalar_to_str

    inst = zfam.sample.instance
    if inst.spec is None:
        raise InvalidInputError(
            f"instance {inst.name} carries no rebuild recipe; cannot bundle"
        )
    return {
        "instance": inst.spec,
        "method": zfam.method,
        "points": [point_to_json(p) for p in zfam.sample.points],
        "sets": [
            {
                "mask": z.mask,
                "indices": [i for i in range(len(zfam.sample.points)) if z.mask >> i & 1],
                "witness": [scalar_to_str(x) for x in z.witness.entries],
            }
            for z in zfam.sets
        ],
    }


def verify_bundle(bundle: dict, instance: Optional[Instance] = None) -> ZeroSetFamily:
    """Rebuild the family from a bundle and recheck every membership bit.

    The instance is reconstructed from the embedded recipe unless one is
    passed in.  Each stored witness is re-evaluated against each sample
    image; any bit out of place raises.
    """
    from .exactalg import scalar_from_str
    from .instances import instance_from_spec

    inst = instance if instance is not None else instance_from_spec(bundle["instance"])
    sample = Sample.take(inst, [point_from_json(p) for p in bundle["points"]])
    sets = []
    for entry in bundle["sets"]:
        witness = Vector(
            inst.field,
            tuple(scalar_from_str(inst.field, x) for x in entry["witness"]),
        )
        recomputed = zero_set(sample, witness)
        if recomputed.mask != entry["mask"]:
            raise InvalidInputError(
                f"witness bundle mismatch: stored mask {bin(entry['mask'])}, "
                f"recomputed {bin(recomputed.mask)}"
            )
        expected_indices = [i for i in range(len(sample.points)) if entry["mask"] >> i & 1]
        if entry.get("indices", expected_indices) != expected_indices:
            raise InvalidInputError("witness bundle indices disagree with the mask")
        sets.append(recomputed)
    return ZeroSetFamily(sample, tuple(sets), bundle.get("method", "bundle"))
