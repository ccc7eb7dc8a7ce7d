"""Span structure of trace families and subspace-cover certificates.

The central observation mechanized here: a trace is recoverable from
the span of the images of its points, because the trace of a witness a
equals {x in sample : image(x) in ker(a)} and only the span of the
image set matters.  Consequences, each with a direct checker:

* taking spans is injective on the image family of any enumerated
  trace family, and no member spans all of F^d;
* each member reduces to an independent spanning subset of size < d,
  preserving the family's cardinality;
* if every sampled image lies in one of k proper subspaces and the
  sample holds more than k*(d-1) distinct images, some subspace holds
  d of them, and the trace family lands strictly below the
  C(n,0)+...+C(n,d-1) ceiling.

CoverCertificate packages covering subspaces as spanning lists so a
cover claim can travel as JSON and be re-verified on fresh points.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Optional, Sequence

from .constructions import binom_le, independence_sequence, max_vc_trace
from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    InvalidInputError,
    StreamExhaustedError,
)
from .exactalg import (
    Field,
    Vector,
    field_from_json,
    field_to_json,
    in_span,
    independent,
    rank,
    row_space_canonical,
    scalar_from_str,
    scalar_to_str,
)
from .setsystem import mask_to_indices
from .zerosets import (
    DEFAULT_BUDGET,
    Instance,
    Sample,
    ZeroSetFamily,
    enumerate_family_flats,
)


@dataclass(frozen=True)
class SpanFamily:
    """A collection of finite vector sets in F^d, kept in input order.

    Members are tuples of Vectors.  Duplicate vectors inside a member
    are dropped on construction; duplicate members are rejected, since
    the family is a set of sets.
    """

    d: int
    members: tuple

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInputError("ambient dimension must be >= 1")
        seen = set()
        for member in self.members:
            for v in member:
                if len(v) != self.d:
                    raise DimensionMismatchError(
                        f"member vector of width {len(v)}, ambient is {self.d}"
                    )
            key = frozenset(v.entries for v in member)
            if key in seen:
                raise InvalidInputError("duplicate member vector set")
            seen.add(key)

    @staticmethod
    def create(d: int, members: Sequence[Sequence[Vector]]) -> "SpanFamily":
        cleaned = []
        for member in members:
            out, entries_seen = [], set()
            for v in member:
                if v.entries not in entries_seen:
                    entries_seen.add(v.entries)
                    out.append(v)
            cleaned.append(tuple(out))
        return SpanFamily(d, tuple(cleaned))

    def __len__(self) -> int:
        return len(self.members)


def image_family(zfam: ZeroSetFamily) -> SpanFamily:
    """The vector sets {image(x) : x in trace}, one member per trace.

    Members stay aligned with zfam.sets.  Distinct traces always give
    distinct image sets: a zero set contains either all sample points
    sharing an image or none of them.
    """
    images = zfam.sample.images
    members = [
        tuple(images[i] for i in mask_to_indices(zs.mask)) for zs in zfam.sets
    ]
    return SpanFamily.create(zfam.sample.instance.d, members)


@dataclass(frozen=True)
class SpanInjectivityReport:
    """Verdict with a counterexample pair or member index on failure."""

    injective: bool
    reason: Optional[str] = None  # "full_span" | "equal_spans"
    indices: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.injective


def span_injective(fam: SpanFamily) -> SpanInjectivityReport:
    """True iff no member spans F^d and distinct members span distinct spaces."""
    seen: dict = {}
    for idx, member in enumerate(fam.members):
        span = row_space_canonical(member)
        if len(span) >= fam.d:
            return SpanInjectivityReport(False, "full_span", (idx,))
        if span in seen:
            return SpanInjectivityReport(False, "equal_spans", (seen[span], idx))
        seen[span] = idx
    return SpanInjectivityReport(True)


def _greedy_spanning_subset(vectors: Sequence[Vector]) -> tuple:
    chosen: list = []
    for v in vectors:
        if v.is_zero() or in_span(v, chosen):
            continue
        chosen.append(v)
    return tuple(chosen)


def minimal_spanning_reduction(fam: SpanFamily) -> SpanFamily:
    """Replace each member by a greedy independent subset with equal span.

    Requires span injectivity; re-verifies on the way out that every
    reduced member is independent of size < d with the original span,
    and that the family's cardinality and injectivity survived.
    """
    verdict = span_injective(fam)
    if not verdict:
        raise InvalidInputError(
            f"family is not span injective ({verdict.reason} at {verdict.indices})"
        )
    reduced_members = []
    for member in fam.members:
        reduced = _greedy_spanning_subset(member)
        if row_space_canonical(reduced) != row_space_canonical(member):
            raise AssertionError("greedy reduction changed a member's span")
        if not independent(reduced):
            raise AssertionError("greedy reduction kept a dependent set")
        if len(reduced) >= fam.d:
            raise AssertionError("reduced member reached the ambient dimension")
        reduced_members.append(reduced)
    out = SpanFamily(fam.d, tuple(reduced_members))
    if len(out) != len(fam):
        raise AssertionError("reduction changed the family cardinality")
    if not span_injective(out):
        raise AssertionError("reduction broke span injectivity")
    return out


# ---------------------------------------------------------------------------
# Subspace covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverCertificate:
    """Claim: the instance image lies in the union of these subspaces.

    Each subspace is a spanning tuple of vectors of rank < d; coverage
    of one image is decided exactly by in_span, and the claim itself is
    only ever validated against sampled points.
    """

    field: Field
    d: int
    subspaces: tuple  # tuple of tuples of Vectors

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInputError("cover needs d >= 1")
        if not self.subspaces:
            raise InvalidInputError("cover needs at least one subspace")
        for spanning in self.subspaces:
            for v in spanning:
                if v.field != self.field:
                    raise FieldMismatchError("cover vector over the wrong field")
                if len(v) != self.d:
                    raise DimensionMismatchError("cover vector of the wrong width")
            if rank(spanning) >= self.d:
                raise InvalidInputError("cover subspace is not proper")

    def __len__(self) -> int:
        return len(self.subspaces)

    def assign(self, v: Vector) -> Optional[int]:
        """Index of the first subspace containing v, or None."""
        for idx, spanning in enumerate(self.subspaces):
            if in_span(v, spanning):
                return idx
        return None

    def covers(self, v: Vector) -> bool:
        return self.assign(v) is not None


def cover_from_instance(instance: Instance) -> CoverCertificate:
    if instance.cover_subspaces is None:
        raise InvalidInputError(
            f"instance {instance.name} declares no covering subspaces"
        )
    return CoverCertificate(
        field=instance.field, d=instance.d, subspaces=tuple(instance.cover_subspaces)
    )


def cover_to_json(cert: CoverCertificate) -> dict:
    return {
        "field": field_to_json(cert.field),
        "d": cert.d,
        "subspaces": [
            [[scalar_to_str(x) for x in v.entries] for v in spanning]
            for spanning in cert.subspaces
        ],
    }


def cover_from_json(data: dict) -> CoverCertificate:
    field = field_from_json(data["field"])
    d = data["d"]
    subspaces = tuple(
        tuple(
            Vector(field, tuple(scalar_from_str(field, x) for x in entries))
            for entries in spanning
        )
        for spanning in data["subspaces"]
    )
    return CoverCertificate(field=field, d=d, subspaces=subspaces)


# ---------------------------------------------------------------------------
# The strict counting deficit under a cover
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundCheckReport:
    """Strict pigeonhole bound on a span-injective family over S."""

    count: int
    bound: int  # C(|S|, 0) + ... + C(|S|, d-1)
    strict: bool
    crowded_subspace: int  # cover index holding >= d vectors of S
    crowded_count: int


def not_maximal_bound_check(
    S: Sequence[Vector], cover: CoverCertificate, fam: SpanFamily
) -> BoundCheckReport:
    """Assert |fam| < C(|S|, <d) for a covered S with |S| > k(d-1).

    Preconditions verified here, each with its own error: the vectors
    of S are pairwise distinct and each lies in some cover subspace;
    |S| exceeds k(d-1); fam is span injective and its members draw
    only from S.
    """
    S = tuple(S)
    d = cover.d
    k = len(cover)
    entry_set = set()
    for v in S:
        if len(v) != d:
            raise DimensionMismatchError("sample vector of the wrong width")
        if v.entries in entry_set:
            raise InvalidInputError("sample vectors must be pairwise distinct")
        entry_set.add(v.entries)
    if len(S) <= k * (d - 1):
        raise InvalidInputError(
            f"|S| = {len(S)} does not exceed k(d-1) = {k * (d - 1)}"
        )
    assignment = []
    for v in S:
        idx = cover.assign(v)
        if idx is None:
            raise InvalidInputError(f"sample vector {v} escapes the cover")
        assignment.append(idx)
    verdict = span_injective(fam)
    if not verdict:
        raise InvalidInputError(
            f"family is not span injective ({verdict.reason} at {verdict.indices})"
        )
    for member in fam.members:
        for v in member:
            if v.entries not in entry_set:
                raise InvalidInputError("family member uses a vector outside S")

    groups: dict = {}
    for i, idx in enumerate(assignment):
        groups.setdefault(idx, []).append(i)
    crowded = max(groups, key=lambda idx: len(groups[idx]))
    if len(groups[crowded]) < d:
        raise AssertionError("pigeonhole miscount: no subspace holds d vectors")

    bound = binom_le(len(S), d - 1)
    count = len(fam)
    if not count < bound:
        raise AssertionError(f"family size {count} is not below the ceiling {bound}")
    return BoundCheckReport(
        count=count,
        bound=bound,
        strict=True,
        crowded_subspace=crowded,
        crowded_count=len(groups[crowded]),
    )


# ---------------------------------------------------------------------------
# Non-maximality from a cover
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NonMaximalityReport:
    """Outcome of testing a cover against k*(d-1)+1 fresh points.

    verdict "verified": every sampled image fell into the cover, the
    pigeonhole subset missing_subset is provably not a trace (its span
    already captures the image of forced_index), and the enumerated
    trace family is strictly smaller than the C(n,<d) ceiling.

    verdict "refuted": escape_point's image lies outside every claimed
    subspace, so the cover does not cover the image; evidence for
    maximality instead.
    """

    verdict: str
    certificate: CoverCertificate
    sample: Optional[Sample]
    n: int
    trace_count: Optional[int]
    bound: Optional[int]
    missing_subset: Optional[tuple]
    forced_index: Optional[int]
    bound_report: Optional[BoundCheckReport]
    escape_point: object = None
    family: Optional[ZeroSetFamily] = None


def _sample_distinct_images(instance: Instance, n: int, *, budget: int) -> Sample:
    points: list = []
    seen_images: set = set()
    for point in islice(instance.stream(), budget):
        image = instance.image(point)
        if image.entries in seen_images:
            continue
        seen_images.add(image.entries)
        points.append(point)
        if len(points) == n:
            return Sample.take(instance, points)
    raise StreamExhaustedError(
        f"found only {len(points)} of {n} points with distinct images "
        f"within budget {budget}"
    )


def non_maximality_certificate(
    instance: Instance,
    certificate: Optional[CoverCertificate] = None,
    *,
    budget: int = DEFAULT_BUDGET,
) -> NonMaximalityReport:
    """Check a subspace cover and extract the strict trace deficit.

    Draws n = k*(d-1)+1 stream points with pairwise distinct images.
    If some image escapes the cover the claim is refuted.  Otherwise
    one subspace holds at least d images; d-1 sample points spanning
    them drag one more point into every zero set containing all of
    them, so that (d-1)-subset is exhibited as a non-trace, and the
    enumerated family is strictly smaller than C(n,<d).
    """
    cert = certificate if certificate is not None else cover_from_instance(instance)
    if cert.field != instance.field or cert.d != instance.d:
        raise InvalidInputError("certificate shape does not match the instance")
    d = instance.d
    k = len(cert)
    n = k * (d - 1) + 1
    sample = _sample_distinct_images(instance, n, budget=budget)

    for point, image in zip(sample.points, sample.images):
        if not cert.covers(image):
            return NonMaximalityReport(
                verdict="refuted",
                certificate=cert,
                sample=sample,
                n=n,
                trace_count=None,
                bound=None,
                missing_subset=None,
                forced_index=None,
                bound_report=None,
                escape_point=point,
            )

    images = sample.images
    zfam = enumerate_family_flats(sample)
    fam = image_family(zfam)
    report = not_maximal_bound_check(images, cert, fam)

    # The explicit non-trace: inside the crowded subspace, a spanning
    # d-1 points force one leftover point into every containing trace.
    members = [
        i for i in range(n) if cert.assign(images[i]) == report.crowded_subspace
    ]
    core: list = []
    for i in members:
        if not images[i].is_zero() and not in_span(
            images[i], [images[j] for j in core]
        ):
            core.append(i)
    in_core = set(core)
    forced = next(i for i in members if i not in in_core)
    padding = [i for i in range(n) if i != forced and i not in in_core]
    missing = tuple(sorted(core + padding[: (d - 1) - len(core)]))
    if len(missing) != d - 1:
        raise AssertionError("could not assemble a d-1 subset avoiding the forced point")
    if not in_span(images[forced], [images[i] for i in missing]):
        raise AssertionError("forced image escaped the span of the missing subset")
    missing_mask = 0
    for i in missing:
        missing_mask |= 1 << i
    if any(zs.mask == missing_mask for zs in zfam.sets):
        raise AssertionError("the pigeonhole subset showed up as a trace after all")

    return NonMaximalityReport(
        verdict="verified",
        certificate=cert,
        sample=sample,
        n=n,
        trace_count=report.count,
        bound=report.bound,
        missing_subset=missing,
        forced_index=forced,
        bound_report=report,
        family=zfam,
    )


def maximal_profile_check(
    instance: Instance, n: int, *, budget: int = DEFAULT_BUDGET
) -> ZeroSetFamily:
    """Find n sample points realizing every subset of size < d as a trace.

    Greedily extends a d-wise independent prefix of the stream and
    realizes each small subset through its padded witness.  The
    returned family is verified to hit the C(n,<d) ceiling exactly;
    failure raises, it is never silently approximated.
    """
    d = instance.d
    seq_len = n + d - 1 if d >= 2 else n
    seq = independence_sequence(instance, seq_len, budget=budget)
    fam = max_vc_trace(seq, n)
    expected = binom_le(n, d - 1)
    if len(fam.sets) != expected:
        raise AssertionError(
            f"profile realized {len(fam.sets)} traces, expected {expected}"
        )
    return fam
