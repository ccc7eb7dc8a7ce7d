"""Built-in instances, polynomial instances, and the instance JSON spec.

Streams are the documented deterministic orders:

* one integer variable over Q: 0, 1, -1, 2, -2, ...
* several integer variables over Q: square shells by max-norm, radius
  ascending, lexicographic within a shell
* prime fields: lexicographic over F_p tuples, coordinates 0..p-1

Polynomial instances accept expressions in named variables built from
integer literals, +, -, *, and nonnegative integer powers (either ** or
^); they are validated as an AST whitelist and evaluated exactly over
the instance field.
"""

from __future__ import annotations

import ast
from itertools import count, product
from typing import Iterator, Sequence

from .errors import InvalidInputError
from .exactalg import (
    Field,
    PrimeField,
    QQ,
    Vector,
    basis_vector,
    field_from_json,
    field_to_json,
)
from .zerosets import Instance, Sample


def integer_spiral() -> Iterator[int]:
    yield 0
    for n in count(1):
        yield n
        yield -n


def integer_shells(dims: int) -> Iterator[tuple]:
    """Z^dims by max-norm shells, lexicographic inside each shell."""
    yield (0,) * dims
    for radius in count(1):
        for point in product(range(-radius, radius + 1), repeat=dims):
            if max(abs(c) for c in point) == radius:
                yield point


# ---------------------------------------------------------------------------
# Polynomial expression compiler
# ---------------------------------------------------------------------------

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Pow)


def _validate_poly_ast(node: ast.AST, variables: Sequence[str]) -> None:
    if isinstance(node, ast.Expression):
        _validate_poly_ast(node.body, variables)
    elif isinstance(node, ast.BinOp):
        if not isinstance(node.op, _ALLOWED_BINOPS):
            raise InvalidInputError("only +, -, * and integer powers are allowed")
        if isinstance(node.op, ast.Pow):
            if not (
                isinstance(node.right, ast.Constant)
                and isinstance(node.right.value, int)
                and node.right.value >= 0
            ):
                raise InvalidInputError("exponents must be literal nonnegative integers")
            _validate_poly_ast(node.left, variables)
        else:
            _validate_poly_ast(node.left, variables)
            _validate_poly_ast(node.right, variables)
    elif isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, (ast.UAdd, ast.USub)):
            raise InvalidInputError("only unary + and - are allowed")
        _validate_poly_ast(node.operand, variables)
    elif isinstance(node, ast.Constant):
        if not isinstance(node.value, int) or isinstance(node.value, bool):
            raise InvalidInputError(f"non-integer literal {node.value!r}")
    elif isinstance(node, ast.Name):
        if node.id not in variables:
            raise InvalidInputError(f"unknown variable {node.id!r}")
    else:
        raise InvalidInputError(f"disallowed syntax: {type(node).__name__}")


def compile_polynomial(text: str, variables: Sequence[str]):
    """Compile one polynomial expression into an exact evaluator.

    Returns a callable taking a dict of variable -> field element.
    """
    source = text.replace("^", "**")
    try:
        parsed = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise InvalidInputError(f"cannot parse polynomial {text!r}: {exc}") from None
    _validate_poly_ast(parsed, variables)
    code = compile(parsed, f"<poly {text!r}>", "eval")

    def evaluate(env: dict):
        return eval(code, {"__builtins__": {}}, dict(env))  # noqa: S307 - AST whitelisted

    return evaluate


def polynomial_instance(
    field: Field,
    d: int,
    polynomials: Sequence[str],
    variables: Sequence[str],
    *,
    name: str = "",
) -> Instance:
    if len(polynomials) != d:
        raise InvalidInputError(f"need exactly d={d} polynomials, got {len(polynomials)}")
    if not variables or len(set(variables)) != len(variables):
        raise InvalidInputError("variables must be a nonempty list of distinct names")
    evaluators = [compile_polynomial(p, variables) for p in polynomials]
    dims = len(variables)

    def evaluate(point):
        coords = point if isinstance(point, tuple) else (point,)
        if len(coords) != dims:
            raise InvalidInputError(f"point {point!r} has wrong arity, expected {dims}")
        env = {v: field.from_int(c) for v, c in zip(variables, coords)}
        return Vector(field, tuple(field.coerce(e(env)) for e in evaluators))

    def stream():
        if isinstance(field, PrimeField):
            pts = product(range(field.p), repeat=dims)
        elif dims == 1:
            pts = integer_spiral()
        else:
            pts = integer_shells(dims)
        for p in pts:
            yield p if dims > 1 else (p[0] if isinstance(p, tuple) else p)

    resolved_name = name or f"poly[{', '.join(polynomials)}]"
    spec = {
        "name": resolved_name,
        "field": field_to_json(field),
        "d": d,
        "family": {"polynomials": list(polynomials), "variables": list(variables)},
    }
    return Instance(
        name=resolved_name,
        field=field,
        d=d,
        evaluate=evaluate,
        stream=stream,
        spec=spec,
    )


# ---------------------------------------------------------------------------
# Built-in instances
# ---------------------------------------------------------------------------


def moment_curve(d: int, field: Field = QQ) -> Instance:
    """Powers 1, x, ..., x^(d-1): the canonical independent instance."""
    if d < 1:
        raise InvalidInputError("moment curve needs d >= 1")

    def evaluate(x):
        e = field.from_int(x) if isinstance(x, int) else field.coerce(x)
        entries = [field.one]
        for _ in range(d - 1):
            entries.append(entries[-1] * e)
        return Vector(field, tuple(entries))

    def stream():
        if isinstance(field, PrimeField):
            return iter(range(field.p))
        return integer_spiral()

    suffix = f"_f{field.p}" if isinstance(field, PrimeField) else ""
    return Instance(
        name=f"moment_curve_d{d}{suffix}",
        field=field,
        d=d,
        evaluate=evaluate,
        stream=stream,
        spec={"field": field_to_json(field), "d": d, "family": {"builtin": "moment_curve"}},
    )


def conics() -> Instance:
    """All degree-<=2 monomials in two variables over Q (d = 6)."""
    return polynomial_instance(
        QQ, 6, ["x^2", "x*y", "y^2", "x", "y", "1"], ["x", "y"], name="conics"
    )


def ellipse_carrier() -> Instance:
    """Axis-aligned conic carrier: no cross term (d = 5)."""
    return polynomial_instance(
        QQ, 5, ["x^2", "y^2", "x", "y", "1"], ["x", "y"], name="ellipse_carrier"
    )


def high_vcden(d: int, field: Field = QQ) -> Instance:
    """Identity embedding of a union of coordinate planes in F^d.

    Domain points are (i, s, t) meaning s*e_0 + t*e_(i+1), so the image
    is the union of the d-1 planes span{e_0, e_(i+1)}.  Rich traces on
    grid samples, yet the image is covered by finitely many proper
    subspaces, so this is the canonical non-maximal instance.
    """
    if d < 2:
        raise InvalidInputError("plane-union instance needs d >= 2")

    def evaluate(point):
        i, s, t = point
        if not 0 <= i < d - 1:
            raise InvalidInputError(f"plane index {i} out of range")
        return basis_vector(field, d, 0).scale(field.from_int(s)) + basis_vector(
            field, d, i + 1
        ).scale(field.from_int(t))

    def stream():
        if isinstance(field, PrimeField):
            pairs: Iterator = product(range(field.p), repeat=2)
        else:
            pairs = integer_shells(2)
        for s, t in pairs:
            if t == 0:
                yield (0, s, t)  # the shared e_0 axis; one copy is enough
            else:
                for i in range(d - 1):
                    yield (i, s, t)

    def profile_points(n: int) -> list:
        pts = []
        for k in range(n):
            for i in range(d - 1):
                pts.append((i, 1, k + 1))
        pts.append((0, 1, n + 1))
        return pts

    cover = tuple(
        (basis_vector(field, d, 0), basis_vector(field, d, i + 1)) for i in range(d - 1)
    )
    suffix = f"_f{field.p}" if isinstance(field, PrimeField) else ""
    return Instance(
        name=f"high_vcden_d{d}{suffix}",
        field=field,
        d=d,
        evaluate=evaluate,
        stream=stream,
        cover_subspaces=cover,
        profile_points=profile_points,
        spec={"field": field_to_json(field), "d": d, "family": {"builtin": "high_vcden"}},
    )


def two_lines() -> Instance:
    """Q-instance whose image alternates between the two axis lines."""
    field = QQ

    def evaluate(x):
        if x % 2 == 0:
            return Vector.make(field, (x, 0))
        return Vector.make(field, (0, x))

    cover = ((basis_vector(field, 2, 0),), (basis_vector(field, 2, 1),))
    return Instance(
        name="two_lines",
        field=field,
        d=2,
        evaluate=evaluate,
        stream=integer_spiral,
        cover_subspaces=cover,
        spec={"field": "rational", "d": 2, "family": {"builtin": "two_lines"}},
    )


_BUILTIN_DOC = {
    "moment_curve": "powers 1..x^(d-1); params d (default 3), p (optional prime)",
    "conics": "degree-<=2 monomials in x,y over Q (d=6)",
    "ellipse_carrier": "x^2,y^2,x,y,1 over Q (d=5)",
    "high_vcden": "union of coordinate planes, identity map; params d (default 3), p",
    "two_lines": "image alternating between the two axis lines over Q (d=2)",
}


def builtin_names() -> list:
    return sorted(_BUILTIN_DOC)


def builtin_help() -> dict:
    return dict(_BUILTIN_DOC)


def make_builtin(name: str, *, d: int | None = None, p: int | None = None) -> Instance:
    field: Field = PrimeField(p) if p is not None else QQ
    if name == "moment_curve":
        return moment_curve(d if d is not None else 3, field)
    if name == "high_vcden":
        return high_vcden(d if d is not None else 3, field)
    if name in ("conics", "ellipse_carrier", "two_lines"):
        if p is not None:
            raise InvalidInputError(f"builtin {name} is defined over Q only")
        made = {"conics": conics, "ellipse_carrier": ellipse_carrier, "two_lines": two_lines}[
            name
        ]()
        if d is not None and d != made.d:
            raise InvalidInputError(f"builtin {name} has fixed d={made.d}")
        return made
    raise InvalidInputError(f"unknown builtin {name!r}; known: {', '.join(builtin_names())}")


def parse_instance_name(text: str) -> Instance:
    """Parse CLI shorthand like "moment_curve:4" or "moment_curve:2,p=3"."""
    name, _, params = text.partition(":")
    d = None
    p = None
    if params:
        for part in params.split(","):
            part = part.strip()
            if part.startswith("p="):
                p = int(part[2:])
            elif part.startswith("d="):
                d = int(part[2:])
            elif part.isdigit():
                d = int(part)
            else:
                raise InvalidInputError(f"bad instance parameter {part!r}")
    return make_builtin(name, d=d, p=p)


# ---------------------------------------------------------------------------
# Instance spec JSON
# ---------------------------------------------------------------------------


def instance_to_spec(instance: Instance) -> dict:
    """Spec dict that rebuilds the instance (used in witness bundles)."""
    if instance.spec is None:
        raise InvalidInputError(f"instance {instance.name} carries no JSON spec")
    return instance.spec


def instance_from_spec(spec: dict) -> Instance:
    """Build an instance from the JSON spec format.

    {"field": "rational" | {"prime": p},
     "d": int,
     "family": {"builtin": name} | {"polynomials": [...], "variables": [...]},
     "sample": {"prefix": k} | {"points": [...]}}      (sample is optional)
    """
    if not isinstance(spec, dict):
        raise InvalidInputError("instance spec must be a JSON object")
    for key in ("field", "d", "family"):
        if key not in spec:
            raise InvalidInputError(f"instance spec missing {key!r}")
    field = field_from_json(spec["field"])
    d = spec["d"]
    if not isinstance(d, int) or d < 1:
        raise InvalidInputError(f"bad dimension d={d!r}")
    fam = spec["family"]
    if not isinstance(fam, dict):
        raise InvalidInputError("'family' must be an object")
    if "builtin" in fam:
        p = field.p if isinstance(field, PrimeField) else None
        return make_builtin(fam["builtin"], d=d, p=p)
    if "polynomials" in fam:
        return polynomial_instance(
            field,
            d,
            fam["polynomials"],
            fam.get("variables", ["x"]),
            name=spec.get("name", ""),
        )
    raise InvalidInputError("'family' needs 'builtin' or 'polynomials'")


def sample_from_spec(instance: Instance, spec: dict, *, default_prefix: int) -> Sample:
    """Resolve the optional "sample" part of an instance spec."""
    part = spec.get("sample") if isinstance(spec, dict) else None
    if part is None:
        return Sample.prefix(instance, default_prefix)
    if "prefix" in part:
        return Sample.prefix(instance, part["prefix"])
    if "points" in part:
        points = [tuple(p) if isinstance(p, list) else p for p in part["points"]]
        return Sample.take(instance, points)
    raise InvalidInputError("'sample' needs 'prefix' or 'points'")
