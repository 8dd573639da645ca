"""Equation-spec JSON documents and the built-in distributed-kernel catalog.

Schema (version 1).  Discrete delays:

    {"schema": 1, "kind": "discrete_delay", "label": "...",
     "terms": [{"coef_expr": "1/(10*(t+6))", "delay": 6.0}, ...],
     "bound_expr": "0.1"}               # optional override

Distributed delays select a kernel from the named catalog:

    {"schema": 1, "kind": "distributed_delay", "label": "...",
     "kernel": "app2",                   # or "app3"
     "parameters": {"a1": 1.0, "a2": 1.0, "a3": 1.0},
     "bound_expr": "..."}                # optional; catalog supplies a default

Coefficient and bound expressions use the grammar of
:mod:`ddeosc.expressions`.  Parsing, serializing and re-parsing a spec is
the identity.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import SpecFormatError
from .expressions import parse_expression
from .operators import AmnesiaOperator, make_discrete_delay, make_distributed_delay

SCHEMA_VERSION = 1
KINDS = ("discrete_delay", "distributed_delay")


@dataclass(frozen=True)
class EquationSpec:
    kind: str
    label: str = ""
    terms: tuple[tuple[str, float], ...] = ()
    kernel: str = ""
    parameters: dict = field(default_factory=dict)
    bound_expr: Optional[str] = None
    tau_expr: Optional[str] = None

    def to_dict(self) -> dict:
        doc: dict = {"schema": SCHEMA_VERSION, "kind": self.kind, "label": self.label}
        if self.kind == "discrete_delay":
            doc["terms"] = [{"coef_expr": c, "delay": d} for c, d in self.terms]
        else:
            doc["kernel"] = self.kernel
            doc["parameters"] = dict(self.parameters)
        if self.bound_expr is not None:
            doc["bound_expr"] = self.bound_expr
        if self.tau_expr is not None:
            doc["tau_expr"] = self.tau_expr
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def parse_spec(doc: dict) -> EquationSpec:
    """Validate a parsed JSON document; error messages name the bad field."""
    if not isinstance(doc, dict):
        raise SpecFormatError("equation spec must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise SpecFormatError(f"field 'schema': expected {SCHEMA_VERSION}, got {doc.get('schema')!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SpecFormatError(f"field 'kind': expected one of {KINDS}, got {kind!r}")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SpecFormatError(f"field 'label': expected string, got {label!r}")

    bound_expr = doc.get("bound_expr")
    if bound_expr is not None:
        parse_expression(_expect_str(bound_expr, "bound_expr"))
    tau_expr = doc.get("tau_expr")
    if tau_expr is not None:
        parse_expression(_expect_str(tau_expr, "tau_expr"))

    if kind == "discrete_delay":
        raw_terms = doc.get("terms")
        if not isinstance(raw_terms, list) or not raw_terms:
            raise SpecFormatError("field 'terms': expected a nonempty list")
        terms = []
        for i, item in enumerate(raw_terms):
            if not isinstance(item, dict):
                raise SpecFormatError(f"field 'terms[{i}]': expected an object")
            coef = _expect_str(item.get("coef_expr"), f"terms[{i}].coef_expr")
            parse_expression(coef)
            delay = item.get("delay")
            if not isinstance(delay, (int, float)) or delay <= 0:
                raise SpecFormatError(f"field 'terms[{i}].delay': expected a positive number, got {delay!r}")
            terms.append((coef, float(delay)))
        return EquationSpec(kind=kind, label=label, terms=tuple(terms), bound_expr=bound_expr, tau_expr=tau_expr)

    kernel = doc.get("kernel")
    if kernel not in KERNEL_CATALOG:
        raise SpecFormatError(
            f"field 'kernel': expected one of {sorted(KERNEL_CATALOG)}, got {kernel!r}"
        )
    parameters = doc.get("parameters", {})
    if not isinstance(parameters, dict):
        raise SpecFormatError(f"field 'parameters': expected an object, got {parameters!r}")
    for key, value in parameters.items():
        if not isinstance(value, (int, float)):
            raise SpecFormatError(f"field 'parameters.{key}': expected a number, got {value!r}")
    KERNEL_CATALOG[kernel].validate(parameters)
    return EquationSpec(
        kind=kind,
        label=label,
        kernel=kernel,
        parameters=dict(parameters),
        bound_expr=bound_expr,
        tau_expr=tau_expr,
    )


def _expect_str(value, name: str) -> str:
    if not isinstance(value, str):
        raise SpecFormatError(f"field '{name}': expected string, got {value!r}")
    return value


def load_spec(path) -> EquationSpec:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"invalid JSON in {path}: {exc}") from exc
    return parse_spec(doc)


def save_spec(spec: EquationSpec, path) -> None:
    Path(path).write_text(spec.to_json() + "\n")


def build_operator(spec: EquationSpec) -> AmnesiaOperator:
    """Construct the response operator an :class:`EquationSpec` describes."""
    if spec.kind == "discrete_delay":
        terms = [(parse_expression(coef), delay) for coef, delay in spec.terms]
        bound = parse_expression(spec.bound_expr) if spec.bound_expr else None
        return make_discrete_delay(terms, bound_b=bound, label=spec.label or "discrete-delay operator")
    entry = KERNEL_CATALOG[spec.kernel]
    op = entry.build(spec.parameters, label=spec.label or entry.description)
    if spec.bound_expr:
        bound = parse_expression(spec.bound_expr)
        op = AmnesiaOperator(
            label=op.label,
            evaluate=op.evaluate,
            tau=op.tau,
            sigma=op.sigma,
            bound_b=bound,
            read_points=op.read_points,
            min_lag=op.min_lag,
        )
    return op


class KernelEntry:
    """A named distributed kernel: builder, parameter defaults, validation."""

    def __init__(self, name, description, defaults, builder, validator=None):
        self.name = name
        self.description = description
        self.defaults = dict(defaults)
        self._builder = builder
        self._validator = validator

    def merged(self, parameters: dict) -> dict:
        merged = dict(self.defaults)
        merged.update(parameters)
        return merged

    def validate(self, parameters: dict) -> None:
        unknown = set(parameters) - set(self.defaults)
        if unknown:
            raise SpecFormatError(
                f"field 'parameters': unknown parameter(s) {sorted(unknown)} for kernel {self.name!r}"
            )
        if self._validator is not None:
            self._validator(self.merged(parameters))

    def build(self, parameters: dict, label: str = "") -> AmnesiaOperator:
        self.validate(parameters)
        return self._builder(self.merged(parameters), label or self.description)


def _validate_app2(p: dict) -> None:
    if p["a2"] <= 0 or p["a3"] <= 0:
        raise SpecFormatError("field 'parameters': a2 and a3 must be positive")
    if p["a1"] == 0:
        raise SpecFormatError("field 'parameters': a1 must be nonzero")


def _build_app2(p: dict, label: str) -> AmnesiaOperator:
    a1, a2, a3 = float(p["a1"]), float(p["a2"]), float(p["a3"])

    def kernel(t: float, s: float, xs: list) -> float:
        v_sq, v_lin = xs
        return math.exp(max(a1 * s, v_sq * v_sq)) * v_lin

    b_value = math.exp(a1) * (math.exp(a1) - 1.0) / a1
    return make_distributed_delay(
        kernel,
        (1.0, 2.0),
        [lambda t, s: t - a2 * s, lambda t, s: t - a3 * s],
        bound_b=lambda t: b_value,
        label=label,
    )


def _validate_app3(p: dict) -> None:
    if p["a"] <= 0 or p["b"] <= 0 or p["m"] <= 0:
        raise SpecFormatError("field 'parameters': a, b and m must be positive")
    l = p["l"]
    if l != int(l) or l < 1:
        raise SpecFormatError("field 'parameters': l must be a positive integer")


def _build_app3(p: dict, label: str) -> AmnesiaOperator:
    a, b, m, l = float(p["a"]), float(p["b"]), float(p["m"]), int(p["l"])

    def kernel(t: float, s: float, xs: list) -> float:
        v_arg, v_lin = xs
        return (a * s ** m + b * s * s * math.sin(v_arg ** 3) ** l) * v_lin

    b_value = app3_derived_bound(a, b, m, l)
    return make_distributed_delay(
        kernel,
        (0.0, 1.0),
        [lambda t, s: t - s - 5.0, lambda t, s: t - s - 1.0],
        bound_b=lambda t: b_value,
        label=label,
    )


def app3_derived_bound(a: float, b: float, m: float, l: int) -> float:
    """Integral lower bound of the app3 kernel coefficient over s in [0, 1].

    The oscillating factor sin(...)^l is bounded below by 0 for even l and
    by -1 for odd l, so the coefficient a*s^m + b*s^2*sin(...)^l is bounded
    below by a*s^m (even) or a*s^m - b*s^2 (odd); integrating gives
    a/(m+1) and a/(m+1) - b/3 respectively.
    """
    low = a / (m + 1.0)
    return low - b / 3.0 if l % 2 else low


def app3_stated_bound(a: float, b: float, m: float, l: int) -> float:
    """The bound value this scenario is usually quoted with: a/m - b (odd l) or a/m.

    It does not match the kernel's integral (see :func:`app3_derived_bound`);
    it is kept so the discrepancy can be displayed and audited.
    """
    return a / m - b if l % 2 else a / m


KERNEL_CATALOG: dict[str, KernelEntry] = {
    "app2": KernelEntry(
        name="app2",
        description="exp(max(a1*s, x(t-a2*s)^2)) * x(t-a3*s) integrated over s in [1, 2]",
        defaults={"a1": 1.0, "a2": 1.0, "a3": 1.0},
        builder=_build_app2,
        validator=_validate_app2,
    ),
    "app3": KernelEntry(
        name="app3",
        description="(a*s^m + b*s^2*sin(x(t-s-5)^3)^l) * x(t-s-1) integrated over s in [0, 1]",
        defaults={"a": 3.0, "b": 0.1, "m": 1.0, "l": 2},
        builder=_build_app3,
        validator=_validate_app3,
    ),
}
