"""Command line front end: read an instance file, analyze it, print a report.

Exit status: 0 analyzed (whatever the verdicts), 2 invalid fan or action,
3 unreadable input file, 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import types
import typing
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .action import validate_action
from .character import (
    character_data,
    check_q_formulas,
    cross_check_quotient,
    decompose,
    decompose_graded,
    induced_character,
    prime_power_check,
)
from .errors import (
    DimensionMismatch,
    FancharError,
    IndexOutOfRange,
    InternalInconsistency,
    OrderExceedsCap,
    ParseError,
    ValidationError,
)
from .exactalg import DEFAULT_ORDER_CAP, IntMatrix, divisors, prime_power_base
from .fan import BASIC, GEOMETRIC, Fan, f_vector, facet_count, normalize_rays, validate_fan

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PARSE = 3
EXIT_INTERNAL = 4


@dataclass(frozen=True)
class InstanceFile:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[tuple[int, ...], ...]
    generator: tuple[tuple[int, ...], ...]
    name: str = ""


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _int_list(value, where):
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list, got {type(value).__name__}")
    return tuple(_int(x, f"{where}[{i}]") for i, x in enumerate(value))


def parse_instance(data, source="<input>") -> InstanceFile:
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be a JSON object")
    for key in ("dim", "rays", "maximal_cones", "generator"):
        if key not in data:
            raise ParseError(f"{source}: missing field '{key}'")
    dim = _int(data["dim"], "dim")
    if dim < 0:
        raise ParseError("dim: must be non-negative")
    for key in ("rays", "maximal_cones", "generator"):
        if not isinstance(data[key], list):
            raise ParseError(f"{key}: expected a list")
    rays = tuple(_int_list(r, f"rays[{i}]") for i, r in enumerate(data["rays"]))
    cones = tuple(_int_list(c, f"maximal_cones[{i}]") for i, c in enumerate(data["maximal_cones"]))
    gen = tuple(_int_list(r, f"generator[{i}]") for i, r in enumerate(data["generator"]))
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name: expected a string")

    for i, r in enumerate(rays):
        if len(r) != dim:
            raise DimensionMismatch(f"rays[{i}] has {len(r)} coordinates, dim is {dim}")
    for k, c in enumerate(cones):
        for i in c:
            if not 0 <= i < len(rays):
                raise IndexOutOfRange(f"maximal_cones[{k}] refers to ray {i}, but there are {len(rays)} rays")
    if len(gen) != dim or any(len(r) != dim for r in gen):
        shape = f"{len(gen)}x{len(gen[0]) if gen else 0}"
        raise DimensionMismatch(f"generator is {shape}, expected {dim}x{dim}")
    return InstanceFile(dim, rays, cones, gen, name)


def parse_input(path) -> InstanceFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_instance(data, str(path))


# ---------------------------------------------------------------------------
# report model

@dataclass(frozen=True)
class DivisorRow:
    j: int
    element_order: int
    delta: int
    facet_count: int
    fixed_facets: tuple[tuple[int, ...], ...]
    f_vector: tuple[int, ...]
    h_vector: tuple[int, ...]
    q_coefficients: tuple[int, ...]
    cyclotomic_exponents: dict[int, int]
    graded: tuple[int, ...]
    ungraded: int


@dataclass(frozen=True)
class DecompositionRow:
    l: int
    subgroup: str
    f_value: int
    multiplicity: Fraction


@dataclass(frozen=True)
class DegreeRow:
    degree: int
    values: dict[int, int]
    multiplicities: dict[int, Fraction]
    verdict: str


@dataclass(frozen=True)
class CheckRow:
    l: int
    j: int
    name: str
    passed: bool


@dataclass(frozen=True)
class Report:
    name: str
    dim: int
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[tuple[int, ...], ...]
    generator: tuple[tuple[int, ...], ...]
    validation_level: str
    validation_warnings: tuple[str, ...]
    order: int
    ray_perm: tuple[int, ...]
    divisors: tuple[DivisorRow, ...]
    decomposition: tuple[DecompositionRow, ...]
    ungraded_verdict: str
    graded: tuple[DegreeRow, ...] | None = None
    graded_verdict: str | None = None
    prime_power: str | None = None
    cross_checks: tuple[CheckRow, ...] | None = None
    cross_check_passed: bool | None = None


def subgroup_label(l: int, n: int) -> str:
    if l == 1:
        return "G"
    if l == n:
        return "<1>"
    return f"<c^{l}>"


@dataclass
class AnalyzeOptions:
    graded: bool = False
    cross_check: bool = False
    validation: str = BASIC
    max_order: int = DEFAULT_ORDER_CAP
    normalize_rays: bool = False


def run_analyze(instance: InstanceFile, options: AnalyzeOptions | None = None) -> Report:
    options = options or AnalyzeOptions()
    fan = Fan(instance.dim, instance.rays, instance.maximal_cones)
    if options.normalize_rays:
        fan = normalize_rays(fan)
    validation = validate_fan(fan, options.validation)
    gen = IntMatrix(instance.generator, ncols=instance.dim)
    action = validate_action(fan, gen, options.max_order)
    n = action.order

    data = character_data(fan, action)
    rows = []
    for j, e in data.items():
        rows.append(
            DivisorRow(
                j=j,
                element_order=n // j,
                delta=e.fixed.delta,
                facet_count=facet_count(e.fixed.complex),
                fixed_facets=e.fixed.complex.facets,
                f_vector=f_vector(e.fixed.complex).counts,
                h_vector=e.h_poly.coefficients,
                q_coefficients=e.q_poly.coefficients,
                cyclotomic_exponents=dict(e.cyclo.exponents),
                graded=e.graded.padded(fan.dim + 1),
                ungraded=e.ungraded,
            )
        )
    ungraded = {j: e.ungraded for j, e in data.items()}
    dec = decompose(ungraded, n)
    dec_rows = tuple(
        DecompositionRow(l, subgroup_label(l, n), dec.f_values[l], dec.multiplicities[l]) for l in divisors(n)
    )
    report = dict(
        name=instance.name,
        dim=fan.dim,
        rays=fan.rays,
        maximal_cones=fan.maximal_cones,
        generator=gen.rows,
        validation_level=validation.level_achieved,
        validation_warnings=tuple(validation.warnings),
        order=n,
        ray_perm=action.ray_perm,
        divisors=tuple(rows),
        decomposition=dec_rows,
        ungraded_verdict=str(dec.verdict),
    )
    if options.graded:
        gd = decompose_graded(fan, action, {j: e.graded for j, e in data.items()})
        report["graded"] = tuple(
            DegreeRow(i, dict(ch), dict(d.multiplicities), str(d.verdict))
            for i, (ch, d) in enumerate(zip(gd.characters, gd.degrees))
        )
        fail = gd.first_failure()
        report["graded_verdict"] = "Permutation" if fail is None else f"NotPermutation(degree={fail[0]}, {fail[1]})"
        if n == 1 or prime_power_base(n):
            pp = prime_power_check(fan, action)
            state = "pass" if pp.passed else "fail"
            report["prime_power"] = f"{state} (differences_ok={pp.differences_ok}, graded_ok={pp.graded_ok})"
        else:
            report["prime_power"] = f"not applicable: order {n} is not a prime power"
    if options.cross_check:
        checks = list(check_q_formulas(fan, action, data).results)
        for l in divisors(n):
            checks += cross_check_quotient(fan, action, l, data).results
        report["cross_checks"] = tuple(CheckRow(c.l, c.j, c.name, c.passed) for c in checks)
        report["cross_check_passed"] = all(c.passed for c in checks)
    return Report(**report)


# ---------------------------------------------------------------------------
# serialization

def verify_report(report: Report) -> None:
    """Re-check the reconstruction identities the report claims."""
    n = report.order
    ungraded = {row.j: row.ungraded for row in report.divisors}
    mult = {row.l: row.multiplicity for row in report.decomposition}
    if set(mult) != set(divisors(n)) or set(ungraded) != set(divisors(n)):
        raise InternalInconsistency("report does not cover every divisor of the order")
    _check_reconstruction(ungraded, mult, n, "ungraded character")
    if report.graded is not None:
        for row in report.graded:
            _check_reconstruction(row.values, row.multiplicities, n, f"degree {row.degree}")
            graded_at = {r.j: r.graded[row.degree] for r in report.divisors}
            if graded_at != dict(row.values):
                raise InternalInconsistency(f"degree {row.degree} values disagree with the graded characters")


def _check_reconstruction(values, mult, n, what):
    total = {j: Fraction(0) for j in divisors(n)}
    for l, m in mult.items():
        for j, v in induced_character(l, n).items():
            total[j] += m * v
    if any(total[j] != values[j] for j in divisors(n)):
        raise InternalInconsistency(f"multiplicities do not reproduce the {what}")


def _encode(obj):
    if dataclasses.is_dataclass(obj):
        return {f.name: _encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_encode(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _encode(v) for k, v in obj.items()}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _decode(tp, data):
    origin = typing.get_origin(tp)
    if origin in (typing.Union, types.UnionType):
        args = [a for a in typing.get_args(tp) if a is not type(None)]
        return None if data is None else _decode(args[0], data)
    if dataclasses.is_dataclass(tp):
        hints = typing.get_type_hints(tp)
        return tp(**{f.name: _decode(hints[f.name], data[f.name]) for f in dataclasses.fields(tp)})
    if origin is tuple:
        args = typing.get_args(tp)
        return tuple(_decode(args[0], x) for x in data)
    if origin is dict:
        kt, vt = typing.get_args(tp)
        return {_decode(kt, k): _decode(vt, v) for k, v in data.items()}
    if tp is bool:
        return bool(data)
    if tp is int:
        return int(data)
    if tp is Fraction:
        return Fraction(data)
    if tp is str:
        return data
    raise TypeError(f"cannot decode {tp}")


def emit_report(report: Report, fmt: str = "text") -> bytes:
    verify_report(report)
    if fmt == "json":
        return (json.dumps(_encode(report), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "text":
        return render_text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")


def load_report(blob) -> Report:
    if isinstance(blob, bytes):
        blob = blob.decode()
    return _decode(Report, json.loads(blob))


def _poly(coeffs):
    return " ".join(str(c) for c in coeffs) or "0"


def decomposition_line(report: Report) -> str:
    parts = [f"{r.subgroup}:{r.multiplicity}" for r in report.decomposition if r.multiplicity != 0]
    return ", ".join(parts) if parts else "0"


def render_text(report: Report) -> str:
    n = report.order
    out = []
    out.append(f"instance: {report.name or '(unnamed)'}")
    out.append(f"dimension: {report.dim}    rays: {len(report.rays)}    maximal cones: {len(report.maximal_cones)}")
    out.append(f"validation: {report.validation_level}")
    for w in report.validation_warnings:
        out.append(f"  warning: {w}")
    out.append(f"group order n = {n}")
    out.append("rays:")
    for i, (r, k) in enumerate(zip(report.rays, report.ray_perm)):
        out.append(f"  {i:>3}  {list(r)}  -> {k}")
    out.append("")
    out.append("per divisor j (element c^j):")
    header = f"  {'j':>4} {'ord':>4} {'delta':>5} {'facets':>6}  {'f-vector':<18} {'h-vector':<18} {'Q':<18} {'cyclotomic':<14} {'graded':<22} ungraded"
    out.append(header)
    for r in report.divisors:
        cyc = " ".join(f"{k}^{a}" for k, a in r.cyclotomic_exponents.items()) or "-"
        out.append(
            f"  {r.j:>4} {r.element_order:>4} {r.delta:>5} {r.facet_count:>6}  "
            f"{_poly(r.f_vector):<18} {_poly(r.h_vector):<18} {_poly(r.q_coefficients):<18} "
            f"{cyc:<14} {_poly(r.graded):<22} {r.ungraded}"
        )
    out.append("")
    out.append("decomposition of the ungraded character:")
    out.append(f"  {'l':>4} {'subgroup':<10} {'F':>8} {'multiplicity':>12}")
    for r in report.decomposition:
        out.append(f"  {r.l:>4} {r.subgroup:<10} {r.f_value:>8} {str(r.multiplicity):>12}")
    out.append(f"  chi_u = {decomposition_line(report)}")
    out.append(f"ungraded verdict: {report.ungraded_verdict}")
    if report.graded is not None:
        out.append("")
        out.append("graded decomposition:")
        for row in report.graded:
            values = " ".join(str(row.values[j]) for j in divisors(n))
            mult = ", ".join(
                f"{subgroup_label(l, n)}:{m}" for l, m in row.multiplicities.items() if m != 0
            ) or "0"
            out.append(f"  degree {row.degree}: values [{values}]  ->  {mult}   {row.verdict}")
        out.append(f"graded verdict: {report.graded_verdict}")
        out.append(f"prime-power check: {report.prime_power}")
    if report.cross_checks is not None:
        out.append("")
        failed = [c for c in report.cross_checks if not c.passed]
        out.append(f"cross checks: {len(report.cross_checks) - len(failed)}/{len(report.cross_checks)} passed")
        for c in failed:
            out.append(f"  FAILED {c.name} at l={c.l}, j={c.j}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fanchar",
        description="Character of a cyclic group acting on a complete simplicial fan, "
        "decomposed into transitive permutation characters.",
    )
    p.add_argument("--input", required=True, metavar="PATH", help="JSON instance file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--graded", action="store_true", help="decompose every graded component")
    p.add_argument("--cross-check", action="store_true", help="verify quotient and Q-formula identities")
    p.add_argument("--validation", choices=(BASIC, GEOMETRIC), default=BASIC)
    p.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP, metavar="N")
    p.add_argument("--normalize-rays", action="store_true", help="divide rays by their gcd instead of rejecting")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    options = AnalyzeOptions(
        graded=args.graded,
        cross_check=args.cross_check,
        validation=args.validation,
        max_order=args.max_order,
        normalize_rays=args.normalize_rays,
    )
    try:
        instance = parse_input(args.input)
    except ParseError as exc:
        print(f"fanchar: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        report = run_analyze(instance, options)
        blob = emit_report(report, args.format)
    except (ValidationError, OrderExceedsCap) as exc:
        print(f"fanchar: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FancharError as exc:
        print(f"fanchar: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.buffer.write(blob)
    sys.stdout.flush()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
