"""Command-line interface.

Exit codes: 0 success, 1 domain error (not a prime spot, not a member,
irrational input, ...), 2 input/output or parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from . import serialize
from .cyclic import is_cyclic, is_prime_spot, module_to_lattice
from .errors import LatticeError
from .idealmat import ideal_det, ideal_matrix, rotation_matrix
from .lattice import LatticeBasis
from .polyring import Poly, QuotientContext, as_rational, inverse_mod_phi, rational_str
from .smoothing import GaussParams, discrete_gauss_sample, smoothing_report

# lets "--f -2,1,0,0" through: argparse only treats plain "-3" or "-.5" as values
_NEGATIVE_VALUE = re.compile(r"^-\d[\d/.,\-]*$")
_TERM = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*?\s*)?(x(?:\s*\^\s*(\d+))?)?")


class InputError(ValueError):
    """Malformed command-line input or file (exit code 2)."""


def parse_poly(text: str) -> Poly:
    """Parse ``c``, ``x^k`` and ``c*x^k`` terms joined by + and -."""
    if re.search(r"[\dx^]\s+[\dx^]", text):
        raise InputError(f"cannot parse polynomial {text!r}: operator missing between terms")
    s = re.sub(r"\s+", "", text)
    if not s:
        raise InputError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise InputError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        if pos > 0 and not m.group(1):
            raise InputError(f"missing + or - before {s[pos:]!r} in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        k = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
        pos = m.end()
    deg = max(coeffs)
    return Poly([coeffs.get(k, 0) for k in range(deg + 1)])


def parse_phi(text) -> QuotientContext:
    """Build the quotient context; accepts a polynomial string or a JSON coefficient list."""
    phi = Poly([as_rational(v) for v in text]) if isinstance(text, list) else parse_poly(text)
    if phi.degree < 1 or phi.lead != 1 or not phi.is_integral():
        raise InputError(f"phi must be a monic integer polynomial of degree >= 1, got {phi}")
    return QuotientContext(phi)


def parse_vector(text: str) -> list:
    try:
        return [as_rational(v) for v in text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad vector {text!r}: {exc}") from None


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def load_basis(path: str) -> LatticeBasis:
    obj = _read_json(path)
    if not isinstance(obj, dict) or "basis" not in obj:
        raise InputError(f"{path}: expected an object with a 'basis' list of columns")
    try:
        return LatticeBasis.from_json(obj)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_generators(path: str):
    obj = _read_json(path)
    if not isinstance(obj, dict) or "phi" not in obj or "generators" not in obj:
        raise InputError(f"{path}: expected an object with 'phi' and 'generators'")
    ctx = parse_phi(obj["phi"])
    try:
        return ctx, [ctx.element([as_rational(v) for v in g]) for g in obj["generators"]]
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _element(ctx: QuotientContext, text: str, what: str):
    vec = parse_vector(text)
    if len(vec) != ctx.n:
        raise InputError(f"--{what} has {len(vec)} entries, phi has degree {ctx.n}")
    return ctx.element(vec)


def _matrix_strings(rows):
    return [[rational_str(v) if not isinstance(v, int) else str(v) for v in r] for r in rows]


def _tsv(obj, prefix="") -> list[str]:
    lines = []
    for key, value in obj.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            lines.extend(_tsv(value, name + "."))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            for i, row in enumerate(value):
                lines.append("\t".join([f"{name}[{i}]", *map(str, row)]))
        elif isinstance(value, list):
            lines.append("\t".join([name, *map(str, value)]))
        else:
            lines.append(f"{name}\t{value}")
    return lines


def _emit(obj: dict, args) -> None:
    text = serialize.dumps(obj) if args.format == "json" else "\n".join(_tsv(obj))
    if args.out:
        try:
            Path(args.out).write_text(text + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc.strerror}") from None
    else:
        print(text)


def cmd_ideal_matrix(args):
    ctx = parse_phi(args.phi)
    f = _element(ctx, args.f, "f")
    exact, spectral = ideal_det(f)
    out = {
        "phi": ctx.phi.to_strings(),
        "rotation": _matrix_strings(rotation_matrix(ctx)),
        "f": [rational_str(v) for v in f.vector],
        "ideal_matrix": _matrix_strings(ideal_matrix(f).entries),
        "det": rational_str(exact),
        "det_spectral": spectral,
    }
    if exact != 0:
        out["inverse_generator"] = [rational_str(v) for v in inverse_mod_phi(f).vector]
    _emit(out, args)


def cmd_prime_spot(args):
    ctx = parse_phi(args.phi)
    cert = is_prime_spot(_element(ctx, args.g, "g"))
    _emit(cert.to_json(), args)


def cmd_cyclic_check(args):
    ctx = parse_phi(args.phi)
    basis = load_basis(args.basis)
    _emit({"phi": ctx.phi.to_strings(), "cyclic": is_cyclic(basis, ctx)}, args)


def cmd_module_lattice(args):
    if args.generators:
        ctx, gens = load_generators(args.generators)
    elif args.phi and args.gen:
        ctx = parse_phi(args.phi)
        gens = [_element(ctx, g, "gen") for g in args.gen]
    else:
        raise InputError("give --generators FILE, or --phi with one or more --gen")
    L = module_to_lattice(gens)
    out = L.basis.to_json()
    out["cyclic"] = is_cyclic(L.basis, ctx)
    out["ideal_lattice"] = L.is_ideal_lattice
    _emit(out, args)


def cmd_eta(args):
    basis = load_basis(args.basis)
    g = None
    if args.g:
        if not args.phi:
            raise InputError("--g needs --phi")
        g = _element(parse_phi(args.phi), args.g, "g")
    report = smoothing_report(basis, g, args.epsilon)
    _emit(report.to_json(), args)


def cmd_sample(args):
    basis = load_basis(args.basis)
    center = parse_vector(args.center) if args.center else None
    params = GaussParams(args.s, center)
    pts = discrete_gauss_sample(basis, params, args.seed, args.count)
    _emit({"s": args.s, "seed": args.seed, "count": args.count,
           "samples": [[rational_str(v) for v in p] for p in pts]}, args)


def cmd_verify(args):
    from . import verify

    t0 = time.perf_counter()
    results = verify.run(quick=not args.full)
    failed = 0
    for name, ok, detail in results:
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
    print(f"{len(results) - failed}/{len(results)} checks passed in {time.perf_counter() - t0:.1f}s")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "tsv"], default="json")
    common.add_argument("--out", help="write the artifact here instead of stdout")

    p = argparse.ArgumentParser(prog="philattice", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("ideal-matrix", parents=[common], help="H and H*(f) for a vector f")
    s.add_argument("--phi", required=True)
    s.add_argument("--f", required=True, help="comma-separated coefficients, lowest first")
    s.set_defaults(func=cmd_ideal_matrix)

    s = sub.add_parser("prime-spot", parents=[common], help="prime-spot certificate (u, T_g)")
    s.add_argument("--phi", required=True)
    s.add_argument("--g", required=True)
    s.set_defaults(func=cmd_prime_spot)

    s = sub.add_parser("cyclic-check", parents=[common], help="is the lattice closed under H?")
    s.add_argument("--phi", required=True)
    s.add_argument("--basis", required=True)
    s.set_defaults(func=cmd_cyclic_check)

    s = sub.add_parser("module-lattice", parents=[common], help="lattice of a finitely generated module")
    s.add_argument("--generators")
    s.add_argument("--phi")
    s.add_argument("--gen", action="append")
    s.set_defaults(func=cmd_module_lattice)

    s = sub.add_parser("eta", parents=[common], help="smoothing parameter and its bounds")
    s.add_argument("--basis", required=True)
    s.add_argument("--phi")
    s.add_argument("--g")
    s.add_argument("--epsilon", type=float)
    s.set_defaults(func=cmd_eta)

    s = sub.add_parser("sample", parents=[common], help="discrete Gaussian samples")
    s.add_argument("--basis", required=True)
    s.add_argument("--s", type=float, required=True)
    s.add_argument("--center")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--count", type=int, default=10)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("verify", help="replay worked examples and property suites")
    s.add_argument("--full", action="store_true", help="larger random suites")
    s.set_defaults(func=cmd_verify)
    for parser in (p, *sub.choices.values()):
        parser._negative_number_matcher = _NEGATIVE_VALUE
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except InputError as exc:
        print(f"error: {args.verb}: {exc}", file=sys.stderr)
        return 2
    except LatticeError as exc:
        print(f"error: {args.verb}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {args.verb}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
