"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 domain error (e.g. an odd degree
or a point on an excluded locus).  With ``--json`` every command prints a
single JSON document, errors included.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bundles import classify_rank2, is_isomorphic, normalize_desc, stability
from .errors import DomainError, KleinError, UsageError
from .holonomy import (
    DEFAULT_STEPS,
    FlatConnection,
    PathSpec,
    holonomy_unit_loop,
    parallel_transport,
    realness_sign,
)
from .moduli import (
    ModuliKind,
    canonical_key,
    construct_stable_real,
    fixed_locus_delta,
    key_of_atom,
    moduli_descriptor,
    real_locus_in_coprime_moduli,
)
from .picard import FIXED_TOL, LineBundleClass, classify_fixed, sigma_conj, torsion_subgroup
from .plot import plot_rows, render_csv, render_svg
from .serialize import coord_to_json, desc_from_json, desc_to_json, line_to_json, moduli_to_json
from .torus import TorusPoint

EXIT_USAGE = 2
EXIT_DOMAIN = 3


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(message)


def _coord(text: str, exact: bool):
    """Parse a coordinate literal; decimals in exact mode are read as rationals."""
    if not exact:
        try:
            return float(Fraction(text))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse number {text!r}") from None
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse number {text!r}") from None
    if "." in text or "e" in text.lower():
        snapped = value.limit_denominator(10**6)
        print(f"warning: decimal literal {text} read as {snapped}", file=sys.stderr)
        return snapped
    return value


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def _load_desc(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"descriptor is not valid JSON: {exc}") from None
    return desc_from_json(doc)


def _sign_text(s: int) -> str:
    return "+1" if s > 0 else "-1"


def _cplx_json(z: complex) -> list:
    return [z.real, z.imag]


# -- commands ----------------------------------------------------------------


def cmd_line_classify(args):
    L = LineBundleClass(args.d, TorusPoint(_coord(args.a, args.exact), _coord(args.b, args.exact)))
    kind = classify_fixed(L, args.tol)
    sign = realness_sign(L, args.tau or 1.0, args.steps) if kind.fixed else None
    doc = {
        "line": line_to_json(L),
        "kind": kind.value,
        "obstruction": sign,
        "sigma_conj": line_to_json(sigma_conj(L)),
    }
    text = kind.value if sign is None else f"{kind.value}, obstruction {_sign_text(sign)}"
    return doc, text


def cmd_torsion(args):
    G = torsion_subgroup(args.r, args.real)
    elements = [[coord_to_json(p.a), coord_to_json(p.b)] for p in G]
    doc = {"order": G.order, "real_only": G.real_only, "size": len(G), "elements": elements}
    lines = [f"order {G.order}{' (real)' if G.real_only else ''}: {len(G)} elements"]
    lines += [f"{a} {b}" for a, b in elements]
    return doc, "\n".join(lines)


def cmd_holonomy(args):
    if args.tau is None:
        raise UsageError("holonomy needs --tau")
    C = FlatConnection(_complex(args.z0), args.tau)
    value = parallel_transport(C, PathSpec.unit_loop(args.steps), args.method)
    exact = holonomy_unit_loop(C)
    err = abs(value - exact)
    doc = {
        "z0": _cplx_json(C.z0),
        "tau": C.tau,
        "steps": args.steps,
        "method": args.method,
        "holonomy": _cplx_json(value),
        "closed_form": _cplx_json(exact),
        "abs_error": err,
        "within_tol": err <= args.tol,
    }
    text = (
        f"holonomy {value.real:.12f}{value.imag:+.12f}i "
        f"(closed form {exact.real:.12f}{exact.imag:+.12f}i, error {err:.3e})"
    )
    return doc, text


def _rank2_params_json(params):
    out = []
    for p in params:
        if isinstance(p, TorusPoint):
            out.append([coord_to_json(p.a), coord_to_json(p.b)])
        elif isinstance(p, LineBundleClass):
            out.append(line_to_json(p))
        else:
            out.append(coord_to_json(p))
    return out


def cmd_rank2_classify(args):
    D = _load_desc(args.desc)
    c = classify_rank2(D)
    doc = {
        "stratum": c.stratum.value,
        "params": _rank2_params_json(c.params),
        "twist": c.twist,
        "stability": stability(D).value,
        "untwisted": desc_to_json(c.untwisted),
    }
    text = f"{c.stratum.value} {json.dumps(doc['params'])} (twist O({c.twist}D))"
    return doc, text


def cmd_iso_test(args):
    D1, D2 = _load_desc(args.left), _load_desc(args.right)
    iso = is_isomorphic(D1, D2)
    doc = {
        "isomorphic": iso,
        "left": desc_to_json(normalize_desc(D1)),
        "right": desc_to_json(normalize_desc(D2)),
    }
    return doc, "isomorphic" if iso else "not isomorphic"


def _locus_json(locus):
    return {
        "side": str(locus.side),
        "circles": [{"b": str(c.b), "tag": c.tag.value} for c in locus.circles],
    }


def cmd_moduli_report(args):
    M = moduli_descriptor(args.r, args.d)
    real_locus = None
    if M.kind is ModuliKind.CIRCLE:
        real_locus = _locus_json(real_locus_in_coprime_moduli(args.r, args.d))
    doc = moduli_to_json(M, real_locus)
    text = f"M({args.r},{args.d}): {M.kind.value}, dimension {M.dimension}"
    if M.kind is ModuliKind.CIRCLE:
        text += f", circumference {M.parametrization['circumference']}"
    elif not M.empty:
        text += f", side {M.parametrization['side']}, involution {M.parametrization['involution']}"
    return doc, text


def cmd_construct(args):
    built = construct_stable_real(args.r, args.d, _coord(args.t, args.exact), args.tau or 1.0)
    key = key_of_atom(built.atom)
    rec = built.recipe
    doc = {
        "atom": {"kind": "real_stable", "rank": rec.r, "degree": rec.d, "key": coord_to_json(built.atom.key)},
        "key": coord_to_json(key.key),
        "recipe": {
            "sublattice": ["%s" % rec.r, "i*tau"],
            "covering_degree": rec.covering_degree,
            "intertwines": rec.intertwines,
            "source": line_to_json(rec.source),
            "source_sign": rec.source_sign,
        },
    }
    return doc, f"RealStable(rank={rec.r}, degree={rec.d}, key={key.key})"


def cmd_fixed_locus(args):
    locus = fixed_locus_delta(args.r)
    doc = _locus_json(locus)
    lines = [f"b = {c.b} mod {locus.side}: {c.tag.value}" for c in locus.circles]
    return doc, "\n".join(lines)


def cmd_key(args):
    p = TorusPoint(_coord(args.a, args.exact), _coord(args.b, args.exact))
    k = canonical_key(args.r, args.d, p)
    if isinstance(k.key, TorusPoint):
        key = [coord_to_json(k.key.a), coord_to_json(k.key.b)]
        orbit = [[coord_to_json(q.a), coord_to_json(q.b)] for q in k.orbit]
    else:
        key, orbit = coord_to_json(k.key), [coord_to_json(q) for q in k.orbit]
    return {"r": k.r, "d": k.d, "key": key, "orbit": orbit}, f"key {json.dumps(key)}"


def cmd_plot(args):
    if args.tau is None:
        raise UsageError("plot needs --tau")
    rows = plot_rows(args.r, args.d)
    svg = render_svg(args.r, args.d, rows, args.tau)
    csv_text = render_csv(rows)
    doc = {"r": args.r, "d": args.d, "rows": len(rows)}
    if args.out:
        svg_path = Path(args.out)
        csv_path = svg_path.with_suffix(".csv")
        svg_path.write_text(svg, encoding="utf-8")
        csv_path.write_text(csv_text, encoding="utf-8")
        doc |= {"svg": str(svg_path), "csv": str(csv_path)}
        return doc, f"wrote {svg_path} and {csv_path}"
    return doc, svg.rstrip("\n")


# -- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tau", type=float, default=None, help="lattice modulus tau > 0")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_true", default=True, help="exact rationals (default)")
    mode.add_argument("--float", dest="exact", action="store_false", help="float coordinates")
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="integrator steps")
    common.add_argument("--tol", type=float, default=FIXED_TOL, help="float tolerance")
    common.add_argument("--out", default=None, help="output path (plot)")

    parser = _Parser(prog="klein-bundles", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("line-classify", parents=[common], help="fixed/real trichotomy of a line bundle class")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", default="0")
    p.add_argument("--b", default="0")
    p.set_defaults(func=cmd_line_classify)

    p = sub.add_parser("torsion", parents=[common], help="r-torsion of Pic^0")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--real", action="store_true", help="only the real r-torsion")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("holonomy", parents=[common], help="holonomy of the flat connection around t -> t")
    p.add_argument("--z0", required=True, help="complex parameter, e.g. 0.3+1i")
    p.add_argument("--method", choices=("expmid", "rk2"), default="expmid")
    p.set_defaults(func=cmd_holonomy)

    p = sub.add_parser("rank2-classify", parents=[common], help="stratum of a real rank-2 descriptor")
    p.add_argument("--desc", required=True, help="BundleDesc JSON, or @file")
    p.set_defaults(func=cmd_rank2_classify)

    p = sub.add_parser("iso-test", parents=[common], help="isomorphism test of two descriptors")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_iso_test)

    p = sub.add_parser("moduli-report", parents=[common], help="moduli of stable real bundles of type (r, d)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_moduli_report)

    p = sub.add_parser("construct", parents=[common], help="pushforward-based stable real bundle twisted by phi(t)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", default="0")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("key", parents=[common], help="canonical moduli key of a point")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", default="0")
    p.set_defaults(func=cmd_key)

    p = sub.add_parser("fixed-locus", parents=[common], help="conjugation-fixed circles on Pic^0 mod r-torsion")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_fixed_locus)

    p = sub.add_parser("plot", parents=[common], help="SVG + CSV of the fundamental domain")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--d", type=int, default=0)
    p.set_defaults(func=cmd_plot)
    return parser


def _emit(doc, text, as_json: bool, stream):
    if as_json:
        stream.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        stream.write(text + "\n")


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    as_json = "--json" in (argv if argv is not None else sys.argv[1:])
    try:
        args = build_parser().parse_args(argv)
        if args.tau is not None and not args.tau > 0:
            raise UsageError("--tau must be positive")
        doc, text = args.func(args)
    except DomainError as exc:
        return _fail(exc, EXIT_DOMAIN, as_json, stdout)
    except KleinError as exc:
        return _fail(exc, EXIT_USAGE, as_json, stdout)
    _emit(doc, text, as_json, stdout)
    return 0


def _fail(exc, code, as_json, stdout):
    if as_json:
        doc = {"error": True, "kind": type(exc).__name__, "message": str(exc), "exit_code": code}
        stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        print(f"error: {exc}", file=sys.stderr)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
