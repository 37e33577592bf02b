"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 non-generic lengths, 3 empty
polygon space (the zero-ring report is still printed).
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import cohomology, equilateral, invariants, lengths
from .cohomology import SCHEMA_VERSION, dumps
from .errors import EmptySpace, NonGeneric, PolygonSpaceError

EXIT_OK, EXIT_MALFORMED, EXIT_NONGENERIC, EXIT_EMPTY = 0, 1, 2, 3
FORMAT_ENV = "POLYSPACES_FORMAT"
COMMANDS = ("shorts", "poincare", "ring", "planar", "classes", "form", "equilateral", "classify")


class Malformed(Exception):
    pass


@dataclass
class Request:
    command: str
    alpha: Optional[str] = None
    options: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"command": self.command, "alpha": self.alpha, "options": dict(self.options)}


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise Malformed(message)


def _add_common(p, space=False, coeffs=False, edge=False):
    p.add_argument("--alpha", required=True, help="comma-separated lengths, integers or p/q")
    if space:
        p.add_argument("--space", default="pol", help="pol, apol or up (default pol)")
    if coeffs:
        p.add_argument("--coeffs", default="Z", choices=["Z", "Q", "Z2", "Z4"])
    if edge:
        p.add_argument("--edge", type=int, default=None, help="distinguished edge k (default m)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polyspaces", description="Cohomology of polygon spaces.")
    parser.add_argument("--format", choices=["text", "json"], default=None,
                        help="output format (default from $%s, else text)" % FORMAT_ENV)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    _add_common(sub.add_parser("shorts", help="short and long subset families"), edge=True)
    _add_common(sub.add_parser("poincare", help="Poincaré polynomial"), space=True)
    _add_common(sub.add_parser("ring", help="ring presentation"), space=True, coeffs=True, edge=True)
    _add_common(sub.add_parser("planar", help="mod 2 ring of the planar polygon space"), edge=True)
    _add_common(sub.add_parser("classes", help="characteristic classes"), edge=True)
    _add_common(sub.add_parser("form", help="intersection form (odd m)"), edge=True)
    eq = sub.add_parser("equilateral", help="equilateral polygon spaces")
    eq.add_argument("--m", type=int, required=True)
    eq.add_argument("--n", type=int, default=None, help="product of inverted primes to test")
    eq.add_argument("--bound", type=int, default=50)
    cl = sub.add_parser("classify", help="edge permutation matching two short families")
    cl.add_argument("--alpha", required=True)
    cl.add_argument("--beta", required=True)
    batch = sub.add_parser("batch", help="run requests from a file")
    batch.add_argument("path")
    batch.add_argument("--jobs", type=int, default=1)
    for p in sub.choices.values():
        p.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    return parser


def request_from_args(ns: argparse.Namespace) -> Request:
    opts = {k: v for k, v in vars(ns).items() if k not in ("command", "alpha", "format") and v is not None}
    return Request(ns.command, getattr(ns, "alpha", None), opts)


def parse_request(argv: Sequence[str]) -> Request:
    ns = build_parser().parse_args(list(argv))
    if ns.command is None or ns.command == "batch":
        raise Malformed("expected one of: %s" % ", ".join(COMMANDS))
    return request_from_args(ns)


# ---------------------------------------------------------------------------
# dispatch

def _family(fam) -> list:
    return [sorted(s) for s in sorted(fam.as_sets(), key=lambda s: (len(s), sorted(s)))]


def _sets(fam, which: str) -> list:
    return [sorted(s) for s in getattr(fam, which)()]


def _edge_note(alpha, edge) -> Optional[str]:
    if edge is None:
        return None
    longest = max(range(1, alpha.m + 1), key=lambda i: (alpha[i - 1], -i))
    return "distinguished edge %d; the longest edge (%d) gives the smallest S_k" % (edge, longest)


def _provenance(method: str) -> dict:
    return {"method": method}


def run(request: Request) -> Tuple[int, dict]:
    """Execute one request; returns ``(exit code, report)``."""
    try:
        return _dispatch(request)
    except NonGeneric as exc:
        return EXIT_NONGENERIC, _diagnostic(request, "NonGeneric", str(exc))
    except EmptySpace as exc:
        return EXIT_EMPTY, _diagnostic(request, "EmptySpace", str(exc))
    except (Malformed, PolygonSpaceError, ValueError, TypeError, ZeroDivisionError) as exc:
        return EXIT_MALFORMED, _diagnostic(request, type(exc).__name__, str(exc))


def _diagnostic(request: Request, kind: str, message: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": request.command,
            "error": {"type": kind, "message": message}}


def _report(request: Request, result: dict, method: str) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "command": request.command, "result": result,
           "provenance": _provenance(method)}
    if request.alpha is not None:
        out["alpha"] = request.alpha
    return out


def _alpha(request: Request):
    if request.alpha is None:
        raise Malformed("--alpha is required")
    return lengths.require_generic(lengths.LengthVector.parse(request.alpha))


def _dispatch(request: Request) -> Tuple[int, dict]:
    cmd, opts = request.command, request.options
    if cmd not in COMMANDS:
        raise Malformed("unknown command %r" % cmd)
    if cmd == "equilateral":
        return EXIT_OK, _report(request, _equilateral(opts), "Symmetric group action on H^2 and its invariant ring")
    if cmd == "classify":
        a = _alpha(request)
        b = lengths.require_generic(lengths.LengthVector.parse(opts["beta"]))
        perm = lengths.classify_pair(a, b)
        result = {"isomorphic": perm is not None, "permutation": list(perm) if perm else None}
        return EXIT_OK, _report(request, result, "Short-family isomorphism search")
    alpha = _alpha(request)
    edge = opts.get("edge")
    note = _edge_note(alpha, edge)

    if cmd == "shorts":
        k = edge or alpha.m
        result = {
            "generic": True,
            "empty": lengths.is_empty_space(alpha),
            "maximal_shorts": _sets(lengths.short_family(alpha), "maximal"),
            "distinguished_edge": k,
            "S_k": _family(lengths.distinguished_subposet(alpha, k)),
        }
        if k == alpha.m:
            result["minimal_L_m"] = _sets(lengths.distinguished_longs(alpha), "minimal")
        if note:
            result["note"] = note
        code = EXIT_EMPTY if result["empty"] else EXIT_OK
        return code, _report(request, result, "Short subsets")

    if cmd == "poincare":
        space = invariants.normalize_space(opts.get("space", "pol"))
        poly = invariants.poincare(alpha, space)
        result = {"space": space, "poincare": str(poly), "betti": poly.betti(), "empty": not poly.coeffs}
        method = "Poincaré polynomial from the distinguished short subsets"
        if space == "Pol":
            result["klyachko"] = str(invariants.klyachko_poincare(alpha))
            method += "; Klyachko's formula"
            if alpha.m % 2:
                result["signature"] = invariants.signature(alpha)
        return (EXIT_EMPTY if result["empty"] else EXIT_OK), _report(request, result, method)

    if cmd == "ring":
        space = invariants.normalize_space(opts.get("space", "pol"))
        pres = cohomology.build_presentation(alpha, space, opts.get("coeffs", "Z"), edge)
        result = pres.to_dict()
        result.pop("schema_version", None)
        if note:
            result["note"] = note
        method = "Danilov presentation of the upper path space" + (
            "" if space == "UP" else "; ideal quotient by a power of R")
        return (EXIT_EMPTY if pres.empty else EXIT_OK), _report(request, result, method)

    if cmd == "planar":
        pres = cohomology.build_planar_presentation(alpha, edge)
        result = pres.to_dict()
        result.pop("schema_version", None)
        result["euler_characteristic"] = invariants.planar_euler(alpha)
        return (EXIT_EMPTY if pres.empty else EXIT_OK), _report(
            request, result, "Spatial relators over Z2 with halved degrees")

    if cmd == "classes":
        pres = cohomology.build_pol_presentation(alpha, edge=edge)
        if pres.empty:
            raise EmptySpace("the polygon space is empty")
        cc = cohomology.characteristic_classes(pres)
        result = {name: str(v) for name, v in cc.items() if name != "checks"}
        result["checks"] = cc["checks"]
        result["w2_xi"] = "R mod 2"
        result["liouville_volume"] = str(cohomology.liouville_volume(pres))
        return EXIT_OK, _report(request, result, "Chern classes of the edge line bundles")

    if cmd == "form":
        pres = cohomology.build_pol_presentation(alpha, edge=edge)
        form = cohomology.intersection_form(pres)
        result = {"basis": form.labels, "matrix": form.matrix, "top_generator": str(form.top_generator),
                  "signature": form.signature(), "determinant": form.determinant(),
                  "expected_signature": invariants.alternating_short_sum(alpha)}
        return EXIT_OK, _report(request, result, "Cup product pairing into the oriented top class")
    raise Malformed("unknown command %r" % cmd)


def _equilateral(opts: dict) -> dict:
    m = int(opts["m"])
    result = {
        "m": m,
        "determinant_c_basis": equilateral.standardization_determinant(2, 0, m),
        "determinant_m_basis": equilateral.standardization_determinant(m, 1, m),
        "integral_witness": equilateral.is_standardizable(1, m, int(opts.get("bound", 50))),
        "mod2_standard": equilateral.mod2_action_is_standard(m),
        "quotient_poincare": str(equilateral.quotient_poincare(m)),
    }
    if opts.get("n") is not None:
        w = equilateral.is_standardizable(int(opts["n"]), m, int(opts.get("bound", 50)))
        result["n"] = int(opts["n"])
        result["witness"] = list(w) if w else None
    pres = equilateral.invariant_presentation(m)
    result["invariant_relators"] = {k: [p.to_string() for p in v] for k, v in pres.families.items()}
    result["invariant_dimensions"] = pres.graded_dimensions()[::2]
    return result


# ---------------------------------------------------------------------------
# rendering

def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps(report)
    if "error" in report:
        return "error: %s" % report["error"]["message"]
    lines = []
    result = report["result"]
    if "poincare" in result:
        lines.append(result["poincare"])
    for key in sorted(result):
        lines.extend(_text_lines(key, result[key], 0))
    lines.append("method: %s" % report["provenance"]["method"])
    return "\n".join(lines)


def _text_lines(key, value, indent) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = ["%s%s:" % (pad, key)]
        for k in sorted(value):
            out.extend(_text_lines(k, value[k], indent + 1))
        return out
    if isinstance(value, list) and value and all(isinstance(v, str) for v in value):
        return ["%s%s:" % (pad, key)] + ["%s  %s" % (pad, v) for v in value]
    return ["%s%s: %s" % (pad, key, json.dumps(value, ensure_ascii=False) if not isinstance(value, str) else value)]


# ---------------------------------------------------------------------------
# batch

def read_batch(text: str) -> List[object]:
    """Requests from a JSON array or from one command line per line."""
    stripped = text.strip()
    if not stripped:
        return []
    if stripped.startswith("["):
        return json.loads(stripped)
    return [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]


def _request_of(item) -> Request:
    if isinstance(item, str):
        return parse_request(shlex.split(item))
    if isinstance(item, list):
        return parse_request([str(x) for x in item])
    if isinstance(item, dict):
        opts = dict(item.get("options", {}))
        for k, v in item.items():
            if k not in ("command", "alpha", "options"):
                opts[k] = v
        if item.get("command") not in COMMANDS:
            raise Malformed("unknown command %r" % item.get("command"))
        return Request(item["command"], item.get("alpha"), opts)
    raise Malformed("cannot read request %r" % (item,))


def _run_item(item) -> Tuple[int, dict]:
    try:
        request = _request_of(item)
    except (Malformed, ValueError) as exc:
        return EXIT_MALFORMED, {"schema_version": SCHEMA_VERSION, "command": None,
                                "error": {"type": "Malformed", "message": str(exc)}}
    return run(request)


def run_batch(items: Sequence[object], jobs: int = 1) -> List[Tuple[int, dict]]:
    """Run independent requests, in parallel when ``jobs > 1``; output keeps input order."""
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_item, items))
    return [_run_item(item) for item in items]


# ---------------------------------------------------------------------------

def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(argv)
    except Malformed as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_MALFORMED
    fmt = ns.format or os.environ.get(FORMAT_ENV, "text")
    if fmt not in ("text", "json"):
        print("error: unknown format %r" % fmt, file=sys.stderr)
        return EXIT_MALFORMED
    if ns.command is None:
        build_parser().print_help(sys.stderr)
        return EXIT_MALFORMED
    if ns.command == "batch":
        try:
            with open(ns.path, encoding="utf-8") as fh:
                items = read_batch(fh.read())
        except (OSError, json.JSONDecodeError) as exc:
            print("error: %s" % exc, file=sys.stderr)
            return EXIT_MALFORMED
        results = run_batch(items, ns.jobs)
        for i, (_, report) in enumerate(results):
            if fmt == "text" and i:
                print()
            print(render(report, fmt))
        return max((code for code, _ in results), default=EXIT_OK)
    code, report = run(request_from_args(ns))
    text = render(report, fmt)
    stream = sys.stderr if fmt == "text" and "error" in report else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
