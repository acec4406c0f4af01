"""Command-line interface.

Usage: ``nfgcodes <group> <command> [INPUT] [options]`` where INPUT is a JSON
file path or ``-`` for standard input.  Every command prints a report; exit
status is 0 on success, 2 when a verified identity fails and 1 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from fractions import Fraction
from typing import Any

import numpy as np

from . import convcode, lincode, nfg, transform
from .wgf import WeightAdjacencyMatrix, WgfKind, macwilliams_wam, macwilliams_wgf, rename_dual, wam
from .wgf import wgf as weight_enumerator
from .algebra import Alphabet, Polynomial
from .errors import NFGCodesError

EXIT_OK, EXIT_INPUT, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class Result:
    """What a command hands back to the report writer."""

    def __init__(self, payload, witnesses=None, passed=None, table=None, text=None):
        self.payload = payload
        self.witnesses = witnesses or {}
        self.passed = passed
        self.table = table  # rows for csv output, header first
        self.text = text  # pretty output


# ---------------------------------------------------------------------------
# input helpers


def _read_input(path: str | None) -> tuple[Any, bytes]:
    if path in (None, "-"):
        raw = sys.stdin.buffer.read()
    else:
        with open(path, "rb") as fh:
            raw = fh.read()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise NFGCodesError(f"input is not valid JSON: {exc}") from exc
    # a report from another command: consume its payload
    if isinstance(data, dict) and "command" in data and "result" in data:
        data = data["result"]
    return data, raw


def _state_order(arg: str | None):
    return tuple(s.strip() for s in arg.split(",")) if arg else None


def _spectrum_table(spec: convcode.Spectrum):
    return [["weight", "count"]] + [[str(d), str(c)] for d, c in spec.nonzero().items()]


def _poly_table(g: Polynomial):
    return [["monomial", "coefficient"]] + [
        ["*".join(f"{n}^{e}" for n, e in mono) or "1", str(c)] for mono, c in g.sorted_terms()
    ]


def _wam_table(m: WeightAdjacencyMatrix):
    return [["state"] + list(m.cols)] + [[r] + [str(e) for e in row] for r, row in zip(m.rows, m.entries)]


def _code_result(code: lincode.LinearCode, cap: int) -> Result:
    payload = code.to_json()
    payload["dim"] = code.dim
    payload["length"] = code.length
    payload["weight_distribution"] = lincode.weight_distribution(code, cap=cap)
    rows = [["codeword"]] + [[str(w)] for w in lincode.enumerate_code(code, cap)] if code.cardinality <= 4096 else None
    text = "\n".join(" ".join("".join(map(str, s)) for s in r) for r in code.generator_rows()) or "(zero code)"
    return Result(payload, table=rows, text=f"[{sum(code.profile)}, {code.dim}] code over F_{code.p}\n{text}")


# ---------------------------------------------------------------------------
# commands


def cmd_code_info(args, data):
    return _code_result(lincode.LinearCode.from_json(data), args.cap)


def cmd_code_dual(args, data):
    return _code_result(lincode.dual_code(lincode.LinearCode.from_json(data)), args.cap)


def cmd_code_wgf(args, data):
    g = weight_enumerator(lincode.LinearCode.from_json(data), args.kind, args.cap)
    return Result(g.to_json(), table=_poly_table(g), text=str(g))


def cmd_code_macwilliams(args, data):
    code = lincode.LinearCode.from_json(data)
    kind = WgfKind.parse(args.kind)
    g = weight_enumerator(code, kind, args.cap)
    h, alpha = macwilliams_wgf(g, kind, code.profile)
    oracle = weight_enumerator(lincode.dual_code(code), kind, args.cap)
    ok = rename_dual(h) == oracle and code.cardinality * lincode.dual_code(code).cardinality == code.ambient_size
    payload = {"primal": g.to_json(), "dual": h.to_json()}
    return Result(payload, {"alpha": str(alpha)}, ok, _poly_table(h), f"{h}\nwitness {alpha}")


def cmd_nfg_eval(args, data):
    g = nfg.realization_from_json(data)
    z = nfg.partition_function(g, method=args.method, cap=args.cap)
    return Result(z.to_json(), text=_pf_text(z))


def _pf_text(z: nfg.PartitionFunction) -> str:
    if not z.ids:
        return f"Z = {z.table[()]}"
    lines = []
    for idx in np.ndindex(*z.table.shape):
        labels = ",".join(a.label(a.vector(i)) for a, i in zip(z.alphabets, idx))
        lines.append(f"Z({labels}) = {z.table[idx]}")
    return "\n".join(lines)


def cmd_nfg_dualize(args, data):
    d = nfg.dualize(nfg.NormalFactorGraph.from_json(data))
    return Result(d.to_json(), text=f"dual graph: {len(d.factors)} factors, {len(d.internals)} internal variables")


def cmd_nfg_verify(args, data):
    rep = nfg.verify_duality(nfg.NormalFactorGraph.from_json(data), cap=args.cap)
    witnesses = {"expected": str(rep.expected_witness), "found": None if rep.witness is None else str(rep.witness)}
    text = f"Z_dual = {rep.witness} * FT(Z) (expected {rep.expected_witness}): {'PASS' if rep.passed else 'FAIL'}"
    return Result(rep.to_json(), witnesses, rep.passed, text=text)


def _section(data, args) -> convcode.TrellisSection:
    sec = convcode.TrellisSection.from_json(data)
    order = _state_order(getattr(args, "state_order", None))
    if order:
        sec = convcode.TrellisSection(sec.code, order)
    return sec


def cmd_wam_compute(args, data):
    m = wam(_section(data, args), args.kind, _state_order(args.state_order))
    return Result(m.to_json(), table=_wam_table(m), text=str(m))


def cmd_wam_power(args, data):
    m = WeightAdjacencyMatrix.from_json(data)
    out = convcode.wam_power(m, args.N, args.dmax)
    return Result(out.to_json(), table=_wam_table(out), text=str(out))


def cmd_wam_macwilliams(args, data):
    m = WeightAdjacencyMatrix.from_json(data)
    if args.kind and WgfKind.parse(args.kind) != m.kind:
        raise NFGCodesError(f"--kind {args.kind} does not match the matrix kind {m.kind.value}")
    d, alpha = macwilliams_wam(m)
    out = d if args.dual_names else d.undual()
    return Result(out.to_json(), {"alpha": str(alpha)}, table=_wam_table(out), text=f"{out}\nwitness {alpha}")


def cmd_wam_extract(args, data):
    m = WeightAdjacencyMatrix.from_json(data)
    g = convcode.terminated_hwgf(m, args.mode)
    return Result(g.to_json(), table=_poly_table(g), text=str(g))


def cmd_conv_section(args, data):
    sec = _section(data, args)
    text = "\n".join(" ".join("".join(map(str, b)) for b in r) for r in sec.code.generator_rows())
    return Result(sec.to_json(), text=text)


def cmd_conv_dual(args, data):
    sec = convcode.dual_section(_section(data, args))
    if args.reverse:
        sec = convcode.time_reverse(sec)
    text = "\n".join(" ".join("".join(map(str, b)) for b in r) for r in sec.code.generator_rows())
    return Result(sec.to_json(), text=text)


def cmd_conv_terminate(args, data):
    code = convcode.terminate(_section(data, args), args.N, args.mode)
    return _code_result(code, args.cap)


def cmd_conv_spectrum(args, data):
    spec = convcode.free_distance_spectrum(_section(data, args), args.dmax)
    return Result(spec.to_json(), table=_spectrum_table(spec), text=str(spec.to_polynomial()))


def cmd_conv_normalized(args, data):
    spec = convcode.normalized_tailbiting_spectrum(_section(data, args), args.N, args.dmax)
    return Result(spec.to_json(), table=_spectrum_table(spec), text=str(spec.to_polynomial()))


def cmd_xform_identities(args, data):
    rep = transform.verify_identity_suite(Alphabet(args.p, args.dim), cap=args.cap)
    payload = rep.to_json()
    witnesses = {c.name: None if c.witness is None else str(c.witness) for c in rep.checks}
    text = "\n".join(f"{c.name}: {c.witness} {'PASS' if c.passed else 'FAIL'}" for c in rep.checks)
    return Result(payload, witnesses, rep.passed, text=text)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nfgcodes", description="Normal factor graphs, MacWilliams identities and trellis codes.")
    groups = parser.add_subparsers(dest="group", metavar="GROUP", parser_class=_Parser)
    groups.required = True

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--cap", type=int, default=lincode.DEFAULT_ENUM_CAP, help="enumeration / tensor size cap")
    common.add_argument("--no-time", action="store_true", help="omit wall_time so reports are byte-identical")

    def add(group, name, fn, needs_input=True, help=None):
        p = group.add_parser(name, parents=[common], help=help)
        if needs_input:
            p.add_argument("input", nargs="?", default="-", help="JSON file, or - for standard input")
        p.set_defaults(fn=fn, needs_input=needs_input)
        return p

    kinds = ("exact", "complete", "hamming")
    modes = tuple(m.value for m in convcode.TerminationMode)

    code = groups.add_parser("code", help="linear block codes").add_subparsers(dest="cmd", metavar="CMD", parser_class=_Parser)
    code.required = True
    add(code, "info", cmd_code_info, help="canonical generators and weight distribution")
    add(code, "dual", cmd_code_dual, help="orthogonal code")
    add(code, "wgf", cmd_code_wgf, help="weight generating function").add_argument("--kind", choices=kinds, default="hamming")
    add(code, "macwilliams", cmd_code_macwilliams, help="dual enumerator checked against enumeration").add_argument(
        "--kind", choices=kinds, default="hamming"
    )

    g = groups.add_parser("nfg", help="normal factor graphs").add_subparsers(dest="cmd", metavar="CMD", parser_class=_Parser)
    g.required = True
    add(g, "eval", cmd_nfg_eval, help="partition function").add_argument(
        "--method", choices=("eliminate", "brute"), default="eliminate"
    )
    add(g, "dualize", cmd_nfg_dualize, help="dual normal graph")
    add(g, "verify-duality", cmd_nfg_verify, help="check the normal graph duality theorem")

    w = groups.add_parser("wam", help="weight adjacency matrices").add_subparsers(dest="cmd", metavar="CMD", parser_class=_Parser)
    w.required = True
    p = add(w, "compute", cmd_wam_compute, help="matrix of a trellis section")
    p.add_argument("--kind", choices=kinds, default="hamming")
    p.add_argument("--state-order")
    p = add(w, "power", cmd_wam_power, help="N-th matrix power")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--dmax", type=int)
    p = add(w, "macwilliams", cmd_wam_macwilliams, help="matrix of the dual section")
    p.add_argument("--kind", choices=kinds)
    p.add_argument("--dual-names", action="store_true", help="keep X indeterminates instead of renaming to x")
    add(w, "extract", cmd_wam_extract, help="terminated enumerator from a global matrix").add_argument(
        "--mode", choices=modes, required=True
    )

    c = groups.add_parser("conv", help="convolutional codes").add_subparsers(dest="cmd", metavar="CMD", parser_class=_Parser)
    c.required = True
    add(c, "section", cmd_conv_section, help="trellis section of an encoder").add_argument("--state-order")
    add(c, "dual", cmd_conv_dual, help="dual trellis section").add_argument(
        "--reverse", action="store_true", help="also time-reverse"
    )
    p = add(c, "terminate", cmd_conv_terminate, help="terminated block code")
    p.add_argument("--mode", choices=modes, required=True)
    p.add_argument("--N", type=int, required=True)
    add(c, "spectrum", cmd_conv_spectrum, help="free distance spectrum").add_argument("--dmax", type=int, required=True)
    p = add(c, "normalized", cmd_conv_normalized, help="normalized tail-biting spectrum")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)

    x = groups.add_parser("xform", help="Fourier transforms").add_subparsers(dest="cmd", metavar="CMD", parser_class=_Parser)
    x.required = True
    p = add(x, "verify-identities", cmd_xform_identities, needs_input=False, help="transform identity suite")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--dim", type=int, default=1)
    return parser


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(report: dict, result: Result | None, fmt: str, out) -> None:
    if fmt == "json" or result is None:
        out.write(json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        rows = result.table or [["key", "value"]] + [[k, json.dumps(v, sort_keys=True)] for k, v in sorted(report.items())]
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write((result.text or json.dumps(_jsonable(result.payload), sort_keys=True, indent=2)) + "\n")
        if result.witnesses:
            out.write("witnesses: " + ", ".join(f"{k}={v}" for k, v in sorted(result.witnesses.items())) + "\n")
        if result.passed is not None:
            out.write("verified\n" if result.passed else "FAILED\n")


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"nfgcodes: error: {exc}\n")
        return EXIT_INPUT
    command = f"{args.group} {args.cmd}"
    start = time.perf_counter()
    digest = None
    try:
        data = None
        if args.needs_input:
            data, raw = _read_input(args.input)
            digest = hashlib.sha256(raw).hexdigest()
        result = args.fn(args, data)
    except (NFGCodesError, OSError, ValueError, KeyError, TypeError) as exc:
        report = {
            "command": command,
            "inputs_digest": digest,
            "error": {"type": type(exc).__name__, "message": str(exc)},
            "passed": False,
        }
        sys.stderr.write(f"nfgcodes: {type(exc).__name__}: {exc}\n")
        _emit(report, None, "json", out)
        return EXIT_INPUT
    report = {
        "command": command,
        "inputs_digest": digest,
        "result": result.payload,
        "witnesses": result.witnesses,
        "passed": result.passed,
    }
    if not args.no_time:
        report["wall_time"] = round(time.perf_counter() - start, 6)
    _emit(report, result, args.format, out)
    return EXIT_FAILED if result.passed is False else EXIT_OK


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
