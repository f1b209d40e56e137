"""Command-line interface.

Exit codes: 0 success, 1 domain failure or violation, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import config
from .errors import Str0dError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _InputError(Exception):
    pass


def _read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _load(path: str, kind: str | None = None):
    from .io import load

    data = _read(path)
    try:
        got, obj = load(kind, data)
    except (KeyError, TypeError, ValueError) as exc:
        raise _InputError(f"{path}: malformed {kind or 'input'} ({exc})") from None
    if got == "frame":
        config.check_bound(obj.n, config.hard_cap(), "input frame")
    elif got == "biframe":
        config.check_bound(obj.total.n, config.hard_cap(), "input biframe")
    return obj


def _emit(args, payload: dict, text: str) -> None:
    from .io import dumps

    if args.json:
        print(dumps(payload))
    else:
        print(text)


def _labels(F, xs):
    return [F.labels[x] for x in xs]


# commands ------------------------------------------------------------------------


def cmd_validate(args) -> int:
    from .io import detect_kind, load

    data = _read(args.path)
    try:
        kind = detect_kind(data)
        _, obj = load(kind, data)
    except (KeyError, TypeError, ValueError) as exc:
        raise _InputError(f"{args.path}: malformed input ({exc})") from None
    _emit(args, {"valid": True, "kind": kind}, f"valid {kind}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    from .congruence import congruence_lattice
    from .lattice import is_boolean
    from .skula import points_of_frame

    F = _load(args.path, "frame")
    comps = {F.labels[x]: (F.labels[c] if c is not None else None) for x, c in enumerate(F.complements)}
    payload = {
        "name": F.name or "",
        "size": F.n,
        "joinIrreducibles": _labels(F, sorted(F.join_irreducibles)),
        "primes": _labels(F, sorted(points_of_frame(F))),
        "complements": comps,
        "isBoolean": is_boolean(F),
        "congruenceCount": len(congruence_lattice(F)),
    }
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(args, payload, text)
    return EXIT_OK


def cmd_cong(args) -> int:
    from .congruence import brute_force_congruences, clear_congruence, congruence_lattice
    from .io import congruence_to_json

    F = _load(args.path, "frame")
    CF = congruence_lattice(F)
    lab = CF.lattice.labels
    payload = {
        "frame": F.name or "",
        "count": len(CF),
        "congruences": [congruence_to_json(C) for C in CF.congruences()],
        "nabla": {F.labels[a]: lab[k] for a, k in enumerate(CF.nabla_table)},
        "delta": {F.labels[a]: lab[k] for a, k in enumerate(CF.delta_table)},
        "clear": {F.labels[a]: lab[CF.index(clear_congruence(F, a))] for a in range(F.n)},
    }
    status = EXIT_OK
    if args.brute_force:
        fast = {C.relation() for C in CF.congruences()}
        agree = fast == brute_force_congruences(F, bound=max(F.n, config.ORACLE_BOUND))
        payload["oracleAgrees"] = agree
        if not agree:
            status = EXIT_FAIL
    lines = [f"{len(CF)} congruences on {F.name or 'L'}"]
    lines += [f"  {c['label']}" for c in payload["congruences"]]
    for key in ("nabla", "delta", "clear"):
        lines.append(f"{key}: " + ", ".join(f"{a}->{b}" for a, b in payload[key].items()))
    if args.brute_force:
        lines.append(f"oracle agrees: {payload['oracleAgrees']}")
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_str0d(args) -> int:
    from .biframe import is_str0d

    B = _load(args.path, "biframe")
    T = B.total
    ok = is_str0d(B)
    payload = {
        "isStr0d": ok,
        "complements": {T.labels[a]: (T.labels[T.complements[a]] if T.complements[a] is not None else None)
                        for a in sorted(B.part1)},
    }
    _emit(args, payload, f"strictly zero-dimensional: {ok}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_coreflect(args) -> int:
    from .biframe import chi_star_table, coreflection_chi, part_frame
    from .clear import clearness_report, is_congruential

    B = _load(args.path, "biframe")
    chi = coreflection_chi(B)
    T = B.total
    L, _ = part_frame(B, 1)
    S = chi.source.total
    star = chi_star_table(B)
    reports = [clearness_report(B, m) for m in range(T.n)]
    payload = {
        "chi": {S.labels[k]: T.labels[x] for k, x in enumerate(chi.table)},
        "chiStar": {T.labels[m]: S.labels[k] for m, k in enumerate(star)},
        "isCongruential": is_congruential(B),
        "clear": [T.labels[r.element] for r in reports if r.is_clear],
    }
    lines = [f"congruential: {payload['isCongruential']}", "chi:"]
    lines += [f"  {a} -> {b}" for a, b in payload["chi"].items()]
    lines.append("clear elements: " + ", ".join(payload["clear"]))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_recognize(args) -> int:
    from .clear import recognize_congruence_frame

    F = _load(args.path, "frame")
    bound = args.max_size if args.max_size is not None else config.RECOGNIZER_BOUND
    ws = recognize_congruence_frame(F, bound=bound)
    payload = {
        "isCongruenceFrame": bool(ws),
        "witnesses": [
            {
                "fixedPoints": _labels(F, sorted(w.fixed_points)),
                "cMap": {F.labels[x]: F.labels[y] for x, y in enumerate(w.c_map)},
                "firstPartIsoClass": w.first_part_class,
            }
            for w in ws
        ],
    }
    lines = [f"congruence frame: {'YES' if ws else 'NO'}"]
    lines += [f"  L = {{{', '.join(w['fixedPoints'])}}} ({w['firstPartIsoClass']})" for w in payload["witnesses"]]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_skula(args) -> int:
    from .io import biframe_to_json
    from .skula import find_homeomorphism, is_sober, skula, space_from_biframe

    X = _load(args.path, "space")
    B = skula(X)
    payload = {
        "biframe": biframe_to_json(B),
        "sober": is_sober(X),
        "roundTrip": find_homeomorphism(X, space_from_biframe(B)) is not None,
    }
    text = (f"Skula biframe: total {B.total.n}, first part {len(B.part1)}, second part {len(B.part2)}\n"
            f"sober: {payload['sober']}\nround trip: {payload['roundTrip']}")
    _emit(args, payload, text)
    return EXIT_OK


def _cmd_limit(args, which: str) -> int:
    from .category import colimit, limit, str0d_corpus, verify_colimit, verify_limit
    from .io import biframe_to_json, bihom_map_to_json

    D = _load(args.path, "diagram")
    build, check = (colimit, verify_colimit) if which == "colimit" else (limit, verify_limit)
    N, legs = build(D)
    checked = check(D, N, legs, str0d_corpus(args.max_size or 8))
    payload = {
        which: biframe_to_json(N),
        "legs": {X: bihom_map_to_json(h) for X, h in sorted(legs.items())},
        "universalPropertyChecks": checked,
    }
    _emit(args, payload, f"{which}: total {N.total.n}, first part {len(N.part1)}; {checked} (co)cones checked")
    return EXIT_OK


def cmd_limit(args) -> int:
    return _cmd_limit(args, "limit")


def cmd_colimit(args) -> int:
    return _cmd_limit(args, "colimit")


def cmd_fibre(args) -> int:
    from .category import fibre_over
    from .io import biframe_to_json

    F = _load(args.path, "frame")
    fib = fibre_over(F)
    payload = {"frame": F.name or "", "fibre": [biframe_to_json(B) for B in fib]}
    _emit(args, payload, f"{len(fib)} str0d biframe(s) over {F.name or 'L'}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .io import dumps
    from .verify import SUITES, run

    names = args.suite
    if names != "all" and names not in SUITES:
        print(f"unknown suite {names!r}; choose from all, {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_USAGE
    failed = False
    for report in run(names, args.max_size):
        failed |= not report.passed
        if args.json:
            print(dumps(report.to_json()))
        else:
            verdict = "pass" if report.passed else "FAIL"
            print(f"{report.suite}: {verdict} ({report.instances} instances, "
                  f"{len(report.violations)} violations, {report.elapsed:.2f}s)")
            for d in report.details:
                print(f"  {d}")
            for v in report.violations[:5]:
                print(f"  violation: {v['check']}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_enumerate(args) -> int:
    from .category import str0d_corpus
    from .census import enumerate_frames
    from .io import biframe_to_json, frame_to_json, space_to_json
    from .skula import enumerate_t0_spaces

    n = args.max_size if args.max_size is not None else 4
    if n < 0:
        raise _InputError("--max-size must be non-negative")
    if args.kind == "frames":
        items = [frame_to_json(F) for F in enumerate_frames(n)]
    elif args.kind == "biframes":
        config.check_bound(n, 1 << config.JOIN_IRREDUCIBLE_CAP, "enumerate biframes")
        items = [biframe_to_json(B) for B in str0d_corpus(n)] if n >= 1 else []
    else:
        config.check_bound(n, 5, "enumerate spaces")
        items = [space_to_json(X) for X in enumerate_t0_spaces(n)] if n >= 1 else []
    for item in items:
        if args.json:
            print(json.dumps(item, sort_keys=True, separators=(",", ":"), ensure_ascii=False))
        else:
            print(item.get("name") or json.dumps(item, sort_keys=True, ensure_ascii=False))
    return EXIT_OK


# parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-size", type=int, default=None, help="size bound for searches")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--brute-force", action="store_true", help="also run the brute-force oracle")

    parser = argparse.ArgumentParser(prog="str0d", description="Finite frames, congruences and str0d biframes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, path=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if path:
            p.add_argument("path")
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate, "validate a frame, hom, biframe, space or diagram file")
    add("analyze", cmd_analyze, "basic invariants of a frame")
    add("cong", cmd_cong, "congruence frame with nabla, delta and clear tables")
    add("str0d", cmd_str0d, "test strict zero-dimensionality of a biframe")
    add("coreflect", cmd_coreflect, "congruential coreflection and clear elements")
    add("recognize", cmd_recognize, "decide whether a frame is a congruence frame")
    add("skula", cmd_skula, "Skula biframe of a finite T0 space")
    add("limit", cmd_limit, "limit of a diagram of str0d biframes")
    add("colimit", cmd_colimit, "colimit of a diagram of str0d biframes")
    add("fibre", cmd_fibre, "str0d biframes over a frame")
    p = add("verify", cmd_verify, "run verification suites", path=False)
    p.add_argument("--suite", default="all")
    p = add("enumerate", cmd_enumerate, "enumerate structures up to isomorphism", path=False)
    p.add_argument("--kind", choices=["frames", "biframes", "spaces"], default="frames")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Str0dError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
