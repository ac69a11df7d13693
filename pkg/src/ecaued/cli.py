"""Command-line entry point: ``ecaued <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 for usage
errors (bad arguments, unreadable input, out-of-range parameters).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import catalog, construct as cs, designs as ds, simulate as sim
from .bounds import bvt_binary, gbt
from .core import Code, ParameterError, VerificationError, format_code, parse_code, read_code
from .search import SearchCapExceeded, certify, min_length

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _json(args) -> bool:
    return getattr(args, "json", False)


def _emit(args, payload: dict, text: str) -> None:
    if _json(args):
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_code(path: str | None) -> Code:
    if path in (None, "-"):
        return parse_code(sys.stdin.read())
    return read_code(path)


def _write_code(c: Code, path: str | None, comments=()) -> None:
    text = format_code(c, comments)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# --- commands --------------------------------------------------------------


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--method {args.method} needs " + ", ".join(f"--{n}" for n in missing))


def cmd_construct(args) -> int:
    m = args.method
    if m == "trivial":
        _need(args, "q", "a", "T")
        c = cs.trivial_code(args.q, args.a, args.T)
    elif m == "c1":
        _need(args, "k")
        c = cs.near_factorization_code(args.k)
    elif m == "c2":
        _need(args, "k")
        c = cs.shifted_near_factorization_code(args.k)
    elif m == "rs":
        _need(args, "q")
        c = cs.extended_rs_code(args.q)
    elif m in ("mds", "theorem6"):
        _need(args, "q")
        c = cs.mds_mirror_code(args.q)
    elif m == "mirror":
        c = cs.mirror_concatenate(_load_code(args.input))
    elif m == "debruijn":
        _need(args, "n", "q")
        c = cs.debruijn_code(args.n, args.q)
    elif m == "bibd":
        _need(args, "design", "p")
        system = ds.quadratic_residue_design(args.p) if args.design == "qr" else ds.hadamard_design(args.p)
        c = cs.constant_weight_from_bibd(system)
    else:  # juxtapose
        if len(args.parts) < 2:
            raise UsageError("--method juxtapose needs at least two --part files")
        codes = [read_code(p) for p in args.parts]
        c = codes[0]
        for other in codes[1:]:
            c = cs.juxtapose(c, other)
    if _json(args):
        print(json.dumps({"q": c.q, "a": c.size, "n": c.n, "words": c.array.tolist()}))
    else:
        _write_code(c, args.out, [f"method {m}"])
    return EXIT_OK


def cmd_bound(args) -> int:
    rep = gbt(args.q, args.a, args.T)
    payload = rep.as_dict()
    text = rep.line()
    if args.binary_bvt:
        if args.q != 2:
            raise UsageError("--binary-bvt applies to q = 2 only")
        payload["bvt"] = bvt_binary(args.a, args.T)
        text += f"\nBVT(a={args.a},T={args.T}) = {payload['bvt']}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    c = _load_code(args.code)
    try:
        cert = certify(c, args.T)
    except VerificationError as exc:
        _emit(args, {"pass": False, "reason": str(exc)}, f"FAIL {exc}")
        return EXIT_FAIL
    payload = cert.as_dict()
    payload.pop("witness")
    payload["pass"] = True
    _emit(args, payload, f"PASS q={c.q} a={c.size} n={c.n} T={args.T} gbt={cert.lower_bound} {cert.verdict}")
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        cert = min_length(args.q, args.a, args.T, n_max=args.nmax, cap=args.cap)
    except SearchCapExceeded as exc:
        raise UsageError(str(exc)) from None
    _emit(args, cert.as_dict(), cert.text())
    return EXIT_OK


def _parse_mix(text: str) -> tuple[float, float]:
    try:
        sym, uni = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--mix must look like SYM:UNI, got {text!r}") from None
    return sym, uni


def cmd_simulate(args) -> int:
    c = _load_code(args.code)
    try:
        stats = sim.run_trials(c, args.t, args.trials, args.seed, mix=_parse_mix(args.mix))
    except VerificationError as exc:
        _emit(args, {"pass": False, "reason": str(exc)}, f"FAIL {exc}")
        return EXIT_FAIL
    _emit(args, stats.as_dict(), stats.table())
    return EXIT_FAIL if stats.miscorrected else EXIT_OK


def _design_out(args, p: ds.ResolvablePacking, comments=()) -> None:
    text = ds.format_design(p, comments)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_design_arg(path: str) -> ds.ResolvablePacking:
    if path == "-":
        return ds.parse_design(sys.stdin.read())
    return ds.read_design(path)


def cmd_design(args) -> int:
    action = args.action
    if action == "affine":
        _design_out(args, ds.affine_plane(args.q), [f"lines of the affine plane of order {args.q}"])
    elif action == "roundrobin":
        _design_out(args, ds.round_robin(args.m), [f"round robin on {args.m} points"])
    elif action == "verify":
        try:
            p = _read_design_arg(args.file)
        except VerificationError as exc:
            _emit(args, {"pass": False, "reason": str(exc)}, f"FAIL {exc}")
            return EXIT_FAIL
        rep = ds.verify_packing(p)
        _emit(args, {"pass": True, "v": rep.v, "blocks": rep.num_blocks, "classes": rep.num_classes,
                     "k": rep.k, "lambda": rep.lam, "balanced": rep.balanced}, f"PASS {rep.line()}")
    elif action == "tocode":
        p = _read_design_arg(args.file)
        if args.delete_class:
            p = ds.delete_parallel_class(p)
        res = ds.packing_code(p)
        if _json(args):
            print(json.dumps({"q": res.q, "a": res.a, "n": res.n, "T": res.T, "words": res.code.array.tolist()}))
        else:
            _write_code(res.code, args.out, [f"packing code, asymmetric distance {res.T}"])
    else:  # develop
        p = _read_design_arg(args.file)
        seed = ds.CirculantSeed.of(p.v, list(p.iter_classes()))
        c = ds.develop_circulant(seed)
        if _json(args):
            print(json.dumps({"q": c.q, "a": c.size, "n": c.n, "words": c.array.tolist()}))
        else:
            _write_code(c, args.out, [f"circulant development over Z_{p.v}"])
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = [{"target": k, "description": d} for k, (d, _) in catalog.TARGETS.items()]
        rows.append({"target": catalog.ALL, "description": "every target above"})
        assets = {name: catalog.manifest()[name] for name in catalog.asset_names()}
        text = "targets:\n" + "\n".join(f"  {r['target']:<28}{r['description']}" for r in rows)
        text += "\nassets:\n" + "\n".join(f"  {n:<28}{e['file']}" for n, e in assets.items())
        _emit(args, {"targets": rows, "assets": sorted(assets)}, text)
        return EXIT_OK
    if args.action == "show":
        kv = catalog.known(args.q, args.a, args.T)
        if kv is None:
            _emit(args, {"q": args.q, "a": args.a, "T": args.T, "known": False},
                  f"n_{args.q}({args.a},{args.T}): not in the table (gbt {gbt(args.q, args.a, args.T).value})")
            return EXIT_OK
        _emit(args, kv.as_dict(), kv.line())
        return EXIT_OK
    reports = catalog.reproduce(args.target)
    if _json(args):
        for r in reports:
            print(json.dumps(r.as_dict(), sort_keys=True))
    else:
        for r in reports:
            sys.stdout.write(r.text() if args.verbose else r.text().splitlines()[0] + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS keeps a nested parser from resetting a flag given earlier on the line
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p = _Parser(prog="ecaued", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--log-level", default="WARNING", help="logging level")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="build a code")
    # "theorem6" is kept as an alias of "mds" for existing scripts
    c.add_argument("--method", required=True,
                   choices=["trivial", "c1", "c2", "mirror", "rs", "mds", "theorem6", "debruijn", "bibd", "juxtapose"])
    for name in ("q", "a", "T", "k", "n", "p"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--design", choices=["qr", "hadamard"], help="BIBD family for --method bibd")
    c.add_argument("--input", help="code file for --method mirror (default stdin)")
    c.add_argument("--part", dest="parts", action="append", default=[], help="code file for juxtapose")
    c.add_argument("--out", help="output file (default stdout)")
    c.set_defaults(func=cmd_construct)

    b = sub.add_parser("bound", parents=[common], help="lower bound on the length")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--a", type=int, required=True)
    b.add_argument("--T", type=int, required=True)
    b.add_argument("--binary-bvt", action="store_true", help="also print the binary bound")
    b.set_defaults(func=cmd_bound)

    v = sub.add_parser("verify", parents=[common], help="check a code's asymmetric distance")
    v.add_argument("--T", type=int, required=True)
    v.add_argument("code", nargs="?", help="code file (default stdin)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="exact shortest length by search")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--T", type=int, required=True)
    s.add_argument("--nmax", type=int)
    s.add_argument("--cap", type=int, help="largest q**n to search")
    s.set_defaults(func=cmd_search)

    m = sub.add_parser("simulate", parents=[common], help="random channel campaign")
    m.add_argument("--code", required=True)
    m.add_argument("--t", type=int, required=True)
    m.add_argument("--trials", type=int, default=10_000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--mix", default="1:1", help="symmetric:unidirectional weights")
    m.set_defaults(func=cmd_simulate)

    d = sub.add_parser("design", parents=[common], help="resolvable designs")
    dsub = d.add_subparsers(dest="action", required=True, parser_class=_Parser)
    da = dsub.add_parser("affine", parents=[common])
    da.add_argument("--q", type=int, required=True)
    dr = dsub.add_parser("roundrobin", parents=[common])
    dr.add_argument("--m", type=int, required=True)
    for name in ("affine", "roundrobin"):
        dsub.choices[name].add_argument("--out")
    dv = dsub.add_parser("verify", parents=[common])
    dv.add_argument("file")
    dt = dsub.add_parser("tocode", parents=[common])
    dt.add_argument("file")
    dt.add_argument("--delete-class", action="store_true")
    dt.add_argument("--out")
    dd = dsub.add_parser("develop", parents=[common])
    dd.add_argument("file")
    dd.add_argument("--out")
    d.set_defaults(func=cmd_design)

    k = sub.add_parser("catalog", parents=[common], help="known values and reproduction runs")
    ksub = k.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ksub.add_parser("list", parents=[common])
    kr = ksub.add_parser("reproduce", parents=[common])
    kr.add_argument("--target", required=True)
    kr.add_argument("--verbose", action="store_true", help="one line per check")
    ks = ksub.add_parser("show", parents=[common])
    ks.add_argument("--q", type=int, required=True)
    ks.add_argument("--a", type=int, required=True)
    ks.add_argument("--T", type=int, required=True)
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
