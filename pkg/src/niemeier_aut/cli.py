"""Command-line front end: ``niemeier-aut <verb> ...``.

Exit status is 0 on success, 1 when a check fails (including automorphism
input that does not preserve the lattice), and 2 on usage errors such as an
unknown lattice, automorphism or suite name.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import fingrp
from .exactlin import Matrix
from .lataut import LatticeAutomorphism, certify_conjugate, invariants, named_lattice_automorphism
from .niemeier import NIEMEIER_IDS, NiemeierId, build_lattice, roots_of
from .orbifold import classify
from .suites import DEFAULT_SEED, SUITES, run_suite


class UsageError(Exception):
    pass


def _lattice(tag):
    try:
        return build_lattice(NiemeierId.parse(tag).tag)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"unknown lattice {tag!r}; choose from {', '.join(NIEMEIER_IDS)}") from exc


def _matrix_from_file(path: Path) -> np.ndarray:
    try:
        M = Matrix.from_json(path.read_text())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read matrix from {path}: {exc}") from exc
    rows = M.row_list()
    if any(x.denominator != 1 for r in rows for x in r):
        raise UsageError(f"{path}: automorphism matrices must be integral")
    return np.array([[int(x) for x in r] for r in rows], dtype=np.int64)


def _automorphism(L, name_or_path: str) -> LatticeAutomorphism:
    path = Path(name_or_path)
    if path.suffix == ".json" or path.is_file():
        A = _matrix_from_file(path)
        if A.shape != (L.rank, L.rank):
            raise UsageError(f"{path}: expected a {L.rank}x{L.rank} matrix, got {A.shape[0]}x{A.shape[1]}")
        return LatticeAutomorphism(A, L, path.stem)
    try:
        return named_lattice_automorphism(L.id, name_or_path)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(obj, as_json: bool, text_lines=None) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True))
    elif text_lines is not None:
        print("\n".join(text_lines))
    else:
        for k, v in obj.items():
            print(f"{k}: {v}")


def cmd_build(args) -> int:
    L = _lattice(args.lattice)
    data = L.to_json()
    ok = data["det"] == "1" and data["even"] and data["rank"] == 24
    lines = [f"{L.id}: rank {data['rank']}, det {data['det']}, even {data['even']}",
             "components: " + (" ".join(r for r, _ in data["component_layout"]) or "none")]
    _emit(data, args.json, lines)
    return 0 if ok else 1


def cmd_roots(args) -> int:
    L = _lattice(args.lattice)
    roots = roots_of(L)
    data = {"lattice": L.id, "count": len(roots),
            "roots": [[str(x) for x in r] for r in roots] if args.list else None}
    lines = [f"{L.id}: {len(roots)} roots"]
    if args.list:
        lines += [" ".join(str(x) for x in r) for r in roots]
    _emit(data, args.json, lines)
    return 0


def cmd_invariants(args) -> int:
    L = _lattice(args.lattice)
    aut = _automorphism(L, args.automorphism)
    _emit(invariants(aut).to_json(), args.json)
    return 0


def cmd_classify(args) -> int:
    L = _lattice(args.lattice)
    aut = _automorphism(L, args.automorphism)
    _emit(classify(L, aut).to_json(), args.json)
    return 0


def cmd_certify(args) -> int:
    L = _lattice(args.lattice)
    tau, tau2 = _automorphism(L, args.tau), _automorphism(L, args.tau2)
    k1, k2 = invariants(tau).key(), invariants(tau2).key()
    data = {"lattice": L.id, "tau": tau.name, "tau2": tau2.name, "invariants_agree": k1 == k2}
    if args.conjugator is None:
        data["certified"] = False
        data["note"] = "no conjugator given" if k1 == k2 else "invariants differ, so no conjugator exists"
    else:
        g = _automorphism(L, args.conjugator)
        data["certified"] = certify_conjugate(g, tau, tau2)
    _emit(data, args.json)
    return 0 if data["certified"] else 1


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    ok = True
    for name in names:
        records = run_suite(name, seed=args.seed, jobs=args.jobs)
        for r in records:
            ok &= bool(r["pass"])
            if args.json:
                print(json.dumps({"suite": name, **r}, sort_keys=True))
            else:
                mark = "PASS" if r["pass"] else "FAIL"
                print(f"[{mark}] {name}: {r['check']} (expected {r['expected']}, got {r['got']})")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON on stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized checks")
    common.add_argument("--cap", type=int, default=None, help="element cap for group closures")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker threads")

    p = argparse.ArgumentParser(prog="niemeier-aut",
                                description="Niemeier lattices and their order-3 automorphisms.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("build", parents=[common], help="build and certify a lattice")
    s.add_argument("lattice")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("roots", parents=[common], help="enumerate the norm-2 vectors")
    s.add_argument("lattice")
    s.add_argument("--list", action="store_true", help="print every root")
    s.set_defaults(func=cmd_roots)

    for verb, func, text in (("invariants", cmd_invariants, "invariants of an automorphism"),
                             ("classify", cmd_classify, "orbifold classification of an automorphism")):
        s = sub.add_parser(verb, parents=[common], help=text)
        s.add_argument("lattice")
        s.add_argument("automorphism", help="a name such as sigma3, or a JSON matrix file")
        s.set_defaults(func=func)

    s = sub.add_parser("certify", parents=[common], help="check a conjugacy certificate g^-1 tau g = tau2")
    s.add_argument("lattice")
    s.add_argument("tau")
    s.add_argument("tau2")
    s.add_argument("--conjugator", help="name or JSON matrix file of g")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", help="all, " + ", ".join(SUITES))
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fingrp.set_cap(args.cap)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, fingrp.CapExceeded) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    finally:
        fingrp.set_cap(None)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
