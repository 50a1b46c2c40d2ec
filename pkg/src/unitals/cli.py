"""Command-line interface.

Subcommands: build-hermitian, build-figueroa, validate, translations,
omega, classify, subunital, onan, isomorphic, check-lemmas.  Reports are
JSON with sorted keys and stable witness selection, so re-running a command
on the same input — with any ``--threads`` value — produces byte-identical
output.  Exit codes: 0 success, 1 a checked assertion was refuted (invalid
design, failed lemma, missing isomorphism, exhausted search budget),
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    classify,
    constant_intersection_check,
    sharply_transitive_suite,
    subunital_analysis,
)
from .figueroa import figueroa_bundle, verify_figueroa_theorems
from .incidence import (
    Unital,
    isomorphism_search,
    onan_search,
    read_unital,
    format_unital,
    validate_unital,
)
from .permgroup import identity_perm, perm_order
from .plane import hermitian_unital
from .translations import (
    build_atlas,
    orbit_congruence_check,
    translation_transitivity_check,
    translations_at,
)


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _load_input(args) -> tuple[Unital, dict]:
    """The unital named by --in (a file) or --q (reference hermitian)."""
    path = getattr(args, "infile", None)
    if path:
        if len(path) != 1:
            raise CliError("expected exactly one --in path here")
        u = read_unital(path[0])
        return u, {"in": path[0]}
    q = getattr(args, "q", None)
    if q is not None:
        return hermitian_unital(q), {"q": q}
    raise CliError("one of --in or --q is required")


def _emit(args, command: str, input_desc: dict, payload) -> None:
    doc = {
        "version": __version__,
        "command": command,
        "input": input_desc,
        "payload": payload,
    }
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _atlas_summary(atlas) -> dict:
    return {
        "omega": {
            str(n): sorted(centers)
            for n, centers in atlas.centers_by_order.items()
        },
        "mho": sorted(atlas.trivial_centers),
        "K": sorted(atlas.least_primes),
    }


# -- subcommands ----------------------------------------------------------------


def _cmd_build_hermitian(args) -> int:
    U = hermitian_unital(args.q)
    text = format_unital(U)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_build_figueroa(args) -> int:
    if not args.out:
        raise CliError("build-figueroa requires --out (unital file; a .json sidecar is written next to it)")
    bundle = figueroa_bundle(args.q)
    Path(args.out).write_text(format_unital(bundle.unital))

    F = bundle.plane.classical.field
    sidecar = {
        "field": {
            "characteristic": F.p,
            "degree": F.e,
            "modulus": list(F.modulus),
        },
        "points": [
            {
                "index": i,
                "coordinates": list(bundle.plane.classical.points[pid]),
                "type": bundle.point_types[i],
            }
            for i, pid in enumerate(bundle.plane_points)
        ],
        "block_plane_lines": list(bundle.block_lines),
    }
    Path(str(args.out) + ".json").write_text(
        json.dumps(sidecar, sort_keys=True, indent=2) + "\n"
    )

    atlas = build_atlas(bundle.unital, threads=args.threads)
    report = verify_figueroa_theorems(args.q, atlas=atlas, bundle=bundle)
    doc = {
        "version": __version__,
        "command": "build-figueroa",
        "input": {"q": args.q},
        "payload": report.to_json(),
    }
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return 0 if report.ok else 1


def _cmd_validate(args) -> int:
    U, desc = _load_input(args)
    q = args.q if args.q is not None and getattr(args, "infile", None) else U.q
    report = validate_unital(U, q)
    payload = report.to_json()
    payload["q"] = q
    _emit(args, "validate", desc, payload)
    return 0 if report.valid else 1


def _cmd_translations(args) -> int:
    U, desc = _load_input(args)
    ident = identity_perm(U.v)
    if args.center is not None:
        group = translations_at(U, args.center)
        desc = dict(desc, center=args.center)
        payload = {
            "center": args.center,
            "group_order": len(group),
            "translations": [
                {"order": perm_order(p), "image": list(p)}
                for p in group
                if p != ident
            ],
        }
        _emit(args, "translations", desc, payload)
        return 0
    atlas = build_atlas(U, threads=args.threads)
    centers = [
        {
            "center": c,
            "group_order": len(perms) + 1,
            "translations": [
                {"order": perm_order(p), "image": list(p)} for p in perms
            ],
        }
        for c, perms in enumerate(atlas.nontrivial)
    ]
    payload = dict(_atlas_summary(atlas), centers=centers)
    _emit(args, "translations", desc, payload)
    return 0


def _cmd_omega(args) -> int:
    U, desc = _load_input(args)
    atlas = build_atlas(U, threads=args.threads)
    _emit(args, "omega", desc, _atlas_summary(atlas))
    return 0


def _cmd_classify(args) -> int:
    U, desc = _load_input(args)
    report = classify(U, threads=args.threads)
    _emit(args, "classify", desc, report.to_json())
    return 0


def _cmd_subunital(args) -> int:
    U, desc = _load_input(args)
    if args.p is None:
        raise CliError("subunital requires --p")
    atlas = build_atlas(U, threads=args.threads)
    try:
        report = subunital_analysis(U, atlas, args.p)
    except ValueError as exc:
        raise CliError(str(exc))
    if report.contained_in_block:
        constant = None
    else:
        constant = constant_intersection_check(U, atlas, args.p).to_json()
    desc = dict(desc, p=args.p)
    _emit(args, "subunital", desc,
          {"subunital": report.to_json(), "constant_intersection": constant})
    return 0


def _cmd_onan(args) -> int:
    U, desc = _load_input(args)
    result = onan_search(U, budget=args.budget)
    desc = dict(desc, budget=args.budget)
    _emit(args, "onan", desc, result.to_json())
    return 0 if result.status != "budget-exhausted" else 1


def _cmd_isomorphic(args) -> int:
    paths = args.infile or []
    if len(paths) == 2:
        A = read_unital(paths[0])
        B = read_unital(paths[1])
        desc = {"in": paths[0], "in2": paths[1]}
    elif len(paths) == 1 and args.q is not None:
        A = read_unital(paths[0])
        B = hermitian_unital(args.q)
        desc = {"in": paths[0], "q": args.q}
    else:
        raise CliError("isomorphic needs two --in paths, or one --in path and --q")
    iso = isomorphism_search(A, B)
    payload = {
        "isomorphic": iso is not None,
        "isomorphism": None if iso is None else list(iso),
    }
    _emit(args, "isomorphic", desc, payload)
    return 0 if iso is not None else 1


def _cmd_check_lemmas(args) -> int:
    U, desc = _load_input(args)
    atlas = build_atlas(U, threads=args.threads)
    all_ok = True

    congruence = {}
    for n in atlas.orders:
        rep = orbit_congruence_check(atlas, n)
        congruence[str(n)] = rep.to_json()
        all_ok = all_ok and rep.ok

    transitivity = {}
    subunitals = {}
    constants = {}
    for p in sorted(atlas.least_primes):
        rep = translation_transitivity_check(atlas, p)
        transitivity[str(p)] = rep.to_json()
        all_ok = all_ok and rep.ok
        sub = subunital_analysis(U, atlas, p)
        subunitals[str(p)] = sub.to_json()
        if sub.contained_in_block:
            constants[str(p)] = {"skipped": "center set contained in a block"}
        else:
            ci = constant_intersection_check(U, atlas, p)
            constants[str(p)] = ci.to_json()
            all_ok = all_ok and ci.ok

    suite = None
    pairs = atlas.translations_of_order(2) if 2 in atlas.centers_by_order else []
    if pairs:
        omega2 = atlas.centers_by_order[2]
        tau = pairs[0][1]
        rep = sharply_transitive_suite(atlas.group_for(2), omega2, tau)
        suite = rep.to_json()
        all_ok = all_ok and rep.ok

    payload = {
        "congruence": congruence,
        "transitivity": transitivity,
        "subunital": subunitals,
        "constant_intersection": constants,
        "dihedral_suite": suite,
        "ok": all_ok,
    }
    _emit(args, "check-lemmas", desc, payload)
    return 0 if all_ok else 1


# -- parser ----------------------------------------------------------------------


def _add_common(sp, *, q=False, infile=False, out=False, p=False, center=False,
                threads=False, budget=False):
    if q:
        sp.add_argument("--q", type=int, help="order parameter (reference hermitian unital)")
    if infile:
        sp.add_argument("--in", dest="infile", nargs="+", metavar="PATH",
                        help="unital file in the canonical text format")
    if out:
        sp.add_argument("--out", help="output path (default: stdout)")
    if p:
        sp.add_argument("--p", type=int, help="translation order (a prime)")
    if center:
        sp.add_argument("--center", type=int, help="restrict to one center")
    if threads:
        sp.add_argument("--threads", type=int, default=1,
                        help="worker processes for per-center searches")
    if budget:
        sp.add_argument("--budget", type=int, default=0,
                        help="search node cap; 0 = exhaustive")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="unitals",
        description="Build unitals, enumerate their translations, and check "
                    "the structural facts that follow.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build-hermitian", help="write a hermitian unital file")
    _add_common(sp, q=True, out=True)
    sp.set_defaults(func=_cmd_build_hermitian)
    sp = sub.add_parser("build-figueroa",
                        help="build the Figueroa polar unital, write it with a "
                             "JSON sidecar, and verify its translation structure")
    _add_common(sp, q=True, out=True, threads=True)
    sp.set_defaults(func=_cmd_build_figueroa, q=2)
    sp = sub.add_parser("validate", help="check the 2-design axioms")
    _add_common(sp, q=True, infile=True, out=True)
    sp.set_defaults(func=_cmd_validate)
    sp = sub.add_parser("translations", help="enumerate translations per center")
    _add_common(sp, q=True, infile=True, out=True, center=True, threads=True)
    sp.set_defaults(func=_cmd_translations)
    sp = sub.add_parser("omega", help="center sets by order, trivial points, minimal primes")
    _add_common(sp, q=True, infile=True, out=True, threads=True)
    sp.set_defaults(func=_cmd_omega)
    sp = sub.add_parser("classify", help="hermitian recognition from translations")
    _add_common(sp, q=True, infile=True, out=True, threads=True)
    sp.set_defaults(func=_cmd_classify)
    sp = sub.add_parser("subunital", help="structure induced on a center set")
    _add_common(sp, q=True, infile=True, out=True, p=True, threads=True)
    sp.set_defaults(func=_cmd_subunital)
    sp = sub.add_parser("onan", help="search for a four-block six-point configuration")
    _add_common(sp, q=True, infile=True, out=True, budget=True)
    sp.set_defaults(func=_cmd_onan)
    sp = sub.add_parser("isomorphic", help="explicit isomorphism between two unitals")
    _add_common(sp, q=True, infile=True, out=True)
    sp.set_defaults(func=_cmd_isomorphic)
    sp = sub.add_parser("check-lemmas", help="run every structural check the input supports")
    _add_common(sp, q=True, infile=True, out=True, threads=True)
    sp.set_defaults(func=_cmd_check_lemmas)
    return ap


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
