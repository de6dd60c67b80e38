"""Command-line interface: batch drivers for the irrep census, orbit and
tame-parameter enumeration, Hecke matrix dumps, the full verification
pipeline, and projective-basis dumps.

All output is deterministic: JSON is emitted with sorted keys and compact
separators, matrices optionally as TSV with a comment header.  The
TJL_THREADS environment variable caps the worker count for the per-sigma
verification loop; results are assembled in canonical order so the bytes
do not depend on it.  Exit codes: 0 success, 1 falsified invariant,
2 usage error, 3 resource or search bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .adelic import (
    SearchBoundExceededError,
    default_places,
    group_of,
    hecke_matrix,
    synthesize_random_adele,
    factorize_adele,
    verify_witness_uniqueness,
)
from .funcfield import Poly, format_poly, is_irreducible, parse_poly
from .metacyclic import (
    GroupParams,
    IrrepLabel,
    character_inner,
    character_table,
    enumerate_irreps,
    enumerate_orbits,
    gamma,
)
from .quaternion import AlgebraParams, OrderElement
from .spectral import (
    FalsificationError,
    NeedsMorePlacesError,
    projective_basis,
    verify_claim,
)
from .tame import tame_report

SCHEMA_VERSION = "1"
PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9)
ODD_PRIME_POWERS = (3, 5, 7, 9)
LOCAL_SIZE_CAP = 5000


class UsageError(ValueError):
    pass


def _threads() -> int:
    raw = os.environ.get("TJL_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"TJL_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise UsageError("TJL_THREADS must be >= 1")
    return n


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _check_local(q: int, n: int, level: int) -> None:
    if q not in PRIME_POWERS:
        raise UsageError(f"q must be a prime power <= 9, got {q}")
    if not 1 <= n <= 4:
        raise UsageError(f"n must be between 1 and 4, got {n}")
    if level < 1:
        raise UsageError(f"N must be >= 1, got {level}")
    if n * level * (q ** n - 1) > LOCAL_SIZE_CAP:
        raise SearchBoundExceededError(
            f"group order {n * level * (q ** n - 1)} exceeds the cap "
            f"{LOCAL_SIZE_CAP}")


def _check_adelic(q: int, level: int) -> None:
    if q not in ODD_PRIME_POWERS:
        raise UsageError(
            f"adelic commands need an odd prime power q <= 9, got {q}")
    if level < 1:
        raise UsageError(f"N must be >= 1, got {level}")


def _parse_sigma(text: str, group) -> IrrepLabel:
    if text == "trivial":
        return IrrepLabel((0,), 0)
    parts = text.split(":")
    try:
        c = int(parts[0])
        s = int(parts[1]) if len(parts) > 1 else 0
    except ValueError:
        raise UsageError(
            f"--sigma takes 'trivial' or 'c[:s]' with integers, got {text!r}")
    orbit = group.frobenius_orbit(c % group.M)
    label = IrrepLabel(orbit, s % (group.R // len(orbit)))
    if label not in enumerate_irreps(group):
        raise UsageError(f"no irrep labeled by {text!r}")
    return label


def _parse_place(alg: AlgebraParams, text: str) -> Poly:
    pi = parse_poly(alg.field, text)
    if not pi.is_monic() or not is_irreducible(pi):
        raise UsageError(f"place must be a monic irreducible, got {text!r}")
    if pi == Poly.t(alg.field):
        raise UsageError("the algebra is ramified at t; choose another place")
    return pi


# -- subcommands -------------------------------------------------------


def cmd_irreps(args) -> int:
    _check_local(args.q, args.n, args.level)
    G = gamma(args.q, args.n, args.level)
    labels, reps, sizes, rows = character_table(G)
    square_sum = sum(lb.dim ** 2 for lb in labels)
    ortho = True
    for i, ra in enumerate(rows):
        for j, rb in enumerate(rows):
            want = Fraction(1 if i == j else 0)
            if character_inner(G, ra, rb, sizes) != want:
                ortho = False
    classes = G.conjugacy_classes()
    multiplicity = []
    for lb in labels:
        support = sorted(lb.orbit)
        multiplicity.append({"sigma": lb.to_json(), "support": support})
    report = {
        "schema_version": SCHEMA_VERSION,
        "q": args.q,
        "n": args.n,
        "N": args.level,
        "group_order": G.order,
        "irrep_count": len(labels),
        "class_count": len(classes),
        "dims": sorted(lb.dim for lb in labels),
        "square_sum": square_sum,
        "orthonormal": ortho,
        "irreps": [lb.to_json() for lb in labels],
        "character_table": {
            "class_representatives": [list(r) for r in reps],
            "class_sizes": sizes,
            "rows": [[v.to_json() for v in row] for row in rows],
        },
        "restriction_multiplicities": multiplicity,
    }
    _emit(_canonical_json(report), args.output)
    ok = (square_sum == G.order and len(labels) == len(classes) and ortho)
    return 0 if ok else 1


def cmd_orbits(args) -> int:
    _check_local(args.q, args.n, args.level)
    G = gamma(args.q, args.n, args.level)
    orbits = enumerate_orbits(G)
    report = {
        "schema_version": SCHEMA_VERSION,
        "q": args.q,
        "n": args.n,
        "modulus": G.M,
        "orbits": [list(o) for o in orbits],
        "count": len(orbits),
        "regular_count": sum(1 for o in orbits if len(o) == args.n),
    }
    _emit(_canonical_json(report), args.output)
    return 0


def cmd_tame(args) -> int:
    _check_local(args.q, args.n, args.level)
    report = tame_report(GroupParams(args.q, args.n, args.level))
    report = {"schema_version": SCHEMA_VERSION, **report}
    _emit(_canonical_json(report), args.output)
    return 0 if report["all_sums_match"] else 1


def cmd_brandt(args) -> int:
    _check_adelic(args.q, args.level)
    alg = AlgebraParams(args.q, level=args.level)
    pi = _parse_place(alg, args.place)
    T = hecke_matrix(alg, pi, depth_bound=args.depth_bound)
    G = group_of(alg)
    if args.format == "tsv":
        lines = [
            f"# schema_version={SCHEMA_VERSION}",
            f"# q={args.q} N={args.level} place={format_poly(pi)}",
            f"# group_order={G.order} coset_count={args.q ** pi.degree + 1}",
        ]
        for row in T:
            lines.append("\t".join(str(int(v)) for v in row))
        _emit("\n".join(lines), args.output)
    else:
        report = {
            "schema_version": SCHEMA_VERSION,
            "q": args.q,
            "N": args.level,
            "place": format_poly(pi),
            "group_order": G.order,
            "coset_count": args.q ** pi.degree + 1,
            "matrix": [[int(v) for v in row] for row in T],
        }
        _emit(_canonical_json(report), args.output)
    return 0


def _verify_one(alg, label, places):
    report = verify_claim(alg, label, places)
    return report.to_json()


def cmd_verify(args) -> int:
    _check_adelic(args.q, args.level)
    alg = AlgebraParams(args.q, level=args.level)
    G = group_of(alg)
    places = default_places(alg, args.degree_bound)
    labels = enumerate_irreps(G)
    if args.sigma:
        labels = [_parse_sigma(args.sigma, G)]

    uniqueness = [
        {"place": format_poly(pi),
         **verify_witness_uniqueness(alg, pi, depth_bound=args.depth_bound)}
        for pi in places
    ]

    import random
    rng = random.Random(args.seed)
    trips = 0
    for _ in range(args.round_trips):
        state, cls, grand = synthesize_random_adele(alg, rng, places)
        recovered, rho = factorize_adele(alg, state)
        assert recovered == cls, "round trip lost the class"
        assert grand * rho == OrderElement.one(alg)
        trips += 1

    threads = _threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            sigma_reports = list(pool.map(
                lambda lb: _verify_one(alg, lb, places), labels))
    else:
        sigma_reports = [_verify_one(alg, lb, places) for lb in labels]

    report = {
        "schema_version": SCHEMA_VERSION,
        "q": args.q,
        "N": args.level,
        "places": [format_poly(p) for p in places],
        "witness_uniqueness": uniqueness,
        "round_trips": {"count": trips, "seed": args.seed},
        "sigma_reports": sigma_reports,
        "all_claims_ok": all(r["claim_ok"] for r in sigma_reports),
    }
    _emit(_canonical_json(report), args.output)
    return 0 if report["all_claims_ok"] else 1


def cmd_basis(args) -> int:
    _check_adelic(args.q, args.level)
    alg = AlgebraParams(args.q, level=args.level)
    G = group_of(alg)
    label = _parse_sigma(args.sigma, G)
    places = default_places(alg, args.degree_bound)
    pb = projective_basis(alg, label, places)
    report = {
        "schema_version": SCHEMA_VERSION,
        "q": args.q,
        "N": args.level,
        "sigma": label.to_json(),
        "dim": label.dim,
        "lines": [
            {"a": a, "chi": chi,
             "line_coordinates": [c.to_json() for c in vec]}
            for a, chi, vec in pb.lines
        ],
    }
    _emit(_canonical_json(report), args.output)
    return 0


# -- parser and entry point -------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tjl",
        description="Exact representation-theory laboratory for metacyclic "
                    "groups, the tame dictionary, and quaternionic "
                    "automorphic spectra over F_q(t).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, adelic=False):
        p.add_argument("--q", type=int, required=True,
                       help="residue field size (prime power)")
        p.add_argument("--N", "--level", dest="level", type=int, default=1,
                       help="level (default 1)")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--output", help="write the report to this path")
        if adelic:
            p.add_argument("--degree-bound", type=int, default=2,
                           help="max degree of split places used (default 2)")
            p.add_argument("--depth-bound", type=int, default=3,
                           help="max witness denominator depth (default 3)")
        else:
            p.add_argument("--n", type=int, default=2,
                           help="unramified degree (default 2)")

    p = sub.add_parser("irreps", help="irrep census and character table")
    common(p)
    p.set_defaults(func=cmd_irreps)

    p = sub.add_parser("orbits", help="Frobenius orbit enumeration")
    common(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("tame", help="tame parameters, transfers, and sums")
    common(p)
    p.set_defaults(func=cmd_tame)

    p = sub.add_parser("brandt", help="Hecke matrix dump")
    common(p, adelic=True)
    p.add_argument("--place", required=True,
                   help="monic irreducible place, e.g. 't-1' or 't^2+1'")
    p.set_defaults(func=cmd_brandt)

    p = sub.add_parser("verify", help="full pipeline verification")
    common(p, adelic=True)
    p.add_argument("--sigma", help="restrict to one irrep: 'trivial' or 'c[:s]'")
    p.add_argument("--seed", type=int, default=20240,
                   help="seed for the round-trip property checks")
    p.add_argument("--round-trips", type=int, default=5,
                   help="number of synthesized round trips (default 5)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("basis", help="projective basis dump for one irrep")
    common(p, adelic=True)
    p.add_argument("--sigma", required=True,
                   help="'trivial' or 'c[:s]'")
    p.set_defaults(func=cmd_basis)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        _threads()
        if getattr(args, "format", "json") == "tsv" and args.command != "brandt":
            raise UsageError("tsv output is only available for brandt")
        return args.func(args)
    except UsageError as exc:
        print(_canonical_json({"schema_version": SCHEMA_VERSION,
                               "error": "usage", "message": str(exc)}),
              file=sys.stderr)
        return 2
    except (NeedsMorePlacesError, SearchBoundExceededError) as exc:
        print(_canonical_json({"schema_version": SCHEMA_VERSION,
                               "error": "resource", "message": str(exc),
                               "hint": "raise --degree-bound/--depth-bound"}),
              file=sys.stderr)
        return 3
    except (FalsificationError, AssertionError) as exc:
        print(_canonical_json({"schema_version": SCHEMA_VERSION,
                               "error": "falsification", "message": str(exc)}),
              file=sys.stderr)
        return 1
    except ValueError as exc:
        print(_canonical_json({"schema_version": SCHEMA_VERSION,
                               "error": "usage", "message": str(exc)}),
              file=sys.stderr)
        return 2


def main(argv=None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
