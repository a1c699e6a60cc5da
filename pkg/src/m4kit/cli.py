"""Command-line interface.

    m4kit build MANIFEST [-o REPORT.json]     build + evaluate expectations
    m4kit certify MANIFEST NAME [...]         certify one manifold's pi1
    m4kit geography CHI C1SQ [-o OUT.json]    realize a characteristic pair
    m4kit catalog                             list block constructors
    m4kit replay CERT.json [...]              re-verify a certificate
    m4kit fmt MANIFEST [-w]                   canonical manifest form

Exit codes: 0 success; 1 an expectation or verification failed; 2 the
input was malformed (parse error, unknown name, bad arguments); 3 the
certification budget was exhausted before a definite verdict.

The coset budget honours the M4KIT_BUDGET_COSETS environment variable and
the --max-cosets flag (the flag wins).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import checker
from .certify import Budget, Certificate, INCONCLUSIVE, certify
from .geography import GeographyError, in_odd_region, realize_pair
from .manifest import (
    Expectation,
    Manifest,
    ManifestError,
    canonicalize,
    format_manifest,
    parse_manifest,
    report_json,
    run_manifest,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _budget(args: argparse.Namespace) -> Budget:
    if getattr(args, "max_cosets", None) is not None:
        return Budget(max_cosets=args.max_cosets)
    return Budget()


def _write_json(path: str, data: dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _load_manifest(path: str) -> Manifest:
    with open(path, encoding="utf-8") as fh:
        return parse_manifest(fh.read())


def _cmd_build(args: argparse.Namespace) -> int:
    m = _load_manifest(args.manifest)
    result = run_manifest(m, budget=_budget(args))
    for o in result.outcomes:
        status = "ok  " if o.passed else "FAIL"
        detail = (f"{o.expected!r}" if o.passed
                  else f"expected {o.expected!r}, got {o.actual!r}")
        print(f"{status} {o.manifold} {o.key}: {detail}")
    n_fail = sum(1 for o in result.outcomes if not o.passed)
    print(f"{len(result.outcomes) - n_fail}/{len(result.outcomes)} checks passed")
    if args.output:
        _write_json(args.output, report_json(m, result))
        print(f"report written to {args.output}")
    if result.ok:
        return EXIT_OK
    return EXIT_BUDGET if result.budget_limited else EXIT_FAIL


def _cmd_certify(args: argparse.Namespace) -> int:
    m = _load_manifest(args.manifest)
    result = run_manifest(
        Manifest(tuple(i for i in m.items if not isinstance(i, Expectation))),
        budget=_budget(args))
    if args.name not in result.manifolds:
        print(f"no manifold named {args.name!r} in {args.manifest}",
              file=sys.stderr)
        return EXIT_USAGE
    M = result.manifolds[args.name]
    cert = certify(M.pi1, target=args.target, budget=_budget(args))
    if cert.is_definite:
        checker.replay(cert, M.pi1)
        print(f"pi1({args.name}) = {cert.describe()}   [replayed ok]")
    else:
        print(f"pi1({args.name}): inconclusive -- {cert.reason}")
    print(f"  e = {M.euler}, sigma = {M.signature}, parity = {M.parity}, "
          f"symplectic = {M.symplectic}")
    if cert.is_definite:
        torsion = list(cert.h1_torsion) if cert.h1_torsion is not None else []
        print(f"  h1 rank {cert.h1_rank}, torsion {torsion}; "
              f"derivation steps {cert.steps_used}; "
              f"coset index {cert.coset_index}")
    else:
        print(f"  derivation steps {cert.steps_used}")
    if args.output:
        _write_json(args.output, cert.to_json())
        print(f"certificate written to {args.output}")
    if not cert.is_definite:
        return EXIT_BUDGET
    if args.target is not None and not cert.matches_target:
        print(f"verdict does not match target {args.target!r}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_geography(args: argparse.Namespace) -> int:
    try:
        r = realize_pair(args.chi, args.c1sq, budget=_budget(args))
    except GeographyError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    checker.replay(r.closed_certificate, r.manifold.pi1)
    checker.replay(r.complement_certificate)
    M = r.manifold
    print(f"point {r.point}: {M.name}")
    print(f"  e = {M.euler}, sigma = {M.signature}, "
          f"symplectic = {M.symplectic}, in odd-form band = "
          f"{in_odd_region(r.point)}")
    print(f"  marked torus: {r.site_name} "
          f"(generators {list(r.site.torus_generators)})")
    print(f"  pi1(closed)     = {r.closed_certificate.describe()}")
    print(f"  pi1(complement) = {r.complement_certificate.describe()}")
    print(f"  meridian dies = {r.meridian_dies}, "
          f"torus generates = {r.torus_surjects}")
    data = {
        "schema": "m4kit.geography/1",
        "chi": r.point.chi,
        "c1sq": r.point.c1sq,
        "euler": M.euler,
        "signature": M.signature,
        "manifold": M.name,
        "site": r.site_name,
        "torus_generators": list(r.site.torus_generators),
        "closed_certificate": r.closed_certificate.to_json(),
        "complement_certificate": r.complement_certificate.to_json(),
        "meridian_dies": r.meridian_dies,
        "torus_surjects": r.torus_surjects,
        "in_odd_region": in_odd_region(r.point),
    }
    if args.output:
        _write_json(args.output, data)
        print(f"report written to {args.output}")
    ok = (r.closed_certificate.verdict == "infinite_cyclic"
          and r.complement_certificate.verdict == "infinite_cyclic"
          and r.meridian_dies and r.torus_surjects)
    if ok:
        return EXIT_OK
    limited = (r.closed_certificate.verdict == INCONCLUSIVE
               or r.complement_certificate.verdict == INCONCLUSIVE)
    return EXIT_BUDGET if limited else EXIT_FAIL


_CATALOG_LINES = """\
block constructors (use in `block NAME = CTOR(...)`):

  T2xG2(p, q)      torus x genus-2 surface, four torus twists, last two of
                   coefficient 1/p and 1/q       e=0   sigma=0   symplectic
                   surfaces: Sigma2   sites: a1'xc', b1'xc'', a2'xc', a2''xd'
  G2xGn(n, m)      genus-2 x genus-n surface (n>=2), 2n+4 twists, one of
                   multiplicity m                e=4n-4 sigma=0  sympl iff m=1
                   surfaces: Sigma2   sites: 8 + 2(n-2), incl. a2'xc1'
  BT4(q, r, m=1, eps1=1, eps3=-1)
                   blown-up 4-torus, twists 1/q and m/r (0 denominator =
                   skipped)                      e=1   sigma=-1  sympl iff m=1
                   surfaces: SigmaBar2 (meridional tier; third curve image
                   modulo meridian)   sites: alpha2'xalpha3', alpha2''xalpha4'
  BBT4(q, r)       twice blown-up 4-torus, twists 1/q, 1/r (q, r >= 1)
                                                 e=2   sigma=-2  symplectic
                   surfaces: SigmaHat2 (trivial meridian, exact images)
                   sites: alpha1'xalpha3', alpha2'xalpha3''
  T4b2()           twice blown-up 4-torus, untwisted (pi1 = Z^4)
                                                 e=2   sigma=-2  symplectic
  T4()             the 4-torus, two sites armed  e=0   sigma=0   symplectic
  T2xS2b4()        torus-ruled surface blown up four times, genus-2 surface
                   SigmaTilde2 (trivial meridian) e=4  sigma=-4  symplectic

operations: torus_surgery(base, site, k, m=1), blow_up(base, n=1),
            fiber_sum(left, lsurf, right, rsurf, prefix=None)

composites (python API, m4kit.constructions): exotic_cp2_2(m),
exotic_odd_cp2(n, m), cyclic_family(p, m), exotic_cp2_4(m),
exotic_cp2_6(m), finite_cyclic_example()"""


def _cmd_catalog(_args: argparse.Namespace) -> int:
    print(_CATALOG_LINES)
    return EXIT_OK


def _cmd_replay(args: argparse.Namespace) -> int:
    with open(args.certificate, encoding="utf-8") as fh:
        cert = Certificate.from_json(json.load(fh))
    expected = None
    if args.manifest is not None:
        if args.name is None:
            print("--manifest requires --name", file=sys.stderr)
            return EXIT_USAGE
        m = _load_manifest(args.manifest)
        result = run_manifest(
            Manifest(tuple(i for i in m.items
                           if not isinstance(i, Expectation))))
        if args.name not in result.manifolds:
            print(f"no manifold named {args.name!r}", file=sys.stderr)
            return EXIT_USAGE
        expected = result.manifolds[args.name].pi1
    try:
        checker.replay(cert, expected)
    except checker.CheckFailure as exc:
        print(f"REPLAY FAILED: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"replay ok: {cert.describe()} "
          f"({len(cert.trace)} steps re-verified)")
    if not cert.is_definite:
        print("note: certificate is inconclusive; nothing was claimed")
    return EXIT_OK


def _cmd_fmt(args: argparse.Namespace) -> int:
    with open(args.manifest, encoding="utf-8") as fh:
        text = fh.read()
    canon = format_manifest(canonicalize(parse_manifest(text)))
    # parse -> print leaves canonical text fixed
    assert format_manifest(canonicalize(parse_manifest(canon))) == canon
    if args.write:
        with open(args.manifest, "w", encoding="utf-8") as fh:
            fh.write(canon)
        print(f"rewrote {args.manifest}")
    else:
        sys.stdout.write(canon)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="m4kit",
        description="symbolic 4-manifold constructions with machine-checked "
                    "fundamental-group certificates")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="run a manifest and its expectations")
    p.add_argument("manifest")
    p.add_argument("-o", "--output", help="write a JSON report here")
    p.add_argument("--max-cosets", type=int, default=None)
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("certify", help="certify one manifold from a manifest")
    p.add_argument("manifest")
    p.add_argument("name")
    p.add_argument("--target", default=None,
                   help='"trivial", "Z", or "Z/<n>"')
    p.add_argument("-o", "--output", help="write the certificate JSON here")
    p.add_argument("--max-cosets", type=int, default=None)
    p.set_defaults(fn=_cmd_certify)

    p = sub.add_parser("geography",
                       help="realize a (chi, c1sq) pair with a marked torus")
    p.add_argument("chi", type=int)
    p.add_argument("c1sq", type=int)
    p.add_argument("-o", "--output", help="write a JSON report here")
    p.add_argument("--max-cosets", type=int, default=None)
    p.set_defaults(fn=_cmd_geography)

    p = sub.add_parser("catalog", help="list the block constructors")
    p.set_defaults(fn=_cmd_catalog)

    p = sub.add_parser("replay", help="re-verify a certificate JSON file")
    p.add_argument("certificate")
    p.add_argument("--manifest", default=None,
                   help="manifest to rebuild the input presentation from")
    p.add_argument("--name", default=None,
                   help="manifold name within --manifest")
    p.set_defaults(fn=_cmd_replay)

    p = sub.add_parser("fmt", help="print the canonical form of a manifest")
    p.add_argument("manifest")
    p.add_argument("-w", "--write", action="store_true",
                   help="rewrite the file in place")
    p.set_defaults(fn=_cmd_fmt)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except ManifestError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except checker.CheckFailure as exc:
        print(f"certificate verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
