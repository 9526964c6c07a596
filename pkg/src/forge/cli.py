"""forge: verify identities on manifests, build derived objects, export fixtures.

Exit codes: 0 all identities hold, 1 some identity failed, 2 input error.
"""
from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from . import manifest as mf
from .manifest import ManifestError, dumps

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

BUILD_TARGETS = ("double", "polyuble", "rn", "r-angle", "t-element", "mixed-bivector", "fusion", "quasi")


def shipped_manifest(name: str) -> Path:
    return Path(str(resources.files("forge").joinpath(f"data/manifests/{name}.json")))


def _resolve(path: str) -> str:
    p = Path(path)
    if not p.exists() and shipped_manifest(path).exists():
        return str(shipped_manifest(path))
    return path


def cmd_verify(args) -> int:
    from .verify import run
    path = _resolve(args.manifest)
    try:
        m = mf.load(path)
        suites = [s.strip() for s in args.suite.split(",")] if args.suite else \
            m.checks.get("suites", ["all"])
        report = run(m, suites, args.profile, source=path)
    except (ManifestError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = sys.stdout
    for r in report.results:
        print(r.line(), file=out)
    c = report.counts()
    print(f"{'OK' if report.ok else 'FAILED'} [summary] {c['PASS']} passed, {c['FAIL']} failed, "
          f"{c['SKIP']} skipped", file=sys.stderr)
    if args.json:
        Path(args.json).write_text(dumps(report.to_doc()))
    return EXIT_OK if report.ok else EXIT_FAIL


def _fixture_objects(name: str):
    from .fixtures import fixture_manifest
    from .bialg import RMatrix
    m = fixture_manifest(name)
    (rname, (alg, T)), = list(m.r_matrices.items())[:1]
    g = m.algebras[alg]
    act = None
    if m.actions:
        act = m.lie_action(sorted(m.actions)[0])
    return m, g, RMatrix(g, T), act


def build(target: str, fixture: str = "sl2", n: int = 2) -> dict:
    """Document for a build target; deterministic for fixed inputs."""
    from .double import build_double
    from .polyuble import build_polyuble, power_lie, r_angle, r_n, t_element
    from .polyfield import apply_action, fusion, product_action, quasi_correspond, replicate
    if target not in BUILD_TARGETS:
        raise ValueError(f"unknown build target {target!r}")
    if n < 1:
        raise ValueError("--n must be positive")
    m, g, r, act = _fixture_objects(fixture)
    doc = {"version": mf.VERSION, "target": target, "fixture": fixture, "n": n}
    if target == "double":
        d = build_double(r.cobracket)
        doc["algebra"] = mf.algebra_doc(d.total)
        doc["r_d"] = mf.tensor_entries(d.r_d)
        doc["cobracket"] = mf.cobracket_doc("delta_d", d.total.space.name, d.cobracket)["values"]
    elif target == "polyuble":
        d = build_polyuble(build_double(r.cobracket), n)
        doc["ambient"] = mf.algebra_doc(d.ambient)
        doc["g_n"] = [mf.tensor_entries(v) for v in d.basis]
        doc["g_n_star"] = [mf.tensor_entries(v) for v in d.dual_basis]
        doc["r"] = mf.tensor_entries(d.r_matrix())
    elif target == "rn":
        T = r_n(r, n)
        doc["labels"] = list(T.spaces[0].labels)
        doc["entries"] = mf.tensor_entries(T)
    elif target == "r-angle":
        T = r_angle(r, n)
        doc["labels"] = list(T.spaces[0].labels)
        doc["entries"] = mf.tensor_entries(T)
    elif target == "t-element":
        T = t_element(build_double(r.cobracket), n)
        doc["labels"] = list(T.spaces[0].labels)
        doc["entries"] = mf.tensor_entries(T)
    else:
        if act is None:
            raise ValueError(f"fixture {fixture!r} carries no chart action")
        acts = replicate(act, n)
        if target == "mixed-bivector":
            lam = product_action(acts, algebra=power_lie(g, n))
            doc["bivector"] = mf.field_doc(-apply_action(lam, r_n(r, n)))
        else:
            pis = [-apply_action(a, r.Lambda) for a in acts]
            fu = fusion(pis, acts, r)
            if target == "fusion":
                doc["bivector"] = mf.field_doc(fu.pi)
                doc["diagonal_action"] = mf.action_doc("diag", g.space.name, fu.diag)
            else:
                doc["Q"] = mf.field_doc(quasi_correspond(fu.pi, fu.diag, r))
    return doc


def cmd_build(args) -> int:
    try:
        doc = build(args.target, args.fixture, args.n)
    except (ValueError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    from .fixtures import FIXTURE_NAMES, fixture_manifest
    if args.name == "list":
        for n in FIXTURE_NAMES:
            print(n)
        return EXIT_OK
    try:
        m = fixture_manifest(args.name)
    except KeyError as exc:
        print(f"input error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(mf.to_doc(m))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="forge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    v = sub.add_parser("verify", help="run identity suites on a manifest")
    v.add_argument("manifest", help="manifest path, or the name of a shipped fixture manifest")
    v.add_argument("--suite", default=None,
                   help="comma list of jacobi,cocycle,cybe,double,polyuble,rn,twist,fields,fusion,all")
    v.add_argument("--profile", choices=("small", "full"), default="full")
    v.add_argument("--json", default=None, help="also write the structured report here")
    v.set_defaults(func=cmd_verify)
    b = sub.add_parser("build", help="construct an object and print it as JSON")
    b.add_argument("target", choices=BUILD_TARGETS)
    b.add_argument("--n", type=int, default=2)
    b.add_argument("--fixture", default="sl2")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_build)
    f = sub.add_parser("fixtures", help="print a fixture manifest (or 'list')")
    f.add_argument("name")
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    p = parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
