"""Run every identity suite on the shipped fixture manifests and tabulate counts and wall time.

    python scripts/run_all_fixtures.py --profile small
"""
import argparse
import time
from dataclasses import dataclass, field

from forge import manifest as mf
from forge.cli import shipped_manifest
from forge.fixtures import FIXTURE_NAMES
from forge.verify import run


@dataclass
class Config:
    profile: str = "full"
    fixtures: tuple = FIXTURE_NAMES
    suites: tuple = ("all",)
    show_failures: bool = True


def main(cfg: Config):
    print(f"{'fixture':<15}{'pass':>6}{'fail':>6}{'skip':>6}{'secs':>8}")
    for name in cfg.fixtures:
        t0 = time.perf_counter()
        rep = run(mf.load(shipped_manifest(name)), cfg.suites, cfg.profile, source=name)
        c = rep.counts()
        print(f"{name:<15}{c['PASS']:>6}{c['FAIL']:>6}{c['SKIP']:>6}{time.perf_counter() - t0:>8.1f}")
        if cfg.show_failures:
            for r in rep.results:
                if r.status == "FAIL":
                    print("   ", r.line())


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--profile", default="full", choices=("small", "full"))
    ap.add_argument("--fixtures", default=",".join(FIXTURE_NAMES))
    a = ap.parse_args()
    main(Config(profile=a.profile, fixtures=tuple(a.fixtures.split(","))))
