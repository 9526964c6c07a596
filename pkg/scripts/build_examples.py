"""Write every build target for a few (fixture, n) pairs to an output directory."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from forge.cli import BUILD_TARGETS, build
from forge.manifest import dumps


@dataclass
class Config:
    out: Path = Path("build_out")
    runs: tuple = (("sl2", 2), ("sl2", 3), ("axb", 2))


def main(cfg: Config):
    cfg.out.mkdir(parents=True, exist_ok=True)
    for fixture, n in cfg.runs:
        for target in BUILD_TARGETS:
            try:
                doc = build(target, fixture, n)
            except ValueError as exc:      # no chart action for this fixture
                print(f"skip {target} {fixture} n={n}: {exc}")
                continue
            p = cfg.out / f"{target}-{fixture}-n{n}.json"
            p.write_text(dumps(doc))
            print("wrote", p)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="build_out")
    main(Config(out=Path(ap.parse_args().out)))
