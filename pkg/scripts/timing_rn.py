"""Cost of r^(n) and of its CYB check as n grows, per fixture."""
import argparse
import time
from dataclasses import dataclass

from forge import fixtures as fx
from forge.bialg import cyb
from forge.polyuble import power_lie, r_n


@dataclass
class Config:
    n_max: int = 4
    fixtures: tuple = ("sl2", "axb", "gl2", "sl3")
    sl3_cap: int = 3      # same cap the verify profiles use for sl3


def rmatrix(name):
    return {"sl2": lambda: fx.standard_r(fx.SL2), "sl3": lambda: fx.standard_r(fx.SL3),
            "gl2": lambda: fx.standard_r(fx.GL2), "axb": fx.axb_r}[name]()


def main(cfg: Config):
    print(f"{'fixture':<8}{'n':>3}{'nnz':>7}{'build s':>9}{'cyb s':>8}  cyb=0")
    for name in cfg.fixtures:
        r = rmatrix(name)
        top = min(cfg.n_max, cfg.sl3_cap) if name == "sl3" else cfg.n_max
        for n in range(1, top + 1):
            t0 = time.perf_counter()
            T = r_n(r, n)
            t1 = time.perf_counter()
            ok = cyb(power_lie(r.algebra, n), T).is_zero()
            t2 = time.perf_counter()
            print(f"{name:<8}{n:>3}{len(T.entries):>7}{t1 - t0:>9.3f}{t2 - t1:>8.3f}  {ok}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=4)
    main(Config(n_max=ap.parse_args().n_max))
