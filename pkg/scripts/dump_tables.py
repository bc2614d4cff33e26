"""Dump per-bidegree groups for a range of quadrics as TSV, one file per (n, s)."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from bredon_quadrics.ideals import BidegreeWindow
from bredon_quadrics.quadric import cohomology_group


@dataclass
class Config:
    n_max: int = 6
    out_dir: str = "tables"
    window: str | None = None      # default: the standard window of each n


def dump(cfg: Config) -> list[Path]:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for n in range(1, cfg.n_max + 1):
        w = BidegreeWindow.parse(cfg.window) if cfg.window else BidegreeWindow.standard(n)
        for s in range(n // 2 + 1):
            path = out / f"Q_{n}_{s}.tsv"
            lines = ["p\tq\trank\ttorsion"]
            for d in w:
                g = cohomology_group(n, s, d.p, d.q)
                lines.append(f"{d.p}\t{d.q}\t{g.rank}\t{','.join(map(str, g.torsion))}")
            path.write_text("\n".join(lines) + "\n")
            written.append(path)
    return written


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--out-dir", default=Config.out_dir)
    ap.add_argument("--window")
    a = ap.parse_args()
    for p in dump(Config(a.n_max, a.out_dir, a.window)):
        print(p)


if __name__ == "__main__":
    main()
