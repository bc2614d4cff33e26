"""Compare the size of the E2 page with the integral answer, degree by degree."""
import argparse
import json
from dataclasses import dataclass

from bredon_quadrics.group_cohom import e2_discrepancy
from bredon_quadrics.ideals import BidegreeWindow
from bredon_quadrics.quadric import cohomology_group


@dataclass
class Config:
    n_max: int = 6


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    cfg = Config(ap.parse_args().n_max)
    for n in range(1, cfg.n_max + 1):
        rep = e2_discrepancy(n, lambda p, q, n=n: cohomology_group(n, 0, p, q),
                             BidegreeWindow.standard(n))
        print(json.dumps({k: rep[k] for k in ("n", "e2_size", "h_size", "discrepancy")}))


if __name__ == "__main__":
    main()
