"""Low-temperature field scans of m, chi and C for the two reference coupling sets.

For each set this prints the T = 0 critical fields, the detected plateaus and
susceptibility peaks, and writes one CSV per (couplings, T) to results/.
"""

import argparse
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from pyroladder.model import ModelParams
from pyroladder.oracle import ground_state_phase_boundaries
from pyroladder.sweep import detect_peaks, detect_plateaus, evaluate_point


@dataclass(frozen=True)
class ScanConfig:
    couplings: tuple[tuple[float, float], ...] = ((1.5, 1.0), (2.0, 1.0))
    temperatures: tuple[float, ...] = (0.05, 0.1, 0.3)
    h_max: float = 6.0
    points: int = 600
    out_dir: Path = field(default=Path("results"))


def scan(jh: float, ji: float, t: float, fields: np.ndarray):
    return [evaluate_point(ModelParams(jh, ji, h, t)) for h in fields]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    ap.add_argument("--points", type=int, default=ScanConfig.points)
    args = ap.parse_args()
    cfg = ScanConfig(points=args.points, out_dir=args.out_dir)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    fields = np.linspace(0.0, cfg.h_max, cfg.points)

    for jh, ji in cfg.couplings:
        b = ground_state_phase_boundaries(jh, ji)
        print(f"J_H={jh:g} J_I={ji:g}: h_c1={b.h_c1:g} h_c2={b.h_c2:g}")
        for t in cfg.temperatures:
            pts = scan(jh, ji, t, fields)
            path = cfg.out_dir / f"scan_jh{jh:g}_ji{ji:g}_t{t:g}.csv"
            with open(path, "w") as fh:
                fh.write("field,m,chi,concurrence\n")
                for p in pts:
                    fh.write(f"{p.field:.17g},{p.m_tm:.17g},{p.chi:.17g},{p.concurrence:.17g}\n")
            report = detect_plateaus([(p.field, p.m_tm) for p in pts])
            peaks = detect_peaks([(p.field, p.chi) for p in pts])
            plateaus = ", ".join(f"{v:g}" for v in report.values) or "none"
            edges = ", ".join(f"{h:.3f}" for h in report.transitions) or "none"
            peak_str = ", ".join(f"{h:.3f}" for h, _ in peaks) or "none"
            print(f"  T={t:g}: plateaus [{plateaus}] transitions [{edges}] chi peaks [{peak_str}]")
            print(f"         -> {path}")


if __name__ == "__main__":
    main()
