#!/usr/bin/env python3
"""Generate the sn100 benchmark bundle (GSRC Bookshelf dialect).

sn100 is a synthetic stand-in for the public 100-block soft-block
floorplanning benchmark: same structure (100 soft blocks with aspect
bounds [0.3, 3], 334 peripheral terminals, 885 nets, 1873 pins) with
deterministic contents. The committed files under benchmarks/sn100/ were
produced by this script; rerunning it reproduces them byte-for-byte.
"""

import argparse
import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from fplan.rng import Rng  # noqa: E402

N_BLOCKS = 100
N_TERMINALS = 334
N_NETS = 885
N_PINS = 1873
TOTAL_AREA = 179501.0  # keeps the auto outline near the classic benchmark's
SEED = 20240809


def block_areas(rng):
    """Log-normal-ish area mix rescaled to TOTAL_AREA, all integral."""
    raw = []
    for _ in range(N_BLOCKS):
        z = sum(rng.uniform() for _ in range(6)) - 3.0  # approx normal
        raw.append(math.exp(0.8 * z))
    scale = TOTAL_AREA / sum(raw)
    areas = [max(16, round(a * scale)) for a in raw]
    # nudge the largest block so the total stays exact
    areas[areas.index(max(areas))] += round(TOTAL_AREA) - sum(areas)
    return areas


def terminal_positions(rng, die):
    """Terminals distributed around the die periphery."""
    positions = []
    for i in range(N_TERMINALS):
        edge = i % 4
        t = round(die * rng.uniform())
        if edge == 0:
            positions.append((0, t))
        elif edge == 1:
            positions.append((die, t))
        elif edge == 2:
            positions.append((t, 0))
        else:
            positions.append((t, die))
    return positions


def make_nets(rng):
    """885 nets totalling 1873 pins, mostly two-point, terminals on ~25%."""
    degrees = [2] * N_NETS
    extra = N_PINS - 2 * N_NETS
    while extra > 0:
        i = rng.randrange(N_NETS)
        if degrees[i] < 9:
            degrees[i] += 1
            extra -= 1
    nets = []
    for deg in degrees:
        chosen = []
        block_slots = deg
        if rng.uniform() < 0.25:
            chosen.append(f"p{1 + rng.randrange(N_TERMINALS)}")
            block_slots -= 1
        names = set()
        while len(names) < block_slots:
            names.add(f"sb{rng.randrange(N_BLOCKS)}")
        chosen.extend(sorted(names, key=lambda s: int(s[2:])))
        nets.append(chosen)
    return nets


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default=os.path.join(
        os.path.dirname(__file__), "..", "benchmarks", "sn100"))
    args = parser.parse_args()
    os.makedirs(args.outdir, exist_ok=True)

    rng = Rng(SEED)
    areas = block_areas(rng)
    die = round(math.sqrt(1.1 * sum(areas)))
    terminals = terminal_positions(rng, die)
    nets = make_nets(rng)

    blocks_path = os.path.join(args.outdir, "sn100.blocks")
    with open(blocks_path, "w") as fh:
        fh.write("UCSC blocks 1.0\n")
        fh.write("# synthetic 100-block soft floorplanning benchmark (sn100)\n\n")
        fh.write(f"NumSoftRectangularBlocks : {N_BLOCKS}\n")
        fh.write("NumHardRectilinearBlocks : 0\n")
        fh.write(f"NumTerminals : {N_TERMINALS}\n\n")
        for i, area in enumerate(areas):
            fh.write(f"sb{i} softrectangular {area} 0.300 3.000\n")
        fh.write("\n")
        for i in range(N_TERMINALS):
            fh.write(f"p{i + 1} terminal\n")

    pl_path = os.path.join(args.outdir, "sn100.pl")
    with open(pl_path, "w") as fh:
        fh.write("UCLA pl 1.0\n\n")
        for i in range(N_BLOCKS):
            fh.write(f"sb{i} 0 0\n")
        for i, (x, y) in enumerate(terminals):
            fh.write(f"p{i + 1} {x} {y}\n")

    nets_path = os.path.join(args.outdir, "sn100.nets")
    with open(nets_path, "w") as fh:
        fh.write("UCLA nets 1.0\n\n")
        fh.write(f"NumNets : {N_NETS}\n")
        fh.write(f"NumPins : {sum(len(n) for n in nets)}\n\n")
        for net in nets:
            fh.write(f"NetDegree : {len(net)}\n")
            for name in net:
                fh.write(f"{name} B\n")

    print(f"wrote {blocks_path}, {nets_path}, {pl_path}")
    print(f"total block area {sum(areas)}, die {die}x{die}")


if __name__ == "__main__":
    main()
