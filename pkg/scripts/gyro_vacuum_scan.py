"""Scan the gyration parameter and print the cyclic vacuum phase against half the solid angle.

Usage: python3 scripts/gyro_vacuum_scan.py [--eps1 2.5] [--count 11] [--turn-factor 4pi]
"""

import argparse
import math

import numpy as np

from vacphase import GyroelectricTensor, HelixSpec, cyclic_vacuum_phase, polar_angle, solid_angle


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--eps1", type=float, default=2.5)
    parser.add_argument("--pitch", type=float, default=3.0)
    parser.add_argument("--radius", type=float, default=1 / math.pi)
    parser.add_argument("--count", type=int, default=11)
    parser.add_argument("--turn-factor", choices=("4pi", "2pi"), default="4pi")
    args = parser.parse_args()

    helix = HelixSpec.from_label(args.pitch, args.radius, args.turn_factor)
    half_solid = 0.5 * solid_angle(polar_angle(helix))
    print(f"cos theta = {helix.cos_theta:.12g}, half solid angle = {half_solid:.12g} rad")
    print(f"{'eps2':>10} {'n_plus':>10} {'n_minus':>10} {'phase':>16} {'phase/half':>12}")
    # keep both modes propagating
    for eps2 in np.linspace(-0.95, 0.95, args.count) * args.eps1:
        medium = GyroelectricTensor(args.eps1, float(eps2), 1.0)
        phase = cyclic_vacuum_phase(helix, medium) + 0.0
        n_p, n_m = math.sqrt(args.eps1 + eps2), math.sqrt(args.eps1 - eps2)
        print(f"{eps2:10.4f} {n_p:10.5f} {n_m:10.5f} {phase:16.10g} {phase / half_solid:12.6f}")


if __name__ == "__main__":
    main()
