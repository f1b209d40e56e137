"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

from str0d import kernels
from str0d.kernels import _fallback
from str0d.lattice import boolean, chain, downset_frame, product

try:
    from str0d.kernels import _compiled
except ImportError:
    _compiled = None


def workloads():
    frames = {
        "2^4": boolean(4),
        "chain12": chain(12),
        "chain3 x chain3 x 2": product(product(chain(3), chain(3)), chain(2)),
        "6-point poset": downset_frame([0b1, 0b10, 0b111, 0b1010, 0b10100, 0b101000]),
    }
    for name, F in frames.items():
        table = kernels.int_array([F.join[x][F.meet[x][F.top]] for x in range(F.n)])
        pairs = [(F.bottom, x) for x in sorted(F.join_irreducibles)[:2]]
        yield name, F.n, {
            "lattice_tables": lambda k, F=F: k.lattice_tables(F.n, F.leq_bytes),
            "heyting_table": lambda k, F=F: k.heyting_table(F.n, F.leq_bytes, F.meet_flat),
            "nucleus_images": lambda k, F=F: k.nucleus_images(F.n, F.leq_bytes, F.meet_flat, F.heyting_flat, F.top),
            "generate_congruence": lambda k, F=F, p=pairs: k.generate_congruence(F.n, F.meet_flat, F.join_flat, p),
            "hom_violation": lambda k, F=F, t=table: k.hom_violation(
                F.n, F.meet_flat, F.join_flat, F.meet_flat, F.join_flat, F.n, t),
        }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _compiled is None:
        print("compiled kernels are not built; only the fallback can be timed")
    print(f"{'frame':<22}{'n':>4}  {'kernel':<20}{'python ms':>11}{'cython ms':>11}{'speedup':>9}")
    for name, n, jobs in workloads():
        for kname, job in jobs.items():
            number = 3
            py = min(timeit.repeat(lambda: job(_fallback), number=number, repeat=args.repeat)) / number
            if _compiled is not None:
                cy = min(timeit.repeat(lambda: job(_compiled), number=number, repeat=args.repeat)) / number
                print(f"{name:<22}{n:>4}  {kname:<20}{py * 1e3:>11.3f}{cy * 1e3:>11.3f}{py / cy:>8.1f}x")
            else:
                print(f"{name:<22}{n:>4}  {kname:<20}{py * 1e3:>11.3f}{'-':>11}{'-':>9}")


if __name__ == "__main__":
    main()
