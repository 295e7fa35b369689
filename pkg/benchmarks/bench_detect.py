#!/usr/bin/env python3
"""Times the span-scan kernels (compiled vs pure Python) on synthetic pairs.

The workload mirrors the hot path of a corpus run: pairs that already passed
the rarity gate, several anchors each, alignment links to scan per anchor.

Usage: python benchmarks/bench_detect.py [--pairs 20000] [--repeat 3]
"""

import argparse
import random
import statistics
import sys
import time

from explmine import _kernel_py
from explmine.corpus import SentencePair
from explmine.spans import detect_with_reasons

try:
    from explmine import _kernel
except ImportError:
    _kernel = None


def build_workload(n_pairs: int, seed: int = 1234, long_pairs: bool = False):
    rng = random.Random(seed)
    commons_src = [f"s{i}" for i in range(50)]
    commons_tgt = [f"t{i}" for i in range(50)]
    fillers = [f"f{i}" for i in range(30)]
    workload = []
    for pair_id in range(n_pairs):
        if long_pairs:
            pre = rng.randint(20, 40)
            post = rng.randint(10, 30)
        else:
            pre = rng.randint(0, 6)
            post = rng.randint(1, 6)
        n = rng.randint(2, 6)
        src = [rng.choice(commons_src) for _ in range(pre)] + ["Ent", "next"] + [
            rng.choice(commons_src) for _ in range(post)
        ]
        span = [","] + [rng.choice(fillers) for _ in range(n - 1)]
        tgt = [rng.choice(commons_tgt) for _ in range(pre)] + ["Entt"] + span + ["nextt"] + [
            rng.choice(commons_tgt) for _ in range(post)
        ]
        links = [(i, i) for i in range(pre)]
        links.append((pre, pre))
        links.append((pre + 1, pre + 1 + n))
        links += [(pre + 2 + i, pre + 2 + n + i) for i in range(post)]
        pair = SentencePair(pair_id, tuple(src), tuple(tgt), frozenset(links))
        max_extra = 12 if long_pairs else 3
        anchors = [(pre, pre)] + [(i, i) for i in range(min(pre, max_extra))]
        workload.append((pair, sorted(anchors), rng.randint(1, 4)))
    return workload


def run(workload, kernel) -> tuple[float, int]:
    started = time.perf_counter()
    emitted = 0
    for pair, anchors, min_span in workload:
        candidates, _ = detect_with_reasons(pair, anchors, min_span, "de", kernel=kernel)
        emitted += len(candidates)
    return time.perf_counter() - started, emitted


def bench_workload(label: str, workload, kernels, repeat: int) -> bool:
    print(f"--- {label} ({len(workload)} pairs) ---")
    results = {}
    for name, kernel in kernels:
        times = []
        emitted = None
        for _ in range(repeat):
            elapsed, count = run(workload, kernel)
            times.append(elapsed)
            if emitted is None:
                emitted = count
            elif emitted != count:
                print(f"ERROR: {name} kernel is nondeterministic", file=sys.stderr)
                return False
        best = min(times)
        results[name] = (best, emitted)
        print(
            f"{name:>8}: best {best:.3f}s over {repeat} runs "
            f"(median {statistics.median(times):.3f}s), "
            f"{len(workload) / best:,.0f} pairs/s, {emitted} candidates"
        )
    if len(results) == 2:
        if results["python"][1] != results["compiled"][1]:
            print("ERROR: kernels disagree on candidate count", file=sys.stderr)
            return False
        speedup = results["python"][0] / results["compiled"][0]
        print(f"speedup: {speedup:.2f}x (identical outputs)")
    return True


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--pairs", type=int, default=20_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    kernels = [("python", _kernel_py)]
    if _kernel is not None:
        kernels.append(("compiled", _kernel))
    else:
        print("compiled kernel not built; benchmarking pure Python only")

    ok = bench_workload("short pairs", build_workload(args.pairs), kernels, args.repeat)
    ok = ok and bench_workload(
        "long pairs", build_workload(max(args.pairs // 4, 1), long_pairs=True),
        kernels, args.repeat,
    )
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
