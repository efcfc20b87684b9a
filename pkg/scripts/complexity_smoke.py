#!/usr/bin/env python3
"""Wall-time scaling experiment for the global model checker.

One recursion step costs O(|S| + |M| + |Delta|) and a formula of size n takes
n such steps, so doubling either the formula or the model should roughly
double the median runtime. Prints a table of medians and doubling ratios.

    python3 scripts/complexity_smoke.py [--runs 7] [--seed 1234]
"""

from __future__ import annotations

import argparse
import statistics
import time

from permitmc.checker import ModelChecker
from permitmc.formula import Modal, Modality, Or, Prop, size
from permitmc.generate import GenParams, random_model


def modal_chain(layers: int):
    f = Prop("q0")
    for i in range(layers):
        f = Modal(list(Modality)[i % 4], "ab"[i % 2], Or(Prop(f"q{i % 8}"), f))
    return f


def median_time(model, formula, runs: int) -> float:
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        ModelChecker(model).truth_set(formula)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def model_size(m) -> int:
    mech = sum(len(m.entries(s)) for s in m.states)
    acts = sum(len(m.action_set(s, a)) for s in m.states for a in m.agents)
    return len(m.states) + mech + acts


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=7)
    ap.add_argument("--seed", type=int, default=1234)
    args = ap.parse_args()

    print(f"seed: {args.seed}  (median of {args.runs} runs)")
    base = random_model(
        GenParams(seed=args.seed, num_states=16, num_agents=2, max_actions=3, branching=2)
    )
    print(f"\nformula scaling on a fixed model (|S|+|M|+|Delta| = {model_size(base)}):")
    prev = None
    for layers in (96, 192, 384):
        f = modal_chain(layers)
        t = median_time(base, f, args.runs)
        ratio = "" if prev is None else f"  x{t / prev:.2f}"
        print(f"  |formula| = {size(f):5d}: {t * 1000:8.2f} ms{ratio}")
        prev = t

    fixed = modal_chain(96)
    print(f"\nmodel scaling with a fixed formula (|formula| = {size(fixed)}):")
    prev = None
    for states in (10, 20, 40):
        m = random_model(
            GenParams(seed=args.seed, num_states=states, num_agents=2, max_actions=3,
                      branching=2)
        )
        t = median_time(m, fixed, args.runs)
        ratio = "" if prev is None else f"  x{t / prev:.2f}"
        print(f"  |S|+|M|+|Delta| = {model_size(m):5d}: {t * 1000:8.2f} ms{ratio}")
        prev = t


if __name__ == "__main__":
    main()
