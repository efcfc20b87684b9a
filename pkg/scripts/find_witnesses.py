#!/usr/bin/env python3
"""Search for undefinability witnesses for all four modalities.

The weak modalities have witnesses with two actions per (state, agent); the
strong ones need three, because with only one non-permitted action per state
the escape set is forced back into the four-member family. Prints each found
model as JSON.

    python3 scripts/find_witnesses.py [--seed 7] [--max-states 3]
"""

from __future__ import annotations

import argparse
import json

from permitmc.algebra import SearchBounds, search_witness
from permitmc.formula import Modality
from permitmc.model import model_to_dict


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--max-states", type=int, default=3)
    ap.add_argument("--max-candidates", type=int, default=100_000)
    args = ap.parse_args()

    print(f"seed: {args.seed}")
    for target, max_actions in (
        (Modality.WA, 2),
        (Modality.WE, 2),
        (Modality.SE, 3),
        (Modality.SA, 3),
    ):
        bounds = SearchBounds(
            max_states=args.max_states,
            num_agents=2,
            max_actions=max_actions,
            allow_nonpermitted=True,
            max_candidates=args.max_candidates,
        )
        result = search_witness(target, bounds, seed=args.seed)
        if not result.found:
            print(f"\n{target.value}: exhausted after {result.candidates} candidates")
            continue
        assert result.model is not None and result.report is not None
        print(
            f"\n{target.value}: found after {result.candidates} candidates, "
            f"escape set {{{', '.join(result.report.escape_set.sorted_members())}}}"
        )
        print(json.dumps(model_to_dict(result.model), indent=2))


if __name__ == "__main__":
    main()
