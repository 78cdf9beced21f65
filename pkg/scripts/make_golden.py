"""Regenerate the golden certificate corpus. Review the diff before committing."""

import sys

from jetcert.cli import GOLDEN_DIR, RunConfig, execute
from jetcert.serialize import dumps

CORPUS = {
    "certify3_3_7": RunConfig("certify3", p=3, q=7),
    "certify3_4_9": RunConfig("certify3", p=4, q=9),
    "certify3_2_5": RunConfig("certify3", p=2, q=5),
    "certify3_3_8": RunConfig("certify3", p=3, q=8),
    "certify3_5_11": RunConfig("certify3", p=5, q=11),
    "sweep3_9": RunConfig("sweep3", q_max=9),
    "sweep3_9_degree10": RunConfig("sweep3", q_max=9, degree_bound=10),
    "profile_3_7_small_q": RunConfig("profile", p=3, q=7, mode="SMALL_Q"),
    "profile_5_11_large_q": RunConfig("profile", p=5, q=11, mode="LARGE_Q"),
    "certify_dim_4": RunConfig("certify-dim", d=4),
    "certify_dim_10": RunConfig("certify-dim", d=10),
    "certify_dim_4_16": RunConfig("certify-dim", d=4, d_max=16),
    "convergence_3_7": RunConfig("convergence", p=3, q=7, mode="SMALL_Q"),
    "oracle_check_d3_k12": RunConfig("oracle-check", d=3, k_max=12),
}


def main() -> int:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name, cfg in CORPUS.items():
        cfg.validate()
        status, doc, _ = execute(cfg)
        if status != 0:
            print(f"{name}: exit {status}", file=sys.stderr)
            return 1
        (GOLDEN_DIR / f"{name}.json").write_text(dumps(doc))
        print(f"wrote {name}.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
